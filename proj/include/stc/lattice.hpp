#pragma once

#include "stc/design.hpp"

#include <cstdint>
#include <vector>

namespace stc {

using MatI = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using VecI = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Rows generate the lattice; n rows of dimension m, n <= m, full row rank.
struct LatticeBasis {
  MatR rows;
};

struct ReductionResult {
  LatticeBasis reduced;   // reduced = unimodular * original
  MatI unimodular;        // integer, |det| = 1
};

struct SvpResult {
  VecR vector;            // shortest nonzero lattice vector
  VecI coeffs;            // integer coefficients w.r.t. the input basis
  double norm_sq = 0.0;
};

struct MinimaReport {
  double eps1_sq = 0.0;        // squared first minimum of the primal lattice
  double eps2K_dual_sq = 0.0;  // squared 2K-th successive minimum of the dual
  double bound = 0.0;          // 2K^3 + 3K^2
  bool holds = false;          // eps2K_dual_sq * eps1_sq <= bound
};

// Exact integer determinant (Bareiss); throws on overflow-sized input.
std::int64_t int_det(const MatI& A);

// LLL with floating-point Gram-Schmidt; size reduction is applied to the
// integer transform U so it stays exactly unimodular. delta in (1/4, 1].
ReductionResult lll_reduce(const LatticeBasis& basis, double delta = 0.99);

// Exact shortest nonzero vector by enumeration (guarded to n <= 12).
// radius <= 0 seeds the search radius with the first LLL vector; an empty
// ball is re-tried with radius * 1.5. Ties are broken by the
// lexicographically smallest coefficient vector with positive leading entry.
SvpResult svp_enumerate(const LatticeBasis& basis, double radius = 0.0);

// All nonzero lattice vectors with squared norm <= radius_sq, as coefficient
// vectors w.r.t. the input basis. Guarded by a node budget.
std::vector<std::pair<VecI, double>> enumerate_within(const LatticeBasis& basis,
                                                      double radius_sq);

// Rows D with D * B^T = I (pseudo-inverse transpose). Rejects near-singular
// Gram matrices, reporting the condition number.
LatticeBasis dual_basis(const LatticeBasis& basis);

// Checks eps_{2K}^2(dual) * eps_1^2(primal) <= 2K^3 + 3K^2 by enumeration.
// basis must have n = 2K rows; n <= 8.
MinimaReport successive_minima_check(const LatticeBasis& basis, int K);

}  // namespace stc
