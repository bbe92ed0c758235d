#include "stc/lattice.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stc {

namespace {

struct Gso {
  MatR mu;      // n x n, unit lower triangular
  VecR norm_sq; // squared norms of the orthogonalized vectors
};

Gso compute_gso(const MatR& b) {
  const int n = static_cast<int>(b.rows());
  const int m = static_cast<int>(b.cols());
  Gso g;
  g.mu = MatR::Identity(n, n);
  g.norm_sq.resize(n);
  MatR star(n, m);
  for (int i = 0; i < n; ++i) {
    star.row(i) = b.row(i);
    for (int j = 0; j < i; ++j) {
      g.mu(i, j) = b.row(i).dot(star.row(j)) / g.norm_sq(j);
      star.row(i) -= g.mu(i, j) * star.row(j);
    }
    // one re-orthogonalization pass against accumulated drift
    for (int j = 0; j < i; ++j) {
      double corr = star.row(i).dot(star.row(j)) / g.norm_sq(j);
      g.mu(i, j) += corr;
      star.row(i) -= corr * star.row(j);
    }
    g.norm_sq(i) = star.row(i).squaredNorm();
  }
  return g;
}

void check_full_rank(const LatticeBasis& basis) {
  if (basis.rows.rows() > basis.rows.cols())
    throw std::invalid_argument("lattice basis has more rows than columns");
  Eigen::JacobiSVD<MatR> svd(basis.rows);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < 1e-10 * sv(0))
    throw std::invalid_argument("lattice basis is rank-deficient");
}

// canonical sign: first nonzero coefficient positive
VecI canonical_sign(VecI d) {
  for (int i = 0; i < d.size(); ++i) {
    if (d(i) > 0) break;
    if (d(i) < 0) {
      d = -d;
      break;
    }
  }
  return d;
}

// tie order among equal-length shortest vectors: smallest under comparison
// from the trailing coordinate backwards, so the standard basis yields e_1
bool colex_less(const VecI& a, const VecI& b) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

// depth-first enumeration of all x with ||x * basis||^2 <= radius_sq
template <typename Visit>
void enumerate_coeffs(const Gso& g, double radius_sq, std::int64_t node_budget,
                      Visit&& visit) {
  const int n = static_cast<int>(g.mu.rows());
  VecI x = VecI::Zero(n);
  VecR partial = VecR::Zero(n + 1);  // partial(k): cost from levels >= k+1
  std::int64_t nodes = 0;

  auto rec = [&](auto&& self, int k) -> void {
    if (++nodes > node_budget)
      throw std::runtime_error("enumeration node budget exceeded");
    if (k < 0) {
      visit(x);
      return;
    }
    double center = 0.0;
    for (int j = k + 1; j < n; ++j) center -= x(j) * g.mu(j, k);
    double room = radius_sq - partial(k + 1);
    if (room < 0) return;
    double half = std::sqrt(room / g.norm_sq(k));
    auto lo = static_cast<std::int64_t>(std::ceil(center - half - 1e-12));
    auto hi = static_cast<std::int64_t>(std::floor(center + half + 1e-12));
    for (std::int64_t v = lo; v <= hi; ++v) {
      x(k) = v;
      double diff = v - center;
      partial(k) = partial(k + 1) + diff * diff * g.norm_sq(k);
      if (partial(k) <= radius_sq * (1 + 1e-12)) self(self, k - 1);
    }
    x(k) = 0;
  };
  rec(rec, n - 1);
}

}  // namespace

std::int64_t int_det(const MatI& A) {
  const int n = static_cast<int>(A.rows());
  if (n != A.cols()) throw std::invalid_argument("int_det: square matrix required");
  using I128 = __int128;
  std::vector<std::vector<I128>> m(n, std::vector<I128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = A(i, j);
  I128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) { p = i; break; }
      if (p < 0) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  I128 det = m[n - 1][n - 1] * sign;
  if (det > std::numeric_limits<std::int64_t>::max() ||
      det < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("int_det: determinant overflows int64");
  return static_cast<std::int64_t>(det);
}

ReductionResult lll_reduce(const LatticeBasis& basis, double delta) {
  if (delta <= 0.25 || delta > 1.0)
    throw std::invalid_argument("lll_reduce: delta must be in (1/4, 1]");
  check_full_rank(basis);
  const int n = static_cast<int>(basis.rows.rows());
  MatR b = basis.rows;
  MatI U = MatI::Identity(n, n);

  int k = 1;
  while (k < n) {
    Gso g = compute_gso(b);
    // size reduction of row k; the same ops applied to U keep it unimodular
    for (int j = k - 1; j >= 0; --j) {
      auto q = static_cast<std::int64_t>(std::llround(g.mu(k, j)));
      if (q != 0) {
        b.row(k) -= static_cast<double>(q) * b.row(j);
        U.row(k) -= q * U.row(j);
        for (int l = 0; l <= j; ++l) g.mu(k, l) -= q * g.mu(j, l);
      }
    }
    double lhs = g.norm_sq(k);
    double rhs = (delta - g.mu(k, k - 1) * g.mu(k, k - 1)) * g.norm_sq(k - 1);
    if (lhs >= rhs) {
      ++k;
    } else {
      b.row(k).swap(b.row(k - 1));
      U.row(k).swap(U.row(k - 1));
      k = std::max(1, k - 1);
    }
  }
  ReductionResult r;
  r.reduced.rows = std::move(b);
  r.unimodular = std::move(U);
  return r;
}

SvpResult svp_enumerate(const LatticeBasis& basis, double radius) {
  check_full_rank(basis);
  const int n = static_cast<int>(basis.rows.rows());
  if (n > 12)
    throw std::invalid_argument(
        "svp_enumerate: dimension > 12; use the LLL first vector as an estimate");
  ReductionResult red = lll_reduce(basis);
  double radius_sq = radius > 0 ? radius * radius
                                : red.reduced.rows.row(0).squaredNorm();
  Gso g = compute_gso(red.reduced.rows);

  bool found = false;
  double best = 0.0;
  VecI best_coeffs;
  while (!found) {
    enumerate_coeffs(g, radius_sq * (1 + 1e-9), 200000000, [&](const VecI& x) {
      if (x.isZero()) return;
      VecR v = VecR::Zero(basis.rows.cols());
      for (int i = 0; i < n; ++i) v += x(i) * red.reduced.rows.row(i).transpose();
      double ns = v.squaredNorm();
      VecI d = VecI::Zero(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(j) += x(i) * red.unimodular(i, j);
      d = canonical_sign(d);
      if (!found || ns < best * (1 - 1e-9)) {
        found = true;
        best = ns;
        best_coeffs = d;
      } else if (ns <= best * (1 + 1e-9) && colex_less(d, best_coeffs)) {
        best_coeffs = d;
      }
    });
    if (!found) radius_sq *= 1.5;  // guard; cannot trigger with LLL seeding
  }
  SvpResult out;
  out.coeffs = best_coeffs;
  out.vector = VecR::Zero(basis.rows.cols());
  for (int i = 0; i < n; ++i)
    out.vector += best_coeffs(i) * basis.rows.row(i).transpose();
  out.norm_sq = out.vector.squaredNorm();
  return out;
}

std::vector<std::pair<VecI, double>> enumerate_within(const LatticeBasis& basis,
                                                      double radius_sq) {
  check_full_rank(basis);
  const int n = static_cast<int>(basis.rows.rows());
  ReductionResult red = lll_reduce(basis);
  Gso g = compute_gso(red.reduced.rows);
  std::vector<std::pair<VecI, double>> out;
  enumerate_coeffs(g, radius_sq * (1 + 1e-9), 200000000, [&](const VecI& x) {
    if (x.isZero()) return;
    VecR v = VecR::Zero(basis.rows.cols());
    for (int i = 0; i < n; ++i) v += x(i) * red.reduced.rows.row(i).transpose();
    double ns = v.squaredNorm();
    if (ns > radius_sq * (1 + 1e-9)) return;
    VecI d = VecI::Zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(j) += x(i) * red.unimodular(i, j);
    out.emplace_back(std::move(d), ns);
  });
  return out;
}

LatticeBasis dual_basis(const LatticeBasis& basis) {
  check_full_rank(basis);
  const MatR& B = basis.rows;
  MatR gram = B * B.transpose();
  Eigen::JacobiSVD<MatR> svd(gram);
  const auto& sv = svd.singularValues();
  double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond < 1e12))
    throw std::runtime_error("dual_basis: Gram matrix near-singular, condition number " +
                             std::to_string(cond));
  LatticeBasis dual;
  dual.rows = gram.llt().solve(B);
  return dual;
}

MinimaReport successive_minima_check(const LatticeBasis& basis, int K) {
  const int n = static_cast<int>(basis.rows.rows());
  if (n != 2 * K) throw std::invalid_argument("basis must have 2K rows");
  if (n > 8) throw std::invalid_argument("successive_minima_check: 2K > 8 infeasible");

  MinimaReport rep;
  rep.eps1_sq = svp_enumerate(basis).norm_sq;
  rep.bound = 2.0 * K * K * K + 3.0 * K * K;

  LatticeBasis dual = dual_basis(basis);
  // the n reduced dual basis vectors are independent, so all successive
  // minima lie within the longest of them
  ReductionResult red = lll_reduce(dual);
  double radius_sq = 0.0;
  for (int i = 0; i < n; ++i)
    radius_sq = std::max(radius_sq, red.reduced.rows.row(i).squaredNorm());

  auto vecs = enumerate_within(dual, radius_sq);
  std::sort(vecs.begin(), vecs.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });

  // greedy: shortest vectors that stay linearly independent
  std::vector<VecR> picked;
  double last_norm_sq = 0.0;
  for (const auto& [d, ns] : vecs) {
    VecR v = VecR::Zero(dual.rows.cols());
    for (int i = 0; i < n; ++i) v += d(i) * dual.rows.row(i).transpose();
    VecR resid = v;
    for (const VecR& p : picked) resid -= (resid.dot(p) / p.squaredNorm()) * p;
    if (resid.squaredNorm() > 1e-12 * v.squaredNorm()) {
      picked.push_back(v);
      last_norm_sq = v.squaredNorm();
      if (static_cast<int>(picked.size()) == n) break;
    }
  }
  if (static_cast<int>(picked.size()) != n)
    throw std::runtime_error("successive_minima_check: enumeration incomplete");
  rep.eps2K_dual_sq = last_norm_sq;
  rep.holds = rep.eps2K_dual_sq * rep.eps1_sq <= rep.bound * (1 + 1e-9);
  return rep;
}

}  // namespace stc
