#pragma once

#include "stc/channel.hpp"
#include "stc/lattice.hpp"

namespace stc {

struct IFEqualizer {
  MatI A;             // 2K x 2K integer, det = +-1 from the LLL path
  MatR B;             // 2K x 2n_rT receive filter
  VecR layer_noise;   // effective noise power g(a_m, b_m) per layer
  std::int64_t det_A = 0;
};

// Effective noise power of one layer:
//   g(a, b) = ||b*Heff - a||^2 * Ebar + n_t/(2P) * ||b||^2
double layer_noise_power(const VecR& a, const VecR& b, const MatR& Heff,
                         double P, double Ebar, int n_t);

// The per-layer optimum receive filter for a given integer row a.
VecR mmse_filter_row(const VecR& a, const MatR& Heff, double P, double Ebar,
                     int n_t);

// Chooses A by LLL-reducing the lattice whose Gram matrix is the MMSE noise
// metric, then fills each B row with the closed-form optimum filter.
// Rejects rank-deficient effective channels.
IFEqualizer select_equalizer(const EffectiveChannel& Heff, double P,
                             double Ebar);

// Three-step IF decoding: filter, undo centering/scaling, round to the
// integer grid, reduce mod sqrt(M), solve A*s = r over the ring.
VecR decode(const VecR& y, const IFEqualizer& eq, const Constellation& c,
            double scale);

// Solves A*s = r (mod ring_size) by Gaussian elimination with unit pivots.
// Requires det(A) odd (invertible mod a power of 2).
std::vector<int> solve_mod_ring(const MatI& A, const std::vector<int>& r,
                                int ring_size);

// Chernoff bound exp(-P / (4 n_t ||b_m||^2)) per layer; diagnostic only.
VecR layer_error_bound(const IFEqualizer& eq, double P, int n_t);

// round half away from zero, componentwise
VecR round_half_away(const VecR& v);

}  // namespace stc
