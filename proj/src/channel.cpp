#include "stc/channel.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace stc {

Constellation make_constellation(int M) {
  if (M < 4) throw std::invalid_argument("M must be >= 4");
  int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(M))));
  if (root * root != M || (root & (root - 1)) != 0)
    throw std::invalid_argument("M must be an even power of 2");
  Constellation c;
  c.M = M;
  c.ring_size = root;
  c.offset = (root - 1) / 2.0;
  double e = 0.0;
  for (int v = 0; v < root; ++v) e += (v - c.offset) * (v - c.offset);
  c.energy = e / root;
  return c;
}

double transmit_scale(const LinearDesign& design, const Constellation& c) {
  double total = 0.0;
  for (const MatC& D : design.weights) total += D.squaredNorm();
  double mean_entry = total / (design.n_t * design.T);
  return 1.0 / std::sqrt(c.energy * mean_entry);
}

ChannelRealization sample_channel(int n_r, int n_t, CounterRng& rng) {
  if (n_r < 1 || n_t < 1) throw std::invalid_argument("n_r, n_t must be >= 1");
  ChannelRealization h;
  h.seed_tag = rng.stream();
  h.H.resize(n_r, n_t);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n_r; ++i)
    for (int j = 0; j < n_t; ++j) {
      double re = rng.next_gaussian() * inv_sqrt2;
      double im = rng.next_gaussian() * inv_sqrt2;
      h.H(i, j) = Cplx(re, im);
    }
  return h;
}

MatR embed_real(const MatC& H) {
  const int r = static_cast<int>(H.rows());
  const int c = static_cast<int>(H.cols());
  MatR Hp(2 * r, 2 * c);
  Hp.topLeftCorner(r, c) = H.real();
  Hp.topRightCorner(r, c) = -H.imag();
  Hp.bottomLeftCorner(r, c) = H.imag();
  Hp.bottomRightCorner(r, c) = H.real();
  return Hp;
}

EffectiveChannel effective_channel(const MatC& H, const CodeMatrix& R, int n_t,
                                   int T) {
  if (H.cols() != n_t || R.entries.rows() != 2 * n_t * T)
    throw std::invalid_argument("effective_channel: incompatible shapes");
  const int n_r = static_cast<int>(H.rows());
  MatR Hp = embed_real(H);
  EffectiveChannel eff;
  eff.n_t = n_t;
  eff.T = T;
  eff.matrix.resize(2 * n_r * T, R.entries.cols());
  // (H' kron I_T) acts blockwise: output block i of length T is
  // sum_j H'(i,j) * input block j.
  MatR kron = MatR::Zero(2 * n_r * T, 2 * n_t * T);
  for (int i = 0; i < 2 * n_r; ++i)
    for (int j = 0; j < 2 * n_t; ++j)
      kron.block(i * T, j * T, T, T) = Hp(i, j) * MatR::Identity(T, T);
  eff.matrix = kron * R.entries;
  if (eff.matrix.rows() < eff.matrix.cols()) {
    eff.rank_deficient = true;
  } else {
    Eigen::JacobiSVD<MatR> svd(eff.matrix);
    const auto& sv = svd.singularValues();
    eff.rank_deficient = sv(sv.size() - 1) < 1e-10 * sv(0);
  }
  return eff;
}

VecR transmit(const EffectiveChannel& Heff, const Constellation& c,
              double scale, const VecR& s, double P, CounterRng& rng,
              bool noiseless) {
  if (s.size() != Heff.matrix.cols())
    throw std::invalid_argument("transmit: symbol vector length mismatch");
  for (int k = 0; k < s.size(); ++k) {
    double v = s(k);
    if (v != std::floor(v) || v < 0 || v >= c.ring_size)
      throw std::invalid_argument("transmit: symbol outside ring");
  }
  if (P <= 0) throw std::invalid_argument("transmit: P must be positive");
  VecR centered = scale * (s.array() - c.offset).matrix();
  VecR y = Heff.matrix * centered;
  if (!noiseless) {
    const double sigma = std::sqrt(Heff.n_t / (2.0 * P));
    for (int i = 0; i < y.size(); ++i) y(i) += sigma * rng.next_gaussian();
  }
  return y;
}

}  // namespace stc
