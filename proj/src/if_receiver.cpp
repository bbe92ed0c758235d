#include "stc/if_receiver.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

namespace stc {

double layer_noise_power(const VecR& a, const VecR& b, const MatR& Heff,
                         double P, double Ebar, int n_t) {
  VecR quant = Heff.transpose() * b - a;
  return quant.squaredNorm() * Ebar + n_t / (2.0 * P) * b.squaredNorm();
}

VecR mmse_filter_row(const VecR& a, const MatR& Heff, double P, double Ebar,
                     int n_t) {
  // exact minimizer of g(a, .): b = a H^T (H H^T + n_t/(2 P Ebar) I)^-1
  const int rows = static_cast<int>(Heff.rows());
  MatR gram = Heff * Heff.transpose() +
              n_t / (2.0 * P * Ebar) * MatR::Identity(rows, rows);
  return gram.ldlt().solve(Heff * a);
}

IFEqualizer select_equalizer(const EffectiveChannel& Heff, double P,
                             double Ebar) {
  if (Heff.rank_deficient)
    throw std::invalid_argument(
        "select_equalizer: rank-deficient effective channel (underdetermined "
        "system, IF not applicable)");
  if (P <= 0) throw std::invalid_argument("select_equalizer: P must be positive");
  const MatR& H = Heff.matrix;
  const int n = static_cast<int>(H.cols());  // 2K

  // g(a, b_opt(a)) = a V a^T with V = Ebar (I + (2 P Ebar / n_t) H^T H)^-1;
  // the best unimodular A is a reduced basis of the lattice with Gram V
  MatR V = Ebar * (MatR::Identity(n, n) +
                   (2.0 * P * Ebar / Heff.n_t) * H.transpose() * H)
                      .inverse();
  Eigen::LLT<MatR> llt(V);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("select_equalizer: noise metric not positive definite");
  MatR L = llt.matrixL();

  LatticeBasis metric;
  metric.rows = L;
  ReductionResult red = lll_reduce(metric);

  IFEqualizer eq;
  eq.A = red.unimodular;
  eq.det_A = int_det(eq.A);
  eq.B.resize(n, H.rows());
  eq.layer_noise.resize(n);
  for (int m = 0; m < n; ++m) {
    VecR a = eq.A.row(m).cast<double>().transpose();
    VecR b = mmse_filter_row(a, H, P, Ebar, Heff.n_t);
    eq.B.row(m) = b.transpose();
    eq.layer_noise(m) = layer_noise_power(a, b, H, P, Ebar, Heff.n_t);
  }
  return eq;
}

VecR round_half_away(const VecR& v) {
  VecR out(v.size());
  for (int i = 0; i < v.size(); ++i)
    out(i) = v(i) >= 0 ? std::floor(v(i) + 0.5) : std::ceil(v(i) - 0.5);
  return out;
}

std::vector<int> solve_mod_ring(const MatI& A, const std::vector<int>& r,
                                int ring_size) {
  const int n = static_cast<int>(A.rows());
  if (static_cast<int>(r.size()) != n)
    throw std::invalid_argument("solve_mod_ring: size mismatch");
  auto mod = [&](std::int64_t v) {
    std::int64_t m = v % ring_size;
    return static_cast<int>(m < 0 ? m + ring_size : m);
  };
  // modular inverse of an odd unit by extended Euclid
  auto inv_mod = [&](int a) {
    int t = 0, newt = 1, rr = ring_size, newr = a;
    while (newr != 0) {
      int q = rr / newr;
      std::swap(t -= q * newt, newt);
      std::swap(rr -= q * newr, newr);
    }
    if (rr != 1) throw std::invalid_argument("solve_mod_ring: pivot not a unit");
    return mod(t);
  };

  std::vector<std::vector<int>> m(n, std::vector<int>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = mod(A(i, j));
    m[i][n] = mod(r[i]);
  }
  // forward elimination with unit pivots
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (m[i][col] % 2 == 1) { piv = i; break; }
    if (piv < 0)
      throw std::invalid_argument(
          "solve_mod_ring: matrix not invertible over the ring (even pivot "
          "column)");
    std::swap(m[col], m[piv]);
    int inv = inv_mod(m[col][col]);
    for (int j = col; j <= n; ++j)
      m[col][j] = mod(static_cast<std::int64_t>(m[col][j]) * inv);
    for (int i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      int f = m[i][col];
      for (int j = col; j <= n; ++j)
        m[i][j] = mod(m[i][j] - static_cast<std::int64_t>(f) * m[col][j]);
    }
  }
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = m[i][n];
  return s;
}

VecR decode(const VecR& y, const IFEqualizer& eq, const Constellation& c,
            double scale) {
  const int n = static_cast<int>(eq.A.rows());
  if (eq.det_A % 2 == 0)
    throw std::invalid_argument("decode: A not invertible over the ring");
  VecR tilde = eq.B * y;
  // undo the transmit power scaling so Step 1 rounds on the ring grid, then
  // revert the centering shift through A
  VecR shifted = tilde / scale;
  VecR a_offset = eq.A.cast<double>() * VecR::Constant(n, c.offset);
  VecR hat = round_half_away(shifted + a_offset);

  std::vector<int> r(n);
  for (int i = 0; i < n; ++i) {
    auto v = static_cast<std::int64_t>(hat(i));
    std::int64_t m = v % c.ring_size;
    r[i] = static_cast<int>(m < 0 ? m + c.ring_size : m);
  }
  std::vector<int> s = solve_mod_ring(eq.A, r, c.ring_size);
  VecR out(n);
  for (int i = 0; i < n; ++i) out(i) = s[i];
  return out;
}

VecR layer_error_bound(const IFEqualizer& eq, double P, int n_t) {
  VecR out(eq.B.rows());
  for (int m = 0; m < eq.B.rows(); ++m) {
    double bn = eq.B.row(m).squaredNorm();
    out(m) = bn == 0.0 ? 0.0 : std::exp(-P / (4.0 * n_t * bn));
  }
  return out;
}

}  // namespace stc
