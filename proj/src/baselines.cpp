#include "stc/baselines.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

namespace stc {

namespace {

VecR quantize_to_ring(const VecR& est, const Constellation& c) {
  VecR out(est.size());
  for (int i = 0; i < est.size(); ++i) {
    double v = est(i) >= 0 ? std::floor(est(i) + 0.5) : std::ceil(est(i) - 0.5);
    out(i) = std::min(static_cast<double>(c.ring_size - 1), std::max(0.0, v));
  }
  return out;
}

}  // namespace

VecR decode_zf(const VecR& y, const EffectiveChannel& Heff,
               const Constellation& c, double scale) {
  if (Heff.rank_deficient)
    throw std::invalid_argument("decode_zf: rank-deficient effective channel");
  const MatR& H = Heff.matrix;
  VecR est = (H.transpose() * H).ldlt().solve(H.transpose() * y);
  return quantize_to_ring(est / scale + VecR::Constant(est.size(), c.offset), c);
}

VecR decode_mmse(const VecR& y, const EffectiveChannel& Heff, double P,
                 double Ebar, const Constellation& c, double scale) {
  if (Heff.rank_deficient)
    throw std::invalid_argument("decode_mmse: rank-deficient effective channel");
  const MatR& H = Heff.matrix;
  const int rows = static_cast<int>(H.rows());
  MatR gram = H * H.transpose() +
              Heff.n_t / (2.0 * P * Ebar) * MatR::Identity(rows, rows);
  VecR est = H.transpose() * gram.ldlt().solve(y);
  return quantize_to_ring(est / scale + VecR::Constant(est.size(), c.offset), c);
}

MlTable make_ml_table(const EffectiveChannel& Heff, const Constellation& c,
                      double scale) {
  const int n = static_cast<int>(Heff.matrix.cols());  // 2K
  double hyp_count = std::pow(static_cast<double>(c.ring_size), n);
  if (hyp_count > 65536.0)
    throw std::invalid_argument("decode_ml: search space exceeds 65536 hypotheses");
  const auto count = static_cast<std::int64_t>(hyp_count);

  MlTable t;
  t.codewords.resize(Heff.matrix.rows(), count);
  t.symbols.reserve(count);
  VecR s = VecR::Zero(n);
  // lexicographic order over symbol vectors (last index fastest)
  for (std::int64_t idx = 0; idx < count; ++idx) {
    std::int64_t rem = idx;
    for (int k = n - 1; k >= 0; --k) {
      s(k) = static_cast<double>(rem % c.ring_size);
      rem /= c.ring_size;
    }
    t.codewords.col(idx) =
        Heff.matrix * (scale * (s.array() - c.offset).matrix());
    t.symbols.push_back(s);
  }
  return t;
}

VecR decode_ml(const VecR& y, const MlTable& table) {
  std::int64_t best = 0;
  double best_d = (y - table.codewords.col(0)).squaredNorm();
  for (std::int64_t i = 1; i < table.codewords.cols(); ++i) {
    double d = (y - table.codewords.col(i)).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return table.symbols[best];
}

VecR decode_ml(const VecR& y, const EffectiveChannel& Heff,
               const Constellation& c, double scale) {
  return decode_ml(y, make_ml_table(Heff, c, scale));
}

}  // namespace stc
