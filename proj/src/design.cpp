#include "stc/design.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stc {

namespace {

const Cplx kI(0.0, 1.0);

// Appends the real-symbol pair (Re x_j, Im x_j) for a complex-linear weight W.
void push_complex_weight(std::vector<MatC>& out, const MatC& W) {
  out.push_back(W);
  out.push_back(kI * W);
}

LinearDesign build_alamouti() {
  LinearDesign d;
  d.name = "alamouti";
  d.n_t = 2;
  d.T = 2;
  d.K = 2;
  // X = [x1 x2; -x2* x1*], not complex-linear, so the four real weights
  // are written out directly.
  MatC D1(2, 2), D2(2, 2), D3(2, 2), D4(2, 2);
  D1 << 1, 0, 0, 1;
  D2 << kI, 0, 0, -kI;
  D3 << 0, 1, -1, 0;
  D4 << 0, kI, kI, 0;
  d.weights = {D1, D2, D3, D4};
  return d;
}

LinearDesign build_golden() {
  // Golden code (Belfiore-Rekaya-Viterbo): theta the golden ratio,
  // alpha = 1 + i(1 - theta), with the standard 1/sqrt(5) normalization.
  //   X = 1/sqrt(5) * [ alpha(x1 + x2 th)      alpha(x3 + x4 th)
  //                     i albar(x3 + x4 thbar) albar(x1 + x2 thbar) ]
  LinearDesign d;
  d.name = "golden";
  d.n_t = 2;
  d.T = 2;
  d.K = 4;
  const double th = (1.0 + std::sqrt(5.0)) / 2.0;
  const double thbar = (1.0 - std::sqrt(5.0)) / 2.0;
  const Cplx alpha = 1.0 + kI * (1.0 - th);
  const Cplx albar = 1.0 + kI * (1.0 - thbar);
  const double n = 1.0 / std::sqrt(5.0);
  MatC W1(2, 2), W2(2, 2), W3(2, 2), W4(2, 2);
  W1 << alpha, 0, 0, albar;
  W2 << alpha * th, 0, 0, albar * thbar;
  W3 << 0, alpha, kI * albar, 0;
  W4 << 0, alpha * th, kI * albar * thbar, 0;
  for (const MatC& W : {W1, W2, W3, W4}) push_complex_weight(d.weights, n * W);
  return d;
}

LinearDesign build_cyclic_ext() {
  // X = [x1 x2; x2 gamma*x1] with gamma = (1+i)/sqrt(2)
  LinearDesign d;
  d.name = "cyclic_ext";
  d.n_t = 2;
  d.T = 2;
  d.K = 2;
  const Cplx gamma = (1.0 + kI) / std::sqrt(2.0);
  MatC W1(2, 2), W2(2, 2);
  W1 << 1, 0, 0, gamma;
  W2 << 0, 1, 1, 0;
  push_complex_weight(d.weights, W1);
  push_complex_weight(d.weights, W2);
  return d;
}

LinearDesign build_example_xe() {
  // X = [x1 2*x2; 2*x2 x1]
  LinearDesign d;
  d.name = "example_xe";
  d.n_t = 2;
  d.T = 2;
  d.K = 2;
  MatC W1(2, 2), W2(2, 2);
  W1 << 1, 0, 0, 1;
  W2 << 0, 2, 2, 0;
  push_complex_weight(d.weights, W1);
  push_complex_weight(d.weights, W2);
  return d;
}

}  // namespace

const std::vector<std::string>& known_designs() {
  static const std::vector<std::string> names = {"alamouti", "golden",
                                                 "cyclic_ext", "example_xe"};
  return names;
}

LinearDesign make_design(const std::string& name) {
  if (name == "alamouti") return build_alamouti();
  if (name == "golden") return build_golden();
  if (name == "cyclic_ext") return build_cyclic_ext();
  if (name == "example_xe") return build_example_xe();
  std::string msg = "unknown design '" + name + "'; known designs:";
  for (const auto& n : known_designs()) msg += " " + n;
  throw std::invalid_argument(msg);
}

VecR real_vec(const MatC& X) {
  const int rows = static_cast<int>(X.rows());
  const int cols = static_cast<int>(X.cols());
  VecR v(2 * rows * cols);
  for (int i = 0; i < rows; ++i)
    for (int t = 0; t < cols; ++t) {
      v(i * cols + t) = X(i, t).real();
      v(rows * cols + i * cols + t) = X(i, t).imag();
    }
  return v;
}

MatC assemble(const LinearDesign& design, const VecR& s) {
  if (s.size() != design.num_real_symbols())
    throw std::invalid_argument("assemble: symbol vector length " +
                                std::to_string(s.size()) + ", expected " +
                                std::to_string(design.num_real_symbols()));
  MatC X = MatC::Zero(design.n_t, design.T);
  for (int k = 0; k < design.num_real_symbols(); ++k)
    X += design.weights[k] * s(k);
  return X;
}

CodeMatrix code_matrix(const LinearDesign& design) {
  const int rows = 2 * design.n_t * design.T;
  const int cols = design.num_real_symbols();
  CodeMatrix cm;
  cm.entries.resize(rows, cols);
  for (int k = 0; k < cols; ++k) cm.entries.col(k) = real_vec(design.weights[k]);
  Eigen::JacobiSVD<MatR> svd(cm.entries);
  cm.sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
  const double sigma_max = svd.singularValues()(0);
  if (cm.sigma_min < 1e-10 * sigma_max)
    throw std::invalid_argument(
        "design '" + design.name +
        "' has linearly dependent weight matrices (rank-deficient R)");
  return cm;
}

LinearDesign parse_design_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open design file: " + path);
  LinearDesign d;
  d.name = path;
  d.n_t = d.T = d.K = -1;
  int lineno = 0;
  std::string line;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
  };

  int matrix_row = -1;  // >= 0 while inside a matrix block
  MatC current;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (matrix_row >= 0) {
      // expect T "re,im" pairs on this row
      for (int t = 0; t < d.T; ++t) {
        if (t > 0 && !(ls >> tok)) fail("expected " + std::to_string(d.T) +
                                        " re,im pairs in matrix row");
        double re, im;
        char comma;
        std::istringstream ps(tok);
        if (!(ps >> re >> comma >> im) || comma != ',')
          fail("malformed re,im pair '" + tok + "'");
        current(matrix_row, t) = Cplx(re, im);
      }
      if (++matrix_row == d.n_t) {
        d.weights.push_back(current);
        matrix_row = -1;
      }
      continue;
    }
    if (tok == "n_t") {
      if (!(ls >> d.n_t) || d.n_t < 1) fail("bad n_t");
    } else if (tok == "T") {
      if (!(ls >> d.T) || d.T < 1) fail("bad T");
    } else if (tok == "K") {
      if (!(ls >> d.K) || d.K < 1) fail("bad K");
    } else if (tok == "matrix") {
      if (d.n_t < 0 || d.T < 0 || d.K < 0)
        fail("matrix before n_t/T/K header");
      if (static_cast<int>(d.weights.size()) == 2 * d.K)
        fail("more than 2K weight matrices");
      current = MatC::Zero(d.n_t, d.T);
      matrix_row = 0;
    } else {
      fail("unexpected token '" + tok + "'");
    }
  }
  if (matrix_row >= 0) fail("unterminated matrix block");
  if (d.n_t < 0 || d.T < 0 || d.K < 0)
    throw std::runtime_error(path + ": missing n_t/T/K header");
  if (d.T < d.n_t)
    throw std::runtime_error(path + ": T must be >= n_t");
  if (static_cast<int>(d.weights.size()) != 2 * d.K)
    throw std::runtime_error(path + ": expected " + std::to_string(2 * d.K) +
                             " weight matrices, got " +
                             std::to_string(d.weights.size()));
  return d;
}

}  // namespace stc
