#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace stc {

using Cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;
using VecR = Eigen::VectorXd;

// Linear dispersion design: codewords are X(s) = sum_k D_k s_k in 2K real
// symbols. Complex variables split as x_j = s_{2j-1} + i*s_{2j}.
struct LinearDesign {
  std::string name;
  int n_t = 0;
  int T = 0;
  int K = 0;
  std::vector<MatC> weights;  // 2K matrices, each n_t x T

  int num_real_symbols() const { return 2 * K; }
};

// Real code matrix R (2*n_t*T x 2K): column k is the real vectorization of
// D_k. Vectorization convention: a complex n_t x T matrix X maps to
// [rowstack(Re X); rowstack(Im X)], rows concatenated in order. This is the
// unique convention under which vec(H X(s)) = (H' kron I_T) R s.
struct CodeMatrix {
  MatR entries;
  double sigma_min = 0.0;  // least singular value of entries (the constant c3)
};

// Real vectorization of a complex matrix under the convention above.
VecR real_vec(const MatC& X);

// Builtin designs: alamouti, golden, cyclic_ext, example_xe.
// Throws std::invalid_argument listing the known names otherwise.
LinearDesign make_design(const std::string& name);

const std::vector<std::string>& known_designs();

// X(s) = sum_k D_k s_k; s must have length 2K.
MatC assemble(const LinearDesign& design, const VecR& s);

// Builds R and caches sigma_min. Throws if the weight matrices are linearly
// dependent (R rank-deficient).
CodeMatrix code_matrix(const LinearDesign& design);

// Parses a user-supplied design file. Format:
//   n_t <int>
//   T <int>
//   K <int>
//   then 2K weight matrices, each introduced by a line "matrix" followed by
//   n_t lines of T "re,im" pairs separated by whitespace.
// Shape violations are rejected with the offending line number.
LinearDesign parse_design_file(const std::string& path);

}  // namespace stc
