#include "stc/properties.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace stc {

namespace {

// Gamma tail of integer order k: integral_{c}^{inf} w^{k-1} e^{-w} dw
//   = (k-1)! e^{-c} sum_{j=0}^{k-1} c^j / j!
double gamma_tail(int k, double c) {
  double term = 1.0;  // c^j / j!
  double sum = 1.0;
  for (int j = 1; j < k; ++j) {
    term *= c / j;
    sum += term;
  }
  double fact = 1.0;
  for (int j = 2; j < k; ++j) fact *= j;
  return fact * std::exp(-c) * sum;
}

MatR wishart_tail_matrix(int n_t, double c1) {
  MatR M(n_t, n_t);
  for (int i = 1; i <= n_t; ++i)
    for (int j = 1; j <= n_t; ++j) M(i - 1, j - 1) = gamma_tail(i + j - 1, c1);
  return M;
}

}  // namespace

double wishart_min_eig_ccdf(int n_t, double c1) {
  if (n_t < 1) throw std::invalid_argument("wishart_min_eig_ccdf: n_t >= 1");
  if (c1 < 0) throw std::invalid_argument("wishart_min_eig_ccdf: c1 must be >= 0");
  if (n_t == 1) return std::exp(-c1);
  double num = std::abs(wishart_tail_matrix(n_t, c1).determinant());
  double den = std::abs(wishart_tail_matrix(n_t, 0.0).determinant());
  return num / den;
}

RadiusBudget choose_radius(const LinearDesign& design, double target_tail) {
  if (!(target_tail > 0 && target_tail < 1))
    throw std::invalid_argument("choose_radius: target_tail must be in (0,1)");
  RadiusBudget rb;
  rb.c3 = code_matrix(design).sigma_min;
  if (rb.c3 <= 0)
    throw std::invalid_argument("choose_radius: rank-deficient code matrix");
  const int n_t = design.n_t;
  auto tail = [&](double c1) { return 1.0 - wishart_min_eig_ccdf(n_t, c1); };

  // tail is increasing in c1; find the largest c1 with tail <= target
  double lo = 0.0, hi = 1.0;
  while (tail(hi) <= target_tail) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (tail(mid) <= target_tail ? lo : hi) = mid;
  }
  rb.c1 = lo;
  rb.tail_prob = tail(lo);
  rb.C = 1.0 / (rb.c3 * rb.c3 * rb.c1);

  for (double c1 = 1.0; c1 > 1e-8; c1 *= 0.5) {
    double t = tail(c1);
    if (t <= 0) break;
    rb.curve.emplace_back(std::log10(1.0 / (rb.c3 * rb.c3 * c1)), std::log10(t));
  }
  return rb;
}

double ball_count_estimate(int dim, double C) {
  double side = 2.0 * std::floor(std::sqrt(C)) + 1.0;
  double box = std::pow(side, dim);
  // covering bound: lattice points in the ball of radius r fit inside the
  // ball of radius r + sqrt(dim)/2, whose volume is pi^(d/2)/Gamma(d/2+1) r^d
  double r = std::sqrt(C) + 0.5 * std::sqrt(static_cast<double>(dim));
  double log_vol = 0.5 * dim * std::log(M_PI) + dim * std::log(r) -
                   std::lgamma(0.5 * dim + 1.0);
  double ball = std::exp(std::min(log_vol, 700.0));
  return std::min(box, ball);
}

void enumerate_ball(int dim, double C, const std::function<void(const VecR&)>& fn,
                    double work_budget) {
  if (C <= 0) throw std::invalid_argument("enumerate_ball: C must be positive");
  if (ball_count_estimate(dim, C) > work_budget)
    throw std::runtime_error("enumerate_ball: work estimate " +
                             std::to_string(ball_count_estimate(dim, C)) +
                             " exceeds budget");
  const int L = static_cast<int>(std::floor(std::sqrt(C)));
  VecR d = VecR::Zero(dim);
  auto rec = [&](auto&& self, int k, double norm_sq) -> void {
    if (k == dim) {
      if (norm_sq > 0) fn(d);
      return;
    }
    for (int v = -L; v <= L; ++v) {
      double ns = norm_sq + static_cast<double>(v) * v;
      if (ns > C) continue;
      d(k) = v;
      self(self, k + 1, ns);
    }
    d(k) = 0;
  };
  rec(rec, 0, 0.0);
}

namespace {

PropertyReport check_ball(const LinearDesign& design, double C, Criterion crit) {
  PropertyReport rep;
  rep.design = design.name;
  rep.criterion = crit;
  rep.C = C;
  bool first = true;
  enumerate_ball(design.num_real_symbols(), C, [&](const VecR& d) {
    MatC X = assemble(design, d);
    double value, threshold;
    double fro = X.norm();
    if (crit == Criterion::rnvs) {
      Eigen::JacobiSVD<MatC> svd(X);
      value = svd.singularValues()(svd.singularValues().size() - 1);
      // exact zeros survive this tolerance, floating noise does not
      threshold = 1e-7 * fro;
    } else {
      value = std::abs((X * X.adjoint()).determinant());
      double scale = std::max(1.0, std::pow(fro, 2.0 * design.n_t));
      threshold = 1e-9 * scale;
    }
    ++rep.vectors_checked;
    if (first || value < rep.min_value) {
      first = false;
      rep.min_value = value;
      if (value < threshold) {
        rep.holds = false;
        rep.witness = d;
      }
    }
  });
  return rep;
}

}  // namespace

PropertyReport check_rnvs(const LinearDesign& design, double C) {
  return check_ball(design, C, Criterion::rnvs);
}

PropertyReport check_nvd(const LinearDesign& design, double C) {
  return check_ball(design, C, Criterion::nvd);
}

double sigma_min_sq_closed_form(const std::string& design_name, Cplx x1,
                                Cplx x2) {
  double a1 = std::norm(x1), a2 = std::norm(x2);
  if (design_name == "alamouti") return a1 + a2;
  if (design_name == "cyclic_ext") {
    const Cplx gamma(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    return a1 + a2 - std::abs(x1 * std::conj(x2) +
                              std::conj(gamma) * std::conj(x1) * x2);
  }
  throw std::invalid_argument("sigma_min_sq_closed_form: no closed form for '" +
                              design_name + "'");
}

}  // namespace stc
