#pragma once

#include "stc/design.hpp"

#include <functional>
#include <string>
#include <vector>

namespace stc {

struct RadiusBudget {
  double C = 0.0;          // squared-radius bound on ||d||^2
  double c1 = 0.0;         // eigenvalue threshold
  double tail_prob = 0.0;  // Prob(||d||^2 > C)
  double c3 = 0.0;         // sigma_min(R)
  // (log10 C, log10 tail) samples for the radius-selection curve
  std::vector<std::pair<double, double>> curve;
};

enum class Criterion { rnvs, nvd };

struct PropertyReport {
  std::string design;
  Criterion criterion = Criterion::rnvs;
  bool holds = true;              // holds_on_tested_set when true
  VecR witness;                   // violating coefficient vector if refuted
  double min_value = 0.0;         // smallest sigma_min or |det(X X^H)| seen
  double C = 0.0;
  std::int64_t vectors_checked = 0;
};

// CCDF of the least eigenvalue of the square n_t x n_t complex Wishart
// matrix: |det(M_c1)| / |det(M_0)| with M(i,j) the Gamma tail of integer
// order i+j-1, computed by the exact finite sum.
double wishart_min_eig_ccdf(int n_t, double c1);

// Smallest C = 1/(c3^2 c1) with Prob(||d||^2 > C) <= target_tail, by
// bisection on c1. Also emits curve data for plotting.
RadiusBudget choose_radius(const LinearDesign& design, double target_tail);

// Number of integer vectors in the closed ball of squared radius C
// (including 0), used as the work estimate for the budget guard.
double ball_count_estimate(int dim, double C);

// Yields every nonzero integer vector with ||d||^2 <= C exactly once, in
// lexicographic order over [-floor(sqrt(C)), floor(sqrt(C))]^dim.
// Rejects when the box count exceeds the work budget.
void enumerate_ball(int dim, double C, const std::function<void(const VecR&)>& fn,
                    double work_budget = 2e8);

PropertyReport check_rnvs(const LinearDesign& design, double C);
PropertyReport check_nvd(const LinearDesign& design, double C);

// Closed-form squared minimum singular value for the alamouti and
// cyclic_ext designs as a function of the two complex variables.
double sigma_min_sq_closed_form(const std::string& design_name, Cplx x1,
                                Cplx x2);

}  // namespace stc
