#include <doctest.h>

#include "stc/channel.hpp"
#include "stc/lattice.hpp"

using namespace stc;

namespace {

LatticeBasis random_int_basis(int n, std::uint64_t stream) {
  CounterRng rng(101, stream);
  while (true) {
    LatticeBasis b;
    b.rows.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        b.rows(i, j) = std::floor(rng.next_uniform() * 21.0) - 10.0;
    if (std::abs(b.rows.determinant()) > 0.5) return b;
  }
}

// independent oracle: exhaustive box search over coefficients
double brute_force_shortest_sq(const LatticeBasis& b, int box) {
  const int n = static_cast<int>(b.rows.rows());
  double best = -1.0;
  std::vector<int> x(n, -box);
  while (true) {
    VecR v = VecR::Zero(b.rows.cols());
    bool zero = true;
    for (int i = 0; i < n; ++i) {
      if (x[i] != 0) zero = false;
      v += static_cast<double>(x[i]) * b.rows.row(i).transpose();
    }
    if (!zero) {
      double ns = v.squaredNorm();
      if (best < 0 || ns < best) best = ns;
    }
    int k = 0;
    while (k < n && ++x[k] > box) x[k++] = -box;
    if (k == n) break;
  }
  return best;
}

}  // namespace

TEST_CASE("LLL leaves the identity basis unchanged") {
  LatticeBasis b;
  b.rows = MatR::Identity(4, 4);
  auto r = lll_reduce(b);
  CHECK((r.reduced.rows - MatR::Identity(4, 4)).norm() == 0.0);
  CHECK((r.unimodular - MatI::Identity(4, 4)).norm() == 0);
}

TEST_CASE("LLL transform is unimodular and preserves the lattice") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto b = random_int_basis(4, s);
    auto r = lll_reduce(b);
    CHECK(std::abs(int_det(r.unimodular)) == 1);
    MatR rebuilt = r.unimodular.cast<double>() * b.rows;
    CHECK((rebuilt - r.reduced.rows).norm() < 1e-9);
  }
}

TEST_CASE("LLL recovers the shortest vector of a near-parallel 2D basis") {
  LatticeBasis b;
  b.rows.resize(2, 2);
  b.rows << 1, 0, 0.5 + 1e-6, 1e-6;
  auto r = lll_reduce(b);
  auto svp = svp_enumerate(b);
  CHECK(r.reduced.rows.row(0).squaredNorm() ==
        doctest::Approx(svp.norm_sq).epsilon(1e-12));
}

TEST_CASE("LLL first vector within the 2^((n-1)/2) bound of lambda_1") {
  const double bound = std::pow(2.0, 1.5);
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto b = random_int_basis(4, 1000 + s);
    auto r = lll_reduce(b);
    auto svp = svp_enumerate(b);
    double b1 = r.reduced.rows.row(0).norm();
    double l1 = std::sqrt(svp.norm_sq);
    CHECK(b1 <= bound * l1 * (1 + 1e-9));
    CHECK(svp.norm_sq <= r.reduced.rows.row(0).squaredNorm() * (1 + 1e-9));
  }
}

TEST_CASE("LLL rejects bad inputs") {
  LatticeBasis b;
  b.rows.resize(2, 2);
  b.rows << 1, 2, 2, 4;
  CHECK_THROWS_AS(lll_reduce(b), std::invalid_argument);
  b.rows << 1, 0, 0, 1;
  CHECK_THROWS_AS(lll_reduce(b, 0.2), std::invalid_argument);
}

TEST_CASE("SVP on the standard basis breaks the tie toward e1") {
  LatticeBasis b;
  b.rows = MatR::Identity(2, 2);
  auto svp = svp_enumerate(b);
  CHECK(svp.norm_sq == doctest::Approx(1.0));
  CHECK(svp.coeffs(0) == 1);
  CHECK(svp.coeffs(1) == 0);
}

TEST_CASE("SVP scales homogeneously") {
  auto b = random_int_basis(3, 7);
  auto s1 = svp_enumerate(b);
  LatticeBasis scaled;
  scaled.rows = 3.0 * b.rows;
  auto s2 = svp_enumerate(scaled);
  CHECK(s2.norm_sq == doctest::Approx(9.0 * s1.norm_sq).epsilon(1e-12));
  CHECK(s2.coeffs == s1.coeffs);
}

TEST_CASE("SVP agrees with the brute-force box oracle on random 4D bases") {
  for (std::uint64_t s = 0; s < 25; ++s) {
    auto b = random_int_basis(4, 2000 + s);
    auto svp = svp_enumerate(b);
    double oracle = brute_force_shortest_sq(b, 4);
    // the box may miss the true minimum only if it is even shorter, never longer
    CHECK(svp.norm_sq <= oracle * (1 + 1e-9));
    if (svp.coeffs.cwiseAbs().maxCoeff() <= 4)
      CHECK(svp.norm_sq == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("SVP dimension guard") {
  LatticeBasis b;
  b.rows = MatR::Identity(13, 13);
  CHECK_THROWS_WITH_AS(svp_enumerate(b), doctest::Contains("LLL"),
                       std::invalid_argument);
}

TEST_CASE("dual basis") {
  SUBCASE("identity is self-dual") {
    LatticeBasis b;
    b.rows = MatR::Identity(3, 3);
    auto d = dual_basis(b);
    CHECK((d.rows - MatR::Identity(3, 3)).norm() < 1e-12);
  }
  SUBCASE("orthogonal rows invert their norms") {
    LatticeBasis b;
    b.rows = MatR::Zero(2, 2);
    b.rows(0, 0) = 2.0;
    b.rows(1, 1) = 0.25;
    auto d = dual_basis(b);
    CHECK(d.rows(0, 0) == doctest::Approx(0.5));
    CHECK(d.rows(1, 1) == doctest::Approx(4.0));
  }
  SUBCASE("primal/dual pairings are Kronecker deltas") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      auto b = random_int_basis(4, 3000 + s);
      auto d = dual_basis(b);
      MatR pair = d.rows * b.rows.transpose();
      CHECK((pair - MatR::Identity(4, 4)).norm() < 1e-9);
    }
  }
}

TEST_CASE("successive minima bound on simple lattices") {
  SUBCASE("identity, K=1") {
    LatticeBasis b;
    b.rows = MatR::Identity(2, 2);
    auto rep = successive_minima_check(b, 1);
    CHECK(rep.eps1_sq == doctest::Approx(1.0));
    CHECK(rep.eps2K_dual_sq == doctest::Approx(1.0));
    CHECK(rep.bound == doctest::Approx(5.0));
    CHECK(rep.holds);
  }
  SUBCASE("scaled identity has product 1") {
    LatticeBasis b;
    b.rows = 3.0 * MatR::Identity(4, 4);
    auto rep = successive_minima_check(b, 2);
    CHECK(rep.eps1_sq == doctest::Approx(9.0));
    CHECK(rep.eps2K_dual_sq == doctest::Approx(1.0 / 9.0));
    CHECK(rep.holds);
  }
}

TEST_CASE("successive minima bound holds on 100 random Alamouti lattices") {
  auto design = make_design("alamouti");
  CodeMatrix R = code_matrix(design);
  for (std::uint64_t s = 0; s < 100; ++s) {
    CounterRng rng(5000, s);
    auto h = sample_channel(2, 2, rng);
    EffectiveChannel eff = effective_channel(h.H, R, 2, 2);
    LatticeBasis b;
    b.rows = eff.matrix.transpose();  // rows of Heff^T generate the lattice
    auto rep = successive_minima_check(b, 2);
    CHECK(rep.holds);
  }
}
