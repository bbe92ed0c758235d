#include <doctest.h>

#include "stc/baselines.hpp"
#include "stc/if_receiver.hpp"

#include <bit>

using namespace stc;

namespace {

struct Fixture {
  LinearDesign design;
  CodeMatrix R;
  Constellation con;
  double scale;
  double ebar;

  explicit Fixture(const std::string& name, int M)
      : design(make_design(name)),
        R(code_matrix(design)),
        con(make_constellation(M)),
        scale(transmit_scale(design, con)),
        ebar(effective_symbol_energy(con, scale)) {}
};

VecR random_ring_vector(const Constellation& c, int n, CounterRng& rng) {
  VecR s(n);
  for (int i = 0; i < n; ++i)
    s(i) = std::min<double>(c.ring_size - 1,
                            std::floor(rng.next_uniform() * c.ring_size));
  return s;
}

}  // namespace

TEST_CASE("all three decoders are exact in the noiseless limit") {
  Fixture f("alamouti", 4);
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    CounterRng rng(71, rep);
    auto h = sample_channel(2, 2, rng);
    EffectiveChannel eff = effective_channel(h.H, f.R, 2, 2);
    VecR s = random_ring_vector(f.con, 4, rng);
    VecR y = transmit(eff, f.con, f.scale, s, 1e9, rng, true);
    CHECK((decode_zf(y, eff, f.con, f.scale) - s).norm() == 0.0);
    CHECK((decode_mmse(y, eff, 1e9, f.ebar, f.con, f.scale) - s).norm() == 0.0);
    CHECK((decode_ml(y, eff, f.con, f.scale) - s).norm() == 0.0);
  }
}

TEST_CASE("ZF equals IF decoding when A = I is forced") {
  Fixture f("alamouti", 16);
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    CounterRng rng(72, rep);
    auto h = sample_channel(2, 2, rng);
    EffectiveChannel eff = effective_channel(h.H, f.R, 2, 2);
    VecR s = random_ring_vector(f.con, 4, rng);
    VecR y = transmit(eff, f.con, f.scale, s, 25.0, rng);

    IFEqualizer eq;
    eq.A = MatI::Identity(4, 4);
    eq.det_A = 1;
    const MatR& H = eff.matrix;
    eq.B = ((H.transpose() * H).ldlt().solve(H.transpose()));  // ZF filter
    VecR if_out = decode(y, eq, f.con, f.scale);
    VecR zf_out = decode_zf(y, eff, f.con, f.scale);
    // identical up to ring clamping (IF wraps, ZF clamps); compare where the
    // unclamped estimate stays in range
    VecR est = eq.B * y / f.scale + VecR::Constant(4, f.con.offset);
    bool in_range = true;
    for (int k = 0; k < 4; ++k)
      if (est(k) < -0.49 || est(k) > f.con.ring_size - 0.51) in_range = false;
    if (in_range) CHECK((if_out - zf_out).norm() == 0.0);
  }
}

TEST_CASE("MMSE converges to ZF as P grows") {
  Fixture f("golden", 4);
  for (std::uint64_t rep = 0; rep < 1000; ++rep) {
    CounterRng rng(73, rep);
    auto h = sample_channel(2, 2, rng);
    EffectiveChannel eff = effective_channel(h.H, f.R, 2, 2);
    VecR s = random_ring_vector(f.con, 8, rng);
    VecR y = transmit(eff, f.con, f.scale, s, 1e9, rng, true);
    CHECK((decode_mmse(y, eff, 1e12, f.ebar, f.con, f.scale) -
           decode_zf(y, eff, f.con, f.scale))
              .norm() == 0.0);
  }
}

TEST_CASE("scalar system: ML equals per-component rounding") {
  // single receive antenna, single symbol pair: n_t = T = K = 1
  LinearDesign d;
  d.name = "scalar";
  d.n_t = 1;
  d.T = 1;
  d.K = 1;
  MatC W(1, 1);
  W << 1.0;
  d.weights = {W, Cplx(0, 1) * W};
  CodeMatrix R = code_matrix(d);
  auto con = make_constellation(16);
  double scale = transmit_scale(d, con);
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    CounterRng rng(74, rep);
    auto h = sample_channel(1, 1, rng);
    EffectiveChannel eff = effective_channel(h.H, R, 1, 1);
    if (eff.rank_deficient) continue;
    VecR s = random_ring_vector(con, 2, rng);
    VecR y = transmit(eff, con, scale, s, 15.0, rng);
    CHECK((decode_ml(y, eff, con, scale) - decode_zf(y, eff, con, scale))
              .norm() == 0.0);
  }
}

TEST_CASE("ML optimality against an independent scan") {
  Fixture f("alamouti", 4);
  for (std::uint64_t rep = 0; rep < 1000; ++rep) {
    CounterRng rng(75, rep);
    auto h = sample_channel(2, 2, rng);
    EffectiveChannel eff = effective_channel(h.H, f.R, 2, 2);
    VecR s = random_ring_vector(f.con, 4, rng);
    VecR y = transmit(eff, f.con, f.scale, s, 8.0, rng);
    VecR ml = decode_ml(y, eff, f.con, f.scale);
    double ml_dist =
        (y - eff.matrix * (f.scale * (ml.array() - f.con.offset).matrix()))
            .squaredNorm();
    // independently coded nested scan over the 2^4 hypotheses
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int cc = 0; cc < 2; ++cc)
          for (int dd = 0; dd < 2; ++dd) {
            VecR cand(4);
            cand << a, b, cc, dd;
            double dist = (y - eff.matrix *
                                   (f.scale * (cand.array() - f.con.offset)
                                        .matrix()))
                              .squaredNorm();
            CHECK(ml_dist <= dist * (1 + 1e-12));
          }
  }
}

TEST_CASE("decoder ordering at 10 dB: ML <= IF <= ZF bit errors (golden 2x2)") {
  Fixture f("golden", 4);
  const double P = 10.0;
  std::int64_t e_ml = 0, e_if = 0, e_zf = 0;
  const int trials = 8000;
  for (int rep = 0; rep < trials; ++rep) {
    CounterRng rng(76, rep);
    auto h = sample_channel(2, 2, rng);
    EffectiveChannel eff = effective_channel(h.H, f.R, 2, 2);
    VecR s = random_ring_vector(f.con, 8, rng);
    VecR y = transmit(eff, f.con, f.scale, s, P, rng);
    auto count = [&](const VecR& shat) {
      std::int64_t e = 0;
      for (int k = 0; k < 8; ++k)
        e += std::popcount(static_cast<unsigned>(s(k)) ^
                           static_cast<unsigned>(shat(k)));
      return e;
    };
    e_ml += count(decode_ml(y, eff, f.con, f.scale));
    e_zf += count(decode_zf(y, eff, f.con, f.scale));
    IFEqualizer eq = select_equalizer(eff, P, f.ebar);
    e_if += count(decode(y, eq, f.con, f.scale));
  }
  CHECK(e_ml > 100);  // the point carries statistics
  CHECK(e_ml <= e_if);
  CHECK(e_if <= e_zf);
}

TEST_CASE("ML search-space guard") {
  Fixture f("golden", 64);  // 8^8 hypotheses
  EffectiveChannel eff;
  eff.matrix = MatR::Identity(8, 8);
  eff.n_t = 2;
  eff.T = 2;
  CHECK_THROWS_AS(decode_ml(VecR::Zero(8), eff, f.con, f.scale),
                  std::invalid_argument);
}

TEST_CASE("rank-deficient channel rejected by ZF") {
  Fixture f("golden", 4);
  CounterRng rng(78, 0);
  auto h = sample_channel(1, 2, rng);
  EffectiveChannel eff = effective_channel(h.H, f.R, 2, 2);
  CHECK_THROWS_AS(decode_zf(VecR::Zero(4), eff, f.con, f.scale),
                  std::invalid_argument);
}
