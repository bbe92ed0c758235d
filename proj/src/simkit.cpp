#include "stc/simkit.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

namespace stc {

Receiver receiver_from_string(const std::string& s) {
  if (s == "if") return Receiver::if_rx;
  if (s == "zf") return Receiver::zf;
  if (s == "mmse") return Receiver::mmse;
  if (s == "ml") return Receiver::ml;
  throw std::invalid_argument("unknown receiver '" + s + "' (if|zf|mmse|ml)");
}

std::string receiver_to_string(Receiver r) {
  switch (r) {
    case Receiver::if_rx: return "if";
    case Receiver::zf: return "zf";
    case Receiver::mmse: return "mmse";
    case Receiver::ml: return "ml";
  }
  return "?";
}

namespace {

struct TrialContext {
  LinearDesign design;
  CodeMatrix R;
  Constellation con;
  double scale = 0.0;
  double ebar_eff = 0.0;  // per-component energy after centering and scaling
  int bits_per_symbol = 0;
  Receiver receiver = Receiver::if_rx;
  int n_r = 0;
};

TrialContext make_context(const ExperimentConfig& cfg) {
  TrialContext ctx;
  ctx.design = make_design(cfg.design);
  ctx.R = code_matrix(ctx.design);
  ctx.con = make_constellation(cfg.M);
  ctx.scale = transmit_scale(ctx.design, ctx.con);
  ctx.ebar_eff = effective_symbol_energy(ctx.con, ctx.scale);
  ctx.bits_per_symbol = std::countr_zero(static_cast<unsigned>(ctx.con.ring_size));
  ctx.receiver = cfg.receiver;
  ctx.n_r = cfg.n_r;
  return ctx;
}

// one quasi-static block: fresh channel, one codeword, returns bit errors
std::int64_t simulate_trial(const TrialContext& ctx, double P,
                            std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  EffectiveChannel Heff;
  do {
    ChannelRealization ch = sample_channel(ctx.n_r, ctx.design.n_t, rng);
    Heff = effective_channel(ch.H, ctx.R, ctx.design.n_t, ctx.design.T);
  } while (Heff.rank_deficient && ctx.receiver != Receiver::ml);

  const int n = ctx.design.num_real_symbols();
  VecR s(n);
  for (int k = 0; k < n; ++k)
    s(k) = std::min<double>(ctx.con.ring_size - 1,
                            std::floor(rng.next_uniform() * ctx.con.ring_size));

  VecR y = transmit(Heff, ctx.con, ctx.scale, s, P, rng);

  VecR shat;
  switch (ctx.receiver) {
    case Receiver::if_rx: {
      IFEqualizer eq = select_equalizer(Heff, P, ctx.ebar_eff);
      shat = decode(y, eq, ctx.con, ctx.scale);
      break;
    }
    case Receiver::zf:
      shat = decode_zf(y, Heff, ctx.con, ctx.scale);
      break;
    case Receiver::mmse:
      shat = decode_mmse(y, Heff, P, ctx.ebar_eff, ctx.con, ctx.scale);
      break;
    case Receiver::ml:
      shat = decode_ml(y, Heff, ctx.con, ctx.scale);
      break;
  }

  std::int64_t errs = 0;
  for (int k = 0; k < n; ++k) {
    auto a = static_cast<unsigned>(s(k));
    auto b = static_cast<unsigned>(shat(k));
    errs += std::popcount(a ^ b);
  }
  return errs;
}

constexpr std::int64_t kBatch = 4096;

template <bool Parallel>
BERCurve run_impl(const ExperimentConfig& cfg) {
  validate_config(cfg);
  TrialContext ctx = make_context(cfg);
  const std::int64_t bits_per_trial =
      static_cast<std::int64_t>(ctx.design.num_real_symbols()) *
      ctx.bits_per_symbol;

  BERCurve curve;
  curve.config = cfg;
  for (std::size_t p = 0; p < cfg.snr_points_db.size(); ++p) {
    const double P = std::pow(10.0, cfg.snr_points_db[p] / 10.0);
    BERPoint pt;
    pt.snr_db = cfg.snr_points_db[p];
    std::int64_t t = 0;
    while (t < cfg.trials_cap) {
      std::int64_t t1 = std::min(t + kBatch, cfg.trials_cap);
      std::int64_t errs = 0;
      if constexpr (Parallel) {
#ifdef _OPENMP
        int threads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
#pragma omp parallel for num_threads(threads) schedule(static) reduction(+ : errs)
        for (std::int64_t i = t; i < t1; ++i)
          errs += simulate_trial(
              ctx, P, cfg.seed,
              (static_cast<std::uint64_t>(p) << 32) | static_cast<std::uint64_t>(i));
#else
        for (std::int64_t i = t; i < t1; ++i)
          errs += simulate_trial(
              ctx, P, cfg.seed,
              (static_cast<std::uint64_t>(p) << 32) | static_cast<std::uint64_t>(i));
#endif
      } else {
        for (std::int64_t i = t; i < t1; ++i)
          errs += simulate_trial(
              ctx, P, cfg.seed,
              (static_cast<std::uint64_t>(p) << 32) | static_cast<std::uint64_t>(i));
      }
      pt.bit_errors += errs;
      t = t1;
      // stopping decision on batch boundaries only, so the set of trials
      // run is independent of the worker count
      if (pt.bit_errors >= cfg.target_bit_errors) break;
    }
    pt.trials = t;
    pt.bits = t * bits_per_trial;
    pt.ber = pt.bits > 0 ? static_cast<double>(pt.bit_errors) / pt.bits : 0.0;
    pt.low_confidence = pt.bit_errors < cfg.target_bit_errors;
    curve.points.push_back(pt);
  }
  return curve;
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
  LinearDesign d = make_design(cfg.design);
  Constellation c = make_constellation(cfg.M);
  if (cfg.snr_points_db.empty())
    throw std::invalid_argument("config: no SNR points");
  if (cfg.trials_cap <= 0)
    throw std::invalid_argument("config: trials_cap must be positive");
  if (cfg.n_r < 1) throw std::invalid_argument("config: n_r must be >= 1");
  if (cfg.receiver != Receiver::ml && cfg.n_r * d.T < d.K)
    throw std::invalid_argument(
        "config: receiver '" + receiver_to_string(cfg.receiver) +
        "' needs n_r >= K/T = " + std::to_string(d.K) + "/" +
        std::to_string(d.T) + " (rank condition)");
  if (cfg.receiver == Receiver::ml &&
      std::pow(static_cast<double>(c.ring_size), 2 * d.K) > 65536.0)
    throw std::invalid_argument("config: ML search space exceeds 65536 hypotheses");
}

BERCurve run_ber(const ExperimentConfig& cfg) { return run_impl<true>(cfg); }

BERCurve run_ber_serial(const ExperimentConfig& cfg) {
  return run_impl<false>(cfg);
}

double diversity_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 3)
    throw std::invalid_argument("diversity_slope: need at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [db, ber] : pts) {
    double x = db / 10.0;  // log10 of linear SNR
    double y = -std::log10(ber);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double diversity_slope(const BERCurve& curve, std::int64_t min_errors,
                       int max_points) {
  std::vector<std::pair<double, double>> pts;
  for (const BERPoint& p : curve.points)
    if (p.bit_errors >= min_errors && p.ber > 0)
      pts.emplace_back(p.snr_db, p.ber);
  if (max_points > 0 && static_cast<int>(pts.size()) > max_points)
    pts.erase(pts.begin(), pts.end() - max_points);
  if (pts.size() < 3) {
    std::string msg = "diversity_slope: fewer than 3 points with >= " +
                      std::to_string(min_errors) + " bit errors; per-point errors:";
    for (const BERPoint& p : curve.points)
      msg += " " + std::to_string(p.bit_errors);
    throw std::invalid_argument(msg);
  }
  return diversity_slope(pts);
}

void write_csv(const BERCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "snr_db,bit_errors,bits,ber\n";
  char buf[128];
  for (const BERPoint& p : curve.points) {
    std::snprintf(buf, sizeof(buf), "%g,%lld,%lld,%.12g\n", p.snr_db,
                  static_cast<long long>(p.bit_errors),
                  static_cast<long long>(p.bits), p.ber);
    out << buf;
  }
}

void write_json_sidecar(const BERCurve& curve, const std::string& path) {
  nlohmann::json j;
  j["design"] = curve.config.design;
  j["n_r"] = curve.config.n_r;
  j["M"] = curve.config.M;
  j["receiver"] = receiver_to_string(curve.config.receiver);
  j["snr_points_db"] = curve.config.snr_points_db;
  j["trials_cap"] = curve.config.trials_cap;
  j["target_bit_errors"] = curve.config.target_bit_errors;
  j["seed"] = curve.config.seed;
  j["workers"] = curve.config.workers;
  j["substreams"] = "stream = (point_index << 32) | trial_index";
  auto& pts = j["points"] = nlohmann::json::array();
  for (const BERPoint& p : curve.points)
    pts.push_back({{"snr_db", p.snr_db},
                   {"bit_errors", p.bit_errors},
                   {"bits", p.bits},
                   {"trials", p.trials},
                   {"ber", p.ber},
                   {"low_confidence", p.low_confidence}});
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace stc
