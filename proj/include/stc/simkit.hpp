#pragma once

#include "stc/baselines.hpp"
#include "stc/channel.hpp"
#include "stc/if_receiver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace stc {

enum class Receiver { if_rx, zf, mmse, ml };

Receiver receiver_from_string(const std::string& s);
std::string receiver_to_string(Receiver r);

struct ExperimentConfig {
  std::string design = "alamouti";
  int n_r = 1;
  int M = 4;
  Receiver receiver = Receiver::if_rx;
  std::vector<double> snr_points_db;
  std::int64_t trials_cap = 100000;
  std::int64_t target_bit_errors = 200;
  std::uint64_t seed = 1;
  int workers = 1;  // OpenMP thread count; must not change the tallies
};

struct BERPoint {
  double snr_db = 0.0;
  std::int64_t bit_errors = 0;
  std::int64_t bits = 0;
  std::int64_t trials = 0;
  double ber = 0.0;
  bool low_confidence = false;  // fewer than target_bit_errors collected
};

struct BERCurve {
  ExperimentConfig config;
  std::vector<BERPoint> points;
};

// Validates receiver/design compatibility (rank bound n_r >= K/T for the
// linear receivers, hypothesis-count guard for ML). Throws on violation.
void validate_config(const ExperimentConfig& config);

// Seeded Monte Carlo BER sweep. One channel realization per codeword; the
// IF equalizer is computed once per realization. Trials run in fixed-size
// batches until target_bit_errors or trials_cap; substreams are keyed by
// (point, trial) index so the tallies are bit-identical for any worker
// count. The OpenMP driver parallelizes within a batch.
BERCurve run_ber(const ExperimentConfig& config);

// Plain-loop driver over the same per-trial kernel, kept as the reference
// the parallel path is tested against.
BERCurve run_ber_serial(const ExperimentConfig& config);

// Least-squares slope of -log10(BER) vs log10(SNR) over the points with at
// least min_errors bit errors, restricted to the last max_points such
// points. Throws if fewer than 3 qualify.
double diversity_slope(const BERCurve& curve, std::int64_t min_errors = 100,
                       int max_points = 0);

// Fit through explicitly given (snr_db, ber) pairs.
double diversity_slope(const std::vector<std::pair<double, double>>& pts);

void write_csv(const BERCurve& curve, const std::string& path);
void write_json_sidecar(const BERCurve& curve, const std::string& path);

}  // namespace stc
