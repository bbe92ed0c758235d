#include <CLI11.hpp>
#include <json.hpp>

#include "stc/lattice.hpp"
#include "stc/properties.hpp"
#include "stc/simkit.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace stc;

namespace {

// flat "key = value" config, diff-friendly for experiment sweeps
ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("config", "cannot open " + path);
  ExperimentConfig cfg;
  cfg.snr_points_db.clear();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key, eq;
    if (!(ls >> key)) continue;
    if (!(ls >> eq) || eq != "=")
      throw CLI::ValidationError(
          "config", path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    if (key == "design") {
      ls >> cfg.design;
    } else if (key == "n_r") {
      ls >> cfg.n_r;
    } else if (key == "M") {
      ls >> cfg.M;
    } else if (key == "receiver") {
      std::string r;
      ls >> r;
      cfg.receiver = receiver_from_string(r);
    } else if (key == "snr_db") {
      std::string rest;
      std::getline(ls, rest);
      std::istringstream vs(rest);
      std::string tok;
      while (std::getline(vs, tok, ','))
        if (!tok.empty()) cfg.snr_points_db.push_back(std::stod(tok));
    } else if (key == "trials_cap") {
      ls >> cfg.trials_cap;
    } else if (key == "target_bit_errors") {
      ls >> cfg.target_bit_errors;
    } else if (key == "seed") {
      ls >> cfg.seed;
    } else if (key == "workers") {
      ls >> cfg.workers;
    } else {
      throw CLI::ValidationError(
          "config", path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

LatticeBasis read_basis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("basis", "cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!row.empty()) rows.push_back(row);
  }
  if (rows.empty()) throw CLI::ValidationError("basis", "empty basis file");
  LatticeBasis b;
  b.rows.resize(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw CLI::ValidationError("basis", "ragged rows in " + path);
    for (std::size_t j = 0; j < rows[i].size(); ++j) b.rows(i, j) = rows[i][j];
  }
  return b;
}

LinearDesign load_design(const std::string& name_or_path) {
  if (fs::exists(name_or_path)) return parse_design_file(name_or_path);
  return make_design(name_or_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-time block code toolkit for integer-forcing receivers"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::uint64_t seed_flag = 0;
  bool seed_set = false;
  int workers = 0;
  app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed_flag, "seed override")->each([&](const std::string&) {
    seed_set = true;
  });
  app.add_option("--workers", workers, "worker threads (0 = default)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a BER sweep from a config file");
  std::string config_path;
  sim->add_option("config", config_path, "key = value config file")->required();

  // check-design
  auto* chk = app.add_subcommand("check-design", "certify RNVS/NVD on a ball");
  std::string chk_design, chk_criterion;
  double chk_C = 0.0, chk_tail = 0.0;
  chk->add_option("design", chk_design, "builtin name or design file")->required();
  chk->add_option("criterion", chk_criterion, "rnvs | nvd")->required();
  chk->add_option("--C", chk_C, "squared ball radius");
  chk->add_option("--tail", chk_tail, "target tail probability for radius choice");

  // wishart-ccdf
  auto* wis = app.add_subcommand("wishart-ccdf",
                                 "least-eigenvalue CCDF and radius curve CSV");
  int wis_nt = 2;
  std::string wis_design;
  std::vector<double> wis_c1;
  wis->add_option("--nt", wis_nt, "Wishart dimension")->capture_default_str();
  wis->add_option("--c1", wis_c1, "c1 grid (default logarithmic)");
  wis->add_option("--design", wis_design, "design supplying c3 for the C curve");

  // lattice
  auto* lat = app.add_subcommand("lattice", "reduce a basis file and report");
  std::string basis_path;
  double lat_delta = 0.99;
  lat->add_option("basis", basis_path, "whitespace-separated rows")->required();
  lat->add_option("--delta", lat_delta, "LLL parameter")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(out_dir);

    if (*sim) {
      ExperimentConfig cfg = parse_config(config_path);
      if (seed_set) cfg.seed = seed_flag;
      if (workers > 0) cfg.workers = workers;
      validate_config(cfg);
      BERCurve curve = run_ber(cfg);
      std::string stem = cfg.design + "_" + receiver_to_string(cfg.receiver);
      write_csv(curve, out_dir + "/" + stem + ".csv");
      write_json_sidecar(curve, out_dir + "/" + stem + ".json");
      std::cout << "snr_db      errors        bits          ber\n";
      for (const BERPoint& p : curve.points)
        std::printf("%6.1f %11lld %11lld %12.4g%s\n", p.snr_db,
                    static_cast<long long>(p.bit_errors),
                    static_cast<long long>(p.bits), p.ber,
                    p.low_confidence ? "  (low confidence)" : "");
      try {
        double slope = diversity_slope(curve, curve.config.target_bit_errors, 3);
        std::printf("diversity slope (3 highest qualifying points): %.2f\n", slope);
      } catch (const std::exception&) {
        // not enough qualifying points; summary table stands alone
      }
      std::cout << "wrote " << out_dir << "/" << stem << ".{csv,json}\n";
      return 0;
    }

    if (*chk) {
      LinearDesign d = load_design(chk_design);
      double C = chk_C;
      if (C <= 0) {
        double tail = chk_tail > 0 ? chk_tail : 1e-3;
        RadiusBudget rb = choose_radius(d, tail);
        C = rb.C;
        std::printf("radius from tail %.3g: c1 = %.6g, C = %.6g\n", tail, rb.c1, C);
      }
      PropertyReport rep;
      if (chk_criterion == "rnvs")
        rep = check_rnvs(d, C);
      else if (chk_criterion == "nvd")
        rep = check_nvd(d, C);
      else
        throw CLI::ValidationError("criterion", "must be rnvs or nvd");

      std::printf("design      : %s\ncriterion   : %s\nC           : %.6g\n",
                  rep.design.c_str(), chk_criterion.c_str(), rep.C);
      std::printf("vectors     : %lld\nmin value   : %.6g\nverdict     : %s\n",
                  static_cast<long long>(rep.vectors_checked), rep.min_value,
                  rep.holds ? "holds_on_tested_set" : "refuted");
      nlohmann::json j = {{"design", rep.design},
                          {"criterion", chk_criterion},
                          {"C", rep.C},
                          {"vectors_checked", rep.vectors_checked},
                          {"min_value", rep.min_value},
                          {"verdict", rep.holds ? "holds_on_tested_set" : "refuted"}};
      if (!rep.holds) {
        std::vector<double> w(rep.witness.data(),
                              rep.witness.data() + rep.witness.size());
        j["witness"] = w;
        std::printf("witness     :");
        for (double v : w) std::printf(" %g", v);
        std::printf("\n");
      }
      std::ofstream(out_dir + "/" + "check_" + rep.design + "_" + chk_criterion +
                    ".json")
          << j.dump(2) << "\n";
      return rep.holds ? 0 : 1;
    }

    if (*wis) {
      if (wis_c1.empty())
        for (double c = 1.0; c > 1e-6; c *= 0.5) wis_c1.push_back(c);
      std::ofstream out(out_dir + "/wishart_ccdf.csv");
      out << "c1,ccdf\n";
      out << "0,1\n";  // Prob(lambda_min >= 0) = 1
      for (double c1 : wis_c1) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.10g,%.12g\n", c1,
                      wishart_min_eig_ccdf(wis_nt, c1));
        out << buf;
      }
      std::cout << "wrote " << out_dir << "/wishart_ccdf.csv\n";
      if (!wis_design.empty()) {
        LinearDesign d = load_design(wis_design);
        RadiusBudget rb = choose_radius(d, 0.5);  // curve only; target immaterial
        std::ofstream cv(out_dir + "/radius_curve.csv");
        cv << "log10_C,log10_tail\n";
        for (const auto& [lc, lt] : rb.curve) {
          char buf[64];
          std::snprintf(buf, sizeof(buf), "%.10g,%.10g\n", lc, lt);
          cv << buf;
        }
        std::cout << "wrote " << out_dir << "/radius_curve.csv (c3 = "
                  << rb.c3 << ")\n";
      }
      return 0;
    }

    if (*lat) {
      LatticeBasis b = read_basis_file(basis_path);
      ReductionResult red = lll_reduce(b, lat_delta);
      std::cout << "reduced basis:\n" << red.reduced.rows << "\n";
      std::cout << "unimodular transform:\n" << red.unimodular << "\n";
      if (b.rows.rows() <= 12) {
        SvpResult svp = svp_enumerate(b);
        std::printf("lambda_1 = %.10g\n", std::sqrt(svp.norm_sq));
        if (b.rows.rows() % 2 == 0 && b.rows.rows() <= 8) {
          int K = static_cast<int>(b.rows.rows()) / 2;
          MinimaReport rep = successive_minima_check(b, K);
          std::printf(
              "successive-minima bound: eps1^2 = %.6g, eps_2K^2(dual) = %.6g, "
              "product = %.6g <= %.6g : %s\n",
              rep.eps1_sq, rep.eps2K_dual_sq, rep.eps1_sq * rep.eps2K_dual_sq,
              rep.bound, rep.holds ? "holds" : "VIOLATED");
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
