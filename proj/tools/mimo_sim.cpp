// mimo_sim: Monte Carlo driver for approximate-inverse MIMO detection.
//
//   mimo_sim linear --n 128 --k-users 8 --mod 16 --snr 0,4,8 --inverse newton:7
//   mimo_sim sd --n 16 --k-users 16 --scheme proposed --snr 8,10,12
//   mimo_sim radius --n 16 --k-users 16 --snr 10 --iters 1,2,3,4,5,6,7
//   mimo_sim diag --n 128 --k-users 8 --iters 3,5,7
//
// Options may also come from a flat `key = value` file passed with --config; flags given on
// the command line win. Exit codes: 0 ok, 2 configuration error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mimo/errors.hpp"
#include "mimo/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::size_t n = 16;
  std::size_t k_users = 16;
  int mod = 4;
  std::vector<double> snr{10.0};
  int trials = 1000;
  std::uint64_t seed = 1;
  std::string inverse = "newton:7";
  std::string scheme = "proposed";
  std::string detector = "mmse";
  std::vector<int> iters{1, 2, 3, 4, 5, 6, 7};
  int workers = 1;
  std::string out;
};

mimo::SimConfig to_config(const Options& o) {
  mimo::SimConfig cfg;
  cfg.n_rx = o.n;
  cfg.n_users = o.k_users;
  cfg.modulation = o.mod;
  cfg.snr_db_list = o.snr;
  cfg.trials = o.trials;
  cfg.master_seed = o.seed;
  cfg.inverse = mimo::InverseProvider::parse(o.inverse);
  cfg.workers = o.workers;
  cfg.k_list = o.iters;
  return cfg;
}

template <class Writer>
int emit(const std::string& path, Writer&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return 0;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return kExitConfig;
  }
  write(file);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate-inverse ZF/MMSE and sphere-decoder simulations for MIMO uplink"};
  app.set_config("--config", "", "Read options from a key = value file");
  app.require_subcommand(1, 1);

  Options o;
  app.add_option("--n", o.n, "Receive antennas N")->capture_default_str();
  app.add_option("--k-users", o.k_users, "Single-antenna users K")->capture_default_str();
  app.add_option("--mod", o.mod, "QAM order (4, 16, 64)")->capture_default_str();
  app.add_option("--snr", o.snr, "Comma-separated SNR list in dB (K Es / N0)")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--trials", o.trials, "Vectors per SNR point")->capture_default_str();
  app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app.add_option("--inverse", o.inverse, "exact | newton:K | order3:K | order7:K")->capture_default_str();
  app.add_option("--scheme", o.scheme, "Sphere decoder: proposed | se | fp")->capture_default_str();
  app.add_option("--detector", o.detector, "Linear detector: zf | mmse")->capture_default_str();
  app.add_option("--iters", o.iters, "Iteration counts for radius/diag")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--workers", o.workers, "Worker threads")->capture_default_str();
  app.add_option("--out", o.out, "Output CSV path (stdout when omitted)");

  auto* linear = app.add_subcommand("linear", "BER and flops of ZF/MMSE detection");
  auto* sd = app.add_subcommand("sd", "BER and node counts of a sphere decoder");
  auto* radius = app.add_subcommand("radius", "Babai radius against iteration count");
  auto* diag = app.add_subcommand("diag", "Inverse-error tolerance diagnostics");
  for (auto* sub : {linear, sd, radius, diag}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    mimo::SimConfig cfg = to_config(o);
    if (*linear) {
      cfg.detector = mimo::parse_detector(o.detector);
      if (!mimo::is_linear(cfg.detector)) throw mimo::ConfigError("--detector must be zf or mmse");
      const auto rows = mimo::run_linear_sweep(cfg);
      return emit(o.out, [&](std::ostream& os) { mimo::write_metrics_csv(os, rows); });
    }
    if (*sd) {
      cfg.detector = mimo::parse_detector(o.scheme);
      if (mimo::is_linear(cfg.detector)) throw mimo::ConfigError("--scheme must be proposed, se or fp");
      const auto rows = mimo::run_sd_sweep(cfg);
      for (const auto& r : rows) {
        if (r.fallbacks > 0) {
          std::cerr << "snr " << r.snr_db << " dB: " << r.fallbacks
                    << " searches ended with an empty sphere\n";
        }
      }
      return emit(o.out, [&](std::ostream& os) { mimo::write_metrics_csv(os, rows); });
    }
    if (*radius) {
      const auto rows = mimo::run_radius_study(cfg);
      return emit(o.out, [&](std::ostream& os) { mimo::write_radius_csv(os, rows); });
    }
    const auto rows = mimo::run_diagnostics(cfg);
    return emit(o.out, [&](std::ostream& os) { mimo::write_diagnostics_csv(os, rows); });
  } catch (const mimo::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mimo::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const mimo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
