#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mimo/analysis.hpp"
#include "mimo/channel.hpp"
#include "mimo/constellation.hpp"
#include "mimo/detect.hpp"
#include "mimo/sphere.hpp"

namespace mimo {

enum class Detector { zf, mmse, sd_proposed, sd_se, sd_fp };

Detector parse_detector(std::string_view text);  // zf|mmse|proposed|se|fp
std::string_view to_string(Detector d) noexcept;
bool is_linear(Detector d) noexcept;

struct SimConfig {
  std::size_t n_rx = 16;
  std::size_t n_users = 16;
  int modulation = 4;
  double es = 1.0;
  std::vector<double> snr_db_list{10.0};
  int trials = 1000;
  std::uint64_t master_seed = 1;
  Detector detector = Detector::mmse;
  InverseProvider inverse = InverseProvider::iterative(2, 7);
  int workers = 1;
  std::vector<int> k_list{1, 2, 3, 4, 5, 6, 7};  // radius study and diagnostics

  /// Throws ConfigError on violated invariants (trials >= 1, non-empty SNR list,
  /// n_rx >= n_users >= 1, supported modulation, workers >= 1).
  void validate() const;
};

/// One CSV row. BER is averaged over per-vector error fractions; stderr_ber is the
/// standard error of that mean.
struct MetricsRecord {
  double snr_db = 0.0;
  double ber = 0.0;
  double stderr_ber = 0.0;
  double avg_nodes = 0.0;
  double avg_flops = 0.0;
  int trials = 0;
  std::uint64_t fallbacks = 0;  // proposed/FP searches that ended with an empty sphere
};

/// Everything one trial produced; trials are independent and pure in (config, snr index, trial).
struct TrialOutcome {
  CVector transmitted;
  CVector detected;
  std::size_t bit_errors = 0;
  std::size_t bits = 0;
  FlopCount flops = 0;
  SearchStats search;
};

/// Channel, symbols and noise of trial `trial` at SNR point `snr_index`. Every detector sees
/// the same draws for the same (seed, snr_index, trial).
struct TrialDraw {
  ChannelRealization channel;
  CVector x;
  CVector y;
  double n0 = 0.0;
};

TrialDraw draw_trial(const SimConfig& cfg, const Constellation& c, std::size_t snr_index,
                     std::size_t trial);

TrialOutcome run_linear_trial(const SimConfig& cfg, const Constellation& c,
                              std::size_t snr_index, std::size_t trial);
TrialOutcome run_sd_trial(const SimConfig& cfg, const Constellation& c, std::size_t snr_index,
                          std::size_t trial);

/// Requires a zf/mmse detector.
std::vector<MetricsRecord> run_linear_sweep(const SimConfig& cfg);
/// Requires a proposed/se/fp detector.
std::vector<MetricsRecord> run_sd_sweep(const SimConfig& cfg);

MetricsRecord aggregate(double snr_db, std::span<const TrialOutcome> outcomes);

std::vector<RadiusStudyRecord> run_radius_study(const SimConfig& cfg);

/// Per-k tolerance and radius diagnostics on fresh draws at the first SNR point.
struct DiagnosticsRecord {
  int k = 0;
  double appendix_max_rel = 0.0;       // worst exact-identity discrepancy over trials
  double bound_violation_rate = 0.0;   // Re/Im(S_k x) outside +-d_min/2
  double sufficient_rate = 0.0;        // box test on (z - E g) passed
  double equality_rate = 0.0;          // approximate ZF == exact ZF
  double implication_failures = 0.0;   // box test passed but decisions differ (must be 0)
  double trace_s_k = 0.0;              // mean Re Tr(S_k)
  int trials = 0;
};

std::vector<DiagnosticsRecord> run_diagnostics(const SimConfig& cfg);

// CSV writers: header row, 9 significant digits, LF line endings.
void write_metrics_csv(std::ostream& os, std::span<const MetricsRecord> rows);
void write_radius_csv(std::ostream& os, std::span<const RadiusStudyRecord> rows);
void write_diagnostics_csv(std::ostream& os, std::span<const DiagnosticsRecord> rows);

std::string format_number(double v);

// Comma-separated list parsing for the CLI and config files.
std::vector<double> parse_double_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

}  // namespace mimo
