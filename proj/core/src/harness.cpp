#include "mimo/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "mimo/channel.hpp"
#include "mimo/errors.hpp"
#include "mimo/linalg.hpp"
#include "mimo/parallel.hpp"
#include "mimo/stats.hpp"

namespace mimo {

namespace {

constexpr std::uint64_t kDiagnosticsStream = 0x646961670000ULL;

std::size_t count_bit_errors(std::span<const cplx> a, std::span<const cplx> b,
                             const Constellation& c) {
  const Bits ba = symbols_to_bits(a, c);
  const Bits bb = symbols_to_bits(b, c);
  std::size_t errors = 0;
  for (std::size_t i = 0; i < ba.size(); ++i) errors += ba[i] != bb[i];
  return errors;
}

void finish_outcome(TrialOutcome& out, const TrialDraw& d, const Constellation& c) {
  out.transmitted = d.x;
  out.bits = d.x.size() * static_cast<std::size_t>(c.bits_per_symbol());
  out.bit_errors = count_bit_errors(d.x, out.detected, c);
}

template <class TrialFn>
std::vector<MetricsRecord> sweep(const SimConfig& cfg, TrialFn&& run_trial) {
  const Constellation c = Constellation::qam(cfg.modulation, cfg.es);
  std::vector<MetricsRecord> out;
  out.reserve(cfg.snr_db_list.size());
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
  for (std::size_t s = 0; s < cfg.snr_db_list.size(); ++s) {
    parallel_for(outcomes.size(), cfg.workers,
                 [&](std::size_t t) { outcomes[t] = run_trial(cfg, c, s, t); });
    out.push_back(aggregate(cfg.snr_db_list[s], outcomes));
  }
  return out;
}

}  // namespace

TrialDraw draw_trial(const SimConfig& cfg, const Constellation& c, std::size_t snr_index,
                     std::size_t trial) {
  Rng rng(derive_seed(cfg.master_seed, snr_index, trial));
  TrialDraw d;
  d.channel = sample_channel(rng, cfg.n_rx, cfg.n_users);
  d.x = random_symbols(rng, c, cfg.n_users);
  d.n0 = snr_to_n0(cfg.snr_db_list.at(snr_index), cfg.n_users, cfg.es);
  d.y = transmit(d.channel, d.x, d.n0, rng).y;
  return d;
}

TrialOutcome run_linear_trial(const SimConfig& cfg, const Constellation& c,
                              std::size_t snr_index, std::size_t trial) {
  const TrialDraw d = draw_trial(cfg, c, snr_index, trial);
  const DetectionResult r = cfg.detector == Detector::zf
                                ? zf_detect(d.channel.h, d.y, c, cfg.inverse)
                                : mmse_detect(d.channel.h, d.y, c, d.n0, cfg.es, cfg.inverse);
  TrialOutcome out;
  out.detected = r.hard;
  out.flops = r.flops;
  finish_outcome(out, d, c);
  return out;
}

TrialOutcome run_sd_trial(const SimConfig& cfg, const Constellation& c, std::size_t snr_index,
                          std::size_t trial) {
  const TrialDraw d = draw_trial(cfg, c, snr_index, trial);
  SdScheme scheme = SdScheme::proposed;
  if (cfg.detector == Detector::sd_se) scheme = SdScheme::se_sd;
  if (cfg.detector == Detector::sd_fp) scheme = SdScheme::fp_sd;
  const SdDecode r = sphere_decode(d.channel.h, d.y, c, SdConfig::for_scheme(scheme, cfg.inverse));
  TrialOutcome out;
  out.detected = r.x_hat;
  out.flops = r.flops;
  out.search = r.stats;
  finish_outcome(out, d, c);
  return out;
}

MetricsRecord aggregate(double snr_db, std::span<const TrialOutcome> outcomes) {
  std::vector<double> frac(outcomes.size());
  double nodes = 0.0;
  double flops = 0.0;
  MetricsRecord rec;
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    const auto& o = outcomes[t];
    frac[t] = o.bits == 0 ? 0.0 : static_cast<double>(o.bit_errors) / static_cast<double>(o.bits);
    nodes += static_cast<double>(o.search.nodes_visited);
    flops += static_cast<double>(o.flops);
    rec.fallbacks += o.search.used_fallback ? 1 : 0;
  }
  const MeanStderr ms = mean_stderr(frac);
  const auto n = static_cast<double>(std::max<std::size_t>(outcomes.size(), 1));
  rec.snr_db = snr_db;
  rec.ber = ms.mean;
  rec.stderr_ber = ms.stderr_;
  rec.avg_nodes = nodes / n;
  rec.avg_flops = flops / n;
  rec.trials = static_cast<int>(outcomes.size());
  return rec;
}

std::vector<MetricsRecord> run_linear_sweep(const SimConfig& cfg) {
  cfg.validate();
  if (!is_linear(cfg.detector)) throw ConfigError("linear sweep needs detector zf or mmse");
  return sweep(cfg, run_linear_trial);
}

std::vector<MetricsRecord> run_sd_sweep(const SimConfig& cfg) {
  cfg.validate();
  if (is_linear(cfg.detector)) throw ConfigError("sphere decoder sweep needs scheme proposed|se|fp");
  if (cfg.detector == Detector::sd_proposed && cfg.inverse.kind != InverseProvider::Kind::iterative) {
    throw ConfigError("the proposed decoder needs an iterative inverse (newton|order3|order7)");
  }
  return sweep(cfg, run_sd_trial);
}

std::vector<RadiusStudyRecord> run_radius_study(const SimConfig& cfg) {
  cfg.validate();
  const Constellation c = Constellation::qam(cfg.modulation, cfg.es);
  const double n0 = snr_to_n0(cfg.snr_db_list.front(), cfg.n_users, cfg.es);
  const int order = cfg.inverse.kind == InverseProvider::Kind::iterative ? cfg.inverse.order : 2;
  return radius_statistics(cfg.n_rx, cfg.n_users, cfg.k_list, order, c, n0, cfg.trials,
                           cfg.master_seed, cfg.workers);
}

std::vector<DiagnosticsRecord> run_diagnostics(const SimConfig& cfg) {
  cfg.validate();
  const Constellation c = Constellation::qam(cfg.modulation, cfg.es);
  const int order = cfg.inverse.kind == InverseProvider::Kind::iterative ? cfg.inverse.order : 2;
  const double n0 = snr_to_n0(cfg.snr_db_list.front(), cfg.n_users, cfg.es);
  const auto trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t nk = cfg.k_list.size();

  struct Cell {
    double appendix = 0.0;
    bool violation = false;
    bool sufficient = false;
    bool equal = false;
    double trace_s = 0.0;
  };
  std::vector<std::vector<Cell>> cells(trials, std::vector<Cell>(nk));

  parallel_for(trials, cfg.workers, [&](std::size_t t) {
    Rng rng(derive_seed(cfg.master_seed, kDiagnosticsStream, t));
    const ChannelRealization ch = sample_channel(rng, cfg.n_rx, cfg.n_users);
    const CVector x = random_symbols(rng, c, cfg.n_users);
    const CVector y = transmit(ch, x, n0, rng).y;
    const ComplexMatrix gm = gram(ch.h);
    const ComplexMatrix cinv = exact_inverse(gm);
    const DetectionResult exact = zf_detect(ch.h, y, c, InverseProvider::exact());
    for (std::size_t j = 0; j < nk; ++j) {
      const int k = cfg.k_list[j];
      const IterInverseState st = approx_inverse(gm, order, k);
      Cell& cell = cells[t][j];
      cell.appendix = appendix_identity_check(ch.h, y, c, order, k).max_discrepancy();
      cell.violation = !expected_bound_check(st.residual, x, c.d_min()).ok();
      cell.sufficient = sufficient_condition_check(exact, st.approx - cinv, exact.g, c.d_min());
      const CVector approx = multiply(st.approx, exact.g);
      cell.equal = quantize_indices(approx, c) == quantize_indices(exact.unconstrained, c);
      cell.trace_s = trace(st.residual).real();
    }
  });

  std::vector<DiagnosticsRecord> out;
  out.reserve(nk);
  const double n = static_cast<double>(trials);
  for (std::size_t j = 0; j < nk; ++j) {
    DiagnosticsRecord rec;
    rec.k = cfg.k_list[j];
    rec.trials = cfg.trials;
    for (std::size_t t = 0; t < trials; ++t) {
      const Cell& cell = cells[t][j];
      rec.appendix_max_rel = std::max(rec.appendix_max_rel, cell.appendix);
      rec.bound_violation_rate += cell.violation ? 1.0 : 0.0;
      rec.sufficient_rate += cell.sufficient ? 1.0 : 0.0;
      rec.equality_rate += cell.equal ? 1.0 : 0.0;
      rec.implication_failures += (cell.sufficient && !cell.equal) ? 1.0 : 0.0;
      rec.trace_s_k += cell.trace_s;
    }
    rec.bound_violation_rate /= n;
    rec.sufficient_rate /= n;
    rec.equality_rate /= n;
    rec.trace_s_k /= n;
    out.push_back(rec);
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_metrics_csv(std::ostream& os, std::span<const MetricsRecord> rows) {
  os << "snr_db,ber,stderr_ber,avg_nodes,avg_flops,trials\n";
  for (const auto& r : rows) {
    os << format_number(r.snr_db) << ',' << format_number(r.ber) << ','
       << format_number(r.stderr_ber) << ',' << format_number(r.avg_nodes) << ','
       << format_number(r.avg_flops) << ',' << r.trials << '\n';
  }
}

void write_radius_csv(std::ostream& os, std::span<const RadiusStudyRecord> rows) {
  os << "k,mean_rk_sq,stderr,mean_re_sq,trace_sk,trials\n";
  for (const auto& r : rows) {
    os << r.k << ',' << format_number(r.mean_r_sq) << ',' << format_number(r.stderr_r_sq) << ','
       << format_number(r.mean_r_e_sq) << ',' << format_number(r.trace_s_k) << ',' << r.trials
       << '\n';
  }
}

void write_diagnostics_csv(std::ostream& os, std::span<const DiagnosticsRecord> rows) {
  os << "k,appendix_max_rel,bound_violation_rate,sufficient_rate,equality_rate,"
        "implication_failures,trace_sk,trials\n";
  for (const auto& r : rows) {
    os << r.k << ',' << format_number(r.appendix_max_rel) << ','
       << format_number(r.bound_violation_rate) << ',' << format_number(r.sufficient_rate) << ','
       << format_number(r.equality_rate) << ',' << format_number(r.implication_failures) << ','
       << format_number(r.trace_s_k) << ',' << r.trials << '\n';
  }
}

}  // namespace mimo
