#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mimo/constellation.hpp"
#include "mimo/matrix.hpp"

namespace mimo {

/// Discrepancies of the exact radius-gap algebra on one instance.
///
/// identity_rel:  both sides of
///                r_e^2 - r_k^2 = 2 Re[(x_zf - C^{-1} g)^H R^H R E_k g] - ||R E_k g||^2
/// gram_rel:      ||R^H R - C||_F / ||C||_F
/// quadratic_rel: ||R E_k g||^2 against g^H S_k^H S_k C^{-1} g
/// Radii use the exact ZF decision x_zf for both r_e and r_k.
struct AppendixCheck {
  double identity_rel = 0.0;
  double gram_rel = 0.0;
  double quadratic_rel = 0.0;
  double max_discrepancy() const noexcept;
};

AppendixCheck appendix_identity_check(const ComplexMatrix& h, std::span<const cplx> y,
                                      const Constellation& c, int order, int k);

/// Monte Carlo estimate of E[r_e^2 - r_k^2] for a fixed channel against 2 N0 Re Tr(S_k).
struct TraceGap {
  double lhs = 0.0;
  double lhs_stderr = 0.0;
  double rhs = 0.0;
  double residual_norm = 0.0;  // ||S_k||_F
  int trials = 0;
};

/// Largest ||S_k||_F for which the second-order term of the radius gap is treated as negligible.
inline constexpr double kTraceGapMaxResidual = 0.05;

/// Throws PreconditionError when ||S_k||_F >= kTraceGapMaxResidual.
TraceGap trace_gap_check(const ComplexMatrix& h, const Constellation& c, double n0, int order,
                         int k, int trials, std::uint64_t seed, int workers = 1);

struct RadiusStudyRecord {
  int k = 0;
  double mean_r_sq = 0.0;     // mean r_k^2
  double stderr_r_sq = 0.0;
  double mean_r_e_sq = 0.0;
  double stderr_r_e_sq = 0.0;
  double trace_s_k = 0.0;     // mean Re Tr(S_k)
  int trials = 0;
};

/// Averages r_k^2 (and r_e^2) over fresh channel, symbol and noise draws for each k in `k_list`.
std::vector<RadiusStudyRecord> radius_statistics(std::size_t n_rx, std::size_t n_users,
                                                 std::span<const int> k_list, int order,
                                                 const Constellation& c, double n0, int trials,
                                                 std::uint64_t seed, int workers = 1);

/// Per-trial samples behind radius_statistics, for paired comparisons. samples[t][j] is
/// r_{k_list[j]}^2 of trial t; exact[t] is r_e^2.
struct RadiusSamples {
  std::vector<std::vector<double>> rk_sq;
  std::vector<double> re_sq;
  std::vector<std::vector<double>> trace_s;
};

RadiusSamples radius_samples(std::size_t n_rx, std::size_t n_users, std::span<const int> k_list,
                             int order, const Constellation& c, double n0, int trials,
                             std::uint64_t seed, int workers = 1);

}  // namespace mimo
