#include "mimo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mimo/channel.hpp"
#include "mimo/errors.hpp"
#include "mimo/linalg.hpp"
#include "mimo/parallel.hpp"
#include "mimo/stats.hpp"

namespace mimo {

namespace {

// Stream tags keep the analysis draws independent of the harness sweeps.
constexpr std::uint64_t kTraceGapStream = 0x7472616365ULL;
constexpr std::uint64_t kRadiusStream = 0x726164697573ULL;

double rel(double a, double b, double scale) { return std::abs(a - b) / std::max(scale, 1.0); }

}  // namespace

double AppendixCheck::max_discrepancy() const noexcept {
  return std::max({identity_rel, gram_rel, quadratic_rel});
}

AppendixCheck appendix_identity_check(const ComplexMatrix& h, std::span<const cplx> y,
                                      const Constellation& c, int order, int k) {
  if (y.size() != h.rows()) throw ShapeError("appendix_identity_check: |y| differs from rows of H");
  const ComplexMatrix gm = gram(h);
  const ComplexMatrix cinv = exact_inverse(gm);
  const IterInverseState st = approx_inverse(gm, order, k);
  const ComplexMatrix r = qr_decompose(h).r;
  const CVector g = adjoint_multiply(h, y);

  const CVector x1 = multiply(cinv, g);
  const CVector x2 = multiply(st.approx, g);
  const CVector x_zf = quantize(x1, c);

  AppendixCheck out;

  // Left side straight from the two radius definitions.
  const double re_sq = squared_norm(multiply(r, subtract(x_zf, x1)));
  const double rk_sq = squared_norm(multiply(r, subtract(x_zf, x2)));
  const double lhs = re_sq - rk_sq;

  // Right side through E_k = C_k - C^{-1}.
  const ComplexMatrix e = st.approx - cinv;
  const CVector reg = multiply(r, multiply(e, g));
  const CVector rz = multiply(r, subtract(x_zf, x1));
  const double rhs = 2.0 * dot(rz, reg).real() - squared_norm(reg);
  out.identity_rel = rel(lhs, rhs, re_sq + rk_sq);

  out.gram_rel = relative_difference(multiply(r.adjoint(), r), gm);

  // ||R E g||^2 = g^H S^H S C^{-1} g when C_k commutes with C.
  const CVector sx1 = multiply(st.residual, x1);
  const CVector sg = multiply(st.residual, g);
  const double quad = dot(sg, sx1).real();
  const double reg_sq = squared_norm(reg);
  out.quadratic_rel = rel(reg_sq, quad, reg_sq + std::abs(quad));
  return out;
}

TraceGap trace_gap_check(const ComplexMatrix& h, const Constellation& c, double n0, int order,
                         int k, int trials, std::uint64_t seed, int workers) {
  if (trials < 1) throw ConfigError("trace_gap_check: trials must be >= 1");
  const ComplexMatrix gm = gram(h);
  const ComplexMatrix cinv = exact_inverse(gm);
  const IterInverseState st = approx_inverse(gm, order, k);
  const double s_norm = frobenius_norm(st.residual);
  if (!(s_norm < kTraceGapMaxResidual)) {
    throw PreconditionError("trace_gap_check: ||S_k||_F = " + std::to_string(s_norm) +
                            " is not below " + std::to_string(kTraceGapMaxResidual));
  }
  const ComplexMatrix r = qr_decompose(h).r;
  const ChannelRealization ch{h};

  std::vector<double> diff(static_cast<std::size_t>(trials));
  parallel_for(diff.size(), workers, [&](std::size_t t) {
    Rng rng(derive_seed(seed, kTraceGapStream, t));
    const CVector x = random_symbols(rng, c, h.cols());
    const Transmission tx = transmit(ch, x, n0, rng);
    const CVector g = adjoint_multiply(h, tx.y);
    const CVector x1 = multiply(cinv, g);
    const CVector x2 = multiply(st.approx, g);
    const CVector x_zf = quantize(x1, c);
    diff[t] = squared_norm(multiply(r, subtract(x_zf, x1))) -
              squared_norm(multiply(r, subtract(x_zf, x2)));
  });

  const MeanStderr ms = mean_stderr(diff);
  TraceGap out;
  out.lhs = ms.mean;
  out.lhs_stderr = ms.stderr_;
  out.rhs = 2.0 * n0 * trace(st.residual).real();
  out.residual_norm = s_norm;
  out.trials = trials;
  return out;
}

RadiusSamples radius_samples(std::size_t n_rx, std::size_t n_users, std::span<const int> k_list,
                             int order, const Constellation& c, double n0, int trials,
                             std::uint64_t seed, int workers) {
  if (trials < 1) throw ConfigError("radius study: trials must be >= 1");
  if (n_users == 0 || n_rx < n_users) throw ConfigError("radius study: need n_rx >= n_users >= 1");
  for (int k : k_list) {
    if (k < 0) throw ConfigError("radius study: iteration counts must be >= 0");
  }
  const int k_max = k_list.empty() ? 0 : *std::max_element(k_list.begin(), k_list.end());
  const auto count = static_cast<std::size_t>(trials);

  RadiusSamples out;
  out.rk_sq.assign(count, std::vector<double>(k_list.size()));
  out.trace_s.assign(count, std::vector<double>(k_list.size()));
  out.re_sq.assign(count, 0.0);
  if (k_list.empty()) return out;

  parallel_for(count, workers, [&](std::size_t t) {
    Rng rng(derive_seed(seed, kRadiusStream, t));
    const ChannelRealization ch = sample_channel(rng, n_rx, n_users);
    const CVector x = random_symbols(rng, c, n_users);
    const Transmission tx = transmit(ch, x, n0, rng);

    const ComplexMatrix gm = gram(ch.h);
    const ComplexMatrix r = qr_decompose(ch.h).r;
    const CVector g = adjoint_multiply(ch.h, tx.y);
    const CVector x1 = multiply(exact_inverse(gm), g);
    const CVector x_zf = quantize(x1, c);
    out.re_sq[t] = squared_norm(multiply(r, subtract(x_zf, x1)));

    FlopCount unused = 0;
    InitGain init = init_gain(gm, &unused);
    IterInverseState st = make_iter_state(gm, std::move(init.c0), order);
    for (int k = 0; k <= k_max; ++k) {
      if (k > 0) st = iterate(std::move(st));
      for (std::size_t j = 0; j < k_list.size(); ++j) {
        if (k_list[j] != k) continue;
        out.rk_sq[t][j] = squared_norm(multiply(r, subtract(x_zf, multiply(st.approx, g))));
        out.trace_s[t][j] = trace(st.residual).real();
      }
    }
  });
  return out;
}

std::vector<RadiusStudyRecord> radius_statistics(std::size_t n_rx, std::size_t n_users,
                                                 std::span<const int> k_list, int order,
                                                 const Constellation& c, double n0, int trials,
                                                 std::uint64_t seed, int workers) {
  const RadiusSamples s = radius_samples(n_rx, n_users, k_list, order, c, n0, trials, seed, workers);
  const MeanStderr re = mean_stderr(s.re_sq);
  std::vector<RadiusStudyRecord> out;
  out.reserve(k_list.size());
  std::vector<double> col(s.re_sq.size());
  std::vector<double> tr(s.re_sq.size());
  for (std::size_t j = 0; j < k_list.size(); ++j) {
    for (std::size_t t = 0; t < col.size(); ++t) {
      col[t] = s.rk_sq[t][j];
      tr[t] = s.trace_s[t][j];
    }
    const MeanStderr rk = mean_stderr(col);
    RadiusStudyRecord rec;
    rec.k = k_list[j];
    rec.mean_r_sq = rk.mean;
    rec.stderr_r_sq = rk.stderr_;
    rec.mean_r_e_sq = re.mean;
    rec.stderr_r_e_sq = re.stderr_;
    rec.trace_s_k = mean_stderr(tr).mean;
    rec.trials = trials;
    out.push_back(rec);
  }
  return out;
}

}  // namespace mimo
