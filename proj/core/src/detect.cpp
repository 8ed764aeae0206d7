#include "mimo/detect.hpp"

#include <charconv>
#include <cmath>

#include "mimo/errors.hpp"

namespace mimo {

InverseProvider InverseProvider::iterative(int order, int iterations) {
  if (!is_supported_order(order)) {
    throw ConfigError("unsupported iteration order " + std::to_string(order));
  }
  if (iterations < 0) throw ConfigError("iteration count must be >= 0");
  return {Kind::iterative, order, iterations};
}

InverseProvider InverseProvider::parse(std::string_view text) {
  if (text == "exact") return exact();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("bad inverse spec '" + std::string(text) +
                      "' (expected exact|newton:K|order3:K|order7:K)");
  }
  const auto name = text.substr(0, colon);
  const auto count = text.substr(colon + 1);
  int order = 0;
  if (name == "newton") {
    order = 2;
  } else if (name == "order3") {
    order = 3;
  } else if (name == "order7") {
    order = 7;
  } else {
    throw ConfigError("unknown inverse method '" + std::string(name) + "'");
  }
  int k = -1;
  const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), k);
  if (ec != std::errc() || ptr != count.data() + count.size() || k < 0) {
    throw ConfigError("bad iteration count '" + std::string(count) + "'");
  }
  return iterative(order, k);
}

std::string InverseProvider::to_string() const {
  if (kind == Kind::exact) return "exact";
  const char* name = order == 2 ? "newton" : order == 3 ? "order3" : "order7";
  return std::string(name) + ":" + std::to_string(iterations);
}

ComplexMatrix apply_inverse_provider(const ComplexMatrix& c, const InverseProvider& inv,
                                     FlopCount* flops) {
  if (inv.kind == InverseProvider::Kind::exact) return exact_inverse(c, flops);
  IterInverseState state = approx_inverse(c, inv.order, inv.iterations);
  if (flops) *flops += state.flops;
  return std::move(state.approx);
}

namespace {

void require_system(const ComplexMatrix& h, std::span<const cplx> y) {
  if (y.size() != h.rows()) {
    throw ShapeError("detector: received vector has " + std::to_string(y.size()) +
                     " entries, channel has " + std::to_string(h.rows()) + " rows");
  }
}

DetectionResult linear_detect(const ComplexMatrix& h, std::span<const cplx> y,
                              const Constellation& c, double regularization,
                              const InverseProvider& inv) {
  require_system(h, y);
  DetectionResult r;
  ComplexMatrix gm = gram(h, &r.flops);
  if (regularization != 0.0) {
    for (std::size_t i = 0; i < gm.rows(); ++i) gm(i, i) += regularization;
  }
  r.g = adjoint_multiply(h, y, &r.flops);
  const ComplexMatrix cinv = apply_inverse_provider(gm, inv, &r.flops);
  r.unconstrained = multiply(cinv, r.g, &r.flops);
  r.hard = quantize(r.unconstrained, c);
  return r;
}

}  // namespace

DetectionResult zf_detect(const ComplexMatrix& h, std::span<const cplx> y, const Constellation& c,
                          const InverseProvider& inv) {
  return linear_detect(h, y, c, 0.0, inv);
}

DetectionResult mmse_detect(const ComplexMatrix& h, std::span<const cplx> y,
                            const Constellation& c, double n0, double es,
                            const InverseProvider& inv) {
  if (!(n0 > 0.0) || !(es > 0.0)) throw ConfigError("mmse_detect: need n0 > 0 and es > 0");
  return linear_detect(h, y, c, n0 / es, inv);
}

bool quantized_equality(const ComplexMatrix& h, std::span<const cplx> y, const Constellation& c,
                        int order, int k) {
  require_system(h, y);
  const ComplexMatrix gm = gram(h);
  const CVector g = adjoint_multiply(h, y);
  const CVector exact = multiply(exact_inverse(gm), g);
  const CVector approx = multiply(approx_inverse(gm, order, k).approx, g);
  return quantize_indices(exact, c) == quantize_indices(approx, c);
}

bool sufficient_condition_check(const DetectionResult& zf_exact, const ComplexMatrix& e,
                                std::span<const cplx> g, double d_min) {
  const std::size_t k = zf_exact.hard.size();
  if (zf_exact.unconstrained.size() != k || e.rows() != k || e.cols() != g.size()) {
    throw ShapeError("sufficient_condition_check: inconsistent dimensions");
  }
  const CVector eg = multiply(e, g);
  const double half = d_min / 2.0;
  for (std::size_t i = 0; i < k; ++i) {
    const cplx d = zf_exact.hard[i] - zf_exact.unconstrained[i] - eg[i];
    if (!(std::abs(d.real()) < half) || !(std::abs(d.imag()) < half)) return false;
  }
  return true;
}

BoundCheck expected_bound_check(const ComplexMatrix& s, std::span<const cplx> x, double d_min) {
  const CVector sx = multiply(s, x);
  const double half = d_min / 2.0;
  BoundCheck b;
  b.re_margins.reserve(sx.size());
  b.im_margins.reserve(sx.size());
  for (const auto& v : sx) {
    b.re_margins.push_back(half - std::abs(v.real()));
    b.im_margins.push_back(half - std::abs(v.imag()));
    b.re_ok = b.re_ok && b.re_margins.back() > 0.0;
    b.im_ok = b.im_ok && b.im_margins.back() > 0.0;
  }
  return b;
}

}  // namespace mimo
