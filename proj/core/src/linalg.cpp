#include "mimo/linalg.hpp"

#include <cmath>
#include <string>

#include "mimo/errors.hpp"

namespace mimo {

namespace {

void require_square(const ComplexMatrix& c, const char* what) {
  if (!c.is_square() || c.rows() == 0) {
    throw ShapeError(std::string(what) + ": expected a non-empty square matrix, got " +
                     std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
  }
}

void require_finite(const ComplexMatrix& c, const char* what) {
  if (!c.all_finite()) throw NumericError(std::string(what) + ": non-finite entry");
}

// I - a*b
ComplexMatrix identity_minus_product(const ComplexMatrix& a, const ComplexMatrix& b,
                                     FlopCount* flops) {
  ComplexMatrix s = multiply(a, b, flops);
  s *= -1.0;
  for (std::size_t i = 0; i < s.rows(); ++i) s(i, i) += 1.0;
  return s;
}

}  // namespace

ComplexMatrix gram(const ComplexMatrix& h, FlopCount* flops) {
  const std::size_t n = h.rows();
  const std::size_t k = h.cols();
  if (n < k || k == 0) {
    throw ShapeError("gram: need N >= K >= 1, got " + std::to_string(n) + "x" + std::to_string(k));
  }
  ComplexMatrix c(k, k);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = h.row(r);
    for (std::size_t i = 0; i < k; ++i) {
      const cplx hi = std::conj(row[i]);
      for (std::size_t j = i; j < k; ++j) c(i, j) += hi * row[j];
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    c(i, i) = c(i, i).real();
    for (std::size_t j = i + 1; j < k; ++j) c(j, i) = std::conj(c(i, j));
  }
  if (flops) *flops += static_cast<FlopCount>(n) * k * (k + 1) / 2;
  return c;
}

QrResult qr_decompose(const ComplexMatrix& h) {
  const std::size_t n = h.rows();
  const std::size_t k = h.cols();
  if (n < k || k == 0) {
    throw ShapeError("qr_decompose: need N >= K >= 1, got " + std::to_string(n) + "x" +
                     std::to_string(k));
  }
  require_finite(h, "qr_decompose");
  const double tol = 1e-12 * frobenius_norm(h);

  ComplexMatrix a = h;
  std::vector<CVector> reflectors(k);
  std::vector<double> betas(k, 0.0);

  for (std::size_t j = 0; j < k; ++j) {
    CVector v(n - j);
    for (std::size_t i = j; i < n; ++i) v[i - j] = a(i, j);
    const double xnorm = norm(v);
    if (xnorm <= tol) {
      throw SingularityError("qr_decompose: column " + std::to_string(j) +
                             " is linearly dependent on the previous ones");
    }
    const cplx phase = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : cplx(1.0, 0.0);
    const cplx alpha = -phase * xnorm;
    v[0] -= alpha;
    const double vnorm_sq = squared_norm(v);
    const double beta = vnorm_sq > 0.0 ? 2.0 / vnorm_sq : 0.0;

    for (std::size_t c = j; c < k; ++c) {
      cplx w = 0.0;
      for (std::size_t i = j; i < n; ++i) w += std::conj(v[i - j]) * a(i, c);
      w *= beta;
      for (std::size_t i = j; i < n; ++i) a(i, c) -= v[i - j] * w;
    }
    a(j, j) = alpha;
    for (std::size_t i = j + 1; i < n; ++i) a(i, j) = 0.0;
    reflectors[j] = std::move(v);
    betas[j] = beta;
  }

  ComplexMatrix q(n, k);
  for (std::size_t i = 0; i < k; ++i) q(i, i) = 1.0;
  for (std::size_t jj = k; jj-- > 0;) {
    const auto& v = reflectors[jj];
    for (std::size_t c = 0; c < k; ++c) {
      cplx w = 0.0;
      for (std::size_t i = jj; i < n; ++i) w += std::conj(v[i - jj]) * q(i, c);
      w *= betas[jj];
      for (std::size_t i = jj; i < n; ++i) q(i, c) -= v[i - jj] * w;
    }
  }

  ComplexMatrix r(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) r(i, j) = a(i, j);
  }
  // Rotate each row of R so its diagonal is positive real; compensate in Q's column.
  for (std::size_t i = 0; i < k; ++i) {
    const double mag = std::abs(r(i, i));
    const cplx d = r(i, i) / mag;
    for (std::size_t j = i; j < k; ++j) r(i, j) *= std::conj(d);
    r(i, i) = mag;
    for (std::size_t row = 0; row < n; ++row) q(row, i) *= d;
  }
  return {std::move(q), std::move(r)};
}

ComplexMatrix exact_inverse(const ComplexMatrix& c, FlopCount* flops) {
  require_square(c, "exact_inverse");
  require_finite(c, "exact_inverse");
  const std::size_t k = c.rows();
  FlopCount macs = 0;

  // C = L L^H
  ComplexMatrix l(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    double d = c(j, j).real();
    for (std::size_t p = 0; p < j; ++p) d -= abs2(l(j, p));
    macs += j;
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw SingularityError("exact_inverse: non-positive pivot " + std::to_string(d) +
                             " at index " + std::to_string(j));
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < k; ++i) {
      cplx s = c(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * std::conj(l(j, p));
      l(i, j) = s / ljj;
    }
    macs += static_cast<FlopCount>(k - j - 1) * j;
  }

  // L^{-1}, lower triangular
  ComplexMatrix linv(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    linv(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < k; ++i) {
      cplx s = 0.0;
      for (std::size_t p = j; p < i; ++p) s += l(i, p) * linv(p, j);
      linv(i, j) = -s / l(i, i);
      macs += i - j;
    }
  }

  // C^{-1} = L^{-H} L^{-1}; upper triangle, then mirror.
  ComplexMatrix inv(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      cplx s = 0.0;
      for (std::size_t p = j; p < k; ++p) s += std::conj(linv(p, i)) * linv(p, j);
      inv(i, j) = s;
      macs += k - j;
    }
    inv(i, i) = inv(i, i).real();
    for (std::size_t j = i + 1; j < k; ++j) inv(j, i) = std::conj(inv(i, j));
  }
  if (flops) *flops += macs;
  return inv;
}

InitGain init_gain(const ComplexMatrix& c, FlopCount* flops) {
  require_square(c, "init_gain");
  require_finite(c, "init_gain");
  const std::size_t k = c.rows();
  const auto kd = static_cast<double>(k);

  const ComplexMatrix a = gram(c, flops);  // C^H C
  InitGain g;
  g.mean = trace(a).real() / kd;
  // tr(A^2)/K - m^2 == ||A - mI||_F^2 / K for Hermitian A; the right side cannot go negative.
  double spread_sq = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const cplx v = i == j ? a(i, j) - g.mean : a(i, j);
      spread_sq += abs2(v);
    }
  }
  if (flops) *flops += static_cast<FlopCount>(k) * k;
  spread_sq /= kd;
  g.spread = std::sqrt(spread_sq);
  g.lambda_upper = g.mean + g.spread * std::sqrt(kd - 1.0);
  if (!(g.lambda_upper > 0.0) || !std::isfinite(g.lambda_upper)) {
    throw NumericError("init_gain: eigenvalue bound is not positive (zero matrix?)");
  }
  g.gain = 2.0 / (g.lambda_upper * (1.0 + kGainSafeguard));
  g.c0 = c.adjoint();
  g.c0 *= g.gain;
  if (flops) *flops += static_cast<FlopCount>(k) * k;
  return g;
}

bool is_supported_order(int order) noexcept { return order == 2 || order == 3 || order == 7; }

IterInverseState make_iter_state(const ComplexMatrix& target, ComplexMatrix initial, int order,
                                 FlopCount initial_flops) {
  require_square(target, "make_iter_state");
  if (initial.rows() != target.rows() || initial.cols() != target.cols()) {
    throw ShapeError("make_iter_state: initial guess shape differs from target");
  }
  if (!is_supported_order(order)) {
    throw ConfigError("unsupported iteration order " + std::to_string(order) +
                      " (expected 2, 3 or 7)");
  }
  IterInverseState s;
  s.flops = initial_flops;
  s.residual = identity_minus_product(initial, target, &s.flops);
  s.target = target;
  s.approx = std::move(initial);
  s.order = order;
  return s;
}

IterInverseState iterate(IterInverseState state) {
  const std::size_t k = state.target.rows();
  const ComplexMatrix& s = state.residual;

  ComplexMatrix poly = s;  // I + S + ... + S^{p-1}
  for (std::size_t i = 0; i < k; ++i) poly(i, i) += 1.0;
  for (int j = 2; j < state.order; ++j) {
    poly = multiply(s, poly, &state.flops);
    for (std::size_t i = 0; i < k; ++i) poly(i, i) += 1.0;
  }

  ComplexMatrix next = multiply(poly, state.approx, &state.flops);
  ComplexMatrix next_residual = identity_minus_product(next, state.target, &state.flops);
  if (!next.all_finite() || !next_residual.all_finite()) {
    throw DivergenceError("iterate: non-finite approximate inverse after step " +
                          std::to_string(state.iterations + 1));
  }

  const double before = frobenius_norm(state.residual);
  const double after = frobenius_norm(next_residual);
  // Growth below the floor is rounding noise of an already converged iterate.
  const bool grew = after > before && after > kDivergenceFloor;
  state.growth_streak = grew ? state.growth_streak + 1 : 0;
  if (state.growth_streak >= 2) {
    throw DivergenceError("iterate: residual norm grew on two consecutive steps (" +
                          std::to_string(before) + " -> " + std::to_string(after) + ")");
  }

  state.approx = std::move(next);
  state.residual = std::move(next_residual);
  ++state.iterations;
  return state;
}

IterInverseState approx_inverse(const ComplexMatrix& c, int order, int k) {
  if (k < 0) throw ConfigError("approx_inverse: iteration count must be >= 0");
  FlopCount flops = 0;
  InitGain g = init_gain(c, &flops);
  IterInverseState state = make_iter_state(c, std::move(g.c0), order, flops);
  for (int i = 0; i < k; ++i) state = iterate(std::move(state));
  return state;
}

}  // namespace mimo
