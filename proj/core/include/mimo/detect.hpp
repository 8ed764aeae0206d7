#pragma once

#include <string>
#include <string_view>

#include "mimo/constellation.hpp"
#include "mimo/linalg.hpp"
#include "mimo/matrix.hpp"

namespace mimo {

/// How a detector obtains the inverse of its (regularized) Gram matrix.
struct InverseProvider {
  enum class Kind { exact, iterative };

  Kind kind = Kind::exact;
  int order = 2;
  int iterations = 0;

  static InverseProvider exact() { return {}; }
  /// Throws ConfigError unless order is 2, 3 or 7 and iterations >= 0.
  static InverseProvider iterative(int order, int iterations);

  /// Accepts "exact", "newton:K", "order3:K" and "order7:K".
  static InverseProvider parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const InverseProvider&, const InverseProvider&) = default;
};

/// Applies the provider to C. Returns the inverse (exact) or C_k (iterative).
ComplexMatrix apply_inverse_provider(const ComplexMatrix& c, const InverseProvider& inv,
                                     FlopCount* flops = nullptr);

struct DetectionResult {
  CVector unconstrained;  // inverse(C) * g
  CVector hard;           // quantize(unconstrained)
  CVector g;              // H^H y
  FlopCount flops = 0;
};

/// Zero-forcing: quantize((H^H H)^{-1} H^H y) with the provider's inverse.
DetectionResult zf_detect(const ComplexMatrix& h, std::span<const cplx> y, const Constellation& c,
                          const InverseProvider& inv);

/// MMSE: quantize((H^H H + (n0/es) I)^{-1} H^H y).
DetectionResult mmse_detect(const ComplexMatrix& h, std::span<const cplx> y,
                            const Constellation& c, double n0, double es,
                            const InverseProvider& inv);

/// True iff ZF with C_k (order, k) quantizes to the same vector as ZF with the exact inverse.
bool quantized_equality(const ComplexMatrix& h, std::span<const cplx> y, const Constellation& c,
                        int order, int k);

/// Box test on the inversion error: with z = x_zf - C^{-1} g and E = C_k - C^{-1},
/// |Re(z_i - (Eg)_i)| < d_min/2 and |Im(z_i - (Eg)_i)| < d_min/2 for every i.
/// Sufficient (not necessary) for quantized_equality.
bool sufficient_condition_check(const DetectionResult& zf_exact, const ComplexMatrix& e,
                                std::span<const cplx> g, double d_min);

struct BoundCheck {
  bool re_ok = true;
  bool im_ok = true;
  std::vector<double> re_margins;  // d_min/2 - |Re((S x)_i)|
  std::vector<double> im_margins;  // d_min/2 - |Im((S x)_i)|
  bool ok() const noexcept { return re_ok && im_ok; }
};

/// Per-realization version of the residual tolerance bounds on Re(S x) and Im(S x).
BoundCheck expected_bound_check(const ComplexMatrix& s, std::span<const cplx> x, double d_min);

}  // namespace mimo
