#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

#include "mimo/constellation.hpp"
#include "mimo/detect.hpp"
#include "mimo/matrix.hpp"

namespace mimo {

enum class SdScheme { proposed, se_sd, fp_sd, brute_force };

SdScheme parse_scheme(std::string_view text);  // proposed|se|fp|ml
std::string_view to_string(SdScheme s) noexcept;

struct RadiusMode {
  enum class Kind { babai_approx, babai_exact, infinite, fixed };
  Kind kind = Kind::babai_approx;
  double fixed_sq = 0.0;  // squared radius when kind == fixed
};

struct SdConfig {
  SdScheme scheme = SdScheme::proposed;
  InverseProvider inverse = InverseProvider::iterative(2, 7);
  RadiusMode radius{};

  /// Default radius mode for each scheme: proposed -> babai_approx, se -> infinite,
  /// fp -> babai_exact.
  static SdConfig for_scheme(SdScheme scheme, InverseProvider inverse = InverseProvider::iterative(2, 7));
  /// Throws ConfigError when scheme and radius mode do not go together.
  void validate() const;
};

struct SearchStats {
  std::uint64_t nodes_visited = 0;  // partial metrics c_j evaluated
  std::uint64_t leaf_updates = 0;   // times the bound was tightened at a leaf
  double radius_initial_sq = std::numeric_limits<double>::infinity();
  double radius_final_sq = std::numeric_limits<double>::infinity();
  bool found = false;
  bool used_fallback = false;

  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

struct SdResult {
  CVector x_hat;
  SearchStats stats;
};

/// ||R (x_q - x_u)||^2, the squared Babai radius of the unconstrained estimate x_u.
double babai_radius_sq(const ComplexMatrix& r, std::span<const cplx> x_q, std::span<const cplx> x_u);

/// ||z - R x||^2
double lattice_cost_sq(std::span<const cplx> z, const ComplexMatrix& r, std::span<const cplx> x);

/// Depth-first search seeded with the squared approximate-inverse Babai radius `cost0_sq`
/// and tightened at every improving leaf. Children are visited in ascending partial metric
/// (ties by alphabet index) and pruned once accumulated cost reaches the bound. If the
/// sphere holds no leaf, returns `fallback` (the quantized approximate ZF estimate) with
/// found = false and used_fallback = true.
SdResult sd_proposed(std::span<const cplx> z, const ComplexMatrix& r, const Constellation& c,
                     double cost0_sq, std::span<const cplx> fallback);

/// Schnorr-Euchner: same search from an infinite bound. Always returns the ML point.
SdResult sd_se(std::span<const cplx> z, const ComplexMatrix& r, const Constellation& c);

/// Relative slack added to a fixed radius so a leaf lying exactly on the sphere survives
/// rounding in the accumulated metric.
inline constexpr double kFixedRadiusSlack = 1e-9;

/// Fincke-Pohst: visits every leaf with cost <= r_sq without tightening and returns the
/// cheapest. found = false if the sphere is empty.
SdResult sd_fp(std::span<const cplx> z, const ComplexMatrix& r, const Constellation& c, double r_sq);

struct MlResult {
  CVector x_hat;
  double cost_sq = 0.0;
};

/// Exhaustive search over Omega^K with lexicographic tie-break (first user most
/// significant). Throws ConfigError when M^K > 1e6.
MlResult brute_force_ml(std::span<const cplx> z, const ComplexMatrix& r, const Constellation& c);

struct SdDecode {
  CVector x_hat;
  SearchStats stats;
  FlopCount flops = 0;  // Gram, matched filter, inverse and radius arithmetic
};

/// Full receiver: QR of H, z = Q^H y, radius from the configured source, then the search.
SdDecode sphere_decode(const ComplexMatrix& h, std::span<const cplx> y, const Constellation& c,
                       const SdConfig& cfg);

}  // namespace mimo
