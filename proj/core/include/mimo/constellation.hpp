#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mimo/matrix.hpp"

namespace mimo {

using Bits = std::vector<std::uint8_t>;

/// Square Gray-labelled M-QAM alphabet.
///
/// Points are indexed as `re_level * side + im_level`, with levels counted from the most
/// negative amplitude. The first log2(M)/2 bits of a label carry the Gray code of the
/// in-phase level, the remaining bits the quadrature level. Immutable after construction.
class Constellation {
 public:
  /// Throws ConfigError unless M is 4, 16 or 64 and es > 0.
  static Constellation qam(int order, double es = 1.0);

  int order() const noexcept { return order_; }
  int bits_per_symbol() const noexcept { return bits_per_symbol_; }
  int side() const noexcept { return side_; }
  double es() const noexcept { return es_; }
  double d_min() const noexcept { return 2.0 * scale_; }

  std::span<const cplx> points() const noexcept { return points_; }
  const cplx& point(std::size_t index) const noexcept { return points_[index]; }

  /// Label of point `index`, most significant bit first.
  std::span<const std::uint8_t> label(std::size_t index) const noexcept {
    return {labels_.data() + index * static_cast<std::size_t>(bits_per_symbol_),
            static_cast<std::size_t>(bits_per_symbol_)};
  }

  /// Index of the nearest point. Equidistant candidates resolve to the smaller real part,
  /// then the smaller imaginary part. Throws NumericError on non-finite input.
  std::size_t nearest_index(cplx v) const;

  /// Index of `v` if it is a point of the alphabet, otherwise DomainError.
  std::size_t index_of(cplx v) const;

 private:
  Constellation() = default;
  int nearest_level(double amplitude) const noexcept;

  int order_ = 0;
  int bits_per_symbol_ = 0;
  int side_ = 0;
  double es_ = 0.0;
  double scale_ = 0.0;  // half the grid spacing
  std::vector<cplx> points_;
  std::vector<std::uint8_t> labels_;
};

// Element-wise nearest-point quantization.
CVector quantize(std::span<const cplx> v, const Constellation& c);

std::vector<std::size_t> quantize_indices(std::span<const cplx> v, const Constellation& c);

Bits symbols_to_bits(std::span<const cplx> symbols, const Constellation& c);
CVector bits_to_symbols(std::span<const std::uint8_t> bits, const Constellation& c);

}  // namespace mimo
