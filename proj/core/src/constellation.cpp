#include "mimo/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mimo/errors.hpp"

namespace mimo {

namespace {

int gray(int i) { return i ^ (i >> 1); }

}  // namespace

Constellation Constellation::qam(int order, double es) {
  if (order != 4 && order != 16 && order != 64) {
    throw ConfigError("unsupported QAM order " + std::to_string(order) + " (expected 4, 16 or 64)");
  }
  if (!(es > 0.0) || !std::isfinite(es)) {
    throw ConfigError("average symbol energy must be positive, got " + std::to_string(es));
  }
  Constellation c;
  c.order_ = order;
  c.side_ = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
  c.bits_per_symbol_ = static_cast<int>(std::lround(std::log2(static_cast<double>(order))));
  c.es_ = es;
  // Mean energy of the odd-integer grid {+-1, +-3, ...}^2 is 2(M-1)/3.
  c.scale_ = std::sqrt(3.0 * es / (2.0 * (order - 1)));

  const int half_bits = c.bits_per_symbol_ / 2;
  c.points_.reserve(order);
  c.labels_.reserve(static_cast<std::size_t>(order) * c.bits_per_symbol_);
  for (int re = 0; re < c.side_; ++re) {
    for (int im = 0; im < c.side_; ++im) {
      c.points_.emplace_back((2 * re - (c.side_ - 1)) * c.scale_,
                             (2 * im - (c.side_ - 1)) * c.scale_);
      for (int b = half_bits - 1; b >= 0; --b) c.labels_.push_back((gray(re) >> b) & 1);
      for (int b = half_bits - 1; b >= 0; --b) c.labels_.push_back((gray(im) >> b) & 1);
    }
  }
  return c;
}

int Constellation::nearest_level(double amplitude) const noexcept {
  // Level index u in [0, side) sits at (2u - side + 1) * scale. Half-way ties round down.
  const double u = (amplitude / scale_ + (side_ - 1)) / 2.0;
  const double idx = std::ceil(u - 0.5);
  return static_cast<int>(std::clamp(idx, 0.0, static_cast<double>(side_ - 1)));
}

std::size_t Constellation::nearest_index(cplx v) const {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NumericError("quantize: non-finite input");
  }
  return static_cast<std::size_t>(nearest_level(v.real()) * side_ + nearest_level(v.imag()));
}

std::size_t Constellation::index_of(cplx v) const {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw DomainError("symbol is not finite");
  }
  const std::size_t idx = nearest_index(v);
  if (std::abs(v - points_[idx]) > 1e-9 * scale_) {
    throw DomainError("symbol (" + std::to_string(v.real()) + "," + std::to_string(v.imag()) +
                      ") is not a point of the " + std::to_string(order_) + "-QAM alphabet");
  }
  return idx;
}

CVector quantize(std::span<const cplx> v, const Constellation& c) {
  CVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c.point(c.nearest_index(v[i]));
  return out;
}

std::vector<std::size_t> quantize_indices(std::span<const cplx> v, const Constellation& c) {
  std::vector<std::size_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c.nearest_index(v[i]);
  return out;
}

Bits symbols_to_bits(std::span<const cplx> symbols, const Constellation& c) {
  Bits bits;
  bits.reserve(symbols.size() * static_cast<std::size_t>(c.bits_per_symbol()));
  for (const auto& s : symbols) {
    const auto lbl = c.label(c.index_of(s));
    bits.insert(bits.end(), lbl.begin(), lbl.end());
  }
  return bits;
}

CVector bits_to_symbols(std::span<const std::uint8_t> bits, const Constellation& c) {
  const auto bps = static_cast<std::size_t>(c.bits_per_symbol());
  if (bits.size() % bps != 0) {
    throw DomainError("bit count " + std::to_string(bits.size()) + " is not a multiple of " +
                      std::to_string(bps));
  }
  const int half_bits = c.bits_per_symbol() / 2;
  // Inverse Gray map for one dimension.
  std::vector<int> level_of_code(static_cast<std::size_t>(c.side()));
  for (int l = 0; l < c.side(); ++l) level_of_code[static_cast<std::size_t>(l ^ (l >> 1))] = l;

  CVector out;
  out.reserve(bits.size() / bps);
  for (std::size_t s = 0; s < bits.size(); s += bps) {
    int re_code = 0;
    int im_code = 0;
    for (int b = 0; b < half_bits; ++b) {
      const auto hi = bits[s + static_cast<std::size_t>(b)];
      const auto lo = bits[s + static_cast<std::size_t>(half_bits + b)];
      if (hi > 1 || lo > 1) throw DomainError("bit values must be 0 or 1");
      re_code = (re_code << 1) | hi;
      im_code = (im_code << 1) | lo;
    }
    const int re = level_of_code[static_cast<std::size_t>(re_code)];
    const int im = level_of_code[static_cast<std::size_t>(im_code)];
    out.push_back(c.point(static_cast<std::size_t>(re * c.side() + im)));
  }
  return out;
}

}  // namespace mimo
