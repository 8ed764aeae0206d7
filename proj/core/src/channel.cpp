#include "mimo/channel.hpp"

#include <cmath>
#include <string>

#include "mimo/errors.hpp"
#include "mimo/linalg.hpp"

namespace mimo {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t trial) noexcept {
  return mix_seed(mix_seed(mix_seed(master) ^ stream) ^ trial);
}

cplx complex_gaussian(Rng& rng, double variance) {
  std::normal_distribution<double> dist(0.0, std::sqrt(variance / 2.0));
  const double re = dist(rng);
  const double im = dist(rng);
  return {re, im};
}

ChannelRealization sample_channel(Rng& rng, std::size_t n, std::size_t k) {
  if (k == 0 || n < k) {
    throw ConfigError("sample_channel: need n >= k >= 1, got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  }
  ChannelRealization ch{ComplexMatrix(n, k)};
  for (auto& v : ch.h.data()) v = complex_gaussian(rng);
  return ch;
}

ChannelRealization sample_channel_with_spectrum(Rng& rng, std::size_t n,
                                                std::span<const double> singular_values) {
  const std::size_t k = singular_values.size();
  // Q factors of Gaussian matrices with a positive-diagonal R are Haar distributed.
  const ComplexMatrix u = qr_decompose(sample_channel(rng, n, k).h).q;
  const ComplexMatrix v = qr_decompose(sample_channel(rng, k, k).h).q;
  ComplexMatrix us = u;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < k; ++c) us(r, c) *= singular_values[c];
  }
  return {multiply(us, v.adjoint())};
}

double snr_to_n0(double snr_db, std::size_t k, double es) {
  if (k == 0 || !(es > 0.0)) throw ConfigError("snr_to_n0: need k >= 1 and es > 0");
  return static_cast<double>(k) * es / std::pow(10.0, snr_db / 10.0);
}

NoiseParams make_noise_params(double snr_db, std::size_t k, double es) {
  return {snr_to_n0(snr_db, k, es), es, snr_db};
}

CVector random_symbols(Rng& rng, const Constellation& c, std::size_t k) {
  std::uniform_int_distribution<std::size_t> pick(0, static_cast<std::size_t>(c.order()) - 1);
  CVector x(k);
  for (auto& s : x) s = c.point(pick(rng));
  return x;
}

Transmission transmit(const ChannelRealization& ch, std::span<const cplx> x, double n0, Rng& rng) {
  if (x.size() != ch.n_users()) {
    throw ShapeError("transmit: expected " + std::to_string(ch.n_users()) + " symbols, got " +
                     std::to_string(x.size()));
  }
  if (!(n0 >= 0.0)) throw ConfigError("transmit: noise variance must be >= 0");
  Transmission t;
  t.y = multiply(ch.h, x);
  t.noise.resize(ch.n_rx());
  if (n0 > 0.0) {
    for (auto& v : t.noise) v = complex_gaussian(rng, n0);
  }
  for (std::size_t i = 0; i < t.y.size(); ++i) t.y[i] += t.noise[i];
  return t;
}

}  // namespace mimo
