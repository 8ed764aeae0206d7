#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "mimo/constellation.hpp"
#include "mimo/matrix.hpp"

namespace mimo {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Seed for trial `trial` of stream `stream` under `master`. Pure function, so a trial draws
/// the same numbers whichever worker runs it.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t trial) noexcept;

struct ChannelRealization {
  ComplexMatrix h;  // N x K
  std::size_t n_rx() const noexcept { return h.rows(); }
  std::size_t n_users() const noexcept { return h.cols(); }
};

struct NoiseParams {
  double n0 = 1.0;  // variance of each complex noise entry
  double es = 1.0;
  double snr_db = 0.0;
};

// One CN(0, variance) draw: real and imaginary parts each N(0, variance/2).
cplx complex_gaussian(Rng& rng, double variance = 1.0);

/// N x K matrix of i.i.d. CN(0, 1) entries. Requires n >= k >= 1.
ChannelRealization sample_channel(Rng& rng, std::size_t n, std::size_t k);

/// U diag(singular_values) V^H with U (N x K, orthonormal columns) and V (K x K, unitary) drawn
/// from the Haar measure. Used where a channel with a controlled condition number is needed.
ChannelRealization sample_channel_with_spectrum(Rng& rng, std::size_t n,
                                                std::span<const double> singular_values);

/// N0 = K * Es / 10^(snr_db / 10), i.e. snr_db is the per-antenna SNR K Es / N0.
double snr_to_n0(double snr_db, std::size_t k, double es);
NoiseParams make_noise_params(double snr_db, std::size_t k, double es);

/// K symbols drawn uniformly from the alphabet.
CVector random_symbols(Rng& rng, const Constellation& c, std::size_t k);

struct Transmission {
  CVector y;
  CVector noise;
};

/// y = H x + n with n ~ CN(0, n0 I). n0 = 0 gives the noiseless channel.
Transmission transmit(const ChannelRealization& ch, std::span<const cplx> x, double n0, Rng& rng);

}  // namespace mimo
