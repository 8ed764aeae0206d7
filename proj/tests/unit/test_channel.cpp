#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "mimo/channel.hpp"
#include "mimo/errors.hpp"
#include "oracles.hpp"

using namespace mimo;

TEST(Channel, SameSeedSameMatrix) {
  Rng a(42), b(42);
  EXPECT_EQ(sample_channel(a, 8, 4).h, sample_channel(b, 8, 4).h);
}

TEST(Channel, Shapes) {
  Rng rng(1);
  const auto ch = sample_channel(rng, 1, 1);
  EXPECT_EQ(ch.h.rows(), 1u);
  EXPECT_EQ(ch.h.cols(), 1u);
  EXPECT_THROW(sample_channel(rng, 2, 3), ConfigError);
  EXPECT_THROW(sample_channel(rng, 2, 0), ConfigError);
}

TEST(Channel, EntryStatistics) {
  Rng rng(3);
  const int n = 100000;
  cplx sum = 0.0;
  double sq = 0.0, re_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const cplx v = sample_channel(rng, 1, 1).h(0, 0);
    sum += v;
    sq += std::norm(v);
    re_sq += v.real() * v.real();
  }
  const cplx mean = sum / static_cast<double>(n);
  EXPECT_LT(std::abs(mean.real()), 0.02);
  EXPECT_LT(std::abs(mean.imag()), 0.02);
  EXPECT_LT(std::abs(sq / n - std::norm(mean) - 1.0), 0.02);
  EXPECT_LT(std::abs(re_sq / n - 0.5), 0.02);
}

TEST(Channel, PrescribedSpectrum) {
  Rng rng(4);
  const std::vector<double> sv{3.0, 2.0, 1.0, 0.5};
  const auto ch = sample_channel_with_spectrum(rng, 6, sv);
  const auto c = oracle::product(oracle::herm(ch.h), ch.h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle::to_eigen(c));
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
  std::sort(ev.begin(), ev.end());
  EXPECT_NEAR(ev[0], 0.25, 1e-10);
  EXPECT_NEAR(ev[1], 1.0, 1e-10);
  EXPECT_NEAR(ev[2], 4.0, 1e-10);
  EXPECT_NEAR(ev[3], 9.0, 1e-10);
}

TEST(Channel, SnrToN0) {
  EXPECT_DOUBLE_EQ(snr_to_n0(0.0, 8, 1.0), 8.0);
  EXPECT_NEAR(snr_to_n0(10.0, 8, 1.0), 0.8, 1e-15);
  EXPECT_NEAR(snr_to_n0(3.0103, 1, 1.0), 0.5, 1e-4);
  const auto p = make_noise_params(10.0, 8, 2.0);
  EXPECT_NEAR(p.n0, 1.6, 1e-14);
  EXPECT_EQ(p.es, 2.0);
}

TEST(Channel, NoiselessTransmit) {
  Rng rng(5);
  const auto ch = sample_channel(rng, 6, 3);
  const auto c = Constellation::qam(16);
  const auto x = random_symbols(rng, c, 3);
  const auto t = transmit(ch, x, 0.0, rng);
  const auto hx = oracle::product(ch.h, x);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(t.y[i], hx[i]);
}

TEST(Channel, IdentityChannelAddsNoise) {
  Rng rng(6);
  ChannelRealization ch{oracle::eye(4)};
  const CVector x{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto t = transmit(ch, x, 0.3, rng);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(std::abs(t.y[i] - x[i] - t.noise[i]), 1e-15);
}

TEST(Channel, NoiseVariance) {
  Rng rng(7);
  ChannelRealization ch{oracle::eye(1)};
  const double n0 = 0.37;
  const int n = 100000;
  double s = 0.0, total = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto t = transmit(ch, CVector{0.0}, n0, rng);
    s += std::norm(t.noise[0]);
  }
  EXPECT_LT(std::abs(s / n - n0), 0.02 * n0);

  // E||n||^2 = N n0 within 3 standard errors.
  ChannelRealization wide{ComplexMatrix(16, 1)};
  std::vector<double> v;
  for (int i = 0; i < 20000; ++i) v.push_back(oracle::sq(transmit(wide, CVector{0.0}, n0, rng).noise));
  for (double x : v) total += x;
  const double mean = total / v.size();
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  const double se = std::sqrt(var / (v.size() - 1) / v.size());
  EXPECT_LT(std::abs(mean - 16 * n0), 3 * se);
}

TEST(Channel, ShapeMismatch) {
  Rng rng(8);
  const auto ch = sample_channel(rng, 4, 2);
  EXPECT_THROW(transmit(ch, CVector(3), 1.0, rng), ShapeError);
}

TEST(Channel, SymbolsUniform) {
  Rng rng(9);
  const auto c = Constellation::qam(4);
  const auto x = random_symbols(rng, c, 40000);
  std::vector<int> counts(4);
  for (const auto& s : x) counts[c.index_of(s)]++;
  for (int n : counts) EXPECT_NEAR(n, 10000, 400);
}

TEST(Channel, DerivedSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 4; ++s)
    for (std::uint64_t t = 0; t < 100; ++t) seen.insert(derive_seed(1, s, t));
  EXPECT_EQ(seen.size(), 400u);
  EXPECT_EQ(derive_seed(5, 2, 9), derive_seed(5, 2, 9));
}
