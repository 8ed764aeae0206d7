#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mimo/errors.hpp"
#include "mimo/linalg.hpp"
#include "oracles.hpp"

using namespace mimo;

namespace {

ComplexMatrix random_gram(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  const auto h = oracle::random_matrix(rng, n, k);
  return oracle::product(oracle::herm(h), h);
}

ComplexMatrix mpow(const ComplexMatrix& s, int p) {
  ComplexMatrix out = oracle::eye(s.rows());
  for (int i = 0; i < p; ++i) out = oracle::product(out, s);
  return out;
}

}  // namespace

TEST(Gram, Examples) {
  const ComplexMatrix ones{{1.0}, {1.0}};
  EXPECT_EQ(gram(ones), (ComplexMatrix{{2.0}}));
  EXPECT_EQ(gram(ComplexMatrix::identity(3)), ComplexMatrix::identity(3));
}

TEST(Gram, MatchesTripleLoopAndIsHermitian) {
  std::mt19937_64 rng(1);
  const auto h = oracle::random_matrix(rng, 8, 4);
  FlopCount flops = 0;
  const auto c = gram(h, &flops);
  EXPECT_LT(oracle::fro_diff(c, oracle::product(oracle::herm(h), h)), 1e-12);
  EXPECT_EQ(c, oracle::herm(c));
  EXPECT_EQ(flops, 8u * 4u * 5u / 2u);
}

TEST(Qr, Examples) {
  const auto id = qr_decompose(ComplexMatrix::identity(3));
  EXPECT_LT(oracle::fro_diff(id.q, oracle::eye(3)), 1e-15);
  EXPECT_LT(oracle::fro_diff(id.r, oracle::eye(3)), 1e-15);
  const auto col = qr_decompose(ComplexMatrix{{2.0}, {0.0}});
  EXPECT_LT(oracle::fro_diff(col.q, ComplexMatrix{{1.0}, {0.0}}), 1e-15);
  EXPECT_NEAR(std::abs(col.r(0, 0) - 2.0), 0.0, 1e-15);
}

TEST(Qr, ReconstructsRandomSquareAndTall) {
  std::mt19937_64 rng(2);
  for (auto [n, k] : {std::pair{16, 16}, std::pair{32, 8}, std::pair{5, 3}}) {
    const auto h = oracle::random_matrix(rng, n, k);
    const auto qr = qr_decompose(h);
    EXPECT_LT(oracle::fro_diff(oracle::product(qr.q, qr.r), h) / oracle::fro(h), 1e-10);
    const auto c = oracle::product(oracle::herm(h), h);
    EXPECT_LT(oracle::fro_diff(oracle::product(oracle::herm(qr.r), qr.r), c) / oracle::fro(c), 1e-9);
    EXPECT_LT(oracle::fro_diff(oracle::product(oracle::herm(qr.q), qr.q), oracle::eye(k)), 1e-12);
    for (int i = 0; i < k; ++i) {
      EXPECT_GT(qr.r(i, i).real(), 0.0);
      EXPECT_EQ(qr.r(i, i).imag(), 0.0);
      for (int j = 0; j < i; ++j) EXPECT_EQ(qr.r(i, j), cplx(0.0));
    }
  }
}

TEST(Qr, RankDeficientThrows) {
  const ComplexMatrix h{{1.0, 2.0}, {2.0, 4.0}, {3.0, 6.0}};
  EXPECT_THROW(qr_decompose(h), SingularityError);
}

TEST(ExactInverse, Examples) {
  EXPECT_LT(oracle::fro_diff(exact_inverse(oracle::eye(4)), oracle::eye(4)), 1e-15);
  const auto inv = exact_inverse(ComplexMatrix{{1.0, 0.0}, {0.0, 2.0}});
  EXPECT_LT(oracle::fro_diff(inv, ComplexMatrix{{1.0, 0.0}, {0.0, 0.5}}), 1e-15);
}

TEST(ExactInverse, RandomGram) {
  std::mt19937_64 rng(3);
  const auto c = random_gram(rng, 16, 8);
  const auto inv = exact_inverse(c);
  EXPECT_LT(oracle::fro_diff(oracle::product(inv, c), oracle::eye(8)), 1e-9);
  EXPECT_LT(oracle::fro_diff(inv, oracle::inverse(c)) / oracle::fro(inv), 1e-10);
}

TEST(ExactInverse, IndefiniteThrows) {
  EXPECT_THROW(exact_inverse(ComplexMatrix{{1.0, 2.0}, {2.0, 1.0}}), SingularityError);
  EXPECT_THROW(exact_inverse(ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}), SingularityError);
}

TEST(InitGain, DiagonalExample) {
  const auto g = init_gain(ComplexMatrix{{1.0, 0.0}, {0.0, 2.0}});
  EXPECT_NEAR(g.mean, 2.5, 1e-14);
  EXPECT_NEAR(g.spread, 1.5, 1e-14);
  EXPECT_NEAR(g.lambda_upper, 4.0, 1e-14);
  EXPECT_NEAR(g.gain, 0.5, 1e-6);
  EXPECT_NEAR(g.gain, 0.5 / (1.0 + kGainSafeguard), 1e-15);
  EXPECT_NEAR(std::abs(g.c0(1, 1) - 2.0 * g.gain), 0.0, 1e-15);
}

TEST(InitGain, IdentityExample) {
  for (std::size_t k : {1u, 3u, 8u}) {
    const auto g = init_gain(oracle::eye(k));
    EXPECT_NEAR(g.mean, 1.0, 1e-14);
    EXPECT_NEAR(g.spread, 0.0, 1e-7);
    EXPECT_NEAR(g.lambda_upper, 1.0, 1e-6);
    EXPECT_NEAR(g.gain, 2.0, 1e-5);
    const auto s0 = oracle::eye(k) - oracle::product(g.c0, oracle::eye(k));
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_LT(std::abs(s0(i, i)), 1.0);
      EXPECT_NEAR(s0(i, i).real(), -1.0 + 2.0 * kGainSafeguard, 1e-9);
    }
  }
}

TEST(InitGain, BoundsLargestEigenvalue) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 2 + trial % 7;
    const auto c = random_gram(rng, k + trial % 5, k);
    const auto g = init_gain(c);
    const double lmax = oracle::max_eigenvalue(oracle::product(oracle::herm(c), c));
    EXPECT_GE(g.lambda_upper, lmax * (1.0 - 1e-12));
    const auto s0 = oracle::eye(k) - oracle::product(g.c0, c);
    EXPECT_LT(std::abs(oracle::max_eigenvalue(oracle::product(oracle::herm(s0), s0))), 1.0);
  }
}

class ScalarStep : public ::testing::TestWithParam<std::tuple<int, double, double>> {};

TEST_P(ScalarStep, OneStep) {
  const auto [order, c1, s1] = GetParam();
  auto st = make_iter_state(ComplexMatrix{{2.0}}, ComplexMatrix{{0.25}}, order);
  EXPECT_NEAR(st.residual(0, 0).real(), 0.5, 1e-15);
  st = iterate(std::move(st));
  EXPECT_EQ(st.iterations, 1);
  EXPECT_NEAR(st.approx(0, 0).real(), c1, 1e-15);
  EXPECT_NEAR(st.residual(0, 0).real(), s1, 1e-15);
}

INSTANTIATE_TEST_SUITE_P(Orders, ScalarStep,
                         ::testing::Values(std::tuple{2, 0.375, 0.25}, std::tuple{3, 0.4375, 0.125},
                                           std::tuple{7, 0.49609375, 0.0078125}));

class Orders : public ::testing::TestWithParam<int> {};

TEST_P(Orders, ResidualRecurrenceAndDefinition) {
  const int p = GetParam();
  std::mt19937_64 rng(5 + p);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = random_gram(rng, 8, 8);
    auto st = make_iter_state(c, init_gain(c).c0, p);
    for (int step = 0; step < 4; ++step) {
      const auto sp = mpow(st.residual, p);
      const int before = st.iterations;
      st = iterate(std::move(st));
      EXPECT_EQ(st.iterations, before + 1);
      EXPECT_LE(oracle::fro_diff(st.residual, sp), 1e-9 * (1.0 + oracle::fro(sp)));
      const auto def = oracle::eye(8) - oracle::product(st.approx, c);
      EXPECT_LE(oracle::fro_diff(st.residual, def), 1e-10 * std::max(1.0, oracle::fro(def)));
    }
  }
}

TEST_P(Orders, ConvergesToInverse) {
  const auto c = ComplexMatrix{{1.0, 0.0}, {0.0, 2.0}};
  const auto st = approx_inverse(c, GetParam(), 30);
  EXPECT_LT(oracle::fro_diff(st.approx, ComplexMatrix{{1.0, 0.0}, {0.0, 0.5}}), 1e-10);
}

TEST(ApproxInverse, TightBoundSlowsNewton) {
  // For diag(1, 2) the eigenvalue bound is exact, so the second residual eigenvalue starts at
  // 1 - 2 / (1 + delta) and Newton squares it: after 20 steps it is still near exp(-2).
  const auto c = ComplexMatrix{{1.0, 0.0}, {0.0, 2.0}};
  const auto st = approx_inverse(c, 2, 20);
  const double s0 = 1.0 - 2.0 / (1.0 + kGainSafeguard);
  const double s20 = std::pow(s0, 1 << 20);
  EXPECT_NEAR(st.residual(1, 1).real(), s20, 1e-9);
  EXPECT_NEAR(st.approx(1, 1).real(), (1.0 - s20) / 2.0, 1e-9);
  EXPECT_GT(s20, 0.1);
}

TEST_P(Orders, FlopsDeterministicAndCounted) {
  std::mt19937_64 rng(9);
  const auto c = random_gram(rng, 12, 6);
  const auto a = approx_inverse(c, GetParam(), 3);
  const auto b = approx_inverse(c, GetParam(), 3);
  EXPECT_EQ(a.flops, b.flops);
  EXPECT_EQ(a.approx, b.approx);
  const auto a4 = approx_inverse(c, GetParam(), 4);
  EXPECT_EQ(a4.flops - a.flops, static_cast<FlopCount>(GetParam()) * 6 * 6 * 6);
}

INSTANTIATE_TEST_SUITE_P(All, Orders, ::testing::Values(2, 3, 7));

TEST(ApproxInverse, ZeroIterationsIsInitialGuess) {
  std::mt19937_64 rng(6);
  const auto c = random_gram(rng, 10, 5);
  const auto st = approx_inverse(c, 2, 0);
  EXPECT_EQ(st.approx, init_gain(c).c0);
  EXPECT_EQ(st.iterations, 0);
}

TEST(ApproxInverse, NewtonResidualSquares) {
  // Well-conditioned Gram: ||S_7||_F tracks ||S_0||_F^(2^7) on a log scale.
  std::mt19937_64 rng(7);
  const auto c = oracle::gram_with_spectrum(rng, {1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7});
  auto st = approx_inverse(c, 2, 0);
  // S_0 is Hermitian here, so ||S^(2^k)||_F follows its eigenvalues; compare log2 slopes.
  std::vector<double> norms{oracle::fro(st.residual)};
  for (int k = 1; k <= 4; ++k) {
    st = iterate(std::move(st));
    norms.push_back(oracle::fro(st.residual));
  }
  for (int k = 1; k <= 4; ++k) {
    const double expected = oracle::fro(mpow(approx_inverse(c, 2, 0).residual, 1 << k));
    EXPECT_NEAR(std::log(norms[k]), std::log(expected), 1e-6 * std::abs(std::log(expected)) + 1e-9);
  }
  st = approx_inverse(c, 2, 7);
  EXPECT_LT(oracle::fro(st.residual), 1e-12);
}

TEST(ApproxInverse, ResidualDecreasesOnceContracting) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 2 + trial % 15;
    const auto c = random_gram(rng, 2 * k, k);
    for (int p : {2, 3, 7}) {
      auto st = approx_inverse(c, p, 0);
      for (int step = 0; step < 12; ++step) {
        const double before = oracle::fro(st.residual);
        const double spec = std::sqrt(oracle::max_eigenvalue(
            oracle::product(oracle::herm(st.residual), st.residual)));
        st = iterate(std::move(st));
        if (spec < 1.0 && before > 1e-10) {
          EXPECT_LT(oracle::fro(st.residual), before);
        }
      }
    }
  }
}

TEST(ApproxInverse, NewtonTraceNonNegative) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 1 + trial % 16;
    const auto c = random_gram(rng, k + trial % 4, k);
    auto st = approx_inverse(c, 2, 0);
    for (int step = 1; step <= 8; ++step) {
      st = iterate(std::move(st));
      EXPECT_GE(trace(st.residual).real(), -1e-9);
    }
  }
}

TEST(ApproxInverse, DivergenceDetected) {
  // A starting guess far outside the convergence region makes ||S||_F grow every step.
  const auto c = ComplexMatrix{{1.0, 0.0}, {0.0, 2.0}};
  auto st = make_iter_state(c, ComplexMatrix{{3.0, 0.0}, {0.0, 3.0}}, 2);
  EXPECT_THROW(
      {
        for (int i = 0; i < 10; ++i) st = iterate(std::move(st));
      },
      DivergenceError);
}

TEST(Iterate, RejectsUnsupportedOrder) {
  EXPECT_FALSE(is_supported_order(4));
  EXPECT_THROW(make_iter_state(oracle::eye(2), oracle::eye(2), 4), Error);
}
