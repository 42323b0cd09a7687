#include "oracles.hpp"
#include "tvgl/prox.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tvgl;
using Eigen::VectorXd;

TEST(SoftThreshold, Examples)
{
  VectorXd v(2);
  v << 2, -0.5;
  VectorXd expected(2);
  expected << 1, 0;
  EXPECT_EQ(soft_threshold(v, 1.0), expected);
  EXPECT_EQ(soft_threshold(v, 0.0), v);
  EXPECT_THROW(soft_threshold(v, -1.0), std::invalid_argument);
}

TEST(SoftThreshold, MatchesGridSearch)
{
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const VectorXd v = oracle::uniform(5, -3.0, 3.0, rng);
    const double lambda = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    const VectorXd z = soft_threshold(v, lambda);
    for (Eigen::Index k = 0; k < v.size(); ++k) EXPECT_NEAR(z[k], oracle::grid_soft_threshold(v[k], lambda), 1e-7);
  }
}

TEST(PairProx, EqualInputsAreFixed)
{
  std::mt19937_64 rng(1);
  const VectorXd a = oracle::uniform(6, -1.0, 1.0, rng);
  for (double kappa : {0.0, 0.3, 10.0}) {
    const auto [x, y] = prox_pair_l1(a, a, kappa);
    EXPECT_EQ(x, a);
    EXPECT_EQ(y, a);
    const auto [u, v] = prox_pair_sql2(a, a, kappa);
    EXPECT_EQ(u, a);
    EXPECT_EQ(v, a);
  }
}

TEST(PairProx, LargeKappaGivesConsensus)
{
  std::mt19937_64 rng(2);
  const VectorXd a = oracle::uniform(6, -1.0, 1.0, rng), b = oracle::uniform(6, -1.0, 1.0, rng);
  const double kappa = (b - a).lpNorm<Eigen::Infinity>();
  const auto [x, y] = prox_pair_l1(a, b, kappa);
  EXPECT_LT((x - 0.5 * (a + b)).norm(), 1e-15);
  EXPECT_LT((y - 0.5 * (a + b)).norm(), 1e-15);
  const auto [u, v] = prox_pair_sql2(a, b, 1e12);
  EXPECT_LT((u - 0.5 * (a + b)).norm(), 1e-9);
  EXPECT_LT((v - 0.5 * (a + b)).norm(), 1e-9);
}

TEST(PairProx, ZeroKappaIsIdentity)
{
  std::mt19937_64 rng(3);
  const VectorXd a = oracle::uniform(4, -1.0, 1.0, rng), b = oracle::uniform(4, -1.0, 1.0, rng);
  const auto [x, y] = prox_pair_l1(a, b, 0.0);
  EXPECT_EQ(x, a);
  EXPECT_EQ(y, b);
}

TEST(PairProx, SumPreservation)
{
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const VectorXd a = oracle::uniform(8, -2.0, 2.0, rng), b = oracle::uniform(8, -2.0, 2.0, rng);
    const double kappa = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    const auto [x, y] = prox_pair_l1(a, b, kappa);
    EXPECT_LT((x + y - (a + b)).lpNorm<Eigen::Infinity>(), 1e-14);
  }
}

TEST(PairProx, SwapSymmetry)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const VectorXd a = oracle::uniform(5, -2.0, 2.0, rng), b = oracle::uniform(5, -2.0, 2.0, rng);
    const double kappa = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    const auto [x, y] = prox_pair_l1(a, b, kappa);
    const auto [xs, ys] = prox_pair_l1(b, a, kappa);
    EXPECT_LT((x - ys).norm(), 1e-15);
    EXPECT_LT((y - xs).norm(), 1e-15);
    const auto [u, v] = prox_pair_sql2(a, b, kappa);
    const auto [us, vs] = prox_pair_sql2(b, a, kappa);
    EXPECT_LT((u - vs).norm(), 1e-14);
    EXPECT_LT((v - us).norm(), 1e-14);
  }
}

TEST(PairProx, NonExpansive)
{
  std::mt19937_64 rng(6);
  auto stack = [](const VectorXd& x, const VectorXd& y) {
    VectorXd s(x.size() + y.size());
    s << x, y;
    return s;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const VectorXd a = oracle::uniform(6, -2.0, 2.0, rng), b = oracle::uniform(6, -2.0, 2.0, rng);
    const VectorXd a2 = oracle::uniform(6, -2.0, 2.0, rng), b2 = oracle::uniform(6, -2.0, 2.0, rng);
    const double kappa = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    const double in = (stack(a, b) - stack(a2, b2)).norm();
    for (auto* prox : {&prox_pair_l1, &prox_pair_sql2}) {
      const auto [x, y] = prox(a, b, kappa);
      const auto [x2, y2] = prox(a2, b2, kappa);
      EXPECT_LE((stack(x, y) - stack(x2, y2)).norm(), in + 1e-12);
    }
  }
}

TEST(PairProx, L1MatchesNumericalMinimization)
{
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(1, 10);
  for (int trial = 0; trial < 25; ++trial) {
    const int p = len(rng);
    const VectorXd a = oracle::uniform(p, -2.0, 2.0, rng), b = oracle::uniform(p, -2.0, 2.0, rng);
    const double kappa = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    const auto [x, y] = prox_pair_l1(a, b, kappa);
    const auto [xo, yo] = oracle::pair_prox_numeric(a, b, [&](double t) { return 0.5 * kappa * std::abs(t); });
    EXPECT_LT((x - xo).lpNorm<Eigen::Infinity>(), 1e-6);
    EXPECT_LT((y - yo).lpNorm<Eigen::Infinity>(), 1e-6);
  }
}

TEST(PairProx, SquaredL2MatchesNumericalMinimization)
{
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> len(1, 10);
  for (int trial = 0; trial < 25; ++trial) {
    const int p = len(rng);
    const VectorXd a = oracle::uniform(p, -2.0, 2.0, rng), b = oracle::uniform(p, -2.0, 2.0, rng);
    const double kappa = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    const auto [x, y] = prox_pair_sql2(a, b, kappa);
    const auto [xo, yo] = oracle::pair_prox_numeric(a, b, [&](double t) { return kappa * t * t; });
    EXPECT_LT((x - xo).lpNorm<Eigen::Infinity>(), 1e-6);
    EXPECT_LT((y - yo).lpNorm<Eigen::Infinity>(), 1e-6);
  }
}

TEST(PairProx, EdgeScaling)
{
  std::mt19937_64 rng(9);
  const VectorXd a = oracle::uniform(4, -1.0, 1.0, rng), b = oracle::uniform(4, -1.0, 1.0, rng);
  const double eta_gamma = 0.7, rho = 0.5;
  const auto l1 = prox_edge({PenaltyKind::L1, eta_gamma}, rho, a, b);
  EXPECT_EQ(l1, prox_pair_l1(a, b, 2.0 * eta_gamma / rho));
  const auto sq = prox_edge({PenaltyKind::SquaredL2, eta_gamma}, rho, a, b);
  EXPECT_EQ(sq, prox_pair_sql2(a, b, eta_gamma / rho));
}

TEST(PairProx, LengthMismatch)
{
  EXPECT_THROW(prox_pair_l1(VectorXd::Zero(2), VectorXd::Zero(3), 1.0), std::invalid_argument);
  EXPECT_THROW(prox_pair_sql2(VectorXd::Zero(2), VectorXd::Zero(3), 1.0), std::invalid_argument);
}
