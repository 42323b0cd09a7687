#include "oracles.hpp"
#include "tvgl/objective.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace tvgl;

namespace {

// Distances of random Gaussian signals, scaled to O(1).
Vector random_distances(int d, std::mt19937_64& rng)
{
  Matrix X(d, 8);
  for (auto& x : X.reshaped()) x = std::normal_distribution<double>()(rng);
  return pairwise_distances(X) / 8.0;
}

} // namespace

TEST(Objective, HandComputedValue)
{
  const ObjectiveParams params{1.0, 1.0};
  EXPECT_NEAR(eval_f(Vector::Ones(3), Vector::Zero(3), params), 0.920558, 1e-6);
  EXPECT_DOUBLE_EQ(eval_f(Vector::Ones(3), Vector::Zero(3), params), 3.0 - 3.0 * std::log(2.0));
}

TEST(Objective, IsolatedVertexIsInfinite)
{
  Vector w(3);
  w << 1, 0, 0;
  EXPECT_TRUE(std::isinf(eval_f(w, Vector::Zero(3), {})));
  EXPECT_THROW(grad_g(w, Vector::Zero(3), {}, Vector::Zero(3), 0.0), std::domain_error);
}

TEST(Objective, LinearInDistances)
{
  std::mt19937_64 rng(1);
  const Vector w = oracle::uniform(10, 0.5, 2.0, rng), r = random_distances(5, rng);
  const ObjectiveParams params;
  const double base = eval_f(w, Vector::Zero(10), params);
  const double linear = eval_f(w, r, params) - base;
  EXPECT_NEAR(eval_f(w, 3.0 * r, params) - base, 3.0 * linear, 1e-12 * std::abs(linear) + 1e-12);
}

TEST(Objective, GradientExamples)
{
  const ObjectiveParams quad{0.0, 1.0};
  EXPECT_EQ(grad_g(Vector::Ones(3), Vector::Zero(3), quad, Vector::Zero(3), 0.0), Vector::Constant(3, 2.0));

  std::mt19937_64 rng(2);
  const Vector w = oracle::uniform(10, 0.5, 2.0, rng), r = random_distances(5, rng);
  const ObjectiveParams params{2.0, 0.5};
  EXPECT_LT((grad_g(w, r, params, w, 7.0) - grad_g(w, r, params, Vector::Zero(10), 0.0)).norm(), 1e-12);
}

TEST(Objective, GradientMatchesFiniteDifferences)
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.1, 3.0);
  for (int d : {3, 5, 10}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::Index p = num_pairs(d);
      const Vector w = oracle::uniform(p, 0.5, 2.0, rng);
      const Vector theta = oracle::uniform(p, 0.0, 2.0, rng);
      const Vector r = random_distances(d, rng);
      const ObjectiveParams params{U(rng), U(rng)};
      const double m_rho = U(rng);
      const Vector g = grad_g(w, r, params, theta, m_rho);
      const Vector fd =
        oracle::fd_gradient([&](const Vector& x) { return eval_g(x, r, params, theta, m_rho); }, w, 1e-6);
      EXPECT_LT((g - fd).norm() / g.norm(), 1e-5) << "d=" << d << " trial " << trial;
    }
  }
}

TEST(Pgd, QuadraticClosedForm)
{
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index p = num_pairs(6);
    const Vector r = oracle::uniform(p, 0.0, 1.0, rng), theta = oracle::uniform(p, 0.0, 2.0, rng);
    const ObjectiveParams params{0.0, 0.8};
    const double m_rho = 1.5;
    const Vector expected = ((m_rho * theta - 2.0 * r) / (2.0 * params.beta + m_rho)).cwiseMax(0.0);
    PgdConfig cfg;
    cfg.tol = 1e-10;
    const auto res = pgd_solve(cold_start(6), r, params, theta, m_rho, cfg);
    EXPECT_TRUE(res.converged);
    EXPECT_LT((res.w - expected).lpNorm<Eigen::Infinity>(), 1e-6);
  }
}

TEST(Pgd, ZeroDistancesShrinkTowardCenter)
{
  std::mt19937_64 rng(5);
  const Eigen::Index p = num_pairs(4);
  const Vector theta = oracle::uniform(p, 0.0, 2.0, rng);
  const ObjectiveParams params{0.0, 0.5};
  PgdConfig cfg;
  cfg.tol = 1e-10;
  const auto res = pgd_solve(cold_start(4), Vector::Zero(p), params, theta, 2.0, cfg);
  EXPECT_LT((res.w - 2.0 * theta / 3.0).lpNorm<Eigen::Infinity>(), 1e-6);
}

TEST(Pgd, MatchesFixedStepOracle)
{
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 3; ++trial) {
    const int d = 5;
    const Eigen::Index p = num_pairs(d);
    const Vector r = random_distances(d, rng);
    const Vector theta = oracle::uniform(p, 0.0, 1.0, rng);
    const ObjectiveParams params{2.0, 0.5};
    const double m_rho = 1.0;
    PgdConfig cfg;
    cfg.tol = 1e-10;
    const auto res = pgd_solve(cold_start(d), r, params, theta, m_rho, cfg);
    const Vector ref = oracle::fixed_step_pgd(cold_start(d), r, params.alpha, params.beta, theta, m_rho, 1e-3, 1000000);
    const double g_res = eval_g(res.w, r, params, theta, m_rho);
    const double g_ref = eval_g(ref, r, params, theta, m_rho);
    EXPECT_LE(std::abs(g_res - g_ref), 1e-4 * std::abs(g_ref));
  }
}

TEST(Pgd, MonotoneFeasibleAndKkt)
{
  std::mt19937_64 rng(7);
  for (int d : {4, 8, 15}) {
    const Eigen::Index p = num_pairs(d);
    const Vector r = random_distances(d, rng);
    const Vector theta = oracle::uniform(p, 0.0, 1.0, rng);
    const ObjectiveParams params{2.0, 0.3};
    const double m_rho = 0.5;
    PgdConfig cfg;
    cfg.tol = 1e-9;
    cfg.record_trace = true;
    const auto res = pgd_solve(cold_start(d), r, params, theta, m_rho, cfg);
    ASSERT_TRUE(res.converged);
    for (std::size_t k = 1; k < res.trace.size(); ++k) EXPECT_LE(res.trace[k], res.trace[k - 1] + 1e-12);
    EXPECT_GE(res.w.minCoeff(), 0.0);

    const Vector g = grad_g(res.w, r, params, theta, m_rho);
    for (Eigen::Index k = 0; k < p; ++k) {
      if (res.w[k] > 0.0) EXPECT_NEAR(g[k], 0.0, 1e-6) << "k=" << k;
      else EXPECT_GE(g[k], -1e-6) << "k=" << k;
    }
  }
}

TEST(Pgd, FixedStepRule)
{
  std::mt19937_64 rng(8);
  const Vector r = random_distances(5, rng);
  const ObjectiveParams params{2.0, 0.5};
  PgdConfig cfg;
  cfg.rule = StepRule::Fixed;
  cfg.step_size = 1e-2;
  cfg.tol = 1e-10;
  cfg.max_iters = 200000;
  const auto fixed = pgd_solve(cold_start(5), r, params, Vector::Zero(10), 0.0, cfg);
  const auto bt = learn_static(r, params);
  EXPECT_TRUE(fixed.converged);
  EXPECT_GE(fixed.w.minCoeff(), 0.0);
  EXPECT_LT((fixed.w - bt.w).lpNorm<Eigen::Infinity>(), 1e-4);
}

TEST(Pgd, ReportsNonConvergence)
{
  std::mt19937_64 rng(9);
  const Vector r = random_distances(6, rng);
  PgdConfig cfg;
  cfg.max_iters = 1;
  cfg.tol = 1e-14;
  const auto res = pgd_solve(cold_start(6), r, {}, Vector::Zero(15), 0.0, cfg);
  EXPECT_FALSE(res.converged);
  EXPECT_EQ(res.iterations, 1);
  EXPECT_EQ(res.w.size(), 15);
}

TEST(Pgd, ColdStartHasUnitMeanDegree)
{
  for (int d : {2, 5, 20}) EXPECT_NEAR(degree_operator(cold_start(d)).mean(), 1.0, 1e-14);
}

TEST(Pgd, RejectsBadInput)
{
  EXPECT_THROW(pgd_solve(Vector::Ones(3), Vector::Zero(6), {}, Vector::Zero(3), 0.0, {}), std::invalid_argument);
  EXPECT_THROW(pgd_solve(Vector::Zero(3), Vector::Zero(3), {}, Vector::Zero(3), 0.0, {}), std::domain_error);
  EXPECT_THROW(pgd_solve(Vector::Ones(3), Vector::Zero(3), {}, Vector::Zero(3), -1.0, {}), std::invalid_argument);
}
