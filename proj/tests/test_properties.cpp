// Randomized invariants over hand-rolled generators. Seeds are fixed so
// failures reproduce.

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "turlab/minimality_search.hpp"
#include "turlab/random_distributions.hpp"
#include "turlab/special_functions.hpp"
#include "turlab/swap_engine.hpp"
#include "turlab/tur_bounds.hpp"

using namespace turlab;
using turlab::testing::Gen;

TEST(Properties, RandomDistributionsObeyEveryTheorem)
{
    Gen gen(20190717);
    for (int trial = 0; trial < 10000; ++trial) {
        const FtDistribution d = random_ft_distribution(gen.engine());
        ASSERT_TRUE(validate_ft(d, 1e-9).passed) << "trial " << trial;
        const auto v = evaluate_bounds(moments(d));
        ASSERT_TRUE(v.theorem_bounds_hold()) << "trial " << trial;
        ASSERT_GE(v.matrix_min_eigenvalue, v.matrix_threshold);
    }
}

TEST(Properties, ProjectionsStayAboveFloor)
{
    Gen gen(42);
    for (int trial = 0; trial < 2000; ++trial) {
        const FtDistribution d = random_ft_distribution(gen.engine());
        std::vector<double> w(d.charge_count());
        for (auto& x : w) {
            x = gen.uniform(-1.0, 1.0);
        }
        const auto m = moments(project(d, w).as_ft_distribution());
        if (m.mean_sigma <= 1e-12) {
            continue;
        }
        const double floor = variance_floor(m.mean_sigma, m.mean(1));
        EXPECT_GE(m.covariance(1, 1), floor - 1e-10 * (1.0 + m.covariance(1, 1)));
    }
}

TEST(Properties, EngineDrawsRespectIdentities)
{
    Gen gen(7);
    for (int trial = 0; trial < 100000; ++trial) {
        const auto p = gen.engine_params();
        const auto r = build_engine(p);

        const double log_ratio = std::log(r.p_forward) - std::log(r.p_backward);
        const double ft = (p.beta_b - p.beta_a) * p.eps_a + p.beta_b * (p.eps_b - p.eps_a);
        ASSERT_NEAR(log_ratio, ft, 1e-12 * std::max(1.0, std::abs(ft))) << trial;

        ASSERT_GE(r.mean_sigma, 0.0);
        if (r.efficiency) {
            ASSERT_NEAR(*r.efficiency, 1.0 - p.eps_b / p.eps_a, 1e-12);
        }
        switch (r.regime) {
        case Regime::refrigerator:
            ASSERT_TRUE(r.mean_w > 0.0 && r.mean_qh < 0.0) << trial;
            break;
        case Regime::engine:
            ASSERT_TRUE(r.mean_w < 0.0 && r.mean_qh > 0.0) << trial;
            break;
        case Regime::accelerator:
            ASSERT_TRUE(r.mean_w > 0.0 && r.mean_qh > 0.0) << trial;
            break;
        case Regime::boundary:
            break;
        }

        const auto m = r.moment_report();
        const auto s = sign_condition(m, 1, 0);
        if (s.status == SignConditionStatus::holds) {
            ASSERT_TRUE(s.signs_agree.value()) << trial;
        }
    }
}

TEST(Properties, RefrigeratorIntervalSignMatchesSnrCondition)
{
    // W = -(1 - r) Q_H here, so cov(W, Q_H) < 0 always, and the upper
    // endpoint is negative exactly when 2 SNR(Q_H) >= 1/f(<Sigma>).
    Gen gen(99);
    int both = 0;
    int neither = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        const auto r = build_engine(gen.refrigerator_params());
        ASSERT_EQ(r.regime, Regime::refrigerator);
        ASSERT_LT(r.cov_wq, 0.0);
        const auto m = r.moment_report();
        const auto ci = covariance_interval(m, 1, 0);
        const auto s = sign_condition(m, 1, 0);
        ASSERT_LT(ci.lower, 0.0);
        const double gap = s.snr_sum - s.threshold;
        if (std::abs(gap) < 1e-9 * s.threshold) {
            continue;
        }
        ASSERT_EQ(ci.upper < 0.0, gap > 0.0) << trial;
        (gap > 0.0 ? both : neither) += 1;
    }
    EXPECT_GT(both, 0);
}

TEST(Properties, DerivativeCheckOnRandomEngines)
{
    Gen gen(123);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto rep = cgf_derivative_check(gen.engine_params());
        ASSERT_TRUE(rep.passed) << trial << ": " << rep.first_order_error << " "
                                << rep.second_order_error;
    }
}

TEST(Properties, SaturationUnderScaling)
{
    // f depends only on <Sigma>; the floor scales with <Z>^2
    Gen gen(5);
    for (int trial = 0; trial < 1000; ++trial) {
        const double ms = gen.log_uniform(1e-3, 20.0);
        const double mz = gen.uniform(0.1, 3.0);
        const double k = gen.uniform(0.5, 4.0);
        EXPECT_NEAR(variance_floor(ms, k * mz), k * k * variance_floor(ms, mz),
                    1e-13 * k * k * variance_floor(ms, mz));
    }
}
