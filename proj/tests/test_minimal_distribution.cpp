#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "turlab/errors.hpp"
#include "turlab/minimal_distribution.hpp"
#include "turlab/special_functions.hpp"

using namespace turlab;

TEST(BuildMinimal, RecoversTwoOne)
{
    const auto d = build_minimal(2.0 * std::tanh(1.0), std::tanh(1.0));
    EXPECT_NEAR(d.a, 2.0, 1e-14);
    EXPECT_NEAR(d.b, 1.0, 1e-14);
    EXPECT_NEAR(d.variance_z(), 1.0 - std::tanh(1.0) * std::tanh(1.0), 1e-15);
    EXPECT_NEAR(d.p_plus / d.p_minus, std::exp(2.0), 1e-12);
}

TEST(BuildMinimal, ZeroMeanZGivesDegenerateB)
{
    const auto d = build_minimal(1.0, 0.0);
    EXPECT_EQ(d.b, 0.0);
    EXPECT_EQ(d.variance_z(), 0.0);
}

TEST(BuildMinimal, ZeroSigmaRules)
{
    EXPECT_THROW(build_minimal(0.0, 1.0), InconsistencyError);
    const auto d = build_minimal(0.0, 0.0);
    EXPECT_EQ(d.a, 0.0);
    EXPECT_EQ(d.to_ft_distribution().points().size(), 1u);
}

TEST(BuildMinimal, RejectsBadInput)
{
    EXPECT_THROW(build_minimal(-1.0, 1.0), DomainError);
    EXPECT_THROW(build_minimal(std::nan(""), 1.0), DomainError);
    EXPECT_THROW(build_minimal(1.0, INFINITY), DomainError);
}

TEST(BuildMinimal, SaturatesOnRandomTargets)
{
    turlab::testing::Gen gen(3);
    for (int trial = 0; trial < 500; ++trial) {
        const double ms = gen.log_uniform(1e-4, 30.0);
        const double mz = gen.uniform(-5.0, 5.0);
        const auto d = build_minimal(ms, mz);
        const auto fd = d.to_ft_distribution();
        EXPECT_TRUE(validate_ft(fd, 1e-10).passed);
        const auto m = moments(fd);
        EXPECT_NEAR(m.mean_sigma, ms, 1e-12 * std::max(1.0, ms));
        EXPECT_NEAR(m.mean(1), mz, 1e-12 * std::max(1.0, std::abs(mz)));
        EXPECT_NEAR(m.covariance(1, 1), mz * mz * tur_bound(ms), 1e-10 * mz * mz);
    }
}

TEST(BuildMinimal, NegativeMeanZMirrorsB)
{
    const auto p = build_minimal(0.8, 0.3);
    const auto n = build_minimal(0.8, -0.3);
    EXPECT_EQ(p.a, n.a);
    EXPECT_EQ(p.b, -n.b);
}
