#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "test_support.hpp"
#include "turlab/errors.hpp"
#include "turlab/special_functions.hpp"

using namespace turlab;
using turlab::testing::oracle_f;
using turlab::testing::oracle_g;
using turlab::testing::rel_err;

TEST(InverseXTanhX, ZeroMapsToZero) { EXPECT_EQ(inverse_x_tanh_x(0.0), 0.0); }

TEST(InverseXTanhX, FrozenValueAtOne)
{
    // bisection oracle, 17 digits
    EXPECT_LT(rel_err(inverse_x_tanh_x(1.0), 1.1996786402577342), 1e-15);
}

TEST(InverseXTanhX, ResidualOnLogGrid)
{
    for (int k = 0; k <= 2000; ++k) {
        const double s = std::pow(10.0, -12.0 + 16.0 * k / 2000.0);
        const double y = inverse_x_tanh_x(s);
        EXPECT_LE(std::abs(y * std::tanh(y) - s), 1e-12 * std::max(1.0, s)) << "s=" << s;
    }
}

TEST(InverseXTanhX, MatchesBisectionOracle)
{
    for (double s : {1e-10, 1e-6, 1e-3, 0.1, 0.5, 0.999, 1.0, 1.001, 3.0, 17.0, 400.0, 1e6}) {
        EXPECT_LT(rel_err(inverse_x_tanh_x(s), static_cast<double>(oracle_g(s))), 1e-13)
            << "s=" << s;
    }
}

TEST(InverseXTanhX, SmallArgumentIsSqrt)
{
    // y tanh y = y^2 - y^4/3 + ...
    const double s = 1e-14;
    EXPECT_LT(rel_err(inverse_x_tanh_x(s), std::sqrt(s)), 1e-13);
}

TEST(InverseXTanhX, LargeArgumentApproachesIdentity)
{
    EXPECT_LT(rel_err(inverse_x_tanh_x(50.0), 50.0), 1e-15);
}

TEST(InverseXTanhX, StrictlyIncreasing)
{
    double prev = -1.0;
    for (int k = 0; k < 500; ++k) {
        const double y = inverse_x_tanh_x(0.01 * k);
        EXPECT_GT(y, prev);
        prev = y;
    }
}

TEST(InverseXTanhX, RejectsBadInput)
{
    EXPECT_THROW(inverse_x_tanh_x(-1e-300), DomainError);
    EXPECT_THROW(inverse_x_tanh_x(std::nan("")), DomainError);
    EXPECT_THROW(inverse_x_tanh_x(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(TurBound, FrozenValues)
{
    EXPECT_LT(rel_err(tur_bound(2.0), 0.43922883989064476), 1e-14);
    // f(2 tanh 1) = csch^2(1)
    EXPECT_LT(rel_err(tur_bound(2.0 * std::tanh(1.0)), 0.7240616609663106), 1e-14);
    EXPECT_LT(rel_err(exponential_bound(2.0), 0.31303528549933135), 1e-15);
    EXPECT_EQ(classical_bound(2.0), 1.0);
}

TEST(TurBound, MatchesOracleAcrossScales)
{
    for (double x : {1e-9, 1e-4, 0.01, 0.3, 1.0, 2.0, 7.5, 20.0, 60.0, 300.0}) {
        EXPECT_LT(rel_err(tur_bound(x), oracle_f(x)), 1e-12) << "x=" << x;
    }
}

TEST(TurBound, InfiniteAtZero)
{
    EXPECT_TRUE(std::isinf(tur_bound(0.0)));
}

TEST(TurBound, SmallXExpansion)
{
    // f(x) = 2/x - 2/3 + O(x)
    for (double x : {1e-3, 1e-4, 1e-5}) {
        EXPECT_NEAR(tur_bound(x) - 2.0 / x, -2.0 / 3.0, 2.0 * x) << "x=" << x;
    }
}

TEST(TurBound, LargeXDecaysLikeFourExpMinusX)
{
    EXPECT_NEAR(tur_bound(40.0) * std::exp(40.0) / 4.0, 1.0, 1e-6);
}

TEST(TurBound, OrderingAgainstComparisonBounds)
{
    for (int k = 1; k <= 2000; ++k) {
        const double x = 50.0 * k / 2000.0;
        const double f = tur_bound(x);
        EXPECT_LT(exponential_bound(x), f) << "x=" << x;
        EXPECT_LT(f, classical_bound(x)) << "x=" << x;
    }
}

TEST(TurBound, MonotoneDecreasing)
{
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 1000; ++k) {
        const double f = tur_bound(0.03 * k);
        EXPECT_LT(f, prev);
        prev = f;
    }
}

TEST(TurBound, RejectsBadInput)
{
    EXPECT_THROW(tur_bound(-0.5), DomainError);
    EXPECT_THROW(tur_bound(std::nan("")), DomainError);
    EXPECT_THROW(classical_bound(0.0), DomainError);
    EXPECT_THROW(exponential_bound(0.0), DomainError);
    EXPECT_THROW(exponential_bound(-1.0), DomainError);
}
