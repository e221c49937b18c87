#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "turlab/ft_distribution.hpp"

namespace turlab {

/// var(Z) floor <Z>^2 f(<Sigma>) attained by the minimal distribution.
double variance_floor(double mean_sigma, double mean_z);

// ---------------------------------------------------------------------------
// Three-point family: support {(-a,-b), (0,0), (a,b)}.

struct ThreePointFamily {
    double mean_sigma = 0.0;
    double mean_z = 0.0;
    double a = 0.0;
    double p = 0.0; ///< pair weight; P(a,b) = p e^{a/2}, P(-a,-b) = p e^{-a/2}
    double q = 0.0; ///< mass at the origin
    double b = 0.0;

    [[nodiscard]] FtDistribution to_ft_distribution() const;
    [[nodiscard]] double variance_z() const;
};

/// Solves the normalization and first-moment constraints for a given a.
/// Throws DomainError unless a tanh(a/2) >= mean_sigma > 0.
ThreePointFamily make_three_point(double mean_sigma, double mean_z, double a);

/// (<Z>^2/<Sigma>) a / tanh(a/2) - <Z>^2.
double three_point_variance(double mean_sigma, double mean_z, double a);

// ---------------------------------------------------------------------------
// Four-point family: support {+-(x_a, y_a), +-(x_b, y_b)}.

struct FourPointFamily {
    double x_a = 0.0, x_b = 0.0;
    double y_a = 0.0, y_b = 0.0;
    double p_a = 0.0, p_b = 0.0; ///< P(+-x, +-y) = p e^{+-x/2}

    [[nodiscard]] FtDistribution to_ft_distribution() const;
};

/// Member of the family fixed by (x_a, x_b) and the free coordinate z_a of
/// the rescaled variable z = x_bar y / y_bar. Requires
/// 0 <= x_a < x_bar <= x_b; throws DomainError otherwise and
/// InfeasibleError if the solved weights come out negative.
FourPointFamily make_four_point(double mean_sigma, double mean_z, double x_a, double x_b,
                                double z_a);

struct FourPointMinimum {
    double variance = 0.0; ///< minimized var(Z), original units
    double z_a = 0.0;      ///< minimizer in rescaled units
    double q_a = 0.0;
    double q_b = 0.0;
};

/// Minimizes var(Z) over z_a in closed form (vertex of the quadratic
/// A z_a^2 + 2 B z_a + C). The degenerate case x_a == x_b == x_bar returns
/// the Jensen minimum, which coincides with the floor.
FourPointMinimum four_point_min_variance(double mean_sigma, double mean_z, double x_a,
                                         double x_b);

// ---------------------------------------------------------------------------
// Multi-start search over symmetric supports.

struct MinSearchOptions {
    std::size_t support_pairs = 3; ///< 1..3 mirror pairs
    std::size_t starts = 64;       ///< at least 64 is recommended
    std::uint64_t seed = 20190717;
    std::size_t max_evaluations = 40000; ///< per start, across restarts
};

struct MinSearchResult {
    FtDistribution best;          ///< charges (Sigma, Z), affinities (1, 0)
    double best_variance = 0.0;   ///< var(Z) from moments(best)
    double floor = 0.0;           ///< <Z>^2 f(<Sigma>)
    double relative_gap = 0.0;    ///< (best - floor) / floor, 0 when floor == 0
    std::vector<double> best_parameters = {};
    std::size_t feasible_starts = 0;
};

/// Minimizes var(Z) over FT laws P = S e^{Sigma/2} supported on
/// `support_pairs` mirror pairs with prescribed <Sigma>, <Z>. Normalization
/// and <Sigma> are enforced by solving for two pair weights, <Z> by a shift
/// of the Z coordinates along tanh(x/2); the remaining coordinates are
/// optimized by Nelder-Mead from random starts. The best start wins, ties
/// broken by lexicographic parameter order.
///
/// <Z> == 0 short-circuits to the Sigma-minimal pair with Z = 0.
/// Throws InfeasibleError for mean_sigma <= 0 and DomainError for bad options.
MinSearchResult numeric_min_search(double mean_sigma, double mean_z,
                                   const MinSearchOptions& options = {});

// ---------------------------------------------------------------------------
// Derivative-free local minimizer used by the search.

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
};

/// Nelder-Mead with standard coefficients and restarts from the incumbent
/// until a restart fails to improve. Objectives may return +infinity to
/// reject infeasible points.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, std::span<const double> step,
                             std::size_t max_evaluations, double f_tolerance = 1e-15);

// ---------------------------------------------------------------------------
// Shape facts used in the reduction arguments.

/// sqrt(x) tanh(sqrt(x)/2); concave on x > 0.
double sqrt_tanh_half(double x);

/// sqrt(w) artanh(sqrt(w)); convex on 0 < w < 1.
double sqrt_artanh(double w);

struct CurvatureScan {
    double worst = 0.0; ///< largest second difference with the wrong sign
    double noise = 0.0; ///< rounding allowance
    bool passed = false;
};

/// Second differences of fn on the uniform grid of `points` nodes spanning
/// [lo, hi]. `concave` selects which sign counts as a violation.
CurvatureScan scan_curvature(const std::function<double(double)>& fn, double lo, double hi,
                             std::size_t points, bool concave);

} // namespace turlab
