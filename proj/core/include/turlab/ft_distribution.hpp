#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace turlab {

/// One outcome of a joint charge distribution.
struct SupportPoint {
    std::vector<double> q; ///< charge values, one per charge
    double p = 0.0;        ///< probability
};

/// Discrete joint distribution of n exchanged charges, together with the
/// affinity vector that makes A.q the entropy production of an outcome.
///
/// Construction checks dimensions and that every probability is finite and
/// non-negative. It does not require normalization or mirror symmetry, so
/// that malformed inputs can be represented and diagnosed; use
/// check_structure() or validate_ft() for that. Immutable once built.
class FtDistribution {
public:
    FtDistribution(std::vector<double> affinities, std::vector<SupportPoint> points);

    [[nodiscard]] std::size_t charge_count() const noexcept { return affinities_.size(); }
    [[nodiscard]] std::span<const double> affinities() const noexcept { return affinities_; }
    [[nodiscard]] std::span<const SupportPoint> points() const noexcept { return points_; }

    /// Sigma = sum_i A_i q_i for an arbitrary charge vector.
    [[nodiscard]] double entropy_production(std::span<const double> q) const;

    /// Total probability mass.
    [[nodiscard]] double total_probability() const noexcept;

private:
    std::vector<double> affinities_;
    std::vector<SupportPoint> points_;
};

/// Tolerance on |sum p - 1| used by check_structure().
inline constexpr double kNormalizationTolerance = 1e-12;

/// Rounds to 12 significant digits; mirror points are matched on this key.
/// Symmetric under negation and maps -0.0 to +0.0.
double canonical_coordinate(double v);

/// Throws StructuralError unless the distribution is normalized within
/// kNormalizationTolerance and every point with p > 0 has its mirror -q
/// somewhere in the support.
void check_structure(const FtDistribution& d);

struct FtValidation {
    bool passed = false;
    /// Largest |ln P(q) - ln P(-q) - A.q| over mirror pairs with both
    /// probabilities positive; +infinity when a hard failure occurred.
    double max_log_deviation = 0.0;
    /// Points with p(q) > 0 whose mirror has zero probability.
    std::size_t undefined_ratios = 0;
};

/// Checks P(q)/P(-q) = exp(A.q) on every mirror pair. Throws StructuralError
/// first if check_structure() fails.
FtValidation validate_ft(const FtDistribution& d, double log_tolerance);

/// First and second moments of the charges.
struct MomentReport {
    Eigen::VectorXd mean;       ///< <Q_i>
    Eigen::MatrixXd covariance; ///< cov(Q_i, Q_j)
    double mean_sigma = 0.0;    ///< <Sigma> = A . <Q>
};

/// Exact weighted sums over the support (two-pass covariance).
MomentReport moments(const FtDistribution& d);

/// An outcome of the projected pair (Sigma, Z).
struct ProjectedPoint {
    double sigma = 0.0;
    double z = 0.0;
    double p = 0.0;
};

/// Joint law of Sigma = A.q and Z = w.q for a weight vector w.
struct ProjectedDistribution {
    std::vector<double> weights;
    std::vector<ProjectedPoint> points;

    /// View as a two-charge distribution over (Sigma, Z) with affinities (1, 0).
    [[nodiscard]] FtDistribution as_ft_distribution() const;
};

/// Maps each outcome to (A.q, w.q). Outcomes landing on the same canonical
/// (Sigma, Z) are merged by summing probability. Throws DomainError on a
/// dimension mismatch.
ProjectedDistribution project(const FtDistribution& d, std::span<const double> weights);

/// An outcome of a one-dimensional distribution.
struct ScalarOutcome {
    double value = 0.0;
    double p = 0.0;
};

/// The Sigma-marginal, sorted by value, with coincident values merged.
std::vector<ScalarOutcome> entropy_production_distribution(const FtDistribution& d);

/// <exp(-Sigma)> for a one-dimensional Sigma law; equals one for FT laws.
double integral_ft_average(std::span<const ScalarOutcome> sigma_law);

} // namespace turlab
