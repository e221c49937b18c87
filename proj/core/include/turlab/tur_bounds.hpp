#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "turlab/ft_distribution.hpp"

namespace turlab {

inline constexpr double kDefaultBoundTolerance = 1e-10;

/// Whether the f-based bounds have content. At <Sigma> = 0 every charge has
/// zero mean, the f q q^T term drops out and each check reduces to a plain
/// statement about the covariance matrix.
enum class Dissipation { positive, zero };

/// Classifies the report. Throws InconsistencyError when <Sigma> is negative
/// beyond tolerance, or zero while some charge has a nonzero mean.
Dissipation classify_dissipation(const MomentReport& m, double tol = kDefaultBoundTolerance);

/// f(<Sigma>) q_i q_j, taken as zero for zero dissipation.
double bound_term(const MomentReport& m, std::size_t i, std::size_t j,
                  double tol = kDefaultBoundTolerance);

/// var(Q_i) - f(<Sigma>) <Q_i>^2. Non-negative for every FT distribution.
double scalar_tur_margin(const MomentReport& m, std::size_t i,
                         double tol = kDefaultBoundTolerance);

/// var(Q_i) - (2/<Sigma>) <Q_i>^2. May be negative: the steady-state bound
/// does not follow from the exchange fluctuation theorem.
double classical_margin(const MomentReport& m, std::size_t i,
                        double tol = kDefaultBoundTolerance);

/// var(Q_i) - 2/(e^<Sigma> - 1) <Q_i>^2.
double exponential_margin(const MomentReport& m, std::size_t i,
                          double tol = kDefaultBoundTolerance);

/// Smallest eigenvalue of C - f(<Sigma>) q q^T. Throws StructuralError if C
/// is not symmetric.
double matrix_tur_min_eigenvalue(const MomentReport& m, double tol = kDefaultBoundTolerance);

/// Pass threshold for matrix_tur_min_eigenvalue: -tol * (1 + trace C).
double matrix_tur_threshold(const MomentReport& m, double tol = kDefaultBoundTolerance);

struct CovarianceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double actual = 0.0;
    bool passed = false;
};

/// f q_i q_j - M_ij <= C_ij <= f q_i q_j + M_ij with
/// M_ij^2 = (var_i - f q_i^2)(var_j - f q_j^2).
/// Throws InconsistencyError if either scalar margin is negative beyond
/// tolerance (the radicand would be meaningless).
CovarianceInterval covariance_interval(const MomentReport& m, std::size_t i, std::size_t j,
                                       double tol = kDefaultBoundTolerance);

enum class SignConditionStatus { holds, fails, indeterminate };

struct SignCondition {
    SignConditionStatus status = SignConditionStatus::indeterminate;
    /// q_i^2/var_i + q_j^2/var_j, compared against 1/f(<Sigma>).
    double snr_sum = 0.0;
    double threshold = 0.0;
    /// Only set when status == holds: whether sign cov(Q_i,Q_j) matches
    /// sign q_i q_j as guaranteed.
    std::optional<bool> signs_agree;
};

/// Tests whether the covariance interval lies on one side of zero.
/// Indeterminate for zero variances or zero dissipation.
SignCondition sign_condition(const MomentReport& m, std::size_t i, std::size_t j,
                             double tol = kDefaultBoundTolerance);

struct ChargeMargin {
    std::size_t index = 0;
    double margin = 0.0;
    bool passed = false;
};

struct PairInterval {
    std::size_t i = 0;
    std::size_t j = 0;
    CovarianceInterval interval;
};

struct PairSign {
    std::size_t i = 0;
    std::size_t j = 0;
    SignCondition condition;
};

/// Every bound evaluated on one moment report.
struct BoundVerdict {
    Dissipation dissipation = Dissipation::positive;
    double tolerance = kDefaultBoundTolerance;
    double f_value = 0.0; ///< f(<Sigma>); +inf at zero dissipation

    std::vector<ChargeMargin> scalar_tur;
    std::vector<ChargeMargin> exponential;
    /// Comparison only; `passed` here never affects theorem_bounds_hold().
    std::vector<ChargeMargin> classical;

    double matrix_min_eigenvalue = 0.0;
    double matrix_threshold = 0.0;
    bool matrix_passed = false;

    std::vector<PairInterval> covariance_intervals; ///< pairs i < j
    std::vector<PairSign> sign_conditions;          ///< pairs i < j

    /// Scalar, matrix, exponential and interval checks all pass, and every
    /// sign guarantee that applies is honoured.
    [[nodiscard]] bool theorem_bounds_hold() const;
};

/// Evaluates all bounds. A per-charge margin passes when it is at least
/// -tol * (1 + var(Q_i)).
BoundVerdict evaluate_bounds(const MomentReport& m, double tol = kDefaultBoundTolerance);

} // namespace turlab
