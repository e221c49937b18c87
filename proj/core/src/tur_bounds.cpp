#include "turlab/tur_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "turlab/errors.hpp"
#include "turlab/special_functions.hpp"

namespace turlab {

namespace {

void check_index(const MomentReport& m, std::size_t i)
{
    if (i >= static_cast<std::size_t>(m.mean.size())) {
        throw DomainError("charge index " + std::to_string(i) + " out of range");
    }
}

double variance(const MomentReport& m, std::size_t i)
{
    const auto k = static_cast<Eigen::Index>(i);
    return m.covariance(k, k);
}

double mean(const MomentReport& m, std::size_t i) { return m.mean(static_cast<Eigen::Index>(i)); }

double margin_allowance(const MomentReport& m, std::size_t i, double tol)
{
    return tol * (1.0 + std::abs(variance(m, i)));
}

} // namespace

Dissipation classify_dissipation(const MomentReport& m, double tol)
{
    if (std::isnan(m.mean_sigma)) {
        throw InconsistencyError("mean entropy production is NaN");
    }
    if (m.mean_sigma > 0.0) {
        return Dissipation::positive;
    }
    if (m.mean_sigma < -tol) {
        throw InconsistencyError("mean entropy production " + std::to_string(m.mean_sigma) +
                                 " is negative");
    }
    for (Eigen::Index i = 0; i < m.mean.size(); ++i) {
        const double scale = 1.0 + std::sqrt(std::max(0.0, m.covariance(i, i)));
        if (std::abs(m.mean(i)) > tol * scale) {
            throw InconsistencyError("zero entropy production but charge " + std::to_string(i) +
                                     " has nonzero mean " + std::to_string(m.mean(i)));
        }
    }
    return Dissipation::zero;
}

double bound_term(const MomentReport& m, std::size_t i, std::size_t j, double tol)
{
    check_index(m, i);
    check_index(m, j);
    if (classify_dissipation(m, tol) == Dissipation::zero) {
        return 0.0;
    }
    return tur_bound(m.mean_sigma) * mean(m, i) * mean(m, j);
}

double scalar_tur_margin(const MomentReport& m, std::size_t i, double tol)
{
    return variance(m, i) - bound_term(m, i, i, tol);
}

double classical_margin(const MomentReport& m, std::size_t i, double tol)
{
    check_index(m, i);
    if (classify_dissipation(m, tol) == Dissipation::zero) {
        return variance(m, i);
    }
    return variance(m, i) - classical_bound(m.mean_sigma) * mean(m, i) * mean(m, i);
}

double exponential_margin(const MomentReport& m, std::size_t i, double tol)
{
    check_index(m, i);
    if (classify_dissipation(m, tol) == Dissipation::zero) {
        return variance(m, i);
    }
    return variance(m, i) - exponential_bound(m.mean_sigma) * mean(m, i) * mean(m, i);
}

double matrix_tur_min_eigenvalue(const MomentReport& m, double tol)
{
    const Eigen::MatrixXd& c = m.covariance;
    if (c.rows() != c.cols() || c.rows() != m.mean.size() || c.rows() == 0) {
        throw StructuralError("covariance matrix has the wrong shape");
    }
    const double asymmetry = (c - c.transpose()).cwiseAbs().maxCoeff();
    if (asymmetry > 1e-12 * (1.0 + c.cwiseAbs().maxCoeff())) {
        throw StructuralError("covariance matrix is not symmetric");
    }
    Eigen::MatrixXd shifted = 0.5 * (c + c.transpose());
    if (classify_dissipation(m, tol) == Dissipation::positive) {
        shifted.noalias() -= tur_bound(m.mean_sigma) * m.mean * m.mean.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(shifted, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw StructuralError("eigenvalue decomposition failed");
    }
    return solver.eigenvalues().minCoeff();
}

double matrix_tur_threshold(const MomentReport& m, double tol)
{
    return -tol * (1.0 + m.covariance.trace());
}

CovarianceInterval covariance_interval(const MomentReport& m, std::size_t i, std::size_t j,
                                       double tol)
{
    double mi = scalar_tur_margin(m, i, tol);
    double mj = scalar_tur_margin(m, j, tol);
    if (mi < -margin_allowance(m, i, tol) || mj < -margin_allowance(m, j, tol)) {
        throw InconsistencyError("covariance interval undefined: scalar bound violated for charge " +
                                 std::to_string(mi < mj ? i : j));
    }
    mi = std::max(mi, 0.0);
    mj = std::max(mj, 0.0);

    const double center = bound_term(m, i, j, tol);
    const double radius = std::sqrt(mi * mj);
    CovarianceInterval out;
    out.lower = center - radius;
    out.upper = center + radius;
    out.actual = m.covariance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    const double slack = tol * (1.0 + std::sqrt(std::abs(variance(m, i) * variance(m, j))));
    out.passed = out.lower - slack <= out.actual && out.actual <= out.upper + slack;
    return out;
}

SignCondition sign_condition(const MomentReport& m, std::size_t i, std::size_t j, double tol)
{
    check_index(m, i);
    check_index(m, j);
    SignCondition out;
    const double vi = variance(m, i);
    const double vj = variance(m, j);
    if (!(vi > 0.0) || !(vj > 0.0) || classify_dissipation(m, tol) == Dissipation::zero) {
        return out;
    }
    const double qi = mean(m, i);
    const double qj = mean(m, j);
    out.snr_sum = qi * qi / vi + qj * qj / vj;
    out.threshold = 1.0 / tur_bound(m.mean_sigma);
    if (out.snr_sum < out.threshold) {
        out.status = SignConditionStatus::fails;
        return out;
    }
    out.status = SignConditionStatus::holds;
    const double cij =
        m.covariance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    out.signs_agree = cij * qi * qj > 0.0 || std::abs(cij) <= tol * std::sqrt(vi * vj);
    return out;
}

bool BoundVerdict::theorem_bounds_hold() const
{
    auto all_passed = [](const std::vector<ChargeMargin>& v) {
        return std::all_of(v.begin(), v.end(), [](const ChargeMargin& c) { return c.passed; });
    };
    if (!all_passed(scalar_tur) || !all_passed(exponential) || !matrix_passed) {
        return false;
    }
    for (const auto& pi : covariance_intervals) {
        if (!pi.interval.passed) {
            return false;
        }
    }
    for (const auto& ps : sign_conditions) {
        if (ps.condition.signs_agree.has_value() && !*ps.condition.signs_agree) {
            return false;
        }
    }
    return true;
}

BoundVerdict evaluate_bounds(const MomentReport& m, double tol)
{
    if (!(tol > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
    BoundVerdict v;
    v.tolerance = tol;
    v.dissipation = classify_dissipation(m, tol);
    v.f_value = v.dissipation == Dissipation::zero ? std::numeric_limits<double>::infinity()
                                                   : tur_bound(m.mean_sigma);

    const auto n = static_cast<std::size_t>(m.mean.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double allow = margin_allowance(m, i, tol);
        const double s = scalar_tur_margin(m, i, tol);
        const double e = exponential_margin(m, i, tol);
        const double c = classical_margin(m, i, tol);
        v.scalar_tur.push_back({i, s, s >= -allow});
        v.exponential.push_back({i, e, e >= -allow});
        v.classical.push_back({i, c, c >= -allow});
    }

    v.matrix_min_eigenvalue = matrix_tur_min_eigenvalue(m, tol);
    v.matrix_threshold = matrix_tur_threshold(m, tol);
    v.matrix_passed = v.matrix_min_eigenvalue >= v.matrix_threshold;

    const bool scalars_ok = std::all_of(v.scalar_tur.begin(), v.scalar_tur.end(),
                                        [](const ChargeMargin& c) { return c.passed; });
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (scalars_ok) {
                v.covariance_intervals.push_back({i, j, covariance_interval(m, i, j, tol)});
            } else {
                // Radicand undefined; report the pair as failed.
                CovarianceInterval failed;
                failed.actual = m.covariance(static_cast<Eigen::Index>(i),
                                             static_cast<Eigen::Index>(j));
                failed.lower = std::numeric_limits<double>::quiet_NaN();
                failed.upper = std::numeric_limits<double>::quiet_NaN();
                v.covariance_intervals.push_back({i, j, failed});
            }
            v.sign_conditions.push_back({i, j, sign_condition(m, i, j, tol)});
        }
    }
    return v;
}

} // namespace turlab
