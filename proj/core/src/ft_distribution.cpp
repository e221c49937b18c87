#include "turlab/ft_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>

#include "turlab/errors.hpp"

namespace turlab {

namespace {

using CanonicalKey = std::vector<double>;

CanonicalKey canonical_key(std::span<const double> q)
{
    CanonicalKey key(q.size());
    std::transform(q.begin(), q.end(), key.begin(), canonical_coordinate);
    return key;
}

CanonicalKey mirrored(const CanonicalKey& key)
{
    CanonicalKey out(key.size());
    // canonical_coordinate is odd, so negating the key is the key of -q.
    std::transform(key.begin(), key.end(), out.begin(), [](double v) { return 0.0 - v; });
    return out;
}

struct Group {
    std::size_t first = 0; ///< index of the first point with this key
    double p = 0.0;
};

std::map<CanonicalKey, Group> group_support(const FtDistribution& d)
{
    std::map<CanonicalKey, Group> groups;
    const auto points = d.points();
    for (std::size_t k = 0; k < points.size(); ++k) {
        auto [it, inserted] = groups.try_emplace(canonical_key(points[k].q), Group{k, 0.0});
        it->second.p += points[k].p;
    }
    return groups;
}

std::string describe(std::span<const double> q)
{
    std::string out = "(";
    char buf[32];
    for (std::size_t i = 0; i < q.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", q[i]);
        out += (i ? ", " : "");
        out += buf;
    }
    return out + ")";
}

} // namespace

FtDistribution::FtDistribution(std::vector<double> affinities, std::vector<SupportPoint> points)
    : affinities_(std::move(affinities)), points_(std::move(points))
{
    if (affinities_.empty()) {
        throw StructuralError("distribution needs at least one charge");
    }
    for (double a : affinities_) {
        if (!std::isfinite(a)) {
            throw StructuralError("affinities must be finite");
        }
    }
    for (std::size_t k = 0; k < points_.size(); ++k) {
        const auto& pt = points_[k];
        if (pt.q.size() != affinities_.size()) {
            throw StructuralError("point " + std::to_string(k) + " has " +
                                  std::to_string(pt.q.size()) + " charges, expected " +
                                  std::to_string(affinities_.size()));
        }
        if (!std::all_of(pt.q.begin(), pt.q.end(), [](double v) { return std::isfinite(v); })) {
            throw StructuralError("point " + std::to_string(k) + " has a non-finite charge");
        }
        if (!std::isfinite(pt.p) || pt.p < 0.0) {
            throw StructuralError("point " + std::to_string(k) +
                                  " has a negative or non-finite probability");
        }
    }
}

double FtDistribution::entropy_production(std::span<const double> q) const
{
    if (q.size() != affinities_.size()) {
        throw DomainError("entropy_production: dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        s += affinities_[i] * q[i];
    }
    return s;
}

double FtDistribution::total_probability() const noexcept
{
    double total = 0.0;
    for (const auto& pt : points_) {
        total += pt.p;
    }
    return total;
}

double canonical_coordinate(double v)
{
    if (v == 0.0 || !std::isfinite(v)) {
        return v == 0.0 ? 0.0 : v;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return std::strtod(buf, nullptr) + 0.0;
}

void check_structure(const FtDistribution& d)
{
    if (d.points().empty()) {
        throw StructuralError("distribution has no support points");
    }
    const double total = d.total_probability();
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "probabilities sum to %.17g, not 1 (tolerance %g)", total,
                      kNormalizationTolerance);
        throw StructuralError(buf);
    }
    const auto groups = group_support(d);
    for (const auto& [key, group] : groups) {
        if (group.p > 0.0 && !groups.contains(mirrored(key))) {
            throw StructuralError("support is not symmetric: point " +
                                  describe(d.points()[group.first].q) +
                                  " has no mirror image");
        }
    }
}

FtValidation validate_ft(const FtDistribution& d, double log_tolerance)
{
    check_structure(d);

    FtValidation out;
    const auto groups = group_support(d);
    for (const auto& [key, group] : groups) {
        if (group.p == 0.0) {
            continue;
        }
        const auto& mirror = groups.at(mirrored(key));
        if (mirror.p == 0.0) {
            ++out.undefined_ratios;
            out.max_log_deviation = std::numeric_limits<double>::infinity();
            continue;
        }
        const double sigma = d.entropy_production(d.points()[group.first].q);
        const double dev = std::abs(std::log(group.p) - std::log(mirror.p) - sigma);
        out.max_log_deviation = std::max(out.max_log_deviation, dev);
    }
    out.passed = out.undefined_ratios == 0 && out.max_log_deviation <= log_tolerance;
    return out;
}

MomentReport moments(const FtDistribution& d)
{
    const auto n = static_cast<Eigen::Index>(d.charge_count());
    const double total = d.total_probability();
    if (!(total > 0.0)) {
        throw StructuralError("moments: distribution carries no probability");
    }

    MomentReport m;
    m.mean = Eigen::VectorXd::Zero(n);
    for (const auto& pt : d.points()) {
        m.mean += pt.p * Eigen::Map<const Eigen::VectorXd>(pt.q.data(), n);
    }
    m.mean /= total;

    m.covariance = Eigen::MatrixXd::Zero(n, n);
    for (const auto& pt : d.points()) {
        const Eigen::VectorXd dev = Eigen::Map<const Eigen::VectorXd>(pt.q.data(), n) - m.mean;
        m.covariance.noalias() += pt.p * dev * dev.transpose();
    }
    m.covariance /= total;

    m.mean_sigma = d.entropy_production(std::span<const double>(m.mean.data(), m.mean.size()));
    return m;
}

FtDistribution ProjectedDistribution::as_ft_distribution() const
{
    std::vector<SupportPoint> pts;
    pts.reserve(points.size());
    for (const auto& pt : points) {
        pts.push_back({{pt.sigma, pt.z}, pt.p});
    }
    return FtDistribution({1.0, 0.0}, std::move(pts));
}

ProjectedDistribution project(const FtDistribution& d, std::span<const double> weights)
{
    if (weights.size() != d.charge_count()) {
        throw DomainError("project: weight vector has " + std::to_string(weights.size()) +
                          " entries, distribution has " + std::to_string(d.charge_count()) +
                          " charges");
    }
    ProjectedDistribution out;
    out.weights.assign(weights.begin(), weights.end());

    std::map<std::pair<double, double>, std::size_t> index;
    for (const auto& pt : d.points()) {
        const double sigma = d.entropy_production(pt.q);
        double z = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            z += weights[i] * pt.q[i];
        }
        const auto key = std::make_pair(canonical_coordinate(sigma), canonical_coordinate(z));
        auto [it, inserted] = index.try_emplace(key, out.points.size());
        if (inserted) {
            out.points.push_back({sigma, z, pt.p});
        } else {
            out.points[it->second].p += pt.p;
        }
    }
    return out;
}

std::vector<ScalarOutcome> entropy_production_distribution(const FtDistribution& d)
{
    std::map<double, ScalarOutcome> merged;
    for (const auto& pt : d.points()) {
        const double sigma = d.entropy_production(pt.q);
        auto [it, inserted] =
            merged.try_emplace(canonical_coordinate(sigma), ScalarOutcome{sigma, 0.0});
        it->second.p += pt.p;
    }
    std::vector<ScalarOutcome> out;
    out.reserve(merged.size());
    for (const auto& [key, outcome] : merged) {
        out.push_back(outcome);
    }
    return out;
}

double integral_ft_average(std::span<const ScalarOutcome> sigma_law)
{
    double sum = 0.0;
    for (const auto& o : sigma_law) {
        sum += o.p * std::exp(-o.value);
    }
    return sum;
}

} // namespace turlab
