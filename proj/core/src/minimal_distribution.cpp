#include "turlab/minimal_distribution.hpp"

#include <cmath>
#include <string>

#include "turlab/errors.hpp"
#include "turlab/special_functions.hpp"

namespace turlab {

FtDistribution MinimalDistribution::to_ft_distribution() const
{
    if (a == 0.0) {
        return FtDistribution({1.0, 0.0}, {{{0.0, b}, 1.0}});
    }
    return FtDistribution({1.0, 0.0}, {{{a, b}, p_plus}, {{-a, -b}, p_minus}});
}

double MinimalDistribution::mean_sigma() const { return a * (p_plus - p_minus); }

double MinimalDistribution::mean_z() const { return b * (p_plus - p_minus); }

double MinimalDistribution::variance_z() const
{
    // 1 - (p+ - p-)^2 == 4 p+ p- on a normalized pair.
    return 4.0 * b * b * p_plus * p_minus;
}

MinimalDistribution build_minimal(double mean_sigma, double mean_z)
{
    if (!std::isfinite(mean_sigma) || !std::isfinite(mean_z)) {
        throw DomainError("build_minimal: moments must be finite");
    }
    if (mean_sigma < 0.0) {
        throw DomainError("build_minimal: mean entropy production must be >= 0, got " +
                          std::to_string(mean_sigma));
    }
    if (mean_sigma == 0.0) {
        if (mean_z != 0.0) {
            throw InconsistencyError(
                "build_minimal: zero entropy production forces <Z> = 0, got " +
                std::to_string(mean_z));
        }
        return {};
    }

    MinimalDistribution d;
    d.a = 2.0 * inverse_x_tanh_x(0.5 * mean_sigma);
    d.b = d.a * mean_z / mean_sigma;
    d.p_plus = 1.0 / (1.0 + std::exp(-d.a));
    d.p_minus = 1.0 / (1.0 + std::exp(d.a));
    return d;
}

} // namespace turlab
