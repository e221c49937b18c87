#pragma once

#include "turlab/ft_distribution.hpp"

namespace turlab {

/// Two-point law over (Sigma, Z) that attains var(Z) = <Z>^2 f(<Sigma>):
/// mass p_plus at (a, b) and p_minus at (-a, -b), with p_plus/p_minus = e^a.
struct MinimalDistribution {
    double a = 0.0;
    double b = 0.0;
    double p_plus = 0.5;
    double p_minus = 0.5;

    /// Charges (Sigma, Z) with affinities (1, 0). Collapses to the single
    /// point (0, 0) when a == 0.
    [[nodiscard]] FtDistribution to_ft_distribution() const;

    [[nodiscard]] double mean_sigma() const;
    [[nodiscard]] double mean_z() const;
    [[nodiscard]] double variance_z() const;
};

/// Solves <Sigma> = a tanh(a/2), <Z> = b tanh(a/2).
///
/// mean_sigma == 0 is accepted only together with mean_z == 0 and yields the
/// point mass at the origin; mean_sigma == 0 with mean_z != 0 throws
/// InconsistencyError. Negative or non-finite input throws DomainError.
MinimalDistribution build_minimal(double mean_sigma, double mean_z);

} // namespace turlab
