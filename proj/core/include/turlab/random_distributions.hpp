#pragma once

#include <cstddef>
#include <random>

#include "turlab/ft_distribution.hpp"

namespace turlab {

struct RandomFtOptions {
    std::size_t max_charges = 4;
    std::size_t max_points = 12;
    double charge_scale = 3.0;   ///< charge components drawn from [-scale, scale]
    double affinity_scale = 2.0; ///< affinities drawn from [-scale, scale]
    double origin_probability = 0.25; ///< chance of adding a point at q = 0
};

/// Random FT distribution built as P(q) = S(q) e^{A.q/2} with S symmetric:
/// mirror pairs of random charge vectors, a random positive S per pair, then
/// normalization. The FT holds by construction.
FtDistribution random_ft_distribution(std::mt19937_64& rng, const RandomFtOptions& options = {});

} // namespace turlab
