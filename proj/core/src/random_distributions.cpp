#include "turlab/random_distributions.hpp"

#include <algorithm>
#include <cmath>

#include "turlab/errors.hpp"

namespace turlab {

FtDistribution random_ft_distribution(std::mt19937_64& rng, const RandomFtOptions& options)
{
    if (options.max_charges == 0 || options.max_points < 2) {
        throw DomainError("random_ft_distribution: need at least one charge and two points");
    }
    std::uniform_int_distribution<std::size_t> charges(1, options.max_charges);
    std::uniform_real_distribution<double> affinity(-options.affinity_scale,
                                                    options.affinity_scale);
    std::uniform_real_distribution<double> charge(-options.charge_scale, options.charge_scale);
    std::uniform_real_distribution<double> log_weight(-2.0, 2.0);
    std::bernoulli_distribution with_origin(options.origin_probability);

    const std::size_t n = charges(rng);
    std::vector<double> a(n);
    std::generate(a.begin(), a.end(), [&] { return affinity(rng); });

    const bool origin = with_origin(rng);
    const std::size_t max_pairs = (options.max_points - (origin ? 1 : 0)) / 2;
    std::uniform_int_distribution<std::size_t> pair_count(1, std::max<std::size_t>(1, max_pairs));
    const std::size_t pairs = pair_count(rng);

    std::vector<SupportPoint> pts;
    pts.reserve(2 * pairs + 1);
    double total = 0.0;
    for (std::size_t k = 0; k < pairs; ++k) {
        std::vector<double> q(n);
        std::generate(q.begin(), q.end(), [&] { return charge(rng); });
        double sigma = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sigma += a[i] * q[i];
        }
        const double s = std::exp(log_weight(rng));
        std::vector<double> mirror(n);
        std::transform(q.begin(), q.end(), mirror.begin(), [](double v) { return -v; });
        pts.push_back({std::move(q), s * std::exp(0.5 * sigma)});
        pts.push_back({std::move(mirror), s * std::exp(-0.5 * sigma)});
        total += pts[pts.size() - 2].p + pts.back().p;
    }
    if (origin) {
        const double s = std::exp(log_weight(rng));
        pts.push_back({std::vector<double>(n, 0.0), s});
        total += s;
    }
    for (auto& pt : pts) {
        pt.p /= total;
    }
    return FtDistribution(std::move(a), std::move(pts));
}

} // namespace turlab
