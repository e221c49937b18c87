#include "turlab/minimality_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>

#include "turlab/errors.hpp"
#include "turlab/minimal_distribution.hpp"
#include "turlab/parallel.hpp"
#include "turlab/special_functions.hpp"

namespace turlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double x_tanh_half(double x) { return x * std::tanh(0.5 * x); }

/// Mass of the +x member of a mirror pair with total weight q.
double upper_mass(double q, double x) { return q / (1.0 + std::exp(-x)); }
double lower_mass(double q, double x) { return q / (1.0 + std::exp(x)); }

void require_positive_sigma(double mean_sigma, const char* who)
{
    if (!std::isfinite(mean_sigma) || !(mean_sigma > 0.0)) {
        throw DomainError(std::string(who) + ": mean entropy production must be > 0");
    }
}

/// Reference point (x_bar, y_bar) of the minimal distribution.
struct Reference {
    double x = 0.0;
    double y = 0.0;
};

Reference reference(double mean_sigma, double mean_z)
{
    const double x = 2.0 * inverse_x_tanh_x(0.5 * mean_sigma);
    return {x, mean_z / std::tanh(0.5 * x)};
}

} // namespace

double variance_floor(double mean_sigma, double mean_z)
{
    if (mean_sigma == 0.0 && mean_z == 0.0) {
        return 0.0;
    }
    require_positive_sigma(mean_sigma, "variance_floor");
    return mean_z == 0.0 ? 0.0 : mean_z * mean_z * tur_bound(mean_sigma);
}

// ---------------------------------------------------------------------------

FtDistribution ThreePointFamily::to_ft_distribution() const
{
    const double pair = 1.0 - q;
    std::vector<SupportPoint> pts{
        {{a, b}, upper_mass(pair, a)},
        {{-a, -b}, lower_mass(pair, a)},
    };
    if (q > 0.0) {
        pts.push_back({{0.0, 0.0}, q});
    }
    return FtDistribution({1.0, 0.0}, std::move(pts));
}

double ThreePointFamily::variance_z() const
{
    return mean_z * mean_z / mean_sigma * a / std::tanh(0.5 * a) - mean_z * mean_z;
}

ThreePointFamily make_three_point(double mean_sigma, double mean_z, double a)
{
    require_positive_sigma(mean_sigma, "make_three_point");
    if (!std::isfinite(a) || !(a > 0.0) || !std::isfinite(mean_z)) {
        throw DomainError("make_three_point: support magnitude must be finite and > 0");
    }
    const double reach = x_tanh_half(a);
    if (reach < mean_sigma * (1.0 - 1e-12)) {
        throw DomainError("make_three_point: a tanh(a/2) = " + std::to_string(reach) +
                          " is below <Sigma> = " + std::to_string(mean_sigma));
    }
    ThreePointFamily f;
    f.mean_sigma = mean_sigma;
    f.mean_z = mean_z;
    f.a = a;
    f.p = mean_sigma / (2.0 * a * std::sinh(0.5 * a));
    f.q = std::max(0.0, 1.0 - mean_sigma / reach);
    f.b = a * mean_z / mean_sigma;
    return f;
}

double three_point_variance(double mean_sigma, double mean_z, double a)
{
    return make_three_point(mean_sigma, mean_z, a).variance_z();
}

// ---------------------------------------------------------------------------

FtDistribution FourPointFamily::to_ft_distribution() const
{
    const double qa = 2.0 * p_a * std::cosh(0.5 * x_a);
    const double qb = 2.0 * p_b * std::cosh(0.5 * x_b);
    std::vector<SupportPoint> pts;
    if (qa > 0.0) {
        pts.push_back({{x_a, y_a}, upper_mass(qa, x_a)});
        pts.push_back({{-x_a, -y_a}, lower_mass(qa, x_a)});
    }
    if (qb > 0.0) {
        pts.push_back({{x_b, y_b}, upper_mass(qb, x_b)});
        pts.push_back({{-x_b, -y_b}, lower_mass(qb, x_b)});
    }
    return FtDistribution({1.0, 0.0}, std::move(pts));
}

namespace {

struct FourPointWeights {
    Reference ref;
    double q_a = 0.0;
    double q_b = 0.0;
    double lambda = 0.0;
};

FourPointWeights four_point_weights(double mean_sigma, double mean_z, double x_a, double x_b)
{
    require_positive_sigma(mean_sigma, "four-point family");
    if (!std::isfinite(mean_z) || mean_z == 0.0) {
        throw DomainError("four-point family: <Z> must be finite and nonzero");
    }
    FourPointWeights w;
    w.ref = reference(mean_sigma, mean_z);
    if (!(x_a >= 0.0 && x_a < w.ref.x && w.ref.x <= x_b && std::isfinite(x_b))) {
        throw DomainError("four-point family: need 0 <= x_a < x_bar <= x_b (x_bar = " +
                          std::to_string(w.ref.x) + ")");
    }
    const double sa = x_tanh_half(x_a);
    const double sb = x_tanh_half(x_b);
    w.q_a = (sb - mean_sigma) / (sb - sa);
    w.q_b = (mean_sigma - sa) / (sb - sa);
    if (w.q_a < 0.0 || w.q_b < 0.0) {
        // x_b within rounding of x_bar
        if (w.q_a > -1e-12) {
            w.q_a = 0.0;
            w.q_b = 1.0;
        } else {
            throw InfeasibleError("four-point family: negative pair weight");
        }
    }
    w.lambda = -w.q_a * std::tanh(0.5 * x_a) / (w.q_b * std::tanh(0.5 * x_b));
    return w;
}

} // namespace

FourPointFamily make_four_point(double mean_sigma, double mean_z, double x_a, double x_b,
                                double z_a)
{
    const FourPointWeights w = four_point_weights(mean_sigma, mean_z, x_a, x_b);
    const double z_b = x_b + w.lambda * (z_a - x_a);
    const double scale = w.ref.y / w.ref.x;

    FourPointFamily f;
    f.x_a = x_a;
    f.x_b = x_b;
    f.y_a = z_a * scale;
    f.y_b = z_b * scale;
    f.p_a = w.q_a / (2.0 * std::cosh(0.5 * x_a));
    f.p_b = w.q_b / (2.0 * std::cosh(0.5 * x_b));
    return f;
}

FourPointMinimum four_point_min_variance(double mean_sigma, double mean_z, double x_a,
                                         double x_b)
{
    require_positive_sigma(mean_sigma, "four_point_min_variance");
    if (!std::isfinite(mean_z) || mean_z == 0.0) {
        throw DomainError("four_point_min_variance: <Z> must be finite and nonzero");
    }
    const Reference ref = reference(mean_sigma, mean_z);
    const double scale = ref.y / ref.x;
    const double tol = 1e-12 * ref.x;
    if (std::abs(x_a - ref.x) <= tol && std::abs(x_b - ref.x) <= tol) {
        // Both pairs sit on x_bar; Jensen makes equal Z values optimal.
        return {ref.y * ref.y - mean_z * mean_z, ref.x, 0.5, 0.5};
    }

    const FourPointWeights w = four_point_weights(mean_sigma, mean_z, x_a, x_b);
    FourPointMinimum out;
    out.q_a = w.q_a;
    out.q_b = w.q_b;

    // <z^2> = A z_a^2 + 2 B z_a + C
    const double lam = w.lambda;
    const double offset = x_b - lam * x_a;
    const double quad_a = w.q_a + w.q_b * lam * lam;
    double second_moment = 0.0;
    if (quad_a > 0.0) {
        const double quad_b = lam * w.q_b * offset;
        out.z_a = -quad_b / quad_a;
        // C - B^2/A without the cancellation
        second_moment = w.q_a * w.q_b * offset * offset / quad_a;
    } else {
        out.z_a = x_a; // pair a carries no weight
        second_moment = w.q_b * x_b * x_b;
    }
    out.variance = second_moment * scale * scale - mean_z * mean_z;
    return out;
}

// ---------------------------------------------------------------------------

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, std::span<const double> step,
                             std::size_t max_evaluations, double f_tolerance)
{
    const std::size_t n = start.size();
    if (step.size() != n || n == 0) {
        throw DomainError("nelder_mead: step must match the dimension");
    }
    NelderMeadResult result;
    auto eval = [&](const std::vector<double>& x) {
        ++result.evaluations;
        const double v = objective(x);
        return std::isnan(v) ? kInf : v;
    };

    result.x = std::move(start);
    result.value = eval(result.x);

    std::vector<std::vector<double>> simplex(n + 1);
    std::vector<double> values(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    std::vector<std::size_t> order(n + 1);

    for (int restart = 0; restart < 50 && result.evaluations < max_evaluations; ++restart) {
        const double before = result.value;
        simplex[0] = result.x;
        values[0] = result.value;
        for (std::size_t i = 0; i < n; ++i) {
            simplex[i + 1] = result.x;
            double h = step[i];
            // Prefer an initial vertex that is feasible.
            for (int attempt = 0; attempt < 8; ++attempt) {
                simplex[i + 1][i] = result.x[i] + h;
                values[i + 1] = eval(simplex[i + 1]);
                if (std::isfinite(values[i + 1])) {
                    break;
                }
                h = attempt % 2 == 0 ? -h : -0.5 * h;
            }
        }

        while (result.evaluations < max_evaluations) {
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
            const std::size_t best = order.front();
            const std::size_t worst = order.back();
            const std::size_t second = order[n - 1];

            if (std::isfinite(values[worst]) &&
                values[worst] - values[best] <=
                    f_tolerance * std::abs(values[best]) + std::numeric_limits<double>::min()) {
                break;
            }

            std::fill(centroid.begin(), centroid.end(), 0.0);
            for (std::size_t k = 0; k <= n; ++k) {
                if (k == worst) {
                    continue;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    centroid[i] += simplex[k][i] / static_cast<double>(n);
                }
            }
            auto along = [&](double coeff, std::vector<double>& out) {
                for (std::size_t i = 0; i < n; ++i) {
                    out[i] = centroid[i] + coeff * (simplex[worst][i] - centroid[i]);
                }
                return eval(out);
            };

            const double fr = along(-1.0, trial);
            if (fr < values[best]) {
                const double fe = along(-2.0, trial2);
                if (fe < fr) {
                    simplex[worst] = trial2;
                    values[worst] = fe;
                } else {
                    simplex[worst] = trial;
                    values[worst] = fr;
                }
                continue;
            }
            if (fr < values[second]) {
                simplex[worst] = trial;
                values[worst] = fr;
                continue;
            }
            const double fc = fr < values[worst] ? along(-0.5, trial2) : along(0.5, trial2);
            if (fc < std::min(fr, values[worst])) {
                simplex[worst] = trial2;
                values[worst] = fc;
                continue;
            }
            // shrink towards the best vertex
            bool moved = false;
            for (std::size_t k = 0; k <= n; ++k) {
                if (k == best) {
                    continue;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double next = simplex[best][i] + 0.5 * (simplex[k][i] - simplex[best][i]);
                    moved = moved || next != simplex[k][i];
                    simplex[k][i] = next;
                }
                values[k] = eval(simplex[k]);
            }
            if (!moved) {
                break;
            }
        }

        const auto best_it = std::min_element(values.begin(), values.end());
        if (*best_it < result.value) {
            result.value = *best_it;
            result.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
        }
        if (!(result.value < before - f_tolerance * std::abs(before))) {
            break;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------

namespace {

/// A candidate support: mirror pairs at +-(x_k, y_k) with pair weights q_k.
struct PairConfig {
    std::vector<double> x, y, q;
};

/// Decodes an unconstrained parameter vector
///   [u_1..u_K, y_1..y_K, v_3..v_K],  x_k = |u_k|,  q_k = v_k^2 (k >= 3),
/// solving q_1, q_2 from normalization and <Sigma>, then shifting y along
/// tanh(x/2) to meet <Z>. Returns nothing for infeasible parameters.
class PairDecoder {
public:
    PairDecoder(std::size_t pairs, double mean_sigma, double mean_z)
        : pairs_(pairs), mean_sigma_(mean_sigma), mean_z_(mean_z)
    {
    }

    [[nodiscard]] std::size_t dimension() const { return 2 * pairs_ + (pairs_ - 2); }

    [[nodiscard]] std::optional<PairConfig> decode(std::span<const double> theta) const
    {
        const std::size_t k_pairs = pairs_;
        PairConfig c;
        c.x.resize(k_pairs);
        c.y.assign(theta.begin() + static_cast<std::ptrdiff_t>(k_pairs),
                   theta.begin() + static_cast<std::ptrdiff_t>(2 * k_pairs));
        c.q.assign(k_pairs, 0.0);
        std::vector<double> t(k_pairs), s(k_pairs);
        for (std::size_t k = 0; k < k_pairs; ++k) {
            c.x[k] = std::abs(theta[k]);
            t[k] = std::tanh(0.5 * c.x[k]);
            s[k] = c.x[k] * t[k];
        }
        double rest = 1.0;
        double target = mean_sigma_;
        for (std::size_t k = 2; k < k_pairs; ++k) {
            const double v = theta[2 * k_pairs + (k - 2)];
            c.q[k] = v * v;
            rest -= c.q[k];
            target -= c.q[k] * s[k];
        }
        if (rest < 0.0) {
            return std::nullopt;
        }
        const double det = s[1] - s[0];
        if (std::abs(det) <= 1e-14 * (1.0 + s[0] + s[1])) {
            return std::nullopt;
        }
        c.q[1] = (target - rest * s[0]) / det;
        c.q[0] = rest - c.q[1];
        if (c.q[0] < 0.0 || c.q[1] < 0.0) {
            return std::nullopt;
        }

        double reach = 0.0;
        double current = 0.0;
        for (std::size_t k = 0; k < k_pairs; ++k) {
            reach += c.q[k] * t[k] * t[k];
            current += c.q[k] * t[k] * c.y[k];
        }
        if (!(reach > 0.0)) {
            return std::nullopt;
        }
        const double shift = (mean_z_ - current) / reach;
        for (std::size_t k = 0; k < k_pairs; ++k) {
            c.y[k] += shift * t[k];
        }

        // Far-out pairs make the weight solve ill-conditioned, and the
        // optimizer will happily exploit the resulting constraint error.
        double sigma = 0.0;
        double z = 0.0;
        for (std::size_t k = 0; k < k_pairs; ++k) {
            sigma += c.q[k] * s[k];
            z += c.q[k] * t[k] * c.y[k];
        }
        if (std::abs(sigma - mean_sigma_) > 1e-13 * mean_sigma_ ||
            std::abs(z - mean_z_) > 1e-13 * std::abs(mean_z_)) {
            return std::nullopt;
        }
        return c;
    }

    [[nodiscard]] double variance(const PairConfig& c) const
    {
        double second = 0.0;
        for (std::size_t k = 0; k < pairs_; ++k) {
            second += c.q[k] * c.y[k] * c.y[k];
        }
        return second - mean_z_ * mean_z_;
    }

private:
    std::size_t pairs_;
    double mean_sigma_;
    double mean_z_;
};

FtDistribution to_distribution(const PairConfig& c)
{
    std::vector<SupportPoint> pts;
    for (std::size_t k = 0; k < c.x.size(); ++k) {
        if (c.q[k] <= 0.0) {
            continue;
        }
        pts.push_back({{c.x[k], c.y[k]}, upper_mass(c.q[k], c.x[k])});
        pts.push_back({{-c.x[k], -c.y[k]}, lower_mass(c.q[k], c.x[k])});
    }
    return FtDistribution({1.0, 0.0}, std::move(pts));
}

MinSearchResult finish(FtDistribution best, std::vector<double> params, double mean_sigma,
                       double mean_z, std::size_t feasible)
{
    const MomentReport m = moments(best);
    MinSearchResult r{std::move(best)};
    r.best_variance = m.covariance(1, 1);
    r.floor = variance_floor(mean_sigma, mean_z);
    r.relative_gap = r.floor > 0.0 ? (r.best_variance - r.floor) / r.floor : 0.0;
    r.best_parameters = std::move(params);
    r.feasible_starts = feasible;
    return r;
}

} // namespace

MinSearchResult numeric_min_search(double mean_sigma, double mean_z,
                                   const MinSearchOptions& options)
{
    if (!std::isfinite(mean_sigma) || !(mean_sigma > 0.0) || !std::isfinite(mean_z)) {
        throw InfeasibleError("numeric_min_search: no FT distribution has <Sigma> = " +
                              std::to_string(mean_sigma) + " with <Z> = " +
                              std::to_string(mean_z) + " and nonzero spread");
    }
    if (options.support_pairs < 1 || options.support_pairs > 3) {
        throw DomainError("numeric_min_search: support_pairs must be 1, 2 or 3");
    }
    if (options.starts == 0) {
        throw DomainError("numeric_min_search: need at least one start");
    }

    if (options.support_pairs == 1 || mean_z == 0.0) {
        // One pair: the moment constraints leave no freedom. <Z> = 0: the
        // Sigma-minimal pair with Z = 0 has zero variance.
        const MinimalDistribution d = build_minimal(mean_sigma, mean_z);
        return finish(d.to_ft_distribution(), {d.a, d.b}, mean_sigma, mean_z, 1);
    }

    const PairDecoder decoder(options.support_pairs, mean_sigma, mean_z);
    const Reference ref = reference(mean_sigma, mean_z);
    const std::size_t dim = decoder.dimension();
    const std::size_t pairs = options.support_pairs;

    auto objective = [&](std::span<const double> theta) {
        const auto c = decoder.decode(theta);
        return c ? decoder.variance(*c) : kInf;
    };

    // Starting points are drawn serially so the set does not depend on
    // the thread count.
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> starts;
    starts.reserve(options.starts);
    for (std::size_t s = 0; s < options.starts; ++s) {
        for (int attempt = 0; attempt < 10000; ++attempt) {
            std::vector<double> theta(dim);
            for (std::size_t k = 0; k < pairs; ++k) {
                theta[k] = (3.0 * ref.x + 1.0) * unit(rng);
                theta[pairs + k] = ref.y * (3.0 * unit(rng) - 1.0);
            }
            for (std::size_t k = 2 * pairs; k < dim; ++k) {
                theta[k] = 0.7 * unit(rng);
            }
            if (std::isfinite(objective(theta))) {
                starts.push_back(std::move(theta));
                break;
            }
        }
    }
    if (starts.empty()) {
        throw InfeasibleError("numeric_min_search: no feasible starting point found");
    }

    std::vector<double> step(dim);
    for (std::size_t k = 0; k < pairs; ++k) {
        step[k] = 0.1 * ref.x + 0.01;
        step[pairs + k] = 0.1 * std::abs(ref.y);
    }
    for (std::size_t k = 2 * pairs; k < dim; ++k) {
        step[k] = 0.05;
    }

    std::vector<NelderMeadResult> runs(starts.size());
    parallel_for(starts.size(), [&](std::size_t s) {
        runs[s] = nelder_mead(objective, starts[s], step, options.max_evaluations);
    });

    const auto best = std::min_element(runs.begin(), runs.end(), [](const auto& l, const auto& r) {
        if (l.value != r.value) {
            return l.value < r.value;
        }
        return std::lexicographical_compare(l.x.begin(), l.x.end(), r.x.begin(), r.x.end());
    });
    const auto config = decoder.decode(best->x);
    if (!config) {
        throw InfeasibleError("numeric_min_search: search ended on an infeasible point");
    }
    return finish(to_distribution(*config), best->x, mean_sigma, mean_z, starts.size());
}

// ---------------------------------------------------------------------------

double sqrt_tanh_half(double x)
{
    const double r = std::sqrt(x);
    return r * std::tanh(0.5 * r);
}

double sqrt_artanh(double w)
{
    const double r = std::sqrt(w);
    return r * std::atanh(r);
}

CurvatureScan scan_curvature(const std::function<double(double)>& fn, double lo, double hi,
                             std::size_t points, bool concave)
{
    if (points < 3 || !(hi > lo)) {
        throw DomainError("scan_curvature: need at least three points on a non-empty interval");
    }
    std::vector<double> values(points);
    const double h = (hi - lo) / static_cast<double>(points - 1);
    double largest = 0.0;
    for (std::size_t k = 0; k < points; ++k) {
        values[k] = fn(lo + h * static_cast<double>(k));
        largest = std::max(largest, std::abs(values[k]));
    }
    CurvatureScan out;
    out.noise = 8.0 * std::numeric_limits<double>::epsilon() * largest;
    out.worst = -kInf;
    for (std::size_t k = 1; k + 1 < points; ++k) {
        const double d2 = values[k - 1] - 2.0 * values[k] + values[k + 1];
        out.worst = std::max(out.worst, concave ? d2 : -d2);
    }
    out.passed = out.worst <= out.noise;
    return out;
}

} // namespace turlab
