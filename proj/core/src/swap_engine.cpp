#include "turlab/swap_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "turlab/errors.hpp"
#include "turlab/parallel.hpp"
#include "turlab/special_functions.hpp"

namespace turlab {

namespace {

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double log_add_exp(double u, double v)
{
    const double hi = std::max(u, v);
    return hi + std::log1p(std::exp(-std::abs(u - v)));
}

struct Outcome {
    double qh;
    double w;
    double p;
};

std::array<Outcome, 3> outcomes(const EngineReport& r)
{
    const double eps_a = r.params.eps_a;
    const double dw = r.params.eps_b - r.params.eps_a;
    return {{{eps_a, dw, r.p_forward}, {-eps_a, -dw, r.p_backward}, {0.0, 0.0, r.p_idle}}};
}

double cgf_of(const EngineReport& r, double lambda_h, double lambda_w)
{
    const auto outs = outcomes(r);
    double largest = 0.0;
    for (const auto& o : outs) {
        largest = std::max(largest, std::abs(lambda_h * o.qh + lambda_w * o.w));
    }
    if (largest <= 1.0) {
        // log1p/expm1 keeps full relative accuracy near the origin, which
        // the finite-difference cumulant check depends on.
        double s = 0.0;
        for (const auto& o : outs) {
            s += o.p * std::expm1(lambda_h * o.qh + lambda_w * o.w);
        }
        return std::log1p(s);
    }
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& o : outs) {
        if (o.p > 0.0) {
            top = std::max(top, std::log(o.p) + lambda_h * o.qh + lambda_w * o.w);
        }
    }
    double s = 0.0;
    for (const auto& o : outs) {
        if (o.p > 0.0) {
            s += std::exp(std::log(o.p) + lambda_h * o.qh + lambda_w * o.w - top);
        }
    }
    return top + std::log(s);
}

double relative_error(double estimate, double exact, double scale)
{
    const double err = std::abs(estimate - exact);
    const double denom = std::abs(exact) > 1e-10 * scale ? std::abs(exact) : scale;
    return denom > 0.0 ? err / denom : err;
}

} // namespace

void validate(const EngineParams& p)
{
    const std::array<double, 4> values{p.eps_a, p.eps_b, p.beta_a, p.beta_b};
    for (double v : values) {
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw DomainError("engine parameters must be finite and strictly positive");
        }
    }
    if (!(p.beta_a < p.beta_b)) {
        throw DomainError("engine requires beta_a < beta_b (qubit A couples to the hot bath)");
    }
}

std::string_view to_string(Regime r)
{
    switch (r) {
    case Regime::refrigerator: return "refrigerator";
    case Regime::engine: return "engine";
    case Regime::accelerator: return "accelerator";
    case Regime::boundary: return "boundary";
    }
    return "boundary";
}

double excited_population(double beta, double eps) { return 1.0 / (1.0 + std::exp(-beta * eps)); }

MomentReport EngineReport::moment_report() const
{
    MomentReport m;
    m.mean = Eigen::Vector2d(mean_qh, mean_w);
    m.covariance.resize(2, 2);
    m.covariance << var_qh, cov_wq, cov_wq, var_w;
    m.mean_sigma = mean_sigma;
    return m;
}

EngineReport build_engine(const EngineParams& p)
{
    validate(p);
    const double a = p.beta_a * p.eps_a;
    const double b = p.beta_b * p.eps_b;
    const double a_excited = excited_population(p.beta_a, p.eps_a);
    const double a_ground = 1.0 / (1.0 + std::exp(a));
    const double b_excited = excited_population(p.beta_b, p.eps_b);
    const double b_ground = 1.0 / (1.0 + std::exp(b));

    const double forward = a_ground * b_excited;  // (0,1) -> (1,0): Q_H = +eps_a
    const double backward = a_excited * b_ground; // (1,0) -> (0,1): Q_H = -eps_a
    const double idle = a_ground * b_ground + a_excited * b_excited;
    const double dw = p.eps_b - p.eps_a;

    std::vector<SupportPoint> pts{
        {{p.eps_a, dw}, forward},
        {{-p.eps_a, -dw}, backward},
        {{0.0, 0.0}, idle},
    };
    EngineReport r{p, FtDistribution({p.beta_b - p.beta_a, p.beta_b}, std::move(pts))};
    r.p_forward = forward;
    r.p_backward = backward;
    r.p_idle = idle;

    // forward - backward == sigma(b) - sigma(a) == expm1(b - a) a_excited b_ground
    const double net = std::expm1(b - a) * a_excited * b_ground;
    const double moving = forward + backward;
    r.mean_qh = p.eps_a * net;
    r.mean_w = dw * net;
    // (beta_b - beta_a) eps_a + beta_b (eps_b - eps_a) == b - a
    r.mean_sigma = (b - a) * net;
    const double spread = moving - net * net;
    r.var_qh = p.eps_a * p.eps_a * spread;
    r.var_w = dw * dw * spread;
    r.cov_wq = p.eps_a * dw * spread;
    if (r.mean_qh != 0.0) {
        r.efficiency = -r.mean_w / r.mean_qh;
    }
    r.regime = classify_regime(p);
    return r;
}

Regime classify_regime(const EngineParams& p)
{
    validate(p);
    const double gap_ratio = p.eps_b / p.eps_a;
    const double beta_ratio = p.beta_a / p.beta_b;
    constexpr double tol = 1e-12;
    if (std::abs(gap_ratio - beta_ratio) <= tol * std::max(gap_ratio, beta_ratio) ||
        std::abs(gap_ratio - 1.0) <= tol) {
        return Regime::boundary;
    }
    if (gap_ratio < beta_ratio) {
        return Regime::refrigerator;
    }
    return gap_ratio < 1.0 ? Regime::engine : Regime::accelerator;
}

double cgf(const EngineParams& p, double lambda_h, double lambda_w)
{
    return cgf_of(build_engine(p), lambda_h, lambda_w);
}

double cgf_closed_form(const EngineParams& p, double lambda_h, double lambda_w)
{
    validate(p);
    const double ea = p.eps_a;
    const double eb = p.eps_b;
    const double prefactor = -ea * (lambda_h + lambda_w) - eb * lambda_w;
    const double first = log_add_exp(ea * lambda_h + eb * lambda_w, ea * (p.beta_a + lambda_w));
    const double second =
        log_add_exp(ea * lambda_h + p.beta_b * eb + eb * lambda_w, ea * lambda_w);
    return prefactor + first + second - softplus(p.beta_a * ea) - softplus(p.beta_b * eb);
}

CgfDerivativeReport cgf_derivative_check(const EngineParams& p)
{
    const EngineReport r = build_engine(p);
    auto c = [&](double lh, double lw) { return cgf_of(r, lh, lw); };

    auto d_h = [&](double h) { return (c(h, 0.0) - c(-h, 0.0)) / (2.0 * h); };
    auto d_w = [&](double h) { return (c(0.0, h) - c(0.0, -h)) / (2.0 * h); };
    auto d_hh = [&](double h) { return (c(h, 0.0) - 2.0 * c(0.0, 0.0) + c(-h, 0.0)) / (h * h); };
    auto d_ww = [&](double h) { return (c(0.0, h) - 2.0 * c(0.0, 0.0) + c(0.0, -h)) / (h * h); };
    auto d_hw = [&](double h) {
        return (c(h, h) - c(h, -h) - c(-h, h) + c(-h, -h)) / (4.0 * h * h);
    };
    // Central differences have O(h^2) error; one Richardson step removes it.
    constexpr double h = 1e-5;
    auto richardson = [](auto&& diff) { return (4.0 * diff(0.5 * h) - diff(h)) / 3.0; };

    CgfDerivativeReport out;
    out.d_h = richardson(d_h);
    out.d_w = richardson(d_w);
    out.d_hh = richardson(d_hh);
    out.d_ww = richardson(d_ww);
    out.d_hw = richardson(d_hw);
    out.mean_qh = r.mean_qh;
    out.mean_w = r.mean_w;
    out.var_qh = r.var_qh;
    out.var_w = r.var_w;
    out.cov_wq = r.cov_wq;

    const double scale_h = p.eps_a;
    const double scale_w = std::abs(p.eps_b - p.eps_a);
    out.first_order_error = std::max(relative_error(out.d_h, out.mean_qh, scale_h),
                                     relative_error(out.d_w, out.mean_w, scale_w));
    out.second_order_error =
        std::max({relative_error(out.d_hh, out.var_qh, scale_h * scale_h),
                  relative_error(out.d_ww, out.var_w, scale_w * scale_w),
                  relative_error(out.d_hw, out.cov_wq, scale_h * scale_w)});
    out.passed = out.first_order_error <= 1e-8 && out.second_order_error <= 1e-6;
    return out;
}

std::vector<SweepRow> sweep(const SweepConfig& config)
{
    if (!(config.beta_ratio > 0.0 && config.beta_ratio < 1.0)) {
        throw DomainError("sweep: beta ratio must lie in (0, 1)");
    }
    if (!std::isfinite(config.beta_b_eps_a) || !(config.beta_b_eps_a > 0.0)) {
        throw DomainError("sweep: beta_b * eps_a must be positive");
    }
    for (double r : config.grid) {
        if (!std::isfinite(r) || !(r > 0.0)) {
            throw DomainError("sweep: grid values must be finite and positive");
        }
    }

    std::vector<SweepRow> rows(config.grid.size());
    parallel_for(rows.size(), [&](std::size_t k) {
        EngineParams p;
        p.eps_a = 1.0;
        p.eps_b = config.grid[k];
        p.beta_b = config.beta_b_eps_a;
        p.beta_a = config.beta_ratio * config.beta_b_eps_a;
        const EngineReport rep = build_engine(p);
        const MomentReport m = rep.moment_report();

        SweepRow& row = rows[k];
        row.r = config.grid[k];
        row.regime = rep.regime;
        row.mean_qh = rep.mean_qh;
        row.mean_w = rep.mean_w;
        row.mean_sigma = rep.mean_sigma;
        row.var_qh = rep.var_qh;
        row.var_w = rep.var_w;
        row.cov_wq = rep.cov_wq;
        row.f_bound_qh = bound_term(m, 0, 0);
        row.f_bound_w = bound_term(m, 1, 1);
        if (classify_dissipation(m) == Dissipation::positive) {
            const double c = classical_bound(rep.mean_sigma);
            row.classical_bound_qh = c * rep.mean_qh * rep.mean_qh;
            row.classical_bound_w = c * rep.mean_w * rep.mean_w;
        }
        const CovarianceInterval ci = covariance_interval(m, 1, 0);
        row.cov_lower = ci.lower;
        row.cov_upper = ci.upper;
        row.sign_condition = sign_condition(m, 1, 0).status;
    });
    return rows;
}

} // namespace turlab
