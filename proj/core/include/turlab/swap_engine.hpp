#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "turlab/ft_distribution.hpp"
#include "turlab/tur_bounds.hpp"

namespace turlab {

/// Two qubits with H_i = -eps_i sigma_+ sigma_-, thermalized at inverse
/// temperatures beta_a (hot) < beta_b (cold), then exchanged by a SWAP.
struct EngineParams {
    double eps_a = 1.0;
    double eps_b = 1.0;
    double beta_a = 1.0;
    double beta_b = 2.0;
};

/// Throws DomainError unless all entries are finite and positive and
/// beta_a < beta_b.
void validate(const EngineParams& p);

enum class Regime { refrigerator, engine, accelerator, boundary };

std::string_view to_string(Regime r);

/// Exact statistics of heat to the hot bath Q_H and work W per stroke.
struct EngineReport {
    EngineParams params;
    /// Charges (Q_H, W), affinities (beta_b - beta_a, beta_b).
    FtDistribution distribution;

    /// Probability of initial occupations (n_a, n_b) = (0, 1): Q_H = eps_a.
    double p_forward = 0.0;
    /// Probability of (1, 0): Q_H = -eps_a.
    double p_backward = 0.0;
    /// Probability of n_a == n_b: nothing moves.
    double p_idle = 0.0;

    double mean_qh = 0.0;
    double mean_w = 0.0;
    double mean_sigma = 0.0;
    double var_qh = 0.0;
    double var_w = 0.0;
    double cov_wq = 0.0;
    /// -<W>/<Q_H>; empty when <Q_H> == 0.
    std::optional<double> efficiency = std::nullopt;
    Regime regime = Regime::boundary;

    /// Moments in distribution order (Q_H, W), taken from the closed forms.
    [[nodiscard]] MomentReport moment_report() const;
};

/// Excited-state occupation e^{beta eps}/(1 + e^{beta eps}) of a qubit whose
/// excited level sits at -eps.
double excited_population(double beta, double eps);

EngineReport build_engine(const EngineParams& p);

/// refrigerator: eps_b/eps_a < beta_a/beta_b; engine: beta_a/beta_b <
/// eps_b/eps_a < 1; accelerator: eps_b/eps_a > 1; boundary within 1e-12
/// (relative) of either transition.
Regime classify_regime(const EngineParams& p);

/// ln <exp(lambda_h Q_H + lambda_w W)> summed over the four outcomes, in a
/// form that stays accurate both near the origin and for large arguments.
double cgf(const EngineParams& p, double lambda_h, double lambda_w);

/// The same function from its factorized closed form.
double cgf_closed_form(const EngineParams& p, double lambda_h, double lambda_w);

struct CgfDerivativeReport {
    double d_h = 0.0, d_w = 0.0;                 ///< finite-difference first derivatives
    double d_hh = 0.0, d_ww = 0.0, d_hw = 0.0;   ///< second derivatives
    double mean_qh = 0.0, mean_w = 0.0;          ///< exact counterparts
    double var_qh = 0.0, var_w = 0.0, cov_wq = 0.0;
    double first_order_error = 0.0;   ///< worst relative error of d_h, d_w
    double second_order_error = 0.0;  ///< worst relative error of d_hh, d_ww, d_hw
    bool passed = false;              ///< first <= 1e-8 and second <= 1e-6
};

/// Richardson-extrapolated central differences of cgf() at the origin
/// (base step 1e-5) against the exact cumulants. Errors are relative to the
/// exact value, or absolute on the natural scale of the charges when the
/// exact value vanishes.
CgfDerivativeReport cgf_derivative_check(const EngineParams& p);

struct SweepRow {
    double r = 0.0; ///< eps_b / eps_a
    Regime regime = Regime::boundary;
    double mean_qh = 0.0, mean_w = 0.0, mean_sigma = 0.0;
    double var_qh = 0.0, var_w = 0.0, cov_wq = 0.0;
    double f_bound_qh = 0.0, f_bound_w = 0.0;                 ///< f(<Sigma>) <Q>^2
    double classical_bound_qh = 0.0, classical_bound_w = 0.0; ///< (2/<Sigma>) <Q>^2
    double cov_lower = 0.0, cov_upper = 0.0;                  ///< interval on cov(W, Q_H)
    SignConditionStatus sign_condition = SignConditionStatus::indeterminate;
};

struct SweepConfig {
    double beta_ratio = 0.5;   ///< beta_a / beta_b, in (0, 1)
    double beta_b_eps_a = 2.0; ///< fixes the temperature scale; eps_a = 1
    std::vector<double> grid;  ///< values of eps_b / eps_a, all > 0
};

/// One row per grid point in grid order. Rows are evaluated in parallel
/// (see parallel.hpp); the result does not depend on the thread count.
/// Zero-dissipation rows carry zero bound columns since both means vanish.
std::vector<SweepRow> sweep(const SweepConfig& config);

} // namespace turlab
