#pragma once

// Scalar functions behind the fluctuation-theorem uncertainty relations.
//
// The tight bound is f(x) = csch^2(g(x/2)), where g inverts y*tanh(y) on
// y >= 0. Two looser comparison bounds are provided alongside it:
// the steady-state bound 2/x and the exponential bound 2/(e^x - 1).
//
// All functions are pure and reentrant.

namespace turlab {

/// Returns the unique y >= 0 with y*tanh(y) == s.
///
/// The residual satisfies |y*tanh(y) - s| <= 1e-12 * max(1, s).
/// Throws DomainError for negative or non-finite s.
double inverse_x_tanh_x(double s);

/// f(x) = csch^2(g(x/2)), the lower bound on var(Q)/<Q>^2 given <Sigma> = x.
///
/// f(0) is +infinity: at zero dissipation the signal-to-noise ratio is
/// unconstrained only by a vanishing mean. For very large x the value
/// underflows towards zero. Throws DomainError for negative or NaN x.
double tur_bound(double x);

/// 2/x. Throws DomainError unless x > 0.
double classical_bound(double x);

/// 2/(e^x - 1). Throws DomainError unless x > 0.
double exponential_bound(double x);

} // namespace turlab
