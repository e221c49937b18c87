#include "turlab/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "turlab/errors.hpp"

namespace turlab {

namespace {

double x_tanh_x(double y) { return y * std::tanh(y); }

double x_tanh_x_derivative(double y)
{
    const double c = std::cosh(y);
    return std::tanh(y) + y / (c * c);
}

} // namespace

double inverse_x_tanh_x(double s)
{
    if (!std::isfinite(s) || s < 0.0) {
        throw DomainError("inverse_x_tanh_x: argument must be finite and >= 0, got " +
                          std::to_string(s));
    }
    if (s == 0.0) {
        return 0.0;
    }

    // y tanh y <= y^2 gives y >= sqrt(s); y tanh y > y - 0.28 gives y < s + 1.
    double lo = 0.0;
    double hi = 0.0;
    double y = 0.0;
    if (s >= 1.0) {
        lo = s;
        hi = s + 1.0;
        y = s / std::tanh(s);
    } else {
        lo = std::sqrt(s);
        hi = std::sqrt(2.0 * s) + 1.0;
        y = std::sqrt(s) * (1.0 + s / 6.0);
    }
    if (!(y > lo && y < hi)) {
        y = 0.5 * (lo + hi);
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < 200; ++iter) {
        const double h = x_tanh_x(y) - s;
        if (h == 0.0) {
            return y;
        }
        if (h < 0.0) {
            lo = y;
        } else {
            hi = y;
        }
        double next = y - h / x_tanh_x_derivative(y);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi); // Newton left the bracket; bisect
        }
        if (std::abs(next - y) <= 2.0 * eps * y || hi - lo <= 2.0 * eps * hi) {
            return next;
        }
        y = next;
    }
    return y;
}

double tur_bound(double x)
{
    if (std::isnan(x) || x < 0.0) {
        throw DomainError("tur_bound: argument must be >= 0, got " + std::to_string(x));
    }
    if (x == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double y = inverse_x_tanh_x(0.5 * x);
    if (y == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    // csch^2(y) = 4 e^{-2y} / (1 - e^{-2y})^2
    const double d = std::expm1(-2.0 * y);
    return 4.0 * std::exp(-2.0 * y) / (d * d);
}

double classical_bound(double x)
{
    if (!(x > 0.0)) {
        throw DomainError("classical_bound: argument must be > 0, got " + std::to_string(x));
    }
    return 2.0 / x;
}

double exponential_bound(double x)
{
    if (!(x > 0.0)) {
        throw DomainError("exponential_bound: argument must be > 0, got " + std::to_string(x));
    }
    return 2.0 / std::expm1(x);
}

} // namespace turlab
