#include "pihl/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pihl::num {

namespace {

constexpr double kSeriesCutoff = 15.0;

// Sum_k (x^2/4)^k / (k!)^2.  All terms positive, no cancellation.
double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < sum * 1e-18)
            break;
    }
    return sum;
}

// Asymptotic expansion of exp(-x) I0(x), truncated at the smallest term.
// For x >= 15 the smallest term is below 1e-13 relative.
double i0_scaled_asymptotic(double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next >= term)
            break; // series started diverging; stop at the smallest term
        term = next;
        sum += term;
        if (term < sum * 1e-18)
            break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

} // namespace

double bessel_i0(double x) {
    if (!(x >= 0.0))
        throw std::invalid_argument("bessel_i0 requires x >= 0");
    if (x < kSeriesCutoff)
        return i0_series(x);
    return std::exp(x) * i0_scaled_asymptotic(x);
}

double bessel_i0_scaled(double x) {
    if (!(x >= 0.0))
        throw std::invalid_argument("bessel_i0_scaled requires x >= 0");
    if (x < kSeriesCutoff)
        return std::exp(-x) * i0_series(x);
    return i0_scaled_asymptotic(x);
}

double log_sinhc(double u) {
    if (!(u >= 0.0))
        throw std::invalid_argument("log_sinhc requires u >= 0");
    if (u < 1.0) {
        // log1p of the series for sinh(u)/u - 1; terms through u^16/17!
        // leave relative error below 1e-15 on [0, 1).
        const double u2 = u * u;
        double term = 1.0;
        double s = 0.0;
        for (int k = 1; k <= 8; ++k) {
            term *= u2 / (2.0 * k * (2.0 * k + 1.0));
            s += term;
        }
        return std::log1p(s);
    }
    // sinh(u)/u = e^u (1 - e^{-2u}) / (2u); exact for all u without overflow.
    return u - std::log(2.0 * u) + std::log1p(-std::exp(-2.0 * u));
}

} // namespace pihl::num
