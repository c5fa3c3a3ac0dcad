#pragma once

namespace pihl::num {

/// Modified Bessel function of the first kind, order zero.
/// Power series for small argument, asymptotic expansion beyond; at least
/// ten significant digits over x >= 0.  Overflows to +inf for x beyond
/// roughly 709 (the value itself exceeds the double range there).
double bessel_i0(double x);

/// exp(-x) * I0(x).  Never overflows; tends to 1/sqrt(2*pi*x) for large x.
double bessel_i0_scaled(double x);

/// log(sinh(u)/u) for u >= 0, evaluated without overflow for any u
/// (sinh itself overflows near u = 710).  log_sinhc(0) = 0.
double log_sinhc(double u);

} // namespace pihl::num
