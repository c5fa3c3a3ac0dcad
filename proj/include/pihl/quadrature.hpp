#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pihl::num {

/// Tolerances and recursion budget for adaptive integration.
/// The effective tolerance for an integral is max(abs_tol, rel_tol * |I|).
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 48;

    void validate() const;
};

/// Thrown when the recursion budget is exhausted before the requested
/// tolerance is met.  Carries the best available estimate and the
/// accumulated error estimate of the unconverged panels.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double best_estimate, double residual);

    double best_estimate() const noexcept { return best_; }
    double residual() const noexcept { return residual_; }

  private:
    double best_;
    double residual_;
};

/// Adaptive Simpson quadrature of f over [a, b] with Richardson correction.
/// Exact (up to roundoff) for polynomials of degree <= 5.  Requires a < b
/// and f finite on [a, b].
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& spec = {});

/// Integrates over [points.front(), points.back()] split at the interior
/// points.  Useful when the caller knows where the integrand changes
/// character (peaks, piece boundaries).  Points must be strictly increasing.
double integrate_piecewise(const std::function<double(double)>& f,
                           const std::vector<double>& points,
                           const QuadratureSpec& spec = {});

} // namespace pihl::num
