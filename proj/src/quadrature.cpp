#include "pihl/quadrature.hpp"

#include <cmath>

namespace pihl::num {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol >= 0.0))
        throw std::invalid_argument("quadrature tolerances must be positive");
    if (max_depth < 1 || max_depth > 64)
        throw std::invalid_argument("quadrature max_depth out of range");
}

QuadratureError::QuadratureError(const std::string& what, double best_estimate, double residual)
    : std::runtime_error(what), best_(best_estimate), residual_(residual) {}

namespace {

struct Panel {
    double a, b;
    double fa, fm, fb;
    double estimate; // Simpson estimate over [a, b]
};

double simpson(double fa, double fm, double fb, double width) {
    return width * (fa + 4.0 * fm + fb) / 6.0;
}

struct Worker {
    const std::function<double(double)>& f;
    int max_depth;
    double unconverged = 0.0; // accumulated |error estimate| of panels cut off at max_depth

    double refine(const Panel& p, double eps, int depth) {
        const double m = 0.5 * (p.a + p.b);
        const double lm = 0.5 * (p.a + m);
        const double rm = 0.5 * (m + p.b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double half = 0.5 * (p.b - p.a);
        const double left = simpson(p.fa, flm, p.fm, half);
        const double right = simpson(p.fm, frm, p.fb, half);
        const double err = (left + right - p.estimate) / 15.0;
        if (std::abs(err) <= eps || depth >= max_depth) {
            if (std::abs(err) > eps)
                unconverged += std::abs(err);
            return left + right + err;
        }
        const Panel lp{p.a, m, p.fa, flm, p.fm, left};
        const Panel rp{m, p.b, p.fm, frm, p.fb, right};
        return refine(lp, 0.5 * eps, depth + 1) + refine(rp, 0.5 * eps, depth + 1);
    }
};

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& spec) {
    spec.validate();
    if (!(a < b))
        throw std::invalid_argument("integration interval requires a < b");

    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb))
        throw std::invalid_argument("integrand not finite on the interval");

    const double whole = simpson(fa, fm, fb, b - a);
    const double eps = std::max(spec.abs_tol, spec.rel_tol * std::abs(whole));

    Worker w{f, spec.max_depth};
    const double result = w.refine(Panel{a, b, fa, fm, fb, whole}, eps, 0);

    const double allowed = std::max(spec.abs_tol, spec.rel_tol * std::abs(result));
    if (w.unconverged > allowed)
        throw QuadratureError("adaptive quadrature did not converge within max_depth",
                              result, w.unconverged);
    return result;
}

double integrate_piecewise(const std::function<double(double)>& f,
                           const std::vector<double>& points,
                           const QuadratureSpec& spec) {
    if (points.size() < 2)
        throw std::invalid_argument("integrate_piecewise needs at least two points");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i] < points[i + 1]))
            throw std::invalid_argument("integrate_piecewise points must be increasing");
        total += integrate_adaptive(f, points[i], points[i + 1], spec);
    }
    return total;
}

} // namespace pihl::num
