#include "pihl/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pihl/roots.hpp"
#include "pihl/symmetric_eigen.hpp"

namespace pihl::bounds {

namespace {

constexpr double kPi = std::numbers::pi;
// Verbatim constant of the rectangular-prior bound; majorizes the product
// of the normalization prefactor and the R(eps) cap.
constexpr double kTailConstant = 13460.0;

double cube(double x) {
    return x * x * x;
}

} // namespace

void GeneratorSpectrum::validate() const {
    if (!std::isfinite(lambda_minus) || !std::isfinite(lambda_plus))
        throw std::invalid_argument("generator eigenvalues must be finite");
    if (!(lambda_plus > lambda_minus))
        throw std::invalid_argument("lambda_plus must exceed lambda_minus");
}

void BoundInputs::validate() const {
    if (!(N > 0.0) || !std::isfinite(N))
        throw std::invalid_argument("resource N must be positive and finite");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("prior width delta must be positive and finite");
}

ConventionalLimits conventional_limits(int n, int k, const GeneratorSpectrum& gen) {
    if (n < 1 || k < 1)
        throw std::invalid_argument("n and k must be at least 1");
    gen.validate();
    const double span = gen.span();
    ConventionalLimits out;
    out.sql = 1.0 / (std::sqrt(static_cast<double>(k) * n) * span);
    out.hl = 1.0 / (std::sqrt(static_cast<double>(k)) * n * span);
    return out;
}

double pi_corrected_hl(int n, const GeneratorSpectrum& gen) {
    if (n < 1)
        throw std::invalid_argument("n must be at least 1");
    gen.validate();
    return kPi / (n * gen.span());
}

double bandlimited_bound(double N, double L) {
    if (!(N > 0.0) || !std::isfinite(N))
        throw std::invalid_argument("resource N must be positive");
    if (!(L >= 0.0) || !std::isfinite(L))
        throw std::invalid_argument("bandwidth L must be nonnegative");
    const double d = N + 0.5 * L;
    return kPi * kPi / (d * d);
}

double frequency_bound(double T, const GeneratorSpectrum& gen) {
    if (!(T > 0.0) || !std::isfinite(T))
        throw std::invalid_argument("interrogation time must be positive");
    gen.validate();
    return kPi / (T * gen.span());
}

WellGroundState well_ground_state(double W, int grid_points) {
    if (!(W > 0.0) || !std::isfinite(W))
        throw std::invalid_argument("well width must be positive");
    if (grid_points < 10)
        throw std::invalid_argument("well grid needs at least 10 points");

    const double h = W / (grid_points + 1);
    const double inv_h2 = 1.0 / (h * h);
    num::SymmetricMatrix a(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        a.set(i, i, 2.0 * inv_h2);
        if (i + 1 < grid_points)
            a.set(i, i + 1, -inv_h2);
    }
    const num::EigenPair ground = num::sym_eig_min(a);
    return WellGroundState{ground.value, ground.vector};
}

double r_epsilon(double eps) {
    if (!(eps >= 0.0) || eps > 1.0 / 3.0)
        throw std::domain_error("r_epsilon requires 0 <= eps <= 1/3");
    if (eps == 0.0)
        return 0.0;
    const double bracket = 3.0 + 5.0 * eps + 7.0 * eps * eps / 6.0 +
                           (0.5 / eps + 2.0 * eps * eps) * std::log1p(-2.0 * eps) +
                           1.5 * std::log(3.0) - 2.0 * eps * eps * std::log(3.0 * eps);
    return eps * eps / 3.0 * bracket;
}

double r_epsilon_numeric(double eps, const num::QuadratureSpec& caller_spec) {
    if (!(eps > 0.0) || eps > 1.0 / 3.0)
        throw std::domain_error("r_epsilon_numeric requires 0 < eps <= 1/3");

    // The result scales as eps^2, so an absolute tolerance meant for O(1)
    // integrals would dominate the relative one at small eps.
    num::QuadratureSpec spec = caller_spec;
    spec.abs_tol = std::max(std::min(caller_spec.abs_tol, caller_spec.rel_tol * eps * eps),
                            1e-300);

    auto weight = [eps](double t) {
        const double q = (t / eps) * (t / eps) - 1.0;
        return q * q;
    };
    const double i1 = num::integrate_adaptive(
        [eps](double t) { return cube(t - eps + 1.0) - 1.0; }, eps, 2.0 * eps, spec);

    double i2 = 0.0;
    if (2.0 * eps < 1.0 - eps)
        i2 = num::integrate_adaptive(
            [&](double t) { return (cube(t - eps + 1.0) - 1.0) / weight(t); }, 2.0 * eps,
            1.0 - eps, spec);

    const double i3_front = num::integrate_adaptive(
        [&](double t) { return (cube(t - eps + 1.0) - cube(t + eps)) / weight(t); }, 1.0 - eps,
        2.0, spec);

    // Tail over t in [2, inf): substitute t = 1/s.  The cube difference
    // factors as (1-2*eps)(3t^2 + 3t + c), leaving a smooth integrand in s.
    const double c = 1.0 - eps * (1.0 - eps);
    const double e4 = eps * eps * eps * eps;
    const double i3_tail = num::integrate_adaptive(
        [&](double s) {
            const double den = 1.0 - eps * eps * s * s;
            return (1.0 - 2.0 * eps) * e4 * (3.0 + 3.0 * s + c * s * s) / (den * den);
        },
        0.0, 0.5, spec);

    return 2.0 * (i1 + i2 + i3_front + i3_tail) / 3.0;
}

double epsilon_of(const BoundInputs& inputs, const BoundParams& params) {
    inputs.validate();
    if (!(params.alpha > 0.0) || !(params.L > 0.0))
        throw std::invalid_argument("bound params must have positive alpha and L");
    return 4.0 * params.alpha / (inputs.delta * params.L);
}

double bound1(const BoundInputs& inputs, const BoundParams& params) {
    const double eps = epsilon_of(inputs, params);
    if (eps > 1.0 / 3.0 + 1e-15)
        throw std::domain_error("bound1 requires epsilon = 4 alpha/(delta L) <= 1/3");
    const double lead = (1.0 - 2.0 * eps) * bandlimited_bound(inputs.N, params.L);
    const double tail = kTailConstant * inputs.delta * std::pow(params.alpha, 5.5) *
                        std::exp(-4.0 * kPi * params.alpha) / params.L;
    return lead - tail;
}

BoundParams default_params(const BoundInputs& inputs) {
    inputs.validate();
    const double x = inputs.product();
    if (!(x > 1.0))
        throw std::invalid_argument("default params require N*delta > 1");
    BoundParams p;
    p.alpha = 0.25 * std::log(x);
    p.L = std::sqrt(8.0 * p.alpha * inputs.N / inputs.delta);
    p.epsilon = std::sqrt(std::log(x) / (2.0 * x));
    return p;
}

BoundParams tuned_params(const BoundInputs& inputs) {
    inputs.validate();
    const double x = inputs.product();
    if (!(x > 18.0))
        throw std::invalid_argument("tuned params require N*delta > 18");

    // Along L = sqrt(8 alpha N/delta) the ratio is eps = sqrt(2 alpha/x),
    // so eps <= 1/3 caps alpha at x/18.
    auto with_alpha = [&](double alpha) {
        BoundParams p;
        p.alpha = alpha;
        p.L = std::sqrt(8.0 * alpha * inputs.N / inputs.delta);
        p.epsilon = std::sqrt(2.0 * alpha / x);
        return p;
    };
    auto objective = [&](double alpha) { return bound1(inputs, with_alpha(alpha)); };

    const double alpha_max = x / 18.0;
    const double alpha_min = std::min(0.05, 0.5 * alpha_max);
    double best_alpha = alpha_min;
    double best_value = objective(alpha_min);
    const int grid = 200;
    for (int i = 1; i < grid; ++i) {
        const double alpha =
            alpha_min * std::pow(alpha_max / alpha_min, static_cast<double>(i) / (grid - 1));
        const double value = objective(alpha);
        if (value > best_value) {
            best_value = value;
            best_alpha = alpha;
        }
    }

    double lo = std::max(alpha_min, best_alpha / 1.3);
    double hi = std::min(alpha_max, best_alpha * 1.3);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - gr * (hi - lo);
    double b = lo + gr * (hi - lo);
    double fa = objective(a);
    double fb = objective(b);
    for (int iter = 0; iter < 80 && hi - lo > 1e-10 * (1.0 + hi); ++iter) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + gr * (hi - lo);
            fb = objective(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - gr * (hi - lo);
            fa = objective(a);
        }
    }
    return with_alpha(0.5 * (lo + hi));
}

double bound2(const BoundInputs& inputs) {
    inputs.validate();
    const double x = inputs.product();
    if (!(x > 1.0))
        throw std::invalid_argument("bound2 requires N*delta > 1");
    return kPi * kPi / (inputs.N * inputs.N) * (1.0 - std::sqrt(8.0 * std::log(x) / x));
}

double crossover() {
    return num::find_root([](double x) { return x - 8.0 * std::log(x); }, 20.0, 30.0, 1e-10);
}

BoundReport make_bound_report(int n, int k, const GeneratorSpectrum& gen, double delta) {
    gen.validate();
    if (n < 1 || k < 1)
        throw std::invalid_argument("n and k must be at least 1");
    BoundInputs inputs{n * gen.span(), delta};
    inputs.validate();

    const BoundParams params = default_params(inputs);
    BoundReport r;
    r.N = inputs.N;
    r.delta = delta;
    r.alpha = params.alpha;
    r.L = params.L;
    r.epsilon = params.epsilon;
    r.bound_bandlimited = bandlimited_bound(inputs.N, params.L);
    r.bound1_raw = params.epsilon <= 1.0 / 3.0
                       ? bound1(inputs, params)
                       : std::numeric_limits<double>::quiet_NaN();
    r.bound2 = bound2(inputs);
    r.conventional_hl = conventional_limits(n, k, gen).hl;
    r.pi_hl = pi_corrected_hl(n, gen);
    return r;
}

} // namespace pihl::bounds
