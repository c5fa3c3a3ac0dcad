#include "pihl/priors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pihl/special.hpp"

namespace pihl::priors {

namespace {

constexpr double kPi = std::numbers::pi;
// The tail integral is truncated at this many core half-widths; the cut-off
// mass is covered by an analytic sinc^-4 remainder bound.
constexpr double kTailCut = 50.0;

double sinc(double t) {
    return t == 0.0 ? 1.0 : std::sin(t) / t;
}

double sinc4(double t) {
    const double s = sinc(t);
    return (s * s) * (s * s);
}

// Integral of 1/(x^2-1)^2 from X to infinity, bounding the sinc^4 tail
// beyond the truncation point after factoring out (pi*alpha)^-4.
double tail_remainder_factor(double X) {
    return 0.25 * (1.0 / (X - 1.0) + 1.0 / (X + 1.0) - std::log((X + 1.0) / (X - 1.0)));
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("kaiser alpha must be positive and finite");
}

// log of the unnormalized mass integral, computed in the scale-free
// variable x = L*phi/(4*alpha) so the result does not depend on L.
double log_mass_integral(double alpha, const num::QuadratureSpec& spec) {
    const double g0 = 4.0 * num::log_sinhc(kPi * alpha);
    auto core = [alpha, g0](double x) {
        const double y = kPi * alpha * std::sqrt(std::max(0.0, 1.0 - x * x));
        return std::exp(4.0 * num::log_sinhc(y) - g0);
    };
    const double core_part = num::integrate_adaptive(core, 0.0, 1.0, spec);

    auto tail = [alpha](double x) {
        return sinc4(kPi * alpha * std::sqrt(std::max(0.0, x * x - 1.0)));
    };
    const std::vector<double> cuts{1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0, kTailCut};
    const double tail_part = num::integrate_piecewise(tail, cuts, spec);
    const double remainder = tail_remainder_factor(kTailCut) / std::pow(kPi * alpha, 4.0);

    // mass = 2 * (e^{g0} * core_part + tail_part + remainder)
    return std::log(2.0) + g0 + std::log(core_part + (tail_part + remainder) * std::exp(-g0));
}

double log_norm_impl(double alpha, const num::QuadratureSpec& spec) {
    check_alpha(alpha);
    return -(std::log(4.0 * alpha) + log_mass_integral(alpha, spec));
}

double overlap(double lo, double hi, double a, double b) {
    return std::max(0.0, std::min(hi, b) - std::max(lo, a));
}

} // namespace

KaiserPrior make_kaiser(double alpha, double L, const num::QuadratureSpec& spec) {
    check_alpha(alpha);
    if (!(L > 0.0) || !std::isfinite(L))
        throw std::invalid_argument("kaiser bandwidth must be positive and finite");
    KaiserPrior p;
    p.alpha = alpha;
    p.L = L;
    p.log_normalization = log_norm_impl(alpha, spec);
    p.normalization = std::exp(p.log_normalization);
    return p;
}

SmearedRectPrior make_smeared(double alpha, double L, double delta,
                              const num::QuadratureSpec& spec) {
    SmearedRectPrior p;
    p.kaiser = make_kaiser(alpha, L, spec);
    if (!(delta > 8.0 * alpha / L))
        throw std::invalid_argument("core width nonpositive");
    p.delta = delta;
    return p;
}

CombPrior comb_from_samples(double delta, const std::vector<std::pair<long, double>>& samples) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("comb cell width must be positive");
    double sum = 0.0;
    for (const auto& [l, p] : samples) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw std::invalid_argument("comb weights must be nonnegative and finite");
        sum += p;
    }
    if (!(sum > 0.0))
        throw std::invalid_argument("comb weights must include a positive entry");

    CombPrior out;
    out.delta = delta;
    out.weights = samples;
    std::sort(out.weights.begin(), out.weights.end());
    for (std::size_t i = 1; i < out.weights.size(); ++i)
        if (out.weights[i].first == out.weights[i - 1].first)
            throw std::invalid_argument("duplicate comb cell index");
    const double scale = 1.0 / (delta * sum);
    for (auto& [l, p] : out.weights)
        p *= scale;
    return out;
}

double rect_density(const RectPrior& prior, double phi) {
    if (!(prior.delta > 0.0))
        throw std::invalid_argument("rect width must be positive");
    const double u = phi - prior.center;
    return (u >= -0.5 * prior.delta && u < 0.5 * prior.delta) ? 1.0 / prior.delta : 0.0;
}

double comb_density(const CombPrior& prior, double phi) {
    if (!(prior.delta > 0.0))
        throw std::invalid_argument("comb cell width must be positive");
    const double cell = std::floor(phi / prior.delta + 0.5);
    for (const auto& [l, p] : prior.weights)
        if (static_cast<double>(l) == cell)
            return p;
    return 0.0;
}

double kaiser_density(const KaiserPrior& prior, double phi) {
    const double u = std::abs(prior.L * phi / (4.0 * prior.alpha));
    const double base = prior.log_normalization + std::log(prior.L);
    if (u < 1.0) {
        const double y = kPi * prior.alpha * std::sqrt(1.0 - u * u);
        return std::exp(base + 4.0 * num::log_sinhc(y));
    }
    const double t = kPi * prior.alpha * std::sqrt(u * u - 1.0);
    const double s = std::abs(sinc(t));
    if (s == 0.0)
        return 0.0;
    return std::exp(base + 4.0 * std::log(s));
}

double smeared_density(const SmearedRectPrior& prior, double phi,
                       const num::QuadratureSpec& spec) {
    const double core = 4.0 * prior.kaiser.alpha / prior.kaiser.L;
    const double width = prior.delta - 2.0 * core;
    if (!(width > 0.0))
        throw std::invalid_argument("core width nonpositive");
    const double half = 0.5 * width;

    std::vector<double> pts{-half, half};
    for (double kink : {phi - core, phi + core})
        if (kink > -half && kink < half)
            pts.push_back(kink);
    std::sort(pts.begin(), pts.end());

    auto f = [&](double eta) { return kaiser_density(prior.kaiser, phi - eta); };
    return num::integrate_piecewise(f, pts, spec) / width;
}

double prior_density(const Prior& prior, double phi, const num::QuadratureSpec& spec) {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, RectPrior>)
                return rect_density(p, phi);
            else if constexpr (std::is_same_v<T, CombPrior>)
                return comb_density(p, phi);
            else if constexpr (std::is_same_v<T, KaiserPrior>)
                return kaiser_density(p, phi);
            else
                return smeared_density(p, phi, spec);
        },
        prior);
}

double kaiser_normalization(double alpha, const num::QuadratureSpec& spec) {
    if (!(alpha >= 0.5))
        throw std::invalid_argument("kaiser normalization requires alpha >= 1/2");
    return std::exp(log_norm_impl(alpha, spec));
}

double kaiser_log_normalization(double alpha, const num::QuadratureSpec& spec) {
    if (!(alpha >= 0.5))
        throw std::invalid_argument("kaiser normalization requires alpha >= 1/2");
    return log_norm_impl(alpha, spec);
}

double kaiser_normalization_series(double alpha) {
    if (!(alpha >= 1.0))
        throw std::invalid_argument("normalization series requires alpha >= 1");
    const double pa = kPi * alpha;
    const double lead = 4.0 * std::sqrt(2.0) * std::pow(kPi, 4.0) * std::pow(alpha, 3.5) *
                        std::exp(-4.0 * pa);
    const double corrections = 13.0 / (32.0 * pa)
                             + 319.0 / (2048.0 * pa * pa)
                             + 10007.0 / (65536.0 * std::pow(pa, 3.0))
                             + 1793365.0 / (8388608.0 * std::pow(pa, 4.0))
                             + 99317267.0 / (268435456.0 * std::pow(pa, 5.0))
                             + 12817002203.0 / (17179869184.0 * std::pow(pa, 6.0));
    return lead * (1.0 - corrections);
}

double kaiser_tail_mass_bound(double alpha, const num::QuadratureSpec& spec) {
    const double n_alpha = std::exp(log_norm_impl(alpha, spec));
    const double paren = 1.0 + (1.0 / 3.0 - std::log(3.0) / 4.0) / std::pow(kPi * alpha, 4.0);
    return n_alpha * 8.0 * alpha * paren;
}

double kaiser_tail_mass(const KaiserPrior& prior, const num::QuadratureSpec& spec) {
    const double core = 4.0 * prior.alpha / prior.L;
    std::vector<double> pts;
    for (double m : {1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0, kTailCut})
        pts.push_back(m * core);
    auto g = [&](double phi) { return kaiser_density(prior, phi); };
    const double body = num::integrate_piecewise(g, pts, spec);
    const double n_alpha = std::exp(prior.log_normalization);
    const double remainder =
        n_alpha * 8.0 * prior.alpha * tail_remainder_factor(kTailCut) /
        std::pow(kPi * prior.alpha, 4.0);
    return 2.0 * body + remainder;
}

double kaiser_cosine_transform(const KaiserPrior& prior, double nu,
                               const num::QuadratureSpec& spec) {
    const double core = 4.0 * prior.alpha / prior.L;
    const double cut = kTailCut * core;
    const double anu = std::abs(nu);

    // nu counts cycles, so the kernel oscillates with half-period 1/(2 nu);
    // split the integral at that spacing to keep the panels smooth.
    std::vector<double> pts{0.0, core, cut};
    if (anu > 0.0) {
        const double step = 0.5 / anu;
        const std::size_t max_pts = 4000;
        for (double x = step; x < cut && pts.size() < max_pts; x += step)
            pts.push_back(x);
    } else {
        for (double m : {2.0, 5.0, 10.0, 20.0})
            pts.push_back(m * core);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto f = [&](double phi) {
        return kaiser_density(prior, phi) * std::cos(2.0 * kPi * nu * phi);
    };
    return 2.0 * num::integrate_piecewise(f, pts, spec);
}

double bandwidth_excess(const KaiserPrior& prior, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("bandwidth tolerance must be positive");
    num::QuadratureSpec spec;
    spec.abs_tol = tol;
    spec.rel_tol = tol;

    const double lo = 1.05 * 0.5 * prior.L;
    const double hi = 4.0 * prior.L;
    const int n = 48;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double nu = lo + (hi - lo) * i / (n - 1);
        worst = std::max(worst, std::abs(kaiser_cosine_transform(prior, nu, spec)));
    }
    return worst;
}

double prior_mass(const Prior& prior, double lo, double hi, const num::QuadratureSpec& spec) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("prior mass requires a finite interval lo < hi");
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, RectPrior>) {
                return overlap(lo, hi, p.center - 0.5 * p.delta, p.center + 0.5 * p.delta) /
                       p.delta;
            } else if constexpr (std::is_same_v<T, CombPrior>) {
                double mass = 0.0;
                for (const auto& [l, w] : p.weights)
                    mass += w * overlap(lo, hi, l * p.delta - 0.5 * p.delta,
                                        l * p.delta + 0.5 * p.delta);
                return mass;
            } else if constexpr (std::is_same_v<T, KaiserPrior>) {
                const double core = 4.0 * p.alpha / p.L;
                std::vector<double> pts{lo, hi};
                for (double kink : {-core, core})
                    if (kink > lo && kink < hi)
                        pts.push_back(kink);
                std::sort(pts.begin(), pts.end());
                auto f = [&](double phi) { return kaiser_density(p, phi); };
                return num::integrate_piecewise(f, pts, spec);
            } else {
                const double core = 4.0 * p.kaiser.alpha / p.kaiser.L;
                std::vector<double> pts{lo, hi};
                for (double kink : {-0.5 * p.delta, 0.5 * p.delta, -0.5 * p.delta + 2.0 * core,
                                    0.5 * p.delta - 2.0 * core})
                    if (kink > lo && kink < hi)
                        pts.push_back(kink);
                std::sort(pts.begin(), pts.end());
                pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
                auto f = [&](double phi) { return smeared_density(p, phi, spec); };
                return num::integrate_piecewise(f, pts, spec);
            }
        },
        prior);
}

} // namespace pihl::priors
