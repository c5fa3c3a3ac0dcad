#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "pihl/priors.hpp"
#include "pihl/roots.hpp"
#include "pihl/serialize.hpp"

using namespace pihl::priors;
using pihl::num::QuadratureSpec;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

struct Lcg {
    std::uint64_t state = 0x2545f4914f6cdd1dull;
    double uniform(double lo, double hi) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return lo + (hi - lo) * (static_cast<double>(state >> 11) * 0x1.0p-53);
    }
};

} // namespace

TEST_CASE("rectangular prior is flat on its support and integrates to one") {
    const RectPrior p{0.5, 0.2};
    CHECK(rect_density(p, 0.2) == 2.0);
    CHECK(rect_density(p, 0.2 - 0.24) == 2.0);
    CHECK(rect_density(p, 0.2 + 0.26) == 0.0);
    CHECK(rect_density(p, -0.2) == 0.0);
    CHECK(prior_mass(Prior{p}, -1.0, 1.0) == 1.0);
    CHECK(prior_mass(Prior{p}, 0.2, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("comb construction rescales weights to unit mass") {
    const CombPrior single = comb_from_samples(0.25, {{0, 3.7}});
    CHECK(comb_density(single, 0.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(comb_density(single, 0.13) == 0.0);

    const CombPrior two = comb_from_samples(0.5, {{-1, 2.0}, {1, 2.0}});
    CHECK(comb_density(two, -0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(comb_density(two, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(comb_density(two, 0.0) == 0.0);

    // Bell-shaped weights over 21 cells still sum to unit mass after rescaling.
    std::vector<std::pair<long, double>> bell;
    for (long l = -10; l <= 10; ++l)
        bell.emplace_back(l, std::exp(-0.08 * static_cast<double>(l * l)));
    const CombPrior smooth = comb_from_samples(0.1, bell);
    double mass = 0.0;
    for (const auto& [l, w] : smooth.weights)
        mass += 0.1 * w;
    CHECK(rel_err(mass, 1.0) < 1e-12);
    CHECK(prior_mass(Prior{smooth}, -2.0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(comb_from_samples(0.1, {{0, 0.0}, {1, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(comb_from_samples(0.1, {{0, -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(comb_from_samples(0.1, {{2, 1.0}, {2, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(comb_from_samples(-1.0, {{0, 1.0}}), std::invalid_argument);
}

TEST_CASE("kaiser density is continuous and even with the advertised boundary value") {
    const KaiserPrior p = make_kaiser(2.0, 8.0);
    const double boundary = 4.0 * p.alpha / p.L;

    CHECK(rel_err(kaiser_density(p, boundary), p.normalization * p.L) < 1e-10);

    // The two branches share the first derivative -(4/3)(pi alpha)^2 at the
    // kink, so +-1e-8 probes resolve a 1e-6 relative window only for alpha
    // below ~1.95; probe at alpha = 1.5 and tighter at alpha = 2.
    const KaiserPrior soft = make_kaiser(1.5, 8.0);
    const double soft_edge = 4.0 * soft.alpha / soft.L;
    const double inside = kaiser_density(soft, soft_edge * (1.0 - 1e-8));
    const double outside = kaiser_density(soft, soft_edge * (1.0 + 1e-8));
    CHECK(rel_err(inside, outside) < 1e-6);

    const double near_in = kaiser_density(p, boundary * (1.0 - 1e-11));
    const double near_out = kaiser_density(p, boundary * (1.0 + 1e-11));
    CHECK(rel_err(near_in, near_out) < 1e-8);

    Lcg rng;
    for (int i = 0; i < 50; ++i) {
        const double phi = rng.uniform(-3.0, 3.0);
        CHECK(kaiser_density(p, phi) == kaiser_density(p, -phi));
    }
}

TEST_CASE("kaiser density vanishes exactly at the sinc roots") {
    const KaiserPrior p = make_kaiser(2.0, 8.0);
    // Roots lie where alpha*sqrt((L phi/(4 alpha))^2 - 1) is a positive
    // integer; locate each by bracketed root finding on the sine factor.
    for (int k = 1; k <= 3; ++k) {
        const double u = std::sqrt(1.0 + std::pow(k / p.alpha, 2.0));
        const double expected = 4.0 * p.alpha * u / p.L;
        auto sine = [&](double phi) {
            const double w = p.L * phi / (4.0 * p.alpha);
            return std::sin(kPi * p.alpha * std::sqrt(w * w - 1.0));
        };
        const double located = pihl::num::find_root(sine, expected * (1.0 - 0.04 / k),
                                                    expected * (1.0 + 0.04 / k), 1e-14);
        CHECK(rel_err(located, expected) < 1e-10);
        CHECK(kaiser_density(p, located) < 1e-30);
        // The density is positive just off the root.
        CHECK(kaiser_density(p, located * (1.0 + 0.01 / k)) > 0.0);
    }
}

TEST_CASE("kaiser mass is one independently of the bandwidth") {
    for (const auto& [alpha, L, tol] : {std::tuple{1.5, 4.0, 1e-8},
                                        std::tuple{1.5, 32.0, 1e-8},
                                        std::tuple{3.0, 8.0, 1e-6}}) {
        const KaiserPrior p = make_kaiser(alpha, L);
        const double reach = 50.0 * 4.0 * alpha / L;
        CHECK(rel_err(prior_mass(Prior{p}, -reach, reach), 1.0) < tol);
    }
}

TEST_CASE("kaiser density obeys the bandwidth scaling covariance") {
    const double alpha = 1.7;
    const KaiserPrior base = make_kaiser(alpha, 6.0);
    for (double c : {0.37, 2.9}) {
        const KaiserPrior scaled = make_kaiser(alpha, c * 6.0);
        for (double phi : {0.0, 0.3, 0.9, 2.2}) {
            CHECK(rel_err(kaiser_density(scaled, phi / c), c * kaiser_density(base, phi)) <
                  1e-11);
        }
    }
}

TEST_CASE("normalization quadrature brackets the asymptotic expansion") {
    const double lead_const = 4.0 * std::sqrt(2.0) * std::pow(kPi, 4.0);
    for (double alpha : {3.0, 4.5, 6.0}) {
        const double n_quad = kaiser_normalization(alpha);
        const double lead = lead_const * std::pow(alpha, 3.5) * std::exp(-4.0 * kPi * alpha);
        const double ratio = n_quad / lead;
        CHECK(ratio > 0.9);
        CHECK(ratio < 1.0);
    }
    CHECK(rel_err(kaiser_normalization(4.0), kaiser_normalization_series(4.0)) < 1e-4);
    CHECK_THROWS_AS(kaiser_normalization(0.4), std::invalid_argument);
    CHECK_THROWS_AS(kaiser_normalization_series(0.9), std::invalid_argument);
}

TEST_CASE("every correction term of the normalization series is negative") {
    const double lead_const = 4.0 * std::sqrt(2.0) * std::pow(kPi, 4.0);
    for (double alpha : {1.0, 2.0, 4.0, 8.0}) {
        const double lead = lead_const * std::pow(alpha, 3.5) * std::exp(-4.0 * kPi * alpha);
        const double series = kaiser_normalization_series(alpha);
        CHECK(series < lead);
        CHECK(series > 0.0);
    }
    // Larger alpha pushes the corrected value toward the leading term.
    const double r2 = kaiser_normalization_series(2.0) /
                      (lead_const * std::pow(2.0, 3.5) * std::exp(-8.0 * kPi));
    const double r6 = kaiser_normalization_series(6.0) /
                      (lead_const * std::pow(6.0, 3.5) * std::exp(-24.0 * kPi));
    CHECK(r6 > r2);
}

TEST_CASE("analytic tail bound dominates the integrated tail mass") {
    for (double alpha : {1.0, 2.0, 4.0}) {
        const KaiserPrior p = make_kaiser(alpha, 8.0);
        const double direct = kaiser_tail_mass(p);
        const double bound = kaiser_tail_mass_bound(alpha);
        CHECK(direct >= 0.0);
        CHECK(bound >= direct);
    }
    // Exponential suppression: doubling alpha shrinks the bound far faster
    // than e^{-4 pi}.
    CHECK(kaiser_tail_mass_bound(4.0) / kaiser_tail_mass_bound(2.0) <
          std::exp(-4.0 * kPi));

    const double paren = kaiser_tail_mass_bound(2.0) /
                         (std::exp(kaiser_log_normalization(2.0)) * 16.0);
    const double want = 1.0 + (1.0 / 3.0 - std::log(3.0) / 4.0) / (16.0 * std::pow(kPi, 4.0));
    CHECK(rel_err(paren, want) < 1e-10);
}

TEST_CASE("smeared prior integrates to one and is even") {
    const SmearedRectPrior p = make_smeared(2.0, 64.0, 1.0);
    const double core = 4.0 * p.kaiser.alpha / p.kaiser.L;
    const double reach = 0.5 * p.delta + 50.0 * core;
    CHECK(rel_err(prior_mass(Prior{p}, -reach, reach), 1.0) < 1e-6);

    for (double phi : {0.1, 0.35, 0.49, 0.6})
        CHECK(rel_err(smeared_density(p, phi), smeared_density(p, -phi)) < 1e-9);
}

TEST_CASE("rectangular density dominates the narrowed smeared density") {
    const double alpha = 2.0, L = 64.0, delta = 1.0;
    const SmearedRectPrior p = make_smeared(alpha, L, delta);
    const double factor = 1.0 - 8.0 * alpha / (delta * L);
    for (int i = 0; i < 200; ++i) {
        const double phi = -0.5 * delta + delta * i / 199.0;
        const double lhs = 1.0 / delta;
        const double rhs = factor * smeared_density(p, phi);
        CHECK(lhs >= rhs - 1e-9);
    }
}

TEST_CASE("degenerate smearing width is rejected") {
    CHECK_THROWS_WITH_AS(make_smeared(2.0, 16.0, 1.0), "core width nonpositive",
                         std::invalid_argument);
    SmearedRectPrior broken;
    broken.kaiser = make_kaiser(2.0, 16.0);
    broken.delta = 0.5;
    CHECK_THROWS_AS(smeared_density(broken, 0.0), std::invalid_argument);
}

TEST_CASE("smeared mass outside the nominal support stays within the tail bound") {
    const std::tuple<double, double, double> triples[] = {
        {2.0, 64.0, 1.0}, {1.5, 40.0, 1.0}, {2.0, 32.0, 0.8}};
    for (const auto& [alpha, L, delta] : triples) {
        const SmearedRectPrior p = make_smeared(alpha, L, delta);
        const double core = 4.0 * alpha / L;
        const double reach = 0.5 * delta + 50.0 * core;
        const double total = prior_mass(Prior{p}, -reach, reach);
        const double inside = prior_mass(Prior{p}, -0.5 * delta, 0.5 * delta);
        const double outside = total - inside;
        CHECK(outside >= -1e-9);
        CHECK(outside <= kaiser_tail_mass_bound(alpha) + 1e-9);
    }
}

TEST_CASE("cosine transform certifies the bandlimit") {
    const KaiserPrior p = make_kaiser(2.0, 8.0);
    CHECK(rel_err(kaiser_cosine_transform(p, 0.0), 1.0) < 1e-8);
    for (double nu : {0.7, 1.9, 3.3})
        CHECK(rel_err(kaiser_cosine_transform(p, nu), kaiser_cosine_transform(p, -nu)) < 1e-12);
    CHECK(bandwidth_excess(p, 1e-10) < 1e-6);
}

TEST_CASE("densities are nonnegative across their numeric support") {
    Lcg rng;
    const RectPrior rect{0.8, -0.1};
    const CombPrior comb = comb_from_samples(0.3, {{-2, 1.0}, {0, 2.0}, {3, 0.5}});
    const KaiserPrior kaiser = make_kaiser(1.5, 6.0);
    const SmearedRectPrior smeared = make_smeared(2.0, 64.0, 1.0);

    for (int i = 0; i < 10000; ++i) {
        CHECK(rect_density(rect, rng.uniform(-2.0, 2.0)) >= 0.0);
        CHECK(comb_density(comb, rng.uniform(-2.0, 2.0)) >= 0.0);
        CHECK(kaiser_density(kaiser, rng.uniform(-6.0, 6.0)) >= 0.0);
    }
    for (int i = 0; i < 100; ++i)
        CHECK(smeared_density(smeared, rng.uniform(-1.0, 1.0)) >= 0.0);
}

TEST_CASE("prior JSON round trip preserves the density") {
    const QuadratureSpec spec;
    const Prior priors[] = {Prior{RectPrior{0.5, 0.1}},
                            Prior{comb_from_samples(0.25, {{-1, 1.0}, {2, 3.0}})},
                            Prior{make_kaiser(2.0, 8.0)},
                            Prior{make_smeared(2.0, 64.0, 1.0)}};
    for (const Prior& p : priors) {
        const auto j = pihl::io::prior_to_json(p);
        const Prior back = pihl::io::prior_from_json(j, spec);
        CHECK(back.index() == p.index());
        for (double phi : {0.0, 0.11, 0.42})
            CHECK(rel_err(prior_density(back, phi) + 1.0, prior_density(p, phi) + 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(pihl::io::prior_from_json(nlohmann::json{{"kind", "mystery"}}),
                    std::invalid_argument);
}
