#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "pihl/quadrature.hpp"

namespace pihl::priors {

// Flat density 1/delta on [center - delta/2, center + delta/2).
struct RectPrior {
    double delta = 0.0;
    double center = 0.0;
};

// Piecewise-constant density: value p_l on cell [l*delta - delta/2, l*delta + delta/2).
// Invariant: delta * sum(p_l) == 1.
struct CombPrior {
    double delta = 0.0;
    std::vector<std::pair<long, double>> weights;
};

// Squared Fourier transform of the Kaiser window, normalized to unit mass.
// The density switches between a sinh^4 core (|L*phi/(4*alpha)| < 1) and
// sinc^4 tails; both branches are evaluated in log-space.
struct KaiserPrior {
    double alpha = 0.0;
    double L = 0.0;            // bandwidth; the transform vanishes outside [-L/2, L/2]
    double normalization = 0.0; // N_alpha, may underflow for very large alpha
    double log_normalization = 0.0;
};

// Rectangular prior of width delta smoothed by the Kaiser density, with the
// smearing window narrowed by the core half-width 4*alpha/L on each side.
struct SmearedRectPrior {
    KaiserPrior kaiser;
    double delta = 0.0;
};

using Prior = std::variant<RectPrior, CombPrior, KaiserPrior, SmearedRectPrior>;

KaiserPrior make_kaiser(double alpha, double L, const num::QuadratureSpec& spec = {});
SmearedRectPrior make_smeared(double alpha, double L, double delta,
                              const num::QuadratureSpec& spec = {});
// Rescales the weights so the result integrates to 1; throws if no weight is
// positive or a cell index repeats.
CombPrior comb_from_samples(double delta, const std::vector<std::pair<long, double>>& samples);

double rect_density(const RectPrior& prior, double phi);
double comb_density(const CombPrior& prior, double phi);
double kaiser_density(const KaiserPrior& prior, double phi);
double smeared_density(const SmearedRectPrior& prior, double phi,
                       const num::QuadratureSpec& spec = {});
// Dispatch over Prior; the quadrature spec only matters for the smeared kind.
double prior_density(const Prior& prior, double phi, const num::QuadratureSpec& spec = {});

// 1 / integral of the unnormalized density; independent of L.  Requires
// alpha >= 1/2.
double kaiser_normalization(double alpha, const num::QuadratureSpec& spec = {});
double kaiser_log_normalization(double alpha, const num::QuadratureSpec& spec = {});
// Asymptotic six-correction expansion of the normalization, accurate to
// ~1e-4 relative for alpha >= 3.  All correction terms are negative.
double kaiser_normalization_series(double alpha);
// Analytic upper bound on the mass outside the core |phi| > 4*alpha/L.
double kaiser_tail_mass_bound(double alpha, const num::QuadratureSpec& spec = {});
// Directly integrated mass outside the core (L-independent).
double kaiser_tail_mass(const KaiserPrior& prior, const num::QuadratureSpec& spec = {});

// Real cosine transform of the density at frequency nu (the density is
// even).  nu counts cycles per radian, the convention under which the
// transform is supported exactly on [-L/2, L/2].
double kaiser_cosine_transform(const KaiserPrior& prior, double nu,
                               const num::QuadratureSpec& spec = {});
// Largest |transform| over a frequency grid strictly outside [-L/2, L/2];
// certifies the bandlimit numerically.
double bandwidth_excess(const KaiserPrior& prior, double tol);

// Mass of the prior on [lo, hi]; analytic for rect/comb, quadrature otherwise.
double prior_mass(const Prior& prior, double lo, double hi,
                  const num::QuadratureSpec& spec = {});

} // namespace pihl::priors
