#pragma once

#include <vector>

#include "pihl/quadrature.hpp"

namespace pihl::bounds {

// Extreme eigenvalues of the phase generator; only the span enters the bounds.
struct GeneratorSpectrum {
    double lambda_minus = -0.5;
    double lambda_plus = 0.5;
    void validate() const;
    double span() const { return lambda_plus - lambda_minus; }
};

// Resources of one estimation run: N = n * (lambda_plus - lambda_minus)
// (inverse radians) and the prior width delta (radians).
struct BoundInputs {
    double N = 0.0;
    double delta = 0.0;
    void validate() const;
    double product() const { return N * delta; }
};

// Tail/bandwidth parameters of the rectangular-prior bound.  epsilon is the
// derived ratio 4*alpha/(delta*L); the closed-form tail correction needs
// epsilon <= 1/3.
struct BoundParams {
    double alpha = 0.0;
    double L = 0.0;
    double epsilon = 0.0;
};

struct ConventionalLimits {
    double sql = 0.0; // 1/(sqrt(k n) span)
    double hl = 0.0;  // 1/(sqrt(k) n span)
};

struct WellGroundState {
    double energy = 0.0;
    std::vector<double> profile; // unit 2-norm, positive orientation
};

// Every squared-error bound below is in radians^2; conventional_limits,
// pi_corrected_hl and frequency_bound return errors in radians (or s^-1).

ConventionalLimits conventional_limits(int n, int k, const GeneratorSpectrum& gen);
double pi_corrected_hl(int n, const GeneratorSpectrum& gen);
double bandlimited_bound(double N, double L);
double frequency_bound(double T, const GeneratorSpectrum& gen);

// Ground state of the Dirichlet second-difference operator on (0, W) with
// grid_points interior points; energy -> pi^2/W^2 with an O(h^2) defect.
WellGroundState well_ground_state(double W, int grid_points);

// Closed-form tail correction R(eps), defined for 0 <= eps <= 1/3.
double r_epsilon(double eps);
// Same quantity from the defining three-integral expression; the improper
// upper limit is mapped to a finite interval by t -> 1/t, so the quadrature
// sees only smooth bounded integrands.
double r_epsilon_numeric(double eps, const num::QuadratureSpec& spec = {});

double epsilon_of(const BoundInputs& inputs, const BoundParams& params);

// Rectangular-prior squared-error bound with explicit tail penalty; may be
// negative (callers clamp at zero for display).
double bound1(const BoundInputs& inputs, const BoundParams& params);
// Asymptotic squared-error bound (pi^2/N^2)(1 - sqrt(8 ln(N delta)/(N delta))).
double bound2(const BoundInputs& inputs);

// alpha = ln(N delta)/4 with L = sqrt(8 alpha N / delta); requires N delta > 1.
BoundParams default_params(const BoundInputs& inputs);
// Scan plus golden-section refinement of bound1 over alpha (L kept on the
// sqrt(8 alpha N/delta) rule, epsilon <= 1/3); used for the bound-comparison
// figure where the default alpha is far from optimal.
BoundParams tuned_params(const BoundInputs& inputs);

// Smallest N*delta with a positive asymptotic bound: root of x = 8 ln x.
double crossover();

struct BoundReport {
    double bound_bandlimited = 0.0; // rad^2
    double bound1_raw = 0.0;        // rad^2, NaN when epsilon > 1/3
    double bound2 = 0.0;            // rad^2
    double conventional_hl = 0.0;   // rad
    double pi_hl = 0.0;             // rad
    double alpha = 0.0;
    double L = 0.0;
    double epsilon = 0.0;
    double N = 0.0;
    double delta = 0.0;
};

BoundReport make_bound_report(int n, int k, const GeneratorSpectrum& gen, double delta);

} // namespace pihl::bounds
