#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "pihl/bounds.hpp"
#include "pihl/symmetric_eigen.hpp"

namespace pihl::est {

// Probe amplitudes on the integer eigenvalue grid m = 0..n.
// Invariant: sum |c_m|^2 == 1 within 1e-12.
struct ProbeState {
    int n = 0;
    std::vector<std::complex<double>> amplitudes;
    void validate() const;
};

// Symmetric Toeplitz cost matrix of the wrapped quadratic cost under the
// covariant measurement: entry (j,k) = A_{|j-k|} with A_0 = pi^2/3 and
// A_m = 2(-1)^m/m^2, the Fourier coefficients of theta^2 on [-pi, pi].
struct CostMatrix {
    int n = 0;
    std::vector<double> coeffs; // A_0..A_n
    num::SymmetricMatrix to_matrix() const;
};

struct MeasurementReport {
    int n = 0;
    double mse = 0.0;
    double rmse = 0.0;
    double n_rmse = 0.0;          // n * sqrt(mse)
    double bound2_delta1 = 0.0;   // asymptotic bound at delta = 1; NaN for n*delta <= 1
    bool sandwich_ok = true;      // bound2_delta1 <= mse (vacuously true on NaN)
};

struct OptimalProbe {
    ProbeState state;
    double mse = 0.0;
};

CostMatrix cost_matrix(int n);
// c^dagger A c; equals the quadrature of theta^2 |sum c_m e^{im theta}|^2/(2 pi).
double covariant_mse(const ProbeState& state);
// Minimal eigenpair of the cost matrix; amplitudes are nonnegative real.
OptimalProbe optimal_probe(int n);
ProbeState sine_state(int n);    // c_m proportional to sin(pi (m+1)/(n+2))
ProbeState noon_state(int n);    // c_0 = c_n = 1/sqrt(2)
ProbeState uniform_state(int n); // c_m = 1/sqrt(n+1)

// Builds a normalized state from raw amplitudes (must not be all zero).
ProbeState make_state(int n, std::vector<std::complex<double>> amplitudes);

// Conversion factor from integer-grid MSE to a generator with the given
// spectrum: MSE_physical = MSE_grid * scale with scale = 1/span^2.
double two_level_embedding(const bounds::GeneratorSpectrum& gen, int n);

// Draws estimates phi_tilde distributed as |f(phi_tilde - phi)|^2/(2 pi) on
// [phi - pi, phi + pi) via a piecewise-constant inverse CDF on 2^16 cells.
// Deterministic per seed.
class OutcomeSampler {
  public:
    OutcomeSampler(const ProbeState& state, std::uint64_t seed);
    double sample(double phi_true);
  private:
    std::vector<double> cdf_; // cumulative cell masses, back() == 1
    double cell_width_;
    std::mt19937_64 rng_;
};

double sample_outcome(const ProbeState& state, double phi_true, std::uint64_t seed);

// Optimal-probe MSE per n plus the asymptotic lower bound at delta = 1.
std::vector<MeasurementReport> scaling_sweep(const std::vector<int>& n_values);

} // namespace pihl::est
