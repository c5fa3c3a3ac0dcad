#include "pihl/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pihl::est {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSamplerCells = 1 << 16;

ProbeState normalized(int n, std::vector<std::complex<double>> amps) {
    double norm2 = 0.0;
    for (const auto& c : amps)
        norm2 += std::norm(c);
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw std::invalid_argument("probe amplitudes must have positive finite norm");
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : amps)
        c *= inv;
    ProbeState s;
    s.n = n;
    s.amplitudes = std::move(amps);
    return s;
}

} // namespace

void ProbeState::validate() const {
    if (n < 1)
        throw std::invalid_argument("probe needs n >= 1");
    if (amplitudes.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("probe needs n+1 amplitudes");
    double norm2 = 0.0;
    for (const auto& c : amplitudes) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("probe amplitudes must be finite");
        norm2 += std::norm(c);
    }
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw std::invalid_argument("probe amplitudes must be normalized");
}

num::SymmetricMatrix CostMatrix::to_matrix() const {
    num::SymmetricMatrix a(n + 1);
    for (int j = 0; j <= n; ++j)
        for (int k = j; k <= n; ++k)
            a.set(j, k, coeffs[k - j]);
    return a;
}

CostMatrix cost_matrix(int n) {
    if (n < 1)
        throw std::invalid_argument("cost matrix needs n >= 1");
    CostMatrix a;
    a.n = n;
    a.coeffs.resize(n + 1);
    a.coeffs[0] = kPi * kPi / 3.0;
    for (int m = 1; m <= n; ++m)
        a.coeffs[m] = 2.0 * (m % 2 == 0 ? 1.0 : -1.0) / (static_cast<double>(m) * m);
    return a;
}

double covariant_mse(const ProbeState& state) {
    state.validate();
    const CostMatrix a = cost_matrix(state.n);
    double mse = a.coeffs[0]; // unit norm collapses the diagonal sum
    for (int j = 0; j <= state.n; ++j)
        for (int k = j + 1; k <= state.n; ++k)
            mse += 2.0 * a.coeffs[k - j] *
                   (std::conj(state.amplitudes[j]) * state.amplitudes[k]).real();
    return mse;
}

OptimalProbe optimal_probe(int n) {
    const num::EigenPair pair = num::sym_eig_min(cost_matrix(n).to_matrix());

    // The minimal eigenvector is elementwise positive up to overall sign
    // (sine-like envelope); after sign canonicalization only endpoint dust
    // can dip below zero.
    std::vector<std::complex<double>> amps(pair.vector.size());
    for (std::size_t i = 0; i < pair.vector.size(); ++i) {
        if (pair.vector[i] < -1e-8)
            throw std::runtime_error("optimal probe eigenvector not positive");
        amps[i] = std::max(pair.vector[i], 0.0);
    }
    OptimalProbe out;
    out.state = normalized(n, std::move(amps));
    out.mse = pair.value;
    return out;
}

ProbeState sine_state(int n) {
    if (n < 1)
        throw std::invalid_argument("sine state needs n >= 1");
    std::vector<std::complex<double>> amps(n + 1);
    for (int m = 0; m <= n; ++m)
        amps[m] = std::sin(kPi * (m + 1) / (n + 2));
    return normalized(n, std::move(amps));
}

ProbeState noon_state(int n) {
    if (n < 1)
        throw std::invalid_argument("noon state needs n >= 1");
    std::vector<std::complex<double>> amps(n + 1);
    amps[0] = 1.0;
    amps[n] = 1.0;
    return normalized(n, std::move(amps));
}

ProbeState uniform_state(int n) {
    if (n < 1)
        throw std::invalid_argument("uniform state needs n >= 1");
    std::vector<std::complex<double>> amps(n + 1, std::complex<double>(1.0, 0.0));
    return normalized(n, std::move(amps));
}

ProbeState make_state(int n, std::vector<std::complex<double>> amplitudes) {
    if (n < 1)
        throw std::invalid_argument("probe needs n >= 1");
    if (amplitudes.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("probe needs n+1 amplitudes");
    return normalized(n, std::move(amplitudes));
}

double two_level_embedding(const bounds::GeneratorSpectrum& gen, int n) {
    gen.validate();
    if (n < 1)
        throw std::invalid_argument("embedding needs n >= 1");
    const double span = gen.span();
    return 1.0 / (span * span);
}

OutcomeSampler::OutcomeSampler(const ProbeState& state, std::uint64_t seed) : rng_(seed) {
    state.validate();
    cell_width_ = 2.0 * kPi / kSamplerCells;
    cdf_.resize(kSamplerCells);

    double total = 0.0;
    for (int j = 0; j < kSamplerCells; ++j) {
        const double theta = -kPi + (j + 0.5) * cell_width_;
        std::complex<double> f = 0.0;
        for (int m = 0; m <= state.n; ++m)
            f += state.amplitudes[m] * std::polar(1.0, m * theta);
        total += std::norm(f);
        cdf_[j] = total;
    }
    for (double& c : cdf_)
        c /= total;
    cdf_.back() = 1.0;
}

double OutcomeSampler::sample(double phi_true) {
    // 53-bit uniform in [0, 1); engine-portable construction.
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const std::size_t j = std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
    const double lo = j == 0 ? 0.0 : cdf_[j - 1];
    const double mass = cdf_[j] - lo;
    const double frac = mass > 0.0 ? (u - lo) / mass : 0.5;
    const double theta = -kPi + (j + frac) * cell_width_;
    return phi_true + theta;
}

double sample_outcome(const ProbeState& state, double phi_true, std::uint64_t seed) {
    OutcomeSampler sampler(state, seed);
    return sampler.sample(phi_true);
}

std::vector<MeasurementReport> scaling_sweep(const std::vector<int>& n_values) {
    if (n_values.empty())
        throw std::invalid_argument("scaling sweep needs at least one n");
    std::vector<MeasurementReport> out;
    out.reserve(n_values.size());
    for (int n : n_values) {
        if (n < 1)
            throw std::invalid_argument("scaling sweep needs n >= 1");
        MeasurementReport row;
        row.n = n;
        row.mse = optimal_probe(n).mse;
        row.rmse = std::sqrt(row.mse);
        row.n_rmse = n * row.rmse;
        if (n > 1) {
            row.bound2_delta1 = bounds::bound2(bounds::BoundInputs{static_cast<double>(n), 1.0});
            row.sandwich_ok = row.bound2_delta1 <= row.mse;
        } else {
            row.bound2_delta1 = std::numeric_limits<double>::quiet_NaN();
            row.sandwich_ok = true;
        }
        out.push_back(row);
    }
    return out;
}

} // namespace pihl::est
