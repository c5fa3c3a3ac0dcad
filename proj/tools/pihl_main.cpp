#include <cstdint>
#include <iostream>

#include <CLI11.hpp>

#include "pihl/commands.hpp"

namespace {

void add_spectrum_flags(CLI::App* sub, pihl::cli::SpectrumOpts& spectrum) {
    sub->add_option("--lambda-minus", spectrum.lambda_minus,
                    "smallest generator eigenvalue (default -1/2)");
    sub->add_option("--lambda-plus", spectrum.lambda_plus,
                    "largest generator eigenvalue (default 1/2)");
    auto* span = sub->add_option("--lambda-span", spectrum.lambda_span,
                                 "eigenvalue span; overrides the endpoints as +-span/2");
    span->each([&spectrum](const std::string&) { spectrum.has_span = true; });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-estimation bounds, priors and covariant-measurement experiments"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    app.add_option("--seed", seed,
                   "RNG seed (reserved; the provided commands are deterministic)");

    pihl::cli::BoundCmd bound;
    CLI::App* sub_bound = app.add_subcommand("bound", "evaluate every bound for one setting");
    sub_bound->add_option("--n", bound.n, "coherent uses of the phase gate")
        ->check(CLI::PositiveNumber);
    sub_bound->add_option("--k", bound.k, "independent repetitions")->check(CLI::PositiveNumber);
    sub_bound->add_option("--delta", bound.delta, "prior width in radians")->required();
    add_spectrum_flags(sub_bound, bound.spectrum);
    sub_bound->add_option("--out", bound.output.path, "output file (default stdout)");
    sub_bound->add_option("--format", bound.output.format, "csv or json (default json)");

    pihl::cli::FiguresCmd figures;
    CLI::App* sub_figures =
        app.add_subcommand("figures", "emit the three figure CSVs plus gnuplot scripts");
    sub_figures->add_option("--out", figures.out_dir, "existing output directory (default .)");

    pihl::cli::ScalingCmd scaling;
    CLI::App* sub_scaling =
        app.add_subcommand("scaling", "optimal-probe error scaling versus the bound");
    sub_scaling->add_option("--n", scaling.n_values, "probe sizes (repeatable)");
    sub_scaling->add_option("--n-range", scaling.n_range, "lo:hi or lo:hi:step");
    sub_scaling->add_option("--out", scaling.output.path, "output file (default stdout)");

    pihl::cli::PriorCmd prior;
    CLI::App* sub_prior = app.add_subcommand("prior", "sample a prior density with summaries");
    sub_prior->add_option("kind", prior.kind, "rect, comb, kaiser or smeared")->required();
    sub_prior->add_option("--alpha", prior.alpha, "tail parameter");
    sub_prior->add_option("--bandwidth", prior.bandwidth, "bandwidth L");
    sub_prior->add_option("--delta", prior.delta, "width in radians");
    sub_prior->add_option("--center", prior.center, "rect center (default 0)");
    sub_prior->add_option("--weights", prior.weights, "comb cells as l:w,l:w,...");
    sub_prior->add_option("--points", prior.points, "sample count")->check(CLI::PositiveNumber);
    sub_prior->add_option("--out", prior.output.path, "output file (default stdout)");

    pihl::cli::WellCmd well;
    CLI::App* sub_well =
        app.add_subcommand("well", "infinite-well ground state on a finite grid");
    sub_well->add_option("--width", well.width, "well width")->check(CLI::PositiveNumber);
    sub_well->add_option("--points", well.points, "interior grid points")
        ->check(CLI::PositiveNumber);
    sub_well->add_option("--out", well.profile_out, "optional profile CSV path");
    sub_well->add_option("--format", well.output.format, "csv or json (default csv)");

    pihl::cli::FreqCmd freq;
    CLI::App* sub_freq = app.add_subcommand("freq", "asymptotic frequency-estimation bound");
    sub_freq->add_option("--time", freq.time, "total interrogation time")->required();
    add_spectrum_flags(sub_freq, freq.spectrum);
    sub_freq->add_option("--out", freq.output.path, "output file (default stdout)");
    sub_freq->add_option("--format", freq.output.format, "csv or json (default csv)");

    CLI11_PARSE(app, argc, argv);

    if (*sub_bound)
        return pihl::cli::run_bound(bound, std::cout, std::cerr);
    if (*sub_figures)
        return pihl::cli::run_figures(figures, std::cout, std::cerr);
    if (*sub_scaling)
        return pihl::cli::run_scaling(scaling, std::cout, std::cerr);
    if (*sub_prior)
        return pihl::cli::run_prior(prior, std::cout, std::cerr);
    if (*sub_well)
        return pihl::cli::run_well(well, std::cout, std::cerr);
    if (*sub_freq)
        return pihl::cli::run_freq(freq, std::cout, std::cerr);
    return 1;
}
