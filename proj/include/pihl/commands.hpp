#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "pihl/bounds.hpp"
#include "pihl/quadrature.hpp"

namespace pihl::cli {

// Reads PI_HL_QUAD_TOL (default 1e-10) into both quadrature tolerances.
num::QuadratureSpec quadrature_spec_from_env();

struct SpectrumOpts {
    double lambda_minus = -0.5;
    double lambda_plus = 0.5;
    double lambda_span = 0.0;
    bool has_span = false; // when set, the span overrides the endpoints as +-span/2
    bounds::GeneratorSpectrum resolve() const;
};

struct OutputOpts {
    std::string path;   // empty -> stdout
    std::string format; // "csv" or "json"; per-command default when empty
};

struct BoundCmd {
    int n = 1;
    int k = 1;
    double delta = 0.0;
    SpectrumOpts spectrum;
    OutputOpts output; // default format: json
};

struct FiguresCmd {
    std::string out_dir = ".";
};

struct ScalingCmd {
    std::vector<int> n_values;
    std::string n_range; // "lo:hi" or "lo:hi:step", appended to n_values
    OutputOpts output;   // csv only
};

struct PriorCmd {
    std::string kind;        // rect | comb | kaiser | smeared
    double alpha = 2.0;
    double bandwidth = 8.0;  // L
    double delta = 0.0;
    double center = 0.0;
    std::string weights;     // comb cells as "l:w,l:w,..."
    int points = 401;
    OutputOpts output; // csv only
};

struct WellCmd {
    double width = 1.0;
    int points = 2000;
    std::string profile_out; // optional profile CSV path
    OutputOpts output;       // report format: csv (default) or json
};

struct FreqCmd {
    double time = 0.0;
    SpectrumOpts spectrum;
    OutputOpts output; // csv (default) or json
};

// Each command returns the process exit code: 0 iff no error was reported.
// Warnings go to err and do not affect the exit code.
int run_bound(const BoundCmd& cmd, std::ostream& out, std::ostream& err);
int run_figures(const FiguresCmd& cmd, std::ostream& out, std::ostream& err);
int run_scaling(const ScalingCmd& cmd, std::ostream& out, std::ostream& err);
int run_prior(const PriorCmd& cmd, std::ostream& out, std::ostream& err);
int run_well(const WellCmd& cmd, std::ostream& out, std::ostream& err);
int run_freq(const FreqCmd& cmd, std::ostream& out, std::ostream& err);

} // namespace pihl::cli
