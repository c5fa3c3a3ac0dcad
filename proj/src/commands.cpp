#include "pihl/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pihl/estimation.hpp"
#include "pihl/priors.hpp"
#include "pihl/serialize.hpp"

namespace pihl::cli {

namespace {

constexpr double kPi = std::numbers::pi;

using io::format_number;

// Emit to the target path atomically, or to the stream when no path is set.
void emit(const OutputOpts& output, const std::string& content, std::ostream& out) {
    if (output.path.empty()) {
        out << content;
    } else {
        io::write_text_atomic(output.path, content);
        out << "wrote " << output.path << "\n";
    }
}

std::string resolve_format(const OutputOpts& output, const std::string& fallback) {
    if (output.format.empty())
        return fallback;
    if (output.format != "csv" && output.format != "json")
        throw std::invalid_argument("format must be csv or json");
    return output.format;
}

std::vector<int> parse_range(const std::string& text) {
    std::vector<long> parts;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ':'))
        parts.push_back(std::stol(piece));
    if (parts.size() < 2 || parts.size() > 3)
        throw std::invalid_argument("range must be lo:hi or lo:hi:step");
    const long lo = parts[0];
    const long hi = parts[1];
    const long step = parts.size() == 3 ? parts[2] : 1;
    if (lo < 1 || hi < lo || step < 1)
        throw std::invalid_argument("range needs 1 <= lo <= hi and step >= 1");
    std::vector<int> out;
    for (long v = lo; v <= hi; v += step)
        out.push_back(static_cast<int>(v));
    return out;
}

std::string bound_report_csv(const bounds::BoundReport& r) {
    std::string text = "bound_bandlimited,bound1_raw,bound2,conventional_hl,pi_hl,"
                       "alpha,L,epsilon,N,delta\n";
    const double values[] = {r.bound_bandlimited, r.bound1_raw, r.bound2, r.conventional_hl,
                             r.pi_hl,             r.alpha,      r.L,      r.epsilon,
                             r.N,                 r.delta};
    for (std::size_t i = 0; i < std::size(values); ++i)
        text += (i == 0 ? "" : ",") + format_number(values[i]);
    text += "\n";
    return text;
}

std::string gp_script(const std::string& body) {
    return "set datafile separator ','\n" + body;
}

} // namespace

num::QuadratureSpec quadrature_spec_from_env() {
    num::QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    spec.rel_tol = 1e-10;
    if (const char* raw = std::getenv("PI_HL_QUAD_TOL")) {
        char* end = nullptr;
        const double tol = std::strtod(raw, &end);
        if (end != raw && tol > 0.0 && std::isfinite(tol)) {
            spec.abs_tol = tol;
            spec.rel_tol = tol;
        }
    }
    return spec;
}

bounds::GeneratorSpectrum SpectrumOpts::resolve() const {
    bounds::GeneratorSpectrum gen;
    if (has_span) {
        gen.lambda_minus = -0.5 * lambda_span;
        gen.lambda_plus = 0.5 * lambda_span;
    } else {
        gen.lambda_minus = lambda_minus;
        gen.lambda_plus = lambda_plus;
    }
    gen.validate();
    return gen;
}

int run_bound(const BoundCmd& cmd, std::ostream& out, std::ostream& err) {
    try {
        const std::string format = resolve_format(cmd.output, "json");
        if (!(cmd.delta > 0.0))
            throw std::invalid_argument("bound requires --delta > 0");
        const bounds::GeneratorSpectrum gen = cmd.spectrum.resolve();
        const bounds::BoundReport report =
            bounds::make_bound_report(cmd.n, cmd.k, gen, cmd.delta);

        if (report.N * report.delta <= bounds::crossover())
            err << "warning: bound vacuous below N*delta = 26.09 (N*delta = "
                << format_number(report.N * report.delta) << ")\n";

        if (format == "json")
            emit(cmd.output, io::bound_report_to_json(report).dump(2) + "\n", out);
        else
            emit(cmd.output, bound_report_csv(report), out);
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_figures(const FiguresCmd& cmd, std::ostream& out, std::ostream& err) {
    try {
        const std::filesystem::path dir(cmd.out_dir);
        if (!std::filesystem::is_directory(dir))
            throw std::invalid_argument("output directory does not exist: " + cmd.out_dir);
        const num::QuadratureSpec spec = quadrature_spec_from_env();

        std::string nalpha = "alpha,ratio_asymptote,ratio_series\n";
        for (int i = 0; i <= 50; ++i) {
            const double alpha = (10 + i) / 10.0;
            const double n_quad = priors::kaiser_normalization(alpha, spec);
            const double lead = 4.0 * std::sqrt(2.0) * std::pow(kPi, 4.0) *
                                std::pow(alpha, 3.5) * std::exp(-4.0 * kPi * alpha);
            const double series = priors::kaiser_normalization_series(alpha);
            nalpha += format_number(alpha) + "," + format_number(n_quad / lead) + "," +
                      format_number(n_quad / series) + "\n";
        }
        io::write_text_atomic((dir / "fig_nalpha.csv").string(), nalpha);
        out << "wrote " << (dir / "fig_nalpha.csv").string() << "\n";

        std::string repsilon = "eps,r_over_eps2,cap\n";
        for (int k = 1; k <= 200; ++k) {
            const double eps = k / 600.0;
            repsilon += format_number(eps) + "," +
                        format_number(bounds::r_epsilon(eps) / (eps * eps)) + ",1.52661\n";
        }
        io::write_text_atomic((dir / "fig_repsilon.csv").string(), repsilon);
        out << "wrote " << (dir / "fig_repsilon.csv").string() << "\n";

        std::string bound_csv = "N_delta,bound1_scaled,bound2_scaled\n";
        for (int i = 0; i < 50; ++i) {
            const double x = 30.0 * std::pow(1e6 / 30.0, i / 49.0);
            const bounds::BoundInputs inputs{x, 1.0};
            const double scale = x * x / (kPi * kPi);
            const double b1 = bounds::bound1(inputs, bounds::tuned_params(inputs)) * scale;
            const double b2 = bounds::bound2(inputs) * scale;
            bound_csv += format_number(x) + "," + format_number(b1) + "," +
                         format_number(b2) + "\n";
        }
        io::write_text_atomic((dir / "fig_bound.csv").string(), bound_csv);
        out << "wrote " << (dir / "fig_bound.csv").string() << "\n";

        io::write_text_atomic(
            (dir / "fig_nalpha.gp").string(),
            gp_script("set xlabel 'alpha'\n"
                      "set ylabel 'normalization ratio'\n"
                      "plot 'fig_nalpha.csv' skip 1 using 1:2 with lines"
                      " title 'quadrature / leading asymptote', \\\n"
                      "     'fig_nalpha.csv' skip 1 using 1:3 with lines"
                      " title 'quadrature / corrected series'\n"));
        io::write_text_atomic(
            (dir / "fig_repsilon.gp").string(),
            gp_script("set xlabel 'eps'\n"
                      "set ylabel 'R(eps)/eps^2'\n"
                      "plot 'fig_repsilon.csv' skip 1 using 1:2 with lines title 'ratio', \\\n"
                      "     'fig_repsilon.csv' skip 1 using 1:3 with lines"
                      " title 'cap 1.52661'\n"));
        io::write_text_atomic(
            (dir / "fig_bound.gp").string(),
            gp_script("set logscale x\n"
                      "set xlabel 'N*delta'\n"
                      "set ylabel 'bound * N^2/pi^2'\n"
                      "plot 'fig_bound.csv' skip 1 using 1:2 with lines"
                      " title 'tail-corrected bound', \\\n"
                      "     'fig_bound.csv' skip 1 using 1:3 with lines"
                      " title 'asymptotic bound', \\\n"
                      "     1 with lines title 'asymptote'\n"));
        for (const char* name : {"fig_nalpha.gp", "fig_repsilon.gp", "fig_bound.gp"})
            out << "wrote " << (dir / name).string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_scaling(const ScalingCmd& cmd, std::ostream& out, std::ostream& err) {
    try {
        std::vector<int> ns = cmd.n_values;
        if (!cmd.n_range.empty()) {
            const std::vector<int> extra = parse_range(cmd.n_range);
            ns.insert(ns.end(), extra.begin(), extra.end());
        }
        if (ns.empty())
            throw std::invalid_argument("scaling requires --n values or an --n-range");
        for (int n : ns)
            if (n < 1)
                throw std::invalid_argument("scaling requires n >= 1");

        const auto rows = est::scaling_sweep(ns);
        std::string text = "n,mse,rmse,n_rmse,bound2_delta1,sandwich_ok\n";
        int violations = 0;
        for (const auto& r : rows) {
            text += std::to_string(r.n) + "," + format_number(r.mse) + "," +
                    format_number(r.rmse) + "," + format_number(r.n_rmse) + "," +
                    format_number(r.bound2_delta1) + "," + (r.sandwich_ok ? "1" : "0") + "\n";
            if (!r.sandwich_ok)
                ++violations;
        }
        if (violations > 0)
            err << "warning: " << violations << " sandwich violation(s) in sweep\n";
        emit(cmd.output, text, out);
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_prior(const PriorCmd& cmd, std::ostream& out, std::ostream& err) {
    try {
        const num::QuadratureSpec spec = quadrature_spec_from_env();
        if (cmd.points < 2)
            throw std::invalid_argument("prior sampling needs --points >= 2");

        priors::Prior prior;
        double lo = 0.0, hi = 0.0;
        double total = 0.0, tail = 0.0;
        double excess = std::numeric_limits<double>::quiet_NaN();

        if (cmd.kind == "rect") {
            if (!(cmd.delta > 0.0))
                throw std::invalid_argument("rect prior requires --delta > 0");
            prior = priors::RectPrior{cmd.delta, cmd.center};
            lo = cmd.center - cmd.delta;
            hi = cmd.center + cmd.delta;
            total = 1.0;
            tail = 0.0;
        } else if (cmd.kind == "comb") {
            if (!(cmd.delta > 0.0))
                throw std::invalid_argument("comb prior requires --delta > 0");
            if (cmd.weights.empty())
                throw std::invalid_argument("comb prior requires --weights l:w,l:w,...");
            std::vector<std::pair<long, double>> samples;
            std::stringstream ss(cmd.weights);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const auto colon = item.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("weights entries must look like l:w");
                samples.emplace_back(std::stol(item.substr(0, colon)),
                                     std::stod(item.substr(colon + 1)));
            }
            const priors::CombPrior comb = priors::comb_from_samples(cmd.delta, samples);
            long lmin = comb.weights.front().first;
            long lmax = comb.weights.back().first;
            lo = lmin * cmd.delta - cmd.delta;
            hi = lmax * cmd.delta + cmd.delta;
            total = 0.0;
            for (const auto& [l, w] : comb.weights)
                total += cmd.delta * w;
            tail = 0.0;
            prior = comb;
        } else if (cmd.kind == "kaiser") {
            const priors::KaiserPrior kp = priors::make_kaiser(cmd.alpha, cmd.bandwidth, spec);
            const double core = 4.0 * kp.alpha / kp.L;
            lo = -3.0 * core;
            hi = 3.0 * core;
            total = priors::kaiser_cosine_transform(kp, 0.0, spec);
            tail = priors::kaiser_tail_mass(kp, spec);
            excess = priors::bandwidth_excess(kp, std::max(spec.abs_tol, 1e-12));
            prior = kp;
        } else if (cmd.kind == "smeared") {
            if (!(cmd.delta > 0.0))
                throw std::invalid_argument("smeared prior requires --delta > 0");
            if (!(cmd.delta > 8.0 * cmd.alpha / cmd.bandwidth))
                throw std::invalid_argument(
                    "smeared prior requires delta > 8*alpha/L (core width nonpositive)");
            const priors::SmearedRectPrior sp =
                priors::make_smeared(cmd.alpha, cmd.bandwidth, cmd.delta, spec);
            const double core = 4.0 * sp.kaiser.alpha / sp.kaiser.L;
            lo = -(0.5 * sp.delta + 2.0 * core);
            hi = 0.5 * sp.delta + 2.0 * core;
            const double reach = 0.5 * sp.delta + 50.0 * core;
            total = priors::prior_mass(sp, -reach, reach, spec);
            tail = total - priors::prior_mass(sp, -0.5 * sp.delta, 0.5 * sp.delta, spec);
            prior = sp;
        } else {
            throw std::invalid_argument("prior kind must be rect, comb, kaiser or smeared");
        }

        std::string text = "phi,density\n";
        for (int i = 0; i < cmd.points; ++i) {
            const double phi = lo + (hi - lo) * i / (cmd.points - 1);
            text += format_number(phi) + "," +
                    format_number(priors::prior_density(prior, phi, spec)) + "\n";
        }
        text += "\ntotal_mass,tail_mass,bandwidth_excess\n";
        text += format_number(total) + "," + format_number(tail) + "," + format_number(excess) +
                "\n";
        emit(cmd.output, text, out);
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_well(const WellCmd& cmd, std::ostream& out, std::ostream& err) {
    try {
        const std::string format = resolve_format(cmd.output, "csv");
        if (cmd.points < 20)
            throw std::invalid_argument("well needs --points >= 20 for the two-grid estimate");

        const bounds::WellGroundState fine = bounds::well_ground_state(cmd.width, cmd.points);
        const bounds::WellGroundState coarse =
            bounds::well_ground_state(cmd.width, cmd.points / 2);
        const double analytic = kPi * kPi / (cmd.width * cmd.width);
        const double err_fine = std::abs(fine.energy - analytic);
        const double err_coarse = std::abs(coarse.energy - analytic);
        const double h_fine = cmd.width / (cmd.points + 1);
        const double h_coarse = cmd.width / (cmd.points / 2 + 1);
        const double order = std::log(err_coarse / err_fine) / std::log(h_coarse / h_fine);

        if (format == "json") {
            nlohmann::json j{{"ground_energy", fine.energy},
                             {"analytic_energy", analytic},
                             {"relative_error", err_fine / analytic},
                             {"convergence_order", order},
                             {"width", cmd.width},
                             {"points", cmd.points}};
            emit(cmd.output, j.dump(2) + "\n", out);
        } else {
            std::string text = "ground_energy,analytic_energy,relative_error,convergence_order\n";
            text += format_number(fine.energy) + "," + format_number(analytic) + "," +
                    format_number(err_fine / analytic) + "," + format_number(order) + "\n";
            emit(cmd.output, text, out);
        }

        if (!cmd.profile_out.empty()) {
            // The discrete ground profile and the sampled sine share the unit
            // 2-norm scale, so the columns are directly comparable.
            const int m = cmd.points;
            const double h = cmd.width / (m + 1);
            double norm2 = 0.0;
            for (int i = 1; i <= m; ++i) {
                const double s = std::sin(kPi * i * h / cmd.width);
                norm2 += s * s;
            }
            const double scale = 1.0 / std::sqrt(norm2);
            std::string text = "x,psi,sine\n";
            for (int i = 1; i <= m; ++i) {
                const double x = i * h;
                text += format_number(x) + "," + format_number(fine.profile[i - 1]) + "," +
                        format_number(scale * std::sin(kPi * x / cmd.width)) + "\n";
            }
            io::write_text_atomic(cmd.profile_out, text);
            out << "wrote " << cmd.profile_out << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_freq(const FreqCmd& cmd, std::ostream& out, std::ostream& err) {
    try {
        const std::string format = resolve_format(cmd.output, "csv");
        const bounds::GeneratorSpectrum gen = cmd.spectrum.resolve();
        const double value = bounds::frequency_bound(cmd.time, gen);
        if (format == "json") {
            nlohmann::json j{
                {"delta_omega", value}, {"time", cmd.time}, {"lambda_span", gen.span()}};
            emit(cmd.output, j.dump(2) + "\n", out);
        } else {
            std::string text = "delta_omega,time,lambda_span\n";
            text += format_number(value) + "," + format_number(cmd.time) + "," +
                    format_number(gen.span()) + "\n";
            emit(cmd.output, text, out);
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace pihl::cli
