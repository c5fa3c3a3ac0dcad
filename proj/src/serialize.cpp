#include "pihl/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace pihl::io {

using nlohmann::json;

json prior_to_json(const priors::Prior& prior) {
    return std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, priors::RectPrior>) {
                return json{{"kind", "rect"}, {"delta", p.delta}, {"center", p.center}};
            } else if constexpr (std::is_same_v<T, priors::CombPrior>) {
                json weights = json::array();
                for (const auto& [l, w] : p.weights)
                    weights.push_back(json::array({l, w}));
                return json{{"kind", "comb"}, {"delta", p.delta}, {"weights", weights}};
            } else if constexpr (std::is_same_v<T, priors::KaiserPrior>) {
                return json{{"kind", "kaiser"}, {"alpha", p.alpha}, {"L", p.L}};
            } else {
                return json{{"kind", "smeared"},
                            {"alpha", p.kaiser.alpha},
                            {"L", p.kaiser.L},
                            {"delta", p.delta}};
            }
        },
        prior);
}

priors::Prior prior_from_json(const json& j, const num::QuadratureSpec& spec) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rect") {
        priors::RectPrior p;
        p.delta = j.at("delta").get<double>();
        p.center = j.value("center", 0.0);
        if (!(p.delta > 0.0))
            throw std::invalid_argument("rect prior width must be positive");
        return p;
    }
    if (kind == "comb") {
        std::vector<std::pair<long, double>> samples;
        for (const auto& entry : j.at("weights"))
            samples.emplace_back(entry.at(0).get<long>(), entry.at(1).get<double>());
        return priors::comb_from_samples(j.at("delta").get<double>(), samples);
    }
    if (kind == "kaiser")
        return priors::make_kaiser(j.at("alpha").get<double>(), j.at("L").get<double>(), spec);
    if (kind == "smeared")
        return priors::make_smeared(j.at("alpha").get<double>(), j.at("L").get<double>(),
                                    j.at("delta").get<double>(), spec);
    throw std::invalid_argument("unknown prior kind: " + kind);
}

json probe_to_json(const est::ProbeState& state) {
    json re = json::array();
    json im = json::array();
    for (const auto& c : state.amplitudes) {
        re.push_back(c.real());
        im.push_back(c.imag());
    }
    return json{{"n", state.n}, {"re", re}, {"im", im}};
}

est::ProbeState probe_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != im.size())
        throw std::invalid_argument("probe re/im arrays must have equal length");
    std::vector<std::complex<double>> amps;
    amps.reserve(re.size());
    for (std::size_t i = 0; i < re.size(); ++i)
        amps.emplace_back(re[i].get<double>(), im[i].get<double>());
    est::ProbeState state = est::make_state(n, std::move(amps));
    state.validate();
    return state;
}

namespace {

json number_or_null(double value) {
    if (std::isnan(value))
        return nullptr;
    return value;
}

} // namespace

json bound_report_to_json(const bounds::BoundReport& report) {
    // NaN entries (bound1 outside its epsilon domain) serialize as null.
    return json{{"bound_bandlimited", report.bound_bandlimited},
                {"bound1_raw", number_or_null(report.bound1_raw)},
                {"bound2", report.bound2},
                {"conventional_hl", report.conventional_hl},
                {"pi_hl", report.pi_hl},
                {"alpha", report.alpha},
                {"L", report.L},
                {"epsilon", report.epsilon},
                {"N", report.N},
                {"delta", report.delta}};
}

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        out.flush();
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

} // namespace pihl::io
