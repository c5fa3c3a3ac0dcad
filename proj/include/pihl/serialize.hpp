#pragma once

#include <string>

#include <json.hpp>

#include "pihl/bounds.hpp"
#include "pihl/estimation.hpp"
#include "pihl/priors.hpp"

namespace pihl::io {

// {"kind": "rect"|"comb"|"kaiser"|"smeared", parameters...}; normalizations
// are recomputed on load, never stored.
nlohmann::json prior_to_json(const priors::Prior& prior);
priors::Prior prior_from_json(const nlohmann::json& j, const num::QuadratureSpec& spec = {});

// {"n": n, "re": [...], "im": [...]}
nlohmann::json probe_to_json(const est::ProbeState& state);
est::ProbeState probe_from_json(const nlohmann::json& j);

nlohmann::json bound_report_to_json(const bounds::BoundReport& report);

// 12-significant-digit formatting shared by all CSV output.
std::string format_number(double value);

// Whole-file atomic write: temp file in the same directory, then rename.
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace pihl::io
