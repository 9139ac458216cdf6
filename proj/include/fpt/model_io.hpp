#ifndef FPT_MODEL_IO_HPP
#define FPT_MODEL_IO_HPP

#include <string>

#include <json.hpp>

#include "fpt/levy_model.hpp"

namespace fpt {

// Model spec format:
//   {"sigma": 0.5, "m": 0.0, "jumps": {"family": "stable", "C": 1.0, "alpha": 1.5}}
// Families: "none", "stable" (C, alpha), "tempered_stable" (C, alpha, theta),
// "exponential" (a, eta), "tabulated" (knots: [[x, nu_bar], ...], tail_index).
// Unknown fields are rejected.
LevyTriplet triplet_from_json(const nlohmann::json& j);
LevyTriplet triplet_from_string(const std::string& text);

nlohmann::json triplet_to_json(const LevyTriplet& t);
nlohmann::json diagnostics_to_json(const ModelDiagnostics& d);

} // namespace fpt

#endif
