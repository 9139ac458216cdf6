#include "fpt/model_io.hpp"

#include <cmath>

namespace fpt {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const char* where) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok)
            throw InvalidInputError(std::string("unknown field \"") + key + "\" in " +
                                    where);
    }
}

double num(const json& j, const char* key, const char* where) {
    if (!j.contains(key))
        throw InvalidInputError(std::string("missing field \"") + key + "\" in " + where);
    if (!j.at(key).is_number())
        throw InvalidInputError(std::string("field \"") + key + "\" in " + where +
                                " must be a number");
    return j.at(key).get<double>();
}

JumpMeasure jumps_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
        throw InvalidInputError("jumps: need an object with a \"family\" string");
    const std::string family = j.at("family").get<std::string>();
    if (family == "none") {
        reject_unknown(j, {"family"}, "jumps");
        return NoJumps{};
    }
    if (family == "stable") {
        reject_unknown(j, {"family", "C", "alpha"}, "jumps");
        return StableTail{num(j, "C", "jumps"), num(j, "alpha", "jumps")};
    }
    if (family == "tempered_stable") {
        reject_unknown(j, {"family", "C", "alpha", "theta"}, "jumps");
        return TemperedStableTail{num(j, "C", "jumps"), num(j, "alpha", "jumps"),
                                  num(j, "theta", "jumps")};
    }
    if (family == "exponential") {
        reject_unknown(j, {"family", "a", "eta"}, "jumps");
        return ExponentialJumps{num(j, "a", "jumps"), num(j, "eta", "jumps")};
    }
    if (family == "tabulated") {
        reject_unknown(j, {"family", "knots", "tail_index"}, "jumps");
        if (!j.contains("knots") || !j.at("knots").is_array())
            throw InvalidInputError("tabulated: \"knots\" must be an array of [x, nu_bar]");
        TabulatedTail tab;
        for (const auto& k : j.at("knots")) {
            if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number())
                throw InvalidInputError("tabulated: each knot must be [x, nu_bar]");
            tab.x.push_back(k[0].get<double>());
            tab.nu_bar.push_back(k[1].get<double>());
        }
        tab.tail_index = num(j, "tail_index", "jumps");
        return tab;
    }
    throw InvalidInputError("unknown jump family \"" + family + "\"");
}

} // namespace

LevyTriplet triplet_from_json(const json& j) {
    if (!j.is_object()) throw InvalidInputError("model spec must be a JSON object");
    reject_unknown(j, {"sigma", "m", "jumps"}, "model");
    const double sigma = num(j, "sigma", "model");
    const double m = num(j, "m", "model");
    if (!j.contains("jumps"))
        throw InvalidInputError("missing field \"jumps\" in model");
    return LevyTriplet(sigma, m, jumps_from_json(j.at("jumps")));
}

LevyTriplet triplet_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInputError(std::string("JSON parse error: ") + e.what());
    }
    return triplet_from_json(j);
}

nlohmann::json triplet_to_json(const LevyTriplet& t) {
    json jumps;
    std::visit(
        [&jumps](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoJumps>) {
                jumps = {{"family", "none"}};
            } else if constexpr (std::is_same_v<T, StableTail>) {
                jumps = {{"family", "stable"}, {"C", m.C}, {"alpha", m.alpha}};
            } else if constexpr (std::is_same_v<T, TemperedStableTail>) {
                jumps = {{"family", "tempered_stable"},
                         {"C", m.C},
                         {"alpha", m.alpha},
                         {"theta", m.theta}};
            } else if constexpr (std::is_same_v<T, ExponentialJumps>) {
                jumps = {{"family", "exponential"}, {"a", m.a}, {"eta", m.eta}};
            } else {
                json knots = json::array();
                for (std::size_t i = 0; i < m.x.size(); ++i)
                    knots.push_back({m.x[i], m.nu_bar[i]});
                jumps = {{"family", "tabulated"},
                         {"knots", knots},
                         {"tail_index", m.tail_index}};
            }
        },
        t.jumps());
    return {{"sigma", t.sigma()}, {"m", t.m()}, {"jumps", jumps}};
}

nlohmann::json diagnostics_to_json(const ModelDiagnostics& d) {
    json probe = json::array();
    for (const auto& [x, v] : d.condition2_probe) probe.push_back({x, v});
    json out = {
        {"regime", d.regime == Regime::stable ? "stable" : "gaussian"},
        {"lambda_minus",
         std::isinf(d.lambda_minus) ? json("-inf") : json(d.lambda_minus)},
        {"probe_s", d.probe_s},
        {"condition2_probe", probe},
        {"density_conditions_ok", d.density_conditions_ok},
        {"drift_positive", d.drift_positive},
    };
    if (d.regime == Regime::stable) out["alpha"] = d.alpha;
    if (d.c_squared) out["c_squared"] = *d.c_squared;
    return out;
}

} // namespace fpt
