// Command-line front end.  Talks to the library exclusively through the C
// API in fpt/capi.h; all model logic lives behind that boundary.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpt/capi.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitInput = 2;

struct CliError {
    int exit_code;
    std::string message;
};

std::string take_string(char* owned) {
    std::string out = owned ? owned : "";
    fpt_string_free(owned);
    return out;
}

// Maps a C-API error code to the CLI exit-code contract: input/parse problems
// exit 2, numeric and hypothesis failures exit 1.
[[noreturn]] void fail(int code, const std::string& context) {
    const int exit_code =
        (code == FPT_ERR_INVALID_INPUT || code == FPT_ERR_ADMISSIBILITY ||
         code == FPT_ERR_DOMAIN || code == FPT_ERR_CONFIG)
            ? kExitInput
            : kExitNumeric;
    throw CliError{exit_code, context + ": " + fpt_last_error()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{kExitInput, "cannot open model file: " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Grid syntax: "a,b,c" | "lo:hi:n" (linear) | "log:lo:hi:n" (log-spaced).
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    auto must_num = [](const std::string& s) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw CliError{kExitInput, "bad number in grid: \"" + s + "\""};
        }
    };
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    const bool is_range = text.find(':') != std::string::npos;
    while (std::getline(ss, tok, is_range ? ':' : ',')) parts.push_back(tok);
    if (!is_range) {
        for (const auto& p : parts) out.push_back(must_num(p));
    } else {
        bool log_spaced = false;
        if (!parts.empty() && parts[0] == "log") {
            log_spaced = true;
            parts.erase(parts.begin());
        }
        if (parts.size() != 3)
            throw CliError{kExitInput, "grid range must be [log:]lo:hi:n"};
        const double lo = must_num(parts[0]), hi = must_num(parts[1]);
        const int n = static_cast<int>(must_num(parts[2]));
        if (n < 1 || (log_spaced && !(lo > 0.0)))
            throw CliError{kExitInput, "bad grid range: " + text};
        for (int i = 0; i < n; ++i) {
            const double w = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            out.push_back(log_spaced ? lo * std::pow(hi / lo, w)
                                     : lo + (hi - lo) * w);
        }
    }
    if (out.empty()) throw CliError{kExitInput, "empty grid: " + text};
    return out;
}

struct Manifest {
    std::string command;
    std::string model_file;
    std::string out_path;  // "-" for stdout
    std::vector<std::pair<std::string, std::string>> params;

    json to_json() const {
        json p = json::object();
        for (const auto& [k, v] : params) p[k] = v;
        std::time_t now = std::time(nullptr);
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        return {{"command", command},  {"model", model_file},
                {"out", out_path},     {"params", p},
                {"timestamp", stamp},  {"version", fpt_version()}};
    }
};

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    bool jsonl = false;

    Output(const std::string& path, const std::string& format) {
        jsonl = format == "jsonl";
        if (!path.empty() && path != "-") {
            file.open(path);
            if (!file) throw CliError{kExitInput, "cannot open output file: " + path};
            os = &file;
        }
    }

    void manifest(const Manifest& m) {
        if (jsonl)
            *os << json{{"manifest", m.to_json()}}.dump() << "\n";
        else
            *os << "# manifest " << m.to_json().dump() << "\n";
    }
    void header(const std::vector<std::string>& cols) {
        if (jsonl) return;
        for (std::size_t i = 0; i < cols.size(); ++i)
            *os << (i ? "," : "") << cols[i];
        *os << "\n";
    }
    void row(const std::vector<std::pair<std::string, json>>& cells) {
        if (jsonl) {
            json j = json::object();
            for (const auto& [k, v] : cells) j[k] = v;
            *os << j.dump() << "\n";
            return;
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const json& v = cells[i].second;
            *os << (i ? "," : "");
            if (v.is_number())
                *os << format_num(v.get<double>());
            else
                *os << v.get<std::string>();
        }
        *os << "\n";
    }
    void note(const std::string& text) {
        if (jsonl)
            *os << json{{"note", text}}.dump() << "\n";
        else
            *os << "# " << text << "\n";
    }

    static std::string format_num(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
};

using ModelPtr = std::unique_ptr<fpt_model, decltype(&fpt_model_free)>;

ModelPtr make_model(const std::string& model_json, double b) {
    fpt_model* raw = nullptr;
    const int rc = fpt_model_create(model_json.c_str(), b, &raw);
    if (rc != FPT_OK) fail(rc, "model");
    return ModelPtr(raw, &fpt_model_free);
}

int cmd_validate(const std::string& model_file, Output& out, Manifest manifest) {
    char* diag = nullptr;
    const int rc = fpt_diagnose(slurp(model_file).c_str(), &diag);
    if (rc != FPT_OK) fail(rc, "validate");
    out.manifest(manifest);
    *out.os << take_string(diag) << "\n";
    return kExitOk;
}

int cmd_fpt(const std::string& model_file, double b, const std::string& t_grid,
            bool with_asymptote, double tol, Output& out, Manifest manifest) {
    const auto model = make_model(slurp(model_file), b);
    const auto ts = parse_grid(t_grid);

    bool asym_ok = with_asymptote;
    std::string asym_note;
    if (with_asymptote) {
        char* desc = nullptr;
        const int rc = fpt_asymptote_describe(model.get(), &desc);
        if (rc != FPT_OK) {
            asym_ok = false;
            asym_note = fpt_last_error();
        } else {
            asym_note = take_string(desc);
        }
    }

    out.manifest(manifest);
    if (asym_ok && !out.jsonl) out.note("asymptote " + json::parse(asym_note).dump());
    if (with_asymptote && !asym_ok) out.note("asymptote unavailable: " + asym_note);
    std::vector<std::string> cols = {"t", "p_b", "err"};
    if (with_asymptote) cols.insert(cols.end(), {"asymptote", "ratio"});
    out.header(cols);

    int bad_rows = 0;
    for (double t : ts) {
        double v = 0.0, e = 0.0;
        const int rc = fpt_density(model.get(), t, tol, &v, &e);
        std::vector<std::pair<std::string, json>> cells;
        if (rc != FPT_OK) {
            ++bad_rows;
            cells = {{"t", t}, {"p_b", std::string(fpt_last_error())}, {"err", "nan"}};
            if (with_asymptote)
                cells.insert(cells.end(), {{"asymptote", "nan"}, {"ratio", "nan"}});
            out.row(cells);
            continue;
        }
        cells = {{"t", t}, {"p_b", v}, {"err", e}};
        if (with_asymptote) {
            if (asym_ok) {
                double a = 0.0;
                fpt_asymptote_eval(model.get(), t, &a);
                cells.emplace_back("asymptote", a);
                cells.emplace_back("ratio", a > 0.0 ? v / a
                                                    : std::numeric_limits<double>::quiet_NaN());
            } else {
                cells.insert(cells.end(), {{"asymptote", "hypothesis-failed"},
                                           {"ratio", "hypothesis-failed"}});
            }
        }
        out.row(cells);
    }
    return bad_rows == 0 ? kExitOk : kExitNumeric;
}

int cmd_price(const std::string& model_file, double r, double K,
              const std::string& T_grid, Output& out, Manifest manifest) {
    if (!(K > 0.0 && K < 1.0)) throw CliError{kExitInput, "need 0 < K < 1"};
    const double b = -std::log(K);

    char* cal = nullptr;
    int rc = fpt_calibrate(slurp(model_file).c_str(), r, &cal);
    if (rc != FPT_OK) fail(rc, "calibrate");
    const std::string model_json = take_string(cal);
    const auto model = make_model(model_json, b);

    double laplace = 0.0;
    rc = fpt_laplace(model.get(), r, &laplace);
    if (rc != FPT_OK) fail(rc, "laplace");

    out.manifest(manifest);
    out.note("calibrated " + json::parse(model_json).dump());
    out.header({"T", "U_T", "laplace", "gap", "gap_asymptote", "ratio"});

    int bad_rows = 0;
    for (double T : parse_grid(T_grid)) {
        double u = 0.0;
        rc = fpt_urc_value(model.get(), r, T, &u);
        if (rc != FPT_OK) {
            ++bad_rows;
            out.row({{"T", T}, {"U_T", std::string(fpt_last_error())}, {"laplace", laplace},
                     {"gap", "nan"}, {"gap_asymptote", "nan"}, {"ratio", "nan"}});
            continue;
        }
        const double gap = laplace - u;
        double asym = 0.0;
        const int arc = fpt_urc_gap_asymptote_eval(model.get(), r, T, &asym);
        if (arc != FPT_OK) {
            out.row({{"T", T}, {"U_T", u}, {"laplace", laplace}, {"gap", gap},
                     {"gap_asymptote", "hypothesis-failed"}, {"ratio", "hypothesis-failed"}});
        } else {
            out.row({{"T", T}, {"U_T", u}, {"laplace", laplace}, {"gap", gap},
                     {"gap_asymptote", asym},
                     {"ratio", asym > 0.0 ? gap / asym
                                          : std::numeric_limits<double>::quiet_NaN()}});
        }
    }
    return bad_rows == 0 ? kExitOk : kExitNumeric;
}

int cmd_simulate(const std::string& model_file, double b, std::uint64_t n_paths,
                 double dt, double eps, double horizon, std::uint64_t seed,
                 Output& out, Manifest manifest) {
    const std::string model_json = slurp(model_file);
    std::vector<double> times(n_paths);
    std::uint64_t n_crossed = 0;
    int rc = fpt_simulate(model_json.c_str(), b, n_paths, dt, eps, horizon, seed,
                          times.data(), &n_crossed);
    if (rc != FPT_OK) fail(rc, "simulate");

    out.manifest(manifest);
    out.note("crossed " + std::to_string(n_crossed) + " of " +
             std::to_string(n_paths) + " paths before horizon");
    out.header({"crossing_time"});
    for (std::uint64_t i = 0; i < n_crossed; ++i)
        out.row({{"crossing_time", times[i]}});

    // KS report against the analytic CDF, when the model admits one
    fpt_model* raw = nullptr;
    rc = fpt_model_create(model_json.c_str(), b, &raw);
    if (rc != FPT_OK) {
        out.note(std::string("ks unavailable: ") + fpt_last_error());
        return kExitOk;
    }
    ModelPtr model(raw, &fpt_model_free);
    double ks = 0.0;
    rc = fpt_ks_distance(model.get(), times.data(), n_crossed, n_paths, dt, eps,
                         horizon, seed, &ks);
    if (rc != FPT_OK) {
        out.note(std::string("ks unavailable: ") + fpt_last_error());
        return kExitNumeric;
    }
    out.note("ks " + Output::format_num(ks));
    return kExitOk;
}

int cmd_check(Output& out, Manifest manifest) {
    char* report = nullptr;
    int all_pass = 0;
    const int rc = fpt_run_checks(&report, &all_pass);
    if (rc != FPT_OK) fail(rc, "check");
    out.manifest(manifest);
    *out.os << take_string(report) << "\n";
    return all_pass ? kExitOk : kExitNumeric;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"First-passage-time toolkit for spectrally negative Levy processes"};
    app.require_subcommand(1);

    std::string model_file, out_path = "-", format = "csv";
    std::string t_grid = "log:0.1:50:20", T_grid = "20,40,60";
    double b = 1.0, r = 0.05, K = 0.6, tol = 0.0;
    double dt = 1e-3, eps = 1e-3, horizon = 1.0;
    std::uint64_t seed = 1, n_paths = 100000;
    bool with_asymptote = false;

    auto add_common = [&](CLI::App* cmd, bool needs_model) {
        auto* opt = cmd->add_option("--model", model_file, "model spec JSON file");
        if (needs_model) opt->required();
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--format", format, "csv or jsonl")
            ->check(CLI::IsMember({"csv", "jsonl"}));
    };

    auto* validate = app.add_subcommand("validate", "model diagnostics (JSON)");
    add_common(validate, true);

    auto* fpt = app.add_subcommand("fpt", "first-passage density over a t grid");
    add_common(fpt, true);
    fpt->add_option("--b", b, "barrier level");
    fpt->add_option("--t", t_grid, "t grid: list a,b,c or [log:]lo:hi:n");
    fpt->add_option("--tol", tol, "absolute quadrature tolerance");
    fpt->add_flag("--asymptote", with_asymptote, "add asymptote and ratio columns");

    auto* price = app.add_subcommand("price", "unit recovery claim over a T grid");
    add_common(price, true);
    price->add_option("--r", r, "interest rate");
    price->add_option("--K", K, "debt principal in (0,1); barrier is -log K");
    price->add_option("--T", T_grid, "maturity grid: list or [log:]lo:hi:n");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo crossing times");
    add_common(simulate, true);
    simulate->add_option("--b", b, "barrier level");
    simulate->add_option("--n-paths", n_paths, "number of paths");
    simulate->add_option("--dt", dt, "Euler time step");
    simulate->add_option("--eps", eps, "small-jump cutoff");
    simulate->add_option("--horizon", horizon, "censoring horizon");
    simulate->add_option("--seed", seed, "RNG seed");

    auto* check = app.add_subcommand("check", "invariant suite over the catalog");
    add_common(check, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    try {
        Manifest manifest;
        manifest.model_file = model_file;
        manifest.out_path = out_path;
        Output out(out_path, format);
        if (app.got_subcommand(validate)) {
            manifest.command = "validate";
            return cmd_validate(model_file, out, manifest);
        }
        if (app.got_subcommand(fpt)) {
            manifest.command = "fpt";
            manifest.params = {{"b", Output::format_num(b)},
                               {"t", t_grid},
                               {"tol", Output::format_num(tol)},
                               {"asymptote", with_asymptote ? "true" : "false"}};
            return cmd_fpt(model_file, b, t_grid, with_asymptote, tol, out, manifest);
        }
        if (app.got_subcommand(price)) {
            manifest.command = "price";
            manifest.params = {{"r", Output::format_num(r)},
                               {"K", Output::format_num(K)},
                               {"T", T_grid}};
            return cmd_price(model_file, r, K, T_grid, out, manifest);
        }
        if (app.got_subcommand(simulate)) {
            manifest.command = "simulate";
            manifest.params = {{"b", Output::format_num(b)},
                               {"n_paths", std::to_string(n_paths)},
                               {"dt", Output::format_num(dt)},
                               {"eps", Output::format_num(eps)},
                               {"horizon", Output::format_num(horizon)},
                               {"seed", std::to_string(seed)}};
            return cmd_simulate(model_file, b, n_paths, dt, eps, horizon, seed, out,
                                manifest);
        }
        manifest.command = "check";
        return cmd_check(out, manifest);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
