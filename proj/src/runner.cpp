#include "erasure/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <tuple>

#include <Eigen/Core>

#include "erasure/demon.hpp"
#include "erasure/ensemble.hpp"
#include "erasure/math.hpp"
#include "erasure/microsim.hpp"
#include "erasure/protocol.hpp"
#include "erasure/stats.hpp"
#include "erasure/thermal.hpp"

namespace erasure::runner {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// formatting

std::string fmt(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip form
    (void)ec;
    return std::string(buf, ptr);
}

std::string fmt(std::int64_t v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }

class CsvFile {
  public:
    explicit CsvFile(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw io_error("cannot open output file " + path.string());
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << fields[i];
        }
        out_ << '\n';
    }

    void finish() {
        out_.flush();
        if (!out_) throw io_error("failed writing " + path_.string());
        out_.close();
    }

  private:
    std::filesystem::path path_;
    std::ofstream out_;
};

void write_json_file(const std::filesystem::path& path, const ordered_json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file " + path.string());
    out << doc.dump(2) << '\n';
    out.flush();
    if (!out) throw io_error("failed writing " + path.string());
}

// ---------------------------------------------------------------------------
// config access helpers

[[noreturn]] void fail(const std::string& message) { throw config_error(message); }

void require_object(const json& j) {
    if (!j.is_object()) fail("config must be a JSON object");
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, Subcommand sub) {
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            fail("unknown key '" + item.key() + "' for subcommand '" +
                 std::string(subcommand_name(sub)) + "'");
        }
    }
}

double get_number(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number()) fail("key '" + key + "' must be a number");
    return v.get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
    return j.contains(key) ? get_number(j, key) : fallback;
}

std::int64_t get_integer(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number_integer()) fail("key '" + key + "' must be an integer");
    return v.get<std::int64_t>();
}

std::int64_t integer_or(const json& j, const std::string& key, std::int64_t fallback) {
    return j.contains(key) ? get_integer(j, key) : fallback;
}

bool bool_or(const json& j, const std::string& key, bool fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_boolean()) fail("key '" + key + "' must be a boolean");
    return v.get<bool>();
}

std::string get_string(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_string()) fail("key '" + key + "' must be a string");
    return v.get<std::string>();
}

// Resolves the exclusive polarization pair. Exactly one of gamma_tilde /
// alpha must be present (or the pair may be absent entirely when a sweep
// provides it and `required` is false). Returns (gamma_tilde, alpha).
std::pair<double, double> resolve_polarization(const json& j, bool required) {
    const bool has_gamma = j.contains("gamma_tilde");
    const bool has_alpha = j.contains("alpha");
    if (has_gamma && has_alpha) {
        fail("keys 'gamma_tilde' and 'alpha' are mutually exclusive; provide exactly one");
    }
    if (!has_gamma && !has_alpha) {
        if (required) fail("exactly one of 'gamma_tilde' or 'alpha' is required");
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    }
    if (has_gamma) {
        const double g = get_number(j, "gamma_tilde");
        if (!std::isfinite(g)) fail("'gamma_tilde' must be finite");
        return {g, ensemble::alpha_from_gamma(g)};
    }
    const double a = get_number(j, "alpha");
    if (!(a > 0.0 && a < 1.0)) fail("'alpha' must lie strictly in (0,1)");
    return {ensemble::gamma_from_alpha(a), a};
}

// ---------------------------------------------------------------------------
// sweep parsing

std::vector<SweepAxis> parse_sweep(const json& j, const std::set<std::string>& sweepable,
                                   Subcommand sub) {
    std::vector<SweepAxis> axes;
    if (!j.contains("sweep")) return axes;
    const auto& sweep = j.at("sweep");
    if (!sweep.is_array() || sweep.empty() || sweep.size() > 2) {
        fail("'sweep' must be an array of one or two axis objects");
    }
    for (const auto& axis_json : sweep) {
        if (!axis_json.is_object()) fail("each sweep axis must be an object");
        static const std::set<std::string> axis_keys = {"parameter", "values", "from", "to",
                                                        "points",    "scale"};
        for (const auto& item : axis_json.items()) {
            if (!axis_keys.count(item.key())) fail("unknown sweep key '" + item.key() + "'");
        }
        if (!axis_json.contains("parameter")) fail("sweep axis needs a 'parameter'");
        SweepAxis axis;
        axis.parameter = get_string(axis_json, "parameter");
        if (!sweepable.count(axis.parameter)) {
            fail("parameter '" + axis.parameter + "' cannot be swept for subcommand '" +
                 std::string(subcommand_name(sub)) + "'");
        }
        if (j.contains(axis.parameter)) {
            fail("swept parameter '" + axis.parameter + "' must not also be set as a scalar key");
        }
        if (axis_json.contains("values")) {
            if (axis_json.contains("from") || axis_json.contains("to") || axis_json.contains("points") ||
                axis_json.contains("scale")) {
                fail("sweep axis takes either 'values' or 'from'/'to'/'points', not both");
            }
            const auto& values = axis_json.at("values");
            if (!values.is_array() || values.empty()) fail("sweep 'values' must be a non-empty array");
            for (const auto& v : values) {
                if (!v.is_number()) fail("sweep 'values' entries must be numbers");
                axis.values.push_back(v.get<double>());
            }
        } else {
            if (!axis_json.contains("from") || !axis_json.contains("to") || !axis_json.contains("points")) {
                fail("sweep axis needs 'values' or all of 'from', 'to', 'points'");
            }
            const double from = get_number(axis_json, "from");
            const double to = get_number(axis_json, "to");
            const std::int64_t points = get_integer(axis_json, "points");
            if (points < 1) fail("sweep 'points' must be >= 1");
            std::string scale = "linear";
            if (axis_json.contains("scale")) scale = get_string(axis_json, "scale");
            Eigen::ArrayXd grid;
            if (scale == "linear") {
                grid = Eigen::ArrayXd::LinSpaced(points, from, to);
            } else if (scale == "log") {
                if (!(from > 0.0 && to > 0.0)) fail("log-scale sweep needs positive 'from' and 'to'");
                grid = Eigen::ArrayXd::LinSpaced(points, std::log(from), std::log(to)).exp();
            } else {
                fail("sweep 'scale' must be 'linear' or 'log'");
            }
            axis.values.assign(grid.data(), grid.data() + grid.size());
        }
        axes.push_back(std::move(axis));
    }
    if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) {
        fail("sweep axes must use distinct parameters");
    }
    // Sweeping one member of the polarization pair forbids fixing the other.
    for (const auto& axis : axes) {
        if (axis.parameter == "gamma_tilde" && j.contains("alpha")) {
            fail("sweeping 'gamma_tilde' conflicts with scalar key 'alpha'");
        }
        if (axis.parameter == "alpha" && j.contains("gamma_tilde")) {
            fail("sweeping 'alpha' conflicts with scalar key 'gamma_tilde'");
        }
    }
    return axes;
}

bool swept(const std::vector<SweepAxis>& axes, const std::string& name) {
    return std::any_of(axes.begin(), axes.end(),
                       [&](const SweepAxis& a) { return a.parameter == name; });
}

// ---------------------------------------------------------------------------
// per-subcommand validation (builds the materialized parameter object)

ordered_json validate_model_a(const json& j, const std::vector<SweepAxis>& axes) {
    ordered_json p;
    double temperature = std::numeric_limits<double>::quiet_NaN();
    if (swept(axes, "temperature")) {
        if (!j.contains("e_max") && !swept(axes, "e_max")) {
            fail("'e_max' must be explicit when 'temperature' is swept");
        }
    } else {
        temperature = number_or(j, "temperature", 1.0);
        if (!(temperature > 0.0)) fail("'temperature' must be positive");
        p["temperature"] = temperature;
    }
    if (!swept(axes, "e_max")) {
        const double e_max = j.contains("e_max") ? get_number(j, "e_max") : 50.0 * temperature;
        if (!(e_max >= 0.0)) fail("'e_max' must be >= 0");
        p["e_max"] = e_max;
    }
    if (!swept(axes, "tol")) {
        const double tol = number_or(j, "tol", 1e-9);
        if (!(tol > 0.0)) fail("'tol' must be positive");
        p["tol"] = tol;
    }
    const std::int64_t schedule_steps = integer_or(j, "schedule_steps", 0);
    if (schedule_steps < 0) fail("'schedule_steps' must be >= 0");
    p["schedule_steps"] = schedule_steps;
    if (schedule_steps > 0) {
        const double schedule_e_max =
            j.contains("schedule_e_max") ? get_number(j, "schedule_e_max")
                                         : (p.contains("e_max") ? p["e_max"].get<double>() : 0.0);
        if (!(schedule_e_max > 0.0)) fail("'schedule_e_max' must be positive");
        p["schedule_e_max"] = schedule_e_max;
    } else if (j.contains("schedule_e_max")) {
        fail("'schedule_e_max' requires 'schedule_steps' > 0");
    }
    return p;
}

ordered_json validate_protocol(const json& j, const std::vector<SweepAxis>& axes) {
    ordered_json p;
    const bool pol_swept = swept(axes, "gamma_tilde") || swept(axes, "alpha");
    const bool has_cycles = j.contains("cycles");
    const bool has_target = j.contains("target_p1");
    if (has_cycles == has_target) {
        fail("exactly one of 'cycles' or 'target_p1' is required");
    }
    if (has_cycles) {
        const std::int64_t cycles = get_integer(j, "cycles");
        if (cycles < 0) fail("'cycles' must be >= 0");
        p["cycles"] = cycles;
    } else {
        const double target = get_number(j, "target_p1");
        if (!(target > 0.0 && target < 1.0)) fail("'target_p1' must lie in (0,1)");
        p["target_p1"] = target;
    }
    if (!pol_swept) {
        const auto [gamma, alpha] = resolve_polarization(j, true);
        if (has_target && !(gamma > 0.0)) {
            fail("a 'target_p1' stop requires gamma_tilde > 0 (equivalently alpha < 1/2)");
        }
        p["gamma_tilde"] = gamma;
        p["alpha"] = alpha;
    }
    if (!swept(axes, "epsilon")) {
        const double epsilon = number_or(j, "epsilon", 0.0);
        if (epsilon < 0.0) fail("'epsilon' must be >= 0");
        p["epsilon"] = epsilon;
    }
    const double series_tol = number_or(j, "series_tol", 1e-12);
    if (!(series_tol > 0.0)) fail("'series_tol' must be positive");
    p["series_tol"] = series_tol;
    return p;
}

ordered_json validate_demon(const json& j, const std::vector<SweepAxis>& axes) {
    ordered_json p;
    if (!(swept(axes, "gamma_tilde") || swept(axes, "alpha"))) {
        const auto [gamma, alpha] = resolve_polarization(j, true);
        if (!(gamma > 0.0)) fail("demon cycles require gamma_tilde > 0 (equivalently alpha < 1/2)");
        p["gamma_tilde"] = gamma;
        p["alpha"] = alpha;
    }
    if (!swept(axes, "temperature")) {
        const double temperature = number_or(j, "temperature", 1.0);
        if (!(temperature > 0.0)) fail("'temperature' must be positive");
        p["temperature"] = temperature;
    }
    const std::int64_t bits = integer_or(j, "bits", 1);
    if (bits < 0) fail("'bits' must be >= 0");
    p["bits"] = bits;
    if (!swept(axes, "epsilon")) {
        const double epsilon = number_or(j, "epsilon", 0.0);
        if (epsilon < 0.0) fail("'epsilon' must be >= 0");
        p["epsilon"] = epsilon;
    }
    return p;
}

ordered_json validate_microsim(const json& j, const std::vector<SweepAxis>& axes) {
    ordered_json p;
    if (!j.contains("mode")) fail("'mode' is required: 'reservoir-bath' or 'block'");
    const std::string mode = get_string(j, "mode");
    if (mode != "reservoir-bath" && mode != "block") {
        fail("'mode' must be 'reservoir-bath' or 'block'");
    }
    p["mode"] = mode;

    const std::int64_t n_spins = get_integer(j, "n_spins");
    if (n_spins < 1) fail("'n_spins' must be >= 1");
    p["n_spins"] = n_spins;

    if (mode == "reservoir-bath") {
        if (j.contains("block_size")) fail("'block_size' applies only to mode 'block'");
        if (!swept(axes, "m_spins")) {
            const std::int64_t m_spins = get_integer(j, "m_spins");
            if (m_spins < 1) fail("'m_spins' must be >= 1 for mode 'reservoir-bath'");
            p["m_spins"] = m_spins;
        }
    } else {
        const std::int64_t block_size = get_integer(j, "block_size");
        if (block_size < 1 || block_size > n_spins) fail("'block_size' must lie in [1, n_spins]");
        p["block_size"] = block_size;
        if (!swept(axes, "m_spins")) {
            const std::int64_t m_spins = integer_or(j, "m_spins", 0);
            if (m_spins < 0) fail("'m_spins' must be >= 0 (0 = ideal bath)");
            p["m_spins"] = m_spins;
        }
    }

    if (!(swept(axes, "gamma_tilde") || swept(axes, "alpha"))) {
        const auto [gamma, alpha] = resolve_polarization(j, true);
        p["gamma_tilde"] = gamma;
        p["alpha"] = alpha;
    }

    const std::int64_t burn_in = integer_or(j, "burn_in", 1000);
    if (burn_in < 0) fail("'burn_in' must be >= 0");
    p["burn_in"] = burn_in;
    const std::int64_t samples = integer_or(j, "samples", 100000);
    if (samples < 1) fail("'samples' must be >= 1");
    p["samples"] = samples;
    const std::int64_t thin = integer_or(j, "thin", 1);
    if (thin < 1) fail("'thin' must be >= 1");
    p["thin"] = thin;
    p["check_conservation"] = bool_or(j, "check_conservation", false);
    return p;
}

ordered_json validate_maxent(const json& j, const std::vector<SweepAxis>& axes) {
    ordered_json p;
    const std::int64_t n_spins = get_integer(j, "n_spins");
    if (n_spins < 1) fail("'n_spins' must be >= 1");
    p["n_spins"] = n_spins;

    const bool target_swept =
        swept(axes, "target_mean_n") || swept(axes, "alpha") || swept(axes, "gamma_tilde");
    const bool has_target = j.contains("target_mean_n");
    const bool has_pol = j.contains("alpha") || j.contains("gamma_tilde");
    if (has_target && has_pol) {
        fail("'target_mean_n' is mutually exclusive with 'alpha'/'gamma_tilde'");
    }
    if (!target_swept) {
        double target;
        if (has_target) {
            target = get_number(j, "target_mean_n");
        } else {
            const auto [gamma, alpha] = resolve_polarization(j, true);
            (void)gamma;
            target = alpha * static_cast<double>(n_spins);
        }
        if (!(target > 0.0 && target < static_cast<double>(n_spins))) {
            fail("target mean occupation must lie strictly in (0, n_spins)");
        }
        p["target_mean_n"] = target;
    }
    const double tol = number_or(j, "tol", 1e-13);
    if (!(tol > 0.0)) fail("'tol' must be positive");
    p["tol"] = tol;
    return p;
}

const std::set<std::string>& allowed_keys(Subcommand sub) {
    static const std::set<std::string> common = {"seed", "out_dir", "sweep"};
    static const auto with_common = [](std::set<std::string> extra) {
        extra.insert(common.begin(), common.end());
        return extra;
    };
    static const std::set<std::string> model_a = with_common(
        {"temperature", "e_max", "tol", "schedule_steps", "schedule_e_max"});
    static const std::set<std::string> protocol = with_common(
        {"gamma_tilde", "alpha", "cycles", "target_p1", "epsilon", "series_tol"});
    static const std::set<std::string> microsim =
        with_common({"mode", "n_spins", "m_spins", "block_size", "gamma_tilde", "alpha", "burn_in",
                     "samples", "thin", "check_conservation"});
    static const std::set<std::string> demon =
        with_common({"gamma_tilde", "alpha", "temperature", "bits", "epsilon"});
    static const std::set<std::string> maxent =
        with_common({"n_spins", "target_mean_n", "alpha", "gamma_tilde", "tol"});
    switch (sub) {
        case Subcommand::model_a: return model_a;
        case Subcommand::protocol: return protocol;
        case Subcommand::microsim: return microsim;
        case Subcommand::demon: return demon;
        case Subcommand::maxent: return maxent;
    }
    return model_a;
}

const std::set<std::string>& sweepable_keys(Subcommand sub) {
    static const std::set<std::string> model_a = {"temperature", "e_max", "tol"};
    static const std::set<std::string> protocol = {"gamma_tilde", "alpha", "epsilon"};
    static const std::set<std::string> microsim = {"gamma_tilde", "alpha", "m_spins"};
    static const std::set<std::string> demon = {"gamma_tilde", "alpha", "temperature", "epsilon"};
    static const std::set<std::string> maxent = {"target_mean_n", "alpha", "gamma_tilde"};
    switch (sub) {
        case Subcommand::model_a: return model_a;
        case Subcommand::protocol: return protocol;
        case Subcommand::microsim: return microsim;
        case Subcommand::demon: return demon;
        case Subcommand::maxent: return maxent;
    }
    return model_a;
}

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
    int line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

Subcommand subcommand_from_name(std::string_view name) {
    if (name == "model-a") return Subcommand::model_a;
    if (name == "protocol") return Subcommand::protocol;
    if (name == "microsim") return Subcommand::microsim;
    if (name == "demon") return Subcommand::demon;
    if (name == "maxent") return Subcommand::maxent;
    throw config_error("unknown subcommand '" + std::string(name) + "'");
}

std::string_view subcommand_name(Subcommand sub) {
    switch (sub) {
        case Subcommand::model_a: return "model-a";
        case Subcommand::protocol: return "protocol";
        case Subcommand::microsim: return "microsim";
        case Subcommand::demon: return "demon";
        case Subcommand::maxent: return "maxent";
    }
    return "?";
}

RunConfig parse_config(Subcommand sub, const std::string& text, const RunOverrides& overrides) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
        fail("config parse error at line " + std::to_string(line) + ", column " +
             std::to_string(column) + ": " + e.what());
    }
    require_object(j);
    reject_unknown_keys(j, allowed_keys(sub), sub);

    RunConfig config;
    config.subcommand = sub;
    config.sweep = parse_sweep(j, sweepable_keys(sub), sub);

    switch (sub) {
        case Subcommand::model_a: config.parameters = validate_model_a(j, config.sweep); break;
        case Subcommand::protocol: config.parameters = validate_protocol(j, config.sweep); break;
        case Subcommand::microsim: config.parameters = validate_microsim(j, config.sweep); break;
        case Subcommand::demon: config.parameters = validate_demon(j, config.sweep); break;
        case Subcommand::maxent: config.parameters = validate_maxent(j, config.sweep); break;
    }

    if (overrides.seed) {
        config.seed = *overrides.seed;
    } else if (j.contains("seed")) {
        const auto& v = j.at("seed");
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            fail("'seed' must be a non-negative integer");
        }
        config.seed = v.get<std::uint64_t>();
    }
    config.parameters["seed"] = config.seed;

    if (overrides.out_dir) {
        config.out_dir = *overrides.out_dir;
    } else if (const char* env = std::getenv("ERASURE_OUT_DIR"); env && *env) {
        config.out_dir = env;
    } else if (j.contains("out_dir")) {
        config.out_dir = get_string(j, "out_dir");
    }
    return config;
}

// ---------------------------------------------------------------------------
// execution

namespace {

ordered_json make_envelope(const RunConfig& config) {
    ordered_json doc;
    doc["schema_version"] = output_schema_version;
    doc["tool"] = {{"name", tool_name}, {"version", tool_version}};
    doc["subcommand"] = std::string(subcommand_name(config.subcommand));
    doc["parameters"] = config.parameters;
    if (!config.sweep.empty()) {
        ordered_json axes = ordered_json::array();
        for (const auto& axis : config.sweep) {
            axes.push_back({{"parameter", axis.parameter}, {"values", axis.values}});
        }
        doc["sweep"] = std::move(axes);
    }
    return doc;
}

// Applies one grid point onto a copy of the scalar parameters.
ordered_json point_parameters(const RunConfig& config, const std::vector<std::size_t>& index) {
    ordered_json p = config.parameters;
    for (std::size_t a = 0; a < config.sweep.size(); ++a) {
        p[config.sweep[a].parameter] = config.sweep[a].values[index[a]];
    }
    return p;
}

// Re-derives the polarization pair for a parameter set in which exactly
// one of gamma_tilde / alpha is present (the swept one).
void complete_polarization(ordered_json& p) {
    if (p.contains("gamma_tilde") && !p.contains("alpha")) {
        const double g = p["gamma_tilde"].get<double>();
        if (!std::isfinite(g)) fail("'gamma_tilde' must be finite");
        p["alpha"] = ensemble::alpha_from_gamma(g);
    } else if (p.contains("alpha") && !p.contains("gamma_tilde")) {
        const double a = p["alpha"].get<double>();
        if (!(a > 0.0 && a < 1.0)) fail("'alpha' must lie strictly in (0,1)");
        p["gamma_tilde"] = ensemble::gamma_from_alpha(a);
    }
}

struct GridWalker {
    // Row-major walk over a 0-, 1- or 2-axis grid, first axis outermost.
    explicit GridWalker(const std::vector<SweepAxis>& axes) : axes_(axes) {
        total_ = 1;
        for (const auto& a : axes) total_ *= a.values.size();
        index_.assign(axes.size(), 0);
    }
    std::size_t total() const { return total_; }
    const std::vector<std::size_t>& index() const { return index_; }
    void advance() {
        for (std::size_t a = axes_.size(); a-- > 0;) {
            if (++index_[a] < axes_[a].values.size()) return;
            index_[a] = 0;
        }
    }

  private:
    const std::vector<SweepAxis>& axes_;
    std::vector<std::size_t> index_;
    std::size_t total_ = 1;
};

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

// --- model-a ---------------------------------------------------------------

RunArtifacts run_model_a(const RunConfig& config) {
    RunArtifacts artifacts;
    ordered_json doc = make_envelope(config);

    if (config.sweep.empty()) {
        const auto& p = config.parameters;
        const double t = p["temperature"].get<double>();
        const double e_max = p["e_max"].get<double>();
        const double tol = p["tol"].get<double>();
        const TotalWorkResult result = thermal::total_work(t, e_max, tol);

        ordered_json results;
        results["work"] = result.work;
        results["tail_bound"] = result.tail_bound;
        results["error_estimate"] = result.error_estimate;
        results["evaluations"] = result.evaluations;
        results["asymptotic_work"] = t * std::log(2.0);

        const std::int64_t steps = p["schedule_steps"].get<std::int64_t>();
        if (steps > 0) {
            const double schedule_e_max = p["schedule_e_max"].get<double>();
            std::vector<double> grid(steps + 1);
            for (std::int64_t i = 0; i <= steps; ++i) {
                grid[i] = schedule_e_max * static_cast<double>(i) / static_cast<double>(steps);
            }
            const auto [ledger, qubit] = thermal::adiabatic_schedule(t, grid);

            const auto csv_path = config.out_dir / "model-a.csv";
            CsvFile csv(csv_path);
            csv.row({"step", "splitting", "step_work", "cumulative_work", "p1"});
            double cumulative = 0.0;
            for (std::size_t i = 0; i < ledger.steps.size(); ++i) {
                cumulative += ledger.steps[i].work;
                const double p1 = thermal::boltzmann_state(ledger.steps[i].splitting, t).second;
                csv.row({fmt(static_cast<std::int64_t>(i + 1)), fmt(ledger.steps[i].splitting),
                         fmt(ledger.steps[i].work), fmt(cumulative), fmt(p1)});
            }
            csv.finish();
            artifacts.files.push_back(csv_path);

            results["schedule"] = {{"steps", steps},
                                   {"e_max", schedule_e_max},
                                   {"total_work", ledger.total_work},
                                   {"final_p1", qubit.p1},
                                   {"excess_over_quadrature", ledger.total_work - result.work}};
        }
        doc["results"] = std::move(results);
    } else {
        const auto csv_path = config.out_dir / "model-a.csv";
        CsvFile csv(csv_path);
        std::vector<std::string> header;
        for (const auto& axis : config.sweep) header.push_back(axis.parameter);
        for (const char* c : {"temperature", "e_max", "tol", "work", "tail_bound"}) header.push_back(c);
        csv.row(header);

        GridWalker walker(config.sweep);
        for (std::size_t i = 0; i < walker.total(); ++i, walker.advance()) {
            ordered_json p = point_parameters(config, walker.index());
            const double t = p["temperature"].get<double>();
            if (!(t > 0.0)) fail("swept 'temperature' must be positive");
            const double e_max = p["e_max"].get<double>();
            if (!(e_max >= 0.0)) fail("swept 'e_max' must be >= 0");
            const double tol = p["tol"].get<double>();
            if (!(tol > 0.0)) fail("swept 'tol' must be positive");
            const TotalWorkResult result = thermal::total_work(t, e_max, tol);
            std::vector<std::string> row;
            for (std::size_t a = 0; a < config.sweep.size(); ++a) {
                row.push_back(fmt(config.sweep[a].values[walker.index()[a]]));
            }
            for (const double v : {t, e_max, tol, result.work, result.tail_bound}) row.push_back(fmt(v));
            csv.row(row);
        }
        csv.finish();
        artifacts.files.push_back(csv_path);
        doc["results"] = {{"rows", walker.total()}, {"csv", "model-a.csv"}};
    }

    const auto json_path = config.out_dir / "model-a_summary.json";
    write_json_file(json_path, doc);
    artifacts.files.push_back(json_path);
    return artifacts;
}

// --- protocol ----------------------------------------------------------------

struct ProtocolPoint {
    double gamma_tilde = 0.0;
    double alpha = 0.0;
    double epsilon = 0.0;
    MemoryBlockState final_state;
    CostLedger ledger;
    // Series and bounds are defined only for gamma_tilde > 0.
    bool erasing = false;
    SeriesSum series;
    std::pair<double, double> bounds{nan_value(), nan_value()};
    std::pair<double, double> bounds_with_initial{nan_value(), nan_value()};
};

ProtocolPoint evaluate_protocol_point(const ordered_json& p) {
    ProtocolPoint point;
    point.gamma_tilde = p["gamma_tilde"].get<double>();
    point.alpha = p["alpha"].get<double>();
    point.epsilon = p["epsilon"].get<double>();
    if (point.epsilon < 0.0) fail("'epsilon' must be >= 0");

    StopRule stop = p.contains("cycles")
                        ? StopRule::after_cycles(static_cast<int>(p["cycles"].get<std::int64_t>()))
                        : StopRule::at_target_p1(p["target_p1"].get<double>());
    if (stop.kind == StopRule::Kind::target_p1 && !(point.gamma_tilde > 0.0)) {
        fail("a 'target_p1' stop requires gamma_tilde > 0");
    }
    auto [state, ledger] = protocol::run_protocol(point.gamma_tilde, stop, point.epsilon);
    point.final_state = state;
    point.ledger = std::move(ledger);

    if (point.gamma_tilde > 0.0) {
        point.erasing = true;
        point.series = protocol::total_spin_cost(point.gamma_tilde, p["series_tol"].get<double>());
        point.bounds = protocol::spin_cost_bounds(point.gamma_tilde, false);
        point.bounds_with_initial = protocol::spin_cost_bounds(point.gamma_tilde, true);
    }
    return point;
}

RunArtifacts run_protocol_cmd(const RunConfig& config) {
    RunArtifacts artifacts;
    ordered_json doc = make_envelope(config);
    const auto csv_path = config.out_dir / "protocol.csv";

    if (config.sweep.empty()) {
        const ProtocolPoint point = evaluate_protocol_point(config.parameters);

        CsvFile csv(csv_path);
        csv.row({"cycle", "block_size", "p1", "cycle_cost", "cumulative_cost"});
        double cumulative = 0.0;
        MemoryBlockState replay = protocol::initial_contact(point.gamma_tilde);
        for (std::size_t c = 0; c < point.ledger.per_cycle_costs.size(); ++c) {
            cumulative += point.ledger.per_cycle_costs[c];
            auto [extended, cost] = protocol::cnot_extend(replay);
            (void)cost;
            replay = protocol::equilibrate(extended, point.gamma_tilde);
            csv.row({fmt(static_cast<std::int64_t>(c + 1)), fmt(replay.block_size), fmt(replay.p1),
                     fmt(point.ledger.per_cycle_costs[c]), fmt(cumulative)});
        }
        csv.finish();
        artifacts.files.push_back(csv_path);

        ordered_json results;
        results["final"] = {{"block_size", point.final_state.block_size},
                            {"p1", point.final_state.p1},
                            {"cycles", point.final_state.cycle_index},
                            {"equilibrated", point.final_state.equilibrated}};
        results["ledger"] = {{"delta_jz", point.ledger.delta_jz},
                             {"with_initial_total", point.ledger.delta_jz + 0.5},
                             {"epsilon", point.ledger.epsilon},
                             {"delta_e", point.ledger.delta_e}};
        if (point.erasing) {
            results["series"] = {{"total_spin_cost", point.series.value},
                                 {"tail_bound", point.series.tail_bound},
                                 {"terms", point.series.terms}};
            results["bounds"] = {{"lower", point.bounds.first},
                                 {"upper", point.bounds.second},
                                 {"with_initial_lower", point.bounds_with_initial.first},
                                 {"with_initial_upper", point.bounds_with_initial.second}};
        } else {
            results["series"] = nullptr;
            results["bounds"] = nullptr;
        }
        results["non_erasing"] = !point.erasing;
        doc["results"] = std::move(results);
    } else {
        CsvFile csv(csv_path);
        std::vector<std::string> header;
        for (const auto& axis : config.sweep) header.push_back(axis.parameter);
        for (const char* c :
             {"gamma_tilde", "alpha", "epsilon", "cycles_used", "final_p1", "spin_cost",
              "spin_cost_lower", "spin_cost_upper", "spin_cost_with_initial",
              "spin_cost_with_initial_lower", "spin_cost_with_initial_upper", "energy_cost"}) {
            header.push_back(c);
        }
        csv.row(header);

        std::size_t bounds_satisfied = 0;
        GridWalker walker(config.sweep);
        for (std::size_t i = 0; i < walker.total(); ++i, walker.advance()) {
            ordered_json p = point_parameters(config, walker.index());
            complete_polarization(p);
            const ProtocolPoint point = evaluate_protocol_point(p);

            std::vector<std::string> row;
            for (std::size_t a = 0; a < config.sweep.size(); ++a) {
                row.push_back(fmt(config.sweep[a].values[walker.index()[a]]));
            }
            row.push_back(fmt(point.gamma_tilde));
            row.push_back(fmt(point.alpha));
            row.push_back(fmt(point.epsilon));
            row.push_back(fmt(point.final_state.cycle_index));
            row.push_back(fmt(point.final_state.p1));
            if (point.erasing) {
                const double with_initial = point.series.value + 0.5;
                row.push_back(fmt(point.series.value));
                row.push_back(fmt(point.bounds.first));
                row.push_back(fmt(point.bounds.second));
                row.push_back(fmt(with_initial));
                row.push_back(fmt(point.bounds_with_initial.first));
                row.push_back(fmt(point.bounds_with_initial.second));
                row.push_back(fmt(protocol::energy_cost(point.epsilon, point.series.value)));
                if (point.bounds.first < point.series.value && point.series.value < point.bounds.second &&
                    point.bounds_with_initial.first < with_initial &&
                    with_initial < point.bounds_with_initial.second) {
                    ++bounds_satisfied;
                }
            } else {
                for (int k = 0; k < 7; ++k) row.push_back(fmt(nan_value()));
            }
            csv.row(row);
        }
        csv.finish();
        artifacts.files.push_back(csv_path);
        doc["results"] = {{"rows", walker.total()},
                          {"bounds_satisfied", bounds_satisfied},
                          {"csv", "protocol.csv"}};
    }

    const auto json_path = config.out_dir / "protocol_summary.json";
    write_json_file(json_path, doc);
    artifacts.files.push_back(json_path);
    return artifacts;
}

// --- demon -------------------------------------------------------------------

ordered_json ledger_json(const CycleLedger& ledger) {
    return ordered_json{{"work_extracted", ledger.work_extracted},
                        {"spin_spent", ledger.spin_spent},
                        {"memory_entropy_change", ledger.memory_entropy_change},
                        {"spin_reservoir_entropy_change", ledger.spin_reservoir_entropy_change},
                        {"heat_reservoir_entropy_change", ledger.heat_reservoir_entropy_change},
                        {"total_entropy_change", ledger.total_entropy_change()},
                        {"net_energy_cost_of_erasure", ledger.net_energy_cost_of_erasure}};
}

RunArtifacts run_demon(const RunConfig& config) {
    RunArtifacts artifacts;
    ordered_json doc = make_envelope(config);

    if (config.sweep.empty()) {
        const auto& p = config.parameters;
        const double gamma = p["gamma_tilde"].get<double>();
        const CycleLedger ledger =
            demon::demon_cycle(p["temperature"].get<double>(), gamma,
                               static_cast<int>(p["bits"].get<std::int64_t>()), p["epsilon"].get<double>());
        ordered_json results = ledger_json(ledger);
        results["entropy_price_per_bit"] = demon::erasure_entropy_price(gamma);
        doc["results"] = std::move(results);
    } else {
        const auto csv_path = config.out_dir / "demon.csv";
        CsvFile csv(csv_path);
        std::vector<std::string> header;
        for (const auto& axis : config.sweep) header.push_back(axis.parameter);
        for (const char* c : {"gamma_tilde", "alpha", "temperature", "bits", "epsilon", "work_extracted",
                              "spin_spent", "heat_reservoir_entropy_change",
                              "spin_reservoir_entropy_change", "memory_entropy_change",
                              "total_entropy_change", "net_energy_cost_of_erasure"}) {
            header.push_back(c);
        }
        csv.row(header);

        double min_total_entropy = std::numeric_limits<double>::infinity();
        GridWalker walker(config.sweep);
        for (std::size_t i = 0; i < walker.total(); ++i, walker.advance()) {
            ordered_json p = point_parameters(config, walker.index());
            complete_polarization(p);
            const double gamma = p["gamma_tilde"].get<double>();
            if (!(gamma > 0.0)) fail("demon sweep point requires gamma_tilde > 0");
            const double temperature = p["temperature"].get<double>();
            if (!(temperature > 0.0)) fail("swept 'temperature' must be positive");
            const double epsilon = p["epsilon"].get<double>();
            const int bits = static_cast<int>(p["bits"].get<std::int64_t>());
            const CycleLedger ledger = demon::demon_cycle(temperature, gamma, bits, epsilon);
            min_total_entropy = std::min(min_total_entropy, ledger.total_entropy_change());

            std::vector<std::string> row;
            for (std::size_t a = 0; a < config.sweep.size(); ++a) {
                row.push_back(fmt(config.sweep[a].values[walker.index()[a]]));
            }
            row.push_back(fmt(gamma));
            row.push_back(fmt(p["alpha"].get<double>()));
            row.push_back(fmt(temperature));
            row.push_back(fmt(static_cast<std::int64_t>(bits)));
            row.push_back(fmt(epsilon));
            row.push_back(fmt(ledger.work_extracted));
            row.push_back(fmt(ledger.spin_spent));
            row.push_back(fmt(ledger.heat_reservoir_entropy_change));
            row.push_back(fmt(ledger.spin_reservoir_entropy_change));
            row.push_back(fmt(ledger.memory_entropy_change));
            row.push_back(fmt(ledger.total_entropy_change()));
            row.push_back(fmt(ledger.net_energy_cost_of_erasure));
            csv.row(row);
        }
        csv.finish();
        artifacts.files.push_back(csv_path);
        doc["results"] = {{"rows", walker.total()},
                          {"min_total_entropy_change", min_total_entropy},
                          {"csv", "demon.csv"}};
    }

    const auto json_path = config.out_dir / "demon_summary.json";
    write_json_file(json_path, doc);
    artifacts.files.push_back(json_path);
    return artifacts;
}

// --- microsim ------------------------------------------------------------------

struct MicrosimPoint {
    TrajectoryStats stats;
    OccupationDistribution expected;
    double tv_to_expected = 0.0;
    double tv_to_binomial = nan_value();
    stats::ChiSquareResult gof;
    bool block_mode = false;
    double block_p1_analytic = nan_value();
    int total_up = 0;
};

MicrosimPoint evaluate_microsim_point(const ordered_json& p, std::uint64_t seed, std::uint64_t stream) {
    MicrosimPoint point;
    const std::string mode = p["mode"].get<std::string>();
    const int n_spins = static_cast<int>(p["n_spins"].get<std::int64_t>());
    const double m_spins_raw = p["m_spins"].is_number_integer()
                                   ? static_cast<double>(p["m_spins"].get<std::int64_t>())
                                   : p["m_spins"].get<double>();
    if (m_spins_raw != std::floor(m_spins_raw)) fail("'m_spins' must be an integer");
    const int m_spins = static_cast<int>(m_spins_raw);
    const double gamma = p["gamma_tilde"].get<double>();
    const double alpha = p["alpha"].get<double>();

    if (mode == "reservoir-bath") {
        ExchangeSimParams params;
        params.n_spins = n_spins;
        params.m_spins = m_spins;
        params.alpha = alpha;
        params.seed = seed;
        params.stream = stream;
        params.burn_in_sweeps = p["burn_in"].get<std::uint64_t>();
        params.n_samples = p["samples"].get<std::uint64_t>();
        params.thin = static_cast<int>(p["thin"].get<std::int64_t>());
        params.check_conservation = p["check_conservation"].get<bool>();
        point.stats = microsim::mc_reservoir_bath(params);

        point.total_up = static_cast<int>(std::llround(alpha * (n_spins + m_spins)));
        point.expected = microsim::exact_joint_marginal(n_spins, m_spins, point.total_up);
        const auto freq = point.stats.occupation_frequencies();
        point.tv_to_expected = stats::tv_distance(freq, point.expected.probabilities);
        const auto binomial =
            ensemble::occupation_marginal(ReservoirSpec::from_alpha(n_spins, alpha));
        point.tv_to_binomial = stats::tv_distance(freq, binomial.probabilities);
        point.gof = stats::chi_square_gof(point.stats.occupation_histogram, point.expected.probabilities);
    } else {
        BlockSimParams params;
        params.block_size = static_cast<int>(p["block_size"].get<std::int64_t>());
        params.n_spins = n_spins;
        params.gamma_tilde = gamma;
        params.m_spins = m_spins;
        params.seed = seed;
        params.stream = stream;
        params.burn_in_sweeps = p["burn_in"].get<std::uint64_t>();
        params.n_samples = p["samples"].get<std::uint64_t>();
        params.thin = static_cast<int>(p["thin"].get<std::int64_t>());
        params.check_conservation = p["check_conservation"].get<bool>();
        point.stats = microsim::mc_block_equilibrate(params);

        point.block_mode = true;
        point.block_p1_analytic = protocol::equilibrate({params.block_size, 0.5, 0, true}, gamma).p1;
        point.expected = ensemble::occupation_marginal(ReservoirSpec::from_gamma(n_spins, gamma));
        point.tv_to_expected =
            stats::tv_distance(point.stats.occupation_frequencies(), point.expected.probabilities);
        point.gof = stats::chi_square_gof(point.stats.occupation_histogram, point.expected.probabilities);
    }
    return point;
}

RunArtifacts run_microsim(const RunConfig& config) {
    RunArtifacts artifacts;
    ordered_json doc = make_envelope(config);
    const auto csv_path = config.out_dir / "microsim.csv";
    const bool block_mode = config.parameters["mode"].get<std::string>() == "block";

    if (config.sweep.empty()) {
        const MicrosimPoint point = evaluate_microsim_point(config.parameters, config.seed, 0);

        CsvFile csv(csv_path);
        csv.row({"n", "count", "frequency", "expected_probability"});
        const auto freq = point.stats.occupation_frequencies();
        for (Eigen::Index n = 0; n < point.stats.occupation_histogram.size(); ++n) {
            csv.row({fmt(static_cast<std::int64_t>(n)),
                     fmt(static_cast<std::int64_t>(point.stats.occupation_histogram[n])), fmt(freq[n]),
                     fmt(point.expected.probabilities[n])});
        }
        csv.finish();
        artifacts.files.push_back(csv_path);

        ordered_json results;
        results["tv_to_expected"] = point.tv_to_expected;
        results["chi_square"] = {{"statistic", point.gof.statistic},
                                 {"dof", point.gof.dof},
                                 {"p_value", point.gof.p_value}};
        if (block_mode) {
            results["block_p1"] = {{"estimate", point.stats.block_p1_estimate},
                                   {"stderr", point.stats.block_p1_stderr},
                                   {"analytic", point.block_p1_analytic}};
        } else {
            results["total_up"] = point.total_up;
            results["tv_to_binomial_limit"] = point.tv_to_binomial;
        }
        doc["results"] = std::move(results);
    } else {
        CsvFile csv(csv_path);
        std::vector<std::string> header;
        for (const auto& axis : config.sweep) header.push_back(axis.parameter);
        if (block_mode) {
            for (const char* c : {"n_spins", "m_spins", "block_size", "gamma_tilde", "block_p1_estimate",
                                  "block_p1_stderr", "block_p1_analytic", "z_score"}) {
                header.push_back(c);
            }
        } else {
            for (const char* c : {"n_spins", "m_spins", "alpha", "gamma_tilde", "total_up", "tv_to_exact",
                                  "tv_to_binomial", "chi2_statistic", "chi2_dof", "chi2_p_value"}) {
                header.push_back(c);
            }
        }
        csv.row(header);

        GridWalker walker(config.sweep);
        for (std::size_t i = 0; i < walker.total(); ++i, walker.advance()) {
            ordered_json p = point_parameters(config, walker.index());
            complete_polarization(p);
            const MicrosimPoint point = evaluate_microsim_point(p, config.seed, i);

            std::vector<std::string> row;
            for (std::size_t a = 0; a < config.sweep.size(); ++a) {
                row.push_back(fmt(config.sweep[a].values[walker.index()[a]]));
            }
            const double m_spins_val = p["m_spins"].is_number_integer()
                                           ? static_cast<double>(p["m_spins"].get<std::int64_t>())
                                           : p["m_spins"].get<double>();
            if (block_mode) {
                row.push_back(fmt(p["n_spins"].get<std::int64_t>()));
                row.push_back(fmt(static_cast<std::int64_t>(m_spins_val)));
                row.push_back(fmt(p["block_size"].get<std::int64_t>()));
                row.push_back(fmt(p["gamma_tilde"].get<double>()));
                row.push_back(fmt(point.stats.block_p1_estimate));
                row.push_back(fmt(point.stats.block_p1_stderr));
                row.push_back(fmt(point.block_p1_analytic));
                const double z = point.stats.block_p1_stderr > 0.0
                                     ? (point.stats.block_p1_estimate - point.block_p1_analytic) /
                                           point.stats.block_p1_stderr
                                     : nan_value();
                row.push_back(fmt(z));
            } else {
                row.push_back(fmt(p["n_spins"].get<std::int64_t>()));
                row.push_back(fmt(static_cast<std::int64_t>(m_spins_val)));
                row.push_back(fmt(p["alpha"].get<double>()));
                row.push_back(fmt(p["gamma_tilde"].get<double>()));
                row.push_back(fmt(static_cast<std::int64_t>(point.total_up)));
                row.push_back(fmt(point.tv_to_expected));
                row.push_back(fmt(point.tv_to_binomial));
                row.push_back(fmt(point.gof.statistic));
                row.push_back(fmt(static_cast<std::int64_t>(point.gof.dof)));
                row.push_back(fmt(point.gof.p_value));
            }
            csv.row(row);
        }
        csv.finish();
        artifacts.files.push_back(csv_path);
        doc["results"] = {{"rows", walker.total()}, {"csv", "microsim.csv"}};
    }

    const auto json_path = config.out_dir / "microsim_summary.json";
    write_json_file(json_path, doc);
    artifacts.files.push_back(json_path);
    return artifacts;
}

// --- maxent --------------------------------------------------------------------

RunArtifacts run_maxent(const RunConfig& config) {
    RunArtifacts artifacts;
    ordered_json doc = make_envelope(config);
    const auto csv_path = config.out_dir / "maxent.csv";

    const auto evaluate = [](const ordered_json& p) {
        const int n_spins = static_cast<int>(p["n_spins"].get<std::int64_t>());
        double target;
        if (p.contains("target_mean_n")) {
            target = p["target_mean_n"].get<double>();
        } else {
            target = p["alpha"].get<double>() * n_spins;
        }
        if (!(target > 0.0 && target < n_spins)) {
            fail("target mean occupation must lie strictly in (0, n_spins)");
        }
        const auto solved = ensemble::maxent_solve(n_spins, target, p["tol"].get<double>());
        const double gamma_closed = ensemble::gamma_from_alpha(target / n_spins);
        const auto closed =
            ensemble::occupation_marginal(ReservoirSpec::from_gamma(n_spins, gamma_closed));
        const double linf =
            (solved.distribution.probabilities - closed.probabilities).abs().maxCoeff();
        return std::make_tuple(solved, gamma_closed, closed, linf, target);
    };

    if (config.sweep.empty()) {
        ordered_json p = config.parameters;
        if (p.contains("alpha") && !p.contains("gamma_tilde")) complete_polarization(p);
        const auto [solved, gamma_closed, closed, linf, target] = evaluate(p);

        CsvFile csv(csv_path);
        csv.row({"n", "probability", "closed_form_probability"});
        for (Eigen::Index n = 0; n < solved.distribution.probabilities.size(); ++n) {
            csv.row({fmt(static_cast<std::int64_t>(n)), fmt(solved.distribution.probabilities[n]),
                     fmt(closed.probabilities[n])});
        }
        csv.finish();
        artifacts.files.push_back(csv_path);

        const double alpha = ensemble::alpha_from_gamma(solved.gamma_tilde);
        const int n_spins = static_cast<int>(p["n_spins"].get<std::int64_t>());
        ordered_json results;
        results["target_mean_n"] = target;
        results["gamma_tilde_recovered"] = solved.gamma_tilde;
        results["gamma_tilde_closed_form"] = gamma_closed;
        results["alpha"] = alpha;
        results["iterations"] = solved.iterations;
        results["linf_error"] = linf;
        results["entropy"] = {
            {"marginal", ensemble::distribution_entropy(solved.distribution, false)},
            {"microstate", ensemble::distribution_entropy(solved.distribution, true)},
            {"n_times_binary_entropy", n_spins * binary_entropy(alpha)}};
        doc["results"] = std::move(results);
    } else {
        CsvFile csv(csv_path);
        std::vector<std::string> header;
        for (const auto& axis : config.sweep) header.push_back(axis.parameter);
        for (const char* c : {"n_spins", "target_mean_n", "gamma_tilde_recovered",
                              "gamma_tilde_closed_form", "alpha", "linf_error", "iterations"}) {
            header.push_back(c);
        }
        csv.row(header);

        double max_linf = 0.0;
        GridWalker walker(config.sweep);
        for (std::size_t i = 0; i < walker.total(); ++i, walker.advance()) {
            ordered_json p = point_parameters(config, walker.index());
            if (p.contains("gamma_tilde") && !p.contains("target_mean_n")) {
                complete_polarization(p);
            }
            if (p.contains("alpha") && !p.contains("target_mean_n")) complete_polarization(p);
            const auto [solved, gamma_closed, closed, linf, target] = evaluate(p);
            max_linf = std::max(max_linf, linf);

            std::vector<std::string> row;
            for (std::size_t a = 0; a < config.sweep.size(); ++a) {
                row.push_back(fmt(config.sweep[a].values[walker.index()[a]]));
            }
            row.push_back(fmt(p["n_spins"].get<std::int64_t>()));
            row.push_back(fmt(target));
            row.push_back(fmt(solved.gamma_tilde));
            row.push_back(fmt(gamma_closed));
            row.push_back(fmt(ensemble::alpha_from_gamma(solved.gamma_tilde)));
            row.push_back(fmt(linf));
            row.push_back(fmt(static_cast<std::int64_t>(solved.iterations)));
            csv.row(row);
        }
        csv.finish();
        artifacts.files.push_back(csv_path);
        doc["results"] = {{"rows", walker.total()}, {"max_linf_error", max_linf}, {"csv", "maxent.csv"}};
    }

    const auto json_path = config.out_dir / "maxent_summary.json";
    write_json_file(json_path, doc);
    artifacts.files.push_back(json_path);
    return artifacts;
}

}  // namespace

RunArtifacts run(const RunConfig& config) {
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw io_error("cannot create output directory " + config.out_dir.string());

    try {
        switch (config.subcommand) {
            case Subcommand::model_a: return run_model_a(config);
            case Subcommand::protocol: return run_protocol_cmd(config);
            case Subcommand::microsim: return run_microsim(config);
            case Subcommand::demon: return run_demon(config);
            case Subcommand::maxent: return run_maxent(config);
        }
    } catch (const std::domain_error& e) {
        throw config_error(std::string("invalid parameter while running '") +
                           std::string(subcommand_name(config.subcommand)) + "': " + e.what());
    } catch (const std::out_of_range& e) {
        throw config_error(std::string("parameter out of range while running '") +
                           std::string(subcommand_name(config.subcommand)) + "': " + e.what());
    }
    throw config_error("unreachable subcommand");
}

}  // namespace erasure::runner
