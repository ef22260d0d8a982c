#include "fraclab/lab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fraclab/errors.hpp"
#include "fraclab/kernels.hpp"
#include "fraclab/lab/csv.hpp"
#include "fraclab/regularity.hpp"

namespace fraclab::lab {

namespace {

struct Named {
    Scenario id;
    const char* name;
};

constexpr Named kNames[] = {{Scenario::optimality, "optimality"},
                            {Scenario::radial_improvement, "radial_improvement"},
                            {Scenario::poisson_roundtrip, "poisson_roundtrip"},
                            {Scenario::leibniz_check, "leibniz_check"},
                            {Scenario::dimension_trade, "dimension_trade"},
                            {Scenario::phi_table, "phi_table"},
                            {Scenario::bootstrap_table, "bootstrap_table"}};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
    const std::string t = trim(v);
    if (t == "inf" || t == "infinity") return kInfiniteP;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(out))
        throw ConfigError(key + ": expected a real number, got '" + v + "'");
    return out;
}

template <class Int>
Int parse_int(const std::string& key, const std::string& v) {
    const std::string t = trim(v);
    Int out = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(key, item));
    if (out.empty()) throw ConfigError(key + ": expected a comma-separated list");
    return out;
}

std::string list_text(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + cell(v[i]);
    return out;
}

const std::vector<std::string> kCommon = {"rng_seed", "tol", "quad_tol", "output_path"};

std::vector<std::string> with_common(std::vector<std::string> v) {
    v.insert(v.begin(), "scenario");
    v.insert(v.end(), kCommon.begin(), kCommon.end());
    return v;
}

void fail(const std::string& field, const std::string& why) { throw ConfigError(field + ": " + why); }

void require(bool ok, const std::string& field, const std::string& why) {
    if (!ok) fail(field, why);
}

KernelSpec checked_spec(const ScenarioConfig& c) {
    require(c.dim >= 1 && c.dim <= 3, "dim", "must be 1, 2 or 3");
    try {
        return KernelSpec::make(c.dim, c.s);
    } catch (const DomainError& e) {
        fail("s", e.what());
    }
    return {};
}

std::string p_text(double p) { return std::isinf(p) ? "inf" : cell(p); }

}  // namespace

const char* scenario_name(Scenario s) {
    for (const auto& n : kNames)
        if (n.id == s) return n.name;
    return "unknown";
}

Scenario scenario_from_name(const std::string& name) {
    std::string t = trim(name);
    std::replace(t.begin(), t.end(), '-', '_');
    for (const auto& n : kNames)
        if (t == n.name) return n.id;
    throw ConfigError("scenario: unknown scenario '" + name + "'");
}

const std::vector<Scenario>& all_scenarios() {
    static const std::vector<Scenario> all = [] {
        std::vector<Scenario> v;
        for (const auto& n : kNames) v.push_back(n.id);
        return v;
    }();
    return all;
}

ScenarioConfig default_config(Scenario s) {
    ScenarioConfig c;
    c.scenario = s;
    switch (s) {
        case Scenario::optimality:
            c.dim = 1, c.s = 0.5, c.p = 4.0, c.epsilon = 0.1;
            c.d_min = 2e-5, c.d_max = 2e-2, c.samples = 100;
            c.tol = 0.05, c.quad_tol = 1e-12;
            break;
        case Scenario::radial_improvement:
            c.dim = 3, c.s = 0.5, c.p = 4.0, c.epsilon = 0.05;
            c.d_min = 1e-7, c.d_max = 1e-4, c.samples = 100;
            c.tol = 0.05, c.quad_tol = 1e-11;
            break;
        case Scenario::poisson_roundtrip:
            c.dim = 1, c.s = 0.3, c.mesh = 0.05, c.points = 20;
            c.tol = 1e-2, c.quad_tol = 1e-11;
            break;
        case Scenario::leibniz_check:
            c.dim = 1, c.s = 0.3, c.pairs = 3;
            c.tol = 1e-7;
            break;
        case Scenario::dimension_trade:
            c.tol = 1e-5, c.quad_tol = 1e-11;
            break;
        case Scenario::phi_table:
            c.dim = 3, c.s = 0.75;
            c.tol = 1e-8;
            break;
        case Scenario::bootstrap_table:
            c.dim = 3, c.s = 0.5, c.p = 4.0;
            break;
    }
    return c;
}

const std::vector<std::string>& scenario_keys(Scenario s) {
    static const std::vector<std::string> opt = with_common(
        {"dim", "s", "p", "epsilon", "center", "d_min", "d_max", "samples", "cutoff_inner", "cutoff_outer"});
    static const std::vector<std::string> rad =
        with_common({"dim", "s", "p", "epsilon", "r0", "annulus_inner", "annulus_outer", "d_min", "d_max", "samples"});
    static const std::vector<std::string> poi = with_common({"dim", "s", "mesh", "points", "amplitude"});
    static const std::vector<std::string> lei = with_common({"dim", "s", "pairs", "radii"});
    static const std::vector<std::string> dim = with_common({"k_values"});
    static const std::vector<std::string> phi = with_common({"dim", "s"});
    static const std::vector<std::string> boo = with_common({"dim", "s", "p"});
    switch (s) {
        case Scenario::optimality: return opt;
        case Scenario::radial_improvement: return rad;
        case Scenario::poisson_roundtrip: return poi;
        case Scenario::leibniz_check: return lei;
        case Scenario::dimension_trade: return dim;
        case Scenario::phi_table: return phi;
        case Scenario::bootstrap_table: return boo;
    }
    return phi;
}

void set_field(ScenarioConfig& c, const std::string& key, const std::string& value) {
    const auto& keys = scenario_keys(c.scenario);
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw ConfigError(key + ": unknown key for scenario " + scenario_name(c.scenario));
    if (key == "scenario") {
        if (scenario_from_name(value) != c.scenario)
            throw ConfigError("scenario: file names '" + trim(value) + "' but " + scenario_name(c.scenario) +
                              " was requested");
    } else if (key == "dim") c.dim = parse_int<int>(key, value);
    else if (key == "s") c.s = parse_real(key, value);
    else if (key == "p") c.p = parse_real(key, value);
    else if (key == "epsilon") c.epsilon = parse_real(key, value);
    else if (key == "center") c.center = parse_real(key, value);
    else if (key == "d_min") c.d_min = parse_real(key, value);
    else if (key == "d_max") c.d_max = parse_real(key, value);
    else if (key == "samples") c.samples = parse_int<int>(key, value);
    else if (key == "cutoff_inner") c.cutoff_inner = parse_real(key, value);
    else if (key == "cutoff_outer") c.cutoff_outer = parse_real(key, value);
    else if (key == "r0") c.r0 = parse_real(key, value);
    else if (key == "annulus_inner") c.annulus_inner = parse_real(key, value);
    else if (key == "annulus_outer") c.annulus_outer = parse_real(key, value);
    else if (key == "mesh") c.mesh = parse_real(key, value);
    else if (key == "points") c.points = parse_int<int>(key, value);
    else if (key == "amplitude") c.amplitude = parse_real(key, value);
    else if (key == "pairs") c.pairs = parse_int<int>(key, value);
    else if (key == "radii") c.radii = parse_list(key, value);
    else if (key == "k_values") c.k_values = parse_list(key, value);
    else if (key == "rng_seed") c.rng_seed = parse_int<std::uint64_t>(key, value);
    else if (key == "tol") c.tol = parse_real(key, value);
    else if (key == "quad_tol") c.quad_tol = parse_real(key, value);
    else if (key == "output_path") c.output_path = trim(value);
}

ScenarioConfig parse_config(const std::string& text, std::optional<Scenario> forced) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        for (const auto& [k, v] : entries)
            if (k == key) throw ConfigError(key + ": given twice");
        entries.emplace_back(key, trim(line.substr(eq + 1)));
    }
    std::optional<Scenario> scenario = forced;
    for (const auto& [k, v] : entries)
        if (k == "scenario" && !scenario) scenario = scenario_from_name(v);
    if (!scenario) throw ConfigError("scenario: not given");
    ScenarioConfig c = default_config(*scenario);
    for (const auto& [k, v] : entries) set_field(c, k, v);
    return c;
}

ScenarioConfig load_config(const std::string& path, std::optional<Scenario> forced) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), forced);
}

void validate(const ScenarioConfig& c) {
    require(c.tol > 0.0, "tol", "must be > 0");
    require(c.quad_tol > 0.0, "quad_tol", "must be > 0");
    require(!c.output_path.empty(), "output_path", "must not be empty");
    auto check_sampling = [&] {
        require(c.d_min > 0.0, "d_min", "must be > 0");
        require(c.d_max > c.d_min, "d_max", "must exceed d_min");
        require(c.samples >= 100, "samples", "must be >= 100 per side (the fit needs 200 samples)");
    };
    switch (c.scenario) {
        case Scenario::optimality: {
            const KernelSpec spec = checked_spec(c);
            require(c.p >= 1.0, "p", "must be >= 1");
            require(c.epsilon > 0.0, "epsilon", "must be > 0");
            const auto pred = predict_exponent(c.dim, c.s, c.p);
            require(pred.case_tag != RegularityCase::out_of_range && pred.derivative_order == 0 && pred.alpha > 0.0,
                    "p", "the predicted exponent must lie in (0, 1) at value level");
            require(pred.alpha + 2.0 * c.epsilon < 1.0, "epsilon", "needs alpha + 2 epsilon < 1");
            require(c.cutoff_inner > 0.0 && c.cutoff_outer > c.cutoff_inner, "cutoff_outer",
                    "needs 0 < cutoff_inner < cutoff_outer");
            check_sampling();
            require(std::fabs(c.center) + c.d_max < c.cutoff_outer, "d_max", "samples must stay inside the cutoff");
            (void)spec;
            break;
        }
        case Scenario::radial_improvement: {
            require(c.dim >= 2, "dim", "radial improvement needs dim >= 2");
            const KernelSpec spec = checked_spec(c);
            require(c.p >= 1.0, "p", "must be >= 1");
            require(c.annulus_inner > 0.0, "annulus_inner", "must be > 0 (the annulus stays away from the origin)");
            require(c.r0 > c.annulus_inner && c.annulus_outer > c.r0, "r0", "needs annulus_inner < r0 < annulus_outer");
            if (std::isfinite(c.p)) require(c.epsilon > 0.0, "epsilon", "must be > 0 for finite p");
            const auto pred = predict_exponent(c.dim, c.s, c.p, true);
            require(pred.case_tag != RegularityCase::out_of_range, "p", "outside the admissible range");
            const double total = pred.alpha + (std::isfinite(c.p) ? c.epsilon : 0.0);
            require(std::fabs(total - 1.0) >= 0.1 && total < 1.9 && total > 0.0, "epsilon",
                    "target exponent must stay 0.1 away from 1 and below 1.9");
            require(total < 1.0 || c.s > 0.5, "s", "derivative-level fits need s > 1/2");
            check_sampling();
            const double gap = std::min(c.r0 - c.annulus_inner, c.annulus_outer - c.r0);
            require(c.d_max <= 0.1 * gap, "d_max", "must be at most a tenth of the distance from r0 to the annulus ends");
            (void)spec;
            break;
        }
        case Scenario::poisson_roundtrip: {
            const KernelSpec spec = checked_spec(c);
            require(spec.branch != KernelBranch::log1d, "s", "the 1-D logarithmic branch is not supported here");
            require(c.mesh > 0.0 && c.mesh <= 0.25, "mesh", "must lie in (0, 0.25]");
            require(c.points >= 2, "points", "must be >= 2");
            require(std::isfinite(c.amplitude), "amplitude", "must be finite");
            break;
        }
        case Scenario::leibniz_check: {
            checked_spec(c);
            require(c.s < 1.0, "s", "must be < 1");
            require(c.pairs >= 1, "pairs", "must be >= 1");
            require(c.radii.size() >= 2, "radii", "needs at least two radii");
            for (std::size_t i = 0; i < c.radii.size(); ++i) {
                require(c.radii[i] > 4.0, "radii", "must exceed 4 (twice the largest cutoff radius)");
                if (i) require(c.radii[i] > c.radii[i - 1], "radii", "must be increasing");
            }
            break;
        }
        case Scenario::dimension_trade:
            for (double k : c.k_values) require(k > 0.0, "k_values", "must be > 0");
            break;
        case Scenario::phi_table: {
            const KernelSpec spec = checked_spec(c);
            require(spec.branch == KernelBranch::generic && c.s < 1.0, "s",
                    "needs the generic branch with s < 1 (Phi has no singularity otherwise)");
            break;
        }
        case Scenario::bootstrap_table:
            checked_spec(c);
            require(c.p > c.dim / (2.0 * c.s) * (1.0 + 1e-12), "p", "must exceed N / (2s)");
            break;
    }
}

std::string to_text(const ScenarioConfig& c) {
    std::string out;
    for (const auto& key : scenario_keys(c.scenario)) {
        std::string v;
        if (key == "scenario") v = scenario_name(c.scenario);
        else if (key == "dim") v = std::to_string(c.dim);
        else if (key == "s") v = cell(c.s);
        else if (key == "p") v = p_text(c.p);
        else if (key == "epsilon") v = cell(c.epsilon);
        else if (key == "center") v = cell(c.center);
        else if (key == "d_min") v = cell(c.d_min);
        else if (key == "d_max") v = cell(c.d_max);
        else if (key == "samples") v = std::to_string(c.samples);
        else if (key == "cutoff_inner") v = cell(c.cutoff_inner);
        else if (key == "cutoff_outer") v = cell(c.cutoff_outer);
        else if (key == "r0") v = cell(c.r0);
        else if (key == "annulus_inner") v = cell(c.annulus_inner);
        else if (key == "annulus_outer") v = cell(c.annulus_outer);
        else if (key == "mesh") v = cell(c.mesh);
        else if (key == "points") v = std::to_string(c.points);
        else if (key == "amplitude") v = cell(c.amplitude);
        else if (key == "pairs") v = std::to_string(c.pairs);
        else if (key == "radii") v = list_text(c.radii);
        else if (key == "k_values") v = list_text(c.k_values);
        else if (key == "rng_seed") v = std::to_string(c.rng_seed);
        else if (key == "tol") v = cell(c.tol);
        else if (key == "quad_tol") v = cell(c.quad_tol);
        else if (key == "output_path") v = c.output_path;
        out += key + " = " + v + "\n";
    }
    return out;
}

}  // namespace fraclab::lab
