#pragma once
// Scenario configuration read from line-oriented `key = value` files.
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraclab::lab {

enum class Scenario { optimality, radial_improvement, poisson_roundtrip, leibniz_check, dimension_trade, phi_table,
                      bootstrap_table };

/// Unknown key, malformed value or a value outside the scenario's domain.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

const char* scenario_name(Scenario s);
/// Accepts snake_case and the CLI's kebab-case; throws ConfigError otherwise.
Scenario scenario_from_name(const std::string& name);
const std::vector<Scenario>& all_scenarios();

struct ScenarioConfig {
    Scenario scenario = Scenario::phi_table;
    int dim = 1;
    double s = 0.5;
    double p = 4.0;  // "inf" allowed
    double epsilon = 0.1;

    // samples at center +- d, d geometric on [d_min, d_max], `samples` per side
    double center = 0.0;
    double d_min = 2e-5;
    double d_max = 2e-2;
    int samples = 100;
    double cutoff_inner = 0.5;
    double cutoff_outer = 1.0;

    // radial data singular on the sphere |x| = r0, supported in (annulus_inner, annulus_outer)
    double r0 = 1.0;
    double annulus_inner = 0.5;
    double annulus_outer = 1.5;

    double mesh = 0.05;
    int points = 20;
    double amplitude = 1.0;

    int pairs = 3;
    std::vector<double> radii{8.0, 16.0, 32.0};
    std::vector<double> k_values{0.7, 1.0};

    std::uint64_t rng_seed = 42;
    double tol = 1e-8;       // pass threshold; meaning per scenario
    double quad_tol = 1e-11;
    std::string output_path = ".";
};

ScenarioConfig default_config(Scenario s);
/// Keys a scenario accepts; everything else in its config file is an error.
const std::vector<std::string>& scenario_keys(Scenario s);

/// Applies one key. Throws ConfigError for unknown keys, keys foreign to the
/// scenario and unparsable values.
void set_field(ScenarioConfig& cfg, const std::string& key, const std::string& value);

/// Parses a config file body on top of default_config. The scenario comes from
/// `forced` or else from a `scenario = ...` line; a mismatch is an error.
ScenarioConfig parse_config(const std::string& text, std::optional<Scenario> forced = std::nullopt);
ScenarioConfig load_config(const std::string& path, std::optional<Scenario> forced = std::nullopt);

/// Domain checks for the scenario; throws ConfigError naming the field.
void validate(const ScenarioConfig& cfg);

/// `key = value` lines for the scenario's keys, in scenario_keys order.
std::string to_text(const ScenarioConfig& cfg);

}  // namespace fraclab::lab
