#pragma once
// Named experiments. Each run validates its config, writes CSVs and a
// key-value report into config.output_path and returns the report.
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraclab/lab/config.hpp"
#include "fraclab/regularity.hpp"

namespace fraclab::lab {

struct RunReport {
    ScenarioConfig config;
    std::optional<ExponentReport> predicted;
    std::optional<FitResult> measured;
    std::vector<std::pair<std::string, std::string>> metrics;
    bool pass = false;
    std::vector<std::string> artifacts;  // file names inside config.output_path

    void metric(const std::string& key, double value);
    void metric(const std::string& key, const std::string& value);
    /// Value of a metric; throws std::out_of_range when absent.
    const std::string& get(const std::string& key) const;
};

/// Flat `key = value` text: config echo, prediction, fit, metrics, pass, artifacts.
std::string report_text(const RunReport& r);

/// Pass semantics:
/// - optimality: |beta_hat - (alpha + eps)| <= tol and beta_hat < alpha + 2 eps.
/// - radial_improvement: |beta_hat - target| <= tol, target from the 1-D effective
///   dimension (minus one at derivative level); when the N-D prediction differs by
///   more than 0.1 it must lie at least 3 fitted standard errors below beta_hat.
/// - poisson_roundtrip: max residual at `mesh` <= tol (the run at 2 mesh is reported).
/// - leibniz_check: every |lhs - rhs| <= 2 tol, plateau values finite and the
///   weighted far-field values vary by < 25%.
/// - dimension_trade: every |lhs - rhs| <= tol.
/// - phi_table: relative differences <= tol and the singularity order within 0.02
///   of 2s - 1 (log model preferred at s = 1/2).
/// - bootstrap_table: the schedule terminates.
RunReport run_scenario(const ScenarioConfig& cfg);

RunReport run_optimality(const ScenarioConfig& cfg);
RunReport run_radial_improvement(const ScenarioConfig& cfg);
RunReport run_poisson_roundtrip(const ScenarioConfig& cfg);
RunReport run_leibniz_check(const ScenarioConfig& cfg);
RunReport run_dimension_trade(const ScenarioConfig& cfg);
RunReport run_phi_table(const ScenarioConfig& cfg);
RunReport run_bootstrap_table(const ScenarioConfig& cfg);

}  // namespace fraclab::lab
