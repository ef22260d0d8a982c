// One pass/fail line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "../support/exact_partition.hpp"
#include "fraclab/errors.hpp"
#include "fraclab/frac_operator.hpp"
#include "fraclab/kernels.hpp"
#include "fraclab/lab/csv.hpp"
#include "fraclab/lab/scenarios.hpp"
#include "fraclab/regularity.hpp"

using namespace fraclab;
using namespace fraclab::lab;

namespace {

// Tolerances and budgets.
constexpr double kScalingRelErr = 1e-3;
constexpr double kScalingSeconds = 60;
constexpr double kPhiTol = 1e-8;
constexpr double kPhiSeconds = 30;
constexpr double kPoissonTol = 1e-2;
constexpr double kHalvingFactor = 1.5;
constexpr double kOptimalityTarget = 0.85, kOptimalityBand = 0.05, kOptimalityCeiling = 0.95;
constexpr double kOptimalitySeconds = 120;
constexpr double kRadialTarget = 0.80, kRadialBand = 0.05, kRadialNd = 0.30, kRadialSigmas = 3.0;
constexpr double kRadialSeconds = 300;
constexpr double kTradeTol = 1e-5;
constexpr double kLeibnizTol = 1e-7;
constexpr int kBootstrapSteps = 23;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string workdir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "fraclab_acceptance" / name;
    std::filesystem::remove_all(dir);
    return dir.string();
}

Outcome scaling_law() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int run = 0, skipped = 0;
    for (int n = 1; n <= 3; ++n)
        for (double s : {0.25, 0.5, 0.75}) {
            if (s > 0.5 * n) {  // outside 0 < s <= N/2
                skipped += 2;
                continue;
            }
            const auto spec = KernelSpec::make(n, s);
            for (double beta : {0.3 * s, 0.9 * s}) {
                ScalarField f = ScalarField::decaying([beta](const Point& y) { return std::pow(norm(y), beta); }, -beta, 1.0);
                f.singular_points.push_back({0, 0, 0});
                const double want = scaling_constant(spec, beta);
                const double got = frac_laplacian_at(spec, f, {1, 0, 0}, 1e-5 * std::fabs(want));
                worst = std::max(worst, std::fabs(got / want - 1.0));
                ++run;
            }
        }
    const double t = seconds_since(t0);
    return {worst <= kScalingRelErr && t <= kScalingSeconds,
            std::to_string(run) + " cases, " + std::to_string(skipped) + " skipped (s > N/2), max rel err " +
                fmt("%.2e", worst) + ", " + fmt("%.1f s", t)};
}

Outcome phi_consistency() {
    const auto t0 = std::chrono::steady_clock::now();
    struct P {
        int n;
        double s;
    };
    bool ok = true;
    double worst_slope = 0.0;
    int runs = 0;
    for (const P p : {P{1, 0.25}, P{1, 0.4}, P{2, 0.25}, P{2, 0.5}, P{2, 0.75}, P{3, 0.25}, P{3, 0.5}, P{3, 0.75}}) {
        auto c = default_config(Scenario::phi_table);
        c.dim = p.n, c.s = p.s, c.tol = kPhiTol;
        c.output_path = workdir("phi");
        const auto r = run_scenario(c);
        ok = ok && r.pass;
        if (p.s != 0.5) worst_slope = std::max(worst_slope, std::fabs(std::stod(r.get("order_slope")) - (2 * p.s - 1)));
        ++runs;
    }
    const double t = seconds_since(t0);
    return {ok && t <= kPhiSeconds, std::to_string(runs) + " (N, s) tables, worst order-slope error " +
                                        fmt("%.3f", worst_slope) + ", " + fmt("%.1f s", t)};
}

Outcome poisson() {
    struct P {
        int n;
        double s;
    };
    bool ok = true;
    std::string detail;
    for (const P p : {P{1, 0.3}, P{2, 0.5}, P{2, 1.0}}) {
        auto c = default_config(Scenario::poisson_roundtrip);
        c.dim = p.n, c.s = p.s, c.tol = kPoissonTol, c.mesh = 0.05;
        c.output_path = workdir("poisson");
        const auto r = run_scenario(c);
        const double res = std::stod(r.get("max_residual"));
        const double ratio = std::stod(r.get("halving_ratio"));
        ok = ok && r.pass && res <= kPoissonTol && ratio >= kHalvingFactor;
        detail += (detail.empty() ? "" : "; ") + std::string("N=") + std::to_string(p.n) + " s=" + fmt("%g", p.s) +
                  " residual " + fmt("%.2e", res) + " halving x" + fmt("%.1f", ratio);
    }
    return {ok, detail};
}

RunReport optimality_run(const std::string& dir) {
    auto c = default_config(Scenario::optimality);
    c.output_path = workdir(dir);
    return run_scenario(c);
}

Outcome optimality() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = optimality_run("optimality");
    const double t = seconds_since(t0);
    const double b = r.measured->exponent_hat;
    const bool ok = std::fabs(b - kOptimalityTarget) <= kOptimalityBand && b < kOptimalityCeiling &&
                    r.measured->pair_count == 200 && t <= kOptimalitySeconds;
    return {ok, "exponent " + fmt("%.4f", b) + " +- " + fmt("%.4f", r.measured->stderr_hat) + ", " +
                    std::to_string(r.measured->pair_count) + " pairs, " + fmt("%.1f s", t)};
}

Outcome radial() {
    const auto t0 = std::chrono::steady_clock::now();
    auto c = default_config(Scenario::radial_improvement);
    c.output_path = workdir("radial");
    const auto r = run_scenario(c);
    const double t = seconds_since(t0);
    const double b = r.measured->exponent_hat, se = r.measured->stderr_hat;
    const double sig = (b - kRadialNd) / se;
    const bool ok = std::fabs(b - kRadialTarget) <= kRadialBand && sig >= kRadialSigmas && t <= kRadialSeconds;
    return {ok, "exponent " + fmt("%.4f", b) + " +- " + fmt("%.4f", se) + ", 3-D prediction excluded at " +
                    fmt("%.0f", sig) + " sigma, " + fmt("%.1f s", t)};
}

Outcome dimension_trade() {
    auto c = default_config(Scenario::dimension_trade);
    c.tol = kTradeTol;
    c.k_values = {0.7, 1.0};
    c.output_path = workdir("trade");
    const auto r = run_scenario(c);
    return {r.pass, "max |lhs - rhs| " + r.get("max_difference")};
}

Outcome leibniz() {
    bool ok = true;
    std::string detail;
    for (const auto& [n, s] : {std::pair{1, 0.3}, std::pair{2, 0.7}}) {
        auto c = default_config(Scenario::leibniz_check);
        c.dim = n, c.s = s, c.tol = kLeibnizTol;
        c.pairs = 3;
        c.radii = {8, 16, 32};
        c.output_path = workdir("leibniz");
        const auto r = run_scenario(c);
        ok = ok && r.pass;
        detail += (detail.empty() ? "" : "; ") + r.get("variant") + " max diff " +
                  fmt("%.1e", std::stod(r.get("max_difference"))) + " far-field spread " +
                  fmt("%.1f%%", 100 * std::stod(r.get("far_field_variation")));
    }
    return {ok, detail};
}

Outcome exponent_calculus() {
    const auto tr = bootstrap_schedule(3, 0.5, 4.0);
    // exact: eps = 1/3 - 1/4 = 1/12, q_k^{-1} = 1 - k/24, stop at the first k with q_k^{-1} < 1/12
    int k = 0;
    while (24 - k >= 2) ++k;
    bool ok = tr.iterations == kBootstrapSteps && k == kBootstrapSteps;
    int mismatches = 0;
    const auto pts = exact::sweep();
    for (const auto& q : pts) {
        const auto want = exact::partition(q.radial ? 1 : q.dim, q.s, q.p);
        const auto got = predict_exponent(q.dim, exact::to_double(q.s), exact::to_double(q.p), q.radial);
        if (got.case_tag != want.tag ||
            (want.tag != RegularityCase::out_of_range &&
             (got.log_correction != want.log_correction || got.derivative_order != want.derivative_order)))
            ++mismatches;
    }
    ok = ok && mismatches == 0 && pts.size() == 200;
    return {ok, "bootstrap stops at k = " + std::to_string(tr.iterations) + ", " + std::to_string(pts.size()) +
                    "-point sweep with " + std::to_string(mismatches) + " misclassifications"};
}

Outcome determinism() {
    setenv("FRACLAB_THREADS", "1", 1);
    const auto a = optimality_run("determinism_a");
    setenv("FRACLAB_THREADS", "4", 1);
    const auto b = optimality_run("determinism_b");
    unsetenv("FRACLAB_THREADS");
    const std::string ca = read_file(a.config.output_path + "/optimality.csv");
    const std::string cb = read_file(b.config.output_path + "/optimality.csv");
    return {ca == cb && !ca.empty(), std::to_string(ca.size()) + " bytes, " + (ca == cb ? "identical" : "different") +
                                         " across 1 and 4 worker threads"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"scaling law", scaling_law},
        {"Phi consistency", phi_consistency},
        {"Poisson round trip", poisson},
        {"optimality experiment", optimality},
        {"radial improvement", radial},
        {"dimension trade", dimension_trade},
        {"Leibniz rule and localization errors", leibniz},
        {"exponent calculus", exponent_calculus},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("criterion %zu: %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
