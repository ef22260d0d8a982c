// Command-line runner. Exit codes: 0 pass, 1 scientific mismatch,
// 2 usage or config error, 3 numerical failure.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fraclab/errors.hpp"
#include "fraclab/frac_operator.hpp"
#include "fraclab/kernels.hpp"
#include "fraclab/lab/config.hpp"
#include "fraclab/lab/csv.hpp"
#include "fraclab/lab/scenarios.hpp"
#include "fraclab/potential_solver.hpp"
#include "fraclab/radial_kernel.hpp"
#include "fraclab/regularity.hpp"

using namespace fraclab;

namespace {

enum Exit { kPass = 0, kMismatch = 1, kUsage = 2, kNumerical = 3 };

struct ScenarioFlags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
};

Point parse_point(const std::string& text) {
    Point p{};
    std::stringstream ss(text);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 3) throw lab::ConfigError("point: at most three coordinates");
        try {
            p[i++] = std::stod(item);
        } catch (const std::exception&) {
            throw lab::ConfigError("point: cannot parse '" + item + "'");
        }
    }
    if (i == 0) throw lab::ConfigError("point: expected x[,y[,z]]");
    return p;
}

int run_scenario_command(lab::Scenario sc, const ScenarioFlags& f) {
    lab::ScenarioConfig cfg = f.config.empty() ? lab::default_config(sc) : lab::load_config(f.config, sc);
    if (!f.out.empty()) cfg.output_path = f.out;
    if (f.seed) cfg.rng_seed = *f.seed;
    if (f.tol) cfg.tol = *f.tol;
    const lab::RunReport rep = lab::run_scenario(cfg);
    std::cout << lab::report_text(rep);
    return rep.pass ? kPass : kMismatch;
}

ScalarField named_field(const std::string& name, int dim) {
    if (name == "bump")
        return ScalarField::compactly_supported(
            [](const Point& y) {
                const double t = norm(y);
                return t >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - t * t));
            },
            {}, 1.0);
    if (name == "gaussian")
        return ScalarField::decaying([](const Point& y) { return std::exp(-dot(y, y)); }, 40.0, 1e20);
    (void)dim;
    throw lab::ConfigError("field: expected bump or gaussian");
}

int cmd_kernel(int dim, double s, const std::vector<double>& radii) {
    const KernelSpec spec = KernelSpec::make(dim, s);
    lab::CsvTable t{{"r", "riesz_kernel", "green_kernel"}, {}};
    for (double r : radii) t.add({lab::cell(r), lab::cell(riesz_kernel(spec, r)), lab::cell(green_kernel(spec, r))});
    std::cout << lab::to_csv(t);
    return kPass;
}

int cmd_phi(int dim, double s, const std::vector<double>& ts) {
    const KernelSpec spec = KernelSpec::make(dim, s);
    const PhiKernel phi(spec);
    lab::CsvTable t{{"t", "series", "direct"}, {}};
    for (double x : ts) t.add({lab::cell(x), lab::cell(phi.value(x)), lab::cell(phi_direct(spec, x))});
    std::cout << lab::to_csv(t);
    return kPass;
}

int cmd_frac_lap(int dim, double s, const std::string& field, const std::string& at, double tol) {
    const KernelSpec spec = KernelSpec::make(dim, s);
    const Estimate e = frac_laplacian(spec, named_field(field, dim), parse_point(at), tol);
    std::cout << "value = " << lab::cell(e.value) << "\nerror = " << lab::cell(e.error) << "\n";
    return kPass;
}

// (-Delta)^s psi + V psi = f with f a unit bump and V = amplitude * bump of radius 1/2.
int cmd_solve(int dim, double s, double amplitude, double h, const std::string& out) {
    const KernelSpec spec = KernelSpec::make(dim, s);
    auto bump = [](double radius, double amp) {
        return ScalarField::compactly_supported(
            [radius, amp](const Point& y) {
                const double t = norm(y) / radius;
                return t >= 1.0 ? 0.0 : amp * std::exp(1.0 - 1.0 / (1.0 - t * t));
            },
            {}, radius);
    };
    const EvaluationGrid grid = dim == 1 ? EvaluationGrid::uniform(-1.5, 1.5, h) : [&] {
        EvaluationGrid g = EvaluationGrid::uniform(h, 1.5, h);
        g.radial = true;
        return g;
    }();
    const PotentialSolution sol = solve_schrodinger_fixed_point(spec, bump(0.5, amplitude), bump(1.0, 1.0), grid);
    lab::CsvTable t{{dim == 1 ? "x" : "r", "psi", "residual"}, {}};
    for (std::size_t i = 0; i < sol.values.size(); ++i)
        t.add({lab::cell(sol.grid.nodes[i]), lab::cell(sol.values[i]), lab::cell(sol.residuals[i])});
    if (out.empty()) std::cout << lab::to_csv(t);
    else {
        std::filesystem::create_directories(out);
        lab::emit_csv(t, (std::filesystem::path(out) / "solve.csv").string());
    }
    std::cerr << "iterations = " << sol.iterations << "\ncontraction = " << lab::cell(sol.contraction_estimate)
              << "\nresidual_sup = " << lab::cell(sol.residual_sup) << "\nconverged = " << (sol.converged ? "true" : "false")
              << "\n";
    return sol.converged ? kPass : kNumerical;
}

int cmd_fit(const std::string& input, const std::string& column, const std::string& center, std::uint64_t seed,
            double r_near, bool gradient) {
    const lab::CsvTable t = lab::parse_csv(lab::read_file(input));
    auto col = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < t.header.size(); ++i)
            if (t.header[i] == name) return static_cast<int>(i);
        return -1;
    };
    int xc[3] = {col("x"), -1, -1};
    if (xc[0] < 0) xc[0] = col("rho");
    if (xc[0] < 0) xc[0] = col("x1"), xc[1] = col("x2"), xc[2] = col("x3");
    const int vc = col(column);
    if (xc[0] < 0 || vc < 0) throw lab::ConfigError("input: needs a coordinate column (x, rho or x1..x3) and '" + column + "'");
    FitConfig fc;
    fc.r_near = r_near;
    const Point c = parse_point(center);
    FitResult r;
    if (gradient) {
        std::vector<VectorSample> ss;
        for (const auto& row : t.rows) {
            VectorSample v;
            for (int k = 0; k < 3; ++k) v.x[k] = xc[k] >= 0 ? std::stod(row[xc[k]]) : 0.0;
            v.value[0] = std::stod(row[vc]);
            ss.push_back(v);
        }
        r = fit_gradient_exponent(ss, c, seed, fc);
    } else {
        std::vector<Sample> ss;
        for (const auto& row : t.rows) {
            Sample v;
            for (int k = 0; k < 3; ++k) v.x[k] = xc[k] >= 0 ? std::stod(row[xc[k]]) : 0.0;
            v.value = std::stod(row[vc]);
            ss.push_back(v);
        }
        r = fit_holder_exponent(ss, c, seed, fc);
    }
    std::cout << "exponent_hat = " << lab::cell(r.exponent_hat) << "\nstderr_hat = " << lab::cell(r.stderr_hat)
              << "\nconstant = " << lab::cell(r.constant)
              << "\nlog_model_preferred = " << (r.log_model_preferred ? "true" : "false")
              << "\npair_count = " << r.pair_count << "\nscale_min = " << lab::cell(r.scale_min)
              << "\nscale_max = " << lab::cell(r.scale_max)
              << "\nlow_confidence = " << (r.low_confidence ? "true" : "false") << "\n";
    return kPass;
}

std::string kebab(const char* name) {
    std::string s = name;
    for (char& ch : s)
        if (ch == '_') ch = '-';
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional Laplacian experiments"};
    app.require_subcommand(1);

    std::vector<std::pair<lab::Scenario, CLI::App*>> scenario_cmds;
    ScenarioFlags flags;
    for (lab::Scenario sc : lab::all_scenarios()) {
        CLI::App* sub = app.add_subcommand(kebab(lab::scenario_name(sc)), std::string("run the ") + lab::scenario_name(sc) + " scenario");
        sub->add_option("--config", flags.config, "key = value config file")->check(CLI::ExistingFile);
        sub->add_option("--out", flags.out, "output directory (overrides output_path)");
        sub->add_option("--seed", flags.seed, "rng seed (overrides rng_seed)");
        sub->add_option("--tol", flags.tol, "pass tolerance (overrides tol)");
        scenario_cmds.emplace_back(sc, sub);
    }

    int dim = 1;
    double s = 0.5, tol = 1e-8, amplitude = 0.3, h = 0.1, r_near = kUnbounded;
    std::vector<double> values;
    std::string field = "bump", at = "0", out, input, column = "value", center = "0";
    std::uint64_t seed = 42;
    bool gradient = false;

    CLI::App* kernel = app.add_subcommand("kernel", "Riesz and Green kernel values");
    kernel->add_option("--dim", dim)->required();
    kernel->add_option("--s", s)->required();
    kernel->add_option("--r", values, "radii")->required()->delimiter(',');

    CLI::App* phi = app.add_subcommand("phi", "angular kernel Phi(t)");
    phi->add_option("--dim", dim)->required();
    phi->add_option("--s", s)->required();
    phi->add_option("--t", values, "ratios")->required()->delimiter(',');

    CLI::App* frac = app.add_subcommand("frac-lap", "(-Delta)^s of a named field at a point");
    frac->add_option("--dim", dim)->required();
    frac->add_option("--s", s)->required();
    frac->add_option("--field", field, "bump or gaussian");
    frac->add_option("--x", at, "point x[,y[,z]]");
    frac->add_option("--tol", tol);

    CLI::App* solve = app.add_subcommand("solve", "fixed-point solve with a bump potential");
    solve->add_option("--dim", dim)->required();
    solve->add_option("--s", s)->required();
    solve->add_option("--amplitude", amplitude, "potential amplitude");
    solve->add_option("--spacing", h, "grid spacing");
    solve->add_option("--out", out, "output directory");

    CLI::App* fit = app.add_subcommand("fit", "Holder exponent of CSV samples");
    fit->add_option("--input", input)->required()->check(CLI::ExistingFile);
    fit->add_option("--column", column, "value column");
    fit->add_option("--center", center, "center x[,y[,z]]");
    fit->add_option("--seed", seed);
    fit->add_option("--r-near", r_near, "near endpoints lie within this distance of the center");
    fit->add_flag("--gradient", gradient, "fit the increments of a derivative column");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        for (const auto& [sc, sub] : scenario_cmds)
            if (sub->parsed()) return run_scenario_command(sc, flags);
        if (kernel->parsed()) return cmd_kernel(dim, s, values);
        if (phi->parsed()) return cmd_phi(dim, s, values);
        if (frac->parsed()) return cmd_frac_lap(dim, s, field, at, tol);
        if (solve->parsed()) return cmd_solve(dim, s, amplitude, h, out);
        if (fit->parsed()) return cmd_fit(input, column, center, seed, r_near, gradient);
    } catch (const lab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {  // DataError and stod failures
        std::cerr << "data error: " << e.what() << "\n";
        return kNumerical;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
    return kUsage;
}
