#include "fraclab/lab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <stdexcept>

#include "fraclab/errors.hpp"
#include "fraclab/frac_operator.hpp"
#include "fraclab/lab/csv.hpp"
#include "fraclab/parallel.hpp"
#include "fraclab/potential_solver.hpp"
#include "fraclab/radial_kernel.hpp"

namespace fraclab::lab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kExclusionSigmas = 3.0;
constexpr double kPredictionGap = 0.1;
constexpr double kFarFieldVariation = 0.25;
constexpr double kOrderBand = 0.02;

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string p_text(double p) { return std::isinf(p) ? "inf" : cell(p); }

struct Output {
    const ScenarioConfig& cfg;
    RunReport& report;

    std::string emit(const CsvTable& t, const std::string& suffix = "") {
        const std::string name = std::string(scenario_name(cfg.scenario)) + suffix + ".csv";
        emit_csv(t, (std::filesystem::path(cfg.output_path) / name).string());
        report.artifacts.push_back(name);
        return name;
    }
};

RunReport start(const ScenarioConfig& cfg) {
    validate(cfg);
    std::filesystem::create_directories(cfg.output_path);
    RunReport r;
    r.config = cfg;
    return r;
}

void finish(RunReport& r) {
    const auto path = std::filesystem::path(r.config.output_path) / (std::string(scenario_name(r.config.scenario)) + "_report.txt");
    write_file(path.string(), report_text(r));
}

// Offsets 0, +-d_i with d_i geometric on [d_min, d_max].
std::vector<double> symmetric_offsets(const ScenarioConfig& c) {
    std::vector<double> out{0.0};
    for (int i = 0; i < c.samples; ++i) {
        const double d = c.d_min * std::pow(c.d_max / c.d_min, i / (c.samples - 1.0));
        out.push_back(d);
        out.push_back(-d);
    }
    return out;
}

FitConfig near_center_fit(const ScenarioConfig& c) {
    FitConfig f;
    f.r_near = 0.5 * c.d_min;  // the center sample is the only near endpoint
    return f;
}

ScalarField bump_field(const Point& center, double radius, double amp) {
    return ScalarField::compactly_supported(
        [center, radius, amp](const Point& y) {
            const double t = norm(y - center) / radius;
            return t >= 1.0 ? 0.0 : amp * std::exp(1.0 - 1.0 / (1.0 - t * t));
        },
        center, radius);
}

double bump_profile(double r, double amp) { return r >= 1.0 ? 0.0 : amp * std::exp(1.0 - 1.0 / (1.0 - r * r)); }

// Smooth weight: 1 on [r0 - w_in / 2, r0 + w_out / 2], 0 outside (a, b).
struct AnnulusWeight {
    double a, r0, b;
    double operator()(double r) const {
        const double w_in = 0.5 * (r0 - a), w_out = 0.5 * (b - r0);
        if (r <= a || r >= b) return 0.0;
        if (r < a + w_in) return smooth_step((r - a) / w_in);
        if (r > b - w_out) return smooth_step((b - r) / w_out);
        return 1.0;
    }
    double derivative(double r) const {
        const double w_in = 0.5 * (r0 - a), w_out = 0.5 * (b - r0);
        if (r <= a || r >= b) return 0.0;
        if (r < a + w_in) return smooth_step_derivative((r - a) / w_in) / w_in;
        if (r > b - w_out) return -smooth_step_derivative((b - r) / w_out) / w_out;
        return 0.0;
    }
    std::vector<double> edges() const { return {a, a + 0.5 * (r0 - a), b - 0.5 * (b - r0), b}; }
};

double ols_slope(const std::vector<double>& x, const std::vector<double>& y, double* ssr = nullptr) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= n, my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
    const double b = sxy / sxx;
    if (ssr) {
        *ssr = 0;
        for (std::size_t i = 0; i < x.size(); ++i) *ssr += std::pow(y[i] - my - b * (x[i] - mx), 2);
    }
    return b;
}

}  // namespace

void RunReport::metric(const std::string& key, double value) { metrics.emplace_back(key, cell(value)); }
void RunReport::metric(const std::string& key, const std::string& value) { metrics.emplace_back(key, value); }

const std::string& RunReport::get(const std::string& key) const {
    for (const auto& [k, v] : metrics)
        if (k == key) return v;
    throw std::out_of_range("RunReport: no metric '" + key + "'");
}

std::string report_text(const RunReport& r) {
    std::string out;
    const std::string cfg = to_text(r.config);
    std::size_t pos = 0;
    while (pos < cfg.size()) {
        const auto nl = cfg.find('\n', pos);
        out += "config." + cfg.substr(pos, nl - pos) + "\n";
        pos = nl + 1;
    }
    if (r.predicted) {
        const auto& p = *r.predicted;
        out += std::string("predicted.case = ") + case_name(p.case_tag) + "\n";
        out += "predicted.alpha = " + cell(p.alpha) + "\n";
        out += "predicted.exponent = " + cell(p.exponent) + "\n";
        out += "predicted.log_correction = " + bool_text(p.log_correction) + "\n";
        out += "predicted.derivative_order = " + cell(p.derivative_order) + "\n";
        out += "predicted.effective_dim = " + cell(p.effective_dim) + "\n";
    }
    if (r.measured) {
        const auto& m = *r.measured;
        out += "measured.exponent_hat = " + cell(m.exponent_hat) + "\n";
        out += "measured.stderr_hat = " + cell(m.stderr_hat) + "\n";
        out += "measured.constant = " + cell(m.constant) + "\n";
        out += "measured.log_model_preferred = " + bool_text(m.log_model_preferred) + "\n";
        out += "measured.pair_count = " + cell(m.pair_count) + "\n";
        out += "measured.scale_min = " + cell(m.scale_min) + "\n";
        out += "measured.scale_max = " + cell(m.scale_max) + "\n";
        out += "measured.low_confidence = " + bool_text(m.low_confidence) + "\n";
    }
    for (const auto& [k, v] : r.metrics) out += "metric." + k + " = " + v + "\n";
    out += "pass = " + bool_text(r.pass) + "\n";
    std::string arts;
    for (std::size_t i = 0; i < r.artifacts.size(); ++i) arts += (i ? ", " : "") + r.artifacts[i];
    out += "artifacts = " + arts + "\n";
    return out;
}

RunReport run_scenario(const ScenarioConfig& cfg) {
    switch (cfg.scenario) {
        case Scenario::optimality: return run_optimality(cfg);
        case Scenario::radial_improvement: return run_radial_improvement(cfg);
        case Scenario::poisson_roundtrip: return run_poisson_roundtrip(cfg);
        case Scenario::leibniz_check: return run_leibniz_check(cfg);
        case Scenario::dimension_trade: return run_dimension_trade(cfg);
        case Scenario::phi_table: return run_phi_table(cfg);
        case Scenario::bootstrap_table: return run_bootstrap_table(cfg);
    }
    throw ConfigError("scenario: unknown");
}

// ------------------------------------------------------------------ optimality

RunReport run_optimality(const ScenarioConfig& c) {
    RunReport rep = start(c);
    Output out{c, rep};
    const KernelSpec spec = KernelSpec::make(c.dim, c.s);
    const ExponentReport pred = predict_exponent(c.dim, c.s, c.p);
    rep.predicted = pred;
    const double target = pred.alpha + c.epsilon;
    const double ceiling = pred.alpha + 2.0 * c.epsilon;
    // f = zeta |y|^{-N/p + eps} has potential with exponent alpha + eps at the origin
    const double b = -c.dim / c.p + c.epsilon;
    const CutoffSpec zeta{c.cutoff_inner, c.cutoff_outer, {}};
    ScalarField f = ScalarField::compactly_supported(
        [zeta, b](const Point& y) {
            const double r = norm(y);
            return r == 0.0 ? 0.0 : zeta(y) * std::pow(r, b);
        },
        {}, c.cutoff_outer);
    f.singular_points.push_back({0, 0, 0});

    const auto offsets = symmetric_offsets(c);
    std::vector<Sample> samples(offsets.size());
    parallel_for(offsets.size(), [&](std::size_t i) {
        const Point x{c.center + offsets[i], 0, 0};
        samples[i] = {x, riesz_convolve(spec, f, x, c.quad_tol)};
    });
    const Point center{c.center, 0, 0};
    const FitResult fit = fit_holder_exponent(samples, center, c.rng_seed, near_center_fit(c));
    rep.measured = fit;

    CsvTable t{{"x", "distance", "psi", "increment"}, {}};
    for (const auto& s : samples)
        t.add({cell(s.x[0]), cell(std::fabs(s.x[0] - c.center)), cell(s.value), cell(std::fabs(s.value - samples[0].value))});
    out.emit(t);

    rep.metric("data_exponent", b);
    rep.metric("target", target);
    rep.metric("ceiling", ceiling);
    rep.metric("deviation", fit.exponent_hat - target);
    rep.pass = std::fabs(fit.exponent_hat - target) <= c.tol && fit.exponent_hat < ceiling;
    finish(rep);
    return rep;
}

// ----------------------------------------------------------- radial improvement

RunReport run_radial_improvement(const ScenarioConfig& c) {
    RunReport rep = start(c);
    Output out{c, rep};
    const KernelSpec spec = KernelSpec::make(c.dim, c.s);
    const ExponentReport pred = predict_exponent(c.dim, c.s, c.p, true);
    rep.predicted = pred;
    const bool finite_p = std::isfinite(c.p);
    const double eps = finite_p ? c.epsilon : 0.0;
    const double total = pred.alpha + eps;
    const bool gradient = total > 1.0;
    const double target = gradient ? total - 1.0 : total;
    double nd_target = 2.0 * c.s - (finite_p ? c.dim / c.p : 0.0) + eps;
    if (gradient) nd_target -= 1.0;

    const AnnulusWeight eta{c.annulus_inner, c.r0, c.annulus_outer};
    RadialFunction g;
    g.support_end = c.annulus_outer;
    g.singular_radii = eta.edges();
    g.singular_radii.push_back(c.r0);
    std::sort(g.singular_radii.begin(), g.singular_radii.end());
    const double r0 = c.r0;
    if (finite_p) {
        // eta |r - r0|^{-1/p + eps}: in L^p of the annulus, no better
        const double b = -1.0 / c.p + eps;
        if (gradient && !(b > 0.0))
            throw ConfigError("epsilon: derivative-level fits with finite p need -1/p + epsilon > 0 (use p = inf)");
        g.value = [eta, r0, b](double r) {
            const double d = std::fabs(r - r0);
            return d == 0.0 ? 0.0 : eta(r) * std::pow(d, b);
        };
        g.derivative = [eta, r0, b](double r) {
            const double d = std::fabs(r - r0);
            if (d == 0.0) return 0.0;
            const double sg = r > r0 ? 1.0 : -1.0;
            return eta.derivative(r) * std::pow(d, b) + eta(r) * b * sg * std::pow(d, b - 1.0);
        };
        rep.metric("data", "eta |r - r0|^" + cell(b));
    } else {
        // eta H(r - r0): bounded, with a jump across the sphere
        g.value = [eta, r0](double r) { return r < r0 ? 0.0 : eta(r); };
        g.derivative = [eta, r0](double r) { return r < r0 ? 0.0 : eta.derivative(r); };
        g.jumps = {{r0, eta(r0)}};
        rep.metric("data", "eta H(r - r0)");
    }

    const auto offsets = symmetric_offsets(c);
    std::vector<double> values(offsets.size());
    parallel_for(offsets.size(), [&](std::size_t i) {
        const double rho = r0 + offsets[i];
        values[i] = gradient ? radial_riesz_gradient(spec, g, rho, c.quad_tol).value
                             : radial_riesz_convolve(spec, g, rho, c.quad_tol);
    });
    const Point center{r0, 0, 0};
    FitResult fit;
    if (gradient) {
        std::vector<VectorSample> vs;
        for (std::size_t i = 0; i < offsets.size(); ++i) vs.push_back({{r0 + offsets[i], 0, 0}, {values[i], 0, 0}});
        fit = fit_gradient_exponent(vs, center, c.rng_seed, near_center_fit(c));
    } else {
        std::vector<Sample> ss;
        for (std::size_t i = 0; i < offsets.size(); ++i) ss.push_back({{r0 + offsets[i], 0, 0}, values[i]});
        fit = fit_holder_exponent(ss, center, c.rng_seed, near_center_fit(c));
    }
    rep.measured = fit;

    CsvTable t{{"rho", "distance", gradient ? "dpsi" : "psi", "increment"}, {}};
    for (std::size_t i = 0; i < offsets.size(); ++i)
        t.add({cell(r0 + offsets[i]), cell(std::fabs(offsets[i])), cell(values[i]), cell(std::fabs(values[i] - values[0]))});
    out.emit(t);

    const bool separated = std::fabs(target - nd_target) > kPredictionGap;
    const double sigmas = fit.stderr_hat > 0.0 ? (fit.exponent_hat - nd_target) / fit.stderr_hat : kNaN;
    const bool excluded = !separated || (fit.stderr_hat > 0.0 ? sigmas >= kExclusionSigmas : fit.exponent_hat > nd_target);
    rep.metric("level", gradient ? "gradient" : "value");
    rep.metric("target", target);
    rep.metric("nd_prediction", nd_target);
    rep.metric("nd_excluded_sigmas", sigmas);
    rep.metric("nd_excluded", bool_text(excluded));
    rep.metric("deviation", fit.exponent_hat - target);
    rep.pass = std::fabs(fit.exponent_hat - target) <= c.tol && excluded;
    finish(rep);
    return rep;
}

// ------------------------------------------------------------ Poisson round trip

namespace {

struct RoundTrip {
    std::vector<double> x, f, op, residual;
    double worst = 0.0;
};

// psi = k * f sampled with spacing h; (-Delta)^s is applied to the cubic
// interpolant, or -Delta by central differences of step h when s = 1.
RoundTrip round_trip(const ScenarioConfig& c, double h) {
    const KernelSpec spec = KernelSpec::make(c.dim, c.s);
    const double amp = c.amplitude;
    RadialFunction g;
    g.value = [amp](double r) { return bump_profile(r, amp); };
    g.support_end = 1.0;
    const bool classical = c.s == 1.0;
    const double conv_tol = c.quad_tol;
    RoundTrip rt;
    rt.x.resize(c.points);
    for (int i = 0; i < c.points; ++i) {
        const double u = i / (c.points - 1.0);
        rt.x[i] = c.dim == 1 ? -0.95 + 1.9 * u : (classical ? 0.3 + 0.65 * u : 0.05 + 0.9 * u);
    }
    rt.f.resize(c.points);
    rt.op.resize(c.points);
    for (int i = 0; i < c.points; ++i) rt.f[i] = bump_profile(std::fabs(rt.x[i]), amp);
    if (classical) {
        parallel_for(c.points, [&](std::size_t i) {
            const double r = rt.x[i];
            const double pm = radial_riesz_convolve(spec, g, r - h, conv_tol);
            const double p0 = radial_riesz_convolve(spec, g, r, conv_tol);
            const double pp = radial_riesz_convolve(spec, g, r + h, conv_tol);
            const double lap = (pp - 2.0 * p0 + pm) / (h * h) + (c.dim - 1) * (pp - pm) / (2.0 * h * r);
            rt.op[i] = -lap;
        });
    } else {
        const double reach = 16.0;
        const int m = static_cast<int>(std::lround(reach / h));
        std::vector<double> nodes(m), vals(m);
        for (int j = 0; j < m; ++j) nodes[j] = (j + 1) * h;
        parallel_for(m, [&](std::size_t j) { vals[j] = radial_riesz_convolve(spec, g, nodes[j], conv_tol); });
        const double decay = c.dim - 2.0 * c.s;
        const RadialProfile prof(nodes, vals, c.dim, Interpolation::cubic, decay);
        double bound = 0.0;
        for (int j = 0; j < m; ++j) bound = std::max(bound, std::fabs(vals[j]) * std::pow(1.0 + nodes[j] * nodes[j], 0.5 * decay));
        ScalarField u = ScalarField::decaying([prof](const Point& y) { return prof(norm(y)); }, decay, 2.0 * bound + 1e-300);
        const double op_tol = 1e-3 * c.tol;
        parallel_for(c.points, [&](std::size_t i) { rt.op[i] = frac_laplacian_at(spec, u, {rt.x[i], 0, 0}, op_tol); });
    }
    rt.residual.resize(c.points);
    for (int i = 0; i < c.points; ++i) {
        rt.residual[i] = std::fabs(rt.op[i] - rt.f[i]);
        rt.worst = std::max(rt.worst, rt.residual[i]);
    }
    return rt;
}

}  // namespace

RunReport run_poisson_roundtrip(const ScenarioConfig& c) {
    RunReport rep = start(c);
    Output out{c, rep};
    const RoundTrip fine = round_trip(c, c.mesh);
    const RoundTrip coarse = round_trip(c, 2.0 * c.mesh);
    CsvTable t{{"mesh", "x", "f", "operator", "residual"}, {}};
    for (const auto* rt : {&coarse, &fine}) {
        const double h = rt == &fine ? c.mesh : 2.0 * c.mesh;
        for (std::size_t i = 0; i < rt->x.size(); ++i)
            t.add({cell(h), cell(rt->x[i]), cell(rt->f[i]), cell(rt->op[i]), cell(rt->residual[i])});
    }
    out.emit(t);
    rep.metric("method", c.s == 1.0 ? "central differences" : "fractional Laplacian of the interpolant");
    rep.metric("max_residual", fine.worst);
    rep.metric("max_residual_coarse", coarse.worst);
    rep.metric("halving_ratio", fine.worst > 0.0 ? coarse.worst / fine.worst : kNaN);
    rep.pass = fine.worst <= c.tol;
    finish(rep);
    return rep;
}

// --------------------------------------------------------------- Leibniz check

RunReport run_leibniz_check(const ScenarioConfig& c) {
    RunReport rep = start(c);
    Output out{c, rep};
    const KernelSpec spec = KernelSpec::make(c.dim, c.s);
    const bool symmetric = c.s >= 0.5;
    const auto variant = symmetric ? LocalizationVariant::E2 : LocalizationVariant::E1;
    std::mt19937_64 rng(c.rng_seed);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    auto random_point = [&] {
        Point p{};
        for (int j = 0; j < c.dim; ++j) p[j] = u(rng);
        return p;
    };
    struct Trial {
        CutoffSpec zeta;
        Point phi_center, x;
    };
    std::vector<Trial> trials;
    for (int k = 0; k < c.pairs; ++k) {
        Trial tr;
        tr.zeta = {0.6 + u(rng), 1.5, random_point()};
        tr.phi_center = random_point();
        tr.x = random_point();
        trials.push_back(tr);
    }
    std::vector<LeibnizSides> sides(trials.size());
    parallel_for(trials.size(), [&](std::size_t k) {
        const auto phi = bump_field(trials[k].phi_center, 1.0, 1.0);
        sides[k] = symmetric ? nonlocal_leibniz_sym(spec, trials[k].zeta, phi, trials[k].x, c.tol)
                             : nonlocal_leibniz(spec, trials[k].zeta, phi, trials[k].x, c.tol);
    });
    CsvTable t{{"pair", "x1", "x2", "x3", "lhs", "rhs", "difference", "bound"}, {}};
    bool sides_ok = true;
    double worst = 0.0;
    for (std::size_t k = 0; k < trials.size(); ++k) {
        const double diff = std::fabs(sides[k].lhs - sides[k].rhs);
        worst = std::max(worst, diff);
        sides_ok = sides_ok && diff <= 2.0 * c.tol;
        t.add({cell(static_cast<int>(k)), cell(trials[k].x[0]), cell(trials[k].x[1]), cell(trials[k].x[2]),
               cell(sides[k].lhs), cell(sides[k].rhs), cell(diff), cell(2.0 * c.tol)});
    }
    out.emit(t);

    // localization error on the plateau and in the far field
    const CutoffSpec zeta{1.0, 2.0, {}};
    const auto psi = bump_field({}, 0.8, 1.0);
    std::vector<double> plateau_r{0.0, 0.25, 0.5, 0.75};
    std::vector<double> plateau(plateau_r.size());
    parallel_for(plateau_r.size(), [&](std::size_t i) {
        plateau[i] = localization_error(spec, zeta, psi, {plateau_r[i], 0, 0}, variant, 1e-8).value;
    });
    std::vector<double> far(c.radii.size()), weighted(c.radii.size());
    const double power = 0.5 * (c.dim + 2.0 * c.s);
    parallel_for(c.radii.size(), [&](std::size_t i) {
        const double scale = std::pow(1.0 + c.radii[i] * c.radii[i], power);
        far[i] = localization_error(spec, zeta, psi, {c.radii[i], 0, 0}, variant, 1e-6 / scale).value;
        weighted[i] = std::fabs(far[i]) * scale;
    });
    CsvTable ft{{"region", "radius", "error", "weighted"}, {}};
    bool plateau_ok = true;
    for (std::size_t i = 0; i < plateau_r.size(); ++i) {
        plateau_ok = plateau_ok && std::isfinite(plateau[i]);
        ft.add({"plateau", cell(plateau_r[i]), cell(plateau[i]), cell(plateau[i])});
    }
    for (std::size_t i = 0; i < c.radii.size(); ++i)
        ft.add({"far", cell(c.radii[i]), cell(far[i]), cell(weighted[i])});
    out.emit(ft, "_localization");
    const auto [lo, hi] = std::minmax_element(weighted.begin(), weighted.end());
    const double variation = *lo > 0.0 ? (*hi - *lo) / *lo : kNaN;

    rep.metric("variant", symmetric ? "E2" : "E1");
    rep.metric("max_difference", worst);
    rep.metric("far_field_variation", variation);
    rep.metric("plateau_finite", bool_text(plateau_ok));
    rep.pass = sides_ok && plateau_ok && variation < kFarFieldVariation;
    finish(rep);
    return rep;
}

// ------------------------------------------------------------- dimension trade

RunReport run_dimension_trade(const ScenarioConfig& c) {
    RunReport rep = start(c);
    Output out{c, rep};
    struct Case {
        int l, dim;
    };
    const std::vector<Case> cases{{0, 3}, {1, 2}, {2, 3}};
    auto profile = [](int l) {
        RadialFunction f;
        // r e^{-r^2} for odd l, r^l e^{-r} otherwise
        if (l % 2 == 1) f.value = [l](double r) { return std::pow(r, l) * std::exp(-r * r); };
        else f.value = [l](double r) { return std::pow(r, l) * std::exp(-r); };
        f.decay_exponent = 50.0;
        f.decay_constant = 1e30;
        return f;
    };
    struct Row {
        int l, dim;
        double k, lhs, rhs;
    };
    std::vector<Row> rows;
    for (const auto& cs : cases)
        for (double k : c.k_values) rows.push_back({cs.l, cs.dim, k, 0.0, 0.0});
    parallel_for(rows.size(), [&](std::size_t i) {
        const auto [l, r] = dimension_trade_check(rows[i].l, rows[i].dim, profile(rows[i].l), rows[i].k, c.quad_tol);
        rows[i].lhs = l;
        rows[i].rhs = r;
    });
    CsvTable t{{"l", "dim", "k", "lhs", "rhs", "difference"}, {}};
    double worst = 0.0;
    for (const auto& r : rows) {
        const double d = std::fabs(r.lhs - r.rhs);
        worst = std::max(worst, d);
        t.add({cell(r.l), cell(r.dim), cell(r.k), cell(r.lhs), cell(r.rhs), cell(d)});
    }
    out.emit(t);
    rep.metric("max_difference", worst);
    rep.pass = worst <= c.tol;
    finish(rep);
    return rep;
}

// ------------------------------------------------------------------- Phi table

RunReport run_phi_table(const ScenarioConfig& c) {
    RunReport rep = start(c);
    Output out{c, rep};
    const KernelSpec spec = KernelSpec::make(c.dim, c.s);
    const PhiKernel phi(spec);
    const double n2s = c.dim - 2.0 * c.s;
    CsvTable t{{"t", "hypergeometric", "direct", "hyp_rel_diff", "functional_rel_diff", "split_rel_diff"}, {}};
    double worst_hyp = 0.0, worst_fe = 0.0, worst_split = 0.0;
    for (int i = 1; i <= 19; ++i) {
        const double tt = 0.05 * i;
        const double d = phi_direct(spec, tt);
        const double h = phi_hypergeometric(spec, tt);
        const double hyp = std::fabs(h - d) / std::fabs(d);
        const double fe = std::fabs(phi_direct(spec, 1.0 / tt) - std::pow(tt, n2s) * d) / std::fabs(std::pow(tt, n2s) * d);
        double sp = kNaN;
        if (std::fabs(1.0 - tt * tt) <= 0.9) {
            const PhiSplit s = phi.split(tt);
            sp = std::fabs(s.phi1 + kernel_1d(c.s, 1.0 - tt) * s.phi2 - d) / std::fabs(d);
            worst_split = std::max(worst_split, sp);
        }
        worst_hyp = std::max(worst_hyp, hyp);
        worst_fe = std::max(worst_fe, fe);
        t.add({cell(tt), cell(h), cell(d), cell(hyp), cell(fe), cell(sp)});
    }
    out.emit(t);

    // singular excess Phi - phi1 near t = 1 against the order 2s - 1
    CsvTable ot{{"distance", "excess"}, {}};
    std::vector<double> le, ly, lin;
    for (int i = 0; i <= 6; ++i) {
        const double e = std::pow(10.0, -2.0 - 0.5 * i);
        const double x = phi_direct(spec, 1.0 - e) - phi.split(1.0 - e).phi1;
        ot.add({cell(e), cell(x)});
        le.push_back(std::log(e));
        ly.push_back(std::log(std::fabs(x)));
        lin.push_back(x);
    }
    out.emit(ot, "_order");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < le.size(); ++i) mx += le[i], my += ly[i];
    mx /= le.size(), my /= le.size();
    const double slope = ols_slope(le, ly);
    bool order_ok;
    if (phi.log_case()) {
        // excess = a + b log e against the fitted power law, both scored on the excess itself
        double ssr_log = 0.0, ssr_pow = 0.0;
        ols_slope(le, lin, &ssr_log);
        const double sign = lin.front() < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < le.size(); ++i)
            ssr_pow += std::pow(lin[i] - sign * std::exp(my + slope * (le[i] - mx)), 2);
        order_ok = ssr_log < ssr_pow;
        rep.metric("log_model_preferred", bool_text(order_ok));
    } else {
        order_ok = std::fabs(slope - (2.0 * c.s - 1.0)) <= kOrderBand;
    }
    rep.metric("max_hyp_rel_diff", worst_hyp);
    rep.metric("max_functional_rel_diff", worst_fe);
    rep.metric("max_split_rel_diff", worst_split);
    rep.metric("order_slope", slope);
    rep.metric("order_expected", 2.0 * c.s - 1.0);
    rep.pass = worst_hyp <= c.tol && worst_fe <= c.tol && worst_split <= c.tol && order_ok;
    finish(rep);
    return rep;
}

// ------------------------------------------------------------- bootstrap table

RunReport run_bootstrap_table(const ScenarioConfig& c) {
    RunReport rep = start(c);
    Output out{c, rep};
    const BootstrapTrace tr = bootstrap_schedule(c.dim, c.s, c.p);
    rep.predicted = predict_exponent(c.dim, c.s, c.p);
    CsvTable t{{"k", "q_inverse"}, {}};
    for (std::size_t k = 0; k < tr.q_inverses.size(); ++k) t.add({cell(static_cast<int>(k)), cell(tr.q_inverses[k])});
    out.emit(t);
    rep.metric("epsilon", tr.epsilon);
    rep.metric("iterations", cell(tr.iterations));
    rep.metric("p", p_text(c.p));
    rep.pass = !tr.q_inverses.empty() && tr.q_inverses.back() < tr.epsilon;
    finish(rep);
    return rep;
}

}  // namespace fraclab::lab
