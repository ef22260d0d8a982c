#include "fraclab/potential_solver.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "detail/polar.hpp"
#include "fraclab/errors.hpp"
#include "fraclab/parallel.hpp"
#include "fraclab/radial_kernel.hpp"
#include "fraclab/spherical.hpp"

namespace fraclab {

namespace {

Estimate convolve_polar(const KernelSpec& spec, const ScalarField& f, const Point& x, double tol, bool absolute) {
    const int n = spec.dim;
    if (n > 3) throw DomainError("riesz_convolve: N <= 3 supported");
    if (!(tol > 0.0)) throw DomainError("riesz_convolve: tol must be > 0");
    if (!f.compact()) {
        if (!f.decay_certified) throw DataError("riesz_convolve: field has unbounded support and no certified decay");
        const double need = spec.is_log() ? static_cast<double>(n) : 2.0 * spec.order;
        if (!(f.decay_exponent > need))
            throw DomainError("riesz_convolve: decay exponent " + std::to_string(f.decay_exponent) +
                              " must exceed " + std::to_string(need));
    }
    if (f.compact() && f.support_radius == 0.0) return {0.0, 0.0};

    detail::PolarProblem p;
    p.dim = n;
    p.x = x;
    p.singular_points = f.singular_points;
    if (f.compact()) p.balls.emplace_back(f.support_center, f.support_radius);
    const Point axis = detail::polar_axis(p);
    std::vector<double> breaks = detail::radial_breaks(p);

    auto weight = [&](double rho) {
        const double k = green_kernel(spec, rho) * std::pow(rho, n - 1);
        return absolute ? std::fabs(k) : k;
    };
    auto mean = [&](double rho, double wabs) {
        auto F = [&](const Point& w) { return f(x + rho * w); };
        QuadOptions in;
        in.abs_tol = 1e-4 * tol / std::max(1e-300, wabs * (1.0 + rho));
        in.rel_tol = 1e-12;
        const auto m = sphere_integral(n, F, axis, in, detail::cap_breaks(p, axis, rho));
        return absolute ? std::fabs(m.value) : m.value;
    };
    auto integrand = [&](double rho) {
        if (rho == 0.0) return 0.0;
        const double w = weight(rho);
        return w * mean(rho, std::fabs(w));
    };

    double rmax;
    if (f.compact()) {
        rmax = norm(f.support_center - x) + f.support_radius;
    } else {
        rmax = 2.0 * (norm(x) + 1.0);
        if (!breaks.empty()) rmax = std::max(rmax, breaks.back());
    }
    double rho1 = std::min(1.0, rmax);
    for (double b : breaks)
        if (b > 0.0) rho1 = std::min(rho1, b);
    rho1 *= 0.5;

    QuadOptions opt;
    opt.abs_tol = tol / 8.0;
    opt.rel_tol = 1e-13;
    opt.max_intervals = 20000;
    Estimate out;
    bool ok = true;
    auto add = [&](const QuadResult& q) {
        out.value += q.value;
        out.error += q.error;
        ok = ok && q.converged;
    };

    if (!spec.is_log()) {
        // u = rho^{2s} removes the rho^{2s-1} endpoint singularity
        const double s = spec.order;
        const double d = riesz_constant(n, s);
        const double front = (absolute ? std::fabs(d) : d) / (2.0 * s);
        auto fu = [&](double u) {
            if (u <= 0.0) return 0.0;
            const double rho = std::pow(u, 1.0 / (2.0 * s));
            return front * mean(rho, std::fabs(d) * std::pow(rho, 2.0 * s - 1.0));
        };
        add(integrate(fu, 0.0, std::pow(rho1, 2.0 * s), opt));
    } else {
        add(integrate(integrand, 0.0, rho1, opt));
    }
    // pieces between breaks; ends at a singular-point distance are graded
    std::vector<double> sing_d;
    for (const auto& q : f.singular_points) sing_d.push_back(norm(q - x));
    auto is_sing = [&](double r) {
        return std::any_of(sing_d.begin(), sing_d.end(), [r](double d) { return d == r; });
    };
    std::vector<double> cuts{rho1};
    for (double b : breaks)
        if (b > rho1 && b < rmax) cuts.push_back(b);
    cuts.push_back(rmax);
    QuadOptions piece = opt;
    piece.abs_tol = opt.abs_tol / static_cast<double>(cuts.size());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        add(integrate_graded(integrand, cuts[i], cuts[i + 1], i > 0 && is_sing(cuts[i]), is_sing(cuts[i + 1]), piece));
    if (!f.compact()) add(integrate_tail(integrand, rmax, opt));
    if (!ok || !(out.error <= tol) || !std::isfinite(out.value))
        throw ConvergenceError("riesz_convolve: tolerance not reached", out.error);
    return out;
}

class Spline {
public:
    Spline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)), m_(x_.size(), 0.0) {
        const std::size_t n = x_.size();
        if (n < 3) return;
        std::vector<double> c(n, 0.0), d(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
            const double rhs = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
            const double diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
            c[i] = h1 / diag;
            d[i] = (rhs - h0 * d[i - 1]) / diag;
        }
        for (std::size_t i = n - 2; i >= 1; --i) m_[i] = d[i] - c[i] * m_[i + 1];
    }

    double operator()(double t) const {
        if (t < x_.front() || t > x_.back()) return 0.0;
        std::size_t i = std::upper_bound(x_.begin(), x_.end(), t) - x_.begin();
        i = std::clamp<std::size_t>(i, 1, x_.size() - 1);
        const double h = x_[i] - x_[i - 1];
        const double a = (x_[i] - t) / h, b = (t - x_[i - 1]) / h;
        return a * y_[i - 1] + b * y_[i] + ((a * a * a - a) * m_[i - 1] + (b * b * b - b) * m_[i]) * h * h / 6.0;
    }

private:
    std::vector<double> x_, y_, m_;
};

void validate_grid(const EvaluationGrid& g) {
    if (g.nodes.size() < 3) throw DataError("evaluation grid needs at least three nodes");
    for (std::size_t i = 1; i < g.nodes.size(); ++i)
        if (!(g.nodes[i] > g.nodes[i - 1])) throw DataError("evaluation grid nodes must be strictly increasing");
    if (g.radial && !(g.nodes.front() > 0.0)) throw DataError("radial grid nodes must be positive");
}

Point on_axis(double t) { return {t, 0.0, 0.0}; }

}  // namespace

Estimate riesz_convolve_estimate(const KernelSpec& spec, const ScalarField& f, const Point& x, double tol) {
    return convolve_polar(spec, f, x, tol, false);
}

double riesz_convolve(const KernelSpec& spec, const ScalarField& f, const Point& x, double tol) {
    return riesz_convolve_estimate(spec, f, x, tol).value;
}

double localized_potential(const KernelSpec& spec, const ScalarField& g, const CutoffSpec& eta, const Point& x,
                           double tol) {
    eta.validate();
    return riesz_convolve(spec, multiply(g, eta.field()), x, tol);
}

ScalarField riesz_potential_field(const KernelSpec& spec, const ScalarField& f, double tol, double growth,
                                  double growth_constant) {
    auto src = std::make_shared<ScalarField>(f);
    ScalarField out = ScalarField::decaying(
        [spec, src, tol, growth](const Point& y) {
            // the tolerance follows the certified growth envelope
            return riesz_convolve(spec, *src, y, tol * std::pow(1.0 + dot(y, y), 0.5 * std::max(0.0, growth)));
        },
        -growth, growth_constant);
    out.singular_points = f.singular_points;
    return out;
}

EvaluationGrid EvaluationGrid::stretched(double center, double half_width, int count, double power) {
    if (count < 3 || !(half_width > 0.0) || !(power >= 1.0))
        throw DomainError("stretched grid: needs count >= 3, half_width > 0, power >= 1");
    EvaluationGrid g;
    for (int i = 0; i < count; ++i) {
        const double t = -1.0 + 2.0 * i / (count - 1.0);
        g.nodes.push_back(center + std::copysign(half_width * std::pow(std::fabs(t), power), t));
    }
    return g;
}

EvaluationGrid EvaluationGrid::uniform(double a, double b, double h) {
    if (!(b > a) || !(h > 0.0)) throw DomainError("uniform grid: needs b > a and h > 0");
    EvaluationGrid g;
    const int n = static_cast<int>(std::llround((b - a) / h));
    for (int i = 0; i <= n; ++i) g.nodes.push_back(a + (b - a) * i / std::max(1, n));
    return g;
}

void PotentialSolution::set_affine(double offset, const std::array<double, 3>& slope) {
    const bool tilted = slope[0] != 0.0 || slope[1] != 0.0 || slope[2] != 0.0;
    if (tilted && !(spec.order > 0.5 + kOrderSnap))
        throw DomainError("affine slope is only in the nullspace for s > 1/2");
    affine_offset = offset;
    affine_slope = slope;
}

double PotentialSolution::evaluate(const Point& y) const {
    return particular(y) + affine_offset + affine_slope[0] * y[0] + affine_slope[1] * y[1] + affine_slope[2] * y[2];
}

PotentialSolution solve_schrodinger_fixed_point(const KernelSpec& spec, const ScalarField& V, const ScalarField& f,
                                                const EvaluationGrid& grid, const FixedPointOptions& opt) {
    validate_grid(grid);
    const int n = spec.dim;
    if (n >= 2 && !grid.radial) throw DomainError("fixed point: N >= 2 requires a radial grid");
    if (n == 1 && grid.radial) throw DomainError("fixed point: N = 1 uses an x-coordinate grid");
    if (!V.compact()) throw DomainError("fixed point: V must be compactly supported");
    const std::vector<double>& nodes = grid.nodes;
    if (grid.radial) {
        if (V.support_radius > 0.0 && (norm(V.support_center) > 1e-14 || V.support_radius > nodes.back()))
            throw DomainError("fixed point: V must be radial and supported inside the grid");
        if (f.compact() && norm(f.support_center) > 1e-14) throw DomainError("fixed point: f must be radial");
    } else if (V.support_radius > 0.0 &&
               (V.support_center[0] - V.support_radius < nodes.front() ||
                V.support_center[0] + V.support_radius > nodes.back())) {
        throw DomainError("fixed point: supp V must lie inside the grid hull");
    }

    PotentialSolution sol;
    sol.spec = spec;
    sol.grid = grid;
    const std::size_t m = nodes.size();
    auto point = [&](double t) { return on_axis(t); };
    auto coord = [&](const Point& y) { return grid.radial ? norm(y) : y[0]; };
    auto in_supp_v = [&](double t) {
        return V.support_radius > 0.0 && norm(point(t) - V.support_center) <= V.support_radius;
    };

    // contraction factor of psi -> k * (V psi) in sup norm over supp V
    double q = 0.0;
    {
        ScalarField absv = V;
        auto fv = V.evaluator;
        absv.evaluator = [fv](const Point& y) { return std::fabs(fv(y)); };
        std::vector<double> vals(m, 0.0);
        parallel_for(m, [&](std::size_t i) {
            if (in_supp_v(nodes[i])) vals[i] = convolve_polar(spec, absv, point(nodes[i]), opt.quad_tol, true).value;
        });
        for (double v : vals) q = std::max(q, v);
    }
    sol.contraction_estimate = q;
    if (q >= opt.max_contraction)
        throw DomainError("fixed point: contraction estimate " + std::to_string(q) + " >= " +
                          std::to_string(opt.max_contraction) + "; V is too large for the iteration");

    auto make_source = [&](const std::vector<double>& psi) {
        std::shared_ptr<std::function<double(double)>> interp;
        if (grid.radial) {
            auto prof = std::make_shared<RadialProfile>(nodes, psi, n, Interpolation::cubic, kUnbounded);
            interp = std::make_shared<std::function<double(double)>>([prof](double r) { return (*prof)(r); });
        } else {
            auto sp = std::make_shared<Spline>(nodes, psi);
            interp = std::make_shared<std::function<double(double)>>([sp](double t) { return (*sp)(t); });
        }
        ScalarField src = f;
        auto ff = f.evaluator;
        auto fv = V.evaluator;
        const bool radial = grid.radial;
        src.evaluator = [ff, fv, interp, radial](const Point& y) {
            const double v = fv(y);
            return ff(y) - (v == 0.0 ? 0.0 : v * (*interp)(radial ? norm(y) : y[0]));
        };
        src.singular_points.insert(src.singular_points.end(), V.singular_points.begin(), V.singular_points.end());
        if (f.compact()) {
            src.support_radius = std::max(f.support_radius, norm(V.support_center - f.support_center) + V.support_radius);
        } else {
            double vmax = 0.0;
            for (std::size_t i = 0; i < m; ++i) vmax = std::max(vmax, std::fabs(V(point(nodes[i])) * psi[i]));
            const double reach = norm(V.support_center) + V.support_radius;
            src.decay_constant = f.decay_constant + 2.0 * vmax * std::pow(1.0 + reach * reach, 0.5 * f.decay_exponent);
        }
        return src;
    };

    auto potential_at = [spec, radial = grid.radial, tol = opt.quad_tol](const ScalarField& src, double t) -> Estimate {
        if (!radial) return convolve_polar(spec, src, on_axis(t), tol, false);
        RadialFunction g;
        g.value = [&src](double r) { return src(on_axis(r)); };
        if (src.compact()) g.support_end = src.support_radius;
        g.decay_exponent = src.decay_exponent;
        g.decay_constant = src.decay_constant;
        for (const auto& p : src.singular_points) g.singular_radii.push_back(norm(p));
        return radial_riesz_convolve_estimate(spec, g, t, tol);
    };

    std::vector<double> psi(m, 0.0), next(m, 0.0), qerr(m, 0.0);
    ScalarField src = make_source(psi);
    for (int it = 1; it <= opt.max_iter; ++it) {
        parallel_for(m, [&](std::size_t i) {
            const Estimate e = potential_at(src, nodes[i]);
            next[i] = e.value;
            qerr[i] = e.error;
        });
        sol.residuals.assign(m, 0.0);
        sol.residual_sup = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            sol.residuals[i] = std::fabs(V(point(nodes[i])) * (next[i] - psi[i])) + qerr[i];
            sol.residual_sup = std::max(sol.residual_sup, sol.residuals[i]);
        }
        psi.swap(next);
        sol.iterations = it;
        src = make_source(psi);
        if (sol.residual_sup <= opt.tol) {
            sol.converged = true;
            break;
        }
    }
    sol.values = psi;
    auto final_src = std::make_shared<ScalarField>(src);
    sol.particular.evaluator = [final_src, potential_at, coord](const Point& y) {
        return potential_at(*final_src, coord(y)).value;
    };
    sol.particular.singular_points = f.singular_points;
    return sol;
}

}  // namespace fraclab
