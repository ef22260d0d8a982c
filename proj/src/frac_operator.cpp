#include "fraclab/frac_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detail/polar.hpp"
#include "fraclab/errors.hpp"
#include "fraclab/spherical.hpp"

namespace fraclab {

namespace {

void require_operator_order(const KernelSpec& spec, const char* who) {
    if (spec.order >= 1.0) throw DomainError(std::string(who) + ": the singular-integral form requires s < 1");
    if (spec.dim > 3) throw DomainError(std::string(who) + ": N <= 3 supported");
}

void add_geometry(detail::PolarProblem& p, const ScalarField& f) {
    for (const auto& q : f.singular_points) p.singular_points.push_back(q);
    if (f.compact()) p.balls.emplace_back(f.support_center, f.support_radius);
}

Estimate finish(const QuadResult& r, double front, double tol, const char* who) {
    Estimate e{front * r.value, std::fabs(front) * r.error};
    if (!r.converged || !(e.error <= tol) || !std::isfinite(e.value))
        throw ConvergenceError(std::string(who) + ": tolerance not reached", e.error);
    return e;
}

}  // namespace

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
    ScalarField out;
    auto fa = a.evaluator;
    auto fb = b.evaluator;
    out.evaluator = [fa, fb](const Point& y) {
        const double va = fa(y);
        return va == 0.0 ? 0.0 : va * fb(y);
    };
    if (a.compact() && (!b.compact() || a.support_radius <= b.support_radius)) {
        out.support_radius = a.support_radius;
        out.support_center = a.support_center;
    } else if (b.compact()) {
        out.support_radius = b.support_radius;
        out.support_center = b.support_center;
    }
    out.decay_certified = out.compact() || (a.decay_certified && b.decay_certified);
    out.decay_exponent = a.decay_exponent + b.decay_exponent;
    out.decay_constant = a.decay_constant * b.decay_constant;
    out.singular_points = a.singular_points;
    out.singular_points.insert(out.singular_points.end(), b.singular_points.begin(), b.singular_points.end());
    return out;
}

Estimate frac_laplacian(const KernelSpec& spec, const ScalarField& u, const Point& x, double tol) {
    require_operator_order(spec, "frac_laplacian");
    if (!(tol > 0.0)) throw DomainError("frac_laplacian: tol must be > 0");
    const double c = frac_lap_front_constant(spec);
    const double ux = u(x);
    detail::PolarProblem p;
    p.dim = spec.dim;
    p.x = x;
    p.h = [&u, ux](const Point& y) { return u(y) - ux; };
    p.h_inf = -ux;
    p.env = detail::envelope_of(u, x, 1.0);
    add_geometry(p, u);
    const auto r = detail::singular_integral(p, spec.order, tol / c);
    return finish(r, -c, tol, "frac_laplacian");
}

double frac_laplacian_at(const KernelSpec& spec, const ScalarField& u, const Point& x, double tol) {
    return frac_laplacian(spec, u, x, tol).value;
}

std::vector<double> frac_laplacian_decay_check(const KernelSpec& spec, const CutoffSpec& cutoff,
                                               const std::vector<double>& radii) {
    cutoff.validate();
    const ScalarField zeta = cutoff.field();
    const double w = spec.dim + 2.0 * spec.order;
    std::vector<double> out;
    for (double r : radii) {
        if (!(r > 2.0 * cutoff.outer_radius))
            throw DomainError("frac_laplacian_decay_check: radii must exceed 2 * outer_radius");
        Point x = cutoff.center;
        x[0] += r;
        const double bracket = std::sqrt(1.0 + dot(x, x));
        const double scale = std::pow(bracket, w);
        const auto e = frac_laplacian(spec, zeta, x, 1e-7 / scale);
        out.push_back(std::fabs(e.value) * scale);
    }
    return out;
}

Estimate localization_error(const KernelSpec& spec, const CutoffSpec& zeta_spec, const ScalarField& psi,
                            const Point& x, LocalizationVariant variant, double tol) {
    require_operator_order(spec, "localization_error");
    zeta_spec.validate();
    const bool half_or_more = spec.order >= 0.5 - kOrderSnap;
    if (variant == LocalizationVariant::E1 && half_or_more)
        throw DomainError("localization_error: E1 requires s < 1/2");
    if (variant == LocalizationVariant::E2 && !half_or_more)
        throw DomainError("localization_error: E2 requires 1/2 <= s < 1");
    const double c = frac_lap_front_constant(spec);
    const double zx = zeta_spec(x);
    const ScalarField zeta = zeta_spec.field();
    detail::PolarProblem p;
    p.dim = spec.dim;
    p.x = x;
    add_geometry(p, zeta);
    add_geometry(p, psi);
    const double zeta_end = norm(zeta_spec.center - x) + zeta_spec.outer_radius;
    double front = c;
    if (variant == LocalizationVariant::E1) {
        p.h = [&](const Point& y) { return (zx - zeta_spec(y)) * psi(y); };
        p.h_inf = 0.0;
        p.env = detail::envelope_of(psi, x, 1.0);
    } else {
        const double px = psi(x);
        p.h = [&, px](const Point& y) { return (zx - zeta_spec(y)) * (px - psi(y)); };
        p.h_inf = zx * px;
        if (psi.compact()) {
            p.env.vanishes = true;
            p.env.start = std::max(zeta_end, norm(psi.support_center - x) + psi.support_radius);
        } else {
            p.env = detail::envelope_of(psi, x, 1.0);
            p.env.start = zeta_end;
        }
        front = -c;
    }
    const auto r = detail::singular_integral(p, spec.order, tol / c);
    return finish(r, front, tol, "localization_error");
}

LeibnizSides nonlocal_leibniz(const KernelSpec& spec, const CutoffSpec& zeta, const ScalarField& phi, const Point& x,
                              double tol) {
    require_operator_order(spec, "nonlocal_leibniz");
    if (spec.order >= 0.5 - kOrderSnap) throw DomainError("nonlocal_leibniz: requires s < 1/2; use nonlocal_leibniz_sym");
    const auto lhs = frac_laplacian(spec, multiply(zeta.field(), phi), x, tol / 2.0);
    const auto a = frac_laplacian(spec, phi, x, tol / 4.0);
    const auto e1 = localization_error(spec, zeta, phi, x, LocalizationVariant::E1, tol / 4.0);
    const double zx = zeta(x);
    return {lhs.value, zx * a.value + e1.value, lhs.error, std::fabs(zx) * a.error + e1.error};
}

LeibnizSides nonlocal_leibniz_sym(const KernelSpec& spec, const CutoffSpec& zeta, const ScalarField& phi,
                                  const Point& x, double tol) {
    require_operator_order(spec, "nonlocal_leibniz_sym");
    if (spec.order < 0.5 - kOrderSnap) throw DomainError("nonlocal_leibniz_sym: requires 1/2 <= s < 1");
    const ScalarField zf = zeta.field();
    const auto lhs = frac_laplacian(spec, multiply(zf, phi), x, tol / 2.0);
    const auto a = frac_laplacian(spec, phi, x, tol / 6.0);
    const auto b = frac_laplacian(spec, zf, x, tol / 6.0);
    const auto e2 = localization_error(spec, zeta, phi, x, LocalizationVariant::E2, tol / 6.0);
    const double zx = zeta(x), px = phi(x);
    return {lhs.value, zx * a.value + px * b.value + e2.value, lhs.error,
            std::fabs(zx) * a.error + std::fabs(px) * b.error + e2.error};
}

std::array<double, 3> gradient_kernel_convolution(const KernelSpec& spec, const ScalarField& density,
                                                  const Point& x, double tol) {
    if (!(spec.order > 0.5 + kOrderSnap)) throw DomainError("gradient_kernel_convolution: requires s > 1/2");
    if (!density.compact()) throw DomainError("gradient_kernel_convolution: density must be compactly supported");
    if (spec.dim > 3) throw DomainError("gradient_kernel_convolution: N <= 3 supported");
    detail::PolarProblem p;
    p.dim = spec.dim;
    p.x = x;
    add_geometry(p, density);
    const Point axis = detail::polar_axis(p);
    std::vector<double> breaks = detail::radial_breaks(p);
    const double rmax = norm(density.support_center - x) + density.support_radius;
    std::array<double, 3> out{0.0, 0.0, 0.0};
    double err = 0.0;
    for (int j = 0; j < spec.dim; ++j) {
        auto radial = [&](double rho) {
            auto F = [&](const Point& w) { return w[j] * 0.5 * (density(x - rho * w) - density(x + rho * w)); };
            QuadOptions in;
            in.abs_tol = 1e-3 * tol;
            in.rel_tol = 1e-11;
            const auto m = sphere_integral(spec.dim, F, axis, in, detail::cap_breaks(p, axis, rho));
            return green_kernel_derivative(spec, rho) * std::pow(rho, spec.dim - 1) * m.value;
        };
        QuadOptions opt;
        opt.abs_tol = tol / spec.dim;
        opt.rel_tol = 1e-13;
        opt.max_intervals = 20000;
        const auto r = integrate(radial, 0.0, rmax, opt, breaks);
        if (!r.converged) throw ConvergenceError("gradient_kernel_convolution: tolerance not reached", r.error);
        out[j] = r.value;
        err += r.error;
    }
    (void)err;
    return out;
}

}  // namespace fraclab
