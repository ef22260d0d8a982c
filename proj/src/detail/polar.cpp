#include "detail/polar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fraclab/errors.hpp"
#include "fraclab/kernels.hpp"
#include "fraclab/spherical.hpp"

namespace fraclab::detail {

std::vector<double> radial_breaks(const PolarProblem& p) {
    std::vector<double> out;
    for (const auto& q : p.singular_points) {
        const double d = norm(q - p.x);
        if (d > 0.0) out.push_back(d);
    }
    for (const auto& [c, r] : p.balls) {
        const double d = norm(c - p.x);
        if (std::fabs(d - r) > 0.0) out.push_back(std::fabs(d - r));
        out.push_back(d + r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double singular_distance(const PolarProblem& p) {
    double best = kUnbounded;
    for (const auto& q : p.singular_points) best = std::min(best, norm(q - p.x));
    return best;
}

Point polar_axis(const PolarProblem& p) {
    double best = kUnbounded;
    Point axis{1.0, 0.0, 0.0};
    for (const auto& q : p.singular_points) {
        const double d = norm(q - p.x);
        if (d > 0.0 && d < best) {
            best = d;
            axis = unit_or_e1(q - p.x);
        }
    }
    if (std::isfinite(best)) return axis;
    for (const auto& [c, r] : p.balls) {
        const double d = norm(c - p.x);
        if (d > 0.0 && std::fabs(d - r) < best) {
            best = std::fabs(d - r);
            axis = unit_or_e1(c - p.x);
        }
    }
    return axis;
}

std::vector<double> cap_breaks(const PolarProblem& p, const Point& axis, double rho) {
    std::vector<double> out;
    for (const auto& [c, r] : p.balls) {
        const Point v = c - p.x;
        const double d = norm(v);
        if (d == 0.0) continue;
        if (std::fabs(dot(v, axis) - d) > 1e-12 * d) continue;
        const double cb = (rho * rho + d * d - r * r) / (2.0 * rho * d);
        if (cb > -1.0 && cb < 1.0) {
            out.push_back(cb);
            out.push_back(-cb);  // the pair form sees the ball at both poles
        }
    }
    return out;
}

Envelope envelope_of(const ScalarField& f, const Point& x, double scale) {
    Envelope e;
    if (f.compact()) {
        e.vanishes = true;
        e.start = norm(f.support_center - x) + f.support_radius;
        return e;
    }
    if (!f.decay_certified)
        throw DataError("field has unbounded support and no certified decay; cannot bound the tail");
    e.exponent = f.decay_exponent;
    e.constant = f.decay_constant * scale;
    return e;
}

QuadResult singular_integral(const PolarProblem& p, double s, double tol) {
    const int n = p.dim;
    const double sphere = sphere_measure(n);
    const Point axis = polar_axis(p);
    const double dsing = singular_distance(p);
    double delta = 1e-2 * std::min(1.0, dsing);

    auto pair = [&](double rho, const QuadOptions& opt) {
        auto F = [&](const Point& w) { return 0.5 * (p.h(p.x + rho * w) + p.h(p.x - rho * w)); };
        return sphere_integral(n, F, axis, opt, cap_breaks(p, axis, rho));
    };
    long evals = 0;
    auto radial = [&](double abs_budget) {
        return [&, abs_budget](double rho) {
            QuadOptions in;
            in.abs_tol = abs_budget * std::pow(rho, 2.0 * s);
            in.rel_tol = 1e-10;
            const auto m = pair(rho, in);
            evals += m.evals;
            return std::pow(rho, -1.0 - 2.0 * s) * m.value;
        };
    };

    // Laplacian of H at x by central differences; the pair average behaves like
    // |S| Delta H rho^2 / (2N) near rho = 0. The excision radius shrinks until
    // the correction is consistent between delta and 2 delta.
    const double h0 = p.h(p.x);
    auto laplacian = [&](double hfd) {
        double lap = 0.0;
        for (int j = 0; j < n; ++j) {
            Point e{};
            e[j] = hfd;
            lap += (p.h(p.x + e) + p.h(p.x - e) - 2.0 * h0) / (hfd * hfd);
        }
        return lap;
    };
    double lap = 0.0;
    auto correction = [&](double d) { return sphere * lap * std::pow(d, 2.0 - 2.0 * s) / (2.0 * n * (2.0 - 2.0 * s)); };

    QuadResult out;
    QuadOptions opt_a;
    opt_a.abs_tol = tol / 16.0;
    opt_a.rel_tol = 1e-13;
    QuadResult ia;
    double excision_err = kUnbounded;
    const double delta_floor = 1e-7 * std::min(1.0, dsing);
    for (;;) {
        lap = laplacian(0.5 * delta);
        ia = integrate(radial(1e-3 * tol), delta, 2.0 * delta, opt_a);
        excision_err = std::fabs(correction(2.0 * delta) - correction(delta) - ia.value);
        if (excision_err <= tol / 8.0 || delta <= delta_floor) break;
        delta *= 0.25;
    }

    std::vector<double> breaks = radial_breaks(p);
    double rmax = 2.0 * delta;
    for (double b : breaks) rmax = std::max(rmax, b);
    rmax = std::max(rmax, p.env.start);
    if (rmax <= 2.0 * delta) rmax = 4.0 * delta;
    QuadOptions opt_b;
    opt_b.abs_tol = tol / 2.0;
    opt_b.rel_tol = 1e-13;
    opt_b.max_intervals = 20000;
    const auto ib = integrate(radial(1e-3 * tol), 2.0 * delta, rmax, opt_b, breaks);

    double tail = 0.0, tail_err = 0.0;
    bool tail_ok = true;
    if (p.env.vanishes) {
        tail = sphere * p.h_inf * std::pow(rmax, -2.0 * s) / (2.0 * s);
    } else {
        const double d = p.env.exponent;
        const double rate = d + 2.0 * s;
        if (!(rate > 0.0))
            throw DomainError("singular integral diverges: decay exponent " + std::to_string(d) + " too small");
        const double r0 = std::max({rmax, 2.0 * (norm(p.x) + 1.0)});
        const double amp = sphere * p.env.constant * std::pow(2.0, std::fabs(d)) / rate;
        double rcut = r0;
        if (amp > 0.0) rcut = std::max(r0, std::pow(amp / (tol / 4.0), 1.0 / rate));
        if (rcut > 1e300) throw DomainError("singular integral: tail cut radius overflows");
        QuadResult it;
        if (rcut > rmax) {
            QuadOptions opt_t;
            opt_t.abs_tol = tol / 8.0;
            opt_t.rel_tol = 1e-13;
            opt_t.max_intervals = 20000;
            it = integrate_log(radial(1e-3 * tol / std::max(1.0, std::log(rcut / rmax))), rmax, rcut, opt_t);
        }
        tail = it.value + sphere * p.h_inf * std::pow(rcut, -2.0 * s) / (2.0 * s);
        tail_err = it.error + (amp > 0.0 ? amp * std::pow(rcut, -rate) : 0.0);
        tail_ok = it.converged;
    }
    out.value = correction(delta) + ia.value + ib.value + tail;
    out.error = excision_err + ia.error + ib.error + tail_err;
    out.evals = evals;
    out.converged = ib.converged && tail_ok;
    return out;
}

}  // namespace fraclab::detail
