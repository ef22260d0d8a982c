#include "fraclab/radial_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fraclab/errors.hpp"
#include "fraclab/quadrature.hpp"
#include "fraclab/special_functions.hpp"

namespace fraclab {

namespace {

constexpr double kSplitWMax = 0.9;  // decomposition series are tabulated for w = 1 - t^2 <= this
constexpr int kMaxTerms = 4000;

bool is_half(double s) { return std::fabs(s - 0.5) <= kOrderSnap; }

// Coefficients c_n of sum c_n w^n for F(p, q; r; w), enough for |w| <= wmax.
std::vector<double> hyp_coefficients(double p, double q, double r, double wmax) {
    std::vector<double> out{1.0};
    double c = 1.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        c *= (p + n) * (q + n) / ((r + n) * (n + 1.0));
        out.push_back(c);
        if (c == 0.0) break;
        const double ratio = std::fabs((p + n + 1) * (q + n + 1) / ((r + n + 1) * (n + 2.0))) * wmax;
        if (n > 10 && ratio < 1.0 && std::fabs(c) * std::pow(wmax, n + 1) < 1e-19) break;
    }
    return out;
}

double sum_series(const std::vector<double>& c, double w) {
    double sum = 0.0, pw = 1.0;
    for (std::size_t n = 0; n < c.size(); ++n) {
        const double term = c[n] * pw;
        sum += term;
        if (n > 4 && std::fabs(term) <= 1e-18 * std::fabs(sum)) break;
        pw *= w;
    }
    return sum;
}

void require_generic(const KernelSpec& spec, const char* who) {
    if (spec.branch != KernelBranch::generic)
        throw DomainError(std::string(who) + ": requires 2s < N (the logarithmic branches have no angular kernel)");
}

// Interpolatory product rules on [0, 1] for the weights u^alpha or log(u).
struct ProductRule {
    std::vector<double> x;   // nodes
    std::vector<double> w;   // plain Gauss-Legendre weights on [0, 1]
    std::vector<double> wk;  // weights for K(u) P(u)
};

ProductRule make_product_rule(int n, double alpha, bool log_kernel) {
    const GaussRule g = gauss_legendre(n);
    ProductRule pr;
    std::vector<double> mu(n);
    for (int k = 0; k < n; ++k) {
        if (log_kernel) {
            mu[k] = k == 0 ? -1.0 : ((k % 2 == 1) ? 1.0 : -1.0) / (k * (k + 1.0));
        } else {
            double v = 1.0 / (alpha + 1.0);
            for (int j = 1; j <= k; ++j) v *= (alpha - j + 1.0) / (alpha + j + 1.0);
            mu[k] = v;
        }
    }
    for (int i = 0; i < n; ++i) {
        const double x = 0.5 * (g.nodes[i] + 1.0);
        const double wi = 0.5 * g.weights[i];
        // shifted Legendre values at x
        double p0 = 1.0, p1 = 2.0 * x - 1.0, acc = mu[0];
        if (n > 1) acc += 3.0 * p1 * mu[1];
        for (int k = 2; k < n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * (2.0 * x - 1.0) * p1 - (k - 1.0) * p0) / k;
            acc += (2.0 * k + 1.0) * p2 * mu[k];
            p0 = p1;
            p1 = p2;
        }
        pr.x.push_back(x);
        pr.w.push_back(wi);
        pr.wk.push_back(wi * acc);
    }
    return pr;
}

// Adaptive quadrature over consecutive cuts; ends listed in `graded` get the
// algebraic endpoint substitution.
QuadResult integrate_pieces(const Integrand& f, std::vector<double> cuts, const std::vector<double>& graded,
                            const QuadOptions& opt) {
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    QuadResult out;
    if (cuts.size() < 2) return out;
    QuadOptions piece = opt;
    piece.abs_tol = opt.abs_tol / static_cast<double>(cuts.size() - 1);
    auto flagged = [&](double c) { return std::find(graded.begin(), graded.end(), c) != graded.end(); };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto q = integrate_graded(f, cuts[i], cuts[i + 1], flagged(cuts[i]), flagged(cuts[i + 1]), piece);
        out.value += q.value;
        out.error += q.error;
        out.evals += q.evals;
        out.converged = out.converged && q.converged;
    }
    return out;
}

std::vector<double> singular_radii_of(const RadialFunction& g) {
    std::vector<double> out = g.singular_radii;
    for (const auto& [r, jump] : g.jumps) out.push_back(r);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

// ------------------------------------------------------------------ Phi

double phi_direct(const KernelSpec& spec, double t, double tol) {
    require_generic(spec, "phi_direct");
    if (!(t >= 0.0)) throw DomainError("phi_direct: requires t >= 0");
    if (t == 1.0) throw DomainError("phi_direct: t = 1 is the kernel singularity");
    const int n = spec.dim;
    const double s = spec.order;
    if (n == 1) return std::pow(std::fabs(1.0 - t), 2.0 * s - 1.0) + std::pow(1.0 + t, 2.0 * s - 1.0);
    const double lower = sphere_measure(n - 1);
    auto f = [&](double th) {
        const double sh = std::sin(0.5 * th);
        const double q = (1.0 - t) * (1.0 - t) + 4.0 * t * sh * sh;
        return std::pow(std::sin(th), n - 2) * std::pow(q, s - 0.5 * n);
    };
    QuadOptions opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = tol;
    opt.max_intervals = 20000;
    // the integrand peaks in a theta-window of width |1 - t|
    std::vector<double> bp;
    for (double w = std::fabs(1.0 - t); w < 1.0; w *= 8.0) bp.push_back(w);
    const auto r = integrate(f, 0.0, kPi, opt, bp);
    if (!r.converged) throw ConvergenceError("phi_direct: tolerance not reached", r.error);
    return lower * r.value;
}

double phi_hypergeometric(const KernelSpec& spec, double t) {
    require_generic(spec, "phi_hypergeometric");
    if (!(t >= 0.0) || !(t < 1.0)) throw DomainError("phi_hypergeometric: requires 0 <= t < 1; use the functional equation");
    const double n = spec.dim, s = spec.order;
    return sphere_measure(spec.dim) * hyp2f1(0.5 * n - s, 1.0 - s, 0.5 * n, t * t);
}

PhiKernel::PhiKernel(const KernelSpec& spec) : spec_(spec) {
    require_generic(spec, "PhiKernel");
    const double n = spec.dim, s = spec.order;
    a_ = 0.5 * n - s;
    b_ = 1.0 - s;
    c_ = 0.5 * n;
    d_ = 2.0 * s - 1.0;
    sphere_ = sphere_measure(spec.dim);
    newtonian_ = std::fabs(s - 1.0) <= kOrderSnap;
    if (newtonian_) return;
    direct_ = hyp_coefficients(a_, b_, c_, 0.5);
    log_case_ = is_half(s);
    if (log_case_) {
        coef1_ = sphere_ * gamma(a_ + b_) * reciprocal_gamma(a_) * reciprocal_gamma(b_);
        double g = 1.0;
        double psi1 = digamma(1.0), psia = digamma(a_), psib = digamma(b_);
        for (int k = 0; k < kMaxTerms; ++k) {
            p2_.push_back(g);
            h_.push_back(g * (2.0 * psi1 - psia - psib));
            g *= (a_ + k) * (b_ + k) / ((k + 1.0) * (k + 1.0));
            psi1 += 1.0 / (k + 1.0);
            psia += 1.0 / (a_ + k);
            psib += 1.0 / (b_ + k);
            if (k > 10 && std::fabs(g) * std::pow(kSplitWMax, k + 1) * (1.0 + std::fabs(psi1) + std::fabs(psia)) < 1e-19)
                break;
        }
    } else {
        coef1_ = sphere_ * gamma(c_) * gamma(d_) / (gamma(c_ - a_) * gamma(c_ - b_));
        coef2_ = sphere_ * gamma(c_) * gamma(-d_) * reciprocal_gamma(a_) * reciprocal_gamma(b_);
        p1_ = hyp_coefficients(a_, b_, 1.0 - d_, kSplitWMax);
        p2_ = hyp_coefficients(c_ - a_, c_ - b_, 1.0 + d_, kSplitWMax);
    }
}

double PhiKernel::direct_series(double z) const { return sum_series(direct_, z); }
double PhiKernel::p1_series(double w) const { return sum_series(p1_, w); }
double PhiKernel::p2_series(double w) const { return sum_series(p2_, w); }
double PhiKernel::h_series(double w) const { return sum_series(h_, w); }

double PhiKernel::value(double t) const {
    if (!(t >= 0.0)) throw DomainError("PhiKernel::value: requires t >= 0");
    const double s = spec_.order;
    if (t == 1.0) {
        if (!(s > 0.5 + kOrderSnap)) throw DomainError("PhiKernel::value: t = 1 is the kernel singularity");
        return split(1.0).phi1;  // K_{2s}(0) = 0 for s > 1/2
    }
    if (t > 1.0) return std::pow(t, 2.0 * s - spec_.dim) * value(1.0 / t);
    if (newtonian_) return sphere_;
    const double z = t * t;
    if (z <= 0.5) return sphere_ * direct_series(z);
    const PhiSplit sp = split(t);
    return sp.phi1 + kernel_1d(s, 1.0 - t) * sp.phi2;
}

PhiSplit PhiKernel::split(double t) const {
    const double w = 1.0 - t * t;
    if (!(std::fabs(w) <= kSplitWMax))
        throw DomainError("PhiKernel::split: requires |1 - t^2| <= 0.9 (t in [0.32, 1.38])");
    if (newtonian_) return {t < 1.0 ? sphere_ : sphere_ * std::pow(t, 2.0 - spec_.dim), 0.0};
    if (log_case_) {
        const double g = p2_series(w);
        return {coef1_ * (h_series(w) - std::log1p(t) * g), -coef1_ * g};
    }
    return {coef1_ * p1_series(w), coef2_ * std::pow(1.0 + t, d_) * p2_series(w)};
}

PhiEval PhiKernel::decomposed(double rho, double r) const {
    if (!(rho > 0.0) || !(r > 0.0)) throw DomainError("phi_decomposed: requires rho > 0 and r > 0");
    if (r == rho) throw DomainError("phi_decomposed: r = rho is the kernel singularity");
    const double s = spec_.order;
    const int n = spec_.dim;
    PhiEval e;
    e.t = r / rho;
    if (r < rho) {
        const PhiSplit sp = split(e.t);
        if (log_case_) {
            e.smooth_part = sp.phi1 - std::log(rho) * sp.phi2;
            e.singular_coeff = sp.phi2;
        } else {
            e.smooth_part = sp.phi1;
            e.singular_coeff = std::pow(rho, 1.0 - 2.0 * s) * sp.phi2;
        }
    } else {
        const double tau = rho / r;
        const PhiSplit sp = split(tau);
        const double f = std::pow(e.t, 2.0 * s - n);
        if (log_case_) {
            e.smooth_part = f * (sp.phi1 - std::log(r) * sp.phi2);
            e.singular_coeff = f * sp.phi2;
        } else {
            e.smooth_part = f * sp.phi1;
            e.singular_coeff = f * std::pow(r, 1.0 - 2.0 * s) * sp.phi2;
        }
    }
    e.value = e.smooth_part + (e.singular_coeff == 0.0 ? 0.0 : kernel_1d(s, rho - r) * e.singular_coeff);
    return e;
}

PhiEval phi_decomposed(const KernelSpec& spec, double rho, double r) { return PhiKernel(spec).decomposed(rho, r); }

// ------------------------------------------------------- radial convolution

namespace {

// Cuts [from, b_1, ..., to] with the singular radii strictly inside.
std::vector<double> cuts_between(double from, double to, const std::vector<double>& radii) {
    std::vector<double> c{from};
    for (double r : radii)
        if (r > from && r < to) c.push_back(r);
    c.push_back(to);
    return c;
}

// Adds the [lo, inf) part: pieces up to a cut radius plus a transformed tail.
QuadResult pieces_with_tail(const Integrand& f, double lo, const std::vector<double>& radii, double end,
                            const QuadOptions& opt) {
    if (std::isfinite(end)) return lo < end ? integrate_pieces(f, cuts_between(lo, end, radii), radii, opt) : QuadResult{};
    double top = 2.0 * lo;
    for (double r : radii) top = std::max(top, r);
    auto q = integrate_pieces(f, cuts_between(lo, top, radii), radii, opt);
    const auto t = integrate_tail(f, top, opt);
    q.value += t.value;
    q.error += t.error;
    q.converged = q.converged && t.converged;
    return q;
}

Estimate convolve_log2d(const RadialFunction& g, double rho, double tol) {
    // -(1/2pi) * mean of log|x - y| over |y| = r equals -(1/2pi) log max(rho, r)
    const std::vector<double> radii = singular_radii_of(g);
    const double end = g.compact() ? g.support_end : kUnbounded;
    if (!g.compact() && !(g.decay_exponent > 2.0)) throw DomainError("radial log potential: decay exponent must exceed 2");
    QuadOptions opt;
    opt.abs_tol = tol / 4.0;
    opt.rel_tol = 1e-14;
    opt.max_intervals = 20000;
    auto inner_f = [&](double r) { return g(r) * r; };
    const auto inner = integrate_pieces(inner_f, cuts_between(0.0, std::min(rho, end), radii), radii, opt);
    auto outer_f = [&](double r) { return g(r) * r * std::log(r); };
    const auto outer = pieces_with_tail(outer_f, rho, radii, end, opt);
    if (!inner.converged || !outer.converged)
        throw ConvergenceError("radial_riesz_convolve: tolerance not reached", inner.error + outer.error);
    return {-(std::log(rho) * inner.value + outer.value), std::fabs(std::log(rho)) * inner.error + outer.error};
}

Estimate convolve_log1d(const KernelSpec& spec, const RadialFunction& g, double rho, double tol) {
    auto f = [&](double r) {
        const double near = r == rho ? 0.0 : green_kernel(spec, std::fabs(rho - r));
        return (near + green_kernel(spec, rho + r)) * g(r);
    };
    std::vector<double> radii = singular_radii_of(g);
    radii.push_back(rho);
    std::sort(radii.begin(), radii.end());
    const double end = g.compact() ? g.support_end : kUnbounded;
    if (!g.compact() && !(g.decay_exponent > 1.0)) throw DomainError("radial log potential: decay exponent must exceed 1");
    QuadOptions opt;
    opt.abs_tol = tol / 2.0;
    opt.rel_tol = 1e-14;
    opt.max_intervals = 20000;
    const auto r = pieces_with_tail(f, 0.0, radii, end, opt);
    if (!r.converged) throw ConvergenceError("radial_riesz_convolve: tolerance not reached", r.error);
    return {r.value, r.error};
}

}  // namespace

Estimate radial_riesz_convolve_estimate(const KernelSpec& spec, const RadialFunction& g, double rho, double tol) {
    if (!(rho > 0.0)) throw DomainError("radial_riesz_convolve: requires rho > 0");
    if (!(tol > 0.0)) throw DomainError("radial_riesz_convolve: tol must be > 0");
    if (spec.branch == KernelBranch::log2d) return convolve_log2d(g, rho, tol);
    if (spec.branch == KernelBranch::log1d) return convolve_log1d(spec, g, rho, tol);

    const PhiKernel phi(spec);
    const int n = spec.dim;
    const double s = spec.order;
    const double front = riesz_constant(n, s) * std::pow(rho, 2.0 * s - n);
    auto weight = [&](double r) { return g(r) * std::pow(r, n - 1); };
    auto integrand = [&](double r) { return r == rho ? 0.0 : front * phi.value(r / rho) * weight(r); };

    const double end = g.compact() ? g.support_end : kUnbounded;
    std::vector<double> bp;
    for (double b : singular_radii_of(g))
        if (b > 0.0 && b < end) bp.push_back(b);
    if (!std::isfinite(end) && !(g.decay_exponent > 2.0 * s))
        throw DomainError("radial_riesz_convolve: decay exponent must exceed 2s");

    QuadOptions opt;
    opt.abs_tol = tol / 8.0;
    opt.rel_tol = 1e-14;
    opt.max_intervals = 40000;
    double value = 0.0, error = 0.0;
    bool ok = true;
    auto add = [&](const QuadResult& q) {
        value += q.value;
        error += q.error;
        ok = ok && q.converged;
    };

    std::vector<double> graded = bp;
    const bool on_singular_radius =
        std::any_of(bp.begin(), bp.end(), [rho](double b) { return std::fabs(b - rho) <= 1e-13 * rho; });
    double lo = rho, hi = rho;  // excluded cell around the kernel singularity
    if (rho < end && !on_singular_radius) {
        double h = 0.05 * rho;
        for (double b : bp) h = std::min(h, 0.25 * std::fabs(b - rho));
        if (std::isfinite(end)) h = std::min(h, 0.25 * (end - rho));
        const bool log_kernel = phi.log_case();
        const double alpha = 2.0 * s - 1.0;
        // product integration over [rho - h, rho] and [rho, rho + h]
        auto cell = [&](const ProductRule& pr, double side) {
            double sum = 0.0;
            const double kscale = log_kernel ? h : std::pow(h, alpha + 1.0);
            const double logh = std::log(h);
            for (std::size_t i = 0; i < pr.x.size(); ++i) {
                const double r = rho + side * h * pr.x[i];
                const PhiEval e = phi.decomposed(rho, r);
                const double wr = front * weight(r);
                sum += h * pr.w[i] * e.smooth_part * wr;
                const double kw = log_kernel ? (pr.wk[i] + logh * pr.w[i]) : pr.wk[i];
                sum += kscale * kw * e.singular_coeff * wr;
            }
            return sum;
        };
        const ProductRule fine_rule = make_product_rule(12, alpha, log_kernel);
        const ProductRule coarse_rule = make_product_rule(8, alpha, log_kernel);
        for (double side : {-1.0, 1.0}) {
            const double fine = cell(fine_rule, side);
            const double coarse = cell(coarse_rule, side);
            value += fine;
            error += std::fabs(fine - coarse);
        }
        lo = rho - h;
        hi = rho + h;
    }
    if (rho < end) {
        graded.push_back(lo);
        graded.push_back(hi);
    }
    double top = end;
    if (!std::isfinite(end)) {
        top = 2.0 * hi;
        for (double b : bp) top = std::max(top, b);
    }
    std::vector<double> left{0.0}, right{hi};
    for (double b : bp) (b < lo ? left : right).push_back(b);
    if (rho < end) left.push_back(lo);
    right.push_back(top);
    if (rho >= end) {
        left.push_back(end);
        right.clear();
    }
    add(integrate_pieces(integrand, left, graded, opt));
    if (!right.empty()) add(integrate_pieces(integrand, right, graded, opt));
    if (!std::isfinite(end)) add(integrate_tail(integrand, top, opt));
    if (!ok || !(error <= tol)) throw ConvergenceError("radial_riesz_convolve: tolerance not reached", error);
    return {value, error};
}

double radial_riesz_convolve(const KernelSpec& spec, const RadialFunction& g, double rho, double tol) {
    return radial_riesz_convolve_estimate(spec, g, rho, tol).value;
}

double radial_riesz_convolve(const KernelSpec& spec, const RadialProfile& g, double rho, double tol) {
    return radial_riesz_convolve(spec, g.as_function(), rho, tol);
}

Estimate radial_riesz_gradient(const KernelSpec& spec, const RadialFunction& g, double rho, double tol) {
    if (!(rho > 0.0)) throw DomainError("radial_riesz_gradient: requires rho > 0");
    if (spec.branch == KernelBranch::log2d) {
        QuadOptions opt;
        opt.abs_tol = tol * rho;
        opt.rel_tol = 1e-14;
        opt.max_intervals = 20000;
        const std::vector<double> radii = singular_radii_of(g);
        const double top = g.compact() ? std::min(rho, g.support_end) : rho;
        const auto q = integrate_pieces([&](double r) { return g(r) * r; }, cuts_between(0.0, top, radii), radii, opt);
        if (!q.converged) throw ConvergenceError("radial_riesz_gradient: tolerance not reached", q.error / rho);
        return {-q.value / rho, q.error / rho};
    }
    if (spec.branch == KernelBranch::log1d) throw DomainError("radial_riesz_gradient: not available for 2s = N = 1");
    if (!g.derivative) throw DomainError("radial_riesz_gradient: the radial function carries no derivative");
    RadialFunction rg = g;
    auto d = g.derivative;
    rg.value = [d](double r) { return r * d(r); };
    rg.jumps.clear();
    rg.singular_radii = singular_radii_of(g);
    const double s = spec.order;
    const int n = spec.dim;
    const auto a = radial_riesz_convolve_estimate(spec, g, rho, tol * rho / (4.0 * s));
    const auto b = radial_riesz_convolve_estimate(spec, rg, rho, tol * rho / 2.0);
    // r g' carries r_j J_j delta(r - r_j) at each jump
    double jump_term = 0.0;
    if (!g.jumps.empty()) {
        const PhiKernel phi(spec);
        for (const auto& [rj, jump] : g.jumps)
            jump_term += riesz_constant(n, s) * std::pow(rho, 2.0 * s - n) * phi.value(rj / rho) * std::pow(rj, n) * jump;
    }
    return {(2.0 * s * a.value + b.value + jump_term) / rho, (2.0 * s * a.error + b.error) / rho};
}

// --------------------------------------------------------- Fourier-Bessel

namespace {

// Wynn epsilon on a sequence of partial sums; returns the last diagonal estimate.
double wynn_epsilon(const std::vector<double>& s) {
    const std::size_t n = s.size();
    std::vector<std::vector<double>> e(n + 1, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) e[i][1] = s[i];
    for (std::size_t k = 2; k <= n; ++k) {
        for (std::size_t i = 0; i + k <= n; ++i) {
            const double diff = e[i + 1][k - 1] - e[i][k - 1];
            if (diff == 0.0) return e[i + 1][k - 1];
            e[i][k] = e[i + 1][k - 2] + 1.0 / diff;
        }
    }
    const std::size_t kodd = (n % 2 == 1) ? n : n - 1;
    return e[0][kodd];
}

}  // namespace

double fourier_bessel(int l, int dim, const RadialFunction& profile, double k, double tol) {
    if (l < 0) throw DomainError("fourier_bessel: l must be >= 0");
    if (dim < 2) throw DomainError("fourier_bessel: dim must be >= 2");
    if (!(k > 0.0)) throw DomainError("fourier_bessel: requires k > 0");
    const double nu = l + 0.5 * (dim - 2);
    const double half = 0.5 * dim;
    auto f = [&](double r) {
        const double v = profile(r);
        return v == 0.0 ? 0.0 : bessel_j(nu, r * k) * std::pow(r, half) * v;
    };
    QuadOptions opt;
    opt.abs_tol = tol / 4.0;
    opt.rel_tol = 1e-14;
    opt.max_intervals = 40000;
    const double scale = std::pow(k, 1.0 - half);
    constexpr int kZeroCap = 200;

    double sing = 0.0;
    for (double b : profile.singular_radii) sing = std::max(sing, b);
    if (profile.compact()) {
        std::vector<double> bp = profile.singular_radii;
        for (int m = 1; m <= kZeroCap; ++m) {
            const double z = bessel_j_zero(nu, m) / k;
            if (z >= profile.support_end) break;
            bp.push_back(z);
        }
        const auto r = integrate(f, 0.0, profile.support_end, opt, bp);
        if (!r.converged) throw ConvergenceError("fourier_bessel: tolerance not reached", r.error);
        return scale * r.value;
    }
    if (!(profile.decay_exponent > half + 0.5))
        throw DomainError("fourier_bessel: requires outer decay > N/2 + 1/2");
    // first zero beyond the last singular radius
    int m = 1;
    double z = bessel_j_zero(nu, m) / k;
    while (z <= sing && m < kZeroCap) z = bessel_j_zero(nu, ++m) / k;
    std::vector<double> bp = profile.singular_radii;
    for (int j = 1; j < m; ++j) bp.push_back(bessel_j_zero(nu, j) / k);
    const auto head = integrate(f, 0.0, z, opt, bp);
    if (!head.converged) throw ConvergenceError("fourier_bessel: tolerance not reached", head.error);
    std::vector<double> partial{head.value};
    double prev_z = z;
    int small = 0;
    double last_acc = head.value, prev_acc = kUnbounded;
    for (int j = m + 1; j <= kZeroCap; ++j) {
        const double zj = bessel_j_zero(nu, j) / k;
        const auto piece = integrate(f, prev_z, zj, opt);
        prev_z = zj;
        partial.push_back(partial.back() + piece.value);
        small = std::fabs(piece.value) < 0.05 * tol ? small + 1 : 0;
        if (small >= 3) return scale * partial.back();
        if (partial.size() >= 8) {
            std::vector<double> window(partial.end() - 8, partial.end());
            prev_acc = last_acc;
            last_acc = wynn_epsilon(window);
            if (std::fabs(last_acc - prev_acc) < 0.1 * tol) return scale * last_acc;
        }
    }
    throw ConvergenceError("fourier_bessel: oscillatory tail did not stabilise within 200 zeros",
                           std::fabs(last_acc - prev_acc));
}

double fourier_bessel(int l, int dim, const RadialProfile& profile, double k, double tol) {
    return fourier_bessel(l, dim, profile.as_function(), k, tol);
}

std::pair<double, double> dimension_trade_check(int l, int dim, const RadialFunction& phi, double k, double tol) {
    const double lhs = fourier_bessel(l, dim, phi, k, tol);
    if (l == 0) return {lhs, lhs};
    RadialFunction shifted = phi;
    auto v = phi.value;
    shifted.value = [v, l](double r) { return v(r) * std::pow(r, -l); };
    shifted.derivative = nullptr;
    shifted.decay_exponent = phi.decay_exponent + l;
    const double rhs = std::pow(k, l) * fourier_bessel(0, dim + 2 * l, shifted, k, tol * std::pow(k, -l));
    return {lhs, rhs};
}

}  // namespace fraclab
