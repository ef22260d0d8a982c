#include "fraclab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "fraclab/errors.hpp"
#include "fraclab/special_functions.hpp"

namespace fraclab {

namespace {

// Kronrod 15-point abscissae (positive half, descending) and weights; Gauss 7 weights.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::fabs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    const double value = resk * h;
    resabs *= std::fabs(h);
    resasc *= std::fabs(h);
    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    if (!std::isfinite(value)) err = std::numeric_limits<double>::infinity();
    return {a, b, value, err};
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt,
                     const std::vector<double>& breakpoints) {
    QuadResult out;
    if (a == b) return out;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::vector<double> cuts{a};
    std::vector<double> inner;
    for (double p : breakpoints)
        if (p > a && p < b) inner.push_back(p);
    std::sort(inner.begin(), inner.end());
    for (double p : inner)
        if (p - cuts.back() > 1e-14 * std::max(1.0, std::fabs(p))) cuts.push_back(p);
    if (b - cuts.back() <= 1e-14 * std::max(1.0, std::fabs(b)) && cuts.size() > 1) cuts.back() = b;
    else cuts.push_back(b);

    std::priority_queue<Segment> heap;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Segment s = gk15(f, cuts[i], cuts[i + 1]);
        out.evals += 15;
        total += s.value;
        total_err += s.error;
        heap.push(s);
    }
    int intervals = static_cast<int>(heap.size());
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::fabs(total))) {
        if (intervals >= opt.max_intervals) {
            out.converged = false;
            break;
        }
        Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) || !std::isfinite(total_err)) {
            out.converged = false;
            break;
        }
        heap.pop();
        const Segment left = gk15(f, worst.a, mid);
        const Segment right = gk15(f, mid, worst.b);
        out.evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
        // periodically re-sum to shed accumulated cancellation in the running totals
        if (intervals % 64 == 0) {
            auto copy = heap;
            total = 0.0;
            total_err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                total_err += copy.top().error;
                copy.pop();
            }
        }
    }
    // final deterministic sum in left-to-right order
    std::vector<Segment> segs;
    segs.reserve(heap.size());
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    total = 0.0;
    total_err = 0.0;
    for (const auto& s : segs) {
        total += s.value;
        total_err += s.error;
    }
    out.value = sign * total;
    out.error = total_err;
    if (total_err > std::max(opt.abs_tol, opt.rel_tol * std::fabs(total))) out.converged = false;
    return out;
}

QuadResult integrate_tail(const Integrand& f, double a, const QuadOptions& opt) {
    if (!(a > 0.0)) throw DomainError("integrate_tail: requires a > 0");
    auto g = [&](double t) {
        const double x = a / t;
        return f(x) * a / (t * t);
    };
    return integrate(g, 0.0, 1.0, opt);
}

QuadResult integrate_log(const Integrand& f, double a, double b, const QuadOptions& opt,
                         const std::vector<double>& breakpoints) {
    if (!(a > 0.0) || !(b > a)) throw DomainError("integrate_log: requires 0 < a < b");
    std::vector<double> bp;
    for (double p : breakpoints)
        if (p > a && p < b) bp.push_back(std::log(p));
    auto g = [&](double v) {
        const double x = std::exp(v);
        return f(x) * x;
    };
    return integrate(g, std::log(a), std::log(b), opt, bp);
}

QuadResult integrate_graded(const Integrand& f, double a, double b, bool singular_a, bool singular_b,
                            const QuadOptions& opt) {
    if (!(b > a)) return {};
    if (singular_a && singular_b) {
        const double m = 0.5 * (a + b);
        QuadOptions half = opt;
        half.abs_tol = 0.5 * opt.abs_tol;
        const auto l = integrate_graded(f, a, m, true, false, half);
        const auto r = integrate_graded(f, m, b, false, true, half);
        return {l.value + r.value, l.error + r.error, l.evals + r.evals, l.converged && r.converged};
    }
    if (!singular_a && !singular_b) return integrate(f, a, b, opt);
    const double len = b - a;
    // x = end +- len v^4 turns |x - end|^beta into v^{4 beta + 3}
    auto g = [&](double v) {
        const double v3 = v * v * v;
        const double x = singular_a ? a + len * v3 * v : b - len * v3 * v;
        if (x == (singular_a ? a : b)) return 0.0;  // v below rounding resolution
        return f(x) * 4.0 * len * v3;
    };
    return integrate(g, 0.0, 1.0, opt);
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace fraclab
