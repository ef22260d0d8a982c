#pragma once

#include <functional>
#include <vector>

namespace fraclab {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evals = 0;
    bool converged = true;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_intervals = 4000;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. Breakpoints inside (a, b)
/// seed the initial partition so kinks and integrable endpoint singularities
/// sit on interval ends. Never throws on non-convergence; check `converged`.
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt = {},
                     const std::vector<double>& breakpoints = {});

/// Integral over [a, inf) for a > 0 via x = a / t, t in (0, 1].
QuadResult integrate_tail(const Integrand& f, double a, const QuadOptions& opt = {});

/// Integral over [a, b], 0 < a < b, in the variable v = log x.
QuadResult integrate_log(const Integrand& f, double a, double b, const QuadOptions& opt = {},
                         const std::vector<double>& breakpoints = {});

/// Integral over [a, b] with integrable algebraic singularities at the flagged
/// ends, via x = end +- (b - a) v^4.
QuadResult integrate_graded(const Integrand& f, double a, double b, bool singular_a, bool singular_b,
                            const QuadOptions& opt = {});

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

}  // namespace fraclab
