#pragma once

// Angular kernel Phi, its smooth/singular split, radial Riesz convolution and
// the Fourier-Bessel transform.

#include <utility>
#include <vector>

#include "fraclab/fields.hpp"
#include "fraclab/frac_operator.hpp"
#include "fraclab/kernels.hpp"

namespace fraclab {

/// Phi(t) together with its split value = smooth_part + K_{2s}(rho - r) * singular_coeff
/// (the (rho, r) form; t = r / rho).
struct PhiEval {
    double t = 0.0;
    double value = 0.0;
    double smooth_part = 0.0;
    double singular_coeff = 0.0;
};

/// t-form split on (0, 1): Phi(t) = phi1 + K_{2s}(1 - t) phi2.
struct PhiSplit {
    double phi1 = 0.0;
    double phi2 = 0.0;
};

/// Phi(t) = |S^{N-2}| int_{-1}^{1} (1-u^2)^{(N-3)/2} (1 + t^2 - 2tu)^{s - N/2} du by
/// adaptive quadrature in u = cos(theta); N = 1 uses |1-t|^{2s-1} + (1+t)^{2s-1}.
double phi_direct(const KernelSpec& spec, double t, double tol = 1e-13);

/// |S^{N-1}| F(N/2 - s, 1 - s; N/2; t^2) for 0 <= t < 1.
double phi_hypergeometric(const KernelSpec& spec, double t);

/// Series evaluator for Phi on the generic branch, built once per (N, s).
/// phi1/phi2 come from the z -> 1 - z connection formulas in w = 1 - t^2.
class PhiKernel {
public:
    explicit PhiKernel(const KernelSpec& spec);

    const KernelSpec& spec() const { return spec_; }
    bool log_case() const { return log_case_; }

    double value(double t) const;  // t = 1 allowed for s > 1/2, where Phi is finite
    PhiSplit split(double t) const;                    // 0 < t < 1 (series valid for 0 < t < sqrt 2)
    PhiEval decomposed(double rho, double r) const;    // r != rho; r > rho via the functional equation

private:
    double direct_series(double z) const;
    double p1_series(double w) const;
    double p2_series(double w) const;
    double h_series(double w) const;

    KernelSpec spec_;
    bool log_case_ = false;
    bool newtonian_ = false;  // s = 1: Phi is constant inside the unit ball
    double a_ = 0, b_ = 0, c_ = 0, d_ = 0, sphere_ = 0;
    double coef1_ = 0, coef2_ = 0;
    std::vector<double> direct_, p1_, p2_, h_;
};

PhiEval phi_decomposed(const KernelSpec& spec, double rho, double r);

/// (k * g)(x) at |x| = rho for radial g: D rho^{2s-N} int Phi(r/rho) g(r) r^{N-1} dr.
/// The singular node r = rho is handled by product integration of K_{2s}
/// against the polynomial interpolant of the coefficient; the rest adaptively.
/// 2s = N = 2 uses the logarithmic Newton formula; 2s = N = 1 the even-extension form.
Estimate radial_riesz_convolve_estimate(const KernelSpec& spec, const RadialFunction& g, double rho, double tol);
double radial_riesz_convolve(const KernelSpec& spec, const RadialFunction& g, double rho, double tol);
double radial_riesz_convolve(const KernelSpec& spec, const RadialProfile& g, double rho, double tol);

/// d/drho of the radial potential; requires g.derivative.
/// psi'(rho) = (2s psi(rho) + (k * (r g'))(rho)) / rho, with g' including the
/// delta masses of g.jumps.
Estimate radial_riesz_gradient(const KernelSpec& spec, const RadialFunction& g, double rho, double tol);

/// F_{l,N} Psi(k) = k^{1-N/2} int_0^inf J_{l+(N-2)/2}(rk) r^{N/2} Psi(r) dr.
double fourier_bessel(int l, int dim, const RadialFunction& profile, double k, double tol);
double fourier_bessel(int l, int dim, const RadialProfile& profile, double k, double tol);

/// (F_{l,N} phi(k), k^l F_{0,N+2l}(r^{-l} phi)(k)), each side evaluated on its own.
std::pair<double, double> dimension_trade_check(int l, int dim, const RadialFunction& phi, double k, double tol);

}  // namespace fraclab
