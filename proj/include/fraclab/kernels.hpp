#pragma once

// Riesz kernels k_{2s} on R^N, the 1-D kernel K_{2s} and the named constants.

namespace fraclab {

enum class KernelBranch {
    generic,  // 2s < N
    log2d,    // 2s = N = 2
    log1d,    // 2s = N = 1
};

/// The pair (N, s) with 0 < s <= min(1, N/2). Use make() to construct.
struct KernelSpec {
    int dim = 1;
    double order = 0.5;
    KernelBranch branch = KernelBranch::log1d;

    static KernelSpec make(int dim, double s);
    bool is_log() const { return branch != KernelBranch::generic; }
};

struct KernelConstants {
    double c_front;         // C_{N,s}; NaN when s = 1
    double d_front;         // D_{N,s}; NaN on the log branches
    double sphere_measure;  // |S^{N-1}|
    double euler_mascheroni;

    static KernelConstants of(const KernelSpec& spec);
};

/// |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2); equals 2 for n = 1.
double sphere_measure(int n);

/// D_{N,s} for any real s with (N - 2s)/2 and s away from the Gamma poles.
/// Sign tracked through log|Gamma|; negative values occur for s > N/2.
double riesz_constant(int dim, double s);

double riesz_kernel(const KernelSpec& spec, double r);

/// Kernel for which (k * f) inverts (-Delta)^s under the plain convolution
/// integral. Differs from riesz_kernel only on the 1-D log branch, by the
/// factor (2 pi)^{-1/2}: -(gamma_EM + log r) / pi.
double green_kernel(const KernelSpec& spec, double r);
double green_kernel_derivative(const KernelSpec& spec, double r);

/// K_{2s}(t): |t|^{2s-1}, or log|t| when s = 1/2.
double kernel_1d(double s, double t);

double frac_lap_front_constant(const KernelSpec& spec);

/// C(beta) in (-Delta)^s |x|^beta = C(beta) |x|^{beta - 2s}, 0 < beta < 2s.
double scaling_constant(const KernelSpec& spec, double beta);

/// Tolerance used to recognise s = 1/2 and 2s = N.
inline constexpr double kOrderSnap = 1e-12;

}  // namespace fraclab
