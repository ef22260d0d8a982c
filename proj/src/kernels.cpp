#include "fraclab/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fraclab/errors.hpp"
#include "fraclab/special_functions.hpp"

namespace fraclab {

KernelSpec KernelSpec::make(int dim, double s) {
    if (dim < 1) throw DomainError("KernelSpec: dim must be >= 1");
    if (!(s > 0.0)) throw DomainError("KernelSpec: order s must be > 0");
    const double cap = std::min(1.0, 0.5 * dim);
    if (s > cap + kOrderSnap)
        throw DomainError("KernelSpec: order s = " + std::to_string(s) + " exceeds min(1, N/2) for N = " + std::to_string(dim));
    KernelSpec spec;
    spec.dim = dim;
    if (std::fabs(2.0 * s - dim) <= kOrderSnap) {
        spec.order = 0.5 * dim;
        spec.branch = dim == 1 ? KernelBranch::log1d : KernelBranch::log2d;
    } else {
        spec.order = s;
        spec.branch = KernelBranch::generic;
    }
    return spec;
}

double sphere_measure(int n) {
    if (n < 1) throw DomainError("sphere_measure: n must be >= 1");
    if (n == 1) return 2.0;
    return 2.0 * std::pow(kPi, 0.5 * n) / gamma(0.5 * n);
}

double riesz_constant(int dim, double s) {
    const auto g1 = log_gamma_signed(0.5 * (dim - 2.0 * s));
    const auto g2 = log_gamma_signed(s);
    const double log_abs = g1.log_abs - g2.log_abs - 0.5 * dim * std::log(kPi) - 2.0 * s * std::log(2.0);
    return g1.sign * g2.sign * std::exp(log_abs);
}

double frac_lap_front_constant(const KernelSpec& spec) {
    const double s = spec.order;
    if (s >= 1.0) throw DomainError("frac_lap_front_constant: requires s < 1");
    const int n = spec.dim;
    const double log_c = -0.5 * n * std::log(kPi) + 2.0 * s * std::log(2.0) + log_gamma(0.5 * (n + 2.0 * s)) -
                         log_gamma_signed(-s).log_abs;
    return std::exp(log_c);
}

KernelConstants KernelConstants::of(const KernelSpec& spec) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {spec.order < 1.0 ? frac_lap_front_constant(spec) : nan,
            spec.is_log() ? nan : riesz_constant(spec.dim, spec.order), fraclab::sphere_measure(spec.dim), kEulerGamma};
}

double riesz_kernel(const KernelSpec& spec, double r) {
    if (!(r > 0.0)) throw DomainError("riesz_kernel: requires r > 0");
    switch (spec.branch) {
        case KernelBranch::generic:
            return riesz_constant(spec.dim, spec.order) * std::pow(r, 2.0 * spec.order - spec.dim);
        case KernelBranch::log2d:
            return -std::log(r) / (2.0 * kPi);
        case KernelBranch::log1d:
            return -std::sqrt(2.0 / kPi) * (kEulerGamma + std::log(r));
    }
    return 0.0;
}

double green_kernel(const KernelSpec& spec, double r) {
    if (spec.branch == KernelBranch::log1d) {
        if (!(r > 0.0)) throw DomainError("green_kernel: requires r > 0");
        return -(kEulerGamma + std::log(r)) / kPi;
    }
    return riesz_kernel(spec, r);
}

double green_kernel_derivative(const KernelSpec& spec, double r) {
    if (!(r > 0.0)) throw DomainError("green_kernel_derivative: requires r > 0");
    switch (spec.branch) {
        case KernelBranch::generic: {
            const double e = 2.0 * spec.order - spec.dim;
            return riesz_constant(spec.dim, spec.order) * e * std::pow(r, e - 1.0);
        }
        case KernelBranch::log2d:
            return -1.0 / (2.0 * kPi * r);
        case KernelBranch::log1d:
            return -1.0 / (kPi * r);
    }
    return 0.0;
}

double kernel_1d(double s, double t) {
    if (t == 0.0) throw DomainError("kernel_1d: t = 0");
    if (std::fabs(s - 0.5) <= kOrderSnap) return std::log(std::fabs(t));
    return std::pow(std::fabs(t), 2.0 * s - 1.0);
}

double scaling_constant(const KernelSpec& spec, double beta) {
    const double s = spec.order;
    if (!(beta > 0.0) || !(beta < 2.0 * s))
        throw DomainError("scaling_constant: beta must lie in (0, 2s)");
    const int n = spec.dim;
    return riesz_constant(n, 0.5 * (n + beta - 2.0 * s)) / riesz_constant(n, 0.5 * (n + beta));
}

}  // namespace fraclab
