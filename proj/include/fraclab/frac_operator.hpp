#pragma once

// Pointwise (-Delta)^s via the symmetrised singular integral, the nonlocal
// Leibniz rule with its localisation errors, and the gradient kernel.

#include <array>
#include <vector>

#include "fraclab/fields.hpp"
#include "fraclab/kernels.hpp"

namespace fraclab {

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/// (-Delta)^s u(x) = -(C/2) int (u(x+z) + u(x-z) - 2u(x)) |z|^{-N-2s} dz.
/// Throws ConvergenceError when the error estimate exceeds tol.
Estimate frac_laplacian(const KernelSpec& spec, const ScalarField& u, const Point& x, double tol);
double frac_laplacian_at(const KernelSpec& spec, const ScalarField& u, const Point& x, double tol);

/// |(-Delta)^s zeta(x)| <x>^{N+2s} at x = center + r e_1 for each r (> 2 outer_radius).
std::vector<double> frac_laplacian_decay_check(const KernelSpec& spec, const CutoffSpec& cutoff,
                                               const std::vector<double>& radii);

struct LeibnizSides {
    double lhs = 0.0;
    double rhs = 0.0;
    double lhs_error = 0.0;
    double rhs_error = 0.0;
};

/// s < 1/2: lhs = (-Delta)^s(zeta phi)(x), rhs = zeta(x) (-Delta)^s phi(x) + E1(x).
LeibnizSides nonlocal_leibniz(const KernelSpec& spec, const CutoffSpec& zeta, const ScalarField& phi, const Point& x,
                              double tol);

/// 1/2 <= s < 1: rhs = zeta (-Delta)^s phi + phi (-Delta)^s zeta + E2.
LeibnizSides nonlocal_leibniz_sym(const KernelSpec& spec, const CutoffSpec& zeta, const ScalarField& phi,
                                  const Point& x, double tol);

enum class LocalizationVariant { E1, E2 };

/// E1(x) =  C int (zeta(x) - zeta(y)) psi(y) |x-y|^{-N-2s} dy            (s < 1/2)
/// E2(x) = -C int (zeta(x) - zeta(y)) (psi(x) - psi(y)) |x-y|^{-N-2s} dy  (1/2 <= s < 1)
Estimate localization_error(const KernelSpec& spec, const CutoffSpec& zeta, const ScalarField& psi, const Point& x,
                            LocalizationVariant variant, double tol = 1e-8);

/// Gradient of (k * g) at x through the vector kernel k'(|z|) z/|z|; s > 1/2,
/// g compactly supported.
std::array<double, 3> gradient_kernel_convolution(const KernelSpec& spec, const ScalarField& density,
                                                  const Point& x, double tol = 1e-9);

/// Pointwise product with merged support/decay metadata.
ScalarField multiply(const ScalarField& a, const ScalarField& b);

}  // namespace fraclab
