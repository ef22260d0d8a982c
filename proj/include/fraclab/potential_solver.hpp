#pragma once

// Riesz potentials k * f, localized potentials and a fixed-point solve of
// (-Delta)^s psi + V psi = f for small V.

#include <array>
#include <vector>

#include "fraclab/fields.hpp"
#include "fraclab/frac_operator.hpp"
#include "fraclab/kernels.hpp"

namespace fraclab {

/// (k * f)(x) with the Green kernel (see green_kernel). f must be compactly
/// supported or carry certified decay: exponent > 2s (generic) or > N (2s = N).
/// Throws DataError for missing decay metadata, ConvergenceError when the
/// error estimate exceeds tol.
Estimate riesz_convolve_estimate(const KernelSpec& spec, const ScalarField& f, const Point& x, double tol);
double riesz_convolve(const KernelSpec& spec, const ScalarField& f, const Point& x, double tol);

/// k * (g eta); g eta must be compactly supported.
double localized_potential(const KernelSpec& spec, const ScalarField& g, const CutoffSpec& eta, const Point& x,
                           double tol);

/// The potential x -> (k * f)(x) as a field; each evaluation is a quadrature.
/// `growth` certifies |k * f|(y) <= growth_constant <y>^{growth}.
ScalarField riesz_potential_field(const KernelSpec& spec, const ScalarField& f, double tol, double growth,
                                  double growth_constant);

/// Nodes at which the fixed-point iterates live. For N = 1 the nodes are
/// x-coordinates; for N >= 2 they are radii and V, f must be radial
/// (they are sampled along e_1).
struct EvaluationGrid {
    std::vector<double> nodes;  // strictly increasing
    bool radial = false;

    /// Nodes x_i = x0 + sign(t) L |t|^p, t uniform on [-1, 1]; p > 1 clusters at x0.
    static EvaluationGrid stretched(double center, double half_width, int count, double power);
    /// Uniform spacing h on [a, b].
    static EvaluationGrid uniform(double a, double b, double h);
};

struct FixedPointOptions {
    int max_iter = 60;
    double tol = 1e-8;             // target sup-norm residual on the grid
    double quad_tol = 1e-10;       // per-convolution quadrature tolerance
    double max_contraction = 0.9;  // estimates at or above this are refused
};

struct PotentialSolution {
    KernelSpec spec;
    EvaluationGrid grid;
    std::vector<double> values;     // particular solution on the grid (no affine part)
    std::vector<double> residuals;  // |(-Delta)^s psi + V psi - f| per node
    double residual_sup = 0.0;
    int iterations = 0;
    double contraction_estimate = 0.0;
    bool converged = false;

    /// psi = particular + affine_offset + affine_slope . y
    ScalarField particular;
    double affine_offset = 0.0;
    std::array<double, 3> affine_slope{0.0, 0.0, 0.0};

    /// Nullspace shift. A nonzero slope requires s > 1/2.
    void set_affine(double offset, const std::array<double, 3>& slope);
    double evaluate(const Point& y) const;
};

/// Iterates psi_{n+1} = k * (f - V psi_n) on the grid, interpolating psi_n by a
/// natural cubic spline. V must be compactly supported inside the grid hull.
/// The contraction factor sup_x (|k| * |V|)(x) over grid nodes in supp V is
/// estimated first; DomainError when it reaches opt.max_contraction. Since
/// (-Delta)^s psi_{n+1} = f - V psi_n exactly, the residual per node is
/// |V (psi_{n+1} - psi_n)| plus the quadrature error. On max_iter exhaustion
/// the last iterate is returned with converged = false.
PotentialSolution solve_schrodinger_fixed_point(const KernelSpec& spec, const ScalarField& V, const ScalarField& f,
                                                const EvaluationGrid& grid, const FixedPointOptions& opt = {});

}  // namespace fraclab
