#pragma once

// Polar-coordinate integration about a base point x, shared by the singular
// integral operators and the potential solver.

#include <functional>
#include <utility>
#include <vector>

#include "fraclab/fields.hpp"
#include "fraclab/quadrature.hpp"

namespace fraclab::detail {

/// Far-field description of an integrand H(y): beyond distance `start` from x,
/// either H == h_inf (vanishes = true) or |H(y) - h_inf| <= constant <y>^{-exponent}.
struct Envelope {
    bool vanishes = false;
    double start = 0.0;
    double exponent = 0.0;
    double constant = 0.0;
};

struct PolarProblem {
    int dim = 1;
    Point x{};
    std::function<double(const Point&)> h;
    double h_inf = 0.0;
    Envelope env;
    std::vector<Point> singular_points;
    std::vector<std::pair<Point, double>> balls;  // support balls (center, radius)
};

/// Distances from x at which the integrand may be non-smooth in the radius.
std::vector<double> radial_breaks(const PolarProblem& p);

/// Axis for polar coordinates: toward the nearest singular point, else toward
/// the support ball whose boundary is nearest, else e_1.
Point polar_axis(const PolarProblem& p);

/// cos(angle to axis) values where the sphere of radius rho around x crosses a
/// support-ball boundary (only for balls whose centre lies on the axis).
std::vector<double> cap_breaks(const PolarProblem& p, const Point& axis, double rho);

/// Distance from x to the nearest singular point (inf when none).
double singular_distance(const PolarProblem& p);

/// P.V. integral of H(y) |x - y|^{-N-2s} dy for H(x) = 0, via the symmetric
/// pair form, inner excision with a Laplacian correction and a bounded tail.
/// `tol` is an absolute tolerance on the returned integral.
QuadResult singular_integral(const PolarProblem& p, double s, double tol);

Envelope envelope_of(const ScalarField& f, const Point& x, double scale);

}  // namespace fraclab::detail
