#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace fraclab {

/// A point of R^N, N <= 3; coordinates beyond N stay zero.
using Point = std::array<double, 3>;

inline Point operator+(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Point operator-(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Point operator*(double c, const Point& a) { return {c * a[0], c * a[1], c * a[2]}; }
inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// A function R^N -> R with the metadata the quadratures rely on.
struct ScalarField {
    std::function<double(const Point&)> evaluator;
    /// Zero outside the closed ball of this radius around support_center.
    double support_radius = kUnbounded;
    Point support_center{};
    /// Certified bound |g(y)| <= decay_constant * <y>^{-decay_exponent};
    /// negative exponents describe growth. Ignored for compact support.
    bool decay_certified = false;
    double decay_exponent = 0.0;
    double decay_constant = 1.0;
    /// Points where the field is not smooth; quadratures split there.
    std::vector<Point> singular_points;

    double operator()(const Point& x) const { return evaluator(x); }
    bool compact() const { return std::isfinite(support_radius); }

    static ScalarField zero();
    static ScalarField constant(double c);
    static ScalarField compactly_supported(std::function<double(const Point&)> f, const Point& center, double radius);
    static ScalarField decaying(std::function<double(const Point&)> f, double exponent, double constant);

    /// Samples the field on a shell just outside the support ball; throws
    /// DomainError if a nonzero value is found.
    void check_support(int dim) const;
};

/// Smooth cutoff: 1 on the inner ball, 0 outside the outer ball.
struct CutoffSpec {
    double inner_radius = 1.0;
    double outer_radius = 2.0;
    Point center{};

    void validate() const;
    double operator()(const Point& x) const;
    ScalarField field() const;
};

/// Smooth step S on [0, 1] with S(0) = 0, S(1) = 1 and all derivatives vanishing at both ends.
double smooth_step(double tau);
double smooth_step_derivative(double tau);

/// A radial function g(r) for r > 0 with metadata for the radial quadratures.
struct RadialFunction {
    std::function<double(double)> value;
    std::function<double(double)> derivative;  // optional
    double support_end = kUnbounded;            // g = 0 for r > support_end
    double decay_exponent = 0.0;                // |g(r)| <= decay_constant r^{-decay_exponent} for r >= 1
    double decay_constant = 1.0;
    std::vector<double> singular_radii;
    /// Jump discontinuities (radius, g(r+) - g(r-)); `derivative` is then the
    /// derivative away from the jumps.
    std::vector<std::pair<double, double>> jumps;

    double operator()(double r) const { return value(r); }
    bool compact() const { return std::isfinite(support_end); }
};

enum class Interpolation { linear_log, cubic };

/// Radial function sampled on strictly increasing positive nodes.
class RadialProfile {
public:
    RadialProfile() = default;
    /// Beyond the last node the profile continues as v_last (r / r_last)^{-outer_decay};
    /// outer_decay = +inf means zero outside.
    RadialProfile(std::vector<double> nodes, std::vector<double> values, int dim, Interpolation interp,
                  double outer_decay);

    double operator()(double r) const;
    double derivative(double r) const;

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& values() const { return values_; }
    int dim() const { return dim_; }
    Interpolation interpolation() const { return interp_; }
    double outer_decay() const { return outer_decay_; }

    RadialFunction as_function() const;

private:
    std::vector<double> nodes_;
    std::vector<double> values_;
    int dim_ = 1;
    Interpolation interp_ = Interpolation::cubic;
    double outer_decay_ = kUnbounded;
    // natural spline on the even extension (-r_n..-r_1, r_1..r_n)
    std::vector<double> ext_x_, ext_y_, ext_m_;
};

}  // namespace fraclab
