#include "fraclab/fields.hpp"

#include <algorithm>
#include <string>

#include "fraclab/errors.hpp"
#include "fraclab/special_functions.hpp"

namespace fraclab {

ScalarField ScalarField::zero() { return constant(0.0); }

ScalarField ScalarField::constant(double c) {
    ScalarField f;
    f.evaluator = [c](const Point&) { return c; };
    f.decay_certified = true;
    f.decay_exponent = 0.0;
    f.decay_constant = std::fabs(c);
    if (c == 0.0) f.support_radius = 0.0;
    return f;
}

ScalarField ScalarField::compactly_supported(std::function<double(const Point&)> fn, const Point& center,
                                             double radius) {
    if (!(radius >= 0.0)) throw DomainError("compactly_supported: radius must be >= 0");
    ScalarField f;
    f.evaluator = std::move(fn);
    f.support_center = center;
    f.support_radius = radius;
    f.decay_certified = true;
    f.decay_exponent = kUnbounded;
    return f;
}

ScalarField ScalarField::decaying(std::function<double(const Point&)> fn, double exponent, double constant) {
    ScalarField f;
    f.evaluator = std::move(fn);
    f.decay_certified = true;
    f.decay_exponent = exponent;
    f.decay_constant = constant;
    return f;
}

void ScalarField::check_support(int dim) const {
    if (!compact()) return;
    const double r = support_radius * (1.0 + 1e-9) + 1e-12;
    const int n = dim == 1 ? 2 : (dim == 2 ? 64 : 256);
    for (int i = 0; i < n; ++i) {
        Point u{};
        if (dim == 1) {
            u[0] = i % 2 == 0 ? 1.0 : -1.0;
        } else if (dim == 2) {
            const double th = 2.0 * kPi * i / n;
            u = {std::cos(th), std::sin(th), 0.0};
        } else {
            // Fibonacci sphere
            const double z = 1.0 - (2.0 * i + 1.0) / n;
            const double rho = std::sqrt(1.0 - z * z);
            const double th = i * kPi * (3.0 - std::sqrt(5.0));
            u = {rho * std::cos(th), rho * std::sin(th), z};
        }
        for (double scale : {1.0, 1.5, 3.0}) {
            if (evaluator(support_center + (r * scale) * u) != 0.0)
                throw DomainError("ScalarField: nonzero value outside declared support radius " +
                                  std::to_string(support_radius));
        }
    }
}

double smooth_step(double tau) {
    if (tau <= 0.0) return 0.0;
    if (tau >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / tau);
    const double b = std::exp(-1.0 / (1.0 - tau));
    return a / (a + b);
}

double smooth_step_derivative(double tau) {
    if (tau <= 0.0 || tau >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / tau);
    const double b = std::exp(-1.0 / (1.0 - tau));
    const double u = 1.0 - tau;
    return a * b * (1.0 / (tau * tau) + 1.0 / (u * u)) / ((a + b) * (a + b));
}

void CutoffSpec::validate() const {
    if (!(inner_radius > 0.0) || !(outer_radius > inner_radius))
        throw DomainError("CutoffSpec: requires 0 < inner_radius < outer_radius");
}

double CutoffSpec::operator()(const Point& x) const {
    const double r = norm(x - center);
    return smooth_step((outer_radius - r) / (outer_radius - inner_radius));
}

ScalarField CutoffSpec::field() const {
    validate();
    const CutoffSpec copy = *this;
    return ScalarField::compactly_supported([copy](const Point& x) { return copy(x); }, center, outer_radius);
}

// ------------------------------------------------------------ RadialProfile

RadialProfile::RadialProfile(std::vector<double> nodes, std::vector<double> values, int dim, Interpolation interp,
                             double outer_decay)
    : nodes_(std::move(nodes)), values_(std::move(values)), dim_(dim), interp_(interp), outer_decay_(outer_decay) {
    if (nodes_.size() != values_.size()) throw DataError("RadialProfile: nodes and values differ in length");
    if (nodes_.size() < 2) throw DataError("RadialProfile: needs at least two nodes");
    if (!(nodes_.front() > 0.0)) throw DataError("RadialProfile: nodes must be positive");
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        if (!(nodes_[i] > nodes_[i - 1])) throw DataError("RadialProfile: nodes must be strictly increasing");
    for (double v : values_)
        if (!std::isfinite(v)) throw DataError("RadialProfile: values must be finite");
    if (dim < 1) throw DomainError("RadialProfile: dim must be >= 1");
    if (!(outer_decay_ > 0.0)) throw DomainError("RadialProfile: outer_decay must be > 0");

    if (interp_ == Interpolation::cubic) {
        const std::size_t n = nodes_.size();
        ext_x_.resize(2 * n);
        ext_y_.resize(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            ext_x_[n - 1 - i] = -nodes_[i];
            ext_y_[n - 1 - i] = values_[i];
            ext_x_[n + i] = nodes_[i];
            ext_y_[n + i] = values_[i];
        }
        const std::size_t m = ext_x_.size();
        ext_m_.assign(m, 0.0);
        // natural spline: tridiagonal system for interior second derivatives
        std::vector<double> c(m, 0.0), d(m, 0.0);
        for (std::size_t i = 1; i + 1 < m; ++i) {
            const double h0 = ext_x_[i] - ext_x_[i - 1];
            const double h1 = ext_x_[i + 1] - ext_x_[i];
            const double rhs = 6.0 * ((ext_y_[i + 1] - ext_y_[i]) / h1 - (ext_y_[i] - ext_y_[i - 1]) / h0);
            const double diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
            c[i] = h1 / diag;
            d[i] = (rhs - h0 * d[i - 1]) / diag;
        }
        for (std::size_t i = m - 2; i >= 1; --i) ext_m_[i] = d[i] - c[i] * ext_m_[i + 1];
    }
}

double RadialProfile::operator()(double r) const {
    if (r < 0.0) r = -r;
    if (r > nodes_.back()) {
        if (!std::isfinite(outer_decay_) || values_.back() == 0.0) return 0.0;
        return values_.back() * std::pow(r / nodes_.back(), -outer_decay_);
    }
    if (interp_ == Interpolation::linear_log) {
        if (r <= nodes_.front()) return values_.front();
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
        const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
        if (i + 1 >= nodes_.size()) return values_.back();
        const double w = std::log(r / nodes_[i]) / std::log(nodes_[i + 1] / nodes_[i]);
        return (1.0 - w) * values_[i] + w * values_[i + 1];
    }
    const auto it = std::upper_bound(ext_x_.begin(), ext_x_.end(), r);
    std::size_t i = static_cast<std::size_t>(it - ext_x_.begin());
    if (i == 0) i = 1;
    if (i >= ext_x_.size()) i = ext_x_.size() - 1;
    const double x0 = ext_x_[i - 1], x1 = ext_x_[i], h = x1 - x0;
    const double a = (x1 - r) / h, b = (r - x0) / h;
    return a * ext_y_[i - 1] + b * ext_y_[i] + ((a * a * a - a) * ext_m_[i - 1] + (b * b * b - b) * ext_m_[i]) * h * h / 6.0;
}

double RadialProfile::derivative(double r) const {
    const double sgn = r < 0.0 ? -1.0 : 1.0;
    if (r < 0.0) r = -r;
    if (r > nodes_.back()) {
        if (!std::isfinite(outer_decay_) || values_.back() == 0.0) return 0.0;
        return sgn * -outer_decay_ / r * values_.back() * std::pow(r / nodes_.back(), -outer_decay_);
    }
    if (interp_ == Interpolation::linear_log) {
        if (r <= nodes_.front()) return 0.0;
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
        const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
        if (i + 1 >= nodes_.size()) return 0.0;
        return sgn * (values_[i + 1] - values_[i]) / std::log(nodes_[i + 1] / nodes_[i]) / r;
    }
    const auto it = std::upper_bound(ext_x_.begin(), ext_x_.end(), r);
    std::size_t i = static_cast<std::size_t>(it - ext_x_.begin());
    if (i == 0) i = 1;
    if (i >= ext_x_.size()) i = ext_x_.size() - 1;
    const double x0 = ext_x_[i - 1], x1 = ext_x_[i], h = x1 - x0;
    const double a = (x1 - r) / h, b = (r - x0) / h;
    return sgn * ((ext_y_[i] - ext_y_[i - 1]) / h + ((1.0 - 3.0 * a * a) * ext_m_[i - 1] + (3.0 * b * b - 1.0) * ext_m_[i]) * h / 6.0);
}

RadialFunction RadialProfile::as_function() const {
    RadialFunction g;
    const RadialProfile copy = *this;
    g.value = [copy](double r) { return copy(r); };
    g.derivative = [copy](double r) { return copy.derivative(r); };
    if (!std::isfinite(outer_decay_) || values_.back() == 0.0) {
        g.support_end = nodes_.back();
        g.decay_exponent = kUnbounded;
    } else {
        g.decay_exponent = outer_decay_;
        double peak = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            peak = std::max(peak, std::fabs(values_[i]) * std::pow(std::max(1.0, nodes_[i]), outer_decay_));
        g.decay_constant = peak;
    }
    g.singular_radii = nodes_;  // interpolant is only piecewise smooth
    return g;
}

}  // namespace fraclab
