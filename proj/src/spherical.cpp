#include "fraclab/spherical.hpp"

#include <algorithm>
#include <cmath>

#include "fraclab/errors.hpp"
#include "fraclab/special_functions.hpp"

namespace fraclab {

namespace {

constexpr int kAzimuthStart = 8;
constexpr int kAzimuthMax = 512;

// Two unit vectors completing `a` to an orthonormal frame.
void complete_frame(const Point& a, Point& b, Point& c) {
    const Point helper = std::fabs(a[0]) < 0.9 ? Point{1, 0, 0} : Point{0, 1, 0};
    b = helper - dot(helper, a) * a;
    b = (1.0 / norm(b)) * b;
    c = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

Point unit_or_e1(const Point& v) {
    const double n = norm(v);
    if (!(n > 1e-300)) return {1.0, 0.0, 0.0};
    return (1.0 / n) * v;
}

QuadResult sphere_integral(int dim, const std::function<double(const Point&)>& F, const Point& axis,
                           const QuadOptions& opt, const std::vector<double>& cos_breaks) {
    if (dim < 1 || dim > 3) throw DomainError("sphere_integral: supports 1 <= dim <= 3");
    Point a = unit_or_e1(axis);
    if (dim == 1) {
        QuadResult r;
        r.value = F({1.0, 0.0, 0.0}) + F({-1.0, 0.0, 0.0});
        r.evals = 2;
        return r;
    }
    if (dim == 2) {
        a[2] = 0.0;
        a = unit_or_e1(a);
        const Point b{-a[1], a[0], 0.0};
        auto g = [&](double th) {
            const double ct = std::cos(th), st = std::sin(th);
            return F({ct * a[0] + st * b[0], ct * a[1] + st * b[1], 0.0});
        };
        std::vector<double> bp{kPi};
        for (double cb : cos_breaks) {
            if (cb <= -1.0 || cb >= 1.0) continue;
            const double th = std::acos(cb);
            bp.push_back(th);
            bp.push_back(2.0 * kPi - th);
        }
        return integrate(g, 0.0, 2.0 * kPi, opt, bp);
    }
    Point b, c;
    complete_frame(a, b, c);
    long evals = 0;
    double worst_azimuth = 0.0;
    auto ring = [&](double ct) {
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        auto at = [&](double phi) {
            const double cp = std::cos(phi), sp = std::sin(phi);
            return F(ct * a + (st * cp) * b + (st * sp) * c);
        };
        int n = kAzimuthStart;
        double sum = 0.0;
        for (int k = 0; k < n; ++k) sum += at(2.0 * kPi * k / n);
        double prev = 2.0 * kPi * sum / n;
        evals += n;
        for (;;) {
            for (int k = 0; k < n; ++k) sum += at(2.0 * kPi * (k + 0.5) / n);
            evals += n;
            n *= 2;
            const double cur = 2.0 * kPi * sum / n;
            const double diff = std::fabs(cur - prev);
            if (diff <= 0.1 * std::max(opt.abs_tol, opt.rel_tol * std::fabs(cur)) || n >= kAzimuthMax) {
                if (n >= kAzimuthMax) worst_azimuth = std::max(worst_azimuth, diff);
                return cur;
            }
            prev = cur;
        }
    };
    std::vector<double> bp;
    for (double cb : cos_breaks)
        if (cb > -1.0 && cb < 1.0) bp.push_back(cb);
    QuadResult r = integrate(ring, -1.0, 1.0, opt, bp);
    r.evals = evals;
    r.error += 2.0 * worst_azimuth;
    return r;
}

}  // namespace fraclab
