#pragma once

#include <functional>
#include <vector>

#include "fraclab/fields.hpp"
#include "fraclab/quadrature.hpp"

namespace fraclab {

/// Integral of F(omega) over the unit sphere S^{dim-1} (dim = 1: F(e) + F(-e)).
/// Polar coordinates are taken about `axis` (zero vector: e_1). Each entry of
/// `cos_breaks` is a value of cos(angle to axis) where F may have a kink; the
/// polar integration splits there.
QuadResult sphere_integral(int dim, const std::function<double(const Point&)>& F, const Point& axis,
                           const QuadOptions& opt, const std::vector<double>& cos_breaks = {});

/// Unit vector along v, or e_1 when v is (numerically) zero.
Point unit_or_e1(const Point& v);

}  // namespace fraclab
