#pragma once

#include <vector>

#include "fbp/types.hpp"

namespace fbp {

/// Discrete free surface y = eta(x) on ordered stations, with derived
/// geometry. Slopes use second-order stencils (central interior, one-sided at
/// the ends); curvature differences the normalized slope eta_x/sqrt(1+eta_x^2)
/// with the same stencils.
struct FreeSurface {
  Vec stations;    // strictly increasing x
  Vec eta;         // elevation per station
  Vec eta_x;       // slope
  Vec kappa;       // signed curvature
  Vec arc_weight;  // sqrt(1 + eta_x^2)
  std::vector<Vec2> normal;   // unit outward (upward) normal
  std::vector<Vec2> tangent;  // unit tangent, increasing x

  int size() const { return static_cast<int>(stations.size()); }

  /// Trapezoid weight of station i in the x-variable.
  double trapezoid_weight(int i) const;
};

/// Derivative of nodal values with respect to x on (possibly nonuniform)
/// stations: 3-point second-order stencils, one-sided at the two ends.
Vec three_point_derivative(const Vec& x, const Vec& f);

FreeSurface surface_geometry(const Vec& stations, const Vec& eta);

/// 2*kappa*|grad_phi|^2 per station: the closed form of the normal derivative
/// of the speed squared, valid when the surface carries the homogeneous
/// Neumann condition.
Vec normal_derivative_speed_squared(const FreeSurface& fs,
                                    const std::vector<Vec2>& grad_phi);

/// delta_eta = arc_weight * (delta_theta . n) stationwise, and its inverse.
Vec measure_to_x(const FreeSurface& fs, const Vec& delta_theta_n);
Vec measure_from_x(const FreeSurface& fs, const Vec& delta_eta);

/// Tangential (surface-intrinsic) gradient of a nodal trace: d/ds of the
/// trace times the unit tangent, with d/ds = (1/arc_weight) d/dx.
std::vector<Vec2> tangential_gradient(const FreeSurface& fs, const Vec& values);

/// Scalar d/ds of a nodal trace along the surface (tangential derivative
/// magnitude with sign along the tangent).
Vec trace_arc_derivative(const FreeSurface& fs, const Vec& values);

}  // namespace fbp
