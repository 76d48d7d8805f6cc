#include "fbp/surface.hpp"

#include <cmath>

namespace fbp {

double FreeSurface::trapezoid_weight(int i) const {
  const int n = size();
  if (i == 0) return 0.5 * (stations[1] - stations[0]);
  if (i == n - 1) return 0.5 * (stations[n - 1] - stations[n - 2]);
  return 0.5 * (stations[i + 1] - stations[i - 1]);
}

Vec three_point_derivative(const Vec& x, const Vec& f) {
  const int n = static_cast<int>(x.size());
  if (n < 3) throw TooFewStations("need at least 3 stations for derivatives");
  if (f.size() != n) throw DimensionMismatch("stations/values size mismatch");

  // Derivative of the quadratic through (x0,f0),(x1,f1),(x2,f2) at xe.
  auto quad = [](double x0, double x1, double x2, double f0, double f1,
                 double f2, double xe) {
    const double w0 = (2 * xe - x1 - x2) / ((x0 - x1) * (x0 - x2));
    const double w1 = (2 * xe - x0 - x2) / ((x1 - x0) * (x1 - x2));
    const double w2 = (2 * xe - x0 - x1) / ((x2 - x0) * (x2 - x1));
    return w0 * f0 + w1 * f1 + w2 * f2;
  };

  Vec d(n);
  d[0] = quad(x[0], x[1], x[2], f[0], f[1], f[2], x[0]);
  for (int i = 1; i < n - 1; ++i)
    d[i] = quad(x[i - 1], x[i], x[i + 1], f[i - 1], f[i], f[i + 1], x[i]);
  d[n - 1] = quad(x[n - 3], x[n - 2], x[n - 1], f[n - 3], f[n - 2], f[n - 1],
                  x[n - 1]);
  return d;
}

FreeSurface surface_geometry(const Vec& stations, const Vec& eta) {
  const int n = static_cast<int>(stations.size());
  if (n < 3) throw TooFewStations("surface geometry needs >= 3 stations");
  if (eta.size() != n) throw DimensionMismatch("stations/eta size mismatch");
  for (int i = 1; i < n; ++i)
    if (!(stations[i] > stations[i - 1]))
      throw InvalidParams("stations must be strictly increasing");

  FreeSurface fs;
  fs.stations = stations;
  fs.eta = eta;
  fs.eta_x = three_point_derivative(stations, eta);

  Vec slope_norm(n);
  fs.arc_weight.resize(n);
  fs.normal.resize(n);
  fs.tangent.resize(n);
  for (int i = 0; i < n; ++i) {
    const double s = fs.eta_x[i];
    const double w = std::sqrt(1.0 + s * s);
    fs.arc_weight[i] = w;
    slope_norm[i] = s / w;
    fs.normal[i] = Vec2(-s, 1.0) / w;
    fs.tangent[i] = Vec2(1.0, s) / w;
  }
  fs.kappa = three_point_derivative(stations, slope_norm);
  return fs;
}

Vec normal_derivative_speed_squared(const FreeSurface& fs,
                                    const std::vector<Vec2>& grad_phi) {
  if (static_cast<int>(grad_phi.size()) != fs.size())
    throw DimensionMismatch("grad_phi size does not match stations");
  Vec out(fs.size());
  for (int i = 0; i < fs.size(); ++i)
    out[i] = 2.0 * fs.kappa[i] * grad_phi[i].squaredNorm();
  return out;
}

Vec measure_to_x(const FreeSurface& fs, const Vec& delta_theta_n) {
  if (delta_theta_n.size() != fs.size())
    throw DimensionMismatch("field size does not match stations");
  return fs.arc_weight.cwiseProduct(delta_theta_n);
}

Vec measure_from_x(const FreeSurface& fs, const Vec& delta_eta) {
  if (delta_eta.size() != fs.size())
    throw DimensionMismatch("field size does not match stations");
  return delta_eta.cwiseQuotient(fs.arc_weight);
}

Vec trace_arc_derivative(const FreeSurface& fs, const Vec& values) {
  return three_point_derivative(fs.stations, values)
      .cwiseQuotient(fs.arc_weight);
}

std::vector<Vec2> tangential_gradient(const FreeSurface& fs,
                                      const Vec& values) {
  const Vec ds = trace_arc_derivative(fs, values);
  std::vector<Vec2> out(fs.size());
  for (int i = 0; i < fs.size(); ++i) out[i] = ds[i] * fs.tangent[i];
  return out;
}

}  // namespace fbp
