#pragma once

#include <map>
#include <optional>

#include "fbp/geometry.hpp"
#include "fbp/types.hpp"

namespace fbp {

/// Robin data d_n(phi) + omega*phi = g + omega*h on one fixed-boundary tag.
/// The omega -> infinity limit (strong Dirichlet phi = h) is a distinguished
/// case, not a large penalty number.
struct RobinData {
  enum class Kind { Neumann, Robin, Dirichlet };
  Kind kind = Kind::Neumann;
  double omega = 0.0;      // used for Kind::Robin only
  ScalarField g;           // flux datum, ignored for Dirichlet
  ScalarField h;           // Dirichlet datum, ignored for Neumann

  static RobinData neumann(ScalarField g_fn);
  static RobinData robin(double omega, ScalarField g_fn, ScalarField h_fn);
  static RobinData dirichlet(ScalarField h_fn);
};

/// Free-surface closure: either phi = h on Gamma_F, or the Bernoulli
/// condition a*|grad phi|^2 + b*eta + c = 0.
struct FreeSurfaceCondition {
  enum class Kind { Dirichlet, Bernoulli };
  Kind kind = Kind::Dirichlet;
  ScalarField h;                                  // Dirichlet datum
  std::optional<std::function<Vec2(double, double)>> grad_h;  // analytic, if known
  double a = 0.0, b = 0.0, c = 0.0;               // Bernoulli constants

  static FreeSurfaceCondition dirichlet(
      ScalarField h_fn,
      std::optional<std::function<Vec2(double, double)>> grad = std::nullopt);
  static FreeSurfaceCondition bernoulli(double a, double b, double c);
};

/// a = F^2/2, b = 1, c = -(F^2/2 + 1), so the uniform stream
/// |grad phi| = 1, eta = 1 annihilates the residual.
FreeSurfaceCondition bernoulli_from_froude(double froude);

struct ProblemData {
  ScalarField f;  // volumetric source, -laplace(phi) = f
  std::map<BoundaryTag, RobinData> robin;  // GammaL, GammaR, GammaB
  FreeSurfaceCondition surface;

  const RobinData& boundary(BoundaryTag tag) const;
};

/// Pointwise residual density of the free-surface condition:
/// Bernoulli: a*|grad_phi|^2 + b*eta + c; Dirichlet: phi - h_val.
double surface_residual_density(const FreeSurfaceCondition& cond,
                                const Vec2& grad_phi, double eta, double phi,
                                double h_val);

}  // namespace fbp
