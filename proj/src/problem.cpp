#include "fbp/problem.hpp"

namespace fbp {

RobinData RobinData::neumann(ScalarField g_fn) {
  RobinData r;
  r.kind = Kind::Neumann;
  r.g = std::move(g_fn);
  return r;
}

RobinData RobinData::robin(double omega, ScalarField g_fn, ScalarField h_fn) {
  if (!(omega > 0.0))
    throw InvalidParams("Robin coefficient must be positive; use neumann()");
  RobinData r;
  r.kind = Kind::Robin;
  r.omega = omega;
  r.g = std::move(g_fn);
  r.h = std::move(h_fn);
  return r;
}

RobinData RobinData::dirichlet(ScalarField h_fn) {
  RobinData r;
  r.kind = Kind::Dirichlet;
  r.h = std::move(h_fn);
  return r;
}

FreeSurfaceCondition FreeSurfaceCondition::dirichlet(
    ScalarField h_fn, std::optional<std::function<Vec2(double, double)>> grad) {
  FreeSurfaceCondition c;
  c.kind = Kind::Dirichlet;
  c.h = std::move(h_fn);
  c.grad_h = std::move(grad);
  return c;
}

FreeSurfaceCondition FreeSurfaceCondition::bernoulli(double a, double b,
                                                     double c) {
  if (a == 0.0)
    throw SingularSurfaceBlock(
        "Bernoulli condition with a = 0 makes the surface equation singular");
  FreeSurfaceCondition fc;
  fc.kind = Kind::Bernoulli;
  fc.a = a;
  fc.b = b;
  fc.c = c;
  return fc;
}

FreeSurfaceCondition bernoulli_from_froude(double froude) {
  if (!(froude > 0.0)) throw NonpositiveFroude("Froude number must be > 0");
  const double half_f2 = 0.5 * froude * froude;
  return FreeSurfaceCondition::bernoulli(half_f2, 1.0, -(half_f2 + 1.0));
}

const RobinData& ProblemData::boundary(BoundaryTag tag) const {
  auto it = robin.find(tag);
  if (it == robin.end())
    throw InvalidParams(std::string("no boundary data for ") + tag_name(tag));
  return it->second;
}

double surface_residual_density(const FreeSurfaceCondition& cond,
                                const Vec2& grad_phi, double eta, double phi,
                                double h_val) {
  if (cond.kind == FreeSurfaceCondition::Kind::Bernoulli)
    return cond.a * grad_phi.squaredNorm() + cond.b * eta + cond.c;
  return phi - h_val;
}

}  // namespace fbp
