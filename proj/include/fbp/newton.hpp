#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fbp/assembly.hpp"
#include "fbp/geometry.hpp"
#include "fbp/problem.hpp"
#include "fbp/surface.hpp"
#include "fbp/types.hpp"

namespace fbp {

/// Per-iteration diagnostics. For the Dirichlet surface condition,
/// dirichlet_err is ||phi - h||_inf on Gamma_F and surface_err is
/// ||eta - eta_exact||_inf when an exact surface is supplied (the
/// manufactured-solution convention); for Bernoulli both are the L2 norms of
/// the updates ||delta_phi||, ||delta_eta|| (no exact solution exists).
struct ConvergenceRecord {
  int k = 0;
  double dirichlet_err = 0.0;
  double surface_err = 0.0;
  double r1_norm = 0.0;
  double r2_norm = 0.0;
  double wall_time = 0.0;  // seconds since solve start
};

struct NewtonConfig {
  double tol_residual = 1e-12;  // combined infinity norm of (r1, r2)
  int max_iters = 30;
  double relaxation = 1.0;  // in (0, 1]
  enum class InitialPhi { Zero, Presolve };
  InitialPhi initial_phi_policy = InitialPhi::Presolve;
  /// Optional exact surface for error diagnostics (manufactured runs).
  std::optional<Profile> exact_surface;
};

struct NewtonState {
  int k = 0;
  Mesh mesh;
  FreeSurface fs;
  SolutionField phi;
  std::vector<ConvergenceRecord> history;
};

enum class NewtonStatus {
  Converged,
  MaxIters,
  AbortSurfacePenetration,
  AbortSingular,
};

const char* status_name(NewtonStatus status);

struct NewtonResult {
  NewtonState state;
  NewtonStatus status = NewtonStatus::MaxIters;
  std::string message;
};

/// Solve the fixed-domain problem (free surface as homogeneous Neumann) on
/// the current geometry, supplying the initial potential.
SolutionField presolve_phi(const ProblemData& problem, const Mesh& mesh);

/// Re-evaluate a nodal field after a vertical re-mesh: the piecewise-linear
/// function on `from` is sampled at the node positions of `to` (columnwise
/// linear interpolation in y, linearly extended past the surface/bed). This
/// keeps the potential fixed in space across surface updates, which is what
/// the shape linearization differentiates.
Vec transfer_field(const Mesh& from, const Vec& phi, const Mesh& to);

/// The coupled shape-Newton iteration: assemble residuals, check tolerance,
/// assemble the coupled Jacobian, solve for (delta_phi, delta_eta), update
/// the potential and the surface, re-mesh vertically, repeat.
NewtonResult newton_solve(const ProblemData& problem, const Mesh& mesh0,
                          const FreeSurface& fs0, const NewtonConfig& config);

/// Least-squares slope p of log e_{k+1} against log e_k over the pre-plateau
/// window of the surface-error history. The plateau starts at the first k
/// with e_k < 100 x the final stagnation level.
double estimate_order(const std::vector<ConvergenceRecord>& history);

}  // namespace fbp
