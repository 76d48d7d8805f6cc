#include "fbp/newton.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "fbp/linsolve.hpp"

namespace fbp {

const char* status_name(NewtonStatus status) {
  switch (status) {
    case NewtonStatus::Converged: return "Converged";
    case NewtonStatus::MaxIters: return "MaxIters";
    case NewtonStatus::AbortSurfacePenetration: return "AbortSurfacePenetration";
    case NewtonStatus::AbortSingular: return "AbortSingular";
  }
  return "?";
}

SolutionField presolve_phi(const ProblemData& problem, const Mesh& mesh) {
  SpMat matrix;
  Vec rhs;
  assemble_fixed_domain(mesh, problem, matrix, rhs);
  return lu_solve(matrix, rhs);
}

Vec transfer_field(const Mesh& from, const Vec& phi, const Mesh& to) {
  if (from.n_x != to.n_x || from.n_y != to.n_y)
    throw MeshFieldMismatch("transfer_field requires identical topology");
  if (phi.size() != from.node_count())
    throw MeshFieldMismatch("phi size does not match node count");

  Vec out(to.node_count());
  const int rows = from.n_y + 1;
  for (int i = 0; i <= from.n_x; ++i) {
    for (int j = 0; j < rows; ++j) {
      const double y = to.nodes[to.node_id(i, j)].y();
      // Containing segment of the old column, clamped so the end segments
      // extend linearly beyond the old bed/surface.
      int k = 0;
      while (k < rows - 2 && from.nodes[from.node_id(i, k + 1)].y() < y) ++k;
      const double y0 = from.nodes[from.node_id(i, k)].y();
      const double y1 = from.nodes[from.node_id(i, k + 1)].y();
      const double f0 = phi[from.node_id(i, k)];
      const double f1 = phi[from.node_id(i, k + 1)];
      out[to.node_id(i, j)] = f0 + (f1 - f0) * (y - y0) / (y1 - y0);
    }
  }
  return out;
}

namespace {

double dirichlet_trace_error(const Mesh& mesh, const ProblemData& problem,
                             const Vec& phi) {
  double err = 0.0;
  for (int i = 0; i <= mesh.n_x; ++i) {
    const int sn = mesh.surface_node(i);
    const Vec2& p = mesh.nodes[sn];
    err = std::max(err, std::abs(phi[sn] - problem.surface.h(p.x(), p.y())));
  }
  return err;
}

double exact_surface_error(const Mesh& mesh, const Profile& exact) {
  double err = 0.0;
  for (int i = 0; i <= mesh.n_x; ++i)
    err = std::max(err, std::abs(mesh.nodes[mesh.surface_node(i)].y() -
                                 exact(mesh.stations[i])));
  return err;
}

}  // namespace

NewtonResult newton_solve(const ProblemData& problem, const Mesh& mesh0,
                          const FreeSurface& fs0, const NewtonConfig& config) {
  if (!(config.tol_residual > 0.0) || config.max_iters < 1 ||
      !(config.relaxation > 0.0) || config.relaxation > 1.0)
    throw InvalidParams("newton config: tol > 0, max_iters >= 1, relaxation in (0,1]");

  const bool dirichlet =
      problem.surface.kind == FreeSurfaceCondition::Kind::Dirichlet;

  NewtonResult result;
  NewtonState& state = result.state;
  state.mesh = mesh0;
  state.fs = fs0;
  state.phi = config.initial_phi_policy == NewtonConfig::InitialPhi::Presolve
                  ? presolve_phi(problem, mesh0)
                  : Vec::Zero(mesh0.node_count());

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };

  for (int k = 0;; ++k) {
    state.k = k;
    const ResidualPair res =
        assemble_residuals(state.mesh, problem, state.phi, state.fs);

    ConvergenceRecord rec;
    rec.k = k;
    rec.r1_norm = res.r1_inf();
    rec.r2_norm = res.r2_inf();
    if (dirichlet)
      rec.dirichlet_err = dirichlet_trace_error(state.mesh, problem, state.phi);
    if (config.exact_surface)
      rec.surface_err = exact_surface_error(state.mesh, *config.exact_surface);

    if (res.combined_inf() <= config.tol_residual) {
      rec.wall_time = elapsed();
      state.history.push_back(rec);
      result.status = NewtonStatus::Converged;
      return result;
    }
    if (k == config.max_iters) {
      rec.wall_time = elapsed();
      state.history.push_back(rec);
      result.status = NewtonStatus::MaxIters;
      result.message = "residual tolerance not reached";
      return result;
    }

    Vec delta;
    try {
      const CoupledSystem sys =
          assemble_jacobian(state.mesh, problem, state.phi, state.fs);
      delta = lu_solve(sys.matrix, sys.rhs);
    } catch (const SingularMatrix& e) {
      rec.wall_time = elapsed();
      state.history.push_back(rec);
      result.status = NewtonStatus::AbortSingular;
      result.message = e.what();
      return result;
    }

    const Vec dphi = config.relaxation * delta.head(state.mesh.node_count());
    const Vec deta = config.relaxation * delta.tail(state.fs.size());
    if (!dirichlet) rec.dirichlet_err = dphi.norm();
    if (!config.exact_surface) rec.surface_err = deta.norm();

    const Vec phi_updated = state.phi + dphi;
    const Vec new_eta = state.fs.eta + deta;
    Mesh new_mesh;
    try {
      new_mesh = update_surface(state.mesh, new_eta);
    } catch (const SurfacePenetratesBed& e) {
      rec.wall_time = elapsed();
      state.history.push_back(rec);
      result.status = NewtonStatus::AbortSurfacePenetration;
      result.message = e.what();
      return result;
    }

    state.phi = transfer_field(state.mesh, phi_updated, new_mesh);
    state.mesh = std::move(new_mesh);
    state.fs = surface_geometry(state.mesh.stations, new_eta);
    rec.wall_time = elapsed();
    state.history.push_back(rec);
  }
}

double estimate_order(const std::vector<ConvergenceRecord>& history) {
  std::vector<double> e;
  for (const auto& rec : history)
    if (rec.surface_err > 0.0) e.push_back(rec.surface_err);
  if (e.size() < 4)
    throw InsufficientHistory("need at least 4 positive surface errors");

  const double threshold = 100.0 * e.back();
  std::size_t plateau = e.size();
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] < threshold) {
      plateau = k;
      break;
    }
  }

  // Pairs (log e_k, log e_{k+1}) with both members before the plateau.
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k + 1 < plateau; ++k) {
    xs.push_back(std::log(e[k]));
    ys.push_back(std::log(e[k + 1]));
  }
  if (xs.size() < 2)
    throw InsufficientHistory("not enough pre-plateau history to fit an order");

  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fbp
