#include "fbp/assembly.hpp"

#include <array>
#include <cmath>
#include <ostream>

namespace fbp {

namespace {

struct ElementGeometry {
  double area = 0.0;
  std::array<Vec2, 3> grad_lambda;  // constant P1 basis gradients
};

ElementGeometry element_geometry(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  const Vec2& p0 = mesh.nodes[tri[0]];
  const Vec2& p1 = mesh.nodes[tri[1]];
  const Vec2& p2 = mesh.nodes[tri[2]];
  ElementGeometry g;
  const double twice_area = (p1.x() - p0.x()) * (p2.y() - p0.y()) -
                            (p2.x() - p0.x()) * (p1.y() - p0.y());
  g.area = 0.5 * twice_area;
  g.grad_lambda[0] = Vec2(p1.y() - p2.y(), p2.x() - p1.x()) / twice_area;
  g.grad_lambda[1] = Vec2(p2.y() - p0.y(), p0.x() - p2.x()) / twice_area;
  g.grad_lambda[2] = Vec2(p0.y() - p1.y(), p1.x() - p0.x()) / twice_area;
  return g;
}

bool is_strong_dirichlet(const ProblemData& problem, BoundaryTag tag) {
  if (tag == BoundaryTag::GammaF) return false;
  return problem.boundary(tag).kind == RobinData::Kind::Dirichlet;
}

// Nodes carrying a strong Dirichlet constraint, with corner priority.
std::vector<int> strong_dirichlet_nodes(const Mesh& mesh,
                                        const ProblemData& problem) {
  std::vector<int> out;
  for (BoundaryTag tag :
       {BoundaryTag::GammaL, BoundaryTag::GammaR, BoundaryTag::GammaB}) {
    if (!is_strong_dirichlet(problem, tag)) continue;
    for (int n : owned_boundary_nodes(mesh, tag)) out.push_back(n);
  }
  return out;
}

double domain_scale(const Mesh& mesh) {
  const double dx = mesh.stations[mesh.n_x] - mesh.stations[0];
  double ymin = mesh.bed_values.minCoeff();
  double ymax = mesh.surface_eta().maxCoeff();
  return std::max(dx, ymax - ymin);
}

// Normal derivative of the surface Dirichlet datum at station i: analytic
// gradient when the preset provides one, otherwise central FD along the
// discrete normal with step 1e-6 * domain scale.
double surface_dnh(const FreeSurfaceCondition& cond, const FreeSurface& fs,
                   int i, double fd_step) {
  const double x = fs.stations[i];
  const double y = fs.eta[i];
  const Vec2& n = fs.normal[i];
  if (cond.grad_h) return n.dot((*cond.grad_h)(x, y));
  const double hp = cond.h(x + fd_step * n.x(), y + fd_step * n.y());
  const double hm = cond.h(x - fd_step * n.x(), y - fd_step * n.y());
  return (hp - hm) / (2.0 * fd_step);
}

// Stiffness + Robin mass, no constraint rows applied.
SpMat assemble_a11(const Mesh& mesh, const ProblemData& problem) {
  std::vector<Triplet> trip;
  trip.reserve(mesh.triangles.size() * 9);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto g = element_geometry(mesh, t);
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l)
        trip.emplace_back(tri[k], tri[l],
                          g.area * g.grad_lambda[k].dot(g.grad_lambda[l]));
  }
  for (const auto& e : mesh.boundary_edges) {
    if (e.tag == BoundaryTag::GammaF) continue;
    const RobinData& bc = problem.boundary(e.tag);
    if (bc.kind != RobinData::Kind::Robin) continue;
    const double len = (mesh.nodes[e.b] - mesh.nodes[e.a]).norm();
    trip.emplace_back(e.a, e.a, 0.5 * len * bc.omega);
    trip.emplace_back(e.b, e.b, 0.5 * len * bc.omega);
  }
  SpMat a11(mesh.node_count(), mesh.node_count());
  a11.setFromTriplets(trip.begin(), trip.end());
  return a11;
}

}  // namespace

std::vector<std::vector<int>> node_triangle_adjacency(const Mesh& mesh) {
  std::vector<std::vector<int>> adj(mesh.node_count());
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t)
    for (int k = 0; k < 3; ++k) adj[mesh.triangles[t][k]].push_back(t);
  return adj;
}

std::vector<Vec2> recover_node_gradients(const Mesh& mesh, const Vec& phi) {
  if (phi.size() != mesh.node_count())
    throw MeshFieldMismatch("phi size does not match node count");
  std::vector<Vec2> grad(mesh.node_count(), Vec2::Zero());
  Vec weight = Vec::Zero(mesh.node_count());
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto g = element_geometry(mesh, t);
    const auto& tri = mesh.triangles[t];
    Vec2 gt = Vec2::Zero();
    for (int k = 0; k < 3; ++k) gt += phi[tri[k]] * g.grad_lambda[k];
    for (int k = 0; k < 3; ++k) {
      grad[tri[k]] += g.area * gt;
      weight[tri[k]] += g.area;
    }
  }
  for (int n = 0; n < mesh.node_count(); ++n) grad[n] /= weight[n];
  return grad;
}

Vec assemble_r1(const Mesh& mesh, const ProblemData& problem, const Vec& phi) {
  if (phi.size() != mesh.node_count())
    throw MeshFieldMismatch("phi size does not match node count");

  Vec r = Vec::Zero(mesh.node_count());

  // Stiffness action and volumetric load (3-point vertex rule).
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto g = element_geometry(mesh, t);
    const auto& tri = mesh.triangles[t];
    Vec2 gt = Vec2::Zero();
    for (int k = 0; k < 3; ++k) gt += phi[tri[k]] * g.grad_lambda[k];
    for (int k = 0; k < 3; ++k) {
      const Vec2& p = mesh.nodes[tri[k]];
      r[tri[k]] += g.area * gt.dot(g.grad_lambda[k]);
      r[tri[k]] -= (g.area / 3.0) * problem.f(p.x(), p.y());
    }
  }

  // Robin/Neumann terms -(g + omega*h - omega*phi) on fixed tags, edge
  // trapezoid rule.
  for (const auto& e : mesh.boundary_edges) {
    if (e.tag == BoundaryTag::GammaF) continue;  // natural homogeneous Neumann
    const RobinData& bc = problem.boundary(e.tag);
    if (bc.kind == RobinData::Kind::Dirichlet) continue;
    const double len = (mesh.nodes[e.b] - mesh.nodes[e.a]).norm();
    for (int n : {e.a, e.b}) {
      const Vec2& p = mesh.nodes[n];
      double density = bc.g(p.x(), p.y());
      if (bc.kind == RobinData::Kind::Robin)
        density += bc.omega * (bc.h(p.x(), p.y()) - phi[n]);
      r[n] -= 0.5 * len * density;
    }
  }

  // Strong Dirichlet rows replaced by (phi - h).
  for (int n : strong_dirichlet_nodes(mesh, problem)) {
    const RobinData& bc = problem.boundary(node_tag(mesh, n));
    const Vec2& p = mesh.nodes[n];
    r[n] = phi[n] - bc.h(p.x(), p.y());
  }
  return r;
}

Vec assemble_r2(const Mesh& mesh, const ProblemData& problem, const Vec& phi,
                const FreeSurface& fs) {
  if (fs.size() != mesh.station_count())
    throw MeshFieldMismatch("surface stations do not match mesh");
  if (phi.size() != mesh.node_count())
    throw MeshFieldMismatch("phi size does not match node count");

  const bool bernoulli =
      problem.surface.kind == FreeSurfaceCondition::Kind::Bernoulli;
  std::vector<Vec2> grad;
  if (bernoulli) grad = recover_node_gradients(mesh, phi);

  Vec r2 = Vec::Zero(fs.size());
  for (int i = 0; i < fs.size(); ++i) {
    const int sn = mesh.surface_node(i);
    const double x = fs.stations[i];
    const double y = fs.eta[i];
    double density;
    if (bernoulli) {
      density = surface_residual_density(problem.surface, grad[sn], y,
                                         phi[sn], 0.0);
    } else {
      density = surface_residual_density(problem.surface, Vec2::Zero(), y,
                                         phi[sn], problem.surface.h(x, y));
    }
    // dGamma = arc_weight dx, trapezoid in x.
    r2[i] = fs.trapezoid_weight(i) * fs.arc_weight[i] * density;
  }
  r2[0] = 0.0;  // test space W vanishes at x_L
  return r2;
}

ResidualPair assemble_residuals(const Mesh& mesh, const ProblemData& problem,
                                const Vec& phi, const FreeSurface& fs) {
  return {assemble_r1(mesh, problem, phi), assemble_r2(mesh, problem, phi, fs)};
}

JacobianBlocks assemble_blocks(const Mesh& mesh, const ProblemData& problem,
                               const Vec& phi, const FreeSurface& fs) {
  if (fs.size() != mesh.station_count())
    throw MeshFieldMismatch("surface stations do not match mesh");
  if (phi.size() != mesh.node_count())
    throw MeshFieldMismatch("phi size does not match node count");
  const bool bernoulli =
      problem.surface.kind == FreeSurfaceCondition::Kind::Bernoulli;
  if (bernoulli && problem.surface.a == 0.0)
    throw SingularSurfaceBlock("Bernoulli block requires a != 0");

  const int n_phi = mesh.node_count();
  const int n_eta = fs.size();
  JacobianBlocks blocks;

  blocks.a11 = assemble_a11(mesh, problem);

  // (1,2): pre-divergence form of the shape derivative of R1, tested with the
  // surface-node hats and converted to delta_eta unknowns:
  //   sum over segments of (dv_i/dx) * int (d phi/ds)(1/arc) b_j dx
  // plus the diagonal -f(x_i, eta_i) * trapezoid weight.
  {
    Vec trace(n_eta);
    for (int i = 0; i < n_eta; ++i) trace[i] = phi[mesh.surface_node(i)];
    const Vec dphi_ds = trace_arc_derivative(fs, trace);
    std::vector<Triplet> trip;
    for (int k = 0; k + 1 < n_eta; ++k) {
      const int rows[2] = {mesh.surface_node(k), mesh.surface_node(k + 1)};
      const double sign[2] = {-1.0, 1.0};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const int j = k + b;
          const double density = dphi_ds[j] / fs.arc_weight[j];
          trip.emplace_back(rows[a], j, 0.5 * sign[a] * density);
        }
    }
    for (int i = 0; i < n_eta; ++i) {
      const double fv = problem.f(fs.stations[i], fs.eta[i]);
      if (fv != 0.0)
        trip.emplace_back(mesh.surface_node(i), i,
                          -fs.trapezoid_weight(i) * fv);
    }
    blocks.a12.resize(n_phi, n_eta);
    blocks.a12.setFromTriplets(trip.begin(), trip.end());
  }

  // (2,1) and (2,2): surface-condition linearization, stationwise densities
  // with trapezoid weights.
  {
    std::vector<Triplet> t21;
    std::vector<Triplet> t22;
    if (bernoulli) {
      const auto adjacency = node_triangle_adjacency(mesh);
      const auto grad = recover_node_gradients(mesh, phi);
      const double a = problem.surface.a;
      const double b = problem.surface.b;
      for (int i = 0; i < n_eta; ++i) {
        const int sn = mesh.surface_node(i);
        const double wt = fs.trapezoid_weight(i) * fs.arc_weight[i];
        // d/d(phi_n) of a*|G_i|^2 through the recovery operator.
        double total_area = 0.0;
        for (int t : adjacency[sn]) total_area += element_geometry(mesh, t).area;
        for (int t : adjacency[sn]) {
          const auto g = element_geometry(mesh, t);
          const auto& tri = mesh.triangles[t];
          const double w_t = g.area / total_area;
          for (int k = 0; k < 3; ++k) {
            const double coef =
                wt * 2.0 * a * grad[sn].dot(w_t * g.grad_lambda[k]);
            t21.emplace_back(i, tri[k], coef);
          }
        }
        const double ny = fs.normal[i].y();
        t22.emplace_back(i, i,
                         fs.trapezoid_weight(i) *
                             (2.0 * a * fs.kappa[i] * grad[sn].squaredNorm() +
                              b * ny));
      }
    } else {
      const double fd_step = 1e-6 * domain_scale(mesh);
      for (int i = 0; i < n_eta; ++i) {
        const double wt = fs.trapezoid_weight(i) * fs.arc_weight[i];
        t21.emplace_back(i, mesh.surface_node(i), wt);
        const double dnh = surface_dnh(problem.surface, fs, i, fd_step);
        t22.emplace_back(i, i, -fs.trapezoid_weight(i) * dnh);
      }
    }
    blocks.a21.resize(n_eta, n_phi);
    blocks.a21.setFromTriplets(t21.begin(), t21.end());
    blocks.a22.resize(n_eta, n_eta);
    blocks.a22.setFromTriplets(t22.begin(), t22.end());
  }

  return blocks;
}

CoupledSystem assemble_jacobian(const Mesh& mesh, const ProblemData& problem,
                                const Vec& phi, const FreeSurface& fs) {
  const JacobianBlocks blocks = assemble_blocks(mesh, problem, phi, fs);
  const ResidualPair res = assemble_residuals(mesh, problem, phi, fs);

  CoupledSystem sys;
  sys.n_phi = mesh.node_count();
  sys.n_eta = fs.size();
  const int n = sys.n_phi + sys.n_eta;

  std::vector<bool> constrained(n, false);
  for (int node : strong_dirichlet_nodes(mesh, problem))
    constrained[sys.phi_row(node)] = true;
  constrained[sys.eta_row(0)] = true;  // pinned station at x_L
  for (int r = 0; r < n; ++r)
    if (constrained[r]) sys.constrained_rows.push_back(r);

  std::vector<Triplet> trip;
  trip.reserve(blocks.a11.nonZeros() + blocks.a12.nonZeros() +
               blocks.a21.nonZeros() + blocks.a22.nonZeros() + n);
  auto add_block = [&](const SpMat& block, int row0, int col0) {
    for (int r = 0; r < block.outerSize(); ++r) {
      if (constrained[row0 + r]) continue;
      for (SpMat::InnerIterator it(block, r); it; ++it)
        trip.emplace_back(row0 + r, col0 + it.col(), it.value());
    }
  };
  add_block(blocks.a11, 0, 0);
  add_block(blocks.a12, 0, sys.n_phi);
  add_block(blocks.a21, sys.n_phi, 0);
  add_block(blocks.a22, sys.n_phi, sys.n_phi);
  for (int r : sys.constrained_rows) trip.emplace_back(r, r, 1.0);

  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(trip.begin(), trip.end());

  // rhs = -r throughout: at a strong Dirichlet row r1 holds (phi - h), so the
  // identity row reads delta_phi = h - phi; the pinned eta row reads 0.
  sys.rhs.resize(n);
  sys.rhs.head(sys.n_phi) = -res.r1;
  sys.rhs.tail(sys.n_eta) = -res.r2;
  return sys;
}

void assemble_fixed_domain(const Mesh& mesh, const ProblemData& problem,
                           SpMat& matrix, Vec& rhs) {
  // The (1,1) block with loads: phi rows only, surface left natural.
  const Vec zero = Vec::Zero(mesh.node_count());
  const Vec r1 = assemble_r1(mesh, problem, zero);
  const SpMat a11 = assemble_a11(mesh, problem);

  std::vector<bool> constrained(mesh.node_count(), false);
  for (int node : strong_dirichlet_nodes(mesh, problem))
    constrained[node] = true;

  std::vector<Triplet> trip;
  for (int r = 0; r < a11.outerSize(); ++r) {
    if (constrained[r]) {
      trip.emplace_back(r, r, 1.0);
      continue;
    }
    for (SpMat::InnerIterator it(a11, r); it; ++it)
      trip.emplace_back(r, it.col(), it.value());
  }
  matrix.resize(mesh.node_count(), mesh.node_count());
  matrix.setFromTriplets(trip.begin(), trip.end());
  rhs = -r1;
}

void write_system_dump(const CoupledSystem& system, std::ostream& os) {
  os.precision(17);
  for (int r = 0; r < system.matrix.outerSize(); ++r)
    for (SpMat::InnerIterator it(system.matrix, r); it; ++it)
      os << it.row() << " " << it.col() << " " << it.value() << "\n";
}

}  // namespace fbp
