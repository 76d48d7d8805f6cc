#pragma once

#include <iosfwd>
#include <vector>

#include "fbp/geometry.hpp"
#include "fbp/problem.hpp"
#include "fbp/surface.hpp"
#include "fbp/types.hpp"

namespace fbp {

/// Nodal potential over all mesh nodes.
using SolutionField = Vec;

struct ResidualPair {
  Vec r1;  // over phi test functions, strong-Dirichlet rows hold (phi - h)
  Vec r2;  // over surface test functions, pinned station zeroed
  double r1_inf() const { return r1.size() ? r1.cwiseAbs().maxCoeff() : 0.0; }
  double r2_inf() const { return r2.size() ? r2.cwiseAbs().maxCoeff() : 0.0; }
  double r1_l2() const { return r1.norm(); }
  double r2_l2() const { return r2.norm(); }
  double combined_inf() const { return std::max(r1_inf(), r2_inf()); }
};

/// Sparse Newton system over the stacked unknown (delta_phi; delta_eta).
/// Constrained rows (strong Dirichlet nodes, pinned station at x_L) are
/// identity rows with the constraint value in rhs.
struct CoupledSystem {
  SpMat matrix;
  Vec rhs;
  int n_phi = 0;
  int n_eta = 0;
  std::vector<int> constrained_rows;

  int phi_row(int node) const { return node; }
  int eta_row(int station) const { return n_phi + station; }
};

/// Raw Jacobian blocks before constraint rows are applied, in the stacked
/// ordering: a11 (phi,phi), a12 (phi,eta), a21 (eta,phi), a22 (eta,eta).
struct JacobianBlocks {
  SpMat a11;
  SpMat a12;
  SpMat a21;
  SpMat a22;
};

/// Triangles adjacent to each node.
std::vector<std::vector<int>> node_triangle_adjacency(const Mesh& mesh);

/// Area-weighted average of the constant P1 element gradients adjacent to
/// each node.
std::vector<Vec2> recover_node_gradients(const Mesh& mesh, const Vec& phi);

Vec assemble_r1(const Mesh& mesh, const ProblemData& problem, const Vec& phi);
Vec assemble_r2(const Mesh& mesh, const ProblemData& problem, const Vec& phi,
                const FreeSurface& fs);
ResidualPair assemble_residuals(const Mesh& mesh, const ProblemData& problem,
                                const Vec& phi, const FreeSurface& fs);

JacobianBlocks assemble_blocks(const Mesh& mesh, const ProblemData& problem,
                               const Vec& phi, const FreeSurface& fs);

CoupledSystem assemble_jacobian(const Mesh& mesh, const ProblemData& problem,
                                const Vec& phi, const FreeSurface& fs);

/// Fixed-domain stiffness system (the (1,1) block with loads and strong rows
/// applied): solving it yields the potential for the current geometry with a
/// homogeneous-Neumann free surface.
void assemble_fixed_domain(const Mesh& mesh, const ProblemData& problem,
                           SpMat& matrix, Vec& rhs);

/// Coordinate text dump, one `row col value` line per entry.
void write_system_dump(const CoupledSystem& system, std::ostream& os);

}  // namespace fbp
