#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "fbp/types.hpp"

namespace fbp {

enum class BoundaryTag { GammaF, GammaL, GammaR, GammaB };

const char* tag_name(BoundaryTag tag);

/// Bed elevation as a single-valued function of x. The triangle profile is an
/// isosceles obstacle of base angle alpha and half width w0 centered at x = 0,
/// sitting on a floor at y = 0.
class BedProfile {
 public:
  static BedProfile flat(double level = 0.0);
  static BedProfile triangle(double alpha, double half_width);
  static BedProfile polyline(std::vector<Vec2> vertices);

  double operator()(double x) const;

  /// Abscissae that must coincide with mesh stations (profile kinks).
  const std::vector<double>& critical_abscissae() const { return critical_; }

  double triangle_apex_height() const;  // w0 * tan(alpha), 0 for other kinds
  bool is_triangle() const { return kind_ == Kind::Triangle; }

 private:
  enum class Kind { Flat, Triangle, Polyline };
  Kind kind_ = Kind::Flat;
  double level_ = 0.0;
  double alpha_ = 0.0;
  double half_width_ = 0.0;
  std::vector<Vec2> vertices_;
  std::vector<double> critical_;
};

struct MeshParams {
  int n_x = 0;  // intervals along x, stations = n_x + 1
  int n_y = 0;  // intervals per column, nodes per column = n_y + 1
  double x_left = 0.0;
  double x_right = 1.0;
};

struct BoundaryEdge {
  int a = -1;
  int b = -1;
  BoundaryTag tag = BoundaryTag::GammaB;
};

/// Structured triangulation of the channel {x_L <= x <= x_R,
/// bed(x) <= y <= eta(x)}. Columns of n_y + 1 nodes per station, each grid
/// cell split along the lower-left -> upper-right diagonal. Immutable after
/// construction; surface updates return a new mesh with identical topology.
struct Mesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<std::vector<int>> columns;  // ordered bed -> surface
  Vec stations;    // x per station (snapped to bed kinks)
  Vec bed_values;  // bed(x) per station
  int n_x = 0;
  int n_y = 0;

  int node_id(int i, int j) const { return i * (n_y + 1) + j; }
  int node_count() const { return static_cast<int>(nodes.size()); }
  int station_count() const { return n_x + 1; }
  int surface_node(int i) const { return node_id(i, n_y); }

  /// Current surface elevation per station.
  Vec surface_eta() const;

  double signed_area(int t) const;
  double total_area() const;
};

Mesh build_mesh(const MeshParams& params, const BedProfile& bed,
                const Profile& eta0);

/// Re-stretch every column linearly between bed(x) and new_eta(x). Topology
/// (triangle and edge index arrays) is shared verbatim with the input mesh.
Mesh update_surface(const Mesh& mesh, const Vec& new_eta);

/// All nodes lying on the given boundary segment, corners included.
/// GammaF/GammaB ordered by increasing x, GammaL/GammaR by increasing y.
std::vector<int> boundary_nodes(const Mesh& mesh, BoundaryTag tag);

/// Exclusive tag of a boundary node; corner nodes resolve to the lateral tag
/// (GammaL/GammaR win over GammaF/GammaB). Throws for interior nodes.
BoundaryTag node_tag(const Mesh& mesh, int node);

/// Boundary nodes whose exclusive tag equals `tag` (corner priority applied),
/// i.e. the rows that receive strong Dirichlet data for that tag.
std::vector<int> owned_boundary_nodes(const Mesh& mesh, BoundaryTag tag);

void write_mesh_dump(const Mesh& mesh, std::ostream& os);

/// Minimal parsed form of a mesh dump (for the plot subcommand).
struct MeshDump {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> edges;
};
MeshDump read_mesh_dump(std::istream& is);

}  // namespace fbp
