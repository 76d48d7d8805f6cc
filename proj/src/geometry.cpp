#include "fbp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace fbp {

const char* tag_name(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::GammaF: return "GammaF";
    case BoundaryTag::GammaL: return "GammaL";
    case BoundaryTag::GammaR: return "GammaR";
    case BoundaryTag::GammaB: return "GammaB";
  }
  return "?";
}

BedProfile BedProfile::flat(double level) {
  BedProfile b;
  b.kind_ = Kind::Flat;
  b.level_ = level;
  return b;
}

BedProfile BedProfile::triangle(double alpha, double half_width) {
  if (!(alpha > 0.0) || !(alpha < M_PI / 2) || !(half_width > 0.0))
    throw InvalidParams("triangle bed requires 0 < alpha < pi/2 and w0 > 0");
  BedProfile b;
  b.kind_ = Kind::Triangle;
  b.alpha_ = alpha;
  b.half_width_ = half_width;
  b.critical_ = {-half_width, 0.0, half_width};
  return b;
}

BedProfile BedProfile::polyline(std::vector<Vec2> vertices) {
  if (vertices.size() < 2)
    throw InvalidParams("polyline bed requires at least 2 vertices");
  for (std::size_t k = 1; k < vertices.size(); ++k)
    if (!(vertices[k].x() > vertices[k - 1].x()))
      throw InvalidParams("polyline bed abscissae must be strictly increasing");
  BedProfile b;
  b.kind_ = Kind::Polyline;
  b.vertices_ = std::move(vertices);
  for (std::size_t k = 1; k + 1 < b.vertices_.size(); ++k)
    b.critical_.push_back(b.vertices_[k].x());
  return b;
}

double BedProfile::operator()(double x) const {
  switch (kind_) {
    case Kind::Flat:
      return level_;
    case Kind::Triangle: {
      const double h = std::tan(alpha_) * (half_width_ - std::abs(x));
      return h > 0.0 ? h : 0.0;
    }
    case Kind::Polyline: {
      if (x <= vertices_.front().x()) return vertices_.front().y();
      if (x >= vertices_.back().x()) return vertices_.back().y();
      auto it = std::upper_bound(
          vertices_.begin(), vertices_.end(), x,
          [](double v, const Vec2& p) { return v < p.x(); });
      const Vec2& p1 = *it;
      const Vec2& p0 = *(it - 1);
      const double t = (x - p0.x()) / (p1.x() - p0.x());
      return p0.y() + t * (p1.y() - p0.y());
    }
  }
  return 0.0;
}

double BedProfile::triangle_apex_height() const {
  return kind_ == Kind::Triangle ? half_width_ * std::tan(alpha_) : 0.0;
}

Vec Mesh::surface_eta() const {
  Vec eta(station_count());
  for (int i = 0; i <= n_x; ++i) eta[i] = nodes[surface_node(i)].y();
  return eta;
}

double Mesh::signed_area(int t) const {
  const auto& tri = triangles[t];
  const Vec2& p0 = nodes[tri[0]];
  const Vec2& p1 = nodes[tri[1]];
  const Vec2& p2 = nodes[tri[2]];
  return 0.5 * ((p1.x() - p0.x()) * (p2.y() - p0.y()) -
                (p2.x() - p0.x()) * (p1.y() - p0.y()));
}

double Mesh::total_area() const {
  double a = 0.0;
  for (int t = 0; t < static_cast<int>(triangles.size()); ++t)
    a += signed_area(t);
  return a;
}

namespace {

// Uniform stations over [x_left, x_right], with the bed's kink abscissae
// snapped onto the nearest free station so they are exact mesh vertices.
Vec make_stations(const MeshParams& params, const BedProfile& bed) {
  const int n = params.n_x;
  Vec x(n + 1);
  const double dx = (params.x_right - params.x_left) / n;
  for (int i = 0; i <= n; ++i) x[i] = params.x_left + i * dx;
  x[n] = params.x_right;

  std::vector<bool> claimed(n + 1, false);
  claimed[0] = claimed[n] = true;
  for (double s : bed.critical_abscissae()) {
    if (!(s > params.x_left) || !(s < params.x_right)) continue;
    int best = -1;
    double dist = std::numeric_limits<double>::max();
    for (int i = 1; i < n; ++i) {
      if (claimed[i]) continue;
      const double d = std::abs(x[i] - s);
      if (d < dist) {
        dist = d;
        best = i;
      }
    }
    if (best < 0) throw InvalidParams("too few stations to resolve bed kinks");
    x[best] = s;
    claimed[best] = true;
  }
  for (int i = 0; i < n; ++i)
    if (!(x[i + 1] > x[i]))
      throw InvalidParams("station snapping produced non-increasing abscissae");
  return x;
}

}  // namespace

Mesh build_mesh(const MeshParams& params, const BedProfile& bed,
                const Profile& eta0) {
  if (params.n_x < 1 || params.n_y < 1)
    throw InvalidParams("mesh requires n_x >= 1 and n_y >= 1");
  if (!(params.x_right > params.x_left))
    throw InvalidParams("mesh requires x_right > x_left");

  Mesh m;
  m.n_x = params.n_x;
  m.n_y = params.n_y;
  m.stations = make_stations(params, bed);
  m.bed_values.resize(m.n_x + 1);

  const int cols = m.n_x + 1;
  const int rows = m.n_y + 1;
  m.nodes.resize(static_cast<std::size_t>(cols) * rows);
  m.columns.assign(cols, std::vector<int>(rows));
  for (int i = 0; i < cols; ++i) {
    const double x = m.stations[i];
    const double yb = bed(x);
    const double yt = eta0(x);
    m.bed_values[i] = yb;
    if (!(yt > yb)) {
      std::ostringstream msg;
      msg << "initial surface does not clear the bed at x = " << x << " (eta = "
          << yt << ", bed = " << yb << ")";
      throw NondegenerateDomainViolated(msg.str());
    }
    for (int j = 0; j < rows; ++j) {
      const double y = yb + (static_cast<double>(j) / m.n_y) * (yt - yb);
      m.nodes[m.node_id(i, j)] = Vec2(x, y);
      m.columns[i][j] = m.node_id(i, j);
    }
  }

  m.triangles.reserve(static_cast<std::size_t>(m.n_x) * m.n_y * 2);
  for (int i = 0; i < m.n_x; ++i) {
    for (int j = 0; j < m.n_y; ++j) {
      const int ll = m.node_id(i, j);
      const int lr = m.node_id(i + 1, j);
      const int ur = m.node_id(i + 1, j + 1);
      const int ul = m.node_id(i, j + 1);
      m.triangles.push_back({ll, lr, ur});
      m.triangles.push_back({ll, ur, ul});
    }
  }

  // Counter-clockwise loop: bed, right, surface, left.
  for (int i = 0; i < m.n_x; ++i)
    m.boundary_edges.push_back(
        {m.node_id(i, 0), m.node_id(i + 1, 0), BoundaryTag::GammaB});
  for (int j = 0; j < m.n_y; ++j)
    m.boundary_edges.push_back(
        {m.node_id(m.n_x, j), m.node_id(m.n_x, j + 1), BoundaryTag::GammaR});
  for (int i = m.n_x; i > 0; --i)
    m.boundary_edges.push_back(
        {m.node_id(i, m.n_y), m.node_id(i - 1, m.n_y), BoundaryTag::GammaF});
  for (int j = m.n_y; j > 0; --j)
    m.boundary_edges.push_back(
        {m.node_id(0, j), m.node_id(0, j - 1), BoundaryTag::GammaL});

  return m;
}

Mesh update_surface(const Mesh& mesh, const Vec& new_eta) {
  if (new_eta.size() != mesh.station_count())
    throw MeshFieldMismatch("new_eta size does not match station count");
  for (int i = 0; i <= mesh.n_x; ++i) {
    if (!(new_eta[i] > mesh.bed_values[i])) {
      std::ostringstream msg;
      msg << "surface update penetrates the bed at x = " << mesh.stations[i]
          << " (eta = " << new_eta[i] << ", bed = " << mesh.bed_values[i]
          << ")";
      throw SurfacePenetratesBed(msg.str());
    }
  }

  Mesh m = mesh;  // shares topology arrays by copy; node positions rewritten
  for (int i = 0; i <= m.n_x; ++i) {
    const double yb = m.bed_values[i];
    const double yt = new_eta[i];
    for (int j = 0; j <= m.n_y; ++j) {
      const double y = yb + (static_cast<double>(j) / m.n_y) * (yt - yb);
      m.nodes[m.node_id(i, j)] = Vec2(m.stations[i], y);
    }
  }
  return m;
}

std::vector<int> boundary_nodes(const Mesh& mesh, BoundaryTag tag) {
  std::vector<int> out;
  switch (tag) {
    case BoundaryTag::GammaB:
      for (int i = 0; i <= mesh.n_x; ++i) out.push_back(mesh.node_id(i, 0));
      break;
    case BoundaryTag::GammaF:
      for (int i = 0; i <= mesh.n_x; ++i)
        out.push_back(mesh.node_id(i, mesh.n_y));
      break;
    case BoundaryTag::GammaL:
      for (int j = 0; j <= mesh.n_y; ++j) out.push_back(mesh.node_id(0, j));
      break;
    case BoundaryTag::GammaR:
      for (int j = 0; j <= mesh.n_y; ++j)
        out.push_back(mesh.node_id(mesh.n_x, j));
      break;
  }
  return out;
}

BoundaryTag node_tag(const Mesh& mesh, int node) {
  const int i = node / (mesh.n_y + 1);
  const int j = node % (mesh.n_y + 1);
  if (i == 0) return BoundaryTag::GammaL;  // lateral tags win at corners
  if (i == mesh.n_x) return BoundaryTag::GammaR;
  if (j == 0) return BoundaryTag::GammaB;
  if (j == mesh.n_y) return BoundaryTag::GammaF;
  throw InvalidParams("node_tag called on interior node");
}

std::vector<int> owned_boundary_nodes(const Mesh& mesh, BoundaryTag tag) {
  std::vector<int> out;
  for (int n : boundary_nodes(mesh, tag))
    if (node_tag(mesh, n) == tag) out.push_back(n);
  return out;
}

void write_mesh_dump(const Mesh& mesh, std::ostream& os) {
  os.precision(17);
  os << "nodes " << mesh.nodes.size() << "\n";
  for (const auto& p : mesh.nodes) os << p.x() << " " << p.y() << "\n";
  os << "triangles " << mesh.triangles.size() << "\n";
  for (const auto& t : mesh.triangles)
    os << t[0] << " " << t[1] << " " << t[2] << "\n";
  os << "edges " << mesh.boundary_edges.size() << "\n";
  for (const auto& e : mesh.boundary_edges)
    os << e.a << " " << e.b << " " << tag_name(e.tag) << "\n";
}

MeshDump read_mesh_dump(std::istream& is) {
  MeshDump d;
  std::string word;
  std::size_t count = 0;
  if (!(is >> word >> count) || word != "nodes")
    throw ParseError("mesh dump: expected 'nodes <count>'");
  d.nodes.resize(count);
  for (auto& p : d.nodes)
    if (!(is >> p.x() >> p.y())) throw ParseError("mesh dump: bad node line");
  if (!(is >> word >> count) || word != "triangles")
    throw ParseError("mesh dump: expected 'triangles <count>'");
  d.triangles.resize(count);
  for (auto& t : d.triangles)
    if (!(is >> t[0] >> t[1] >> t[2]))
      throw ParseError("mesh dump: bad triangle line");
  if (!(is >> word >> count) || word != "edges")
    throw ParseError("mesh dump: expected 'edges <count>'");
  d.edges.resize(count);
  for (auto& e : d.edges) {
    std::string tag;
    if (!(is >> e.a >> e.b >> tag)) throw ParseError("mesh dump: bad edge line");
    if (tag == "GammaF") e.tag = BoundaryTag::GammaF;
    else if (tag == "GammaL") e.tag = BoundaryTag::GammaL;
    else if (tag == "GammaR") e.tag = BoundaryTag::GammaR;
    else if (tag == "GammaB") e.tag = BoundaryTag::GammaB;
    else throw ParseError("mesh dump: unknown tag " + tag);
  }
  return d;
}

}  // namespace fbp
