#include "bubbles/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace bubbles {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// Solve a small dense symmetric system by Gaussian elimination with partial
// pivoting.  Throws on singularity.
std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
  int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    if (a[c][c] == 0.0) throw Error("SingularSystem", "singular linear system");
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (int c = 0; c < n; ++c) b[c] /= a[c][c];
  return b;
}
}  // namespace

DirectedArc Cluster::arc(int e) const {
  const Edge& ed = edges.at(e);
  return make_arc(vertices.at(ed.v_start), vertices.at(ed.v_end), ed.turn);
}

DirectedArc Cluster::arc_of_ref(int ref) const {
  if (ref > 0) return arc(ref - 1);
  return arc(-ref - 1).reversed();
}

ArcPolygon Cluster::face_polygon(int f) const {
  std::vector<DirectedArc> arcs;
  for (int ref : faces.at(f).loop) arcs.push_back(arc_of_ref(ref));
  return make_polygon(std::move(arcs));
}

const Region& Cluster::region(int id) const {
  for (const auto& r : regions)
    if (r.id == id) return r;
  throw Error("UnknownRegion", "region id " + std::to_string(id));
}

bool Cluster::has_pressures() const {
  return std::all_of(regions.begin(), regions.end(),
                     [](const Region& r) { return r.pressure.has_value(); });
}

double Cluster::pressure(int id) const {
  const Region& r = region(id);
  if (!r.pressure) throw Error("PressuresUnset", "region has no pressure");
  return *r.pressure;
}

void validate(const Cluster& c) {
  if (c.regions.empty() || c.regions[0].id != 0)
    throw Error("MissingExternalRegion", "regions[0] must have id 0");
  std::set<int> ids;
  for (const auto& r : c.regions)
    if (!ids.insert(r.id).second)
      throw Error("DuplicateRegion", "duplicate region id");

  // trivalence
  std::vector<int> degree(c.vertices.size(), 0);
  for (const auto& e : c.edges) {
    if (e.v_start < 0 || e.v_start >= (int)c.vertices.size() ||
        e.v_end < 0 || e.v_end >= (int)c.vertices.size())
      throw Error("BadVertexIndex", "edge endpoint out of range");
    if (e.left_region == e.right_region)
      throw Error("SelfAdjacentEdge", "edge must separate distinct regions");
    if (!ids.count(e.left_region) || !ids.count(e.right_region))
      throw Error("UnknownRegion", "edge references an undeclared region");
    degree[e.v_start]++;
    degree[e.v_end]++;
  }
  for (size_t v = 0; v < degree.size(); ++v)
    if (degree[v] != 3)
      throw Error("NotTrivalent", "vertex " + std::to_string(v) + " has degree " +
                                      std::to_string(degree[v]));

  // face loops chain, are closed, carry a consistent region label
  std::vector<int> uses(c.edges.size(), 0);
  for (const auto& f : c.faces) {
    if (f.loop.empty()) throw Error("OpenPath", "empty face loop");
    int prev_end = -1, first_start = -1, label = -1;
    for (int ref : f.loop) {
      int ei = std::abs(ref) - 1;
      if (ref == 0 || ei >= (int)c.edges.size())
        throw Error("BadEdgeRef", "face loop entry out of range");
      uses[ei]++;
      const Edge& e = c.edges[ei];
      int s = ref > 0 ? e.v_start : e.v_end;
      int t = ref > 0 ? e.v_end : e.v_start;
      int side = ref > 0 ? e.left_region : e.right_region;
      if (label == -1) label = side;
      else if (label != side)
        throw Error("InconsistentFace", "face loop edges disagree on region");
      if (first_start == -1) first_start = s;
      if (prev_end != -1 && prev_end != s)
        throw Error("OpenPath", "face loop does not chain");
      prev_end = t;
    }
    if (prev_end != first_start)
      throw Error("OpenPath", "face loop does not close");
    if (label == 0)
      throw Error("ExternalFaceListed", "bounded face labeled as region 0");
  }
  // every edge lies on <= 2 bounded faces; edges touching region 0 on one side
  // appear once, interior edges twice
  for (size_t i = 0; i < c.edges.size(); ++i) {
    const Edge& e = c.edges[i];
    int expected = (e.left_region == 0 || e.right_region == 0) ? 1 : 2;
    if (uses[i] != expected)
      throw Error("FaceCoverage",
                  "edge " + std::to_string(i) + " appears in " +
                      std::to_string(uses[i]) + " face loops, expected " +
                      std::to_string(expected));
  }

  // Euler counts when every bounded face is accounted: F bounded faces,
  // e = 3(M-1), v = 2(M-1)
  size_t m = c.faces.size();
  if (m < 2) throw Error("EulerCount", "a cluster needs at least two bounded faces");
  if (c.edges.size() != 3 * (m - 1) || c.vertices.size() != 2 * (m - 1))
    throw Error("EulerCount",
                "expected 3(M-1) edges and 2(M-1) vertices for M = " +
                    std::to_string(m));
}

double region_area(const Cluster& c, int region_id) {
  if (region_id == 0)
    throw Error("ExternalRegionArea", "external region has infinite area");
  c.region(region_id);
  double total = 0.0;
  bool found = false;
  for (size_t f = 0; f < c.faces.size(); ++f) {
    if (c.faces[f].region != region_id) continue;
    found = true;
    total += signed_area(c.face_polygon(static_cast<int>(f)));
  }
  if (!found) throw Error("UnknownRegion", "region has no faces");
  return total;
}

double cluster_perimeter(const Cluster& c) {
  double s = 0.0;
  for (size_t e = 0; e < c.edges.size(); ++e) s += c.arc((int)e).length();
  return s;
}

PressureSolve solve_pressures(const Cluster& c) {
  // least squares for κ_e = p_left - p_right with p_0 = 0, via the graph
  // Laplacian normal equations
  int n = static_cast<int>(c.regions.size());
  std::map<int, int> index;  // region id -> dense index
  for (int i = 0; i < n; ++i) index[c.regions[i].id] = i;

  // connectivity to region 0 over the adjacency graph
  std::vector<std::set<int>> adj(n);
  for (const auto& e : c.edges) {
    int a = index.at(e.left_region), b = index.at(e.right_region);
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) { seen[w] = true; stack.push_back(w); }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    throw Error("UngroundedPressures",
                "a region is not connected to the external region");

  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  std::vector<double> b(n, 0.0);
  for (const auto& e : c.edges) {
    DirectedArc arc = make_arc(c.vertices[e.v_start], c.vertices[e.v_end], e.turn);
    double kappa = arc.curvature();
    int l = index.at(e.left_region), r = index.at(e.right_region);
    a[l][l] += 1; a[r][r] += 1; a[l][r] -= 1; a[r][l] -= 1;
    b[l] += kappa;
    b[r] -= kappa;
  }
  // pin p_0 = 0
  for (int j = 0; j < n; ++j) a[0][j] = 0.0;
  a[0][0] = 1.0;
  b[0] = 0.0;
  std::vector<double> sol = solve_dense(a, b);

  PressureSolve out;
  int maxid = 0;
  for (const auto& r : c.regions) maxid = std::max(maxid, r.id);
  out.pressures.assign(maxid + 1, 0.0);
  for (const auto& r : c.regions) out.pressures[r.id] = sol[index.at(r.id)];
  for (const auto& e : c.edges) {
    DirectedArc arc = make_arc(c.vertices[e.v_start], c.vertices[e.v_end], e.turn);
    double res = std::abs(arc.curvature() - (out.pressures[e.left_region] -
                                             out.pressures[e.right_region]));
    out.max_residual = std::max(out.max_residual, res);
  }
  return out;
}

StationarityReport check_stationary(const Cluster& c, double tol) {
  (void)tol;
  StationarityReport rep;

  // incident outgoing tangents and signed curvatures per vertex
  std::vector<std::vector<Point>> tangents(c.vertices.size());
  std::vector<std::vector<double>> curvs(c.vertices.size());
  for (const auto& e : c.edges) {
    DirectedArc a = make_arc(c.vertices[e.v_start], c.vertices[e.v_end], e.turn);
    tangents[e.v_start].push_back(a.tangent(0.0));
    curvs[e.v_start].push_back(a.curvature());
    DirectedArc r = a.reversed();
    tangents[e.v_end].push_back(r.tangent(0.0));
    curvs[e.v_end].push_back(r.curvature());
  }
  for (size_t v = 0; v < c.vertices.size(); ++v) {
    if (tangents[v].size() != 3)
      throw Error("NotTrivalent", "vertex " + std::to_string(v));
    // sort the three outgoing directions ccw, measure the gaps
    std::vector<double> ang;
    for (const Point& t : tangents[v]) ang.push_back(std::atan2(t.y, t.x));
    std::sort(ang.begin(), ang.end());
    for (int i = 0; i < 3; ++i) {
      double gap = (i < 2 ? ang[i + 1] - ang[i] : 2 * kPi + ang[0] - ang[2]);
      rep.max_angle_residual =
          std::max(rep.max_angle_residual, std::abs(gap - 2 * kPi / 3));
    }
    double s = curvs[v][0] + curvs[v][1] + curvs[v][2];
    rep.max_vertex_curvature_sum =
        std::max(rep.max_vertex_curvature_sum, std::abs(s));
  }

  // pressures: assigned ones if complete, otherwise least squares
  if (c.has_pressures()) {
    int maxid = 0;
    for (const auto& r : c.regions) maxid = std::max(maxid, r.id);
    rep.pressures.assign(maxid + 1, 0.0);
    for (const auto& r : c.regions) rep.pressures[r.id] = *r.pressure;
  } else {
    rep.pressures = solve_pressures(c).pressures;
  }
  for (const auto& e : c.edges) {
    DirectedArc a = make_arc(c.vertices[e.v_start], c.vertices[e.v_end], e.turn);
    double res = std::abs(a.curvature() - (rep.pressures[e.left_region] -
                                           rep.pressures[e.right_region]));
    rep.max_curvature_residual = std::max(rep.max_curvature_residual, res);
  }

  for (size_t f = 0; f < c.faces.size(); ++f)
    rep.turning_residuals.push_back(turning_angle_residual(c, (int)f));
  rep.turning_residuals.push_back(turning_angle_residual(c, -1));
  rep.pressure_formula_residual = pressure_formula_residual(c);
  return rep;
}

double turning_angle_residual(const Cluster& c, int component) {
  std::vector<double> p;
  if (c.has_pressures()) {
    int maxid = 0;
    for (const auto& r : c.regions) maxid = std::max(maxid, r.id);
    p.assign(maxid + 1, 0.0);
    for (const auto& r : c.regions) p[r.id] = *r.pressure;
  } else {
    throw Error("PressuresUnset", "turning angle needs pressures");
  }

  if (component >= 0) {
    const Face& f = c.faces.at(component);
    int i = f.region;
    double rhs = 0.0;
    int n = static_cast<int>(f.loop.size());
    for (int ref : f.loop) {
      const Edge& e = c.edges[std::abs(ref) - 1];
      int other = ref > 0 ? e.right_region : e.left_region;
      rhs += (p[i] - p[other]) * c.arc(std::abs(ref) - 1).length();
    }
    return std::abs((6 - n) * kPi / 3.0 - rhs);
  }
  // external region: edges adjacent to region 0
  double rhs = 0.0;
  int n = 0;
  for (size_t ei = 0; ei < c.edges.size(); ++ei) {
    const Edge& e = c.edges[ei];
    if (e.left_region != 0 && e.right_region != 0) continue;
    int j = e.left_region == 0 ? e.right_region : e.left_region;
    rhs += p[j] * c.arc((int)ei).length();
    n++;
  }
  return std::abs((6 + n) * kPi / 3.0 - rhs);
}

double pressure_formula_residual(const Cluster& c) {
  std::vector<double> p;
  if (c.has_pressures()) {
    int maxid = 0;
    for (const auto& r : c.regions) maxid = std::max(maxid, r.id);
    p.assign(maxid + 1, 0.0);
    for (const auto& r : c.regions) p[r.id] = *r.pressure;
  } else {
    p = solve_pressures(c).pressures;
  }
  double sum = 0.0;
  for (const auto& r : c.regions) {
    if (r.id == 0) continue;
    sum += p[r.id] * region_area(c, r.id);
  }
  return std::abs(cluster_perimeter(c) - 2.0 * sum);
}

Cluster scale_cluster(const Cluster& c, double t) {
  if (!(t > 0.0)) throw Error("InvalidScale", "scale factor must be positive");
  Cluster out = c;
  for (auto& v : out.vertices) v = v * t;
  for (auto& r : out.regions)
    if (r.pressure) r.pressure = *r.pressure / t;
  return out;
}

}  // namespace bubbles
