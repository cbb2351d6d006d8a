#include "bubbles/constructors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace bubbles {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

int ref_fwd(int edge_index) { return edge_index + 1; }
int ref_rev(int edge_index) { return -(edge_index + 1); }

double angle_of(Point p) { return std::atan2(p.y, p.x); }

std::vector<double> pressure_table(const Cluster& c) {
  int maxid = 0;
  for (const auto& r : c.regions) maxid = std::max(maxid, r.id);
  std::vector<double> p(maxid + 1, 0.0);
  for (const auto& r : c.regions) {
    if (!r.pressure) throw Error("PressuresUnset", "constructor host needs pressures");
    p[r.id] = *r.pressure;
  }
  return p;
}
}  // namespace

Cluster make_double_bubble(double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > 0.0))
    throw Error("InvalidRadius", "double bubble radii must be positive");
  double p1 = 1.0 / r1, p2 = 1.0 / r2;
  double h = (std::sqrt(3.0) / 2.0) / std::sqrt(p1 * p1 + p2 * p2 - p1 * p2);
  // chord half-angles: phi1 + phi2 = 2π/3, sin(phi_i) = h / r_i
  double phi1 = (r1 >= r2) ? std::asin(h / r1) : 2 * kPi / 3 - std::asin(h / r2);
  double phi2 = 2 * kPi / 3 - phi1;
  double phi12 = kPi / 3 - phi1;  // interface half-angle, signed

  Cluster c;
  c.regions = {{0, 0.0}, {1, p1}, {2, p2}};
  c.vertices = {{0.0, h}, {0.0, -h}};
  // outer arc of region 1 bulges west: bottom -> top, clockwise sweep
  c.edges.push_back({1, 0, -(2 * kPi - 2 * phi1), 0, 1});
  // outer arc of region 2 bulges east: top -> bottom, clockwise sweep
  c.edges.push_back({0, 1, -(2 * kPi - 2 * phi2), 0, 2});
  // interface top -> bottom; bulges toward the lower-pressure side
  c.edges.push_back({0, 1, 2 * phi12, 2, 1});
  c.faces.push_back({{ref_rev(2), ref_rev(0)}, 1});
  c.faces.push_back({{ref_fwd(2), ref_rev(1)}, 2});
  validate(c);
  return c;
}

DoubleBubbleSpec double_bubble_with_areas(double a1, double a2) {
  if (!(a1 > 0.0) || !(a2 > 0.0) || a1 < a2)
    throw Error("InvalidArea", "need a1 >= a2 > 0");
  const double k8 = std::sqrt(2 * kPi / 3 + std::sqrt(3.0) / 4);
  double r1 = std::sqrt(a1) / k8, r2 = std::sqrt(a2) / k8;
  auto residual = [&](double x1, double x2, double& f1, double& f2) {
    Cluster c = make_double_bubble(x1, x2);
    f1 = region_area(c, 1) - a1;
    f2 = region_area(c, 2) - a2;
  };
  double f1, f2;
  residual(r1, r2, f1, f2);
  int it = 0;
  for (; it < 100; ++it) {
    double n0 = std::hypot(f1, f2);
    if (n0 < 1e-13 * (a1 + a2)) break;
    double hs = 1e-7 * std::max(r1, r2);
    double g1, g2;
    residual(r1 + hs, r2, g1, g2);
    double j11 = (g1 - f1) / hs, j21 = (g2 - f2) / hs;
    residual(r1, r2 + hs, g1, g2);
    double j12 = (g1 - f1) / hs, j22 = (g2 - f2) / hs;
    double det = j11 * j22 - j12 * j21;
    if (det == 0.0) throw Error("SolveFailed", "singular Jacobian");
    double d1 = -(j22 * f1 - j12 * f2) / det;
    double d2 = -(-j21 * f1 + j11 * f2) / det;
    double lam = 1.0;
    for (int half = 0; half < 30; ++half) {
      double t1 = r1 + lam * d1, t2 = r2 + lam * d2;
      if (t1 > 0 && t2 > 0) {
        double h1, h2;
        residual(t1, t2, h1, h2);
        if (std::hypot(h1, h2) < n0) {
          r1 = t1; r2 = t2; f1 = h1; f2 = h2;
          break;
        }
      }
      lam /= 2;
      if (half == 29)
        throw Error("SolveFailed", "no descent; last residual " + std::to_string(n0));
    }
  }
  if (it == 100)
    throw Error("SolveFailed",
                "double_bubble_with_areas: residual " + std::to_string(std::hypot(f1, f2)));
  return {r1, r2};
}

Cluster make_triple_bubble(double r) {
  if (!(r > 0.0)) throw Error("InvalidRadius", "triple bubble radius must be positive");
  double d = 2 * r / std::sqrt(3.0);
  Cluster c;
  c.regions = {{0, 0.0}, {1, 1 / r}, {2, 1 / r}, {3, 1 / r}};
  c.vertices.push_back({0.0, 0.0});  // center, index 0
  std::array<double, 3> th = {kPi / 2, kPi / 2 + 2 * kPi / 3, kPi / 2 + 4 * kPi / 3};
  for (double a : th) c.vertices.push_back({d * std::cos(a), d * std::sin(a)});
  // spokes 0..2: center -> outer vertex i+1; regions 1..3 sit ccw of spokes 0..2
  for (int i = 0; i < 3; ++i)
    c.edges.push_back({0, i + 1, 0.0, i + 1, (i + 2) % 3 + 1});
  // outer half circles 3..5: vertex i+1 -> vertex (i+1)%3+1
  for (int i = 0; i < 3; ++i)
    c.edges.push_back({i + 1, (i + 1) % 3 + 1, kPi, i + 1, 0});
  for (int i = 0; i < 3; ++i)
    c.faces.push_back({{ref_fwd(i), ref_fwd(3 + i), ref_rev((i + 1) % 3)}, i + 1});
  validate(c);
  return c;
}

Cluster make_competitor(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0))
    throw Error("InvalidParameter", "competitor needs x, y > 0");
  double s3 = std::sqrt(3.0);
  double R = 2 * (x + y) / s3;
  Cluster c;
  c.regions = {{0, 0.0}, {1, 1 / R}, {2, 1 / R}, {3, 1 / (s3 * y)}, {4, 1 / (s3 * y)}};
  c.vertices = {
      {-x, 0.0},           // 0: A
      {x, 0.0},            // 1: B
      {-x - y, y * s3},    // 2: UL
      {x + y, y * s3},     // 3: UR
      {x + y, -y * s3},    // 4: DR
      {-x - y, -y * s3},   // 5: DL
  };
  c.edges.push_back({0, 1, 0.0, 1, 2});           // 0: center segment
  c.edges.push_back({0, 2, 0.0, 3, 1});           // 1: A -> UL
  c.edges.push_back({0, 5, 0.0, 2, 3});           // 2: A -> DL
  c.edges.push_back({1, 3, 0.0, 1, 4});           // 3: B -> UR
  c.edges.push_back({1, 4, 0.0, 4, 2});           // 4: B -> DR
  c.edges.push_back({2, 3, -2 * kPi / 3, 0, 1});  // 5: top arc UL -> UR
  c.edges.push_back({4, 5, -2 * kPi / 3, 0, 2});  // 6: bottom arc DR -> DL
  c.edges.push_back({2, 5, kPi, 3, 0});           // 7: left arc UL -> DL
  c.edges.push_back({4, 3, kPi, 4, 0});           // 8: right arc DR -> UR
  c.faces.push_back({{ref_fwd(0), ref_fwd(3), ref_rev(5), ref_rev(1)}, 1});
  c.faces.push_back({{ref_rev(0), ref_fwd(2), ref_rev(6), ref_rev(4)}, 2});
  c.faces.push_back({{ref_fwd(1), ref_fwd(7), ref_rev(2)}, 3});
  c.faces.push_back({{ref_fwd(4), ref_fwd(8), ref_rev(3)}, 4});
  validate(c);
  return c;
}

namespace {

// One incident edge at a grow/remove vertex, oriented away from it.
struct Incident {
  int edge = 0;           // index into host.edges
  bool reversed = false;  // true when host edge points into the vertex
  DirectedArc away;       // arc directed away from the vertex
  int left = 0, right = 0;  // region labels of `away`
};

std::vector<Incident> incident_edges(const Cluster& c, int vertex) {
  std::vector<Incident> inc;
  for (size_t i = 0; i < c.edges.size(); ++i) {
    const Edge& e = c.edges[i];
    if (e.v_start == vertex)
      inc.push_back({(int)i, false, c.arc((int)i), e.left_region, e.right_region});
    else if (e.v_end == vertex)
      inc.push_back({(int)i, true, c.arc((int)i).reversed(), e.right_region, e.left_region});
  }
  if (inc.size() != 3)
    throw Error("NotTrivalent", "vertex " + std::to_string(vertex) + " has degree " +
                                    std::to_string(inc.size()));
  std::sort(inc.begin(), inc.end(), [](const Incident& a, const Incident& b) {
    return angle_of(a.away.tangent(0.0)) < angle_of(b.away.tangent(0.0));
  });
  return inc;
}

struct GrowState {
  std::array<Incident, 3> inc;
  std::array<int, 3> sector{};       // region ccw of inc[i]
  std::array<double, 3> host_len{};  // arc length of each away arc
  double p_new = 0.0;
  std::vector<double> press;
};

// Sum of the three outgoing unit tangents at each new vertex; zero iff the
// three curves meet at 120°.
bool grow_residual(const GrowState& st, const std::array<double, 3>& ts,
                   std::array<double, 6>& res,
                   std::array<DirectedArc, 3>* arcs_out = nullptr,
                   std::array<Point, 3>* w_out = nullptr) {
  std::array<Point, 3> w;
  for (int i = 0; i < 3; ++i) w[i] = st.inc[i].away.point(ts[i] / st.host_len[i]);
  std::array<DirectedArc, 3> na;
  for (int i = 0; i < 3; ++i) {
    double kap = st.p_new - st.press[st.sector[i]];
    double chord = norm(w[(i + 1) % 3] - w[i]);
    if (chord <= 0.0 || std::abs(chord * kap / 2) > 0.999) return false;
    na[i] = arc_from_curvature(w[i], w[(i + 1) % 3], kap);
  }
  for (int i = 0; i < 3; ++i) {
    Point th = st.inc[i].away.tangent(ts[i] / st.host_len[i]);
    Point t1 = na[i].tangent(0.0);
    Point t0 = na[(i + 2) % 3].reversed().tangent(0.0);
    res[2 * i] = th.x + t1.x + t0.x;
    res[2 * i + 1] = th.y + t1.y + t0.y;
  }
  if (arcs_out) *arcs_out = na;
  if (w_out) *w_out = w;
  return true;
}

double norm6(const std::array<double, 6>& r) {
  double s = 0;
  for (double v : r) s += v * v;
  return std::sqrt(s);
}

// Gauss-Newton with step halving on the 6-component tangent-sum residual.
bool grow_solve(const GrowState& st, std::array<double, 3>& ts) {
  std::array<double, 6> r0;
  if (!grow_residual(st, ts, r0)) return false;
  // tangents are unit vectors built from points ~ts apart, so the attainable
  // residual scales like eps / ts
  double floor_res = 0;
  for (double t : ts) floor_res = std::max(floor_res, 40 * 1e-16 / t);
  double accept = std::max(1e-12, floor_res);
  for (int it = 0; it < 120; ++it) {
    double n0 = norm6(r0);
    if (n0 < accept) return true;
    double J[6][3];
    for (int j = 0; j < 3; ++j) {
      double hs = std::max(1e-9, 1e-7 * ts[j]);
      std::array<double, 3> t2 = ts;
      t2[j] += hs;
      std::array<double, 6> r1;
      if (!grow_residual(st, t2, r1)) {
        t2[j] = ts[j] - hs;
        if (!grow_residual(st, t2, r1)) return false;
        hs = -hs;
      }
      for (int i = 0; i < 6; ++i) J[i][j] = (r1[i] - r0[i]) / hs;
    }
    double A[3][3], b[3];
    for (int a = 0; a < 3; ++a) {
      b[a] = 0;
      for (int i = 0; i < 6; ++i) b[a] -= J[i][a] * r0[i];
      for (int c2 = 0; c2 < 3; ++c2) {
        A[a][c2] = 0;
        for (int i = 0; i < 6; ++i) A[a][c2] += J[i][a] * J[i][c2];
      }
    }
    double ridge = 1e-12 * (A[0][0] + A[1][1] + A[2][2]);
    for (int a = 0; a < 3; ++a) A[a][a] += ridge;
    // solve 3x3
    double M[3][4];
    for (int a = 0; a < 3; ++a) {
      for (int c2 = 0; c2 < 3; ++c2) M[a][c2] = A[a][c2];
      M[a][3] = b[a];
    }
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int rr = col + 1; rr < 3; ++rr)
        if (std::abs(M[rr][col]) > std::abs(M[piv][col])) piv = rr;
      std::swap(M[col], M[piv]);
      if (M[col][col] == 0.0) return false;
      for (int rr = 0; rr < 3; ++rr) {
        if (rr == col) continue;
        double f = M[rr][col] / M[col][col];
        for (int cc = col; cc < 4; ++cc) M[rr][cc] -= f * M[col][cc];
      }
    }
    double dx[3];
    for (int a = 0; a < 3; ++a) dx[a] = M[a][3] / M[a][a];
    double lam = 1.0;
    bool moved = false;
    for (int half = 0; half < 25; ++half) {
      std::array<double, 3> tn;
      bool ok = true;
      for (int a = 0; a < 3; ++a) {
        tn[a] = ts[a] + lam * dx[a];
        if (!(tn[a] > 0.0) || tn[a] >= st.host_len[a]) ok = false;
      }
      std::array<double, 6> rn;
      if (ok && grow_residual(st, tn, rn) && norm6(rn) < n0) {
        ts = tn;
        r0 = rn;
        moved = true;
        break;
      }
      lam /= 2;
    }
    if (!moved) return norm6(r0) < std::max(1e-9, accept);
  }
  return norm6(r0) < std::max(1e-9, accept);
}

}  // namespace

Concurrency triangle_concurrency(const Cluster& c, int face_index) {
  const Face& f = c.faces.at(face_index);
  if (f.loop.size() != 3) throw Error("NotTriangle", "component is not three-sided");
  // the three incident-but-not-bounding arcs: at each triangle vertex, the
  // edge that is not part of the face
  std::vector<int> tri_edges;
  std::vector<int> tri_verts;
  for (int ref : f.loop) {
    int ei = std::abs(ref) - 1;
    tri_edges.push_back(ei);
    tri_verts.push_back(ref > 0 ? c.edges[ei].v_start : c.edges[ei].v_end);
  }
  std::vector<DirectedArc> outer;
  for (int v : tri_verts) {
    for (const Incident& in : incident_edges(c, v)) {
      if (std::find(tri_edges.begin(), tri_edges.end(), in.edge) == tri_edges.end())
        outer.push_back(in.away);
    }
  }
  if (outer.size() != 3) throw Error("NotTriangle", "triangle vertex structure broken");

  // pairwise intersections of the supporting circles/lines, beyond each vertex
  auto candidates = [&](const DirectedArc& a, const DirectedArc& b) {
    std::vector<Point> pts;
    bool la = a.straight() || std::abs(a.turn) < 1e-12;
    bool lb = b.straight() || std::abs(b.turn) < 1e-12;
    if (la && lb) {
      Point da = a.end - a.start, db = b.end - b.start;
      double d = cross(da, db);
      if (d != 0.0) {
        double t = cross(b.start - a.start, db) / d;
        pts.push_back(a.start + da * t);
      }
    } else if (la || lb) {
      const DirectedArc& line = la ? a : b;
      const DirectedArc& circ = la ? b : a;
      Point o = circ.center();
      double r = circ.radius();
      Point u = line.end - line.start;
      double len = norm(u);
      u = u * (1.0 / len);
      Point w = line.start - o;
      double proj = -dot(w, u);
      double d2 = dot(w, w) - proj * proj;
      if (d2 <= r * r) {
        double q = std::sqrt(std::max(0.0, r * r - d2));
        pts.push_back(line.start + u * (proj - q));
        pts.push_back(line.start + u * (proj + q));
      }
    } else {
      Point o1 = a.center(), o2 = b.center();
      double r1 = a.radius(), r2 = b.radius();
      Point d12 = o2 - o1;
      double d = norm(d12);
      if (d > 0) {
        double x = (d * d + r1 * r1 - r2 * r2) / (2 * d);
        double h2 = r1 * r1 - x * x;
        if (h2 >= -1e-12 * r1 * r1) {
          double hh = std::sqrt(std::max(0.0, h2));
          Point u = d12 * (1.0 / d);
          Point n = perp(u);
          pts.push_back(o1 + u * x + n * hh);
          pts.push_back(o1 + u * x - n * hh);
        }
      }
    }
    return pts;
  };
  auto c01 = candidates(outer[0], outer[1]);
  auto c12 = candidates(outer[1], outer[2]);
  auto c02 = candidates(outer[0], outer[2]);
  if (c01.empty() || c12.empty() || c02.empty())
    throw Error("NotStationaryInput", "incident circles do not intersect");
  // the concurrency point lies inside the component: when several triples
  // coincide (symmetric clusters), pick the one nearest the triangle
  Point centroid{0, 0};
  for (int v : tri_verts) centroid = centroid + c.vertices[v] * (1.0 / 3.0);
  Concurrency best;
  best.residual = std::numeric_limits<double>::infinity();
  double best_dist = std::numeric_limits<double>::infinity();
  double scale = 0;
  for (const auto& v : c.vertices) scale = std::max(scale, norm(v));
  double tie = 1e-9 * std::max(1.0, scale);
  for (const Point& p : c01)
    for (const Point& q : c12)
      for (const Point& s : c02) {
        double r = std::max({norm(p - q), norm(q - s), norm(p - s)});
        Point mean{(p.x + q.x + s.x) / 3, (p.y + q.y + s.y) / 3};
        double dist = norm(mean - centroid);
        bool better = r < best.residual - tie ||
                      (r <= best.residual + tie && dist < best_dist);
        if (better) {
          best.residual = std::min(r, best.residual);
          best_dist = dist;
          best.point = mean;
        }
      }
  return best;
}

Cluster grow_triangle(const Cluster& host, const GrowthSpec& spec) {
  if (spec.vertex < 0 || spec.vertex >= (int)host.vertices.size())
    throw Error("BadVertexIndex", "grow vertex out of range");
  GrowState st;
  st.press = pressure_table(host);
  auto inc = incident_edges(host, spec.vertex);
  std::copy(inc.begin(), inc.end(), st.inc.begin());
  for (int i = 0; i < 3; ++i) {
    st.sector[i] = st.inc[i].left;
    if (st.sector[i] != st.inc[(i + 1) % 3].right)
      throw Error("InconsistentFace", "sector labels disagree at grow vertex");
    st.host_len[i] = st.inc[i].away.length();
  }
  double pmax = std::max({st.press[st.sector[0]], st.press[st.sector[1]],
                          st.press[st.sector[2]]});
  if (!(spec.p_new > pmax))
    throw Error("InvalidPressure", "p_new must exceed the adjacent pressures");

  // continuation from a tiny triangle (high pressure) down to the target
  std::array<double, 3> ts{};
  double p_cur = pmax + 10 * std::max(pmax, 1e-3);
  p_cur = std::max(p_cur, spec.p_new);
  bool first = true;
  while (true) {
    st.p_new = p_cur;
    if (first) {
      double kap0 = 0;
      for (int i = 0; i < 3; ++i) kap0 = std::max(kap0, p_cur - st.press[st.sector[i]]);
      for (int i = 0; i < 3; ++i)
        ts[i] = std::min(0.45 * st.host_len[i], 1.0 / (kap0 * std::sqrt(3.0)));
      first = false;
    }
    if (!grow_solve(st, ts)) {
      if (p_cur > spec.p_new)
        throw Error("SolveFailed", "triangle growth continuation failed at p = " +
                                       std::to_string(p_cur));
      throw Error("InvalidPressure",
                  "p_new is at or below the degeneracy threshold (growth failed at p = " +
                      std::to_string(p_cur) + ")");
    }
    if (p_cur == spec.p_new) break;
    p_cur = std::max(spec.p_new, pmax + (p_cur - pmax) * 0.5);
  }

  std::array<double, 6> res;
  std::array<DirectedArc, 3> na;
  std::array<Point, 3> w;
  st.p_new = spec.p_new;
  double floor_res = 0;
  for (double t : ts) floor_res = std::max(floor_res, 40 * 1e-16 / t);
  if (!grow_residual(st, ts, res, &na, &w) || norm6(res) > std::max(1e-9, floor_res))
    throw Error("SolveFailed", "triangle growth residual too large");

  // assemble: drop the vertex, add w0..w2, trim host arcs, add 3 new edges
  Cluster out = host;
  int new_region = 0;
  for (const auto& r : host.regions) new_region = std::max(new_region, r.id);
  new_region += 1;
  out.regions.push_back({new_region, spec.p_new});

  std::vector<int> vmap(host.vertices.size(), -1);
  out.vertices.clear();
  for (size_t v = 0; v < host.vertices.size(); ++v) {
    if ((int)v == spec.vertex) continue;
    vmap[v] = (int)out.vertices.size();
    out.vertices.push_back(host.vertices[v]);
  }
  std::array<int, 3> widx;
  for (int i = 0; i < 3; ++i) {
    widx[i] = (int)out.vertices.size();
    out.vertices.push_back(w[i]);
  }
  for (auto& e : out.edges) {
    if (e.v_start != spec.vertex) e.v_start = vmap[e.v_start];
    if (e.v_end != spec.vertex) e.v_end = vmap[e.v_end];
  }
  for (int i = 0; i < 3; ++i) {
    const Incident& in = st.inc[i];
    DirectedArc trimmed = in.away.subarc(ts[i] / st.host_len[i], 1.0);
    Edge& e = out.edges[in.edge];
    if (!in.reversed) {
      e.v_start = widx[i];
      e.turn = trimmed.turn;
    } else {
      e.v_end = widx[i];
      e.turn = -trimmed.turn;
    }
  }
  std::array<int, 3> tidx;
  for (int i = 0; i < 3; ++i) {
    tidx[i] = (int)out.edges.size();
    out.edges.push_back({widx[i], widx[(i + 1) % 3], na[i].turn, new_region, st.sector[i]});
  }

  // splice the faces that visited the old vertex
  auto end_vertex = [&](const Cluster& cl, int ref) {
    const Edge& e = cl.edges[std::abs(ref) - 1];
    return ref > 0 ? e.v_end : e.v_start;
  };
  auto start_vertex = [&](const Cluster& cl, int ref) {
    const Edge& e = cl.edges[std::abs(ref) - 1];
    return ref > 0 ? e.v_start : e.v_end;
  };
  for (auto& f : out.faces) {
    size_t n = f.loop.size();
    for (size_t k = 0; k < n; ++k) {
      int cur = f.loop[k], nxt = f.loop[(k + 1) % n];
      int a = end_vertex(host, cur), b = start_vertex(host, nxt);
      (void)b;
      if (a != spec.vertex) continue;
      // after trimming, cur ends at some w_i and nxt starts at some w_j;
      // insert the new edge connecting them (reversed as needed)
      int wi = end_vertex(out, cur), wj = start_vertex(out, nxt);
      int insert = 0;
      for (int t = 0; t < 3; ++t) {
        if (out.edges[tidx[t]].v_start == wi && out.edges[tidx[t]].v_end == wj)
          insert = ref_fwd(tidx[t]);
        if (out.edges[tidx[t]].v_start == wj && out.edges[tidx[t]].v_end == wi)
          insert = ref_rev(tidx[t]);
      }
      if (insert == 0) throw Error("InternalError", "no triangle edge joins spliced face");
      f.loop.insert(f.loop.begin() + k + 1, insert);
      break;
    }
  }
  out.faces.push_back({{ref_fwd(tidx[0]), ref_fwd(tidx[1]), ref_fwd(tidx[2])}, new_region});
  validate(out);
  return out;
}

Cluster remove_triangle(const Cluster& c, int face_index) {
  const Face& f = c.faces.at(face_index);
  if (f.loop.size() != 3) throw Error("NotTriangle", "component is not three-sided");
  Concurrency conc = triangle_concurrency(c, face_index);
  double scale = 0;
  for (const auto& v : c.vertices) scale = std::max(scale, norm(v));
  if (conc.residual > 1e-8 * std::max(1.0, scale))
    throw Error("NotStationaryInput", "incident circles do not concur, spread " +
                                          std::to_string(conc.residual));
  std::vector<int> tri_edges, tri_verts;
  for (int ref : f.loop) {
    int ei = std::abs(ref) - 1;
    tri_edges.push_back(ei);
    tri_verts.push_back(ref > 0 ? c.edges[ei].v_start : c.edges[ei].v_end);
  }

  Cluster out = c;
  // extend each outer edge along its circle to the concurrency point
  int pidx;
  {
    std::vector<int> vmap(c.vertices.size(), -1);
    out.vertices.clear();
    for (size_t v = 0; v < c.vertices.size(); ++v) {
      if (std::find(tri_verts.begin(), tri_verts.end(), (int)v) != tri_verts.end()) continue;
      vmap[v] = (int)out.vertices.size();
      out.vertices.push_back(c.vertices[v]);
    }
    pidx = (int)out.vertices.size();
    out.vertices.push_back(conc.point);
    for (size_t ei = 0; ei < out.edges.size(); ++ei) {
      Edge& e = out.edges[ei];
      bool s_tri = std::find(tri_verts.begin(), tri_verts.end(), e.v_start) != tri_verts.end();
      bool e_tri = std::find(tri_verts.begin(), tri_verts.end(), e.v_end) != tri_verts.end();
      if (std::find(tri_edges.begin(), tri_edges.end(), (int)ei) != tri_edges.end()) continue;
      if (s_tri || e_tri) {
        // prolong: new sweep from the surviving endpoint to P along the circle
        DirectedArc a = c.arc((int)ei);
        DirectedArc away = s_tri ? a : a.reversed();  // from triangle vertex outward
        DirectedArc ext;  // far endpoint -> P, same circle, same rotation sense
        if (away.straight() || std::abs(away.turn) < 1e-12) {
          ext = make_arc(away.end, conc.point, 0.0);
        } else {
          Point o = away.center();
          double aw = angle_of(away.start - o), ap = angle_of(conc.point - o);
          double sgn = away.turn > 0 ? 1.0 : -1.0;
          double delta = std::fmod(sgn * (aw - ap), 2 * kPi);
          if (delta < 0) delta += 2 * kPi;
          // extension continues against `away`'s direction: total sweep grows
          ext = DirectedArc{away.end, conc.point, -(away.turn + sgn * delta)};
        }
        if (s_tri) {
          e.v_start = pidx;
          e.v_end = vmap[e.v_end];
          e.turn = -ext.turn;
        } else {
          e.v_end = pidx;
          e.v_start = vmap[e.v_start];
          e.turn = ext.turn;
        }
      } else {
        e.v_start = vmap[e.v_start];
        e.v_end = vmap[e.v_end];
      }
    }
  }

  // drop the triangle edges and face; remap edge refs in loops
  std::vector<int> emap(out.edges.size(), -1);
  {
    std::vector<Edge> kept;
    for (size_t ei = 0; ei < out.edges.size(); ++ei) {
      if (std::find(tri_edges.begin(), tri_edges.end(), (int)ei) != tri_edges.end()) continue;
      emap[ei] = (int)kept.size();
      kept.push_back(out.edges[ei]);
    }
    out.edges = std::move(kept);
  }
  int removed_region = f.region;
  std::vector<Face> faces;
  for (size_t fi = 0; fi < out.faces.size(); ++fi) {
    if ((int)fi == face_index) continue;
    Face nf;
    nf.region = out.faces[fi].region;
    for (int ref : out.faces[fi].loop) {
      int ei = std::abs(ref) - 1;
      if (emap[ei] < 0) continue;  // triangle edge spliced out
      nf.loop.push_back(ref > 0 ? ref_fwd(emap[ei]) : ref_rev(emap[ei]));
    }
    faces.push_back(std::move(nf));
  }
  out.faces = std::move(faces);

  // drop the region if the removed face was its only component
  bool region_still_used = std::any_of(out.faces.begin(), out.faces.end(),
                                       [&](const Face& q) { return q.region == removed_region; });
  if (!region_still_used) {
    std::map<int, int> idmap;
    idmap[0] = 0;
    int next = 1;
    std::vector<Region> regs;
    for (const auto& r : out.regions) {
      if (r.id == removed_region) continue;
      int nid = (r.id == 0) ? 0 : next++;
      idmap[r.id] = nid;
      regs.push_back({nid, r.pressure});
    }
    out.regions = std::move(regs);
    for (auto& e : out.edges) {
      e.left_region = idmap.at(e.left_region);
      e.right_region = idmap.at(e.right_region);
    }
    for (auto& q : out.faces) q.region = idmap.at(q.region);
  }
  validate(out);
  return out;
}

Cluster make_sandwich(double r1, double r2, double r3, double r4) {
  Cluster c = make_double_bubble(r1, r2);
  Point top = c.vertices[0], bottom = c.vertices[1];
  auto find_vertex = [](const Cluster& cl, Point p) {
    for (size_t v = 0; v < cl.vertices.size(); ++v)
      if (norm(cl.vertices[v] - p) < 1e-9) return (int)v;
    throw Error("InternalError", "vertex not found");
  };
  if (!(r3 > 0.0) || !(r4 > 0.0))
    throw Error("InvalidRadius", "triangle radii must be positive");
  c = grow_triangle(c, {find_vertex(c, top), 1.0 / r3});
  c = grow_triangle(c, {find_vertex(c, bottom), 1.0 / r4});
  return c;
}

Cluster make_flower_symmetric(double p_center, double p_outer) {
  if (!(p_outer > 0.0) || !(p_center > p_outer))
    throw Error("InvalidPressure", "need p_center > p_outer > 0");
  if (!(p_center > 1.5 * p_outer))
    throw Error("InvalidPressure",
                "flower closure infeasible: need p_center > 3/2 p_outer");
  double rho_u = 1.0 / (std::sqrt(3.0) * (p_center - p_outer));
  double rho_v = 2.0 / (std::sqrt(3.0) * p_outer);
  Cluster c;
  c.regions = {{0, 0.0}, {1, p_center}, {2, p_outer}, {3, p_outer}, {4, p_outer}};
  std::array<double, 3> th = {kPi / 2, kPi / 2 + 2 * kPi / 3, kPi / 2 + 4 * kPi / 3};
  for (double a : th) c.vertices.push_back({rho_u * std::cos(a), rho_u * std::sin(a)});
  for (double a : th) c.vertices.push_back({rho_v * std::cos(a), rho_v * std::sin(a)});
  // inner arcs 0..2: u_i -> u_{i+1}, center region on the left
  for (int i = 0; i < 3; ++i)
    c.edges.push_back({i, (i + 1) % 3, kPi / 3, 1, 2 + i});
  // spokes 3..5: u_i -> v_i, outer region 2+i ccw of the spoke
  for (int i = 0; i < 3; ++i)
    c.edges.push_back({i, 3 + i, 0.0, 2 + i, 2 + (i + 2) % 3});
  // outer arcs 6..8: v_i -> v_{i+1}, half circles
  for (int i = 0; i < 3; ++i)
    c.edges.push_back({3 + i, 3 + (i + 1) % 3, kPi, 2 + i, 0});
  c.faces.push_back({{ref_fwd(0), ref_fwd(1), ref_fwd(2)}, 1});
  for (int i = 0; i < 3; ++i)
    c.faces.push_back({{ref_fwd(3 + i), ref_fwd(6 + i), ref_rev(3 + (i + 1) % 3), ref_rev(i)},
                       2 + i});
  validate(c);
  return c;
}

Cluster rescale_to_unit_areas(const Cluster& c) {
  double amin = std::numeric_limits<double>::infinity();
  for (const auto& r : c.regions) {
    if (r.id == 0) continue;
    amin = std::min(amin, region_area(c, r.id));
  }
  return scale_cluster(c, 1.0 / std::sqrt(amin));
}

}  // namespace bubbles
