#include "bubbles/geometry.hpp"

#include <algorithm>

namespace bubbles {

namespace {
// Series switch point: below this |turn| the closed forms for length and
// segment area lose digits to cancellation; the truncated series are exact
// to well below 1e-14 relative.
constexpr double kSeriesTurn = 0.1;
constexpr double kPi = 3.141592653589793238462643383279502884;
}  // namespace

Point make_point(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y))
    throw Error("NonFinitePoint", "point coordinates must be finite");
  return {x, y};
}

DirectedArc make_arc(Point start, Point end, double turn) {
  make_point(start.x, start.y);
  make_point(end.x, end.y);
  if (!std::isfinite(turn) || std::abs(turn) >= 2 * kPi)
    throw Error("InvalidTurn", "turn must be finite with |turn| < 2*pi");
  DirectedArc a{start, end, turn};
  if (a.chord() <= 0.0)
    throw Error("DegenerateArc", "arc endpoints coincide");
  return a;
}

DirectedArc arc_from_curvature(Point start, Point end, double kappa) {
  if (kappa == 0.0) return make_arc(start, end, 0.0);
  double x = norm(end - start) * kappa / 2.0;
  if (std::abs(x) > 1.0)
    throw Error("DegenerateArc", "curvature too large for chord");
  return make_arc(start, end, 2.0 * std::asin(x));
}

double DirectedArc::radius() const {
  return chord() / (2.0 * std::sin(std::abs(turn) / 2.0));
}

Point DirectedArc::center() const {
  Point m = (start + end) * 0.5;
  Point n = perp(end - start) * (1.0 / chord());
  return m + n * (chord() / 2.0 / std::tan(turn / 2.0));
}

double DirectedArc::length() const {
  double c = chord();
  if (straight()) return c;
  double s = std::abs(turn);
  if (s < kSeriesTurn) {
    double s2 = s * s;
    return c * (1.0 + s2 / 24.0 + 7.0 * s2 * s2 / 5760.0 +
                31.0 * s2 * s2 * s2 / 967680.0);
  }
  return c * (s / 2.0) / std::sin(s / 2.0);
}

double DirectedArc::segment_area() const {
  if (straight()) return 0.0;
  double c = chord(), s = turn;
  if (std::abs(s) < kSeriesTurn) {
    double s2 = s * s;
    double f = (2.0 * s / 3.0) *
               (1.0 + s2 / 30.0 + s2 * s2 / 840.0 + s2 * s2 * s2 / 25200.0);
    return c * c / 8.0 * f;
  }
  double r = radius();
  return 0.5 * r * r * (s - std::sin(s));
}

Point DirectedArc::point(double t) const {
  if (straight() || std::abs(turn) < 1e-12)
    return start + (end - start) * t;
  // chord frame: x along chord, y = left normal
  double c = chord(), s = turn;
  double sh = std::sin(s / 2.0);
  double x = (c / 2.0) * (1.0 + std::sin(s * (t - 0.5)) / sh);
  double y = (c / 2.0) * (std::cos(s / 2.0) - std::cos(s * (t - 0.5))) / sh;
  Point u = (end - start) * (1.0 / c);
  Point n = perp(u);
  return start + u * x + n * y;
}

Point DirectedArc::tangent(double t) const {
  Point u = (end - start) * (1.0 / chord());
  if (straight()) return u;
  // tangent direction = chord direction rotated by turn*(t - 1/2)
  double a = turn * (t - 0.5);
  double ca = std::cos(a), sa = std::sin(a);
  return {u.x * ca - u.y * sa, u.x * sa + u.y * ca};
}

DirectedArc DirectedArc::subarc(double t0, double t1) const {
  return make_arc(point(t0), point(t1), turn * (t1 - t0));
}

double arc_length(const DirectedArc& arc) {
  if (arc.chord() <= 0.0)
    throw Error("DegenerateArc", "arc endpoints coincide");
  return arc.length();
}

double meeting_angle(const DirectedArc& a, const DirectedArc& b, Point at) {
  auto outgoing = [&](const DirectedArc& arc) -> Point {
    if (norm(arc.start - at) <= kIncidenceTol) return arc.tangent(0.0);
    if (norm(arc.end - at) <= kIncidenceTol) {
      Point t = arc.tangent(1.0);
      return {-t.x, -t.y};
    }
    throw Error("NotIncident", "arc has no endpoint at the given point");
  };
  Point ta = outgoing(a), tb = outgoing(b);
  return std::abs(std::atan2(cross(ta, tb), dot(ta, tb)));
}

ArcPolygon make_polygon(std::vector<DirectedArc> arcs) {
  if (arcs.empty()) throw Error("OpenPath", "empty polygon");
  double scale = 0.0;
  for (const auto& a : arcs) scale = std::max({scale, norm(a.start), norm(a.end)});
  double tol = kClosureTol * std::max(1.0, scale);
  for (size_t i = 0; i < arcs.size(); ++i) {
    const auto& cur = arcs[i];
    const auto& nxt = arcs[(i + 1) % arcs.size()];
    if (norm(cur.end - nxt.start) > tol)
      throw Error("OpenPath", "arc endpoints do not chain into a closed loop");
  }
  return ArcPolygon{std::move(arcs)};
}

double signed_area(const ArcPolygon& poly) {
  double shoelace = 0.0, segs = 0.0;
  for (const auto& a : poly.arcs) {
    shoelace += cross(a.start, a.end);
    segs += a.segment_area();
  }
  return shoelace / 2.0 + segs;
}

double perimeter(const ArcPolygon& poly) {
  double s = 0.0;
  for (const auto& a : poly.arcs) s += a.length();
  return s;
}

ArcPolygon reverse(const ArcPolygon& poly) {
  ArcPolygon r;
  r.arcs.reserve(poly.arcs.size());
  for (auto it = poly.arcs.rbegin(); it != poly.arcs.rend(); ++it)
    r.arcs.push_back(it->reversed());
  return r;
}

}  // namespace bubbles
