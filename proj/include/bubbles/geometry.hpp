#ifndef BUBBLES_GEOMETRY_HPP
#define BUBBLES_GEOMETRY_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace bubbles {

struct Error : std::runtime_error {
  std::string code;
  Error(std::string code_, const std::string& msg)
      : std::runtime_error(code_ + ": " + msg), code(std::move(code_)) {}
};

struct Point {
  double x = 0.0, y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline Point perp(Point a) { return {-a.y, a.x}; }  // rotate +90°

Point make_point(double x, double y);  // rejects NaN/inf

// Directed circular arc from `start` to `end`.
//
// `turn` is the signed central angle swept when traversing the arc,
// counterclockwise positive, turn ∈ (-2π, 2π).  turn == 0 encodes a straight
// segment.  |turn| > π is a major arc.  The Frenet curvature of the traversal
// is turn / length, so for an edge of a stationary cluster
// turn / length = p_left - p_right.
struct DirectedArc {
  Point start, end;
  double turn = 0.0;

  double chord() const { return norm(end - start); }
  bool straight() const { return turn == 0.0; }
  double radius() const;            // requires turn != 0
  Point center() const;             // requires turn != 0
  double length() const;
  double curvature() const { return straight() ? 0.0 : turn / length(); }
  Point point(double t) const;      // t in [0,1]
  Point tangent(double t) const;    // unit tangent along traversal
  DirectedArc reversed() const { return {end, start, -turn}; }
  DirectedArc subarc(double t0, double t1) const;
  // Area between chord and arc, signed consistently with a ccw boundary walk:
  // (R²/2)(turn - sin turn), stable for small turns.
  double segment_area() const;
};

DirectedArc make_arc(Point start, Point end, double turn);
// Arc with prescribed signed Frenet curvature (left positive). |turn| <= π.
DirectedArc arc_from_curvature(Point start, Point end, double kappa);

double arc_length(const DirectedArc& arc);
// Interior angle in [0, π] between the outgoing tangents of two arcs at a
// common endpoint `at`.
double meeting_angle(const DirectedArc& a, const DirectedArc& b, Point at);

struct ArcPolygon {
  std::vector<DirectedArc> arcs;
};

ArcPolygon make_polygon(std::vector<DirectedArc> arcs);  // checks closure
double signed_area(const ArcPolygon& poly);
double perimeter(const ArcPolygon& poly);
ArcPolygon reverse(const ArcPolygon& poly);

constexpr double kClosureTol = 1e-12;
constexpr double kIncidenceTol = 1e-9;

}  // namespace bubbles

#endif
