#ifndef BUBBLES_CONSTRUCTORS_HPP
#define BUBBLES_CONSTRUCTORS_HPP

#include "bubbles/cluster.hpp"

namespace bubbles {

struct DoubleBubbleSpec {
  double r1 = 1.0, r2 = 1.0;  // external radii, r1 >= r2 canonical
};

struct GrowthSpec {
  int vertex = 0;      // trivalent vertex of the host
  double p_new = 0.0;  // pressure of the grown triangular region
};

// Standard double bubble with external radii r1, r2: three arcs through two
// vertices meeting at 120°, interface curvature 1/r2 - 1/r1.
Cluster make_double_bubble(double r1, double r2);

// Radii of the unique double bubble with prescribed region areas (a1 >= a2).
DoubleBubbleSpec double_bubble_with_areas(double a1, double a2);

// Symmetric standard triple bubble: three half-circle outer arcs of radius r,
// three straight spokes, per-region area (π/2 + 1/√3) r².
Cluster make_triple_bubble(double r);

// The four-region sandwich-shaped competitor built from segments and arcs
// with half-width parameters x, y (quad outer radius R = 2(x+y)/√3).  Angles
// are 120° everywhere but the pressure assignment is inconsistent on the
// straight quad-triangle edges: it is a competitor, not a stationary cluster.
Cluster make_competitor(double x = 0.2707, double y = 0.394);

// Replace `spec.vertex` of the host with a three-edge region of pressure
// p_new.  The three trimmed host arcs stay on their original circles.
Cluster grow_triangle(const Cluster& host, const GrowthSpec& spec);

// Remove a three-edge bounded face, prolonging the three incident outer arcs
// along their circles to their common point.  Pressures are preserved; the
// region is dropped (and ids compacted) if this was its only face.
Cluster remove_triangle(const Cluster& c, int face_index);

// Point where the three circles incident to (but not bounding) a triangular
// face meet, with the spread of the pairwise intersections as residual.
struct Concurrency {
  Point point;
  double residual = 0.0;
};
Concurrency triangle_concurrency(const Cluster& c, int face_index);

// Double bubble with radii r1, r2 grown by triangles of external radii r3
// (top vertex) and r4 (bottom vertex): regions 1,2 quads, 3,4 triangles.
Cluster make_sandwich(double r1, double r2, double r3, double r4);

// Three-fold symmetric flower: central three-edge region 1 at p_center,
// outer regions 2,3,4 at p_outer.  Requires p_center > 3/2 p_outer.
Cluster make_flower_symmetric(double p_center, double p_outer);

// Uniform rescale so that the smallest bounded region has area 1.
Cluster rescale_to_unit_areas(const Cluster& c);

}  // namespace bubbles

#endif
