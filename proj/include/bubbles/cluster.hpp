#ifndef BUBBLES_CLUSTER_HPP
#define BUBBLES_CLUSTER_HPP

#include <optional>
#include <string>
#include <vector>

#include "bubbles/geometry.hpp"

namespace bubbles {

struct Region {
  int id = 0;  // 0 is the external region
  std::optional<double> pressure;
  bool is_external() const { return id == 0; }
};

struct Edge {
  int v_start = 0, v_end = 0;
  double turn = 0.0;            // ccw sweep of the arc v_start -> v_end
  int left_region = 0;          // region on the left of the traversal
  int right_region = 0;
};

// A face loop: signed references into Cluster::edges, +1-based for forward
// traversal, negative for reversed.  Bounded faces are listed ccw (interior
// on the left); the external region's walks are implicit.
struct Face {
  std::vector<int> loop;
  int region = 0;  // derived on validation
};

struct Cluster {
  std::vector<Region> regions;   // regions[0] is the external region
  std::vector<Point> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;       // bounded faces only

  DirectedArc arc(int edge_index) const;
  DirectedArc arc_of_ref(int signed_ref) const;  // +i/-i, 1-based
  ArcPolygon face_polygon(int face_index) const;
  const Region& region(int id) const;
  bool has_pressures() const;
  double pressure(int id) const;  // throws PressuresUnset
};

struct StationarityReport {
  double max_angle_residual = 0.0;          // vs 2π/3 at each vertex
  double max_curvature_residual = 0.0;      // |κ - (p_left - p_right)|
  double max_vertex_curvature_sum = 0.0;    // |Σ signed κ| over each vertex
  std::vector<double> pressures;            // indexed by region id
  std::vector<double> turning_residuals;    // per bounded face, then external
  double pressure_formula_residual = 0.0;
  bool pass(double tol) const {
    return max_angle_residual <= tol && max_curvature_residual <= tol &&
           max_vertex_curvature_sum <= tol;
  }
};

// Structural validation: trivalence, face-loop chaining, left/right label
// consistency, Euler counts.  Throws Error with the violated constraint named.
void validate(const Cluster& c);

double region_area(const Cluster& c, int region_id);
double cluster_perimeter(const Cluster& c);

struct PressureSolve {
  std::vector<double> pressures;  // by region id, p[0] == 0
  double max_residual = 0.0;      // max |κ_e - (p_l - p_r)|
};
PressureSolve solve_pressures(const Cluster& c);

StationarityReport check_stationary(const Cluster& c, double tol = 1e-9);

// |(6-n)π/3 - Σ (p_i - p_j) L_j| for bounded face `component`;
// pass component = -1 for the external region ((6+n)π/3 form).
double turning_angle_residual(const Cluster& c, int component);

// |P(E) - 2 Σ p_i m(E_i)|
double pressure_formula_residual(const Cluster& c);

Cluster scale_cluster(const Cluster& c, double t);

// JSON serialization (schema documented in README).
std::string save_cluster_json(const Cluster& c);
Cluster load_cluster_json(const std::string& text);

}  // namespace bubbles

#endif
