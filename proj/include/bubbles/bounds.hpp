#ifndef BUBBLES_BOUNDS_HPP
#define BUBBLES_BOUNDS_HPP

#include <vector>

#include "bubbles/geometry.hpp"

namespace bubbles {

struct AreaVector {
  std::vector<double> a;
  AreaVector(std::initializer_list<double> v);
  explicit AreaVector(std::vector<double> v);
  double sum() const;
  double norm_half() const;      // (Σ √a_j)²
  double norm_minus_one() const; // (Σ 1/a_j)⁻¹
};

// √π (√(Σ a_k) + Σ √a_k): perimeter lower bound for any cluster with areas a.
double isop_lower_bound(const AreaVector& a);

// 2√π √m(C): cap on the boundary a component shares with one other region.
double varI_bound(double m_c);

// Mass lower bound (16π a_i²)/(r²λ²) (1 − 16π a_i/(r²λ²)) for a component of
// a region with target area a_i adjacent to r regions, perimeter bound λ.
double varII_mass_lower(double a_i, double r, double lam);
// The pre-simplification form 2a_i + r²λ²/(8π) − √((2a_i + r²λ²/(8π))² − 4a_i²),
// which dominates varII_mass_lower pointwise.
double varII_mass_lower_exact(double a_i, double r, double lam);

// max(P_C/(n m_C) − 2/L, 2√π/(n √m_C) − 2/L)
double varIII_pressure_lower(double p_c, double n, double m_c, double big_l);

// (6−n)π/(3 P_C) + (1 − ℓ/P_C) p_min
double turning_pressure_lower(double n, double p_c, double ell, double p_min);

struct LowerEstimate {
  double mass_bound = 0.0;       // m(C_i) >= (20/9) a_i²/(r² ‖a‖_½)
  double component_cap = 0.0;    // M_i <= (9/20) N² ‖a‖_½ / a_i
  double total_cap = 0.0;        // M  <= (9/20) N² ‖a‖_½ / ‖a‖_{-1}
};
LowerEstimate lower_estimate(const AreaVector& a, int i, double r);

struct PressureInterval {
  double lower = 0.0, upper = 0.0;
};
// k₈/√(max{a−a_i, a−a_j}) <= min{p_i,p_j} <= max{p_i,p_j} <= k₈/√(min{a_i,a_j})
PressureInterval double_bubble_pressure_bounds(const AreaVector& a, int i, int j);

// k₈ = √(2π/3 + √3/4), the equal double bubble area coefficient.
double k8_constant();

}  // namespace bubbles

#endif
