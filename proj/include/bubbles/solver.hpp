#ifndef BUBBLES_SOLVER_HPP
#define BUBBLES_SOLVER_HPP

#include "bubbles/constructors.hpp"

namespace bubbles {

struct SolveResult {
  std::vector<double> radii;      // r1, r2, r3, r4 (flower: 1/p_center, 1/p_outer)
  std::vector<double> pressures;  // by region id, p[0] = 0
  std::vector<double> areas;      // bounded regions in id order
  double perimeter = 0.0;
  double area_residual = 0.0;         // max |m(E_i) - 1|
  double stationarity_residual = 0.0; // max of angle/curvature/vertex-sum residuals
  double pressure_formula_residual = 0.0;
  bool converged = false;
  int iterations = 0;
  Cluster cluster;
};

// Equal-area sandwich at areas (1,1,1,1).  Symmetric mode solves the mirror
// symmetric family (r1 = r2, r3 = r4); otherwise r1, r3, r4 vary freely
// against r2 and the symmetric solution must re-emerge.
SolveResult solve_sandwich_equal_areas(bool symmetric = true);

SolveResult solve_flower_equal_areas();

struct ScanRow {
  double ratio = 1.0;      // r1 / r2
  double r1 = 0, r2 = 0, r3 = 0;
  double dA = 0;           // m(E1) - m(E2), conjecture evidence only
  double perimeter = 0;
  double area_residual = 0;         // max |m(E_i) - 1| over i = 2,3,4
  double stationarity_residual = 0;
  bool converged = false;
  int iterations = 0;
};

// For each ratio >= 1 solve r3 = r4 so that m(E3) = m(E4) = m(E2); rows are
// seeded by the previous solution.
std::vector<ScanRow> asymmetry_scan(const std::vector<double>& ratios);

std::string scan_to_csv(const std::vector<ScanRow>& rows);

}  // namespace bubbles

#endif
