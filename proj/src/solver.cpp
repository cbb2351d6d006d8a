#include "bubbles/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace bubbles {

namespace {

// damped Newton with forward-difference Jacobian on a small square system
struct NewtonOutcome {
  bool converged = false;
  int iterations = 0;
};

NewtonOutcome damped_newton(std::vector<double>& x,
                            const std::function<std::vector<double>(const std::vector<double>&)>& fn,
                            double ftol, int maxit = 100) {
  int n = (int)x.size();
  auto norm2 = [](const std::vector<double>& v) {
    double s = 0;
    for (double q : v) s += q * q;
    return std::sqrt(s);
  };
  std::vector<double> f = fn(x);
  NewtonOutcome out;
  for (out.iterations = 0; out.iterations < maxit; ++out.iterations) {
    double n0 = norm2(f);
    if (n0 <= ftol) {
      out.converged = true;
      return out;
    }
    std::vector<std::vector<double>> J(n, std::vector<double>(n));
    for (int j = 0; j < n; ++j) {
      double hs = 1e-6 * std::max(1.0, std::abs(x[j]));
      std::vector<double> xj = x;
      xj[j] += hs;
      std::vector<double> fj = fn(xj);
      for (int i = 0; i < n; ++i) J[i][j] = (fj[i] - f[i]) / hs;
    }
    // solve J dx = -f
    std::vector<std::vector<double>> A = J;
    std::vector<double> b(n);
    for (int i = 0; i < n; ++i) b[i] = -f[i];
    for (int c = 0; c < n; ++c) {
      int piv = c;
      for (int r = c + 1; r < n; ++r)
        if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
      std::swap(A[c], A[piv]);
      std::swap(b[c], b[piv]);
      if (A[c][c] == 0.0) return out;
      for (int r = 0; r < n; ++r) {
        if (r == c) continue;
        double fac = A[r][c] / A[c][c];
        for (int k = c; k < n; ++k) A[r][k] -= fac * A[c][k];
        b[r] -= fac * b[c];
      }
    }
    for (int c = 0; c < n; ++c) b[c] /= A[c][c];
    double lam = 1.0;
    bool moved = false;
    for (int half = 0; half < 20; ++half) {
      std::vector<double> xn(n);
      for (int i = 0; i < n; ++i) xn[i] = x[i] + lam * b[i];
      try {
        std::vector<double> fnv = fn(xn);
        if (norm2(fnv) < n0) {
          x = xn;
          f = std::move(fnv);
          moved = true;
          break;
        }
      } catch (const Error&) {
        // infeasible trial step
      }
      lam /= 2;
    }
    double step = 0;
    for (int i = 0; i < n; ++i) step = std::max(step, std::abs(lam * b[i]));
    if (!moved || step < 1e-12) {
      out.converged = norm2(f) <= ftol;
      return out;
    }
  }
  out.converged = norm2(f) <= ftol;
  return out;
}

SolveResult finish(Cluster c, std::vector<double> radii, int iterations,
                   bool converged) {
  c = rescale_to_unit_areas(c);
  SolveResult r;
  r.cluster = c;
  r.iterations = iterations;
  for (const auto& reg : c.regions) {
    if (reg.id == 0) continue;
    r.areas.push_back(region_area(c, reg.id));
  }
  int maxid = 0;
  for (const auto& reg : c.regions) maxid = std::max(maxid, reg.id);
  r.pressures.assign(maxid + 1, 0.0);
  for (const auto& reg : c.regions)
    if (reg.pressure) r.pressures[reg.id] = *reg.pressure;
  r.radii = std::move(radii);
  r.perimeter = cluster_perimeter(c);
  for (double a : r.areas) r.area_residual = std::max(r.area_residual, std::abs(a - 1.0));
  StationarityReport rep = check_stationary(c, 1e-8);
  r.stationarity_residual = std::max({rep.max_angle_residual, rep.max_curvature_residual,
                                      rep.max_vertex_curvature_sum});
  r.pressure_formula_residual = rep.pressure_formula_residual;
  r.converged = converged && r.area_residual <= 1e-9 && r.stationarity_residual <= 1e-8;
  return r;
}

}  // namespace

SolveResult solve_sandwich_equal_areas(bool symmetric) {
  if (symmetric) {
    // one unknown: triangle radius s against quad radius 1, then rescale.
    // initial guess from the competitor proportions: s/rho ≈ √3·y / R
    std::vector<double> x{0.89};
    auto fn = [&](const std::vector<double>& v) -> std::vector<double> {
      Cluster c = make_sandwich(1.0, 1.0, v[0], v[0]);
      return {region_area(c, 3) - region_area(c, 1)};
    };
    NewtonOutcome res = damped_newton(x, fn, 1e-13, 100);
    Cluster c = make_sandwich(1.0, 1.0, x[0], x[0]);
    double scale = 1.0 / std::sqrt(region_area(c, 1));
    return finish(c, {scale, scale, scale * x[0], scale * x[0]}, res.iterations,
                  res.converged);
  }
  // free mode: unknowns r1, r3, r4 with r2 = 1; the mirror-symmetric
  // solution must re-emerge from an asymmetric start
  std::vector<double> x{1.03, 0.91, 0.88};
  auto fn = [&](const std::vector<double>& v) -> std::vector<double> {
    Cluster c = make_sandwich(v[0], 1.0, v[1], v[2]);
    double a2 = region_area(c, 2);
    return {region_area(c, 1) - a2, region_area(c, 3) - a2, region_area(c, 4) - a2};
  };
  NewtonOutcome res = damped_newton(x, fn, 1e-12, 100);
  Cluster c = make_sandwich(x[0], 1.0, x[1], x[2]);
  double scale = 1.0 / std::sqrt(region_area(c, 2));
  return finish(c, {scale * x[0], scale, scale * x[1], scale * x[2]}, res.iterations,
                res.converged);
}

SolveResult solve_flower_equal_areas() {
  // p_outer = 1; one unknown p_center for m(center) = m(outer), then rescale
  std::vector<double> x{2.0};
  auto fn = [&](const std::vector<double>& v) -> std::vector<double> {
    Cluster c = make_flower_symmetric(v[0], 1.0);
    return {region_area(c, 1) - region_area(c, 2)};
  };
  NewtonOutcome res = damped_newton(x, fn, 1e-13, 100);
  Cluster c = make_flower_symmetric(x[0], 1.0);
  double scale = 1.0 / std::sqrt(region_area(c, 2));
  return finish(c, {scale / x[0], scale}, res.iterations, res.converged);
}

std::vector<ScanRow> asymmetry_scan(const std::vector<double>& ratios) {
  std::vector<ScanRow> rows;
  double s_seed = 0.9429;  // symmetric solution's triangle radius
  for (double ratio : ratios) {
    ScanRow row;
    row.ratio = ratio;
    if (!(ratio >= 1.0)) throw Error("InvalidParameter", "scan ratios must be >= 1");
    try {
      std::vector<double> x{s_seed};
      auto fn = [&](const std::vector<double>& v) -> std::vector<double> {
        Cluster c = make_sandwich(ratio, 1.0, v[0], v[0]);
        return {region_area(c, 3) - region_area(c, 2)};
      };
      NewtonOutcome res = damped_newton(x, fn, 1e-13, 100);
      Cluster c = make_sandwich(ratio, 1.0, x[0], x[0]);
      double a2 = region_area(c, 2);
      double scale = 1.0 / std::sqrt(a2);
      Cluster sc = scale_cluster(c, scale);
      row.converged = res.converged;
      row.iterations = res.iterations;
      row.r1 = ratio * scale;
      row.r2 = scale;
      row.r3 = x[0] * scale;
      row.dA = region_area(sc, 1) - region_area(sc, 2);
      row.perimeter = cluster_perimeter(sc);
      for (int id : {2, 3, 4})
        row.area_residual = std::max(row.area_residual, std::abs(region_area(sc, id) - 1.0));
      StationarityReport rep = check_stationary(sc, 1e-8);
      row.stationarity_residual = std::max({rep.max_angle_residual, rep.max_curvature_residual,
                                            rep.max_vertex_curvature_sum});
      s_seed = x[0];
    } catch (const Error&) {
      row.converged = false;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "ratio,r1,r2,r3,dA,perimeter,converged,iterations\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%d,%d\n",
                  r.ratio, r.r1, r.r2, r.r3, r.dA, r.perimeter, r.converged ? 1 : 0,
                  r.iterations);
    os << buf;
  }
  return os.str();
}

}  // namespace bubbles
