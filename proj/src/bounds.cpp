#include "bubbles/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace bubbles {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

void require_positive(const std::vector<double>& v) {
  for (double x : v)
    if (!(x > 0.0) || !std::isfinite(x))
      throw Error("InvalidArea", "area entries must be positive and finite");
}
}  // namespace

AreaVector::AreaVector(std::initializer_list<double> v) : a(v) { require_positive(a); }
AreaVector::AreaVector(std::vector<double> v) : a(std::move(v)) { require_positive(a); }

double AreaVector::sum() const {
  double s = 0;
  for (double x : a) s += x;
  return s;
}

double AreaVector::norm_half() const {
  double s = 0;
  for (double x : a) s += std::sqrt(x);
  return s * s;
}

double AreaVector::norm_minus_one() const {
  double s = 0;
  for (double x : a) s += 1.0 / x;
  return 1.0 / s;
}

double isop_lower_bound(const AreaVector& a) {
  double s = 0;
  for (double x : a.a) s += std::sqrt(x);
  return std::sqrt(kPi) * (std::sqrt(a.sum()) + s);
}

double varI_bound(double m_c) {
  if (!(m_c > 0.0)) throw Error("InvalidArea", "component mass must be positive");
  return 2 * std::sqrt(kPi) * std::sqrt(m_c);
}

double varII_mass_lower(double a_i, double r, double lam) {
  if (!(a_i > 0.0) || !(r >= 1.0) || !(lam > 0.0))
    throw Error("InvalidParameter", "varII needs a_i > 0, r >= 1, lam > 0");
  double q = 16 * kPi * a_i / (r * r * lam * lam);
  return q * a_i * (1.0 - q);
}

double varII_mass_lower_exact(double a_i, double r, double lam) {
  if (!(a_i > 0.0) || !(r >= 1.0) || !(lam > 0.0))
    throw Error("InvalidParameter", "varII needs a_i > 0, r >= 1, lam > 0");
  double b = 2 * a_i + r * r * lam * lam / (8 * kPi);
  // b - sqrt(b² - 4a²) rationalized to avoid cancellation for b >> a
  return 4 * a_i * a_i / (b + std::sqrt(b * b - 4 * a_i * a_i));
}

double varIII_pressure_lower(double p_c, double n, double m_c, double big_l) {
  if (!(n > 0.0) || !(m_c > 0.0) || !(big_l > 0.0))
    throw Error("InvalidParameter", "varIII needs positive arguments");
  double first = (p_c > 0.0) ? p_c / (n * m_c) - 2.0 / big_l
                             : -std::numeric_limits<double>::infinity();
  double second = 2 * std::sqrt(kPi) / (n * std::sqrt(m_c)) - 2.0 / big_l;
  return std::max(first, second);
}

double turning_pressure_lower(double n, double p_c, double ell, double p_min) {
  if (!(p_c > 0.0) || ell < 0.0 || ell > p_c || p_min < 0.0)
    throw Error("InvalidParameter", "need P_C > 0, 0 <= ell <= P_C, p_min >= 0");
  return (6.0 - n) * kPi / (3.0 * p_c) + (1.0 - ell / p_c) * p_min;
}

LowerEstimate lower_estimate(const AreaVector& a, int i, double r) {
  int n = static_cast<int>(a.a.size());
  if (n < 3) throw Error("OutOfScope", "lower estimate requires N >= 3");
  if (i < 0 || i >= n) throw Error("InvalidParameter", "index out of range");
  if (!(r >= 3.0) || r > n)
    throw Error("InvalidParameter", "need 3 <= r <= N");
  LowerEstimate out;
  double nh = a.norm_half();
  out.mass_bound = (20.0 / 9.0) * a.a[i] * a.a[i] / (r * r * nh);
  out.component_cap = (9.0 / 20.0) * n * n * nh / a.a[i];
  out.total_cap = (9.0 / 20.0) * n * n * nh / a.norm_minus_one();
  return out;
}

double k8_constant() { return std::sqrt(2 * kPi / 3 + std::sqrt(3.0) / 4); }

PressureInterval double_bubble_pressure_bounds(const AreaVector& a, int i, int j) {
  int n = static_cast<int>(a.a.size());
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw Error("InvalidParameter", "need two distinct region indices");
  double total = a.sum();
  double k8 = k8_constant();
  PressureInterval out;
  out.lower = k8 / std::sqrt(std::max(total - a.a[i], total - a.a[j]));
  out.upper = k8 / std::sqrt(std::min(a.a[i], a.a[j]));
  return out;
}

}  // namespace bubbles
