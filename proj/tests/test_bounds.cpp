#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bubbles/bounds.hpp"

using namespace bubbles;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const double kK0 = 11.1962;

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i)
    g.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
  return g;
}
}  // namespace

TEST_CASE("isoperimetric lower bound") {
  CHECK(isop_lower_bound(AreaVector{1, 1, 1, 1}) ==
        doctest::Approx(6 * std::sqrt(kPi)).epsilon(1e-15));
  CHECK(isop_lower_bound(AreaVector{1, 1, 1, 1}) == doctest::Approx(10.6347231054331).epsilon(1e-12));
  CHECK(isop_lower_bound(AreaVector{1}) == doctest::Approx(2 * std::sqrt(kPi)).epsilon(1e-15));
  CHECK(isop_lower_bound(AreaVector{1, 1}) ==
        doctest::Approx(std::sqrt(kPi) * (std::sqrt(2.0) + 2)).epsilon(1e-14));
  // increasing in every entry
  double base = isop_lower_bound(AreaVector{1, 2, 3});
  CHECK(isop_lower_bound(AreaVector{1.01, 2, 3}) > base);
  CHECK(isop_lower_bound(AreaVector{1, 2, 3.01}) > base);
}

TEST_CASE("variation I bound") {
  CHECK(varI_bound(1.0) == doctest::Approx(2 * std::sqrt(kPi)).epsilon(1e-15));
  CHECK(varI_bound(0.0408) == doctest::Approx(0.71603626).epsilon(1e-7));
  CHECK(varI_bound(4.0) == doctest::Approx(2 * varI_bound(1.0)).epsilon(1e-15));
  for (double m : log_grid(1e-3, 10, 20)) CHECK(varI_bound(2 * m) > varI_bound(m));
}

TEST_CASE("variation II mass lower bound") {
  // r·P <= 4k0 instantiations
  CHECK(varII_mass_lower(1, 4, kK0) == doctest::Approx(0.0244335043170).epsilon(1e-10));
  CHECK(varII_mass_lower(1, 4, kK0) >= 0.0244);
  CHECK(varII_mass_lower(1, 3, kK0) == doctest::Approx(0.0425688803324).epsilon(1e-10));
  CHECK(varII_mass_lower(1, 3, kK0) >= 0.0425);
}

TEST_CASE("variation II: exact form dominates the simplified form") {
  // the Taylor step in the derivation only weakens the bound
  for (double a : log_grid(0.05, 2.0, 100)) {
    for (double r : {3.0, 4.0}) {
      for (double lam : log_grid(10.7, 60.0, 100)) {
        double exact = varII_mass_lower_exact(a, r, lam);
        double simple = varII_mass_lower(a, r, lam);
        CHECK(exact >= simple - 1e-14);
      }
    }
  }
  // monotone in a_i while 16π a/(r²λ²) <= 1/2
  for (double r : {3.0, 4.0}) {
    double lam = 4 * kK0;
    double prev = 0;
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
      if (16 * kPi * a / (r * r * lam * lam) > 0.5) continue;
      double v = varII_mass_lower(a, r, lam);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("variation III pressure lower bound") {
  // unknown component perimeter: only the isoperimetric branch applies
  double v = varIII_pressure_lower(0, 4, 0.0408, 1.4186);
  CHECK(v == doctest::Approx(2.97763637578).epsilon(1e-10));
  CHECK(v > 2.9776);
  CHECK(v > kK0 / 4);
  double w = varIII_pressure_lower(0, 4, 0.0408, 0.9747);
  CHECK(w == doctest::Approx(2.33556365453).epsilon(1e-10));
  CHECK(w > 2.3355);
  // L -> infinity limit
  double lim = varIII_pressure_lower(0, 3, 0.25, 1e12);
  CHECK(lim == doctest::Approx(2 * std::sqrt(kPi) / (3 * 0.5)).epsilon(1e-10));
}

TEST_CASE("turning-angle pressure lower bound") {
  CHECK(turning_pressure_lower(3, 1.4199, 0, 0) == doctest::Approx(kPi / 1.4199).epsilon(1e-12));
  CHECK(turning_pressure_lower(3, 1.4199, 0, 0) >= 2.2125);
  CHECK(turning_pressure_lower(4, 0.7154, 0, 0) ==
        doctest::Approx(2 * kPi / (3 * 0.7154)).epsilon(1e-12));
  CHECK(turning_pressure_lower(4, 0.7154, 0, 0) > kK0 / 4);
  // n = 6: zero turning contribution, bound reduces to p_min
  CHECK(turning_pressure_lower(6, 2.0, 0, 0.37) == doctest::Approx(0.37).epsilon(1e-15));
}

TEST_CASE("component count estimate") {
  LowerEstimate le = lower_estimate(AreaVector{1, 1, 1, 1}, 0, 4);
  CHECK(le.mass_bound == doctest::Approx(20.0 / 9 / 256).epsilon(1e-13));
  CHECK(le.mass_bound == doctest::Approx(0.00868055555556).epsilon(1e-10));
  CHECK(le.component_cap == doctest::Approx(115.2).epsilon(1e-13));
  CHECK(le.total_cap == doctest::Approx(460.8).epsilon(1e-13));

  LowerEstimate l3 = lower_estimate(AreaVector{1, 1, 1}, 0, 3);
  CHECK(l3.total_cap == doctest::Approx(109.35).epsilon(1e-12));

  // caps are scale invariant
  LowerEstimate ls = lower_estimate(AreaVector{2, 2, 2, 2}, 0, 4);
  CHECK(ls.total_cap == doctest::Approx(le.total_cap).epsilon(1e-13));
  CHECK(ls.component_cap == doctest::Approx(le.component_cap).epsilon(1e-13));

  CHECK_THROWS_WITH_AS(lower_estimate(AreaVector{1, 1}, 0, 2), doctest::Contains("OutOfScope"),
                       Error);
}

TEST_CASE("double bubble pressure interval") {
  PressureInterval pi4 = double_bubble_pressure_bounds(AreaVector{1, 1, 1, 1}, 1, 2);
  CHECK(pi4.lower == doctest::Approx(k8_constant() / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(pi4.lower == doctest::Approx(0.917861246646).epsilon(1e-10));

  double k8 = k8_constant();
  PressureInterval sym = double_bubble_pressure_bounds(AreaVector{k8 * k8, k8 * k8}, 0, 1);
  CHECK(sym.lower == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(sym.upper == doctest::Approx(1.0).epsilon(1e-13));

  PressureInterval two = double_bubble_pressure_bounds(AreaVector{2, 1}, 0, 1);
  CHECK(two.lower == doctest::Approx(k8 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(two.upper == doctest::Approx(k8).epsilon(1e-14));

  CHECK_THROWS_AS(double_bubble_pressure_bounds(AreaVector{1, 1}, 0, 0), Error);
}

TEST_CASE("evaluators stay finite and nonnegative") {
  for (double a : log_grid(1e-4, 100, 30)) {
    CHECK(std::isfinite(varI_bound(a)));
    CHECK(varI_bound(a) >= 0);
    CHECK(std::isfinite(varII_mass_lower(a, 4, 50)));
    CHECK(std::isfinite(isop_lower_bound(AreaVector{a, 1})));
  }
}
