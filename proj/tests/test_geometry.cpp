#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bubbles/geometry.hpp"

using namespace bubbles;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

ArcPolygon unit_circle_two_halves() {
  DirectedArc a = make_arc({1, 0}, {-1, 0}, kPi);
  DirectedArc b = make_arc({-1, 0}, {1, 0}, kPi);
  return make_polygon({a, b});
}
}  // namespace

TEST_CASE("arc_length basics") {
  CHECK(arc_length(make_arc({1, 0}, {-1, 0}, kPi)) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(arc_length(make_arc({0, 0}, {3, 4}, 0.0)) == doctest::Approx(5.0).epsilon(1e-15));
  // major arc of the equal double bubble: R = 1, sweep 4π/3, chord √3
  double h = std::sqrt(3.0) / 2;
  DirectedArc outer = make_arc({0, -h}, {0, h}, -(2 * kPi - 2 * kPi / 3));
  CHECK(outer.radius() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(arc_length(outer) == doctest::Approx(4 * kPi / 3).epsilon(1e-14));
  CHECK_THROWS_WITH_AS(arc_length(DirectedArc{{1, 1}, {1, 1}, 0.3}), doctest::Contains("DegenerateArc"),
                       Error);
}

TEST_CASE("signed_area basics") {
  CHECK(signed_area(unit_circle_two_halves()) == doctest::Approx(kPi).epsilon(1e-14));
  ArcPolygon square = make_polygon({make_arc({0, 0}, {1, 0}, 0), make_arc({1, 0}, {1, 1}, 0),
                                    make_arc({1, 1}, {0, 1}, 0), make_arc({0, 1}, {0, 0}, 0)});
  CHECK(signed_area(square) == doctest::Approx(1.0).epsilon(1e-15));

  // one region of the equal double bubble with r = 1: 2π/3 + √3/4
  double h = std::sqrt(3.0) / 2;
  ArcPolygon lens = make_polygon({make_arc({0, -h}, {0, h}, 0),
                                  make_arc({0, h}, {0, -h}, 4 * kPi / 3)});
  CHECK(signed_area(lens) ==
        doctest::Approx(2 * kPi / 3 + std::sqrt(3.0) / 4).epsilon(1e-14));

  CHECK_THROWS_WITH_AS(make_polygon({make_arc({0, 0}, {1, 0}, 0)}),
                       doctest::Contains("OpenPath"), Error);
}

TEST_CASE("meeting_angle") {
  DirectedArc left = make_arc({0, 0}, {-1, 0}, 0);
  DirectedArc right = make_arc({0, 0}, {1, 0}, 0);
  CHECK(meeting_angle(left, right, {0, 0}) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(meeting_angle(right, right.reversed(), {0, 0}) == doctest::Approx(0.0));

  // equal double bubble vertex: three arcs pairwise at 2π/3
  double h = std::sqrt(3.0) / 2;
  Point top{0, h}, bot{0, -h};
  DirectedArc out1 = make_arc(bot, top, -(4 * kPi / 3));
  DirectedArc out2 = make_arc(top, bot, -(4 * kPi / 3));
  DirectedArc iface = make_arc(top, bot, 0.0);
  CHECK(meeting_angle(out1, out2, top) == doctest::Approx(2 * kPi / 3).epsilon(1e-12));
  CHECK(meeting_angle(out1, iface, top) == doctest::Approx(2 * kPi / 3).epsilon(1e-12));
  CHECK(meeting_angle(out2, iface, top) == doctest::Approx(2 * kPi / 3).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(meeting_angle(out1, out2, {5, 5}), doctest::Contains("NotIncident"),
                       Error);
}

TEST_CASE("scaling invariants") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> coord(-2.0, 2.0), turn(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    // closed 3-arc loop through random points
    Point a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)}, c{coord(rng), coord(rng)};
    if (norm(a - b) < 0.1 || norm(b - c) < 0.1 || norm(c - a) < 0.1) continue;
    ArcPolygon p = make_polygon({make_arc(a, b, turn(rng)), make_arc(b, c, turn(rng)),
                                 make_arc(c, a, turn(rng))});
    double t = 0.25 + 3.0 * (trial / 50.0);
    ArcPolygon q = p;
    for (auto& arc : q.arcs) {
      arc.start = arc.start * t;
      arc.end = arc.end * t;
    }
    CHECK(signed_area(q) == doctest::Approx(t * t * signed_area(p)).epsilon(1e-12));
    CHECK(perimeter(q) == doctest::Approx(t * perimeter(p)).epsilon(1e-12));
    // orientation antisymmetry
    CHECK(signed_area(reverse(p)) == doctest::Approx(-signed_area(p)).epsilon(1e-14));
  }
}

TEST_CASE("splitting an arc preserves length and area") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> coord(-2.0, 2.0), turn(-5.5, 5.5),
      cut(0.1, 0.9);
  for (int trial = 0; trial < 60; ++trial) {
    Point a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)};
    if (norm(a - b) < 0.1) continue;
    double s = turn(rng);
    if (std::abs(s) >= 2 * kPi) continue;
    DirectedArc arc = make_arc(a, b, s);
    double t = cut(rng);
    DirectedArc a1 = arc.subarc(0, t), a2 = arc.subarc(t, 1);
    CHECK(a1.length() + a2.length() == doctest::Approx(arc.length()).epsilon(1e-12));
    // area via a closing chord: polygon(a1,a2,chord) equals polygon(arc,chord)
    DirectedArc back = make_arc(b, a, 0.0);
    double area1 = signed_area(make_polygon({arc, back}));
    double area2 = signed_area(make_polygon({a1, a2, back}));
    CHECK(area2 == doctest::Approx(area1).epsilon(1e-12));
  }
}

TEST_CASE("n-arc subdivisions of a circle") {
  for (int n : {2, 3, 8}) {
    for (double r : {0.5, 1.0, 17.0}) {
      std::vector<DirectedArc> arcs;
      for (int k = 0; k < n; ++k) {
        double t0 = 2 * kPi * k / n, t1 = 2 * kPi * (k + 1) / n;
        arcs.push_back(make_arc({r * std::cos(t0), r * std::sin(t0)},
                                {r * std::cos(t1), r * std::sin(t1)}, 2 * kPi / n));
      }
      ArcPolygon p = make_polygon(arcs);
      CHECK(signed_area(p) == doctest::Approx(kPi * r * r).epsilon(1e-12));
      CHECK(perimeter(p) == doctest::Approx(2 * kPi * r).epsilon(1e-12));
    }
  }
}

TEST_CASE("near-straight arcs avoid cancellation") {
  // compare the series against a generous-precision midpoint rule at tiny turns
  for (double s : {1e-10, 1e-7, 1e-4, 0.05}) {
    DirectedArc a = make_arc({0, 0}, {2, 0}, s);
    // exact: L = c * (s/2)/sin(s/2); area = (c²/8)(s - sin s)/sin²(s/2)
    long double sl = s;
    long double len = 2.0L * (sl / 2) / std::sin(sl / 2);
    long double seg = (4.0L / 8) * (sl - std::sin(sl)) / (std::sin(sl / 2) * std::sin(sl / 2));
    CHECK(a.length() == doctest::Approx((double)len).epsilon(1e-13));
    CHECK(a.segment_area() == doctest::Approx((double)seg).epsilon(1e-10));
  }
}

TEST_CASE("point and tangent are consistent with endpoints") {
  DirectedArc a = make_arc({1, 2}, {-0.5, 0.3}, 2.2);
  CHECK(norm(a.point(0) - a.start) < 1e-14);
  CHECK(norm(a.point(1) - a.end) < 1e-13);
  // finite-difference tangent
  double eps = 1e-7;
  Point fd = (a.point(0.5 + eps) - a.point(0.5 - eps)) * (1.0 / (2 * eps * a.length()));
  Point tg = a.tangent(0.5);
  CHECK(norm(fd - tg) < 1e-6);
  CHECK(norm(tg) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("constructors reject invalid input") {
  CHECK_THROWS_AS(make_point(std::nan(""), 0.0), Error);
  CHECK_THROWS_AS(make_arc({0, 0}, {1, 0}, 2 * kPi), Error);
  CHECK_THROWS_WITH_AS(arc_from_curvature({0, 0}, {4, 0}, 1.0),
                       doctest::Contains("DegenerateArc"), Error);
}
