#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bubbles/cluster.hpp"
#include "bubbles/constructors.hpp"

using namespace bubbles;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const double kK8sq = 2 * kPi / 3 + std::sqrt(3.0) / 4;
}  // namespace

TEST_CASE("double bubble areas and perimeter") {
  Cluster c = make_double_bubble(1, 1);
  CHECK(region_area(c, 1) == doctest::Approx(2.5274078042854148).epsilon(1e-13));
  CHECK(region_area(c, 2) == doctest::Approx(kK8sq).epsilon(1e-13));
  CHECK(cluster_perimeter(c) == doctest::Approx(10.109631217141714).epsilon(1e-13));
  CHECK(cluster_perimeter(c) == doctest::Approx(8 * kPi / 3 + std::sqrt(3.0)).epsilon(1e-13));
  CHECK_THROWS_WITH_AS(region_area(c, 0), doctest::Contains("ExternalRegionArea"), Error);

  // perimeter as half the sum of per-region boundary lengths
  double half_sum = 0;
  for (int id : {1, 2}) {
    for (size_t e = 0; e < c.edges.size(); ++e)
      if (c.edges[e].left_region == id || c.edges[e].right_region == id)
        half_sum += c.arc((int)e).length();
  }
  // external region boundary
  for (size_t e = 0; e < c.edges.size(); ++e)
    if (c.edges[e].left_region == 0 || c.edges[e].right_region == 0)
      half_sum += c.arc((int)e).length();
  CHECK(half_sum / 2 == doctest::Approx(cluster_perimeter(c)).epsilon(1e-14));
}

TEST_CASE("solve_pressures") {
  Cluster c = make_double_bubble(1, 1);
  PressureSolve ps = solve_pressures(c);
  CHECK(ps.pressures[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ps.pressures[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ps.max_residual < 1e-12);

  Cluster d = make_double_bubble(1, 0.8);
  ps = solve_pressures(d);
  CHECK(ps.pressures[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ps.pressures[2] == doctest::Approx(1.25).epsilon(1e-12));
  // interface curvature 1/r2 - 1/r1 = 0.25
  CHECK(d.arc(2).curvature() == doctest::Approx(0.25).epsilon(1e-12));

  // perturbing one curvature by 1e-3 must be detected
  Cluster p = make_double_bubble(1, 1);
  p.edges[2].turn += 1e-3 * p.arc(2).length();
  CHECK(solve_pressures(p).max_residual >= 1e-4);
}

TEST_CASE("check_stationary") {
  for (auto [r1, r2] : {std::pair{1.3, 0.7}, std::pair{1.0, 1.0}, std::pair{2.0, 0.4}}) {
    Cluster c = make_double_bubble(r1, r2);
    StationarityReport rep = check_stationary(c);
    CHECK(rep.max_angle_residual <= 1e-10);
    CHECK(rep.max_curvature_residual <= 1e-10);
    CHECK(rep.max_vertex_curvature_sum <= 1e-10);
    CHECK(rep.pass(1e-10));
  }

  // displaced vertex is detected; in the double bubble all three edges share
  // one chord so the angle gaps survive, but the curvatures cannot
  Cluster c = make_double_bubble(1, 1);
  c.vertices[0].y += 1e-3;
  StationarityReport rep = check_stationary(c);
  CHECK(rep.max_curvature_residual > 1e-4);
  CHECK_FALSE(rep.pass(1e-4));
  // in the triple bubble the displaced vertex breaks the angles themselves
  Cluster t3 = make_triple_bubble(1.0);
  t3.vertices[1].x += 1e-3;
  CHECK(check_stationary(t3).max_angle_residual > 1e-4);

  // competitor: angles fine, curvature-pressure fails
  Cluster comp = make_competitor();
  rep = check_stationary(comp);
  CHECK(rep.max_angle_residual <= 1e-12);
  CHECK(rep.max_curvature_residual == doctest::Approx(0.16247440675).epsilon(1e-8));
  CHECK_FALSE(rep.pass(1e-9));
}

TEST_CASE("degree-3 validation") {
  Cluster c = make_double_bubble(1, 1);
  c.edges.pop_back();  // vertex degree drops to 2
  c.faces.clear();
  CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("NotTrivalent"), Error);
}

TEST_CASE("turning angle residuals") {
  Cluster c = make_double_bubble(1, 1);
  // bounded region, n = 2: |4π/3 - (p1-p0)·L_outer| = 0
  CHECK(turning_angle_residual(c, 0) < 1e-12);
  CHECK(turning_angle_residual(c, 1) < 1e-12);
  // external form, n = 2: (6+2)π/3 = sum of both outer contributions
  CHECK(turning_angle_residual(c, -1) < 1e-12);

  Cluster np = c;
  for (auto& r : np.regions) r.pressure.reset();
  CHECK_THROWS_WITH_AS(turning_angle_residual(np, 0), doctest::Contains("PressuresUnset"),
                       Error);
}

TEST_CASE("pressure formula residual") {
  Cluster c = make_double_bubble(1, 1);
  CHECK(pressure_formula_residual(c) < 1e-10);
  double p = cluster_perimeter(c);
  CHECK(std::abs(p - 2 * (region_area(c, 1) + region_area(c, 2))) < 1e-10);

  double r = std::pow(kPi / 2 + 1 / std::sqrt(3.0), -0.5);
  Cluster tb = make_triple_bubble(r);
  CHECK(pressure_formula_residual(tb) < 1e-10);
  CHECK(cluster_perimeter(tb) == doctest::Approx(6 * (kPi / 2 + 1 / std::sqrt(3.0)) * r).epsilon(1e-12));
}

TEST_CASE("scale_cluster") {
  Cluster c = make_double_bubble(1.2, 0.9);
  Cluster s = scale_cluster(c, 2.0);
  CHECK(region_area(s, 1) == doctest::Approx(4 * region_area(c, 1)).epsilon(1e-12));
  CHECK(cluster_perimeter(s) == doctest::Approx(2 * cluster_perimeter(c)).epsilon(1e-12));
  CHECK(*s.regions[1].pressure == doctest::Approx(*c.regions[1].pressure / 2).epsilon(1e-12));
  CHECK(solve_pressures(s).pressures[2] ==
        doctest::Approx(solve_pressures(c).pressures[2] / 2).epsilon(1e-10));
  // identity
  Cluster id = scale_cluster(c, 1.0);
  CHECK(id.vertices[0].x == c.vertices[0].x);
}

TEST_CASE("json round trip is byte-identical") {
  for (const Cluster& c :
       {make_double_bubble(1.1, 0.8), make_triple_bubble(0.7), make_competitor(),
        make_sandwich(1, 1, 0.8, 0.8), make_flower_symmetric(2.0, 1.0)}) {
    std::string once = save_cluster_json(c);
    Cluster back = load_cluster_json(once);
    std::string twice = save_cluster_json(back);
    CHECK(once == twice);
    CHECK(back.edges.size() == c.edges.size());
    StationarityReport a = check_stationary(c), b = check_stationary(back);
    CHECK(a.max_angle_residual == doctest::Approx(b.max_angle_residual).epsilon(1e-12));
  }
}

TEST_CASE("load rejects broken clusters with the constraint named") {
  Cluster c = make_double_bubble(1, 1);
  std::string good = save_cluster_json(c);

  // break trivalence: drop an edge
  Cluster broken = c;
  broken.edges.erase(broken.edges.begin());
  broken.faces.clear();
  CHECK_THROWS_WITH_AS(load_cluster_json(save_cluster_json(broken)),
                       doctest::Contains("NotTrivalent"), Error);

  // break a face loop: drop one edge reference so the loop cannot chain
  Cluster open = c;
  open.faces[0].loop.pop_back();
  CHECK_THROWS_WITH_AS(load_cluster_json(save_cluster_json(open)),
                       doctest::Contains("OpenPath"), Error);
  CHECK_THROWS_AS(load_cluster_json("{}"), Error);
  CHECK(load_cluster_json(good).regions.size() == 3);

  // Euler violation: double bubble with a vertex deleted is unloadable
  CHECK_THROWS_AS(load_cluster_json("{\"regions\":[{\"id\":0,\"pressure\":null}],"
                                    "\"vertices\":[],\"edges\":[],\"components\":[]}"),
                  Error);
}

TEST_CASE("euler count validation") {
  Cluster c = make_sandwich(1, 1, 0.8, 0.8);
  CHECK(c.faces.size() == 4);
  CHECK(c.edges.size() == 9);
  CHECK(c.vertices.size() == 6);
  Cluster bad = c;
  bad.faces.push_back(bad.faces.back());
  CHECK_THROWS_AS(validate(bad), Error);
}
