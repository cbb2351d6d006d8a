#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "bubbles/constructors.hpp"
#include "bubbles/topology.hpp"

using namespace bubbles;

namespace {

// attribute summary for the two-face region of an M=5 signature:
// (big edges, big external, small edges, small external, E0 degree)
struct CaseKey {
  int big_deg;
  bool big_ext;
  int small_deg;
  bool small_ext;
  int e0_deg;
  auto tie() const { return std::tuple(big_deg, big_ext, small_deg, small_ext, e0_deg); }
  bool operator<(const CaseKey& o) const { return tie() < o.tie(); }
};

CaseKey key_of(const TopologySignature& sig) {
  auto attrs = signature_attributes(sig);
  std::map<int, std::vector<FaceAttributes>> by_region;
  for (const auto& a : attrs) by_region[a.region].push_back(a);
  CaseKey k{};
  k.e0_deg = signature_external_degree(sig);
  for (auto& [reg, faces] : by_region) {
    if (faces.size() != 2) continue;
    for (const auto& f : faces) {
      if (f.big) {
        k.big_deg = f.edges;
        k.big_ext = f.external;
      } else {
        k.small_deg = f.edges;
        k.small_ext = f.external;
      }
    }
  }
  return k;
}

}  // namespace

TEST_CASE("euler counts") {
  CHECK(euler_counts(4) == std::pair{6, 9});
  CHECK(euler_counts(5) == std::pair{8, 12});
  CHECK(euler_counts(2) == std::pair{2, 3});
  CHECK_THROWS_AS(euler_counts(1), Error);
}

TEST_CASE("enumeration counts for connected cases") {
  CHECK(enumerate_topologies(2, 2, PredicateSet::base()).kept.size() == 1);
  CHECK(enumerate_topologies(3, 3, PredicateSet::base()).kept.size() == 1);
  CHECK(enumerate_topologies(4, 4, PredicateSet::base()).kept.size() == 2);
  // stable across repeat runs and serial/parallel
  auto a = enumerate_topologies(4, 4, PredicateSet::base(), true);
  auto b = enumerate_topologies(4, 4, PredicateSet::base(), false);
  CHECK(a.kept == b.kept);
  CHECK_THROWS_WITH_AS(enumerate_topologies(4, 7, PredicateSet::base()),
                       doctest::Contains("OutOfScope"), Error);
}

TEST_CASE("five-component classification") {
  EnumerationResult r = enumerate_topologies(4, 5, PredicateSet::paper());
  REQUIRE(r.kept.size() == 9);

  // hand-encoded case table: per case the edge counts and externality of the
  // disconnected region's big and small components and the E0 degree
  std::map<CaseKey, std::string> fixture = {
      {{4, true, 4, true, 4}, "A"},  {{4, true, 3, false, 3}, "B"},
      {{3, true, 4, true, 4}, "C"},  {{4, true, 3, true, 4}, "C'"},
      {{4, true, 3, true, 5}, "D"},  {{3, true, 4, true, 5}, "D'"},
      {{3, true, 3, true, 5}, "E"},  {{3, true, 3, false, 4}, "F"},
      {{3, false, 3, true, 4}, "F'"}};
  std::set<std::string> seen;
  for (const auto& sig : r.kept) {
    auto it = fixture.find(key_of(sig));
    REQUIRE_MESSAGE(it != fixture.end(), sig);
    CHECK_MESSAGE(!seen.count(it->second), "duplicate case " << it->second);
    seen.insert(it->second);
  }
  CHECK(seen.size() == 9);

  // the one excluded configuration is the internal-big variant
  REQUIRE(r.excluded_by.size() == 1);
  CHECK(r.excluded_by.begin()->second == "at-most-one-internal-big");

  // dropping that predicate strictly enlarges the output
  PredicateSet relaxed = PredicateSet::paper();
  relaxed.at_most_one_internal_big = false;
  EnumerationResult r2 = enumerate_topologies(4, 5, relaxed);
  CHECK(r2.kept.size() == 10);
  CHECK(r2.kept.size() > r.kept.size());
  for (const auto& s : r.kept)
    CHECK(std::find(r2.kept.begin(), r2.kept.end(), s) != r2.kept.end());
}

TEST_CASE("signatures of constructed clusters") {
  auto theta = enumerate_topologies(2, 2, PredicateSet::base());
  CHECK(signature_of(make_double_bubble(1, 1)) == theta.kept[0]);
  CHECK(signature_of(make_double_bubble(1.4, 0.7)) == theta.kept[0]);

  auto triple = enumerate_topologies(3, 3, PredicateSet::base());
  CHECK(signature_of(make_triple_bubble(1.0)) == triple.kept[0]);

  auto four = enumerate_topologies(4, 4, PredicateSet::base());
  TopologySignature sandwich = signature_of(make_sandwich(1, 1, 0.8, 0.8));
  TopologySignature flower = signature_of(make_flower_symmetric(2.0, 1.0));
  CHECK(sandwich != flower);
  CHECK(std::find(four.kept.begin(), four.kept.end(), sandwich) != four.kept.end());
  CHECK(std::find(four.kept.begin(), four.kept.end(), flower) != four.kept.end());
  // the competitor also has the sandwich topology
  CHECK(signature_of(make_competitor()) == sandwich);
  // geometry changes within the topology do not move the signature
  CHECK(signature_of(make_sandwich(1.1, 0.95, 0.82, 0.9)) == sandwich);

  // the flower's external region has three edges, the sandwich's four
  CHECK(signature_external_degree(flower) == 3);
  CHECK(signature_external_degree(sandwich) == 4);
}

TEST_CASE("signature invariance under relabeling of the cluster") {
  // permuting region ids and vertex order must not change the signature
  Cluster c = make_sandwich(1, 1, 0.85, 0.85);
  TopologySignature before = signature_of(c);

  Cluster p = c;
  // swap region ids 3 and 4 everywhere
  for (auto& e : p.edges) {
    auto swap34 = [](int& r) {
      if (r == 3) r = 4;
      else if (r == 4) r = 3;
    };
    swap34(e.left_region);
    swap34(e.right_region);
  }
  for (auto& f : p.faces) {
    if (f.region == 3) f.region = 4;
    else if (f.region == 4) f.region = 3;
  }
  std::swap(p.regions[3], p.regions[4]);
  std::swap(p.regions[3].id, p.regions[4].id);
  std::swap(p.regions[3].pressure, p.regions[4].pressure);
  CHECK(signature_of(p) == before);

  // mirror the geometry: reflection is part of the signature equivalence
  Cluster m = c;
  for (auto& v : m.vertices) v.x = -v.x;
  for (auto& e : m.edges) {
    e.turn = -e.turn;
    std::swap(e.left_region, e.right_region);
  }
  for (auto& f : m.faces) {
    std::reverse(f.loop.begin(), f.loop.end());
    for (auto& ref : f.loop) ref = -ref;
  }
  validate(m);
  CHECK(signature_of(m) == before);
}

TEST_CASE("every enumerated signature satisfies the active predicates") {
  // re-check the reported attributes post hoc on the M=5 paper set
  EnumerationResult r = enumerate_topologies(4, 5, PredicateSet::paper());
  for (const auto& sig : r.kept) {
    auto attrs = signature_attributes(sig);
    CHECK(attrs.size() == 5);
    int internal_big = 0;
    std::map<int, int> comp_count;
    for (const auto& a : attrs) {
      CHECK(a.edges >= 3);
      comp_count[a.region]++;
      if (a.big && !a.external) internal_big++;
    }
    CHECK(internal_big <= 1);
    // exactly one region has two components
    int twos = 0;
    for (auto& [reg, n] : comp_count)
      if (n == 2) twos++;
    CHECK(twos == 1);
    CHECK(comp_count.size() == 4);
  }
}

TEST_CASE("jsonl emission") {
  EnumerationResult r = enumerate_topologies(4, 4, PredicateSet::base());
  std::string out = enumeration_to_jsonl(r, 4, 4);
  CHECK(std::count(out.begin(), out.end(), '\n') == 2);
  CHECK(out.find("\"excluded_by\":null") != std::string::npos);
}
