#ifndef BUBBLES_TOPOLOGY_HPP
#define BUBBLES_TOPOLOGY_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bubbles/cluster.hpp"

namespace bubbles {

// Trivalent combinatorial map: darts 0..3V-1, vertex(d) = d/3, rotation
// rho(d) = next dart ccw at the vertex (fixed cyclic order within each
// vertex), edge pairing sigma (fixed-point free involution).
struct CombMap {
  int vertices = 0;
  std::vector<int> sigma;

  int darts() const { return 3 * vertices; }
  static int rho(int d) { return d - d % 3 + (d + 1) % 3; }
  std::vector<std::vector<int>> faces() const;  // orbits of sigma∘rho
};

// Canonical string of a labeled map (faces -> regions, external mark, big
// marks), minimized over root dart, reflection, and region relabeling.
using TopologySignature = std::string;

struct PredicateSet {
  bool min_edges_per_component = true;
  bool no_double_adjacency = true;
  bool external_region_connected = true;   // structural in this encoding
  bool max_edges_per_component = false;
  bool at_most_one_internal_big = false;
  bool small_components_external_with_4_edges = false;

  static PredicateSet base();
  static PredicateSet paper();
};

struct EnumerationResult {
  std::vector<TopologySignature> kept;                    // sorted
  std::map<TopologySignature, std::string> excluded_by;   // signature -> predicate
};

// vertices 2(M-1), edges 3(M-1)
std::pair<int, int> euler_counts(int components);

// Exhaustive enumeration of region-labeled trivalent planar maps with N
// regions and M bounded faces.  Requires 2 <= N <= M <= 6.
EnumerationResult enumerate_topologies(int regions, int components,
                                       const PredicateSet& preds,
                                       bool parallel = true);

TopologySignature signature_of(const Cluster& c);

// Attribute summary used by tests to match signatures against hand-encoded
// case tables: per bounded face (edge count, external?, big?, region index).
struct FaceAttributes {
  int edges = 0;
  bool external = false;
  bool big = false;
  int region = 0;
};
std::vector<FaceAttributes> signature_attributes(const TopologySignature& sig);
int signature_external_degree(const TopologySignature& sig);

std::string enumeration_to_jsonl(const EnumerationResult& r, int regions,
                                 int components);

}  // namespace bubbles

#endif
