#include "bubbles/topology.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <sstream>

namespace bubbles {

namespace {

int sw_slot(int d) {
  static const int tab[3] = {0, 2, 1};
  return d - d % 3 + tab[d % 3];
}

std::vector<int> reflect_sigma(const std::vector<int>& sigma) {
  std::vector<int> sg(sigma.size());
  for (int d = 0; d < (int)sigma.size(); ++d) sg[sw_slot(d)] = sw_slot(sigma[d]);
  return sg;
}

std::vector<std::vector<int>> faces_of(const std::vector<int>& sigma) {
  int n = (int)sigma.size();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> faces;
  for (int d0 = 0; d0 < n; ++d0) {
    if (seen[d0]) continue;
    std::vector<int> f;
    int d = d0;
    while (!seen[d]) {
      seen[d] = true;
      f.push_back(d);
      d = sigma[CombMap::rho(d)];
    }
    faces.push_back(std::move(f));
  }
  return faces;
}

// attributes of one bounded face or the external face during canonicalization
struct FaceAttr {
  bool external = false;
  int region_key = 0;  // arbitrary id, canonicalized on encoding
  bool big = false;
  bool ext_adjacent = false;  // shares an edge with the external face
};

// Canonical integer encoding of (sigma, face attributes), minimized over the
// root dart and reflection; regions renumbered by first appearance.
std::vector<int> canon_encoding(const std::vector<int>& sigma,
                                const std::vector<FaceAttr>& attrs_by_orig_face) {
  int D = (int)sigma.size();
  auto orig_faces = faces_of(sigma);
  std::vector<int> orig_fid(D);
  for (int i = 0; i < (int)orig_faces.size(); ++i)
    for (int d : orig_faces[i]) orig_fid[d] = i;

  std::vector<int> best;
  std::vector<int> lab(D), inv(D);
  for (int refl = 0; refl < 2; ++refl) {
    std::vector<int> sg = refl ? reflect_sigma(sigma) : sigma;
    auto faces = faces_of(sg);
    std::vector<int> fid(D);
    for (int i = 0; i < (int)faces.size(); ++i)
      for (int d : faces[i]) fid[d] = i;
    // original face behind each face of sg
    std::vector<int> back(faces.size());
    for (int i = 0; i < (int)faces.size(); ++i) {
      int d = faces[i][0];
      back[i] = refl ? orig_fid[sigma[sw_slot(d)]] : orig_fid[d];
    }
    for (int root = 0; root < D; ++root) {
      std::fill(lab.begin(), lab.end(), -1);
      int nv = 0;
      auto discover = [&](int first) {
        int base = 3 * nv++;
        int d = first;
        for (int k = 0; k < 3; ++k) {
          lab[d] = base + k;
          inv[base + k] = d;
          d = CombMap::rho(d);
        }
      };
      discover(root);
      std::vector<int> enc;
      enc.reserve(D + 4 * (int)faces.size());
      for (int i = 0; i < D; ++i) {
        int partner = sg[inv[i]];
        if (lab[partner] < 0) discover(partner);
        enc.push_back(lab[partner]);
      }
      // faces in order of first appearance under the new labels
      std::vector<int> face_min(faces.size(), D);
      for (int i = 0; i < D; ++i) {
        int f = fid[inv[i]];
        if (i < face_min[f]) face_min[f] = i;
      }
      std::vector<int> order(faces.size());
      for (int i = 0; i < (int)order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return face_min[a] < face_min[b]; });
      std::map<int, int> regmap;
      for (int f : order) {
        const FaceAttr& at = attrs_by_orig_face[back[f]];
        int deg = (int)faces[f].size();
        if (at.external) {
          enc.push_back(-1);
          enc.push_back(deg);
          enc.push_back(0);
          enc.push_back(0);
        } else {
          auto [it, fresh] = regmap.try_emplace(at.region_key, (int)regmap.size());
          enc.push_back(it->second);
          enc.push_back(deg);
          enc.push_back(at.big ? 1 : 0);
          enc.push_back(at.ext_adjacent ? 1 : 0);
        }
      }
      if (best.empty() || enc < best) best = std::move(enc);
    }
  }
  return best;
}

std::string encoding_to_string(const std::vector<int>& enc, int darts) {
  std::ostringstream os;
  os << "m" << darts / 3 << ":";
  for (int i = 0; i < darts; ++i) os << enc[i] << (i + 1 < darts ? "." : "");
  os << "|";
  for (size_t i = darts; i < enc.size(); i += 4) {
    if (i > (size_t)darts) os << ",";
    if (enc[i] < 0)
      os << "x" << enc[i + 1];
    else
      os << "r" << enc[i] << (enc[i + 2] ? "+" : "-") << enc[i + 1]
         << (enc[i + 3] ? "e" : "i");
  }
  return os.str();
}

// BFS-canonical enumeration of fixed-point-free pairings with standard
// rotations: darts matched in increasing order, new vertices appearing in
// discovery order through their first dart.  Every connected trivalent map
// arises at least once; duplicates fall to canonical dedup.
void enum_sigma(int V, std::vector<int>& sigma, int nseen, int dmin,
                const std::function<void(const std::vector<int>&)>& emit) {
  int d = dmin;
  while (d < 3 * nseen && sigma[d] >= 0) ++d;
  if (d == 3 * nseen) {
    if (nseen == V) emit(sigma);
    return;
  }
  for (int e = d + 1; e < 3 * nseen; ++e) {
    if (sigma[e] < 0 && e / 3 != d / 3) {
      sigma[d] = e;
      sigma[e] = d;
      enum_sigma(V, sigma, nseen, d + 1, emit);
      sigma[d] = -1;
      sigma[e] = -1;
    }
  }
  if (nseen < V) {
    int e = 3 * nseen;
    sigma[d] = e;
    sigma[e] = d;
    enum_sigma(V, sigma, nseen + 1, d + 1, emit);
    sigma[d] = -1;
    sigma[e] = -1;
  }
}

struct PartialState {
  std::vector<int> sigma;
  int nseen = 1;
  int dmin = 0;
};

// snapshot the search frontier after `splits` pairings for parallel resume
void gather_subtrees(int V, std::vector<int>& sigma, int nseen, int dmin, int splits,
                     std::vector<PartialState>& out) {
  if (splits == 0) {
    out.push_back({sigma, nseen, dmin});
    return;
  }
  int d = dmin;
  while (d < 3 * nseen && sigma[d] >= 0) ++d;
  if (d == 3 * nseen) {
    out.push_back({sigma, nseen, dmin});
    return;
  }
  for (int e = d + 1; e < 3 * nseen; ++e) {
    if (sigma[e] < 0 && e / 3 != d / 3) {
      sigma[d] = e;
      sigma[e] = d;
      gather_subtrees(V, sigma, nseen, d + 1, splits - 1, out);
      sigma[d] = -1;
      sigma[e] = -1;
    }
  }
  if (nseen < V) {
    int e = 3 * nseen;
    sigma[d] = e;
    sigma[e] = d;
    gather_subtrees(V, sigma, nseen + 1, d + 1, splits - 1, out);
    sigma[d] = -1;
    sigma[e] = -1;
  }
}

struct Accum {
  std::set<std::string> kept;
  std::map<std::string, std::string> excluded;
};

// set partitions of `items` into exactly n blocks, no two adjacent items in a
// block (adjacency via shared edge counts)
void partitions_rec(const std::vector<int>& items, size_t idx, int n,
                    const std::vector<std::vector<int>>& shared,
                    std::vector<std::vector<int>>& blocks,
                    const std::function<void()>& emit) {
  if (idx == items.size()) {
    if ((int)blocks.size() == n) emit();
    return;
  }
  if ((int)(items.size() - idx) < n - (int)blocks.size()) return;
  int f = items[idx];
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    bool clash = false;
    for (int g : blocks[bi])
      if (shared[f][g] > 0) { clash = true; break; }
    if (clash) continue;
    blocks[bi].push_back(f);
    partitions_rec(items, idx + 1, n, shared, blocks, emit);
    blocks[bi].pop_back();
  }
  if ((int)blocks.size() < n) {
    blocks.push_back({f});
    partitions_rec(items, idx + 1, n, shared, blocks, emit);
    blocks.pop_back();
  }
}

void process_sigma(const std::vector<int>& sigma, int N, int M,
                   const PredicateSet& preds, Accum& acc) {
  auto faces = faces_of(sigma);
  if ((int)faces.size() != M + 1) return;  // genus 0 has exactly M+1 faces
  int D = (int)sigma.size();
  std::vector<int> fid(D);
  for (int i = 0; i < (int)faces.size(); ++i)
    for (int d : faces[i]) fid[d] = i;
  for (int d = 0; d < D; ++d)
    if (fid[d] == fid[sigma[d]]) return;  // bridge

  int nf = (int)faces.size();
  std::vector<std::vector<int>> shared(nf, std::vector<int>(nf, 0));
  for (int d = 0; d < D; ++d) {
    if (d < sigma[d]) {
      shared[fid[d]][fid[sigma[d]]]++;
      shared[fid[sigma[d]]][fid[d]]++;
    }
  }
  if (preds.min_edges_per_component && N >= 3) {
    for (const auto& f : faces)
      if ((int)f.size() < 3) return;
  }
  if (preds.no_double_adjacency) {
    for (int i = 0; i < nf; ++i)
      for (int j = i + 1; j < nf; ++j)
        if (shared[i][j] > 1) return;
  }

  for (int ext = 0; ext < nf; ++ext) {
    std::vector<int> bounded;
    for (int i = 0; i < nf; ++i)
      if (i != ext) bounded.push_back(i);
    std::vector<std::vector<int>> blocks;
    partitions_rec(
        bounded, 0, N, shared, blocks, [&]() {
          // big designations: one per block
          std::vector<int> choice(blocks.size(), 0);
          while (true) {
            std::set<int> bigset;
            for (size_t b = 0; b < blocks.size(); ++b)
              bigset.insert(blocks[b][choice[b]]);

            auto internal = [&](int f) { return shared[f][ext] == 0; };
            std::string failed;
            if (preds.max_edges_per_component) {
              for (const auto& b : blocks) {
                int k = (int)b.size();
                for (int f : b) {
                  int cap = internal(f) ? (M - k) : (M + 1 - k);
                  if ((int)faces[f].size() > cap) failed = "max-edges-per-component";
                }
              }
              if ((int)faces[ext].size() > M) failed = "max-edges-per-component";
            }
            if (failed.empty() && preds.at_most_one_internal_big) {
              int nbig_int = 0;
              for (int f : bigset)
                if (internal(f)) nbig_int++;
              if (nbig_int > 1) failed = "at-most-one-internal-big";
            }
            if (failed.empty() && preds.small_components_external_with_4_edges) {
              std::vector<int> smalls;
              for (int f : bounded)
                if (!bigset.count(f)) smalls.push_back(f);
              if ((int)smalls.size() > 2)
                failed = "small-components-external-with-4-edges";
              else if (smalls.size() == 2) {
                bool same_region = false;
                for (const auto& b : blocks) {
                  int cnt = 0;
                  for (int f : b)
                    if (!bigset.count(f)) cnt++;
                  if (cnt == 2) same_region = true;
                }
                for (int f : smalls) {
                  int nadj = 0;
                  for (int j = 0; j < nf; ++j)
                    if (j != f && shared[f][j] > 0) nadj++;
                  int deg = (int)faces[f].size();
                  if (internal(f) || nadj < N + 1 ||
                      (same_region && deg != 4) ||
                      (!same_region && deg != 4 && deg != 5))
                    failed = "small-components-external-with-4-edges";
                }
              }
            }

            std::vector<FaceAttr> attrs(nf);
            attrs[ext].external = true;
            for (size_t b = 0; b < blocks.size(); ++b)
              for (int f : blocks[b]) {
                attrs[f].region_key = (int)b + 1;
                attrs[f].big = bigset.count(f) > 0;
                attrs[f].ext_adjacent = shared[f][ext] > 0;
              }
            std::string sig =
                encoding_to_string(canon_encoding(sigma, attrs), D);
            if (failed.empty()) acc.kept.insert(sig);
            else acc.excluded.emplace(sig, failed);

            // next big choice
            size_t b = 0;
            for (; b < blocks.size(); ++b) {
              if (++choice[b] < (int)blocks[b].size()) break;
              choice[b] = 0;
            }
            if (b == blocks.size()) break;
          }
        });
  }
}

}  // namespace

std::vector<std::vector<int>> CombMap::faces() const { return faces_of(sigma); }

PredicateSet PredicateSet::base() { return PredicateSet{}; }

PredicateSet PredicateSet::paper() {
  PredicateSet p;
  p.max_edges_per_component = true;
  p.at_most_one_internal_big = true;
  p.small_components_external_with_4_edges = true;
  return p;
}

std::pair<int, int> euler_counts(int components) {
  if (components < 2) throw Error("InvalidParameter", "need M >= 2");
  return {2 * (components - 1), 3 * (components - 1)};
}

EnumerationResult enumerate_topologies(int regions, int components,
                                       const PredicateSet& preds, bool parallel) {
  if (components > 6) throw Error("OutOfScope", "enumeration supports M <= 6");
  if (regions < 2 || regions > components)
    throw Error("InvalidParameter", "need 2 <= N <= M");
  int V = 2 * (components - 1);
  std::vector<int> sigma(3 * V, -1);

  std::vector<PartialState> parts;
  gather_subtrees(V, sigma, 1, 0, V >= 8 ? 4 : 0, parts);

  std::vector<Accum> accs(parts.size());
  if (parallel) {
#ifdef BUBBLES_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < (long)parts.size(); ++i) {
      std::vector<int> s = parts[i].sigma;
      enum_sigma(V, s, parts[i].nseen, parts[i].dmin,
                 [&](const std::vector<int>& full) {
                   process_sigma(full, regions, components, preds, accs[i]);
                 });
    }
  } else {
    for (size_t i = 0; i < parts.size(); ++i) {
      std::vector<int> s = parts[i].sigma;
      enum_sigma(V, s, parts[i].nseen, parts[i].dmin,
                 [&](const std::vector<int>& full) {
                   process_sigma(full, regions, components, preds, accs[i]);
                 });
    }
  }
  Accum total;
  for (auto& a : accs) {
    total.kept.insert(a.kept.begin(), a.kept.end());
    total.excluded.insert(a.excluded.begin(), a.excluded.end());
  }
  // a signature kept under one labeling cannot also be excluded (predicates
  // are isomorphism-invariant); drop any kept duplicates defensively
  for (const auto& s : total.kept) total.excluded.erase(s);
  EnumerationResult out;
  out.kept.assign(total.kept.begin(), total.kept.end());
  out.excluded_by = std::move(total.excluded);
  return out;
}

TopologySignature signature_of(const Cluster& c) {
  validate(c);
  int V = (int)c.vertices.size();
  // darts: 3 per vertex, ccw by outgoing tangent angle
  struct Out {
    double angle;
    int edge;
    bool fwd;
  };
  std::vector<std::vector<Out>> at(V);
  for (size_t e = 0; e < c.edges.size(); ++e) {
    DirectedArc a = c.arc((int)e);
    Point t0 = a.tangent(0.0), t1 = a.reversed().tangent(0.0);
    at[c.edges[e].v_start].push_back({std::atan2(t0.y, t0.x), (int)e, true});
    at[c.edges[e].v_end].push_back({std::atan2(t1.y, t1.x), (int)e, false});
  }
  std::vector<int> sigma(3 * V, -1);
  std::map<std::pair<int, bool>, int> dart_of;  // (edge, fwd at its start?) -> dart
  for (int v = 0; v < V; ++v) {
    if (at[v].size() != 3) throw Error("NotTrivalent", "vertex " + std::to_string(v));
    std::sort(at[v].begin(), at[v].end(),
              [](const Out& a, const Out& b) { return a.angle < b.angle; });
    for (int k = 0; k < 3; ++k) dart_of[{at[v][k].edge, at[v][k].fwd}] = 3 * v + k;
  }
  for (size_t e = 0; e < c.edges.size(); ++e) {
    int d1 = dart_of.at({(int)e, true}), d2 = dart_of.at({(int)e, false});
    sigma[d1] = d2;
    sigma[d2] = d1;
  }

  auto faces = faces_of(sigma);
  // region of each orbit: constant across its darts (side of the traversal)
  std::vector<FaceAttr> attrs(faces.size());
  std::map<int, std::pair<double, int>> biggest;  // region -> (area, face idx in orbit list)
  for (size_t i = 0; i < faces.size(); ++i) {
    int d = faces[i][0];
    int v = d / 3;
    const Out& o = at[v][d % 3];
    int reg = o.fwd ? c.edges[o.edge].left_region : c.edges[o.edge].right_region;
    attrs[i].external = reg == 0;
    attrs[i].region_key = reg;
  }
  for (size_t i = 0; i < faces.size(); ++i) {
    if (attrs[i].external) continue;
    // area of the face: match to the cluster face with the same edge set
    std::set<int> edge_set;
    for (int d : faces[i]) {
      int v = d / 3;
      edge_set.insert(at[v][d % 3].edge);
    }
    double area = 0.0;
    bool found = false;
    for (size_t f = 0; f < c.faces.size(); ++f) {
      std::set<int> es;
      for (int ref : c.faces[f].loop) es.insert(std::abs(ref) - 1);
      if (es == edge_set) {
        area = std::abs(signed_area(c.face_polygon((int)f)));
        found = true;
        break;
      }
    }
    if (!found) throw Error("InternalError", "face orbit has no cluster face");
    auto it = biggest.find(attrs[i].region_key);
    if (it == biggest.end() || area > it->second.first)
      biggest[attrs[i].region_key] = {area, (int)i};
  }
  for (auto& [reg, pr] : biggest) attrs[pr.second].big = true;
  int extface = -1;
  for (size_t i = 0; i < faces.size(); ++i)
    if (attrs[i].external) extface = (int)i;
  std::vector<int> fid2(sigma.size());
  for (size_t i = 0; i < faces.size(); ++i)
    for (int d : faces[i]) fid2[d] = (int)i;
  for (int d = 0; d < (int)sigma.size(); ++d)
    if (fid2[sigma[d]] == extface && fid2[d] != extface)
      attrs[fid2[d]].ext_adjacent = true;
  return encoding_to_string(canon_encoding(sigma, attrs), 3 * V);
}

std::vector<FaceAttributes> signature_attributes(const TopologySignature& sig) {
  auto bar = sig.find('|');
  if (bar == std::string::npos) throw Error("BadSignature", sig);
  std::vector<FaceAttributes> out;
  std::string rest = sig.substr(bar + 1);
  std::istringstream is(rest);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    if (tok[0] == 'x') continue;
    FaceAttributes fa;
    size_t i = 1, j = i;
    while (j < tok.size() && std::isdigit((unsigned char)tok[j])) ++j;
    fa.region = std::stoi(tok.substr(i, j - i));
    fa.big = tok[j] == '+';
    size_t k = j + 1, k2 = k;
    while (k2 < tok.size() && std::isdigit((unsigned char)tok[k2])) ++k2;
    fa.edges = std::stoi(tok.substr(k, k2 - k));
    fa.external = k2 < tok.size() && tok[k2] == 'e';
    out.push_back(fa);
  }
  return out;
}

int signature_external_degree(const TopologySignature& sig) {
  auto bar = sig.find('|');
  if (bar == std::string::npos) throw Error("BadSignature", sig);
  std::string rest = sig.substr(bar + 1);
  std::istringstream is(rest);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (!tok.empty() && tok[0] == 'x') return std::stoi(tok.substr(1));
  }
  throw Error("BadSignature", "no external face token");
}

std::string enumeration_to_jsonl(const EnumerationResult& r, int regions,
                                 int components) {
  std::ostringstream os;
  for (const auto& s : r.kept) {
    nlohmann::json j = {{"signature", s},
                        {"regions", regions},
                        {"components", components},
                        {"excluded_by", nullptr}};
    os << j.dump() << "\n";
  }
  for (const auto& [s, why] : r.excluded_by) {
    nlohmann::json j = {{"signature", s},
                        {"regions", regions},
                        {"components", components},
                        {"excluded_by", why}};
    os << j.dump() << "\n";
  }
  return os.str();
}

}  // namespace bubbles
