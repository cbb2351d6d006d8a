#include <json.hpp>

#include "bubbles/cluster.hpp"

namespace bubbles {

using nlohmann::json;

std::string save_cluster_json(const Cluster& c) {
  json j;
  j["regions"] = json::array();
  for (const auto& r : c.regions) {
    json jr;
    jr["id"] = r.id;
    if (r.pressure) jr["pressure"] = *r.pressure;
    else jr["pressure"] = nullptr;
    j["regions"].push_back(jr);
  }
  j["vertices"] = json::array();
  for (size_t i = 0; i < c.vertices.size(); ++i)
    j["vertices"].push_back(
        {{"id", (int)i}, {"x", c.vertices[i].x}, {"y", c.vertices[i].y}});
  j["edges"] = json::array();
  for (const auto& e : c.edges)
    j["edges"].push_back({{"v_start", e.v_start},
                          {"v_end", e.v_end},
                          {"turn", e.turn},
                          {"left_region", e.left_region},
                          {"right_region", e.right_region}});
  j["components"] = json::array();
  for (const auto& f : c.faces) j["components"].push_back(f.loop);
  return j.dump(2) + "\n";
}

Cluster load_cluster_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& ex) {
    throw Error("BadJson", ex.what());
  }
  Cluster c;
  try {
    for (const auto& jr : j.at("regions")) {
      Region r;
      r.id = jr.at("id").get<int>();
      if (jr.contains("pressure") && !jr.at("pressure").is_null())
        r.pressure = jr.at("pressure").get<double>();
      c.regions.push_back(r);
    }
    std::vector<std::pair<int, Point>> verts;
    for (const auto& jv : j.at("vertices"))
      verts.push_back({jv.at("id").get<int>(),
                       make_point(jv.at("x").get<double>(), jv.at("y").get<double>())});
    c.vertices.resize(verts.size());
    for (auto& [id, p] : verts) {
      if (id < 0 || id >= (int)verts.size())
        throw Error("BadVertexIndex", "vertex ids must be 0..n-1");
      c.vertices[id] = p;
    }
    for (const auto& je : j.at("edges")) {
      Edge e;
      e.v_start = je.at("v_start").get<int>();
      e.v_end = je.at("v_end").get<int>();
      e.turn = je.at("turn").get<double>();
      e.left_region = je.at("left_region").get<int>();
      e.right_region = je.at("right_region").get<int>();
      c.edges.push_back(e);
    }
    for (const auto& jf : j.at("components")) {
      Face f;
      for (const auto& ref : jf) f.loop.push_back(ref.get<int>());
      c.faces.push_back(f);
    }
  } catch (const json::exception& ex) {
    throw Error("BadJson", ex.what());
  }
  // derive face regions from edge labels, then validate everything
  for (auto& f : c.faces) {
    if (f.loop.empty()) throw Error("OpenPath", "empty face loop");
    int ref = f.loop.front();
    int ei = std::abs(ref) - 1;
    if (ref == 0 || ei >= (int)c.edges.size())
      throw Error("BadEdgeRef", "face loop entry out of range");
    f.region = ref > 0 ? c.edges[ei].left_region : c.edges[ei].right_region;
  }
  validate(c);
  return c;
}

}  // namespace bubbles
