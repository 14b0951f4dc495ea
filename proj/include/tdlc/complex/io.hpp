#pragma once

#include <json.hpp>

#include "tdlc/complex/complex2d.hpp"

namespace tdlc::complex {

inline constexpr const char* kComplexSchema = "tdlc-complex/1";

/// Edges, triangles, parts and action generators (as image arrays).
inline nlohmann::ordered_json complex_to_json(const Complex2D& c) {
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (auto [u, v] : c.graph().edges()) edges.push_back({u, v});
  nlohmann::ordered_json triangles = nlohmann::ordered_json::array();
  for (const auto& t : c.triangles()) triangles.push_back({t[0], t[1], t[2]});
  nlohmann::ordered_json action = nullptr;
  if (c.action()) {
    action = nlohmann::ordered_json::array();
    for (const auto& g : c.action()->generators()) action.push_back(g.images());
  }
  return {{"schema", kComplexSchema},
          {"vertices", c.vertex_count()},
          {"parts", c.parts()},
          {"edges", edges},
          {"triangles", triangles},
          {"action_generators", action}};
}

inline Complex2D complex_from_json(const nlohmann::ordered_json& j) {
  try {
    if (j.at("schema") != kComplexSchema) throw InputError("unknown complex schema");
    const auto n = j.at("vertices").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      const auto u = e.at(0).get<Vertex>();
      const auto v = e.at(1).get<Vertex>();
      if (u >= n || v >= n || u == v) throw InputError("bad edge in complex");
      edges.emplace_back(u, v);
    }
    std::vector<Triangle> triangles;
    for (const auto& t : j.at("triangles")) {
      Triangle tri{t.at(0).get<Vertex>(), t.at(1).get<Vertex>(), t.at(2).get<Vertex>()};
      for (Vertex v : tri) {
        if (v >= n) throw InputError("bad triangle in complex");
      }
      triangles.push_back(tri);
    }
    Complex2D c(Graph(n, std::move(edges)), std::move(triangles), j.at("parts").get<std::vector<std::uint32_t>>());
    if (j.at("action_generators").is_null()) return c;
    std::vector<perm::Permutation> gens;
    for (const auto& g : j.at("action_generators")) gens.emplace_back(g.get<std::vector<perm::Point>>());
    return c.with_action(perm::PermGroup(n, std::move(gens)));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed complex JSON: ") + e.what());
  }
}

}  // namespace tdlc::complex
