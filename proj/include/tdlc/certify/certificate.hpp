#pragma once

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tdlc/complex/checks.hpp"
#include "tdlc/certify/links.hpp"
#include "tdlc/homology/chain.hpp"

namespace tdlc::certify {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCertificateSchema = "tdlc-certificate/1";

inline std::vector<std::string> default_conventions() {
  return {
      "permutations act on the right: (a*b)(x) = b(a(x)); cycle notation is 1-based",
      "vertices are right cosets H_i x, numbered part-major, cosets ordered by least representative",
      "edges and triangles are oriented by increasing vertex index",
      "groups act on cosets by right multiplication",
  };
}

struct Environment {
  std::string group;
  std::uint64_t group_order = 0;
  /// Generators of each subgroup in cycle notation.
  std::vector<std::vector<std::string>> subgroup_generators;
  std::string acting_group;
  std::uint64_t acting_group_order = 0;
  std::vector<std::string> conventions = default_conventions();
};

/// Orbit counts under a subgroup of the acting group, reported for comparison.
struct SubgroupOrbits {
  std::string description;
  std::uint64_t order = 0;
  std::size_t directed_edge_orbits = 0;
  std::size_t triangle_orbits = 0;
};

struct Conclusion {
  std::string statement;
  bool derived = false;
  std::vector<std::string> premises;
  std::vector<std::string> citations;
};

/// Checked premises and the conclusions that follow from cited theorems.
struct Certificate {
  Environment environment;

  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t triangles = 0;

  bool connected = false;
  std::size_t components = 0;
  bool flag = false;
  std::vector<Vertex> flag_witness;
  bool every_edge_in_triangle = false;
  std::optional<Edge> uncovered_edge;

  // premises that need the action; empty when no action is attached
  bool action_evaluated = false;
  std::optional<std::size_t> directed_edge_orbits;
  std::optional<bool> edge_swap;
  std::optional<Edge> edge_swap_failure;
  std::optional<bool> edge_swap_or_transitive;
  std::optional<std::size_t> triangle_orbits;
  std::optional<SubgroupOrbits> subgroup_orbits;

  std::optional<std::size_t> min_link_girth;  // nullopt: every link is a forest
  std::optional<Vertex> min_link_girth_vertex;
  bool link_girth_at_least_6 = false;

  homology::HomologyGroup h0;
  homology::HomologyGroup h1;
  homology::HomologyGroup h2;
  bool h1_trivial = false;

  bool bounded = true;

  Conclusion npc;
  Conclusion not_simply_connected;
  Conclusion bb_fp2_not_fp;

  /// Every premise checked and true.
  bool all_premises() const {
    return action_evaluated && connected && flag && every_edge_in_triangle && edge_swap_or_transitive.value_or(false) &&
           link_girth_at_least_6 && h1_trivial;
  }
};

namespace detail {

inline Conclusion conclude(std::string statement, std::vector<std::pair<std::string, bool>> premises,
                           std::vector<std::string> citations, bool complete) {
  Conclusion c;
  c.statement = std::move(statement);
  c.citations = std::move(citations);
  c.derived = complete;
  for (auto& [name, ok] : premises) {
    c.premises.push_back(name);
    c.derived = c.derived && ok;
  }
  return c;
}

}  // namespace detail

/// Recomputes the conclusions from the premise fields. A conclusion is
/// derived only when every listed premise holds and no premise was skipped.
inline void derive_conclusions(Certificate& c) {
  const bool complete = c.action_evaluated;
  c.npc = detail::conclude("L has non-positive curvature", {{"flag", c.flag}, {"min_link_girth>=6", c.link_girth_at_least_6}},
                           {"Bridson-Haefliger, Chapter II, Proposition 5.25 (link condition for 2-dimensional complexes)"},
                           complete);
  c.not_simply_connected = detail::conclude(
      "L is not simply connected",
      {{"npc", c.npc.derived}, {"bounded", c.bounded}, {"every_edge_in_triangle", c.every_edge_in_triangle}},
      {"Cartan-Hadamard theorem (universal cover is CAT(0))",
       "Bridson-Haefliger, Chapter II, Proposition 5.10 (geodesic extension; recorded as citation only)",
       "Bridson-Haefliger, Chapter II, Proposition 5.8 (geodesic lines in the universal cover)"},
      complete);
  c.bb_fp2_not_fp = detail::conclude(
      "H_L is FP_2 over Z and not finitely presented",
      {{"connected", c.connected}, {"h1_trivial", c.h1_trivial}, {"not_simply_connected", c.not_simply_connected.derived}},
      {"Bestvina-Brady Main Theorem: H_L is FP_2 iff L is homologically 1-connected; "
       "H_L is finitely presented if and only if L is simply connected"},
      complete);
}

/// Runs every check on c. The action, when present, feeds the orbit and
/// edge-swap premises; without it those are marked not evaluated.
inline Certificate certify(const complex::Complex2D& c, Environment env = {}) {
  Certificate cert;
  cert.environment = std::move(env);
  cert.vertices = c.vertex_count();
  cert.edges = c.graph().edge_count();
  cert.triangles = c.triangles().size();

  cert.components = connected_components(c.graph());
  cert.connected = cert.components == 1;
  const auto flag = complex::is_flag(c);
  cert.flag = flag.flag;
  cert.flag_witness = flag.witness;
  const auto cover = complex::every_edge_in_triangle(c);
  cert.every_edge_in_triangle = cover.covered;
  cert.uncovered_edge = cover.uncovered;

  if (c.action()) {
    cert.action_evaluated = true;
    cert.directed_edge_orbits = complex::directed_edge_orbits(c);
    const auto swap = complex::check_edge_swap(c);
    cert.edge_swap = swap.holds;
    cert.edge_swap_failure = swap.failing_edge;
    cert.edge_swap_or_transitive = *cert.directed_edge_orbits == 1 || swap.holds;
    cert.triangle_orbits = complex::triangle_orbits(c).size();
  }

  const auto links = all_link_girths(c);
  cert.min_link_girth = links.minimum;
  cert.min_link_girth_vertex = links.attained_at;
  // a forest link has no closed loop at all, so it satisfies the bound
  cert.link_girth_at_least_6 = !links.minimum || *links.minimum >= 6;

  const auto h = homology::compute_homology(c);
  cert.h0 = h.h[0];
  cert.h1 = h.h[1];
  cert.h2 = h.h[2];
  cert.h1_trivial = cert.h1.trivial();

  derive_conclusions(cert);
  return cert;
}

// ---- serialization ----

namespace detail {

inline Json integer_json(const homology::Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

inline Json homology_json(const homology::HomologyGroup& h) {
  Json t = Json::array();
  for (const auto& x : h.torsion) t.push_back(integer_json(x));
  return Json{{"betti", h.betti}, {"torsion", t}, {"group", h.to_string()}};
}

inline Json edge_json(const std::optional<Edge>& e) {
  if (!e) return nullptr;
  return Json::array({e->first, e->second});
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  return Json(*v);
}

inline Json conclusion_json(const Conclusion& c) {
  return Json{{"statement", c.statement},
              {"derived", c.derived},
              {"kind", "derived from cited theorems"},
              {"premises", c.premises},
              {"citations", c.citations}};
}

inline std::string status(bool evaluated, bool value) {
  if (!evaluated) return "not evaluated";
  return value ? "pass" : "fail";
}

}  // namespace detail

inline Json to_json(const Certificate& c) {
  using namespace detail;
  Json env{{"group", c.environment.group},
           {"group_order", c.environment.group_order},
           {"subgroup_generators", c.environment.subgroup_generators},
           {"acting_group", c.environment.acting_group},
           {"acting_group_order", c.environment.acting_group_order},
           {"conventions", c.environment.conventions}};
  Json counts{{"vertices", c.vertices}, {"edges", c.edges}, {"triangles", c.triangles}};
  Json premises;
  premises["connected"] = Json{{"status", status(true, c.connected)}, {"components", c.components}};
  premises["flag"] = Json{{"status", status(true, c.flag)}, {"witness", c.flag_witness}};
  premises["every_edge_in_triangle"] =
      Json{{"status", status(true, c.every_edge_in_triangle)}, {"uncovered_edge", edge_json(c.uncovered_edge)}};
  premises["edge_swap_or_transitive"] =
      Json{{"status", status(c.action_evaluated, c.edge_swap_or_transitive.value_or(false))},
           {"directed_edge_orbits", optional_json(c.directed_edge_orbits)},
           {"edge_swap", optional_json(c.edge_swap)},
           {"edge_swap_failure", edge_json(c.edge_swap_failure)}};
  premises["min_link_girth"] = Json{{"status", status(true, c.link_girth_at_least_6)},
                                    {"value", c.min_link_girth ? Json(*c.min_link_girth) : Json("infinity")},
                                    {"attained_at", optional_json(c.min_link_girth_vertex)},
                                    {"required", 6}};
  premises["h1_trivial"] = Json{{"status", status(true, c.h1_trivial)}};
  premises["bounded"] = Json{{"status", status(true, c.bounded)}, {"reason", "finite complex"}};

  Json orbits{{"triangle_orbits", optional_json(c.triangle_orbits)}};
  if (c.subgroup_orbits) {
    orbits["subgroup"] = Json{{"description", c.subgroup_orbits->description},
                              {"order", c.subgroup_orbits->order},
                              {"directed_edge_orbits", c.subgroup_orbits->directed_edge_orbits},
                              {"triangle_orbits", c.subgroup_orbits->triangle_orbits}};
  } else {
    orbits["subgroup"] = nullptr;
  }

  return Json{{"schema", kCertificateSchema},
              {"environment", env},
              {"counts", counts},
              {"premises", premises},
              {"homology", Json{{"H0", homology_json(c.h0)}, {"H1", homology_json(c.h1)}, {"H2", homology_json(c.h2)}}},
              {"orbits", orbits},
              {"conclusions", Json{{"npc", conclusion_json(c.npc)},
                                   {"not_simply_connected", conclusion_json(c.not_simply_connected)},
                                   {"bb_fp2_not_fp", conclusion_json(c.bb_fp2_not_fp)}}},
              {"all_premises", c.all_premises()}};
}

/// Human-readable report; every number in it also appears in to_json().
inline std::string to_text(const Certificate& c) {
  using detail::status;
  std::ostringstream out;
  auto opt = [](const auto& v) -> std::string { return v ? std::to_string(*v) : std::string("-"); };
  out << "certificate (" << kCertificateSchema << ")\n";
  if (!c.environment.group.empty()) {
    out << "group: " << c.environment.group << " (order " << c.environment.group_order << ")\n";
  }
  if (!c.environment.acting_group.empty()) {
    out << "acting group: " << c.environment.acting_group << " (order " << c.environment.acting_group_order << ")\n";
  }
  out << "vertices: " << c.vertices << "\nedges: " << c.edges << "\ntriangles: " << c.triangles << "\n";
  out << "premises (checked):\n";
  out << "  connected: " << status(true, c.connected) << " (components " << c.components << ")\n";
  out << "  flag: " << status(true, c.flag) << "\n";
  out << "  every edge in a triangle: " << status(true, c.every_edge_in_triangle) << "\n";
  out << "  edge swap or transitive: " << status(c.action_evaluated, c.edge_swap_or_transitive.value_or(false))
      << " (directed edge orbits " << opt(c.directed_edge_orbits) << ", edge swap "
      << (c.edge_swap ? (*c.edge_swap ? "true" : "false") : "-") << ")\n";
  out << "  min link girth: " << (c.min_link_girth ? std::to_string(*c.min_link_girth) : "infinity")
      << " (required 6): " << status(true, c.link_girth_at_least_6) << "\n";
  out << "  H1 trivial: " << status(true, c.h1_trivial) << "\n";
  out << "  bounded: " << status(true, c.bounded) << "\n";
  out << "homology: H0 = " << c.h0.to_string() << ", H1 = " << c.h1.to_string() << ", H2 = " << c.h2.to_string() << "\n";
  out << "triangle orbits: " << opt(c.triangle_orbits) << "\n";
  if (c.subgroup_orbits) {
    out << "under " << c.subgroup_orbits->description << " (order " << c.subgroup_orbits->order
        << "): directed edge orbits " << c.subgroup_orbits->directed_edge_orbits << ", triangle orbits "
        << c.subgroup_orbits->triangle_orbits << "\n";
  }
  out << "conclusions (derived from cited theorems):\n";
  for (const Conclusion* k : {&c.npc, &c.not_simply_connected, &c.bb_fp2_not_fp}) {
    out << "  " << k->statement << ": " << (k->derived ? "derived" : "not derived") << "\n";
    for (const auto& cite : k->citations) out << "    cites " << cite << "\n";
  }
  return out.str();
}

}  // namespace tdlc::certify
