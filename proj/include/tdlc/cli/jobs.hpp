#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdlc/certify/certificate.hpp"
#include "tdlc/certify/triple_search.hpp"
#include "tdlc/cli/config.hpp"
#include "tdlc/complex/coset_complex.hpp"
#include "tdlc/complex/io.hpp"
#include "tdlc/raag/bestvina_brady.hpp"
#include "tdlc/tree/universal.hpp"

namespace tdlc::cli {

using Json = nlohmann::ordered_json;

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"build", "certify", "homology", "links", "raag-check", "tree-check", "search-subgroups"};
  return names;
}

struct Artifact {
  std::string name;
  std::string content;
};

struct RunResult {
  int exit_code = 0;  // 0: every requested check passed, 1: some check failed
  Json json;
  std::string report;
};

struct RunOptions {
  /// Directory that relative complex paths are resolved against.
  std::filesystem::path base_dir = ".";
  std::function<void(const std::string&)> log;
};

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// The JSON artifact and the text report, named from the config or after the command.
inline std::vector<Artifact> artifacts(const std::string& cmd, const JobConfig& cfg, const RunResult& r) {
  return {{cfg.output.json.empty() ? cmd + ".json" : cfg.output.json, dump(r.json)},
          {cfg.output.report.empty() ? cmd + ".txt" : cfg.output.report, r.report}};
}

/// Writes via a temporary file in the same directory and a rename.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace detail {

inline Json header(const std::string& kind) {
  return Json{{"schema", "tdlc-" + kind + "/1"}, {"conventions", certify::default_conventions()}};
}

inline std::string json_of(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "infinity"; }

struct SearchInfo {
  certify::TripleSearchStats stats;
  std::array<std::size_t, 3> indices{};
};

struct BuiltComplex {
  complex::Complex2D complex;
  certify::Environment env;
  std::optional<certify::Certificate> certificate;  // already computed by a search
  std::optional<SearchInfo> search;
};

inline Json search_json(const SearchInfo& s) {
  return Json{{"classes", s.stats.classes},
              {"subgroups", s.stats.subgroups},
              {"triples", s.stats.triples},
              {"link_filter_passed", s.stats.link_filter_passed},
              {"generating", s.stats.generating},
              {"symmetric", s.stats.symmetric},
              {"certified", s.stats.certified},
              {"indices", s.indices}};
}

inline std::vector<perm::PermGroup> explicit_subgroups(const JobConfig& cfg, const perm::PermGroup& g) {
  std::vector<perm::PermGroup> hs;
  for (const auto& text : cfg.subgroups->generators) {
    perm::PermGroup h(g.degree(), parse_subgroup_generators(text, g));
    if (!h.is_subgroup_of(g)) throw InputError("subgroup generators '" + text + "' are not in the group");
    hs.push_back(std::move(h));
  }
  return hs;
}

inline BuiltComplex build_complex(const JobConfig& cfg, const RunOptions& opt) {
  if (!cfg.complex) throw InputError("the job needs a complex section");
  const auto& cc = *cfg.complex;
  BuiltComplex out;
  switch (cc.source) {
    case ComplexConfig::Source::Facets: {
      if (cc.facets.empty()) throw InputError("complex source facets needs a facets list");
      out.complex = complex::from_facets(cc.vertices, cc.facets);
      if (cc.action) {
        perm::PermGroup a(cc.vertices, parse_cycle_list(*cc.action, cc.vertices));
        out.complex = out.complex.with_action(a);
        out.env.acting_group = "generated by " + *cc.action;
        out.env.acting_group_order = a.order();
      }
      return out;
    }
    case ComplexConfig::Source::File: {
      if (cc.path.empty()) throw InputError("complex source file needs a path");
      const auto path = std::filesystem::path(cc.path).is_absolute() ? std::filesystem::path(cc.path) : opt.base_dir / cc.path;
      std::ifstream in(path);
      if (!in) throw InputError("cannot read " + path.string());
      Json j;
      try {
        j = Json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw InputError("malformed JSON in " + path.string() + ": " + e.what());
      }
      out.complex = complex::complex_from_json(j.contains("complex") ? j.at("complex") : j);
      if (out.complex.action()) {
        out.env.acting_group = "read from " + cc.path;
        out.env.acting_group_order = out.complex.action()->order();
      }
      return out;
    }
    case ComplexConfig::Source::Coset: break;
  }
  if (!cfg.group) throw InputError("a coset complex needs a group");
  if (!cfg.subgroups) throw InputError("a coset complex needs a subgroups section");
  const perm::PermGroup g = cfg.group->build();
  if (cfg.subgroups->search) {
    const auto& s = *cfg.subgroups->search;
    const auto shape = cfg.group->psl_product_shape();
    if (!shape || s.count != 3 || !s.nonabelian) {
      throw InputError("subgroup search builds triples of nonabelian subgroups of direct_product(psl2(p), cyclic(m), ...)");
    }
    certify::TripleSearchOptions so;
    so.log = opt.log;
    auto r = certify::search_certified_triple(perm::PslProduct((*shape)[0], (*shape)[1], (*shape)[2]), s.order, so);
    out.search = SearchInfo{r.stats, r.indices};
    if (!r.triple) throw DomainError("no triple of order-" + std::to_string(s.order) + " subgroups passes every premise");
    out.complex = r.triple->complex;
    out.certificate = r.triple->certificate;
    out.env = r.triple->certificate.environment;
    out.env.group = cfg.group->to_string();
    out.certificate->environment.group = out.env.group;
    return out;
  }
  const auto hs = explicit_subgroups(cfg, g);
  out.complex = complex::build_coset_complex(g, hs).complex;
  out.env.group = cfg.group->to_string();
  out.env.group_order = g.order();
  for (const auto& h : hs) {
    std::vector<std::string> words;
    for (const auto& x : h.generators()) words.push_back(x.to_cycle_string());
    out.env.subgroup_generators.push_back(std::move(words));
  }
  out.env.acting_group = out.env.group + " by right multiplication";
  out.env.acting_group_order = g.order();
  return out;
}

inline Json counts_json(const complex::Complex2D& c) {
  return Json{{"vertices", c.vertex_count()}, {"edges", c.graph().edge_count()}, {"triangles", c.triangles().size()}};
}

inline Json environment_json(const certify::Environment& e) {
  return Json{{"group", e.group},
              {"group_order", e.group_order},
              {"subgroup_generators", e.subgroup_generators},
              {"acting_group", e.acting_group},
              {"acting_group_order", e.acting_group_order}};
}

inline std::string counts_text(const complex::Complex2D& c) {
  return "vertices: " + std::to_string(c.vertex_count()) + "\nedges: " + std::to_string(c.graph().edge_count()) +
         "\ntriangles: " + std::to_string(c.triangles().size()) + "\n";
}

// --------------------------------------------------------------------------

inline RunResult run_build(const JobConfig& cfg, const RunOptions& opt) {
  const auto b = build_complex(cfg, opt);
  RunResult r;
  r.json = header("build");
  r.json["environment"] = environment_json(b.env);
  if (b.search) r.json["search"] = search_json(*b.search);
  r.json["counts"] = counts_json(b.complex);
  r.json["complex"] = complex::complex_to_json(b.complex);
  r.report = "build\n" + counts_text(b.complex);
  return r;
}

inline bool check_passes(const certify::Certificate& c, const std::string& name) {
  if (name == "connected") return c.connected;
  if (name == "flag") return c.flag;
  if (name == "every_edge_in_triangle") return c.every_edge_in_triangle;
  if (name == "edge_swap_or_transitive") return c.action_evaluated && c.edge_swap_or_transitive.value_or(false);
  if (name == "min_link_girth") return c.link_girth_at_least_6;
  if (name == "h1_trivial") return c.h1_trivial;
  if (name == "bounded") return c.bounded;
  throw InputError("unknown check " + name);
}

inline RunResult run_certify(const JobConfig& cfg, const RunOptions& opt) {
  auto b = build_complex(cfg, opt);
  const certify::Certificate cert = b.certificate ? *b.certificate : certify::certify(b.complex, b.env);
  const auto& checks = cfg.checks.empty() ? known_checks() : cfg.checks;
  bool ok = true;
  Json requested = Json::object();
  for (const auto& k : checks) {
    const bool pass = check_passes(cert, k);
    requested[k] = pass;
    ok = ok && pass;
  }
  RunResult r;
  r.json = certify::to_json(cert);
  if (b.search) r.json["search"] = search_json(*b.search);
  r.json["requested_checks"] = requested;
  r.json["requested_checks_pass"] = ok;
  r.report = certify::to_text(cert);
  if (b.search) {
    r.report += "search: " + std::to_string(b.search->stats.triples) + " triples examined, candidate indices (" +
                std::to_string(b.search->indices[0]) + ", " + std::to_string(b.search->indices[1]) + ", " +
                std::to_string(b.search->indices[2]) + ")\n";
  }
  r.report += std::string("requested checks: ") + (ok ? "pass" : "fail") + "\n";
  r.exit_code = ok ? 0 : 1;
  return r;
}

inline RunResult run_homology(const JobConfig& cfg, const RunOptions& opt) {
  const auto b = build_complex(cfg, opt);
  const auto h = homology::compute_homology(b.complex);
  RunResult r;
  r.json = header("homology");
  r.json["counts"] = counts_json(b.complex);
  r.json["homology"] = Json{{"H0", certify::detail::homology_json(h.h[0])},
                            {"H1", certify::detail::homology_json(h.h[1])},
                            {"H2", certify::detail::homology_json(h.h[2])}};
  r.report = "homology\n" + counts_text(b.complex) + "H0 = " + h.h[0].to_string() + "\nH1 = " + h.h[1].to_string() +
             "\nH2 = " + h.h[2].to_string() + "\nH1 betti number: " + std::to_string(h.h[1].betti) + "\n";
  return r;
}

inline RunResult run_links(const JobConfig& cfg, const RunOptions& opt) {
  const auto b = build_complex(cfg, opt);
  const auto lg = certify::all_link_girths(b.complex);
  const bool ok = !lg.minimum || *lg.minimum >= 6;
  Json per = Json::array();
  for (const auto& g : lg.girth) per.push_back(g ? Json(*g) : Json("infinity"));
  RunResult r;
  r.json = header("links");
  r.json["counts"] = counts_json(b.complex);
  r.json["min_link_girth"] = lg.minimum ? Json(*lg.minimum) : Json("infinity");
  r.json["attained_at"] = lg.attained_at ? Json(*lg.attained_at) : Json(nullptr);
  r.json["required"] = 6;
  r.json["status"] = ok ? "pass" : "fail";
  r.json["link_girth"] = per;
  r.report = "links\n" + counts_text(b.complex) + "min link girth: " + json_of(lg.minimum) +
             (lg.attained_at ? " at vertex " + std::to_string(*lg.attained_at) : "") + " (required 6): " + (ok ? "pass" : "fail") +
             "\n";
  r.exit_code = ok ? 0 : 1;
  return r;
}

inline RunResult run_raag_check(const JobConfig& cfg, const RunOptions& opt) {
  const auto b = build_complex(cfg, opt);
  const RaagConfig rc = cfg.raag.value_or(RaagConfig{});
  auto graph = std::make_shared<const Graph>(b.complex.graph());
  const std::size_t n = graph->vertex_count();
  if (n == 0) throw InputError("the complex has no vertices");
  std::mt19937_64 rng(rc.seed);
  auto random_word = [&](bool kernel) {
    for (;;) {
      std::vector<raag::Letter> letters(rng() % (rc.max_length + 1));
      for (auto& l : letters) l = {static_cast<Vertex>(rng() % n), rng() % 2 ? 1 : -1};
      raag::RaagWord w(graph, std::move(letters));
      if (!kernel || raag::exponent_sum(w) == 0) return w;
    }
  };

  std::size_t idempotent = 0;
  for (std::size_t i = 0; i < rc.samples; ++i) {
    const auto nf = raag::normalize(random_word(false));
    if (raag::normalize(nf) == nf) ++idempotent;
  }

  const bool connected = connected_components(*graph) == 1;
  std::size_t round_trips = 0;
  if (connected) {
    for (std::size_t i = 0; i < rc.samples; ++i) {
      const auto h = random_word(true);
      if (raag::equal_in_group(raag::expand(graph, raag::rewrite_in_edge_generators(h)), h)) ++round_trips;
    }
  }

  const bool have_action = b.complex.action().has_value();
  std::size_t verified = 0;
  std::size_t without_witness = 0;
  std::optional<std::string> first_failure;
  if (have_action) {
    const complex::EdgeSwapAnalysis swaps(b.complex);
    for (std::size_t e = 0; e < graph->directed_edge_count(); ++e) {
      const auto [x, y] = graph->directed_edge(e);
      const auto w = swaps.witness(x, y);
      if (!w) {
        ++without_witness;
        continue;
      }
      try {
        raag::edge_generator_from_conjugates(graph, x, y, w->apex, w->element);
        ++verified;
      } catch (const DomainError& err) {
        if (!first_failure) first_failure = err.what();
      }
    }
  }
  const std::size_t directed = graph->directed_edge_count();
  const bool ok = idempotent == rc.samples && connected && round_trips == rc.samples && have_action && verified == directed;

  RunResult r;
  r.json = header("raag-check");
  r.json["counts"] = counts_json(b.complex);
  r.json["parameters"] = Json{{"samples", rc.samples}, {"seed", rc.seed}, {"max_length", rc.max_length}};
  r.json["normalize_idempotent"] = Json{{"checked", rc.samples}, {"passed", idempotent}};
  r.json["rewrite_round_trip"] = Json{{"evaluated", connected}, {"checked", connected ? rc.samples : 0}, {"passed", round_trips}};
  r.json["edge_generator_identity"] = Json{{"evaluated", have_action},
                                           {"directed_edges", directed},
                                           {"verified", verified},
                                           {"without_witness", without_witness},
                                           {"first_failure", first_failure ? Json(*first_failure) : Json(nullptr)}};
  r.json["status"] = ok ? "pass" : "fail";
  std::ostringstream rep;
  rep << "raag-check\n" << counts_text(b.complex);
  rep << "normalize idempotent: " << idempotent << " of " << rc.samples << "\n";
  if (connected) {
    rep << "rewrite round trips: " << round_trips << " of " << rc.samples << "\n";
  } else {
    rep << "rewrite round trips: not evaluated (1-skeleton is disconnected)\n";
  }
  if (have_action) {
    rep << "edge generator identity: " << verified << " of " << directed << " directed edges (" << without_witness
        << " without a swap witness)\n";
  } else {
    rep << "edge generator identity: not evaluated (no group action)\n";
  }
  rep << "status: " << (ok ? "pass" : "fail") << "\n";
  r.report = rep.str();
  r.exit_code = ok ? 0 : 1;
  return r;
}

inline bool acts_freely(const perm::PermGroup& g) {
  for (const auto& x : g.elements()) {
    if (x.is_identity()) continue;
    for (perm::Point p = 0; p < g.degree(); ++p) {
      if (x(p) == p) return false;
    }
  }
  return true;
}

inline RunResult run_tree_check(const JobConfig& cfg, const RunOptions&) {
  const TreeConfig t = cfg.tree.value_or(TreeConfig{});
  const auto ball = tree::build_ball(t.x, t.y, t.radius, t.root_side == 'X' ? tree::Side::X : tree::Side::Y);
  const perm::PermGroup m = t.local_x ? t.local_x->build() : perm::symmetric(t.x);
  const perm::PermGroup nn = t.local_y ? t.local_y->build() : perm::symmetric(t.y);
  const perm::PermGroup& root_group = t.root_side == 'X' ? m : nn;
  const auto l = tree::canonical_labeling(ball);
  const auto violation = tree::validate_labeling(ball, l);
  const auto maps = tree::enumerate_universal(ball, l, m, nn, t.fix_root);
  const bool root_image_checked = t.radius >= 2;
  bool root_image_ok = true;
  Json root_image = nullptr;
  std::set<perm::Permutation> image;
  if (root_image_checked) {
    image = tree::root_local_action_image(ball, l, m, nn);
    root_image = Json::array();
    for (const auto& p : image) root_image.push_back(p.to_cycle_string());
    const auto& el = root_group.elements();
    root_image_ok = image == std::set<perm::Permutation>(el.begin(), el.end());
  }
  const bool free = acts_freely(m) && acts_freely(nn);
  std::size_t max_fixator = 0;
  Json fixators = Json::array();
  for (Vertex v = 1; v < ball.vertex_count(); ++v) {
    const std::size_t s = tree::edge_fixator_size(maps, v, ball.parent[v]);
    fixators.push_back(Json::array({ball.parent[v], v, s}));
    max_fixator = std::max(max_fixator, s);
  }
  const bool fixators_ok = !free || max_fixator <= 1;
  const bool ok = !violation && root_image_ok && fixators_ok;

  RunResult r;
  r.json = header("tree-check");
  r.json["parameters"] = Json{{"x", t.x},
                              {"y", t.y},
                              {"radius", t.radius},
                              {"root_side", std::string(1, t.root_side)},
                              {"local_x", t.local_x ? t.local_x->to_string() : "symmetric(" + std::to_string(t.x) + ")"},
                              {"local_y", t.local_y ? t.local_y->to_string() : "symmetric(" + std::to_string(t.y) + ")"},
                              {"fix_root", t.fix_root}};
  r.json["vertices"] = ball.vertex_count();
  r.json["labeling_valid"] = !violation;
  r.json["labeling_violation"] =
      violation ? Json{{"axiom", violation->axiom}, {"vertex", violation->vertex}, {"detail", violation->detail}} : Json(nullptr);
  r.json["universal_maps"] = maps.size();
  r.json["root_local_action_image"] = root_image;
  r.json["root_local_action_image_size"] = root_image_checked ? Json(image.size()) : Json(nullptr);
  r.json["root_local_action_image_equals_local_group"] = root_image_checked ? Json(root_image_ok) : Json(nullptr);
  r.json["local_groups_act_freely"] = free;
  r.json["edge_fixator_sizes"] = fixators;
  r.json["max_edge_fixator"] = max_fixator;
  r.json["status"] = ok ? "pass" : "fail";
  std::ostringstream rep;
  rep << "tree-check\nball: |X| = " << t.x << ", |Y| = " << t.y << ", radius " << t.radius << ", root in V_" << t.root_side << ", "
      << ball.vertex_count() << " vertices\n";
  rep << "labeling: " << (violation ? "violates axiom " + std::to_string(violation->axiom) + ": " + violation->detail : "legal") << "\n";
  rep << "universal maps (" << (t.fix_root ? "root fixed" : "root moved within its side") << "): " << maps.size() << "\n";
  if (root_image_checked) {
    rep << "root local action image: " << image.size() << " permutations, " << (root_image_ok ? "equals" : "differs from")
        << " the local group\n";
  } else {
    rep << "root local action image: not evaluated (radius below 2)\n";
  }
  rep << "local groups act freely: " << (free ? "yes" : "no") << "; max edge fixator " << max_fixator << "\n";
  rep << "status: " << (ok ? "pass" : "fail") << "\n";
  r.report = rep.str();
  r.exit_code = ok ? 0 : 1;
  return r;
}

inline RunResult run_search_subgroups(const JobConfig& cfg, const RunOptions&) {
  if (!cfg.group) throw InputError("search-subgroups needs a group");
  if (!cfg.subgroups || !cfg.subgroups->search) throw InputError("search-subgroups needs subgroups { search = order=N ... }");
  const auto& s = *cfg.subgroups->search;
  const perm::PermGroup g = cfg.group->build();
  const auto classes = perm::find_subgroups(g, s.order, s.nonabelian ? perm::SubgroupPredicate(perm::nonabelian) : perm::SubgroupPredicate());
  Json list = Json::array();
  std::size_t total = 0;
  std::ostringstream rep;
  rep << "search-subgroups\ngroup: " << cfg.group->to_string() << " (order " << g.order() << ")\nsearch: " << s.to_string() << "\n";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& h = classes[i];
    const std::size_t size = perm::conjugacy_class(g, h).size();
    total += size;
    std::vector<std::string> gens;
    for (const auto& x : h.generators()) gens.push_back(x.to_cycle_string());
    list.push_back(Json{{"order", h.order()}, {"class_size", size}, {"generators", gens}});
    rep << "class " << i + 1 << ": order " << h.order() << ", " << size << " conjugates\n";
  }
  rep << classes.size() << " classes, " << total << " subgroups\n";
  RunResult r;
  r.json = header("search-subgroups");
  r.json["group"] = Json{{"description", cfg.group->to_string()}, {"order", g.order()}};
  r.json["search"] = s.to_string();
  r.json["classes"] = list;
  r.json["class_count"] = classes.size();
  r.json["subgroup_count"] = total;
  r.report = rep.str();
  r.exit_code = classes.empty() ? 1 : 0;
  return r;
}

}  // namespace detail

/// Runs one subcommand. Input problems surface as InputError, ParseError or
/// DomainError before anything is written.
inline RunResult run(const std::string& cmd, const JobConfig& cfg, const RunOptions& opt = {}) {
  if (cmd == "build") return detail::run_build(cfg, opt);
  if (cmd == "certify") return detail::run_certify(cfg, opt);
  if (cmd == "homology") return detail::run_homology(cfg, opt);
  if (cmd == "links") return detail::run_links(cfg, opt);
  if (cmd == "raag-check") return detail::run_raag_check(cfg, opt);
  if (cmd == "tree-check") return detail::run_tree_check(cfg, opt);
  if (cmd == "search-subgroups") return detail::run_search_subgroups(cfg, opt);
  throw InputError("unknown command '" + cmd + "'");
}

}  // namespace tdlc::cli
