// Acceptance driver: one PASS/FAIL line per criterion, details indented below.
// Usage: acceptance [criterion numbers...]; exit status 1 if any selected criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tdlc/amalgam/amalgam.hpp"
#include "tdlc/certify/triple_search.hpp"
#include "tdlc/cli/jobs.hpp"
#include "tdlc/complex/standard.hpp"
#include "tdlc/homology/chain.hpp"
#include "tdlc/parallel.hpp"
#include "tdlc/raag/bestvina_brady.hpp"
#include "tdlc/tree/universal.hpp"

namespace {

using namespace tdlc;
using perm::Permutation;
using perm::PermGroup;
using Clock = std::chrono::steady_clock;

// Collects named sub-checks for one criterion.
class Report {
public:
  explicit Report(std::ostream& out) : out_(out) {}

  bool check(bool ok, const std::string& what) {
    out_ << "    " << (ok ? "ok   " : "FAIL ") << what << "\n";
    all_ = all_ && ok;
    return ok;
  }
  void note(const std::string& what) { out_ << "    " << what << "\n"; }
  bool passed() const { return all_; }

private:
  std::ostream& out_;
  bool all_ = true;
};

template <typename T>
std::string str(const T& x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// ---- 1: end-to-end certified triple ----

std::optional<certify::CertifiedTriple>& certified_triple() {
  static std::optional<certify::CertifiedTriple> t;
  return t;
}

void ensure_triple(Report& r) {
  if (certified_triple()) return;
  const auto start = Clock::now();
  auto result = certify::search_certified_triple(perm::PslProduct(13, 3, 2), 39);
  r.note("search: " + str(result.stats.triples) + " triples, " + str(result.stats.link_filter_passed) + " past the link filter, " +
         str(result.stats.certified) + " certified, " + str(seconds_since(start)) + " s");
  if (result.triple) {
    r.note("candidate indices (" + str(result.indices[0]) + ", " + str(result.indices[1]) + ", " + str(result.indices[2]) + ")");
  }
  certified_triple() = std::move(result.triple);
}

void criterion_1(Report& r) {
  const auto start = Clock::now();
  const perm::PslProduct q(13, 3, 2);
  r.check(q.group().order() == 9828, "|PSL(2,13) x C3 x C3| = " + str(q.group().order()) + " (expected 9828)");
  ensure_triple(r);
  if (!r.check(certified_triple().has_value(), "some order-39 nonabelian triple passes every premise")) return;
  const auto& c = certified_triple()->certificate;
  r.check(c.vertices == 756, "vertices = " + str(c.vertices) + " (expected 756)");
  r.note("edges " + str(c.edges) + ", triangles " + str(c.triangles));
  r.check(c.connected, "connected");
  r.check(c.flag, "flag");
  r.check(c.every_edge_in_triangle, "every edge in a triangle");
  r.check(c.directed_edge_orbits == std::optional<std::size_t>(1),
          "directed-edge orbits under the acting group (order " + str(c.environment.acting_group_order) + ") = " +
              str(c.directed_edge_orbits.value_or(0)) + " (expected 1)");
  r.check(c.h1_trivial, "H1 = " + c.h1.to_string());
  r.note("H2 = " + c.h2.to_string());
  r.check(c.link_girth_at_least_6, "minimum link girth = " + (c.min_link_girth ? str(*c.min_link_girth) : "infinity") + " (required >= 6)");
  r.check(c.all_premises(), "all premises true");
  r.check(c.bb_fp2_not_fp.derived, "conclusion derived: " + c.bb_fp2_not_fp.statement);
  if (c.subgroup_orbits) {
    const auto& s = *c.subgroup_orbits;
    r.note("under " + s.description + " alone: " + str(s.directed_edge_orbits) + " directed-edge orbits, " + str(s.triangle_orbits) +
           " triangle orbits (reference count 6)");
    if (s.triangle_orbits != 6) r.note("WARNING: triangle orbits under q alone differ from the reference count 6");
  }
  if (c.triangle_orbits != std::optional<std::size_t>(6)) {
    r.note("WARNING: triangle orbits under the extended acting group = " + str(c.triangle_orbits.value_or(0)) +
           ", reference count 6 (warning only)");
  }
  const double secs = seconds_since(start);
  r.check(secs < 600, "runtime " + str(secs) + " s (target under 600 s)");
}

// ---- 2: cross-polytopes ----

void criterion_2(Report& r) {
  const auto cert = certify::certify(complex::octahedron());
  r.check(cert.h1.trivial(), "octahedron H1 = " + cert.h1.to_string());
  r.check(cert.h2 == homology::HomologyGroup{1, {}}, "octahedron H2 = " + cert.h2.to_string() + " (expected Z)");
  r.check(cert.directed_edge_orbits == std::optional<std::size_t>(1), "octahedron directed-edge transitive under its symmetry group");
  r.check(cert.edge_swap == std::optional<bool>(true), "octahedron edge-swap condition true");
  r.check(cert.min_link_girth == std::optional<std::size_t>(4), "octahedron link girth = 4");
  r.check(!cert.link_girth_at_least_6 && !cert.npc.derived, "curvature certificate fails");
  r.check(!cert.not_simply_connected.derived, "no 'not simply connected' conclusion");

  const homology::SimplicialComplex cell16(homology::cross_polytope_facets(4));
  const auto h = cell16.homology();
  r.check(h.size() == 4 && h[1].trivial() && h[2].trivial() && h[3] == homology::HomologyGroup{1, {}},
          "16-cell boundary: H1 = " + h[1].to_string() + ", H2 = " + h[2].to_string() + ", H3 = " + h.at(3).to_string());
}

// ---- 3: homology kernel ----

homology::IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
  std::uniform_int_distribution<int> val(-9, 9);
  std::bernoulli_distribution keep(density);
  homology::IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = keep(rng) ? val(rng) : 0;
  }
  return m;
}

// gcd of the k x k minors, by enumerating row subsets of a matrix with k columns
homology::Integer max_minor_gcd(const homology::IntMatrix& m) {
  const std::size_t k = m.cols();
  homology::Integer g = 0;
  std::vector<std::size_t> rows(k);
  std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t from, std::size_t depth) {
    if (depth == k) {
      homology::IntMatrix s(k, k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) s(i, j) = m(rows[i], j);
      }
      homology::Integer d;
      oracle::bareiss_rank(s, &d);
      g = gcd(g, homology::Integer(abs(d)));
      return;
    }
    for (std::size_t i = from; i + (k - depth) <= m.rows(); ++i) {
      rows[depth] = i;
      pick(i + 1, depth + 1);
    }
  };
  pick(0, 0);
  return g;
}

bool composes_to_zero(const homology::SparseIntMatrix& d1, const homology::SparseIntMatrix& d2) {
  for (std::size_t j = 0; j < d2.cols(); ++j) {
    std::map<std::uint32_t, std::int64_t> sum;
    for (auto [e, v] : d2.column(j)) {
      for (auto [u, w] : d1.column(e)) sum[u] += v * w;
    }
    for (auto [u, s] : sum) {
      if (s != 0) return false;
    }
  }
  return true;
}

void criterion_3(Report& r) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> dim(1, 12);
  std::size_t divisibility = 0;
  std::size_t rank_agrees = 0;
  const std::size_t trials = 1000;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = random_matrix(rng, dim(rng), dim(rng), t % 3 == 0 ? 0.3 : 1.0);
    const auto s = homology::smith_normal_form(a);
    bool chain = s.factors.size() == s.rank;
    for (std::size_t i = 0; chain && i < s.factors.size(); ++i) {
      chain = s.factors[i] > 0 && (i + 1 == s.factors.size() || mpz_divisible_p(s.factors[i + 1].get_mpz_t(), s.factors[i].get_mpz_t()));
    }
    divisibility += chain;
    rank_agrees += s.rank == oracle::bareiss_rank(a);
  }
  r.check(divisibility == trials, "SNF divisibility chain on " + str(divisibility) + " of " + str(trials) + " random matrices");
  r.check(rank_agrees == trials, "SNF rank equals elimination rank on " + str(rank_agrees) + " of " + str(trials));

  const auto rp2 = complex::projective_plane6();
  const auto h1 = homology::homology_rank_and_torsion(rp2, 1);
  r.check(h1 == homology::HomologyGroup{0, {2}}, "RP2 (6 vertices) H1 = " + h1.to_string() + " (expected Z/2)");
  // oracle: Bareiss ranks give betti 0; the gcd of the maximal minors of d2 is the torsion order
  const auto b = homology::boundary_matrices(rp2);
  const auto d1 = b.d1.to_dense();
  const auto d2 = b.d2.to_dense();
  const std::size_t r1 = oracle::bareiss_rank(d1);
  const std::size_t r2 = oracle::bareiss_rank(d2);
  const auto divisor = max_minor_gcd(d2);
  r.check(15 - r1 - r2 == 0 && r2 == 10 && divisor == 2,
          "oracle: betti_1 = " + str(15 - r1 - r2) + ", rank d2 = " + str(r2) + ", gcd of maximal minors = " + divisor.get_str());

  std::size_t zero = 0;
  std::size_t total = 0;
  auto test = [&](const complex::Complex2D& c) {
    const auto m = homology::boundary_matrices(c);
    zero += composes_to_zero(m.d1, m.d2);
    ++total;
  };
  test(complex::octahedron());
  test(rp2);
  for (int i = 0; i < 50; ++i) {
    std::bernoulli_distribution coin(0.6);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < 10; ++u) {
      for (Vertex v = u + 1; v < 10; ++v) {
        if (coin(rng)) edges.emplace_back(u, v);
      }
    }
    test(complex::clique_complex(Graph(10, edges)));
  }
  if (certified_triple()) test(certified_triple()->complex);
  const homology::SimplicialComplex cell16(homology::cross_polytope_facets(4));
  for (std::size_t k = 2; k <= 3; ++k) {
    zero += composes_to_zero(cell16.boundary(k - 1), cell16.boundary(k));
    ++total;
  }
  r.check(zero == total, "boundary of boundary is zero on " + str(zero) + " of " + str(total) + " complexes" +
                             (certified_triple() ? " (including the certified L)" : ""));
}

// ---- 4: RAAG engine ----

std::size_t verify_edge_identities(const complex::Complex2D& c, std::size_t& without_witness) {
  const auto graph = std::make_shared<const Graph>(c.graph());
  const complex::EdgeSwapAnalysis swaps(c);
  const std::size_t n = graph->directed_edge_count();
  std::vector<char> ok(n, 0);
  std::vector<char> missing(n, 0);
  parallel_for(n, [&](std::size_t e) {
    const auto [x, y] = graph->directed_edge(e);
    const auto w = swaps.witness(x, y);
    if (!w) {
      missing[e] = 1;
      return;
    }
    try {
      const auto trace = raag::edge_generator_from_conjugates(graph, x, y, w->apex, w->element);
      const raag::RaagWord xy(graph, {{x, 1}, {y, -1}});
      ok[e] = raag::equal_in_group(trace.result.h, xy) && trace.result.q.is_identity();
    } catch (const DomainError&) {
    }
  });
  without_witness = static_cast<std::size_t>(std::count(missing.begin(), missing.end(), 1));
  return static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
}

void criterion_4(Report& r) {
  std::size_t graphs = 0;
  std::size_t words = 0;
  std::size_t mismatches = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (auto& g : oracle::all_graphs(n)) {
      const auto shared = std::make_shared<const Graph>(std::move(g));
      const oracle::WordSpace space(n);
      const auto least = oracle::least_equivalent_words(*shared, space);
      std::vector<raag::RaagWord> normal;
      normal.reserve(space.size());
      for (std::size_t w = 0; w < space.size(); ++w) {
        std::vector<raag::Letter> letters;
        for (unsigned c : space.codes(w)) letters.push_back({c / 2, c % 2 ? -1 : 1});
        normal.push_back(raag::normalize(raag::RaagWord(shared, std::move(letters))));
        ++words;
      }
      // normal forms must agree exactly when the words are rewriting-equivalent
      for (std::size_t w = 0; w < space.size(); ++w) {
        if (normal[w] != normal[least[w]]) ++mismatches;
        if (least[w] == w) {
          std::vector<unsigned> codes;
          for (const auto& l : normal[w].letters()) codes.push_back(l.code());
          if (codes.size() > oracle::WordSpace::kMaxLen || least[space.index(codes)] != w) ++mismatches;
        }
      }
      ++graphs;
    }
  }
  r.check(graphs == 75 && mismatches == 0,
          "normal-form equality matches rewriting reachability: " + str(words) + " words over " + str(graphs) + " graphs, " +
              str(mismatches) + " mismatches");

  const auto oct = complex::octahedron();
  const auto graph = std::make_shared<const Graph>(oct.graph());
  std::mt19937 rng(4);
  std::size_t round_trips = 0;
  for (std::size_t i = 0; i < 500;) {
    std::vector<raag::Letter> letters(rng() % 13);
    for (auto& l : letters) l = {static_cast<Vertex>(rng() % 6), rng() % 2 ? 1 : -1};
    const raag::RaagWord h(graph, std::move(letters));
    if (raag::exponent_sum(h) != 0) continue;
    ++i;
    round_trips += raag::equal_in_group(raag::expand(graph, raag::rewrite_in_edge_generators(h)), h);
  }
  r.check(round_trips == 500, "rewrite_in_edge_generators round trips on " + str(round_trips) + " of 500 octahedron kernel words");

  std::size_t missing = 0;
  const std::size_t verified = verify_edge_identities(oct, missing);
  r.check(verified == 24, "edge identity (x z^-1)(q.(z x^-1)) = x y^-1 on " + str(verified) + " of 24 octahedron directed edges");

  ensure_triple(r);
  if (!r.check(certified_triple().has_value(), "certified L available")) return;
  const auto& l = certified_triple()->complex;
  const auto start = Clock::now();
  const std::size_t all = l.graph().directed_edge_count();
  const std::size_t on_l = verify_edge_identities(l, missing);
  r.check(on_l == all, "edge identity on " + str(on_l) + " of " + str(all) + " directed edges of the certified L (" + str(missing) +
                           " without a witness, " + str(seconds_since(start)) + " s)");
}

// ---- 5: amalgams ----

struct NamedAmalgam {
  std::string name;
  amalgam::AmalgamPresentation p;
};

std::vector<NamedAmalgam> amalgams() {
  const Permutation rot3({1, 2, 0});
  auto free_product = [](std::size_t m, std::size_t n) {
    return amalgam::AmalgamPresentation(perm::cyclic(m), perm::cyclic(n), PermGroup::trivial(1), {}, {});
  };
  return {{"Sym(3) *_A3 Sym(3)", amalgam::AmalgamPresentation(perm::symmetric(3), perm::symmetric(3), PermGroup(3, {rot3}), {rot3}, {rot3})},
          {"C2 * C2", free_product(2, 2)},
          {"C2 * C3", free_product(2, 3)},
          {"C3 * C3", free_product(3, 3)},
          {"C3 * C4", free_product(3, 4)}};
}

std::vector<amalgam::Letter> random_letters(const amalgam::AmalgamPresentation& p, std::mt19937& rng, std::size_t max_len) {
  std::vector<amalgam::Letter> w(rng() % (max_len + 1));
  for (auto& l : w) {
    l.side = rng() % 2 ? amalgam::Side::A : amalgam::Side::B;
    const auto& el = p.group(l.side).elements();
    l.element = el[rng() % el.size()];
  }
  return w;
}

void criterion_5(Report& r) {
  using amalgam::Side;
  std::mt19937 rng(5);
  for (const auto& [name, p] : amalgams()) {
    std::size_t idempotent = 0;
    for (int i = 0; i < 200; ++i) {
      const auto nf = amalgam::normal_form(p, random_letters(p, rng, 8));
      idempotent += amalgam::normal_form(p, nf) == nf;
    }
    std::size_t invariant = 0;
    const auto& c = p.amalgamated().elements();
    for (int i = 0; i < 200; ++i) {
      auto w = random_letters(p, rng, 8);
      const auto before = amalgam::normal_form(p, w);
      std::vector<amalgam::Letter> relator;
      if (rng() % 2) {
        const Permutation x = c[rng() % c.size()];
        relator = {{Side::A, p.embed(Side::A, x)}, {Side::B, p.embed(Side::B, x.inverse())}};
      } else {
        const Side s = rng() % 2 ? Side::A : Side::B;
        const auto& el = p.group(s).elements();
        const Permutation y = el[rng() % el.size()];
        relator = {{s, y}, {s, y.inverse()}};
      }
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(rng() % (w.size() + 1)), relator.begin(), relator.end());
      invariant += amalgam::normal_form(p, w) == before;
    }
    std::size_t independent = 0;
    for (int round = 0; round < 10; ++round) {
      const auto q = p.with_transversals(amalgam::Transversal::random(p.group(Side::A), p.c_image(Side::A), rng),
                                         amalgam::Transversal::random(p.group(Side::B), p.c_image(Side::B), rng));
      for (int i = 0; i < 20; ++i) {
        const auto w = random_letters(p, rng, 8);
        independent += amalgam::syllable_length(amalgam::normal_form(p, w)) == amalgam::syllable_length(amalgam::normal_form(q, w));
      }
    }
    std::size_t reduced = 0;
    const bool free = p.amalgamated().order() == 1;
    if (free) {
      for (int i = 0; i < 200; ++i) {
        const auto w = random_letters(p, rng, 10);
        reduced += amalgam::normal_form(p, w).syllables == oracle::free_reduce(w);
      }
    }
    r.check(idempotent == 200 && invariant == 200 && independent == 200 && (!free || reduced == 200),
            name + ": idempotent " + str(idempotent) + "/200, relator insertion " + str(invariant) + "/200, transversal independence " +
                str(independent) + "/200" + (free ? ", free reduction oracle " + str(reduced) + "/200" : ""));
  }
}

// ---- 6: trees ----

void criterion_6(Report& r) {
  using namespace tree;
  {
    const auto b = build_ball(2, 3, 2, Side::X);
    const auto l = canonical_labeling(b);
    const auto maps = enumerate_universal(b, l, perm::symmetric(2), perm::symmetric(3), true);
    const auto brute = oracle::brute_force_embeddings(b, true);
    r.check(maps.size() == 8 && maps == brute,
            "|X|=2, |Y|=3, r=2, M=Sym(2), N=Sym(3): " + str(maps.size()) + " maps (expected 8; brute force " + str(brute.size()) + ")");
  }
  const std::vector<std::pair<std::string, PermGroup>> locals = {
      {"trivial on 2 points", PermGroup::trivial(2)}, {"C2", perm::cyclic(2)}, {"Sym(2)", perm::symmetric(2)},
      {"C3", perm::cyclic(3)},                        {"Sym(3)", perm::symmetric(3)}};
  for (const auto& [name, m] : locals) {
    for (std::size_t radius : {2, 3}) {
      const auto b = build_ball(m.degree(), 3, radius, Side::X);
      const auto image = root_local_action_image(b, canonical_labeling(b), m, perm::symmetric(3));
      const auto& el = m.elements();
      r.check(image == std::set<Permutation>(el.begin(), el.end()),
              "root local action image = M for M = " + name + ", N = Sym(3), radius " + str(radius) + " (" + str(image.size()) + " elements)");
    }
  }
  const std::vector<std::tuple<std::string, PermGroup, PermGroup>> free_pairs = {
      {"M = C2, N = C3", perm::cyclic(2), perm::cyclic(3)},
      {"M = C3, N = C3", perm::cyclic(3), perm::cyclic(3)},
      {"M = C2, N = C2", perm::cyclic(2), perm::cyclic(2)}};
  for (const auto& [name, m, n] : free_pairs) {
    for (std::size_t radius : {2, 3}) {
      const auto b = build_ball(m.degree(), n.degree(), radius, Side::X);
      const auto maps = enumerate_universal(b, canonical_labeling(b), m, n, true);
      std::size_t largest = 0;
      for (Vertex v = 1; v < b.vertex_count(); ++v) largest = std::max(largest, edge_fixator_size(maps, v, b.parent[v]));
      r.check(largest == 1, "free local actions " + name + ", radius " + str(radius) + ": largest edge fixator " + str(largest));
    }
  }
}

// ---- 7: determinism ----

void criterion_7(Report& r) {
  const std::string octahedron = R"(complex {
  source = facets
  facets = 1 3 5; 1 3 6; 1 4 5; 1 4 6; 2 3 5; 2 3 6; 2 4 5; 2 4 6
  action = (1 2); (3 4); (1 3)(2 4); (3 5)(4 6)
}
)";
  const std::vector<std::pair<std::string, std::string>> jobs = {
      {"build", octahedron},
      {"certify", octahedron},
      {"homology", octahedron},
      {"links", octahedron},
      {"raag-check", octahedron},
      {"tree-check", "tree {\n  x = 3\n  y = 3\n  radius = 3\n  fix_root = false\n}\n"},
      {"search-subgroups", "group = symmetric(5)\nsubgroups {\n  search = order=6 nonabelian\n}\n"},
      {"certify", "group = direct_product(psl2(13), cyclic(3), cyclic(3))\nsubgroups {\n  search = order=39 nonabelian count=3\n}\n"
                  "complex {\n  source = coset\n}\n"},
  };
  for (const auto& [cmd, text] : jobs) {
    const auto cfg = cli::parse_config(text);
    const auto a = cli::artifacts(cmd, cfg, cli::run(cmd, cfg));
    // the second run uses a single worker thread
    setenv("TDLC_CERTIFY_THREADS", "1", 1);
    const auto b = cli::artifacts(cmd, cfg, cli::run(cmd, cfg));
    unsetenv("TDLC_CERTIFY_THREADS");
    r.check(a[0].content == b[0].content && a[1].content == b[1].content,
            cmd + (cmd == "certify" && text.find("psl2") != std::string::npos ? " (full pipeline)" : "") + ": " +
                str(a[0].content.size()) + "-byte JSON identical across runs");
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Report&)>>> criteria = {
      {"end-to-end PSL(2,13) x C3 x C3 certified triple", criterion_1},
      {"cross-polytope regression (octahedron, 16-cell)", criterion_2},
      {"homology kernel (SNF, RP2, boundary of boundary)", criterion_3},
      {"RAAG engine (normal forms, kernel rewriting, edge identities)", criterion_4},
      {"amalgam normal forms", criterion_5},
      {"tree module (universal maps, local actions, fixators)", criterion_6},
      {"determinism of JSON artifacts", criterion_7},
  };
  std::set<std::size_t> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoul(argv[i]));
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected.empty() && !selected.count(i + 1)) continue;
    std::ostringstream details;
    Report report(details);
    const auto start = Clock::now();
    try {
      criteria[i].second(report);
    } catch (const std::exception& e) {
      report.check(false, std::string("exception: ") + e.what());
    }
    const bool ok = report.passed();
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " (" << seconds_since(start)
              << " s)\n"
              << details.str() << std::flush;
  }
  return all ? 0 : 1;
}
