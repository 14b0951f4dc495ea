#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tdlc/cli/cycles.hpp"
#include "tdlc/errors.hpp"
#include "tdlc/graph.hpp"
#include "tdlc/perm/named_groups.hpp"
#include "tdlc/perm/perm_group.hpp"

namespace tdlc::cli {

// ---------------------------------------------------------------------------
// Group descriptions

/// symmetric(n) | cyclic(n) | psl2(p) | direct_product(group, ...) |
/// generators(n, cycles, ...)
struct GroupSpec {
  enum class Kind { Symmetric, Cyclic, Psl2, DirectProduct, Generators };
  Kind kind = Kind::Symmetric;
  std::size_t n = 0;  // degree, or p for psl2
  std::vector<GroupSpec> factors;
  std::vector<perm::Permutation> generators;

  std::string to_string() const {
    switch (kind) {
      case Kind::Symmetric: return "symmetric(" + std::to_string(n) + ")";
      case Kind::Cyclic: return "cyclic(" + std::to_string(n) + ")";
      case Kind::Psl2: return "psl2(" + std::to_string(n) + ")";
      case Kind::DirectProduct: {
        std::string s = "direct_product(";
        for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? ", " : "") + factors[i].to_string();
        return s + ")";
      }
      case Kind::Generators: {
        std::string s = "generators(" + std::to_string(n);
        for (const auto& g : generators) s += ", " + g.to_cycle_string();
        return s + ")";
      }
    }
    return {};
  }

  perm::PermGroup build() const {
    switch (kind) {
      case Kind::Symmetric: return perm::symmetric(n);
      case Kind::Cyclic: return perm::cyclic(n);
      case Kind::Psl2: return perm::psl2(n);
      case Kind::DirectProduct: {
        std::vector<perm::PermGroup> groups;
        for (const auto& f : factors) groups.push_back(f.build());
        return perm::direct_product(groups);
      }
      case Kind::Generators: return perm::PermGroup(n, generators);
    }
    return {};
  }

  /// For direct_product(psl2(p), cyclic(m), ..., cyclic(m)): (p, m, k).
  std::optional<std::array<std::size_t, 3>> psl_product_shape() const {
    if (kind != Kind::DirectProduct || factors.size() < 2 || factors[0].kind != Kind::Psl2) return std::nullopt;
    const std::size_t m = factors[1].n;
    for (std::size_t i = 1; i < factors.size(); ++i) {
      if (factors[i].kind != Kind::Cyclic || factors[i].n != m) return std::nullopt;
    }
    return std::array<std::size_t, 3>{factors[0].n, m, factors.size() - 1};
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

namespace detail {

class SpecParser {
public:
  SpecParser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  GroupSpec parse_all() {
    GroupSpec g = group();
    skip();
    if (i_ != text_.size()) fail("trailing text after group description");
    return g;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, base_ + i_); }

  void skip() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
  }
  void expect(char c) {
    skip();
    if (i_ >= text_.size() || text_[i_] != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < text_.size() && text_[i_] == c;
  }
  std::string identifier() {
    skip();
    const std::size_t start = i_;
    while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) ++i_;
    if (start == i_) fail("expected a group name");
    return std::string(text_.substr(start, i_ - start));
  }
  std::size_t number() {
    skip();
    const std::size_t start = i_;
    std::size_t v = 0;
    while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
      v = v * 10 + static_cast<std::size_t>(text_[i_] - '0');
      if (v > 1'000'000) fail("number too large");
      ++i_;
    }
    if (start == i_) fail("expected a number");
    return v;
  }
  // one permutation: a run of parenthesised cycles
  perm::Permutation cycles(std::size_t degree) {
    skip();
    const std::size_t start = i_;
    int depth = 0;
    while (i_ < text_.size()) {
      const char c = text_[i_];
      if (c == '(') ++depth;
      if (c == ')') {
        if (--depth < 0) break;
      }
      if (depth == 0 && c == ',') break;
      ++i_;
    }
    // back off a closing parenthesis of the enclosing call
    std::size_t end = i_;
    while (end > start && std::isspace(static_cast<unsigned char>(text_[end - 1]))) --end;
    try {
      return parse_cycles(text_.substr(start, end - start), degree);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), base_ + start + e.position());
    }
  }

  GroupSpec group() {
    const std::size_t at = i_;
    const std::string name = identifier();
    GroupSpec g;
    expect('(');
    if (name == "symmetric" || name == "cyclic" || name == "psl2") {
      g.kind = name == "symmetric" ? GroupSpec::Kind::Symmetric : name == "cyclic" ? GroupSpec::Kind::Cyclic : GroupSpec::Kind::Psl2;
      skip();
      const std::size_t num_at = base_ + i_;
      g.n = number();
      if (g.n == 0) throw ParseError("group size must be positive", num_at);
      if (g.kind == GroupSpec::Kind::Psl2 && (g.n < 5 || !perm::detail::is_prime(g.n))) throw ParseError("psl2 needs a prime p >= 5", num_at);
    } else if (name == "direct_product") {
      g.kind = GroupSpec::Kind::DirectProduct;
      g.factors.push_back(group());
      while (peek(',')) {
        ++i_;
        g.factors.push_back(group());
      }
    } else if (name == "generators") {
      g.kind = GroupSpec::Kind::Generators;
      g.n = number();
      while (peek(',')) {
        ++i_;
        g.generators.push_back(cycles(g.n));
      }
    } else {
      i_ = at;
      fail("unknown group '" + name + "'");
    }
    expect(')');
    return g;
  }

  std::string_view text_;
  std::size_t base_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline GroupSpec parse_group_spec(std::string_view text, std::size_t base = 0) { return detail::SpecParser(text, base).parse_all(); }

// ---------------------------------------------------------------------------
// Raw key-value file

struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t offset = 0;  // of the value in the file
};

struct ConfigSection {
  std::string name;  // empty for the top level
  std::size_t offset = 0;
  std::vector<ConfigEntry> entries;
};

/// Lines are `key = value`, `name {`, `}`, blank, or `#` comments. Sections
/// do not nest.
inline std::vector<ConfigSection> parse_sections(std::string_view text) {
  std::vector<ConfigSection> out(1);
  bool in_section = false;
  std::size_t pos = 0;
  auto valid_key = [](std::string_view k) {
    if (k.empty() || !(std::islower(static_cast<unsigned char>(k[0])))) return false;
    return std::all_of(k.begin(), k.end(), [](char c) { return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_'; });
  };
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    std::size_t a = 0;
    while (a < line.size() && std::isspace(static_cast<unsigned char>(line[a]))) ++a;
    std::size_t b = line.size();
    while (b > a && std::isspace(static_cast<unsigned char>(line[b - 1]))) --b;
    const std::string_view body = line.substr(a, b - a);
    const std::size_t at = pos + a;
    if (body.empty() || body[0] == '#') {
      // nothing
    } else if (body == "}") {
      if (!in_section) throw ParseError("'}' without an open section", at);
      in_section = false;
    } else if (body.back() == '{') {
      std::string_view name = body.substr(0, body.size() - 1);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
      if (in_section) throw ParseError("sections do not nest", at);
      if (!valid_key(name)) throw ParseError("invalid section name", at);
      out.push_back({std::string(name), at, {}});
      in_section = true;
    } else {
      const std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", at);
      std::string_view key = body.substr(0, eq);
      while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.remove_suffix(1);
      if (!valid_key(key)) throw ParseError("invalid key '" + std::string(key) + "'", at);
      std::size_t v = eq + 1;
      while (v < body.size() && std::isspace(static_cast<unsigned char>(body[v]))) ++v;
      if (v == body.size()) throw ParseError("missing value for '" + std::string(key) + "'", at + eq);
      (in_section ? out.back() : out.front()).entries.push_back({std::string(key), std::string(body.substr(v)), at + v});
    }
    pos = eol + 1;
  }
  if (in_section) throw ParseError("section '" + out.back().name + "' is not closed", out.back().offset);
  return out;
}

// ---------------------------------------------------------------------------
// Job configuration

struct SearchSpec {
  std::uint64_t order = 0;
  bool nonabelian = false;
  std::size_t count = 3;

  std::string to_string() const {
    return "order=" + std::to_string(order) + (nonabelian ? " nonabelian" : "") + " count=" + std::to_string(count);
  }
  friend bool operator==(const SearchSpec&, const SearchSpec&) = default;
};

inline SearchSpec parse_search_spec(std::string_view text, std::size_t base = 0) {
  SearchSpec s;
  bool have_order = false;
  std::istringstream in{std::string(text)};
  std::string word;
  std::size_t at = 0;
  while (in >> word) {
    at = text.find(word, at);
    auto number = [&](std::string_view v) {
      if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
          v.size() > 12) {
        throw ParseError("expected a number in '" + word + "'", base + at);
      }
      return std::stoull(std::string(v));
    };
    if (word.rfind("order=", 0) == 0) {
      s.order = number(std::string_view(word).substr(6));
      have_order = true;
    } else if (word.rfind("count=", 0) == 0) {
      s.count = number(std::string_view(word).substr(6));
    } else if (word == "nonabelian") {
      s.nonabelian = true;
    } else {
      throw ParseError("unknown search term '" + word + "'", base + at);
    }
    at += word.size();
  }
  if (!have_order || s.order == 0) throw ParseError("search needs order=N", base);
  return s;
}

struct SubgroupsConfig {
  /// One entry per subgroup: generators in cycle notation or as words in the
  /// group's generators (g1 g2^-1 ...), separated by ';'.
  std::vector<std::string> generators;
  std::optional<SearchSpec> search;
  friend bool operator==(const SubgroupsConfig&, const SubgroupsConfig&) = default;
};

struct ComplexConfig {
  enum class Source { Coset, Facets, File };
  Source source = Source::Coset;
  std::size_t vertices = 0;
  std::vector<std::vector<Vertex>> facets;  // 0-based
  std::optional<std::string> action;        // cycle notation, ';'-separated
  std::string path;
  friend bool operator==(const ComplexConfig&, const ComplexConfig&) = default;
};

struct OutputConfig {
  std::string json;
  std::string report;
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RaagConfig {
  std::size_t samples = 500;
  std::uint64_t seed = 1;
  std::size_t max_length = 8;
  friend bool operator==(const RaagConfig&, const RaagConfig&) = default;
};

struct TreeConfig {
  std::size_t x = 2;
  std::size_t y = 3;
  std::size_t radius = 2;
  char root_side = 'X';
  std::optional<GroupSpec> local_x;  // default symmetric(x)
  std::optional<GroupSpec> local_y;  // default symmetric(y)
  bool fix_root = true;
  friend bool operator==(const TreeConfig&, const TreeConfig&) = default;
};

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {"connected", "flag", "every_edge_in_triangle", "edge_swap_or_transitive",
                                                  "min_link_girth", "h1_trivial", "bounded"};
  return names;
}

struct JobConfig {
  std::optional<GroupSpec> group;
  std::optional<SubgroupsConfig> subgroups;
  std::optional<ComplexConfig> complex;
  std::vector<std::string> checks;  // empty: all
  OutputConfig output;
  std::optional<RaagConfig> raag;
  std::optional<TreeConfig> tree;
  friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

namespace detail {

inline std::size_t parse_count(const ConfigEntry& e) {
  const auto& v = e.value;
  if (v.empty() || v.size() > 12 || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw ParseError("'" + e.key + "' needs a non-negative integer", e.offset);
  }
  return std::stoull(v);
}

inline bool parse_bool(const ConfigEntry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  throw ParseError("'" + e.key + "' needs true or false", e.offset);
}

inline std::vector<std::vector<Vertex>> parse_facets(const ConfigEntry& e) {
  std::vector<std::vector<Vertex>> out;
  std::size_t start = 0;
  const std::string& v = e.value;
  while (start <= v.size()) {
    const std::size_t end = std::min(v.find(';', start), v.size());
    std::istringstream in(v.substr(start, end - start));
    std::vector<Vertex> facet;
    std::string tok;
    while (in >> tok) {
      if (tok.size() > 9 || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
          std::stoul(tok) == 0) {
        throw ParseError("facet vertices are positive integers", e.offset + start);
      }
      facet.push_back(static_cast<Vertex>(std::stoul(tok) - 1));
    }
    if (facet.empty()) throw ParseError("empty facet", e.offset + start);
    out.push_back(std::move(facet));
    start = end + 1;
  }
  return out;
}

}  // namespace detail

/// Subgroup generators: cycle notation when the text starts with '(',
/// otherwise words such as "g1 g2^-1 g1^2" in the group's generators.
inline std::vector<perm::Permutation> parse_subgroup_generators(std::string_view text, const perm::PermGroup& group) {
  std::vector<perm::Permutation> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    std::string_view part = text.substr(start, end - start);
    std::size_t lead = 0;
    while (lead < part.size() && std::isspace(static_cast<unsigned char>(part[lead]))) ++lead;
    if (lead < part.size() && part[lead] == '(') {
      try {
        out.push_back(parse_cycles(part, group.degree()));
      } catch (const ParseError& e) {
        throw ParseError(e.message(), start + e.position());
      }
    } else {
      perm::Permutation x = perm::Permutation::identity(group.degree());
      std::size_t i = 0;
      bool any = false;
      while (i < part.size()) {
        if (std::isspace(static_cast<unsigned char>(part[i]))) {
          ++i;
          continue;
        }
        const std::size_t at = start + i;
        if (part[i] != 'g') throw ParseError("expected a generator name g1, g2, ...", at);
        ++i;
        std::size_t k = 0;
        const std::size_t digits = i;
        while (i < part.size() && std::isdigit(static_cast<unsigned char>(part[i])) && i - digits < 6) k = k * 10 + static_cast<std::size_t>(part[i++] - '0');
        if (i == digits || k == 0 || k > group.generators().size()) throw ParseError("no such generator", at);
        long long e = 1;
        if (i < part.size() && part[i] == '^') {
          ++i;
          bool neg = false;
          if (i < part.size() && part[i] == '-') {
            neg = true;
            ++i;
          }
          const std::size_t d = i;
          long long v = 0;
          while (i < part.size() && std::isdigit(static_cast<unsigned char>(part[i])) && i - d < 9) v = v * 10 + (part[i++] - '0');
          if (i == d) throw ParseError("expected an exponent", start + d);
          e = neg ? -v : v;
        }
        x = x * group.generators()[k - 1].pow(e);
        any = true;
      }
      if (!any) throw ParseError("empty generator", start);
      out.push_back(std::move(x));
    }
    start = end + 1;
  }
  return out;
}

/// Parses a job file; unknown keys and sections are rejected.
inline JobConfig parse_config(std::string_view text) {
  using detail::parse_count;
  JobConfig cfg;
  std::set<std::string> seen_sections;
  for (const auto& sec : parse_sections(text)) {
    if (!sec.name.empty() && !seen_sections.insert(sec.name).second) throw ParseError("section '" + sec.name + "' repeats", sec.offset);
    std::set<std::string> seen;
    auto once = [&](const ConfigEntry& e) {
      if (!seen.insert(e.key).second) throw ParseError("key '" + e.key + "' repeats", e.offset);
    };
    auto unknown = [](const ConfigEntry& e, const std::string& where) -> ParseError {
      return ParseError("unknown key '" + e.key + "'" + (where.empty() ? "" : " in section '" + where + "'"), e.offset);
    };
    if (sec.name.empty()) {
      for (const auto& e : sec.entries) {
        once(e);
        if (e.key == "group") {
          cfg.group = parse_group_spec(e.value, e.offset);
        } else if (e.key == "checks") {
          std::istringstream in(e.value);
          std::string c;
          while (in >> c) {
            const auto& k = known_checks();
            if (std::find(k.begin(), k.end(), c) == k.end()) throw ParseError("unknown check '" + c + "'", e.offset);
            cfg.checks.push_back(c);
          }
        } else {
          throw unknown(e, "");
        }
      }
    } else if (sec.name == "subgroups") {
      SubgroupsConfig s;
      for (const auto& e : sec.entries) {
        if (e.key == "generators") {
          if (cfg.group) {
            try {
              parse_subgroup_generators(e.value, cfg.group->build());
            } catch (const ParseError& err) {
              throw ParseError(err.message(), e.offset + err.position());
            }
          }
          s.generators.push_back(e.value);
        } else if (e.key == "search") {
          once(e);
          s.search = parse_search_spec(e.value, e.offset);
        } else {
          throw unknown(e, sec.name);
        }
      }
      if (s.search && !s.generators.empty()) throw ParseError("give either generators or search, not both", sec.offset);
      cfg.subgroups = std::move(s);
    } else if (sec.name == "complex") {
      ComplexConfig c;
      std::size_t action_offset = 0;
      for (const auto& e : sec.entries) {
        once(e);
        if (e.key == "source") {
          if (e.value == "coset") c.source = ComplexConfig::Source::Coset;
          else if (e.value == "facets") c.source = ComplexConfig::Source::Facets;
          else if (e.value == "file") c.source = ComplexConfig::Source::File;
          else throw ParseError("source must be coset, facets or file", e.offset);
        } else if (e.key == "vertices") {
          c.vertices = parse_count(e);
        } else if (e.key == "facets") {
          c.facets = detail::parse_facets(e);
        } else if (e.key == "action") {
          c.action = e.value;
          action_offset = e.offset;
        } else if (e.key == "path") {
          c.path = e.value;
        } else {
          throw unknown(e, sec.name);
        }
      }
      if (c.source == ComplexConfig::Source::Facets) {
        for (const auto& f : c.facets) {
          for (Vertex v : f) c.vertices = std::max<std::size_t>(c.vertices, v + 1);
        }
        if (c.action) {
          try {
            parse_cycle_list(*c.action, c.vertices);
          } catch (const ParseError& err) {
            throw ParseError(err.message(), action_offset + err.position());
          }
        }
      }
      cfg.complex = std::move(c);
    } else if (sec.name == "output") {
      for (const auto& e : sec.entries) {
        once(e);
        if (e.value.find('/') != std::string::npos || e.value == "." || e.value == "..") {
          throw ParseError("output names are plain file names inside --out", e.offset);
        }
        if (e.key == "json") cfg.output.json = e.value;
        else if (e.key == "report") cfg.output.report = e.value;
        else throw unknown(e, sec.name);
      }
    } else if (sec.name == "raag") {
      RaagConfig r;
      for (const auto& e : sec.entries) {
        once(e);
        if (e.key == "samples") r.samples = parse_count(e);
        else if (e.key == "seed") r.seed = parse_count(e);
        else if (e.key == "max_length") r.max_length = parse_count(e);
        else throw unknown(e, sec.name);
      }
      cfg.raag = r;
    } else if (sec.name == "tree") {
      TreeConfig t;
      for (const auto& e : sec.entries) {
        once(e);
        if (e.key == "x") t.x = parse_count(e);
        else if (e.key == "y") t.y = parse_count(e);
        else if (e.key == "radius") t.radius = parse_count(e);
        else if (e.key == "root_side") {
          if (e.value != "X" && e.value != "Y") throw ParseError("root_side must be X or Y", e.offset);
          t.root_side = e.value[0];
        } else if (e.key == "local_x") t.local_x = parse_group_spec(e.value, e.offset);
        else if (e.key == "local_y") t.local_y = parse_group_spec(e.value, e.offset);
        else if (e.key == "fix_root") t.fix_root = detail::parse_bool(e);
        else throw unknown(e, sec.name);
      }
      cfg.tree = std::move(t);
    } else {
      throw ParseError("unknown section '" + sec.name + "'", sec.offset);
    }
  }
  return cfg;
}

/// Canonical text of a job; parse_config(print_config(c)) == c.
inline std::string print_config(const JobConfig& c) {
  std::ostringstream out;
  if (c.group) out << "group = " << c.group->to_string() << "\n";
  if (!c.checks.empty()) {
    out << "checks =";
    for (const auto& k : c.checks) out << " " << k;
    out << "\n";
  }
  if (c.subgroups) {
    out << "subgroups {\n";
    for (const auto& g : c.subgroups->generators) out << "  generators = " << g << "\n";
    if (c.subgroups->search) out << "  search = " << c.subgroups->search->to_string() << "\n";
    out << "}\n";
  }
  if (c.complex) {
    const auto& x = *c.complex;
    out << "complex {\n  source = "
        << (x.source == ComplexConfig::Source::Coset ? "coset" : x.source == ComplexConfig::Source::Facets ? "facets" : "file") << "\n";
    if (x.vertices) out << "  vertices = " << x.vertices << "\n";
    if (!x.facets.empty()) {
      out << "  facets =";
      for (std::size_t i = 0; i < x.facets.size(); ++i) {
        if (i) out << ";";
        for (Vertex v : x.facets[i]) out << " " << v + 1;
      }
      out << "\n";
    }
    if (x.action) out << "  action = " << *x.action << "\n";
    if (!x.path.empty()) out << "  path = " << x.path << "\n";
    out << "}\n";
  }
  if (!c.output.json.empty() || !c.output.report.empty()) {
    out << "output {\n";
    if (!c.output.json.empty()) out << "  json = " << c.output.json << "\n";
    if (!c.output.report.empty()) out << "  report = " << c.output.report << "\n";
    out << "}\n";
  }
  if (c.raag) {
    out << "raag {\n  samples = " << c.raag->samples << "\n  seed = " << c.raag->seed << "\n  max_length = " << c.raag->max_length
        << "\n}\n";
  }
  if (c.tree) {
    const auto& t = *c.tree;
    out << "tree {\n  x = " << t.x << "\n  y = " << t.y << "\n  radius = " << t.radius << "\n  root_side = " << t.root_side << "\n";
    if (t.local_x) out << "  local_x = " << t.local_x->to_string() << "\n";
    if (t.local_y) out << "  local_y = " << t.local_y->to_string() << "\n";
    out << "  fix_root = " << (t.fix_root ? "true" : "false") << "\n}\n";
  }
  return out.str();
}

}  // namespace tdlc::cli
