#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tdlc/errors.hpp"
#include "tdlc/graph.hpp"

namespace tdlc::raag {

/// v^exponent with exponent ±1.
struct Letter {
  Vertex vertex = 0;
  int exponent = 1;

  Letter inverse() const { return {vertex, -exponent}; }
  /// Total order used for the shortlex normal form: v before v^-1, then by vertex.
  unsigned code() const { return 2 * vertex + (exponent < 0 ? 1U : 0U); }

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A word in the right-angled Artin group of a graph: generators are the
/// vertices, and two generators commute exactly when they span an edge.
class RaagWord {
public:
  explicit RaagWord(std::shared_ptr<const Graph> graph, std::vector<Letter> letters = {})
      : graph_(std::move(graph)), letters_(std::move(letters)) {
    if (!graph_) throw InputError("word needs a defining graph");
    for (const auto& l : letters_) {
      if (l.vertex >= graph_->vertex_count()) throw InputError("letter names an unknown vertex");
      if (l.exponent != 1 && l.exponent != -1) throw InputError("letter exponent must be +1 or -1");
    }
  }

  const std::shared_ptr<const Graph>& graph() const noexcept { return graph_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  RaagWord inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (auto& l : out) l = l.inverse();
    return RaagWord(graph_, std::move(out));
  }

  /// Concatenation; both words must share the defining graph.
  RaagWord operator*(const RaagWord& other) const {
    if (graph_ != other.graph_ && !same_graph(*graph_, *other.graph_)) throw InputError("words over different graphs");
    std::vector<Letter> out = letters_;
    out.insert(out.end(), other.letters_.begin(), other.letters_.end());
    return RaagWord(graph_, std::move(out));
  }

  bool commute(Vertex a, Vertex b) const { return a != b && graph_->has_edge(a, b); }

  /// Letters as v or v^-1 with 1-based vertex names, e.g. "v1 v3^-1"; "1" when empty.
  std::string to_string() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (const auto& l : letters_) {
      if (!s.empty()) s += ' ';
      s += "v" + std::to_string(l.vertex + 1) + (l.exponent < 0 ? "^-1" : "");
    }
    return s;
  }

  /// Syntactic equality of letters (use normalize for group equality).
  friend bool operator==(const RaagWord& a, const RaagWord& b) { return a.letters_ == b.letters_; }

private:
  static bool same_graph(const Graph& a, const Graph& b) { return a.vertex_count() == b.vertex_count() && a.edges() == b.edges(); }

  std::shared_ptr<const Graph> graph_;
  std::vector<Letter> letters_;
};

/// Shortlex-least word representing the same element.
///
/// Pass 1 cancels: each new letter looks back past letters it commutes with
/// for its inverse. Pass 2 orders: repeatedly take the least letter that
/// commutes with everything before it. A word with no cancellable pair is
/// geodesic, and geodesics of one element differ only by commutations, so
/// the greedy pass yields the least one.
inline RaagWord normalize(const RaagWord& w) {
  std::vector<Letter> reduced;
  for (const auto& l : w.letters()) {
    bool cancelled = false;
    for (std::size_t i = reduced.size(); i-- > 0;) {
      if (reduced[i] == l.inverse()) {
        reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(i));
        cancelled = true;
        break;
      }
      if (!w.commute(reduced[i].vertex, l.vertex)) break;
    }
    if (!cancelled) reduced.push_back(l);
  }

  std::vector<Letter> out;
  out.reserve(reduced.size());
  std::vector<bool> used(reduced.size(), false);
  for (std::size_t step = 0; step < reduced.size(); ++step) {
    std::size_t best = reduced.size();
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (used[i]) continue;
      bool front = true;
      for (std::size_t j = 0; j < i && front; ++j) {
        if (!used[j] && !w.commute(reduced[j].vertex, reduced[i].vertex)) front = false;
      }
      if (front && (best == reduced.size() || reduced[i].code() < reduced[best].code())) best = i;
    }
    used[best] = true;
    out.push_back(reduced[best]);
  }
  return RaagWord(w.graph(), std::move(out));
}

inline bool equal_in_group(const RaagWord& a, const RaagWord& b) { return normalize(a) == normalize(b); }

/// The homomorphism to Z sending every generator to 1.
inline long exponent_sum(const RaagWord& w) {
  long s = 0;
  for (const auto& l : w.letters()) s += l.exponent;
  return s;
}

}  // namespace tdlc::raag
