#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdlc/errors.hpp"
#include "tdlc/perm/permutation.hpp"

namespace tdlc::cli {

/// Parses 1-based cycle notation such as "(1 2)(3 4 5)". Cycles are composed
/// left to right (right action), so "(1 2)(2 3)" equals "(1 3 2)". Points may
/// be separated by spaces or commas. Without a degree, the largest point
/// mentioned sets it.
inline perm::Permutation parse_cycles(std::string_view text, std::optional<std::size_t> degree = {}) {
  std::vector<std::vector<perm::Point>> cycles;
  std::vector<std::size_t> cycle_start;
  std::size_t i = 0;
  std::size_t largest = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i == text.size()) throw ParseError("empty permutation", i);
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '('", i);
    cycle_start.push_back(i);
    ++i;
    std::vector<perm::Point> cycle;
    for (;;) {
      skip();
      if (i == text.size()) throw ParseError("unbalanced parentheses", cycle_start.back());
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError(std::string("unexpected '") + text[i] + "'", i);
      const std::size_t at = i;
      std::size_t value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<std::size_t>(text[i] - '0');
        if (value > 1'000'000) throw ParseError("point too large", at);
        ++i;
      }
      if (value == 0) throw ParseError("points are 1-based", at);
      const auto p = static_cast<perm::Point>(value - 1);
      for (perm::Point q : cycle) {
        if (q == p) throw ParseError("point " + std::to_string(value) + " repeats within a cycle", at);
      }
      cycle.push_back(p);
      largest = std::max(largest, value);
    }
    cycles.push_back(std::move(cycle));
    skip();
  }
  const std::size_t n = degree.value_or(largest);
  if (largest > n) throw ParseError("point " + std::to_string(largest) + " exceeds the degree " + std::to_string(n), 0);
  return perm::Permutation::from_cycles(n, cycles);
}

/// Several permutations separated by ';'.
inline std::vector<perm::Permutation> parse_cycle_list(std::string_view text, std::size_t degree) {
  std::vector<perm::Permutation> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    try {
      out.push_back(parse_cycles(text.substr(start, end - start), degree));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), start + e.position());
    }
    start = end + 1;
  }
  return out;
}

}  // namespace tdlc::cli
