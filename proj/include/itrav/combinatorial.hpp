#pragma once

#include <algorithm>
#include <vector>

#include "itrav/graph.hpp"
#include "itrav/trace.hpp"

// Reference traversals working directly on vertex sets. They are the ground
// truth the algebraic engine is checked against.

namespace itrav {

namespace detail {

inline std::vector<Label> flagged(const std::vector<char>& flags, Label first = 1) {
  std::vector<Label> out;
  for (Label v = first; v <= flags.size(); ++v)
    if (flags[v - 1]) out.push_back(v);
  return out;
}

/// N: unvisited neighbours of the frontier.
inline std::vector<char> neighbourhood(const Graph& g, const std::vector<Label>& frontier,
                                       const std::vector<char>& visited) {
  std::vector<char> out(g.n(), 0);
  for (Label f : frontier)
    for (Label v : g.neighbors(f))
      if (!visited[v - 1]) out[v - 1] = 1;
  return out;
}

inline void check_start(const Graph& g, Label s) {
  if (s < 1 || s > g.n())
    throw GraphError("start vertex " + std::to_string(s) + " outside [1, " +
                     std::to_string(g.n()) + "]");
}

}  // namespace detail

inline TraversalTrace combinatorial_bfs(const Graph& g, Label s) {
  detail::check_start(g, s);
  TraversalTrace trace{s, {{0, {s}, {}}}};
  std::vector<char> visited(g.n(), 0);
  visited[s - 1] = 1;
  for (std::uint32_t k = 0;; ++k) {
    auto next = detail::flagged(detail::neighbourhood(g, trace.records.back().frontier, visited));
    if (next.empty()) break;
    for (Label v : next) visited[v - 1] = 1;
    trace.records.push_back({k + 1, std::move(next), {}});
  }
  return trace;
}

/// Unvisited vertices reachable from `seeds` along label-ascending chains
/// whose vertices are all unvisited. Seeds themselves are not returned.
///
/// One ascending pass suffices: a vertex can only be entered from a smaller
/// label, and every smaller label has already been decided when it is reached.
inline std::vector<Label> correct_chain_closure(const Graph& g, const std::vector<Label>& seeds,
                                                const std::vector<Label>& visited) {
  if (seeds.empty()) return {};
  std::vector<char> is_visited(g.n(), 0), reached(g.n(), 0);
  for (Label v : visited) is_visited[v - 1] = 1;
  for (Label s : seeds) {
    if (is_visited[s - 1]) throw GraphError("closure seeds must be unvisited");
    reached[s - 1] = 1;
  }
  std::vector<Label> out;
  const Label first = *std::min_element(seeds.begin(), seeds.end());
  for (Label i = first + 1; i <= g.n(); ++i) {
    if (is_visited[i - 1] || reached[i - 1]) continue;
    for (Label j : g.neighbors(i)) {
      if (j >= i) break;
      if (reached[j - 1]) {
        reached[i - 1] = 1;
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

/// Each iteration: one neighbourhood step, then closure along correct chains
/// leaving the newly reached vertices.
inline TraversalTrace combinatorial_ccs(const Graph& g, Label s) {
  detail::check_start(g, s);
  TraversalTrace trace{s, {{0, {s}, {}}}};
  std::vector<char> visited(g.n(), 0);
  visited[s - 1] = 1;
  for (std::uint32_t k = 0;; ++k) {
    auto seeds = detail::flagged(detail::neighbourhood(g, trace.records.back().frontier, visited));
    if (seeds.empty()) break;
    auto closure = correct_chain_closure(g, seeds, detail::flagged(visited));
    std::vector<Label> next;
    next.reserve(seeds.size() + closure.size());
    std::merge(seeds.begin(), seeds.end(), closure.begin(), closure.end(),
               std::back_inserter(next));
    for (Label v : next) visited[v - 1] = 1;
    trace.records.push_back({k + 1, std::move(next), {}});
  }
  return trace;
}

}  // namespace itrav
