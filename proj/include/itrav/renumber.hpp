#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "itrav/algebraic.hpp"
#include "itrav/graph.hpp"

namespace itrav {

namespace detail {

/// Level order of the component of `root`: by distance, ties by label.
/// Appends to `order` and marks `seen`.
inline void level_order(const Graph& g, Label root, std::vector<char>& seen,
                        std::vector<Label>& order) {
  std::vector<Label> level{root};
  seen[root - 1] = 1;
  while (!level.empty()) {
    order.insert(order.end(), level.begin(), level.end());
    std::vector<Label> next;
    for (Label v : level)
      for (Label u : g.neighbors(v))
        if (!seen[u - 1]) {
          seen[u - 1] = 1;
          next.push_back(u);
        }
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
}

}  // namespace detail

/// Relabels vertices in nondecreasing distance from `root` (ties by old
/// label), so the root becomes 1 and every vertex of its component has a
/// neighbour one level closer with a smaller label. Other components follow,
/// each in level order from its smallest old label.
inline VertexPermutation bfs_order_renumbering(const Graph& g, Label root) {
  detail::check_start(g, root);
  std::vector<char> seen(g.n(), 0);
  std::vector<Label> order;
  order.reserve(g.n());
  detail::level_order(g, root, seen, order);
  for (Label v = 1; v <= g.n(); ++v)
    if (!seen[v - 1]) detail::level_order(g, v, seen, order);

  std::vector<Label> forward(g.n());
  for (Label pos = 0; pos < order.size(); ++pos) forward[order[pos] - 1] = pos + 1;
  return VertexPermutation::from_forward(std::move(forward));
}

struct NumberingReport {
  std::uint32_t n_ccs_before = 0;
  std::uint32_t n_ccs_after = 0;
  // Share of non-root vertices of the root's component whose
  // lowest-labelled predecessor one level closer carries a smaller label.
  double ascending_tree_edges_before = 0.0;
  double ascending_tree_edges_after = 0.0;
  VertexPermutation permutation;
};

namespace detail {

inline double ascending_tree_edge_fraction(const Graph& g, Label root) {
  std::vector<std::int64_t> dist(g.n(), -1);
  std::deque<Label> queue{root};
  dist[root - 1] = 0;
  while (!queue.empty()) {
    Label v = queue.front();
    queue.pop_front();
    for (Label u : g.neighbors(v))
      if (dist[u - 1] < 0) {
        dist[u - 1] = dist[v - 1] + 1;
        queue.push_back(u);
      }
  }
  std::size_t tree_edges = 0, ascending = 0;
  for (Label v = 1; v <= g.n(); ++v) {
    if (v == root || dist[v - 1] < 0) continue;
    ++tree_edges;
    for (Label u : g.neighbors(v))  // ascending, so the first hit is the lowest
      if (dist[u - 1] == dist[v - 1] - 1) {
        if (u < v) ++ascending;
        break;
      }
  }
  return tree_edges == 0 ? 1.0 : static_cast<double>(ascending) / static_cast<double>(tree_edges);
}

inline std::uint32_t ccs_iterations(const Graph& g, Label root) {
  TraversalConfig cfg;
  cfg.variant = Variant::unsigned_ccs;
  cfg.mode = ArithmeticMode::saturate;
  cfg.masking = true;
  return find_connected_component(g, root, cfg).trace.iteration_count();
}

}  // namespace detail

/// CCS iteration counts from `root` before and after bfs_order_renumbering.
inline NumberingReport numbering_quality(const Graph& g, Label root) {
  NumberingReport r;
  r.permutation = bfs_order_renumbering(g, root);
  auto renumbered = apply_permutation(g, r.permutation);
  const Label new_root = r.permutation.map(root);
  r.n_ccs_before = detail::ccs_iterations(g, root);
  r.n_ccs_after = detail::ccs_iterations(renumbered, new_root);
  r.ascending_tree_edges_before = detail::ascending_tree_edge_fraction(g, root);
  r.ascending_tree_edges_after = detail::ascending_tree_edge_fraction(renumbered, new_root);
  return r;
}

}  // namespace itrav
