#pragma once

// Fixtures, a random corpus, and test-side oracles. The oracles use dense
// loops over every vertex and share no code with the library traversals.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "itrav/itrav.hpp"

namespace itrav::testing {

inline Graph eight_vertex_graph(std::uint64_t d = 2) {
  return build_graph(
      std::vector<Edge>{{1, 2}, {2, 3}, {2, 6}, {3, 4}, {3, 7}, {5, 6}, {6, 7}, {7, 8}}, 8, d);
}

/// Path visiting `order` in sequence; labels are 1..order.size().
inline Graph path_graph(const std::vector<Label>& order, std::uint64_t d = 2) {
  std::vector<Edge> edges;
  for (std::size_t t = 1; t < order.size(); ++t) edges.emplace_back(order[t - 1], order[t]);
  return build_graph(edges, static_cast<Label>(order.size()), d);
}

/// Five vertices where a signed Gauss-Seidel sweep at d = 2 cancels:
/// x_5^(1) = (x_2 + x_3 + x_4)(-2) = (-4 - 4 + 8)(-2) = 0.
inline Graph cancelling_graph() {
  return build_graph(std::vector<Edge>{{1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 5}, {4, 5}}, 5);
}

struct CorpusGraph {
  Graph graph;
  Label components = 1;
  double density = 0.0;
  std::uint64_t seed = 0;
};

/// Deterministic corpus with sizes in [min_n, max_n], densities spanning
/// trees to dense graphs and up to max_components components.
inline std::vector<CorpusGraph> random_corpus(std::size_t count, Label min_n, Label max_n,
                                              Label max_components, std::uint64_t seed) {
  static constexpr double kDensities[] = {0.0, 0.02, 0.05, 0.1, 0.2, 0.35, 0.6};
  std::vector<CorpusGraph> out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const auto n = static_cast<Label>(min_n + detail::uniform_below(rng, max_n - min_n + 1));
    const auto k = static_cast<Label>(
        1 + detail::uniform_below(rng, std::min<Label>(max_components, n)));
    double density = kDensities[detail::uniform_below(rng, std::size(kDensities))];
    if (density == 0.0 && k != n) density = 0.01;
    const std::uint64_t graph_seed = rng();
    auto list = generate_random_graph(n, density, k, graph_seed);
    out.push_back({build_graph(list.edges, list.n), k, density, graph_seed});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dense reference sweep

/// One iteration over every vertex in label order, exact arithmetic.
inline std::vector<mpz_class> dense_step(const Graph& g, const std::vector<mpz_class>& x,
                                         Label s, Variant variant, const mpz_class& d) {
  std::vector<mpz_class> next = x;
  for (Label i = 1; i <= g.n(); ++i) {
    mpz_class acc = 0;
    for (Label j = 1; j <= g.n(); ++j) {
      if (!g.has_edge(i, j)) continue;
      const bool use_new = variant != Variant::jacobi && j < i;
      acc += use_new ? next[j - 1] : x[j - 1];
    }
    const mpz_class b = i == s ? 1 : 0;
    if (variant == Variant::unsigned_ccs)
      next[i - 1] = (b + acc) * d;
    else
      next[i - 1] = (acc - b) * -d;
  }
  return next;
}

struct DenseRun {
  std::vector<std::vector<mpz_class>> states;   // x^(0), x^(1), ...
  std::vector<std::vector<Label>> frontiers;    // F^(0), F^(1), ... nonempty
};

/// Iterates until an iteration turns no unseen vertex nonzero.
inline DenseRun dense_run(const Graph& g, Label s, Variant variant, const mpz_class& d) {
  DenseRun run;
  std::vector<mpz_class> x(g.n(), 0);
  x[s - 1] = d;
  std::vector<char> seen(g.n(), 0);
  seen[s - 1] = 1;
  run.states.push_back(x);
  run.frontiers.push_back({s});
  for (;;) {
    auto next = dense_step(g, x, s, variant, d);
    std::vector<Label> frontier;
    for (Label v = 1; v <= g.n(); ++v)
      if (!seen[v - 1] && sgn(next[v - 1]) != 0) frontier.push_back(v);
    if (frontier.empty()) break;
    for (Label v : frontier) seen[v - 1] = 1;
    run.frontiers.push_back(frontier);
    run.states.push_back(next);
    x = std::move(next);
  }
  return run;
}

// ---------------------------------------------------------------------------
// Distances and path counts

/// Hop distances by repeated relaxation over all edges; -1 when unreachable.
inline std::vector<std::int64_t> relaxed_distances(const Graph& g, Label s) {
  std::vector<std::int64_t> dist(g.n(), -1);
  dist[s - 1] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [u, v] : g.edges())
      for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}})
        if (dist[a - 1] >= 0 && (dist[b - 1] < 0 || dist[b - 1] > dist[a - 1] + 1)) {
          dist[b - 1] = dist[a - 1] + 1;
          changed = true;
        }
  }
  return dist;
}

/// Number of shortest s-v paths: the entry of A^dist e_s, since every walk of
/// length dist(s, v) ending at v is a shortest path.
inline std::vector<mpz_class> shortest_path_counts_by_powers(const Graph& g, Label s) {
  const auto dist = relaxed_distances(g, s);
  std::vector<mpz_class> walks(g.n(), 0), counts(g.n(), 0);
  walks[s - 1] = 1;
  counts[s - 1] = 1;
  for (std::int64_t len = 1; len < static_cast<std::int64_t>(g.n()); ++len) {
    std::vector<mpz_class> next(g.n(), 0);
    for (const auto& [u, v] : g.edges()) {
      next[v - 1] += walks[u - 1];
      next[u - 1] += walks[v - 1];
    }
    walks = std::move(next);
    for (Label v = 1; v <= g.n(); ++v)
      if (dist[v - 1] == len) counts[v - 1] = walks[v - 1];
  }
  return counts;
}

inline mpz_class power(const mpz_class& base, unsigned long exponent) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

inline std::vector<std::string> strings_of(const std::vector<long>& values) {
  std::vector<std::string> out;
  for (long v : values) out.push_back(std::to_string(v));
  return out;
}

inline TraversalConfig config(Variant variant, ArithmeticMode mode = ArithmeticMode::exact) {
  TraversalConfig cfg;
  cfg.variant = variant;
  cfg.mode = mode;
  cfg.cross_check = false;
  return cfg;
}

}  // namespace itrav::testing
