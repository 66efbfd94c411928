#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "itrav/graph.hpp"
#include "itrav/io.hpp"

namespace itrav {

namespace detail {

// std::uniform_int_distribution is implementation-defined; this keeps
// generated graphs identical across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do r = rng();
  while (r >= limit);
  return r % bound;
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

}  // namespace detail

/// Reproducible random graph with exactly `component_count` components.
/// Vertices are shuffled into components of random sizes; each component is
/// a random recursive spanning tree plus extra random edges until roughly
/// `edge_density` of its vertex pairs are joined. Density 0 means no edges
/// at all, which is only feasible with n components.
inline EdgeList generate_random_graph(Label n, double edge_density, Label component_count,
                                      std::uint64_t seed) {
  if (n < 1) throw GraphError("random graph needs at least one vertex");
  if (!(edge_density >= 0.0 && edge_density <= 1.0))
    throw GraphError("edge density must lie in [0, 1]");
  if (component_count < 1 || component_count > n)
    throw GraphError("component count must lie in [1, n]");
  if (edge_density == 0.0 && component_count != n)
    throw GraphError("density 0 leaves every vertex isolated; request n components");

  std::mt19937_64 rng(seed);
  std::vector<Label> labels(n);
  std::iota(labels.begin(), labels.end(), Label{1});
  detail::shuffle(labels, rng);

  std::set<Label> cuts;
  while (cuts.size() + 1 < component_count)
    cuts.insert(static_cast<Label>(1 + detail::uniform_below(rng, n - 1)));
  std::vector<Label> bounds{0};
  bounds.insert(bounds.end(), cuts.begin(), cuts.end());
  bounds.push_back(n);

  EdgeList out;
  out.n = n;
  auto key = [n](Label a, Label b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * (static_cast<std::uint64_t>(n) + 1) + b;
  };
  for (std::size_t c = 0; c + 1 < bounds.size(); ++c) {
    const Label lo = bounds[c], size = bounds[c + 1] - bounds[c];
    if (size < 2) continue;
    auto member = [&](std::uint64_t t) { return labels[lo + t]; };
    std::unordered_set<std::uint64_t> present;
    for (Label t = 1; t < size; ++t) {
      Label u = member(t), v = member(detail::uniform_below(rng, t));
      out.edges.emplace_back(u, v);
      present.insert(key(u, v));
    }
    const double pairs = 0.5 * static_cast<double>(size) * (size - 1);
    const auto target = static_cast<std::uint64_t>(std::llround(edge_density * pairs));
    if (target <= size - 1u) continue;
    const auto extra = target - (size - 1u);
    if (2 * target > pairs) {
      std::vector<Edge> rest;
      for (Label a = 0; a < size; ++a)
        for (Label b = a + 1; b < size; ++b)
          if (!present.count(key(member(a), member(b)))) rest.emplace_back(member(a), member(b));
      detail::shuffle(rest, rng);
      rest.resize(std::min<std::size_t>(rest.size(), extra));
      out.edges.insert(out.edges.end(), rest.begin(), rest.end());
    } else {
      for (std::uint64_t added = 0; added < extra;) {
        Label u = member(detail::uniform_below(rng, size));
        Label v = member(detail::uniform_below(rng, size));
        if (u == v || !present.insert(key(u, v)).second) continue;
        out.edges.emplace_back(u, v);
        ++added;
      }
    }
  }
  return out;
}

}  // namespace itrav
