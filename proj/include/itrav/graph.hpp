#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace itrav {

// Vertex labels are 1-based everywhere in the public API.
using Label = std::uint32_t;
using Edge = std::pair<Label, Label>;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t kDefaultDiagonal = 2;

/// Undirected simple graph stored as ascending-sorted adjacency lists
/// (the sparsity pattern of the modified adjacency matrix). The diagonal
/// value `d` travels with the graph so traces can be reproduced from it.
class Graph {
 public:
  Graph() = default;

  Label n() const { return n_; }
  std::size_t m() const { return neighbors_.size() / 2; }
  std::uint64_t d() const { return d_; }

  /// Number of duplicate or reversed copies dropped when the graph was built.
  std::size_t dropped_duplicates() const { return dropped_; }

  std::span<const Label> neighbors(Label v) const {
    return {neighbors_.data() + offsets_[v - 1], neighbors_.data() + offsets_[v]};
  }
  std::size_t degree(Label v) const { return offsets_[v] - offsets_[v - 1]; }

  bool has_edge(Label u, Label v) const {
    auto adj = neighbors(u);
    return std::binary_search(adj.begin(), adj.end(), v);
  }

  /// Every edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m());
    for (Label u = 1; u <= n_; ++u)
      for (Label v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && d_ == other.d_ && offsets_ == other.offsets_ &&
           neighbors_ == other.neighbors_;
  }

 private:
  friend Graph build_graph(std::span<const Edge>, Label, std::uint64_t);

  Label n_ = 0;
  std::uint64_t d_ = kDefaultDiagonal;
  std::size_t dropped_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Label> neighbors_;
};

/// Builds the canonical graph on labels 1..n. Duplicate and reversed edges
/// are collapsed (the count is kept in dropped_duplicates()); self-loops and
/// labels outside [1, n] are rejected.
inline Graph build_graph(std::span<const Edge> edges, Label n,
                         std::uint64_t d = kDefaultDiagonal) {
  if (n < 1) throw GraphError("graph must have at least one vertex");
  if (d < 1) throw GraphError("diagonal value d must be >= 1");

  std::vector<Edge> arcs;
  arcs.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 1 || u > n || v < 1 || v > n)
      throw GraphError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") has a label outside [1, " + std::to_string(n) + "]");
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  auto last = std::unique(arcs.begin(), arcs.end());
  const std::size_t dropped_arcs = static_cast<std::size_t>(arcs.end() - last);
  arcs.erase(last, arcs.end());

  Graph g;
  g.n_ = n;
  g.d_ = d;
  g.dropped_ = dropped_arcs / 2;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (auto [u, v] : arcs) ++g.offsets_[u];
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.neighbors_.reserve(arcs.size());
  for (auto [u, v] : arcs) g.neighbors_.push_back(v);
  return g;
}

inline Graph build_graph(const std::vector<Edge>& edges, Label n,
                         std::uint64_t d = kDefaultDiagonal) {
  return build_graph(std::span<const Edge>(edges), n, d);
}

/// Same graph with a different diagonal value.
inline Graph with_diagonal(const Graph& g, std::uint64_t d) {
  auto e = g.edges();
  return build_graph(e, g.n(), d);
}

// ---------------------------------------------------------------------------
// Relabeling

class VertexPermutation {
 public:
  VertexPermutation() = default;

  static VertexPermutation identity(Label n) {
    std::vector<Label> fwd(n);
    std::iota(fwd.begin(), fwd.end(), Label{1});
    return from_forward(std::move(fwd));
  }

  /// forward[old - 1] = new label. Throws unless it is a bijection on [1, n].
  static VertexPermutation from_forward(std::vector<Label> forward) {
    VertexPermutation p;
    const auto n = static_cast<Label>(forward.size());
    p.inverse_.assign(n, 0);
    for (Label old = 1; old <= n; ++old) {
      Label nw = forward[old - 1];
      if (nw < 1 || nw > n || p.inverse_[nw - 1] != 0)
        throw GraphError("not a permutation of [1, " + std::to_string(n) + "]");
      p.inverse_[nw - 1] = old;
    }
    p.forward_ = std::move(forward);
    return p;
  }

  Label size() const { return static_cast<Label>(forward_.size()); }
  Label map(Label old_label) const { return forward_[old_label - 1]; }
  Label unmap(Label new_label) const { return inverse_[new_label - 1]; }
  const std::vector<Label>& forward() const { return forward_; }
  const std::vector<Label>& inverse() const { return inverse_; }

  VertexPermutation inverted() const {
    VertexPermutation p;
    p.forward_ = inverse_;
    p.inverse_ = forward_;
    return p;
  }

  bool operator==(const VertexPermutation&) const = default;

 private:
  std::vector<Label> forward_;
  std::vector<Label> inverse_;
};

inline Graph apply_permutation(const Graph& g, const VertexPermutation& p) {
  if (p.size() != g.n())
    throw GraphError("permutation size " + std::to_string(p.size()) +
                     " does not match graph order " + std::to_string(g.n()));
  auto edges = g.edges();
  for (auto& [u, v] : edges) {
    u = p.map(u);
    v = p.map(v);
  }
  return build_graph(edges, g.n(), g.d());
}

// ---------------------------------------------------------------------------
// Components

/// Assignment of every vertex to one of K components, numbered 1..K.
struct ComponentPartition {
  std::vector<std::uint32_t> assignment;   // assignment[label - 1]
  std::vector<std::vector<Label>> members; // members[c - 1], ascending

  std::uint32_t k() const { return static_cast<std::uint32_t>(members.size()); }
  std::uint32_t component_of(Label v) const { return assignment[v - 1]; }

  bool operator==(const ComponentPartition&) const = default;
};

/// Builds a partition from member lists (in the given discovery order).
inline ComponentPartition make_partition(Label n, std::vector<std::vector<Label>> members) {
  ComponentPartition p;
  p.assignment.assign(n, 0);
  for (std::size_t c = 0; c < members.size(); ++c) {
    std::sort(members[c].begin(), members[c].end());
    for (Label v : members[c]) {
      if (v < 1 || v > n || p.assignment[v - 1] != 0)
        throw GraphError("component lists do not partition the vertex set");
      p.assignment[v - 1] = static_cast<std::uint32_t>(c + 1);
    }
  }
  if (std::find(p.assignment.begin(), p.assignment.end(), 0u) != p.assignment.end())
    throw GraphError("component lists do not cover every vertex");
  p.members = std::move(members);
  return p;
}

/// Components reordered by smallest member, so partitions discovered in
/// different orders compare equal.
inline ComponentPartition canonical(const ComponentPartition& p) {
  auto members = p.members;
  std::sort(members.begin(), members.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return make_partition(static_cast<Label>(p.assignment.size()), std::move(members));
}

inline bool same_partition(const ComponentPartition& a, const ComponentPartition& b) {
  return canonical(a) == canonical(b);
}

/// True when the partition covers V and no edge crosses two components.
inline bool is_consistent(const Graph& g, const ComponentPartition& p) {
  if (p.assignment.size() != g.n()) return false;
  for (auto [u, v] : g.edges())
    if (p.component_of(u) != p.component_of(v)) return false;
  return true;
}

/// Image of a partition under a relabeling.
inline ComponentPartition apply_permutation(const ComponentPartition& part,
                                            const VertexPermutation& p) {
  auto members = part.members;
  for (auto& comp : members)
    for (auto& v : comp) v = p.map(v);
  return make_partition(p.size(), std::move(members));
}

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace detail

/// Exact connected components by union-find over the edge set. Components
/// are numbered in order of their smallest label.
inline ComponentPartition components_union_find(const Graph& g) {
  detail::DisjointSets sets(g.n());
  for (Label u = 1; u <= g.n(); ++u)
    for (Label v : g.neighbors(u))
      if (u < v) sets.unite(u - 1, v - 1);

  std::vector<std::uint32_t> index_of_root(g.n(), 0);
  std::vector<std::vector<Label>> members;
  for (Label v = 1; v <= g.n(); ++v) {
    auto root = sets.find(v - 1);
    if (index_of_root[root] == 0) {
      members.emplace_back();
      index_of_root[root] = static_cast<std::uint32_t>(members.size());
    }
    members[index_of_root[root] - 1].push_back(v);
  }
  return make_partition(g.n(), std::move(members));
}

}  // namespace itrav
