#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "itrav/arithmetic.hpp"
#include "itrav/combinatorial.hpp"
#include "itrav/config.hpp"
#include "itrav/graph.hpp"
#include "itrav/trace.hpp"

// Graph traversal as simple iteration on the system (A + dI) x = e_s, with
// division by the diagonal replaced by multiplication:
//
//   Jacobi        x_i' = (-b_i + sum_{j~i} x_j)                    * (-d)
//   Gauss-Seidel  x_i' = (-b_i + sum_{j~i,j<i} x_j' + sum_{j>i} x_j) * (-d)
//   unsigned      x_i' = ( b_i + sum_{j~i,j<i} x_j' + sum_{j>i} x_j) *   d
//
// starting from x^(0) = d e_s. A vertex is visited at the iteration where
// its entry first becomes nonzero.

namespace itrav {

template <class V>
struct StateVector {
  std::vector<V> values;  // values[label - 1]
  std::uint32_t k = 0;
  Label start = 0;

  V& operator[](Label v) { return values[v - 1]; }
  const V& operator[](Label v) const { return values[v - 1]; }
  Label size() const { return static_cast<Label>(values.size()); }

  bool operator==(const StateVector&) const = default;
};

/// Vertices excluded from the sweep. Masked entries are frozen: never read,
/// never written.
struct MaskSet {
  std::vector<char> flags;  // flags[label - 1]; missing entries are unmasked

  bool contains(Label v) const { return v <= flags.size() && flags[v - 1]; }
  void insert(Label v) {
    if (flags.size() < v) flags.resize(v, 0);
    flags[v - 1] = 1;
  }
  std::vector<Label> labels() const { return detail::flagged(flags); }
  bool empty() const { return std::find(flags.begin(), flags.end(), 1) == flags.end(); }
};

namespace detail {

template <class V>
void check_mode(const TraversalConfig& cfg) {
  cfg.validate();
  if (Arithmetic<V>::mode != cfg.mode)
    throw ConfigError("state value type does not match arithmetic mode '" +
                      std::string(to_string(cfg.mode)) + "'");
}

/// Vertices touched by one sweep. Everything outside the schedule is zero
/// before and after the sweep: it is not the start vertex and none of its
/// unmasked neighbours is nonzero when it would be updated.
class Schedule {
 public:
  void reset(Label n) {
    if (stamp_.size() != n) {
      stamp_.assign(n, 0);
      epoch_ = 0;
    }
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    order_.clear();
  }
  bool mark(Label v) {
    if (stamp_[v - 1] == epoch_) return false;
    stamp_[v - 1] = epoch_;
    return true;
  }

  std::vector<Label> order_;
  std::priority_queue<Label, std::vector<Label>, std::greater<>> heap_;

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

template <class V>
struct Sweep {
  const Graph& g;
  const Arithmetic<V>& arith;
  const std::vector<char>& masked;
  Label start;     // owner of the right-hand side b = e_start
  Variant variant;

  bool is_masked(Label v) const { return v <= masked.size() && masked[v - 1]; }

  V equation(const std::vector<V>& x, Label i) const {
    V acc = arith.zero();
    for (Label j : g.neighbors(i))
      if (!is_masked(j)) arith.accumulate(acc, x[j - 1]);
    if (variant == Variant::unsigned_ccs)
      arith.finish_unsigned(acc, i == start);
    else
      arith.finish_signed(acc, i == start);
    return acc;
  }

  template <class Seed>
  void seed(Schedule& sched, const std::vector<Label>& live, Seed&& push) const {
    auto add = [&](Label v) {
      if (!is_masked(v) && sched.mark(v)) push(v);
    };
    for (Label v : live) {
      add(v);
      for (Label u : g.neighbors(v)) add(u);
    }
    if (start != 0) add(start);
  }

  /// In-place ascending sweep: entries below i already hold their new
  /// values, entries above i still hold the old ones.
  /// on_update(i, was_zero, is_zero) is called for every scheduled vertex.
  template <class OnUpdate>
  void ordered(std::vector<V>& x, const std::vector<Label>& live, Schedule& sched,
               OnUpdate&& on_update) const {
    sched.reset(g.n());
    auto& heap = sched.heap_;
    seed(sched, live, [&](Label v) { heap.push(v); });
    while (!heap.empty()) {
      Label i = heap.top();
      heap.pop();
      V next = equation(x, i);
      const bool was_zero = arith.is_zero(x[i - 1]);
      const bool now_zero = arith.is_zero(next);
      x[i - 1] = std::move(next);
      on_update(i, was_zero, now_zero);
      if (now_zero) continue;
      for (Label j : g.neighbors(i))
        if (j > i && !is_masked(j) && sched.mark(j)) heap.push(j);
    }
  }

  /// Simultaneous update: every equation reads the old vector.
  template <class OnUpdate>
  void simultaneous(std::vector<V>& x, const std::vector<Label>& live, Schedule& sched,
                    OnUpdate&& on_update) const {
    sched.reset(g.n());
    auto& order = sched.order_;
    seed(sched, live, [&](Label v) { order.push_back(v); });
    std::sort(order.begin(), order.end());
    std::vector<V> next;
    next.reserve(order.size());
    for (Label i : order) next.push_back(equation(x, i));
    for (std::size_t t = 0; t < order.size(); ++t) {
      Label i = order[t];
      const bool was_zero = arith.is_zero(x[i - 1]);
      const bool now_zero = arith.is_zero(next[t]);
      x[i - 1] = std::move(next[t]);
      on_update(i, was_zero, now_zero);
    }
  }

  template <class OnUpdate>
  void run(std::vector<V>& x, const std::vector<Label>& live, Schedule& sched,
           OnUpdate&& on_update) const {
    if (variant == Variant::jacobi)
      simultaneous(x, live, sched, on_update);
    else
      ordered(x, live, sched, on_update);
  }
};

template <class V>
StateVector<V> step(const Graph& g, const StateVector<V>& x, const TraversalConfig& cfg,
                    const MaskSet& mask, Variant expected) {
  check_mode<V>(cfg);
  if (cfg.variant != expected)
    throw ConfigError("step called with variant '" + std::string(to_string(cfg.variant)) + "'");
  if (x.size() != g.n()) throw ConfigError("state vector length differs from graph order");
  Arithmetic<V> arith(cfg.diagonal(g), cfg);
  std::vector<Label> live;
  for (Label v = 1; v <= g.n(); ++v)
    if (!arith.is_zero(x[v]) && !mask.contains(v)) live.push_back(v);
  StateVector<V> out = x;
  Schedule sched;
  Sweep<V>{g, arith, mask.flags, x.start, cfg.variant}.run(out.values, live, sched,
                                                            [](Label, bool, bool) {});
  ++out.k;
  return out;
}

}  // namespace detail

/// x^(0) = d e_s.
template <class V>
StateVector<V> initial_state(const Graph& g, Label s, const TraversalConfig& cfg) {
  detail::check_mode<V>(cfg);
  detail::check_start(g, s);
  Arithmetic<V> arith(cfg.diagonal(g), cfg);
  StateVector<V> x{std::vector<V>(g.n(), arith.zero()), 0, s};
  x[s] = arith.initial();
  return x;
}

template <class V>
StateVector<V> jacobi_step(const Graph& g, const StateVector<V>& x, const TraversalConfig& cfg,
                           const MaskSet& mask = {}) {
  return detail::step(g, x, cfg, mask, Variant::jacobi);
}

template <class V>
StateVector<V> gauss_seidel_step(const Graph& g, const StateVector<V>& x,
                                 const TraversalConfig& cfg, const MaskSet& mask = {}) {
  return detail::step(g, x, cfg, mask, Variant::gauss_seidel);
}

template <class V>
StateVector<V> unsigned_step(const Graph& g, const StateVector<V>& x, const TraversalConfig& cfg,
                             const MaskSet& mask = {}) {
  return detail::step(g, x, cfg, mask, Variant::unsigned_ccs);
}

/// Indices whose entry goes from zero to nonzero between two iterates.
template <class V>
std::vector<Label> extract_frontier(const StateVector<V>& prev, const StateVector<V>& next) {
  if (prev.size() != next.size()) throw ConfigError("state vectors differ in length");
  std::vector<Label> out;
  for (Label v = 1; v <= prev.size(); ++v)
    if (prev[v] == V{} && next[v] != V{}) out.push_back(v);
  return out;
}

/// Divides every entry by d^M.
inline StateVector<double> regularize(const StateVector<double>& x, const TraversalConfig& cfg,
                                      std::uint64_t graph_d = kDefaultDiagonal) {
  if (cfg.mode != ArithmeticMode::floating || !cfg.regularization_period)
    throw ConfigError("regularization needs float arithmetic and a period M");
  const double scale =
      std::pow(static_cast<double>(cfg.d.value_or(graph_d)), *cfg.regularization_period);
  StateVector<double> out = x;
  for (auto& v : out.values) v /= scale;
  return out;
}

/// Mask for the next sweep: C^(k-1), everything visited except the newest
/// frontier, plus the vertices of already completed components.
inline MaskSet update_mask(const TraversalTrace& trace, const TraversalConfig& cfg,
                           const MaskSet& completed = {}) {
  if (!cfg.masking) throw ConfigError("masking is disabled in this configuration");
  MaskSet mask = completed;
  const auto k = trace.iteration_count();
  if (k == 0) return mask;
  for (Label v : trace.visited_after(k - 1)) mask.insert(v);
  return mask;
}

// ---------------------------------------------------------------------------
// Drivers

namespace detail {

/// Runs traversals on one graph, reusing the state vector across components.
template <class V>
class Engine {
 public:
  Engine(const Graph& g, const TraversalConfig& cfg)
      : g_(g),
        cfg_(cfg),
        d_(cfg.diagonal(g)),
        arith_(d_, cfg),
        x_(g.n(), arith_.zero()),
        masked_(g.n(), 0),
        visited_(g.n(), 0) {
    check_mode<V>(cfg);
  }

  bool covered(Label v) const { return visited_[v - 1] != 0; }

  TraversalTrace traverse(Label s) {
    check_start(g_, s);
    if (covered(s)) throw ConfigError("start vertex already belongs to a finished component");
    x_[s - 1] = arith_.initial();
    visited_[s - 1] = 1;
    std::vector<Label> live{s};
    std::vector<Label> component{s};
    TraversalTrace trace{s, {{0, {s}, snapshot()}}};

    Sweep<V> sweep{g_, arith_, masked_, s, cfg_.variant};
    std::vector<Label> frontier;
    for (std::uint32_t k = 1;; ++k) {
      frontier.clear();
      sweep.run(x_, live, sched_, [&](Label i, bool was_zero, bool now_zero) {
        if (was_zero && !now_zero && !visited_[i - 1]) frontier.push_back(i);
      });
      if (frontier.empty()) break;
      std::sort(frontier.begin(), frontier.end());
      for (Label v : frontier) visited_[v - 1] = 1;
      component.insert(component.end(), frontier.begin(), frontier.end());
      if (cfg_.masking) {
        for (Label v : live) masked_[v - 1] = 1;
        live = frontier;
      } else {
        live.insert(live.end(), frontier.begin(), frontier.end());
      }
      if (cfg_.regularization_period && k % *cfg_.regularization_period == 0)
        regularize_live(live);
      trace.records.push_back({k, frontier, snapshot()});
    }

    // Retire the component: frozen under masking, cleared otherwise.
    for (Label v : component) {
      if (cfg_.masking)
        masked_[v - 1] = 1;
      else
        x_[v - 1] = arith_.zero();
    }
    return trace;
  }

 private:
  std::vector<std::string> snapshot() const {
    if (!cfg_.snapshots) return {};
    std::vector<std::string> out;
    out.reserve(x_.size());
    for (const auto& v : x_) out.push_back(arith_.to_string(v));
    return out;
  }

  void regularize_live(const std::vector<Label>& live) {
    if constexpr (std::is_same_v<V, double>) {
      const double scale = std::pow(static_cast<double>(d_), *cfg_.regularization_period);
      for (Label v : live) x_[v - 1] /= scale;
    }
  }

  const Graph& g_;
  TraversalConfig cfg_;
  std::uint64_t d_;
  Arithmetic<V> arith_;
  std::vector<V> x_;
  std::vector<char> masked_;
  std::vector<char> visited_;
  Schedule sched_;
};

inline void cross_check(const Graph& g, const TraversalConfig& cfg, const TraversalTrace& t) {
  if (!cfg.cross_check || !cfg.is_signed()) return;
  auto reference = cfg.variant == Variant::jacobi ? combinatorial_bfs(g, t.start)
                                                  : combinatorial_ccs(g, t.start);
  if (reference.frontiers() != t.frontiers())
    throw CancellationError("signed " + std::string(to_string(cfg.variant)) +
                            " traversal from vertex " + std::to_string(t.start) +
                            " diverged from the combinatorial reference at d = " +
                            cfg.diagonal_string(g));
}

template <class F>
decltype(auto) dispatch(const TraversalConfig& cfg, F&& f) {
  cfg.validate();
  switch (cfg.mode) {
    case ArithmeticMode::exact: return f(mpz_class{});
    case ArithmeticMode::saturate: return f(std::uint64_t{});
    case ArithmeticMode::floating: break;
  }
  return f(double{});
}

}  // namespace detail

struct ComponentResult {
  std::vector<Label> vertices;  // ascending
  TraversalTrace trace;
};

/// Traverses from s until an iteration produces an empty frontier. The trace
/// holds F^(0) = {s} and every nonempty frontier after it.
inline ComponentResult find_connected_component(const Graph& g, Label s,
                                                const TraversalConfig& cfg = {}) {
  return detail::dispatch(cfg, [&](auto tag) {
    using V = decltype(tag);
    detail::Engine<V> engine(g, cfg);
    ComponentResult r;
    r.trace = engine.traverse(s);
    detail::cross_check(g, cfg, r.trace);
    r.vertices = r.trace.visited();
    return r;
  });
}

/// Picks the next start vertex given the vertices already covered.
using SeedRule = std::function<Label(const Graph&, const std::vector<char>& covered)>;

inline SeedRule lowest_unvisited() {
  return [cursor = Label{1}](const Graph& g, const std::vector<char>& covered) mutable {
    while (cursor <= g.n() && covered[cursor - 1]) ++cursor;
    return cursor;
  };
}

inline SeedRule highest_unvisited() {
  return [cursor = Label{0}, init = false](const Graph& g,
                                           const std::vector<char>& covered) mutable {
    if (!init) {
      cursor = g.n();
      init = true;
    }
    while (cursor >= 1 && covered[cursor - 1]) --cursor;
    return cursor;
  };
}

struct AllComponentsResult {
  ComponentPartition partition;            // components in discovery order
  std::vector<std::uint32_t> iterations;   // N for each component
};

inline AllComponentsResult find_all_components_detailed(const Graph& g,
                                                        const TraversalConfig& cfg = {},
                                                        SeedRule seed_rule = lowest_unvisited()) {
  return detail::dispatch(cfg, [&](auto tag) {
    using V = decltype(tag);
    detail::Engine<V> engine(g, cfg);
    std::vector<char> covered(g.n(), 0);
    std::vector<std::vector<Label>> members;
    std::vector<std::uint32_t> iterations;
    for (Label remaining = g.n(); remaining > 0;) {
      Label s = seed_rule(g, covered);
      if (s < 1 || s > g.n() || covered[s - 1])
        throw ConfigError("seed rule returned a covered or invalid vertex");
      auto trace = engine.traverse(s);
      detail::cross_check(g, cfg, trace);
      auto comp = trace.visited();
      for (Label v : comp) covered[v - 1] = 1;
      remaining -= static_cast<Label>(comp.size());
      iterations.push_back(trace.iteration_count());
      members.push_back(std::move(comp));
    }
    return AllComponentsResult{make_partition(g.n(), std::move(members)), std::move(iterations)};
  });
}

inline ComponentPartition find_all_components(const Graph& g, const TraversalConfig& cfg = {},
                                              SeedRule seed_rule = lowest_unvisited()) {
  return find_all_components_detailed(g, cfg, std::move(seed_rule)).partition;
}

/// A d at which signed Gauss-Seidel cannot cancel: 1 + the largest entry of
/// the unsigned run at d = 1 with the same masking and start vertices.
/// Every signed entry is sum_L (-1)^L w_L d^(L+1) over walk counts w_L >= 0,
/// and the unsigned run at d = 1 yields sum_L w_L, which bounds every root of
/// that polynomial. At the returned d (or any larger one) the signed and
/// unsigned runs have equal supports at every iteration, so their frontiers
/// agree. Signed Jacobi needs no bound for frontiers: its first-nonzero
/// entries are single monomials. Costs one exact unsigned run with snapshots.
inline mpz_class cancellation_free_diagonal(const Graph& g, bool masking = false,
                                            SeedRule seed_rule = lowest_unvisited()) {
  TraversalConfig cfg;
  cfg.variant = Variant::unsigned_ccs;
  cfg.masking = masking;
  cfg.d = 1;
  cfg.snapshots = true;
  detail::Engine<mpz_class> engine(g, cfg);
  std::vector<char> covered(g.n(), 0);
  mpz_class widest = 0;
  for (Label remaining = g.n(); remaining > 0;) {
    Label s = seed_rule(g, covered);
    if (s < 1 || s > g.n() || covered[s - 1])
      throw ConfigError("seed rule returned a covered or invalid vertex");
    auto trace = engine.traverse(s);
    auto comp = trace.visited();
    for (const auto& rec : trace.records)
      for (Label v : comp) widest = std::max(widest, mpz_class(rec.state[v - 1]));
    for (Label v : comp) covered[v - 1] = 1;
    remaining -= static_cast<Label>(comp.size());
  }
  return widest + 1;
}

}  // namespace itrav
