// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

namespace {

using namespace itrav;
using testing::config;
using testing::strings_of;
using Frontiers = std::vector<std::vector<Label>>;
using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr double kGoldenSeconds = 1.0;
constexpr double kPropertySeconds = 60.0;
constexpr double kSmokeSeconds = 30.0;
constexpr std::size_t kConnectedGraphs = 250;
constexpr std::size_t kMultiComponentGraphs = 250;
constexpr Label kMaxOrder = 200;
constexpr Label kMaxComponents = 10;
constexpr Label kExhaustiveStartOrder = 100;
constexpr std::size_t kSmallGraphs = 240;
constexpr Label kSmallOrder = 12;
constexpr std::uint32_t kFloatPeriod = 4;
constexpr std::int64_t kFloatDiameterBound = 64;
constexpr Label kSmokeOrder = 100000;
constexpr double kSmokeDensity = 5e-5;
constexpr std::uint64_t kCorpusSeed = 20240611;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::string failure;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      failure = what;
    }
  }
};

int failures = 0;

void print(const char* id, const char* title, const Outcome& o) {
  std::printf("%s %-4s %s: %s\n", o.ok ? "PASS" : "FAIL", id, title,
              o.ok ? o.detail.c_str() : (o.failure + "; " + o.detail).c_str());
  std::fflush(stdout);
  if (!o.ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  return os.str();
}

std::string graph_tag(const testing::CorpusGraph& item) {
  return "n=" + std::to_string(item.graph.n()) + " seed=" + std::to_string(item.seed);
}

std::vector<testing::CorpusGraph> corpus() {
  auto graphs = testing::random_corpus(kConnectedGraphs, 1, kMaxOrder, 1, kCorpusSeed);
  auto multi = testing::random_corpus(kMultiComponentGraphs, 2, kMaxOrder, kMaxComponents,
                                      kCorpusSeed + 1);
  graphs.insert(graphs.end(), multi.begin(), multi.end());
  return graphs;
}

std::int64_t diameter(const Graph& g) {
  std::int64_t widest = 0;
  for (Label s = 1; s <= g.n(); ++s)
    for (std::int64_t d : testing::relaxed_distances(g, s)) widest = std::max(widest, d);
  return widest;
}

// Start vertices: the lowest label of every component plus one random vertex.
std::vector<Label> starts_for(const Graph& g, std::mt19937_64& rng) {
  std::vector<Label> out;
  for (const auto& comp : components_union_find(g).members) out.push_back(comp.front());
  out.push_back(static_cast<Label>(1 + detail::uniform_below(rng, g.n())));
  return out;
}

Outcome golden_bfs() {
  Outcome o;
  const auto t0 = Clock::now();
  auto cfg = config(Variant::jacobi);
  cfg.snapshots = true;
  auto r = find_connected_component(testing::eight_vertex_graph(), 1, cfg);
  const double elapsed = seconds_since(t0);
  const auto& rec = r.trace.records;
  o.require(r.trace.iteration_count() == 4, "N_BFS != 4");
  if (o.ok) {
    o.require(rec[1].state == strings_of({2, -4, 0, 0, 0, 0, 0, 0}), "x^(1) differs");
    o.require(rec[2].state == strings_of({10, -4, 8, 0, 0, 8, 0, 0}), "x^(2) differs");
    o.require(rec[3].state == strings_of({10, -52, 8, -16, -16, 8, -32, 0}), "x^(3) differs");
    o.require(rec[4].state == strings_of({106, -52, 200, -16, -16, 200, -32, 64}),
              "x^(4) differs");
  }
  o.require(elapsed < kGoldenSeconds, "runtime limit exceeded");
  o.detail = "N_BFS=" + std::to_string(r.trace.iteration_count()) + ", " + fmt_seconds(elapsed);
  return o;
}

Outcome golden_ccs() {
  Outcome o;
  auto cfg = config(Variant::gauss_seidel);
  cfg.snapshots = true;
  auto r = find_connected_component(testing::eight_vertex_graph(), 1, cfg);
  o.require(r.trace.iteration_count() == 2, "N_CCS != 2");
  if (o.ok) {
    o.require(r.trace.records[1].state == strings_of({2, -4, 8, -16, 0, 8, -32, 64}),
              "x^(1) differs");
    o.require(
        r.trace.records[2].state == strings_of({10, -52, 200, -400, -16, 200, -928, 1856}),
        "x^(2) differs");
  }
  o.require(r.trace.frontiers() == Frontiers{{1}, {2, 3, 4, 6, 7, 8}, {5}}, "frontiers differ");
  o.detail = "N_CCS=" + std::to_string(r.trace.iteration_count());
  return o;
}

Outcome golden_path() {
  Outcome o;
  auto g = testing::path_graph({1, 2, 3, 4, 5});
  auto jac = config(Variant::jacobi);
  jac.snapshots = true;
  auto bfs = find_connected_component(g, 1, jac);
  o.require(bfs.trace.iteration_count() == 4, "N_BFS != 4");
  if (o.ok)
    o.require(bfs.trace.records[4].state == strings_of({74, -36, 104, -16, 32}),
              "x^(4) differs");
  auto gs = config(Variant::gauss_seidel);
  gs.snapshots = true;
  auto ccs = find_connected_component(g, 1, gs);
  o.require(ccs.trace.iteration_count() == 1, "N_CCS != 1");
  if (o.ok)
    o.require(ccs.trace.records[1].state == strings_of({2, -4, 8, -16, 32}), "x^(1) differs");
  o.detail = "N_BFS=" + std::to_string(bfs.trace.iteration_count()) +
             " N_CCS=" + std::to_string(ccs.trace.iteration_count());
  return o;
}

Outcome descending_path() {
  Outcome o;
  auto g = build_graph(std::vector<Edge>{{1, 5}, {5, 4}, {4, 3}, {3, 2}}, 5);
  auto bfs = find_connected_component(g, 1, config(Variant::jacobi)).trace;
  auto ccs = find_connected_component(g, 1, config(Variant::gauss_seidel)).trace;
  o.require(ccs.frontiers() == bfs.frontiers(), "CCS frontiers differ from BFS");
  o.require(ccs.frontiers() == combinatorial_bfs(g, 1).frontiers(),
            "frontiers differ from the combinatorial BFS");
  o.require(ccs.iteration_count() == 4, "N_CCS != 4");
  o.detail = "N_CCS=" + std::to_string(ccs.iteration_count()) + ", frontiers {1},{5},{4},{3},{2}";
  return o;
}

struct FrontierConfig {
  std::string name;
  TraversalConfig cfg;
  bool bfs = false;
  bool certified = false;  // signed Gauss-Seidel at cancellation_free_diagonal
};

std::vector<FrontierConfig> frontier_configs() {
  std::vector<FrontierConfig> out;
  for (bool mask : {false, true}) {
    const std::string suffix = mask ? "+mask" : "";
    auto add = [&](std::string name, Variant v, ArithmeticMode m, bool bfs, bool certified) {
      auto cfg = config(v, m);
      cfg.masking = mask;
      if (m == ArithmeticMode::floating) cfg.regularization_period = kFloatPeriod;
      out.push_back({name + suffix, cfg, bfs, certified});
    };
    add("jacobi/exact", Variant::jacobi, ArithmeticMode::exact, true, false);
    add("jacobi/float", Variant::jacobi, ArithmeticMode::floating, true, false);
    add("gauss-seidel/exact@certified-d", Variant::gauss_seidel, ArithmeticMode::exact, false,
        true);
    add("unsigned/exact", Variant::unsigned_ccs, ArithmeticMode::exact, false, false);
    add("unsigned/saturate", Variant::unsigned_ccs, ArithmeticMode::saturate, false, false);
    add("unsigned/float", Variant::unsigned_ccs, ArithmeticMode::floating, false, false);
  }
  return out;
}

Outcome frontier_equivalence(const std::vector<testing::CorpusGraph>& graphs,
                             std::string& info) {
  Outcome o;
  const auto t0 = Clock::now();
  const auto configs = frontier_configs();
  std::mt19937_64 rng(kCorpusSeed);
  std::size_t runs = 0, d2_divergent_graphs = 0;
  for (const auto& item : graphs) {
    const auto& g = item.graph;
    const mpz_class bound[2] = {cancellation_free_diagonal(g, false),
                                cancellation_free_diagonal(g, true)};
    bool d2_diverged = false;
    for (Label s : starts_for(g, rng)) {
      const auto bfs = combinatorial_bfs(g, s).frontiers();
      const auto ccs = combinatorial_ccs(g, s).frontiers();
      for (const auto& fc : configs) {
        auto cfg = fc.cfg;
        if (fc.certified) cfg.exact_diagonal = bound[cfg.masking ? 1 : 0];
        auto got = find_connected_component(g, s, cfg).trace.frontiers();
        ++runs;
        o.require(got == (fc.bfs ? bfs : ccs), fc.name + " differs on " + graph_tag(item) +
                                                  " s=" + std::to_string(s));
      }
      auto fixed = config(Variant::gauss_seidel);
      d2_diverged |= find_connected_component(g, s, fixed).trace.frontiers() != ccs;
    }
    d2_divergent_graphs += d2_diverged;
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < kPropertySeconds, "runtime limit exceeded");
  o.detail = std::to_string(graphs.size()) + " graphs, " + std::to_string(configs.size()) +
             " configs, " + std::to_string(runs) + " runs, " + fmt_seconds(elapsed);
  info = "signed gauss-seidel at fixed d=2 diverges from the combinatorial CCS on " +
         std::to_string(d2_divergent_graphs) + "/" + std::to_string(graphs.size()) +
         " graphs (value cancellation)";
  return o;
}

Outcome ccs_bounded_by_bfs(const std::vector<testing::CorpusGraph>& graphs) {
  Outcome o;
  auto unsigned_cfg = config(Variant::unsigned_ccs, ArithmeticMode::saturate);
  unsigned_cfg.masking = true;
  auto jacobi_cfg = config(Variant::jacobi, ArithmeticMode::floating);
  jacobi_cfg.regularization_period = kFloatPeriod;
  std::size_t exhaustive = 0, pairs = 0, strict = 0;
  for (const auto& item : graphs) {
    const auto& g = item.graph;
    if (g.n() > kExhaustiveStartOrder) continue;
    ++exhaustive;
    for (Label s = 1; s <= g.n(); ++s) {
      const auto n_bfs = combinatorial_bfs(g, s).iteration_count();
      const auto n_ccs = combinatorial_ccs(g, s).iteration_count();
      const auto a_bfs = find_connected_component(g, s, jacobi_cfg).trace.iteration_count();
      const auto a_ccs = find_connected_component(g, s, unsigned_cfg).trace.iteration_count();
      ++pairs;
      strict += n_ccs < n_bfs;
      o.require(n_ccs <= n_bfs, "combinatorial N_CCS > N_BFS on " + graph_tag(item) +
                                    " s=" + std::to_string(s));
      o.require(a_ccs <= a_bfs, "algebraic N_CCS > N_BFS on " + graph_tag(item) +
                                    " s=" + std::to_string(s));
    }
  }
  o.detail = std::to_string(exhaustive) + " graphs with n <= " +
             std::to_string(kExhaustiveStartOrder) + ", " + std::to_string(pairs) +
             " starts, strictly fewer on " + std::to_string(strict);
  return o;
}

Outcome shortest_path_values() {
  Outcome o;
  const auto graphs = testing::random_corpus(kSmallGraphs, 1, kSmallOrder, 1, kCorpusSeed + 2);
  std::size_t checked = 0;
  for (const auto& item : graphs) {
    const auto& g = item.graph;
    for (Label s = 1; s <= g.n(); ++s) {
      o.require(verify_shortest_path_values(g, s, 2).passed(),
                "verifier fails on " + graph_tag(item) + " s=" + std::to_string(s));
      // Independent route: walk counts of the adjacency powers.
      const auto counts = testing::shortest_path_counts_by_powers(g, s);
      const auto dist = testing::relaxed_distances(g, s);
      auto cfg = config(Variant::jacobi);
      cfg.snapshots = true;
      for (const auto& rec : find_connected_component(g, s, cfg).trace.records) {
        if (rec.k == 0) continue;
        for (Label i : rec.frontier) {
          mpz_class expected = counts[i - 1] * testing::power(2, rec.k + 1);
          if (rec.k % 2) expected = -expected;
          o.require(dist[i - 1] == static_cast<std::int64_t>(rec.k) &&
                        mpz_class(rec.state[i - 1]) == expected,
                    "value of vertex " + std::to_string(i) + " on " + graph_tag(item));
          ++checked;
        }
      }
    }
  }
  o.detail = std::to_string(graphs.size()) + " connected graphs with n <= " +
             std::to_string(kSmallOrder) + ", " + std::to_string(checked) + " first values";
  return o;
}

Outcome chain_fixtures() {
  Outcome o;
  auto g = testing::path_graph({1, 2, 3});
  auto cfg = config(Variant::gauss_seidel);
  const auto x1 = gauss_seidel_step(g, initial_state<mpz_class>(g, 2, cfg), cfg);
  o.require(x1[3] == -20, "x_3^(1) != -20 at d=2");
  std::size_t checks = 0;
  for (std::uint64_t d : {2u, 3u, 5u}) {
    auto report = verify_chain_fixtures(d);
    checks += report.checks.size();
    o.require(report.passed(), "fixture check fails at d=" + std::to_string(d));
  }
  o.detail = "x_3^(1)=" + x1[3].get_str() + ", " + std::to_string(checks) +
             " fixture checks over d in {2,3,5}";
  return o;
}

Outcome variant_equivalence(const std::vector<testing::CorpusGraph>& graphs) {
  Outcome o;
  std::mt19937_64 rng(kCorpusSeed + 3);
  auto unsigned_cfg = config(Variant::unsigned_ccs);
  auto masked_cfg = unsigned_cfg;
  masked_cfg.masking = true;
  auto float_cfg = config(Variant::unsigned_ccs, ArithmeticMode::floating);
  float_cfg.regularization_period = kFloatPeriod;
  std::size_t bounded = 0, runs = 0;
  for (const auto& item : graphs) {
    const auto& g = item.graph;
    if (diameter(g) > kFloatDiameterBound) continue;
    ++bounded;
    auto reference = config(Variant::gauss_seidel);
    reference.exact_diagonal = cancellation_free_diagonal(g);
    for (Label s : starts_for(g, rng)) {
      const auto ref = find_connected_component(g, s, reference).trace.frontiers();
      for (const auto* cfg : {&unsigned_cfg, &masked_cfg, &float_cfg}) {
        ++runs;
        o.require(find_connected_component(g, s, *cfg).trace.frontiers() == ref,
                  std::string(to_string(cfg->mode)) + (cfg->masking ? "+mask" : "") +
                      " differs on " + graph_tag(item) + " s=" + std::to_string(s));
      }
    }
  }
  o.detail = std::to_string(bounded) + " graphs with diameter <= " +
             std::to_string(kFloatDiameterBound) + ", " + std::to_string(runs) + " runs";
  return o;
}

Outcome renumbering(const std::vector<testing::CorpusGraph>& graphs) {
  Outcome o;
  std::mt19937_64 rng(kCorpusSeed + 4);
  std::size_t connected = 0, roots_checked = 0;
  for (const auto& item : graphs) {
    const auto& g = item.graph;
    if (item.components != 1 || g.n() < 2) continue;
    ++connected;
    for (Label root : {Label{1}, g.n(), static_cast<Label>(1 + detail::uniform_below(rng, g.n()))}) {
      auto report = numbering_quality(g, root);
      auto renumbered = apply_permutation(g, report.permutation);
      const Label new_root = report.permutation.map(root);
      ++roots_checked;
      o.require(report.n_ccs_after == 1 &&
                    combinatorial_ccs(renumbered, new_root).iteration_count() == 1,
                "N_CCS != 1 after renumbering " + graph_tag(item) + " root=" +
                    std::to_string(root));
    }
  }
  o.detail = std::to_string(connected) + " connected graphs, " + std::to_string(roots_checked) +
             " roots";
  return o;
}

Outcome partitions(const std::vector<testing::CorpusGraph>& graphs) {
  Outcome o;
  auto unsigned_cfg = config(Variant::unsigned_ccs);
  auto masked_cfg = config(Variant::unsigned_ccs, ArithmeticMode::saturate);
  masked_cfg.masking = true;
  auto jacobi_cfg = config(Variant::jacobi);
  Label widest = 0;
  for (const auto& item : graphs) {
    const auto& g = item.graph;
    const auto truth = components_union_find(g);
    widest = std::max(widest, truth.k());
    o.require(truth.k() == item.components, "union-find count differs on " + graph_tag(item));
    for (const auto* cfg : {&unsigned_cfg, &masked_cfg, &jacobi_cfg}) {
      o.require(same_partition(find_all_components(g, *cfg), truth),
                "partition differs on " + graph_tag(item));
    }
    o.require(same_partition(find_all_components(g, masked_cfg, highest_unvisited()), truth),
              "partition differs with the highest-label seed rule on " + graph_tag(item));
  }
  o.detail = std::to_string(graphs.size()) + " graphs, K up to " + std::to_string(widest);
  return o;
}

Outcome smoke() {
  Outcome o;
  auto list = generate_random_graph(kSmokeOrder, kSmokeDensity, 1, kCorpusSeed);
  auto g = build_graph(list.edges, list.n);
  auto cfg = config(Variant::unsigned_ccs, ArithmeticMode::saturate);
  cfg.masking = true;
  const auto t0 = Clock::now();
  auto r = find_connected_component(g, 1, cfg);
  const double elapsed = seconds_since(t0);
  o.require(r.vertices.size() == g.n(), "traversal missed vertices");
  o.require(elapsed < kSmokeSeconds, "runtime limit exceeded");
  o.detail = "n=" + std::to_string(g.n()) + " m=" + std::to_string(g.m()) +
             " N_CCS=" + std::to_string(r.trace.iteration_count()) + ", " + fmt_seconds(elapsed);
  return o;
}

void guarded(const char* id, const char* title, const std::function<Outcome()>& run) {
  try {
    print(id, title, run());
  } catch (const std::exception& e) {
    Outcome o;
    o.require(false, std::string("exception: ") + e.what());
    print(id, title, o);
  }
}

}  // namespace

int main() {
  const auto graphs = corpus();
  std::string info;
  guarded("C1", "golden BFS trace, eight-vertex graph", golden_bfs);
  guarded("C2", "golden CCS trace, eight-vertex graph", golden_ccs);
  guarded("C3", "golden traces, path 1-2-3-4-5", golden_path);
  guarded("C4", "descending path 1-5-4-3-2 repeats BFS", descending_path);
  guarded("C5", "algebraic and combinatorial frontiers agree",
          [&] { return frontier_equivalence(graphs, info); });
  if (!info.empty()) std::printf("INFO %s\n", info.c_str());
  guarded("C6", "N_CCS <= N_BFS from every start", [&] { return ccs_bounded_by_bfs(graphs); });
  guarded("C7", "first Jacobi values count shortest paths", shortest_path_values);
  guarded("C8", "walk and chain-sum fixtures", chain_fixtures);
  guarded("C9", "unsigned, masked and float CCS match exact CCS",
          [&] { return variant_equivalence(graphs); });
  guarded("C10", "one CCS iteration after renumbering", [&] { return renumbering(graphs); });
  guarded("C11", "partitions match union-find", [&] { return partitions(graphs); });
  guarded("S1", "scaling smoke test, sparse n=100000", smoke);
  std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
