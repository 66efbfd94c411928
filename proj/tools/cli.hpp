#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "itrav/itrav.hpp"

namespace itrav::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kParse = 2, kVerification = 3 };

namespace detail {

/// Raised for failed checks; maps to kVerification.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string path;
  std::string format = "edgelist";
  std::optional<std::uint64_t> d;
};

struct RunOptions {
  Label start = 1;
  std::string variant;
  std::string arith = "exact";
  bool mask = false;
  std::optional<std::uint32_t> regularize_every;
  bool snapshot = false;
  bool cross_check = false;
  std::string output;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Graph load_graph(const InputOptions& in) {
  auto text = read_file(in.path);
  EdgeList list;
  if (in.format == "edgelist")
    list = parse_edge_list(text);
  else if (in.format == "mm")
    list = parse_matrix_market(text);
  else
    throw ConfigError("unknown format '" + in.format + "'");
  try {
    return build_graph(list.edges, list.n, in.d.value_or(kDefaultDiagonal));
  } catch (const GraphError& e) {
    throw ParseError(e.what());
  }
}

inline TraversalConfig make_config(const RunOptions& o, std::uint64_t d) {
  TraversalConfig cfg;
  cfg.variant = parse_variant(o.variant);
  cfg.mode = parse_arithmetic(o.arith);
  cfg.masking = o.mask;
  cfg.regularization_period = o.regularize_every;
  cfg.d = d;
  cfg.snapshots = o.snapshot;
  cfg.cross_check = o.cross_check || kCrossCheckByDefault;
  cfg.validate();
  return cfg;
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write '" + path + "'");
  file << text;
}

inline std::string join(const std::vector<Label>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

inline void add_input(CLI::App& cmd, InputOptions& in, bool required = true) {
  auto* opt = cmd.add_option("--input", in.path, "Graph file");
  if (required) opt->required();
  cmd.add_option("--format", in.format, "Input format")
      ->check(CLI::IsMember({"edgelist", "mm"}))
      ->capture_default_str();
}

inline void add_run(CLI::App& cmd, RunOptions& o, InputOptions& in, const char* variant) {
  o.variant = variant;
  cmd.add_option("--start", o.start, "Start vertex (1-based)")->capture_default_str();
  cmd.add_option("--variant", o.variant, "Iteration")
      ->check(CLI::IsMember({"jacobi", "gauss-seidel", "unsigned-ccs"}))
      ->capture_default_str();
  cmd.add_option("--arith", o.arith, "Arithmetic")
      ->check(CLI::IsMember({"exact", "saturate", "float"}))
      ->capture_default_str();
  cmd.add_option("--d", in.d, "Diagonal value d (default 2)")->check(CLI::PositiveNumber);
  cmd.add_flag("--mask", o.mask, "Mask vertices that can no longer reach new ones");
  cmd.add_option("--regularize-every", o.regularize_every, "Rescale by d^-M every M iterations");
  cmd.add_flag("--cross-check", o.cross_check,
               "Compare signed runs with the combinatorial traversal");
  cmd.add_option("--output", o.output, "Write the result here instead of stdout");
}

}  // namespace detail

/// Runs one subcommand. Exit status: 0 success, 1 usage, 2 parse error,
/// 3 verification failure.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Connected components through Jacobi and Gauss-Seidel traversals", "itrav"};
  app.require_subcommand(1);

  InputOptions in;
  RunOptions components_run, trace_run, compare_run, plain_run;

  auto* components = app.add_subcommand("components", "Find all connected components");
  add_input(*components, in);
  add_run(*components, components_run, in, "unsigned-ccs");
  std::string seed_rule = "lowest";
  components->add_option("--seed-rule", seed_rule, "Start-vertex policy")
      ->check(CLI::IsMember({"lowest", "highest"}))
      ->capture_default_str();

  auto* trace = app.add_subcommand("trace", "Emit the traversal trace from one start vertex");
  add_input(*trace, in);
  add_run(*trace, trace_run, in, "gauss-seidel");
  trace->add_flag("--snapshot", trace_run.snapshot, "Record the state vector at every iteration");

  auto* compare = app.add_subcommand("compare", "Iterations of BFS (Jacobi) vs CCS");
  add_input(*compare, in);
  add_run(*compare, compare_run, in, "gauss-seidel");

  auto* renumber = app.add_subcommand("renumber", "Relabel vertices in level order from a root");
  add_input(*renumber, in);
  Label root = 1;
  std::string graph_output;
  renumber->add_option("--root", root, "Root vertex")->capture_default_str();
  renumber->add_option("--output", plain_run.output, "Permutation file (old new per line)");
  renumber->add_option("--graph-output", graph_output, "Also write the relabelled edge list");

  auto* verify = app.add_subcommand("verify", "Run the chain-contribution checks");
  add_input(*verify, in, false);
  std::vector<std::uint64_t> verify_d{2, 3, 5};
  std::optional<Label> verify_start;
  verify->add_option("--d", verify_d, "Diagonal values to check")->capture_default_str();
  verify->add_option("--start", verify_start, "Only this start vertex (default: all)");

  auto* generate = app.add_subcommand("generate", "Write a reproducible random graph");
  Label gen_n = 100, gen_k = 1;
  double gen_density = 0.05;
  std::uint64_t gen_seed = 1;
  std::string gen_format = "edgelist";
  generate->add_option("--n", gen_n, "Vertices")->capture_default_str();
  generate->add_option("--density", gen_density, "Edge density within components")
      ->capture_default_str();
  generate->add_option("--components", gen_k, "Exact component count")->capture_default_str();
  generate->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  generate->add_option("--format", gen_format, "Output format")
      ->check(CLI::IsMember({"edgelist", "mm"}))
      ->capture_default_str();
  generate->add_option("--output", plain_run.output, "Output file");

  std::vector<const char*> argv{"itrav"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream help, msg;
    const int code = app.exit(e, help, msg);
    out << help.str();
    err << msg.str();
    return code == 0 ? kSuccess : kUsage;
  }

  const RunOptions& run = *components ? components_run
                          : *trace    ? trace_run
                          : *compare  ? compare_run
                                      : plain_run;
  try {
    if (*generate) {
      auto list = generate_random_graph(gen_n, gen_density, gen_k, gen_seed);
      auto g = build_graph(list.edges, list.n);
      emit(gen_format == "mm" ? write_matrix_market(g) : write_edge_list(g), run.output, out);
      return kSuccess;
    }

    Graph g;
    if (!in.path.empty()) g = load_graph(in);

    if (*components) {
      auto cfg = make_config(run, g.d());
      auto rule = seed_rule == "lowest" ? lowest_unvisited() : highest_unvisited();
      auto part = find_all_components(g, cfg, rule);
      std::ostringstream os;
      os << "K=" << part.k();
      for (std::uint32_t c = 0; c < part.k(); ++c)
        os << "; component " << c + 1 << ": {" << join(part.members[c]) << '}';
      os << '\n';
      emit(os.str(), run.output, out);
      return kSuccess;
    }

    if (*trace) {
      auto cfg = make_config(run, g.d());
      auto result = find_connected_component(g, run.start, cfg);
      emit(emit_trace(make_trace_document(g, cfg, result)), run.output, out);
      return kSuccess;
    }

    if (*compare) {
      auto ccs_cfg = make_config(run, g.d());
      if (ccs_cfg.variant == Variant::jacobi)
        throw ConfigError("compare needs a CCS variant (gauss-seidel or unsigned-ccs)");
      auto bfs_cfg = ccs_cfg;
      bfs_cfg.variant = Variant::jacobi;
      bfs_cfg.validate();
      const auto n_bfs = find_connected_component(g, run.start, bfs_cfg).trace.iteration_count();
      const auto n_ccs = find_connected_component(g, run.start, ccs_cfg).trace.iteration_count();
      emit("N_BFS=" + std::to_string(n_bfs) + " N_CCS=" + std::to_string(n_ccs) + "\n",
           run.output, out);
      if (n_ccs > n_bfs) throw VerificationFailure("N_CCS exceeds N_BFS");
      return kSuccess;
    }

    if (*renumber) {
      auto report = numbering_quality(g, root);
      std::ostringstream os;
      os << "# N_CCS_before=" << report.n_ccs_before << " N_CCS_after=" << report.n_ccs_after
         << '\n'
         << "# ascending_tree_edges_before=" << report.ascending_tree_edges_before
         << " ascending_tree_edges_after=" << report.ascending_tree_edges_after << '\n';
      if (run.output.empty()) {
        out << os.str() << write_permutation(report.permutation);
      } else {
        out << os.str();
        emit(write_permutation(report.permutation), run.output, out);
      }
      if (!graph_output.empty())
        emit(write_edge_list(apply_permutation(g, report.permutation)), graph_output, out);
      return kSuccess;
    }

    if (*verify) {
      if (in.path.empty())
        g = build_graph(std::vector<Edge>{{1, 2}, {2, 3}, {2, 6}, {3, 4}, {3, 7}, {5, 6}, {6, 7},
                                          {7, 8}},
                        8);
      std::size_t failed = 0;
      auto summarize = [&](const std::string& what, const OracleReport& r) {
        out << what << ": " << r.checks.size() - r.failures() << '/' << r.checks.size()
            << " checks passed\n";
        for (const auto& c : r.checks)
          if (!c.ok)
            out << "  FAIL " << c.name << ": expected " << c.expected << ", got " << c.actual
                << '\n';
        failed += r.failures();
      };
      std::vector<Label> starts;
      if (verify_start)
        starts.push_back(*verify_start);
      else
        for (Label s = 1; s <= g.n(); ++s) starts.push_back(s);
      for (auto d : verify_d) {
        if (d < 1) throw ConfigError("d must be >= 1");
        summarize("chain fixtures d=" + std::to_string(d), verify_chain_fixtures(d));
        OracleReport value_law;
        for (Label s : starts) value_law.merge(verify_shortest_path_values(g, s, d));
        summarize("shortest-path value law d=" + std::to_string(d), value_law);
        if (g.n() <= kMaxEnumerationOrder) {
          OracleReport chains;
          for (Label s : starts) {
            auto nb = g.neighbors(s);
            if (std::all_of(nb.begin(), nb.end(), [s](Label u) { return u > s; }))
              chains.merge(verify_local_minimum_decomposition(g, s, d));
          }
          summarize("correct-chain sums d=" + std::to_string(d), chains);
        }
      }
      if (failed) throw VerificationFailure(std::to_string(failed) + " checks failed");
      return kSuccess;
    }
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerification;
  } catch (const CancellationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerification;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kVerification;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const std::invalid_argument& e) {  // ConfigError, GraphError
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace itrav::cli
