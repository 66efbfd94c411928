#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "itrav/algebraic.hpp"
#include "itrav/config.hpp"
#include "itrav/graph.hpp"
#include "itrav/trace.hpp"

namespace itrav {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct EdgeList {
  std::vector<Edge> edges;
  Label n = 0;
};

namespace detail {

struct TextLine {
  std::size_t number;
  std::string_view text;
};

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::vector<TextLine> split_lines(std::string_view text) {
  std::vector<TextLine> out;
  std::size_t number = 0;
  while (!text.empty()) {
    auto eol = text.find('\n');
    out.push_back({++number, trim(text.substr(0, eol))});
    if (eol == std::string_view::npos) break;
    text.remove_prefix(eol + 1);
  }
  return out;
}

inline std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    s = trim(s);
    if (s.empty()) break;
    auto end = s.find_first_of(" \t");
    out.push_back(s.substr(0, end));
    if (end == std::string_view::npos) break;
    s.remove_prefix(end);
  }
  return out;
}

inline std::int64_t parse_integer(std::string_view tok, std::size_t line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("expected an integer, got '" + std::string(tok) + "'", line);
  return v;
}

inline Label parse_label(std::string_view tok, std::size_t line, std::int64_t max_label) {
  auto v = parse_integer(tok, line);
  if (v <= 0) throw ParseError("vertex labels must be positive, got " + std::to_string(v), line);
  if (v > max_label)
    throw ParseError("vertex label " + std::to_string(v) + " exceeds " + std::to_string(max_label),
                     line);
  return static_cast<Label>(v);
}

}  // namespace detail

/// Edge list: one "u v" pair per line, 1-based. Lines starting with '#' or
/// '%' are comments. The first data line is read as an "n m" header when
/// exactly m data lines follow it and none of them uses a label above n.
inline EdgeList parse_edge_list(std::string_view text) {
  struct Row {
    std::size_t line;
    std::int64_t a, b;
  };
  std::vector<Row> rows;
  for (const auto& [number, line] : detail::split_lines(text)) {
    if (line.empty() || line.front() == '#' || line.front() == '%') continue;
    auto tok = detail::tokens(line);
    if (tok.size() != 2)
      throw ParseError("expected two integers 'u v', got '" + std::string(line) + "'", number);
    rows.push_back({number, detail::parse_integer(tok[0], number),
                    detail::parse_integer(tok[1], number)});
  }

  EdgeList out;
  std::size_t first = 0;
  std::int64_t declared_n = 0;
  if (!rows.empty() && rows[0].a > 0 && rows[0].b >= 0 &&
      static_cast<std::size_t>(rows[0].b) == rows.size() - 1) {
    const auto cap = rows[0].a;
    bool fits = std::all_of(rows.begin() + 1, rows.end(),
                            [cap](const Row& r) { return r.a <= cap && r.b <= cap; });
    if (fits) {
      declared_n = cap;
      first = 1;
    }
  }

  std::int64_t max_label = 0;
  for (std::size_t r = first; r < rows.size(); ++r) {
    const auto& [line, a, b] = rows[r];
    if (a <= 0 || b <= 0)
      throw ParseError("vertex labels must be positive, got " + std::to_string(a <= 0 ? a : b),
                       line);
    if (a == b) throw ParseError("self-loop at vertex " + std::to_string(a), line);
    if (a > UINT32_MAX || b > UINT32_MAX) throw ParseError("vertex label too large", line);
    max_label = std::max({max_label, a, b});
    out.edges.emplace_back(static_cast<Label>(a), static_cast<Label>(b));
  }
  if (declared_n > UINT32_MAX) throw ParseError("vertex count too large", rows[0].line);
  out.n = static_cast<Label>(declared_n ? declared_n : max_label);
  if (out.n == 0) throw ParseError("edge list declares no vertices");
  return out;
}

/// Matrix Market "coordinate pattern symmetric". Off-diagonal entries become
/// undirected edges; diagonal entries are ignored.
inline EdgeList parse_matrix_market(std::string_view text) {
  auto lines = detail::split_lines(text);
  if (lines.empty() || !lines[0].text.starts_with("%%MatrixMarket"))
    throw ParseError("missing %%MatrixMarket banner", 1);
  auto banner = detail::tokens(lines[0].text);
  auto lower = [](std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
  };
  if (banner.size() != 5 || lower(banner[1]) != "matrix" || lower(banner[2]) != "coordinate")
    throw ParseError("only 'matrix coordinate' Matrix Market files are supported", 1);
  if (lower(banner[3]) != "pattern")
    throw ParseError("unsupported Matrix Market field '" + std::string(banner[3]) +
                         "' (expected pattern)", 1);
  if (lower(banner[4]) != "symmetric")
    throw ParseError("unsupported Matrix Market symmetry '" + std::string(banner[4]) +
                         "' (expected symmetric)", 1);

  EdgeList out;
  std::optional<std::int64_t> nnz;
  std::int64_t seen = 0;
  for (std::size_t idx = 1; idx < lines.size(); ++idx) {
    const auto& [number, line] = lines[idx];
    if (line.empty() || line.front() == '%') continue;
    auto tok = detail::tokens(line);
    if (!nnz) {
      if (tok.size() != 3) throw ParseError("expected size line 'rows cols entries'", number);
      auto rows = detail::parse_integer(tok[0], number);
      auto cols = detail::parse_integer(tok[1], number);
      nnz = detail::parse_integer(tok[2], number);
      if (rows != cols)
        throw ParseError("dimension mismatch: " + std::to_string(rows) + " x " +
                             std::to_string(cols) + " is not square", number);
      if (rows < 1 || rows > UINT32_MAX || *nnz < 0)
        throw ParseError("invalid matrix dimensions", number);
      out.n = static_cast<Label>(rows);
      continue;
    }
    if (tok.size() != 2) throw ParseError("expected pattern entry 'row col'", number);
    Label i = detail::parse_label(tok[0], number, out.n);
    Label j = detail::parse_label(tok[1], number, out.n);
    ++seen;
    if (i != j) out.edges.emplace_back(std::min(i, j), std::max(i, j));
  }
  if (!nnz) throw ParseError("missing size line");
  if (seen != *nnz)
    throw ParseError("dimension mismatch: header announces " + std::to_string(*nnz) +
                     " entries, found " + std::to_string(seen));
  return out;
}

inline std::string write_edge_list(const Graph& g) {
  std::ostringstream os;
  os << g.n() << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

inline std::string write_matrix_market(const Graph& g) {
  std::ostringstream os;
  os << "%%MatrixMarket matrix coordinate pattern symmetric\n";
  os << g.n() << ' ' << g.n() << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) os << v << ' ' << u << '\n';  // lower triangle
  return os.str();
}

// ---------------------------------------------------------------------------
// Permutation files: one "old new" pair per line.

inline std::string write_permutation(const VertexPermutation& p) {
  std::ostringstream os;
  for (Label old = 1; old <= p.size(); ++old) os << old << ' ' << p.map(old) << '\n';
  return os.str();
}

inline VertexPermutation parse_permutation(std::string_view text) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (const auto& [number, line] : detail::split_lines(text)) {
    if (line.empty() || line.front() == '#' || line.front() == '%') continue;
    auto tok = detail::tokens(line);
    if (tok.size() != 2) throw ParseError("expected 'old new'", number);
    pairs.emplace_back(detail::parse_integer(tok[0], number), detail::parse_integer(tok[1], number));
  }
  const auto n = static_cast<std::int64_t>(pairs.size());
  std::vector<Label> forward(pairs.size(), 0);
  for (auto [old, nw] : pairs) {
    if (old < 1 || old > n || nw < 1 || nw > n || forward[old - 1] != 0)
      throw ParseError("permutation file is not a bijection on [1, " + std::to_string(n) + "]");
    forward[old - 1] = static_cast<Label>(nw);
  }
  try {
    return VertexPermutation::from_forward(std::move(forward));
  } catch (const GraphError& e) {
    throw ParseError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Trace documents: line-delimited JSON records.
//
//   {"record":"header","schema":"itrav-trace","version":1,"n":..,"m":..,"d":..,
//    "variant":..,"arith":..,"masking":..,"regularize_every":..,"start":..}
//   {"record":"iteration","k":..,"frontier":[..],"state":["..", ..]}   (one per k)
//   {"record":"summary","iterations":N,"components":[[..], ..]}
//
// State entries are decimal strings so exact integers survive unchanged;
// "state" is omitted when snapshots were not taken.

inline constexpr std::string_view kTraceSchema = "itrav-trace";
inline constexpr int kTraceSchemaVersion = 1;

struct TraceDocument {
  Label n = 0;
  std::size_t m = 0;
  std::uint64_t d = kDefaultDiagonal;
  Variant variant = Variant::gauss_seidel;
  ArithmeticMode mode = ArithmeticMode::exact;
  bool masking = false;
  std::optional<std::uint32_t> regularize_every;
  TraversalTrace trace;
  std::vector<std::vector<Label>> components;

  std::uint32_t iteration_count() const { return trace.iteration_count(); }

  bool operator==(const TraceDocument&) const = default;
};

inline TraceDocument make_trace_document(const Graph& g, const TraversalConfig& cfg,
                                         const ComponentResult& result) {
  if (cfg.exact_diagonal) throw ConfigError("trace documents store d as a 64-bit integer");
  return {g.n(),        g.m(),        cfg.diagonal(g), cfg.variant,  cfg.mode,
          cfg.masking,  cfg.regularization_period, result.trace, {result.vertices}};
}

inline std::string emit_trace(const TraceDocument& doc) {
  using nlohmann::json;
  std::string out;
  json header = {{"record", "header"},
                 {"schema", kTraceSchema},
                 {"version", kTraceSchemaVersion},
                 {"n", doc.n},
                 {"m", doc.m},
                 {"d", doc.d},
                 {"variant", to_string(doc.variant)},
                 {"arith", to_string(doc.mode)},
                 {"masking", doc.masking},
                 {"regularize_every", nullptr},
                 {"start", doc.trace.start}};
  if (doc.regularize_every) header["regularize_every"] = *doc.regularize_every;
  out += header.dump() + '\n';
  for (const auto& rec : doc.trace.records) {
    json line = {{"record", "iteration"}, {"k", rec.k}, {"frontier", rec.frontier}};
    if (!rec.state.empty()) line["state"] = rec.state;
    out += line.dump() + '\n';
  }
  json summary = {{"record", "summary"},
                  {"iterations", doc.iteration_count()},
                  {"components", doc.components}};
  out += summary.dump() + '\n';
  return out;
}

inline TraceDocument parse_trace(std::string_view text) {
  using nlohmann::json;
  TraceDocument doc;
  bool have_header = false, have_summary = false;
  for (const auto& [number, line] : detail::split_lines(text)) {
    if (line.empty()) continue;
    try {
      auto rec = json::parse(line);
      const auto kind = rec.at("record").get<std::string>();
      if (have_summary) throw ParseError("record after summary", number);
      if (kind == "header") {
        if (have_header) throw ParseError("duplicate header", number);
        if (rec.at("schema").get<std::string>() != kTraceSchema ||
            rec.at("version").get<int>() != kTraceSchemaVersion)
          throw ParseError("unsupported trace schema", number);
        doc.n = rec.at("n").get<Label>();
        doc.m = rec.at("m").get<std::size_t>();
        doc.d = rec.at("d").get<std::uint64_t>();
        doc.variant = parse_variant(rec.at("variant").get<std::string>());
        doc.mode = parse_arithmetic(rec.at("arith").get<std::string>());
        doc.masking = rec.at("masking").get<bool>();
        if (!rec.at("regularize_every").is_null())
          doc.regularize_every = rec.at("regularize_every").get<std::uint32_t>();
        doc.trace.start = rec.at("start").get<Label>();
        have_header = true;
      } else if (kind == "iteration") {
        if (!have_header) throw ParseError("iteration before header", number);
        IterationRecord r;
        r.k = rec.at("k").get<std::uint32_t>();
        r.frontier = rec.at("frontier").get<std::vector<Label>>();
        if (rec.contains("state")) r.state = rec.at("state").get<std::vector<std::string>>();
        if (r.k != doc.trace.records.size()) throw ParseError("iterations out of order", number);
        doc.trace.records.push_back(std::move(r));
      } else if (kind == "summary") {
        if (!have_header) throw ParseError("summary before header", number);
        if (rec.at("iterations").get<std::uint32_t>() != doc.iteration_count())
          throw ParseError("iteration count disagrees with the records", number);
        doc.components = rec.at("components").get<std::vector<std::vector<Label>>>();
        have_summary = true;
      } else {
        throw ParseError("unknown record type '" + kind + "'", number);
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed trace record: ") + e.what(), number);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), number);
    }
  }
  if (!have_header || !have_summary) throw ParseError("trace document is incomplete");
  return doc;
}

}  // namespace itrav
