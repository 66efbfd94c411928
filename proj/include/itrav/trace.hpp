#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "itrav/graph.hpp"

namespace itrav {

struct IterationRecord {
  std::uint32_t k = 0;
  std::vector<Label> frontier;     // ascending
  std::vector<std::string> state;  // decimal snapshot of x^(k), empty unless requested

  bool operator==(const IterationRecord&) const = default;
};

/// Frontier history of one traversal. records[0] holds F^(0) = {start};
/// every later record holds a nonempty frontier, so the number of
/// frontier-producing iterations is records.size() - 1.
struct TraversalTrace {
  Label start = 0;
  std::vector<IterationRecord> records;

  std::uint32_t iteration_count() const {
    return records.empty() ? 0 : static_cast<std::uint32_t>(records.size() - 1);
  }

  std::vector<std::vector<Label>> frontiers() const {
    std::vector<std::vector<Label>> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.frontier);
    return out;
  }

  /// C^(k): union of F^(0..k), ascending.
  std::vector<Label> visited_after(std::uint32_t k) const {
    std::vector<Label> out;
    for (std::uint32_t i = 0; i <= k && i < records.size(); ++i)
      out.insert(out.end(), records[i].frontier.begin(), records[i].frontier.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Label> visited() const { return visited_after(iteration_count()); }

  bool operator==(const TraversalTrace&) const = default;
};

}  // namespace itrav
