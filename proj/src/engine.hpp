#pragma once

// Branch-and-bound over a compiled sketch. Internal to the solver.

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "optidep/graph.hpp"
#include "optidep/registry.hpp"
#include "optidep/sketch.hpp"

namespace optidep::engine {

using Clock = std::chrono::steady_clock;
/// Scaled-integer cost vector; entry k is the exact cost times Problem::scale[k].
using Score = std::vector<std::int64_t>;
using NodeIx = std::uint32_t;
constexpr std::int32_t kUnresolved = -1;

struct Problem {
  std::size_t node_count = 0;
  std::size_t package_count = 0;
  std::vector<std::uint32_t> package_of;  // root maps to package_count (no package)
  std::vector<std::vector<NodeIx>> package_nodes;
  std::vector<std::uint32_t> local_index;
  std::vector<std::vector<char>> compat;  // per package, local x local, row-major

  std::vector<Objective> objectives;
  std::vector<std::int64_t> scale;
  std::vector<Score> node_cost;  // additive part; duplicate objectives are 0 here
  std::vector<std::size_t> duplicate_objectives;

  /// Constraint-satisfying (and self-consistent) targets per slot, canonical order.
  std::vector<std::vector<std::vector<NodeIx>>> targets;
  /// Nodes that cannot appear in any valid graph (some slot has no live target).
  std::vector<char> dead;
  bool allow_cycles = true;

  bool compatible(NodeIx a, NodeIx b) const {
    std::uint32_t p = package_of[a];
    if (p != package_of[b] || p == package_count) return true;
    std::size_t width = package_nodes[p].size();
    return compat[p][local_index[a] * width + local_index[b]] != 0;
  }
};

Problem compile(const Sketch& sketch, const Registry& r, std::span<const Advisory> advisories,
                const SolverSpec& spec);

struct Assignment {
  std::vector<char> included;
  std::vector<std::vector<std::int32_t>> target;
};

struct Query {
  /// Upper bound on the score of accepted graphs.
  std::optional<Score> bound;
  /// Optimizing: accept only scores strictly below the bound and tighten it
  /// on every leaf. Otherwise scores equal to the bound are accepted.
  bool optimize = true;
  /// Stop at the first accepted leaf.
  bool first_only = false;
  /// Per node: +1 must be included, -1 must be excluded, 0 free. Empty = all free.
  std::vector<signed char> forced;
  /// Per node and slot: required target, or kUnresolved. Empty = all free.
  std::vector<std::vector<std::int32_t>> fixed;
};

struct Outcome {
  bool timed_out = false;
  std::optional<Assignment> best;
  Score best_score;
  std::uint64_t expansions = 0;
};

Outcome run(const Problem& problem, const Query& query, Clock::time_point deadline);

SolutionGraph to_graph(const Sketch& sketch, const Assignment& a);

}  // namespace optidep::engine
