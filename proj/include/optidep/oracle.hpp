#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "optidep/check.hpp"
#include "optidep/graph.hpp"
#include "optidep/registry.hpp"
#include "optidep/sketch.hpp"
#include "optidep/solver.hpp"

namespace optidep {

struct OracleOptions {
  /// Refuse inputs whose assignment space is larger than this.
  std::uint64_t capacity = 10'000'000;
  /// Pruned mode skips assignments that must fail condition 4 or 5 (slot
  /// values on excluded nodes, unsatisfied or absent targets, inconsistent
  /// inclusion sets). Unpruned mode walks every (included flags x slot
  /// target) assignment and lets check_graph reject.
  bool pruned = true;
};

/// Exhaustive walk over the assignments of a sketch. Each assignment is
/// visited once, in a fixed order; candidates are handed to the visitor as
/// graphs, duplicates of the same graph suppressed.
class CandidateEnumeration {
 public:
  /// `rule` is used only by the pruned mode to skip inconsistent inclusion sets.
  CandidateEnumeration(const Sketch& sketch, Consistency rule, OracleOptions options);

  /// Size of the assignment space in the chosen mode, saturating at UINT64_MAX.
  std::uint64_t assignment_count() const noexcept { return count_; }

  /// Throws CapacityError when assignment_count() exceeds the capacity.
  void for_each(const std::function<void(const SolutionGraph&)>& visit) const;

 private:
  const Sketch& sketch_;
  Consistency rule_;
  OracleOptions options_;
  std::vector<std::vector<std::vector<std::size_t>>> satisfying_;  // per node, slot
  std::uint64_t count_ = 0;
};

/// Streams every graph check_graph accepts, with its exact cost.
void enumerate_valid(const Registry& r, const RootManifest& root, const SolverSpec& spec,
                     std::span<const Advisory> advisories,
                     const std::function<void(const SolutionGraph&, const Cost&)>& visit,
                     OracleOptions options = {});

struct OracleResult {
  SolveStatus status = SolveStatus::unsat;  // optimal or unsat
  std::optional<SolutionGraph> graph;
  Cost cost;
  std::uint64_t valid_graphs = 0;
};

/// Lexicographic minimum over enumerate_valid, tie-broken exactly like solve.
OracleResult oracle_solve(const Registry& r, const RootManifest& root, const SolverSpec& spec,
                          std::span<const Advisory> advisories = {}, OracleOptions options = {});

/// Whether `a` precedes `b` under the shared tie-break: sorted node sequence,
/// then flattened edge-target sequence, both lexicographic in canonical order.
bool canonical_less(const SolutionGraph& a, const SolutionGraph& b);

}  // namespace optidep
