#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "optidep/check.hpp"
#include "optidep/graph.hpp"
#include "optidep/registry.hpp"
#include "optidep/sketch.hpp"

namespace optidep {

enum class SolveStatus { optimal, unsat, timeout };
std::string_view to_string(SolveStatus s);

struct LexResult {
  SolveStatus status = SolveStatus::unsat;
  /// The optimum; on timeout, the best graph found so far (if any).
  std::optional<SolutionGraph> graph;
  Cost cost;
  /// True only for a proven optimum with the canonical tie-break applied.
  bool certified = false;
  std::uint64_t search_nodes = 0;
};

/// Minimizes the objectives in priority order over every valid graph the
/// sketch admits under `spec`'s consistency rule and cyclicity flag.
///
/// Among graphs of equal cost, returns the one whose sorted node sequence is
/// lexicographically smallest in canonical NodeId order (a proper prefix
/// sorts first), then whose flattened edge-target sequence is smallest.
LexResult lexicographic_minimize(const Sketch& sketch, const Registry& r,
                                 std::span<const Advisory> advisories, const SolverSpec& spec,
                                 std::chrono::steady_clock::time_point deadline);

struct SolveResult {
  SolveStatus status = SolveStatus::unsat;
  std::optional<SolutionGraph> graph;
  Cost cost;
  bool certified = false;
  /// On Unsat: which condition family cannot be met (4, 5 or 6) and why.
  std::vector<Violation> unsat_reasons;
  std::uint64_t search_nodes = 0;
};

/// Exact optimal solve. Throws std::invalid_argument for a malformed spec and
/// std::logic_error if the engine ever produces a graph that fails
/// check_graph or whose cost disagrees with the objective functions.
SolveResult solve(const Registry& r, const RootManifest& root, const SolverSpec& spec,
                  std::span<const Advisory> advisories = {});

}  // namespace optidep
