#pragma once

#include <string>
#include <vector>

#include "optidep/graph.hpp"
#include "optidep/registry.hpp"

namespace optidep {

/// A failed correctness condition:
///   1 root included, 2 every node reachable from root, 3 edge arity and
///   well-formed targets, 4 edge name/constraint match, 5 pairwise
///   consistency, 6 acyclicity (only when cycles are disallowed).
struct Violation {
  int condition = 0;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Returns every violation found, in condition order; empty means valid.
std::vector<Violation> check_graph(const Registry& r, const RootManifest& root,
                                   const SolverSpec& spec, const SolutionGraph& g);

/// Topological-sort check of the edge relation.
bool is_acyclic(const SolutionGraph& g);

}  // namespace optidep
