#pragma once

#include <span>

#include "optidep/graph.hpp"
#include "optidep/registry.hpp"

namespace optidep {

// Every objective ignores the root: it has no version and is always present.

/// Number of included package nodes.
Rational cost_num_deps(const SolutionGraph& g);

/// Sum over package names of max(0, versions_included - 1).
Rational cost_duplicates(const SolutionGraph& g);

/// Rank of `v` among the package's versions (newest = 0) divided by
/// (count - 1); 0 for single-version packages. Throws NotFound.
Rational oldness(const Registry& r, std::string_view package, const Version& v);

/// Sum of oldness over included nodes.
Rational cost_oldness(const SolutionGraph& g, const Registry& r);

/// Sum over included nodes of the CVSS scores of every advisory affecting it.
Rational cost_cve(const SolutionGraph& g, std::span<const Advisory> advisories);

/// Cost vector for `objectives`, in order.
Cost evaluate(std::span<const Objective> objectives, const SolutionGraph& g, const Registry& r,
              std::span<const Advisory> advisories);

}  // namespace optidep
