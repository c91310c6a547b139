#pragma once

#include <string>
#include <string_view>

#include "optidep/graph.hpp"

namespace optidep {

/// `{ "nodes": [ { "deps": [[name, version], ...], "package", "version" } ], "root": { "deps": [...] } }`
/// Keys sorted, nodes in canonical order, two-space indent, trailing newline.
/// Identical graphs always serialize to identical bytes.
std::string write_lockfile(const SolutionGraph& g);

/// Inverse of write_lockfile. A lockfile without "root" yields a graph
/// without the root node. Throws LoadError on schema violations.
SolutionGraph read_lockfile(std::string_view document);

}  // namespace optidep
