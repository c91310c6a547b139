#pragma once

#include <cstddef>
#include <vector>

#include "optidep/graph.hpp"
#include "optidep/registry.hpp"

namespace optidep {

/// One declared dependency of a sketch node. `candidates` lists every version
/// of the target package (node indices, newest first) regardless of the
/// constraint; it is empty when the package is missing from the registry.
struct SketchSlot {
  std::string package;
  Constraint constraint;
  std::vector<std::size_t> candidates;
};

/// A candidate node. Its decision variables (included, depth, one resolved
/// target per slot) are owned by whichever engine searches the sketch.
struct SketchNode {
  NodeId id;
  std::vector<SketchSlot> slots;
};

/// Superstructure holding every version of every reachable package.
/// nodes[0] is the root; the rest follow canonical NodeId order.
struct Sketch {
  std::vector<SketchNode> nodes;

  static constexpr std::size_t root_index = 0;

  /// Index of `id`, or nodes.size() when absent.
  std::size_t find(const NodeId& id) const;
  std::size_t slot_count() const;
};

Sketch build_sketch(const Registry& r, const RootManifest& root);

}  // namespace optidep
