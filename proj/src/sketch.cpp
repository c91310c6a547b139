#include "optidep/sketch.hpp"

#include <algorithm>
#include <map>

namespace optidep {

std::size_t Sketch::find(const NodeId& id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                             [](const SketchNode& n, const NodeId& key) { return n.id < key; });
  return it != nodes.end() && it->id == id ? static_cast<std::size_t>(it - nodes.begin())
                                           : nodes.size();
}

std::size_t Sketch::slot_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes) n += node.slots.size();
  return n;
}

Sketch build_sketch(const Registry& r, const RootManifest& root) {
  Sketch sk;
  sk.nodes.push_back({NodeId::root(), {}});

  Reachability reach = reachable_packages(r, root);
  std::map<std::string, std::pair<std::size_t, std::size_t>, std::less<>> span_of;  // [first, last)
  std::vector<const std::vector<Dependency>*> deps_of{&root.dependencies};
  for (const auto& name : reach.packages) {
    const Registry::VersionMap* vs = r.versions(name);
    if (vs == nullptr) continue;
    std::size_t first = sk.nodes.size();
    for (const auto& [v, deps] : *vs) {
      sk.nodes.push_back({NodeId(name, v), {}});
      deps_of.push_back(&deps);
    }
    span_of.emplace(name, std::make_pair(first, sk.nodes.size()));
  }

  for (std::size_t i = 0; i < sk.nodes.size(); ++i) {
    for (const auto& d : *deps_of[i]) {
      SketchSlot slot{d.package, d.constraint, {}};
      if (auto it = span_of.find(d.package); it != span_of.end())
        for (std::size_t t = it->second.first; t < it->second.second; ++t) slot.candidates.push_back(t);
      sk.nodes[i].slots.push_back(std::move(slot));
    }
  }
  return sk;
}

}  // namespace optidep
