#include "optidep/check.hpp"

#include <deque>
#include <set>

#include "optidep/consistency.hpp"

namespace optidep {

bool is_acyclic(const SolutionGraph& g) {
  // Kahn's algorithm over included nodes; edges to absent nodes are ignored.
  std::map<NodeId, int> indegree;
  for (const auto& [n, targets] : g.edges) indegree.emplace(n, 0);
  for (const auto& [n, targets] : g.edges)
    for (const auto& t : targets)
      if (auto it = indegree.find(t); it != indegree.end()) ++it->second;
  std::deque<NodeId> ready;
  for (const auto& [n, d] : indegree)
    if (d == 0) ready.push_back(n);
  std::size_t removed = 0;
  while (!ready.empty()) {
    NodeId n = ready.front();
    ready.pop_front();
    ++removed;
    for (const auto& t : g.edges.at(n))
      if (auto it = indegree.find(t); it != indegree.end() && --it->second == 0) ready.push_back(t);
  }
  return removed == indegree.size();
}

std::vector<Violation> check_graph(const Registry& r, const RootManifest& root,
                                   const SolverSpec& spec, const SolutionGraph& g) {
  std::vector<Violation> out;
  auto report = [&](int condition, std::string message) {
    out.push_back({condition, std::move(message)});
  };

  // 1
  const NodeId root_id = NodeId::root();
  if (!g.contains(root_id)) report(1, "root is not included");

  // 2
  if (g.contains(root_id)) {
    std::set<NodeId> seen{root_id};
    std::deque<NodeId> work{root_id};
    while (!work.empty()) {
      NodeId n = work.front();
      work.pop_front();
      for (const auto& t : g.edges.at(n))
        if (g.contains(t) && seen.insert(t).second) work.push_back(t);
    }
    for (const auto& [n, targets] : g.edges)
      if (!seen.contains(n)) report(2, n.str() + " is not reachable from root");
  }

  // 3 and 4 share the per-node walk; collect separately to keep condition order.
  std::vector<Violation> edge_violations;
  for (const auto& [n, targets] : g.edges) {
    const std::vector<Dependency>* deps = nullptr;
    if (n.is_root()) {
      deps = &root.dependencies;
    } else if (r.contains(n.package(), n.version())) {
      deps = &r.dependencies(n.package(), n.version());
    } else {
      report(3, n.str() + " is not in the registry");
      continue;
    }
    if (targets.size() != deps->size()) {
      report(3, n.str() + " has " + std::to_string(targets.size()) + " resolved edges for " +
                    std::to_string(deps->size()) + " declared dependencies");
    }
    std::size_t k = std::min(targets.size(), deps->size());
    for (std::size_t i = 0; i < k; ++i) {
      const NodeId& t = targets[i];
      const Dependency& d = (*deps)[i];
      std::string where = n.str() + " dependency #" + std::to_string(i) + " (" + d.package + " " +
                          d.constraint.str() + ")";
      if (t.is_root() || !g.contains(t)) {
        report(3, where + " points at " + t.str() + ", which is not an included node");
        continue;
      }
      if (t.package() != d.package)
        edge_violations.push_back({4, where + " resolved to a different package: " + t.str()});
      else if (!sat(d.constraint, t.version()))
        edge_violations.push_back({4, where + " is not satisfied by " + t.str()});
    }
  }
  out.insert(out.end(), edge_violations.begin(), edge_violations.end());

  // 5
  for (auto a = g.edges.begin(); a != g.edges.end(); ++a) {
    if (a->first.is_root()) continue;
    for (auto b = std::next(a); b != g.edges.end() && b->first.package() == a->first.package(); ++b)
      if (!consistent(spec.consistency, a->first.version(), b->first.version()))
        report(5, a->first.str() + " and " + b->first.str() + " are not consistent under " +
                      std::string(to_string(spec.consistency)));
  }

  // 6
  if (!spec.allow_cycles && !is_acyclic(g)) report(6, "graph has a cycle");
  return out;
}

}  // namespace optidep
