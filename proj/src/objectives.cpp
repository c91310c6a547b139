#include "optidep/objectives.hpp"

#include <algorithm>
#include <map>

#include "optidep/errors.hpp"

namespace optidep {

Rational cost_num_deps(const SolutionGraph& g) {
  return Rational(static_cast<std::int64_t>(g.size() - (g.contains(NodeId::root()) ? 1 : 0)));
}

Rational cost_duplicates(const SolutionGraph& g) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& [n, targets] : g.edges)
    if (!n.is_root()) ++counts[n.package()];
  std::int64_t total = 0;
  for (const auto& [p, c] : counts) total += std::max<std::int64_t>(0, c - 1);
  return Rational(total);
}

Rational oldness(const Registry& r, std::string_view package, const Version& v) {
  std::vector<Version> all = r.sorted_versions(package);
  if (all.size() == 1) return Rational(0);
  auto it = std::find(all.begin(), all.end(), v);
  if (it == all.end())
    throw NotFound("unknown node " + std::string(package) + "@" + v.str());
  return Rational(it - all.begin(), static_cast<std::int64_t>(all.size()) - 1);
}

Rational cost_oldness(const SolutionGraph& g, const Registry& r) {
  Rational total;
  for (const auto& [n, targets] : g.edges)
    if (!n.is_root()) total += oldness(r, n.package(), n.version());
  return total;
}

Rational cost_cve(const SolutionGraph& g, std::span<const Advisory> advisories) {
  Rational total;
  for (const auto& [n, targets] : g.edges) {
    if (n.is_root()) continue;
    for (const Advisory& a : advisories)
      if (a.package == n.package() && sat(a.affected, n.version())) total += a.cvss;
  }
  return total;
}

Cost evaluate(std::span<const Objective> objectives, const SolutionGraph& g, const Registry& r,
              std::span<const Advisory> advisories) {
  Cost out;
  out.reserve(objectives.size());
  for (Objective o : objectives) {
    switch (o) {
      case Objective::min_oldness: out.push_back(cost_oldness(g, r)); break;
      case Objective::min_num_deps: out.push_back(cost_num_deps(g)); break;
      case Objective::min_duplicates: out.push_back(cost_duplicates(g)); break;
      case Objective::min_cve: out.push_back(cost_cve(g, advisories)); break;
    }
  }
  return out;
}

}  // namespace optidep
