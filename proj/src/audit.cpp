#include "optidep/audit.hpp"

#include <algorithm>

#include "json_util.hpp"
#include "optidep/errors.hpp"

namespace optidep {

using detail::json;

bool affected(const Advisory& a, std::string_view package, const Version& v) {
  return a.package == package && sat(a.affected, v);
}

AuditReport audit_report(const SolutionGraph& g, std::span<const Advisory> advisories) {
  AuditReport report;
  for (const auto& [n, targets] : g.edges) {
    if (n.is_root()) continue;
    AuditEntry entry{n, {}, {}};
    for (const Advisory& a : advisories) {
      if (!affected(a, n.package(), n.version())) continue;
      entry.advisories.push_back(a.id);
      entry.subtotal += a.cvss;
    }
    std::sort(entry.advisories.begin(), entry.advisories.end());
    report.total += entry.subtotal;
    report.nodes.push_back(std::move(entry));
  }
  return report;
}

std::string AuditReport::to_json() const {
  json arr = json::array();
  for (const auto& e : nodes)
    arr.push_back({{"package", e.node.package()},
                   {"version", e.node.version().str()},
                   {"advisories", e.advisories},
                   {"subtotal", e.subtotal.str()}});
  json doc = {{"total", total.str()}, {"nodes", std::move(arr)}};
  return doc.dump(2) + "\n";
}

AuditReport AuditReport::from_json(std::string_view document) {
  json doc = detail::parse_document(document);
  AuditReport report;
  try {
    report.total = Rational::parse(detail::require_string(detail::require(doc, "total", ""), "/total"));
    const json& nodes = detail::require(doc, "nodes", "");
    if (!nodes.is_array()) throw LoadError("/nodes", "expected an array");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      std::string path = detail::path_join("/nodes", i);
      const json& e = nodes[i];
      const std::string& pkg = detail::require_string(detail::require(e, "package", path), path + "/package");
      Version v = Version::parse(detail::require_string(detail::require(e, "version", path), path + "/version"));
      AuditEntry entry{NodeId(pkg, std::move(v)), {}, {}};
      const json& ids = detail::require(e, "advisories", path);
      if (!ids.is_array()) throw LoadError(path + "/advisories", "expected an array");
      for (const auto& id : ids) entry.advisories.push_back(detail::require_string(id, path + "/advisories"));
      entry.subtotal =
          Rational::parse(detail::require_string(detail::require(e, "subtotal", path), path + "/subtotal"));
      report.nodes.push_back(std::move(entry));
    }
  } catch (const ParseError& e) {
    throw LoadError("", e.what());
  } catch (const std::invalid_argument& e) {
    throw LoadError("", e.what());
  }
  return report;
}

AuditDelta compare_reports(const AuditReport& before, const AuditReport& after) {
  auto ids = [](const AuditReport& r) {
    std::set<std::string> out;
    for (const auto& e : r.nodes) out.insert(e.advisories.begin(), e.advisories.end());
    return out;
  };
  std::set<std::string> b = ids(before), a = ids(after);
  AuditDelta d;
  d.total = after.total - before.total;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(d.added, d.added.end()));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::inserter(d.removed, d.removed.end()));
  return d;
}

}  // namespace optidep
