#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "optidep/graph.hpp"
#include "optidep/registry.hpp"

namespace optidep {

bool affected(const Advisory& a, std::string_view package, const Version& v);

struct AuditEntry {
  NodeId node;
  std::vector<std::string> advisories;  // ids, sorted
  Rational subtotal;
};

/// Vulnerability exposure of a graph; `total` always equals cost_cve.
struct AuditReport {
  Rational total;
  std::vector<AuditEntry> nodes;  // every non-root node, canonical order

  /// `{ "total": "<decimal>", "nodes": [ { "package", "version", "advisories", "subtotal" } ] }`
  std::string to_json() const;
  static AuditReport from_json(std::string_view document);
};

AuditReport audit_report(const SolutionGraph& g, std::span<const Advisory> advisories);

struct AuditDelta {
  Rational total;                 // after.total - before.total
  std::set<std::string> added;    // advisory ids present only after
  std::set<std::string> removed;  // advisory ids present only before
};

AuditDelta compare_reports(const AuditReport& before, const AuditReport& after);

}  // namespace optidep
