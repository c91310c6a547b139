#pragma once

#include <chrono>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optidep/rational.hpp"
#include "optidep/version.hpp"

namespace optidep {

/// Root or a concrete (package, version). Canonical order: root first, then
/// package name ascending, then version descending (newest first).
class NodeId {
 public:
  static NodeId root() { return NodeId(); }
  NodeId(std::string package, Version version)
      : root_(false), package_(std::move(package)), version_(std::move(version)) {}

  bool is_root() const noexcept { return root_; }
  const std::string& package() const noexcept { return package_; }
  const Version& version() const noexcept { return version_; }

  /// "root" or "name@version".
  std::string str() const { return root_ ? "root" : package_ + "@" + version_.str(); }

  friend std::strong_ordering operator<=>(const NodeId& a, const NodeId& b) {
    if (a.root_ || b.root_) return b.root_ <=> a.root_;
    if (auto c = a.package_ <=> b.package_; c != 0) return c;
    return b.version_ <=> a.version_;
  }
  friend bool operator==(const NodeId& a, const NodeId& b) { return (a <=> b) == 0; }

 private:
  NodeId() = default;
  bool root_ = true;
  std::string package_;
  Version version_;
};

/// Included nodes (the key set) with one resolved target per declared dependency.
struct SolutionGraph {
  std::map<NodeId, std::vector<NodeId>> edges;

  bool contains(const NodeId& n) const { return edges.contains(n); }
  std::size_t size() const { return edges.size(); }
  /// Included nodes in canonical order.
  std::vector<NodeId> nodes() const;

  friend bool operator==(const SolutionGraph&, const SolutionGraph&) = default;
};

enum class Consistency { npm, no_dups, cargo };
enum class Objective { min_oldness, min_num_deps, min_duplicates, min_cve };

std::string_view to_string(Consistency c);
std::string_view to_string(Objective o);
/// Accepts "npm", "no-dups"/"no_dups", "cargo".
std::optional<Consistency> parse_consistency(std::string_view text);
/// Accepts the objective names exactly as printed by to_string.
std::optional<Objective> parse_objective(std::string_view text);

struct SolverSpec {
  Consistency consistency = Consistency::npm;
  std::vector<Objective> objectives{Objective::min_oldness};
  bool allow_cycles = true;
  std::chrono::milliseconds timeout{std::chrono::seconds(600)};

  /// Throws std::invalid_argument for an empty or repeating objective list.
  void validate() const;
};

/// One exact entry per objective, in objective order; compared lexicographically.
using Cost = std::vector<Rational>;

std::string to_string(const Cost& cost);

}  // namespace optidep
