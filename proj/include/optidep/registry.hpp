#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "optidep/constraint.hpp"
#include "optidep/rational.hpp"
#include "optidep/version.hpp"

namespace optidep {

struct Dependency {
  std::string package;
  Constraint constraint;

  friend bool operator==(const Dependency&, const Dependency&) = default;
};

/// Immutable-after-load package universe: every (package, version) node with
/// its ordered dependency list. Dependency targets may name packages that are
/// not in the registry.
class Registry {
 public:
  using VersionMap = std::map<Version, std::vector<Dependency>, std::greater<>>;

  Registry() = default;

  /// `{ "packages": { name: { version: { "dependencies": [[name, range], ...] } } } }`
  static Registry load(std::string_view document);
  static Registry load_file(const std::string& path);

  /// Throws LoadError when (package, version) is already present.
  void add(const std::string& package, Version version, std::vector<Dependency> deps);

  bool contains(std::string_view package) const;
  bool contains(std::string_view package, const Version& version) const;

  /// Throws NotFound for unknown nodes.
  const std::vector<Dependency>& dependencies(std::string_view package, const Version& version) const;

  /// Newest first by semver precedence. Throws NotFound for unknown packages.
  std::vector<Version> sorted_versions(std::string_view package) const;

  /// Versions keyed newest first, or nullptr.
  const VersionMap* versions(std::string_view package) const;

  const std::map<std::string, VersionMap, std::less<>>& packages() const noexcept { return packages_; }
  std::size_t node_count() const;

  /// Canonical JSON text (sorted keys, two-space indent, trailing newline).
  std::string dump() const;

 private:
  std::map<std::string, VersionMap, std::less<>> packages_;
};

/// The project being solved; the distinguished root node.
struct RootManifest {
  std::string name;
  std::vector<Dependency> dependencies;

  /// `{ "name": "...", "dependencies": [[name, range], ...] }`
  static RootManifest load(std::string_view document);
  static RootManifest load_file(const std::string& path);
  std::string dump() const;
};

struct Reachability {
  std::set<std::string> packages;
  /// Subset of `packages` absent from the registry.
  std::set<std::string> missing;
};

/// Least fixpoint of dependency targets, starting at the root's dependencies
/// and following every version of every reached package.
Reachability reachable_packages(const Registry& registry, const RootManifest& root);

struct Advisory {
  std::string id;
  std::string package;
  Constraint affected;
  Rational cvss;  // within [0, 10]
};

/// `{ "advisories": [ { "id", "package", "affected", "cvss" } ] }`; an empty
/// document yields an empty list.
std::vector<Advisory> load_advisories(std::string_view document);
std::vector<Advisory> load_advisories_file(const std::string& path);

/// Reads a whole file; throws LoadError if it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace optidep
