#include "optidep/registry.hpp"

#include <deque>
#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "optidep/errors.hpp"

namespace optidep {
namespace {

using detail::json;
using detail::path_join;

Version version_at(const std::string& text, const std::string& path) {
  try {
    return Version::parse(text);
  } catch (const ParseError& e) {
    throw LoadError(path, e.what());
  }
}

Constraint constraint_at(const std::string& text, const std::string& path) {
  try {
    return Constraint::parse(text);
  } catch (const ParseError& e) {
    throw LoadError(path, e.what());
  }
}

std::vector<Dependency> dependency_list(const json& arr, const std::string& path) {
  if (!arr.is_array()) throw LoadError(path, "expected an array of [name, range] pairs");
  std::vector<Dependency> deps;
  deps.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string item = path_join(path, i);
    const json& pair = arr[i];
    if (!pair.is_array() || pair.size() != 2) throw LoadError(item, "expected [name, range]");
    const std::string& name = detail::require_string(pair[0], path_join(item, 0));
    if (name.empty()) throw LoadError(path_join(item, 0), "empty package name");
    std::string range_path = path_join(item, 1);
    deps.push_back({name, constraint_at(detail::require_string(pair[1], range_path), range_path)});
  }
  return deps;
}

json dependency_json(const std::vector<Dependency>& deps) {
  json arr = json::array();
  for (const auto& d : deps) arr.push_back(json::array({d.package, d.constraint.str()}));
  return arr;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Registry Registry::load(std::string_view document) {
  json doc = detail::parse_document(document);
  if (!doc.is_object()) throw LoadError("", "expected an object");
  Registry r;
  const json& packages = detail::require(doc, "packages", "");
  if (!packages.is_object()) throw LoadError("/packages", "expected an object");
  for (const auto& [name, versions] : packages.items()) {
    std::string ppath = path_join("/packages", name);
    if (name.empty()) throw LoadError(ppath, "empty package name");
    if (!versions.is_object() || versions.empty())
      throw LoadError(ppath, "expected a non-empty object of versions");
    for (const auto& [vtext, entry] : versions.items()) {
      std::string vpath = path_join(ppath, vtext);
      Version v = version_at(vtext, vpath);
      std::vector<Dependency> deps;
      if (!entry.is_object()) throw LoadError(vpath, "expected an object");
      if (auto it = entry.find("dependencies"); it != entry.end())
        deps = dependency_list(*it, path_join(vpath, "dependencies"));
      r.add(name, std::move(v), std::move(deps));
    }
  }
  return r;
}

Registry Registry::load_file(const std::string& path) { return load(read_text_file(path)); }

void Registry::add(const std::string& package, Version version, std::vector<Dependency> deps) {
  auto& versions = packages_[package];
  std::string vtext = version.str();
  if (!versions.emplace(std::move(version), std::move(deps)).second)
    throw LoadError(path_join(path_join("/packages", package), vtext),
                    "duplicate version " + vtext + " of " + package);
}

bool Registry::contains(std::string_view package) const { return packages_.contains(package); }

bool Registry::contains(std::string_view package, const Version& version) const {
  const VersionMap* vs = versions(package);
  return vs != nullptr && vs->contains(version);
}

const Registry::VersionMap* Registry::versions(std::string_view package) const {
  auto it = packages_.find(package);
  return it == packages_.end() ? nullptr : &it->second;
}

const std::vector<Dependency>& Registry::dependencies(std::string_view package,
                                                      const Version& version) const {
  const VersionMap* vs = versions(package);
  if (vs != nullptr)
    if (auto it = vs->find(version); it != vs->end()) return it->second;
  throw NotFound("unknown node " + std::string(package) + "@" + version.str());
}

std::vector<Version> Registry::sorted_versions(std::string_view package) const {
  const VersionMap* vs = versions(package);
  if (vs == nullptr) throw NotFound("unknown package " + std::string(package));
  std::vector<Version> out;
  out.reserve(vs->size());
  for (const auto& [v, deps] : *vs) out.push_back(v);
  return out;
}

std::size_t Registry::node_count() const {
  std::size_t n = 0;
  for (const auto& [name, vs] : packages_) n += vs.size();
  return n;
}

std::string Registry::dump() const {
  json packages = json::object();
  for (const auto& [name, vs] : packages_) {
    json versions = json::object();
    for (const auto& [v, deps] : vs) versions[v.str()] = {{"dependencies", dependency_json(deps)}};
    packages[name] = std::move(versions);
  }
  json doc = {{"packages", std::move(packages)}};
  return doc.dump(2) + "\n";
}

RootManifest RootManifest::load(std::string_view document) {
  json doc = detail::parse_document(document);
  if (!doc.is_object()) throw LoadError("", "expected an object");
  RootManifest m;
  m.name = detail::require_string(detail::require(doc, "name", ""), "/name");
  if (auto it = doc.find("dependencies"); it != doc.end())
    m.dependencies = dependency_list(*it, "/dependencies");
  return m;
}

RootManifest RootManifest::load_file(const std::string& path) { return load(read_text_file(path)); }

std::string RootManifest::dump() const {
  json doc = {{"name", name}, {"dependencies", dependency_json(dependencies)}};
  return doc.dump(2) + "\n";
}

Reachability reachable_packages(const Registry& registry, const RootManifest& root) {
  Reachability out;
  std::deque<std::string> work;
  auto visit = [&](const std::string& name) {
    if (out.packages.insert(name).second) work.push_back(name);
  };
  for (const auto& d : root.dependencies) visit(d.package);
  while (!work.empty()) {
    std::string name = std::move(work.front());
    work.pop_front();
    const Registry::VersionMap* vs = registry.versions(name);
    if (vs == nullptr) {
      out.missing.insert(name);
      continue;
    }
    for (const auto& [v, deps] : *vs)
      for (const auto& d : deps) visit(d.package);
  }
  return out;
}

std::vector<Advisory> load_advisories(std::string_view document) {
  if (document.find_first_not_of(" \t\r\n") == std::string_view::npos) return {};
  json doc = detail::parse_document(document);
  if (!doc.is_object()) throw LoadError("", "expected an object");
  std::vector<Advisory> out;
  auto it = doc.find("advisories");
  if (it == doc.end()) return out;
  if (!it->is_array()) throw LoadError("/advisories", "expected an array");
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& a = (*it)[i];
    std::string apath = path_join("/advisories", i);
    Advisory adv;
    adv.id = detail::require_string(detail::require(a, "id", apath), path_join(apath, "id"));
    adv.package =
        detail::require_string(detail::require(a, "package", apath), path_join(apath, "package"));
    std::string rpath = path_join(apath, "affected");
    adv.affected = constraint_at(detail::require_string(detail::require(a, "affected", apath), rpath), rpath);
    const json& score = detail::require(a, "cvss", apath);
    std::string spath = path_join(apath, "cvss");
    if (!score.is_number()) throw LoadError(spath, "expected a number");
    adv.cvss = score.is_number_integer() ? Rational(score.get<std::int64_t>())
                                         : Rational::from_double(score.get<double>());
    if (adv.cvss < Rational(0) || adv.cvss > Rational(10))
      throw LoadError(spath, "cvss " + adv.cvss.str() + " outside [0, 10]");
    out.push_back(std::move(adv));
  }
  return out;
}

std::vector<Advisory> load_advisories_file(const std::string& path) {
  return load_advisories(read_text_file(path));
}

}  // namespace optidep
