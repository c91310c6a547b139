#include "optidep/lockfile.hpp"

#include "json_util.hpp"
#include "optidep/errors.hpp"

namespace optidep {
namespace {

using detail::json;
using detail::path_join;

json deps_json(const std::vector<NodeId>& targets) {
  json arr = json::array();
  for (const auto& t : targets) {
    if (t.is_root())
      arr.push_back(json::array({"root", nullptr}));
    else
      arr.push_back(json::array({t.package(), t.version().str()}));
  }
  return arr;
}

Version version_at(const std::string& text, const std::string& path) {
  try {
    return Version::parse(text);
  } catch (const ParseError& e) {
    throw LoadError(path, e.what());
  }
}

std::vector<NodeId> read_deps(const json& owner, const std::string& path) {
  const json& arr = detail::require(owner, "deps", path);
  std::string dpath = path + "/deps";
  if (!arr.is_array()) throw LoadError(dpath, "expected an array");
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string item = path_join(dpath, i);
    const json& pair = arr[i];
    if (!pair.is_array() || pair.size() != 2) throw LoadError(item, "expected [name, version]");
    const std::string& name = detail::require_string(pair[0], path_join(item, 0));
    out.emplace_back(name, version_at(detail::require_string(pair[1], path_join(item, 1)), path_join(item, 1)));
  }
  return out;
}

}  // namespace

std::string write_lockfile(const SolutionGraph& g) {
  json doc = json::object();
  json nodes = json::array();
  for (const auto& [n, targets] : g.edges) {
    if (n.is_root())
      doc["root"] = {{"deps", deps_json(targets)}};
    else
      nodes.push_back({{"package", n.package()}, {"version", n.version().str()}, {"deps", deps_json(targets)}});
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

SolutionGraph read_lockfile(std::string_view document) {
  json doc = detail::parse_document(document);
  if (!doc.is_object()) throw LoadError("", "expected an object");
  SolutionGraph g;
  if (auto it = doc.find("root"); it != doc.end()) g.edges.emplace(NodeId::root(), read_deps(*it, "/root"));
  const json& nodes = detail::require(doc, "nodes", "");
  if (!nodes.is_array()) throw LoadError("/nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string path = path_join("/nodes", i);
    const json& n = nodes[i];
    const std::string& name = detail::require_string(detail::require(n, "package", path), path + "/package");
    NodeId id(name, version_at(detail::require_string(detail::require(n, "version", path), path + "/version"),
                               path + "/version"));
    std::string label = id.str();
    if (!g.edges.emplace(std::move(id), read_deps(n, path)).second)
      throw LoadError(path, "duplicate node " + label);
  }
  return g;
}

}  // namespace optidep
