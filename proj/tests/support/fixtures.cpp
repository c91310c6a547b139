#include "fixtures.hpp"

#include <algorithm>

namespace optidep::testing {
namespace {

Dependency dep(const std::string& name, const std::string& range) {
  return {name, Constraint::parse(range)};
}

}  // namespace

Instance debug_ms(const std::string& root_ms) {
  Instance i;
  i.registry.add("debug", Version::parse("4.3.4"), {dep("ms", "^2.1.0")});
  for (const char* v : {"1.0.0", "2.1.0", "2.1.2"}) i.registry.add("ms", Version::parse(v), {});
  i.root = {"app", {dep("debug", "^4.3.4"), dep("ms", root_ms)}};
  return i;
}

Instance terser_shape() {
  Instance i;
  i.registry.add("A", Version::parse("1.0.0"), {dep("C", "0.7.x")});
  i.registry.add("B", Version::parse("1.0.0"), {dep("C", "0.6.x")});
  i.registry.add("C", Version::parse("0.6.1"), {});
  i.registry.add("C", Version::parse("0.7.0"), {});
  i.root = {"app", {dep("A", "1.0.0"), dep("B", "1.0.0")}};
  return i;
}

Instance mutual_cycle() {
  Instance i;
  i.registry.add("a", Version::parse("1.0.0"), {dep("b", "*")});
  i.registry.add("b", Version::parse("1.0.0"), {dep("a", "*")});
  i.root = {"app", {dep("a", "*")}};
  return i;
}

Instance random_instance(std::mt19937_64& rng, const RandomShape& shape) {
  static const std::vector<std::string> pool = {"0.0.1", "0.0.2", "0.1.0", "0.1.3", "0.2.0",
                                                "1.0.0", "1.1.0", "1.2.5", "2.0.0", "2.1.0"};
  static const std::vector<std::string> names = {"a", "b", "c", "d", "e", "f", "g", "h"};
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };

  const int package_count = 2 + pick(std::max(1, shape.max_packages - 1));
  std::vector<std::vector<std::string>> versions(package_count);
  for (auto& vs : versions) {
    std::vector<std::string> shuffled = pool;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    int n = shape.max_versions <= 1 || pick(4) == 0 ? 1 + pick(shape.max_versions) : 2 + pick(shape.max_versions - 1);
    vs.assign(shuffled.begin(), shuffled.begin() + n);
  }

  auto some_version = [&](int p) {
    return pick(6) == 0 ? pool[static_cast<std::size_t>(pick(static_cast<int>(pool.size())))]
                        : versions[p][static_cast<std::size_t>(pick(static_cast<int>(versions[p].size())))];
  };
  auto range_for = [&](int p) -> std::string {
    std::string v = some_version(p);
    std::string w = some_version(p);
    if (Version::parse(w) < Version::parse(v)) std::swap(v, w);
    std::string major = w.substr(0, w.find('.'));
    switch (pick(12)) {
      case 0: return "*";
      case 1:
      case 2: return "^" + v;
      case 3: return "~" + w;
      case 4:
      case 5: return ">=" + v;
      case 6: return (v == w ? "<=" : "<") + w;
      case 7: return w;
      case 8: return major + ".x";
      case 9: return "^" + w + " || " + v;
      case 10: return v + " - " + w;
      default: return (v == w ? ">=" : ">") + v + " <=" + w;
    }
  };
  // Self-references are allowed but kept rare.
  auto target = [&](int self) -> std::pair<std::string, int> {
    if (pick(40) == 0) return {"zz", -1};  // not in the registry
    int p = pick(package_count);
    if (p == self && pick(3) != 0) p = (p + 1) % package_count;
    return {names[static_cast<std::size_t>(p)], p};
  };
  auto deps = [&](int max, int self) {
    std::vector<Dependency> out;
    int n = pick(max + 1);
    for (int k = 0; k < n; ++k) {
      auto [name, p] = target(self);
      out.push_back(dep(name, p < 0 ? "*" : range_for(p)));
    }
    return out;
  };

  Instance inst;
  for (int p = 0; p < package_count; ++p)
    for (const auto& v : versions[static_cast<std::size_t>(p)])
      inst.registry.add(names[static_cast<std::size_t>(p)], Version::parse(v), deps(shape.max_deps, p));
  inst.root.name = "root";
  // Root: usually one or two dependencies, occasionally none.
  if (pick(20) != 0) {
    int n = 1 + pick(shape.max_root_deps);
    for (int k = 0; k < n; ++k) {
      auto [name, p] = target(-1);
      inst.root.dependencies.push_back(dep(name, p < 0 ? "*" : range_for(p)));
    }
  }

  int advisories = pick(3);
  for (int k = 0; k < advisories; ++k) {
    int p = pick(package_count);
    Advisory a;
    a.id = "GHSA-" + std::to_string(k);
    a.package = names[static_cast<std::size_t>(p)];
    a.affected = Constraint::parse("<" + some_version(p));
    a.cvss = Rational(1 + pick(99), 10);
    inst.advisories.push_back(std::move(a));
  }
  return inst;
}

Instance caret_chain(int packages, int versions, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  auto name = [](int p) { return "pkg" + std::to_string(p); };
  Instance inst;
  for (int p = 0; p < packages; ++p) {
    for (int v = 1; v <= versions; ++v) {
      std::vector<Dependency> deps;
      if (p + 1 < packages) {
        // Newer majors tend to need newer majors downstream.
        int lo = std::max(1, v - pick(3));
        deps.push_back(dep(name(p + 1), "^" + std::to_string(lo) + ".0.0"));
      }
      if (p + 2 < packages && pick(3) == 0)
        deps.push_back(dep(name(p + 2), "^" + std::to_string(1 + pick(versions)) + ".0.0"));
      inst.registry.add(name(p), Version(static_cast<std::uint64_t>(v), 0, 0), std::move(deps));
    }
  }
  inst.root = {"root", {dep(name(0), "*")}};
  return inst;
}

NodeId node(const std::string& label) {
  if (label == "root") return NodeId::root();
  auto at = label.find('@');
  return NodeId(label.substr(0, at), Version::parse(label.substr(at + 1)));
}

SolutionGraph graph_of(const std::vector<std::pair<std::string, std::vector<std::string>>>& rows) {
  SolutionGraph g;
  for (const auto& [owner, targets] : rows) {
    auto& out = g.edges[node(owner)];
    for (const auto& t : targets) out.push_back(node(t));
  }
  return g;
}

}  // namespace optidep::testing
