#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "optidep/graph.hpp"
#include "optidep/registry.hpp"

namespace optidep::testing {

struct Instance {
  Registry registry;
  RootManifest root;
  std::vector<Advisory> advisories;
};

/// debug@4.3.4 -> ms ^2.1.0; ms {1.0.0, 2.1.0, 2.1.2}; root -> debug ^4.3.4, ms <root_ms>.
Instance debug_ms(const std::string& root_ms = "*");

/// root -> A, B; A@1.0.0 -> C 0.7.x; B@1.0.0 -> C 0.6.x; C {0.6.1, 0.7.0}.
Instance terser_shape();

/// a@1.0.0 -> b *, b@1.0.0 -> a *; root -> a *.
Instance mutual_cycle();

struct RandomShape {
  int max_packages = 5;
  int max_versions = 3;
  int max_deps = 2;
  int max_root_deps = 2;
};

/// Small random registry over packages a..e with versions from a fixed pool
/// (0.0.x, 0.y.z and 1.y.z/2.y.z so every consistency rule matters) and
/// constraints sampled from the range grammar. Occasionally references a
/// missing package or the depending package itself.
Instance random_instance(std::mt19937_64& rng, const RandomShape& shape = {});

/// `packages` packages with `versions` versions each (majors 1..versions);
/// package i depends on package i+1 (and sometimes i+2) with caret ranges.
Instance caret_chain(int packages, int versions, std::uint64_t seed);

/// "root" or "name@version".
NodeId node(const std::string& label);

/// Graph from {owner, [targets...]} rows written with `node` labels.
SolutionGraph graph_of(const std::vector<std::pair<std::string, std::vector<std::string>>>& rows);

}  // namespace optidep::testing
