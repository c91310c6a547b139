#pragma once

#include "optidep/graph.hpp"
#include "optidep/version.hpp"

namespace optidep {

/// NPM co-installs anything.
constexpr bool npm_consistent(const Version&, const Version&) noexcept { return true; }

/// At most one version per package (PIP-style).
inline bool nodups_consistent(const Version& a, const Version& b) { return a == b; }

/// Cargo co-installs two versions only when they are semver-incompatible:
/// 0.0.z pairs always; 0.y.* pairs iff identical patch; a shared nonzero
/// major iff identical (minor, patch); anything else (different minor under
/// 0, different major) always.
bool cargo_consistent(const Version& a, const Version& b);

bool consistent(Consistency rule, const Version& a, const Version& b);

}  // namespace optidep
