#include "optidep/consistency.hpp"

namespace optidep {

bool cargo_consistent(const Version& a, const Version& b) {
  if (a.major() == 0 && b.major() == 0) {
    if (a.minor() == 0 && b.minor() == 0) return true;
    if (a.minor() == b.minor()) return a.patch() == b.patch();
    return true;
  }
  if (a.major() == b.major()) return a.minor() == b.minor() && a.patch() == b.patch();
  return true;
}

bool consistent(Consistency rule, const Version& a, const Version& b) {
  switch (rule) {
    case Consistency::npm: return npm_consistent(a, b);
    case Consistency::no_dups: return nodups_consistent(a, b);
    case Consistency::cargo: return cargo_consistent(a, b);
  }
  return false;
}

}  // namespace optidep
