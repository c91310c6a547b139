#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "optidep/version.hpp"

namespace optidep {

/// Immutable version-range AST. X-ranges and hyphen ranges are desugared by
/// the parser into bounds and conjunctions; they have no node kind of their own.
class Constraint {
 public:
  enum class Kind { exact, any, at_most, at_least, caret, tilde, conjunction, disjunction };

  /// Defaults to Any.
  Constraint();

  static Constraint exact(Version v);
  static Constraint any();
  static Constraint at_most(Version v, bool inclusive);
  static Constraint at_least(Version v, bool inclusive);
  static Constraint caret(Version v);
  static Constraint tilde(Version v);
  static Constraint conjunction(Constraint lhs, Constraint rhs);
  static Constraint disjunction(Constraint lhs, Constraint rhs);

  /// Matches no version at all ("<0.0.0-0").
  static Constraint none();

  static Constraint parse(std::string_view text);

  Kind kind() const noexcept;
  /// Bound or base version; only meaningful for leaf kinds other than Any.
  const Version& version() const noexcept;
  bool inclusive() const noexcept;
  const Constraint& lhs() const noexcept;
  const Constraint& rhs() const noexcept;

  bool is_leaf() const noexcept {
    return kind() != Kind::conjunction && kind() != Kind::disjunction;
  }

  /// NPM range text. Nested disjunctions are distributed into top-level "||".
  std::string str() const;

  friend bool operator==(const Constraint& a, const Constraint& b);
  friend std::ostream& operator<<(std::ostream& os, const Constraint& c) { return os << c.str(); }

 private:
  struct Node;
  struct Null {};
  explicit Constraint(Null) {}
  explicit Constraint(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Constraint leaf(Kind kind, Version v, bool inclusive);
  std::shared_ptr<const Node> node_;
};

/// Whether `v` satisfies `c`. Release versions follow the structural
/// semantics (caret and tilde per NPM). A prerelease version additionally needs
/// some sub-term of `c` that is Any, or a bound with the same major.minor.patch
/// that itself carries a prerelease.
bool sat(const Constraint& c, const Version& v);

/// sat() without the prerelease gate.
bool sat_ignoring_prerelease_gate(const Constraint& c, const Version& v);

}  // namespace optidep
