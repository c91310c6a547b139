#include <doctest.h>

#include <optional>
#include <random>

#include "caret_table.hpp"
#include "corpus.hpp"
#include "optidep/constraint.hpp"
#include "optidep/errors.hpp"

using optidep::Constraint;
using optidep::ParseError;
using optidep::Version;
using optidep::sat;

namespace {
Version V(const char* s) { return Version::parse(s); }
Constraint C(const char* s) { return Constraint::parse(s); }
bool S(const char* c, const char* v) { return sat(C(c), V(v)); }
}  // namespace

TEST_CASE("parse builds the expected trees") {
  CHECK(C(">1.2.3-alpha.3 <1.5.2-alpha.8") ==
        Constraint::conjunction(Constraint::at_least(V("1.2.3-alpha.3"), false),
                                Constraint::at_most(V("1.5.2-alpha.8"), false)));
  CHECK(C("*") == Constraint::any());
  CHECK(C("") == Constraint::any());
  CHECK(C("   ") == Constraint::any());
  CHECK(C("1.2.x") == Constraint::conjunction(Constraint::at_least(V("1.2.0"), true),
                                              Constraint::at_most(V("1.3.0"), false)));
  CHECK(C("1.x") == Constraint::conjunction(Constraint::at_least(V("1.0.0"), true),
                                            Constraint::at_most(V("2.0.0"), false)));
  CHECK(C("1.2.3") == Constraint::exact(V("1.2.3")));
  CHECK(C("=1.2.3") == Constraint::exact(V("1.2.3")));
  CHECK(C("^1.2.3") == Constraint::caret(V("1.2.3")));
  CHECK(C("~1.2.3") == Constraint::tilde(V("1.2.3")));
  CHECK(C(">= 1.0.0") == Constraint::at_least(V("1.0.0"), true));
  CHECK(C("1.0.0 - 2.0.0") == Constraint::conjunction(Constraint::at_least(V("1.0.0"), true),
                                                      Constraint::at_most(V("2.0.0"), true)));
  CHECK(C("~>1.2.3") == Constraint::tilde(V("1.2.3")));
  CHECK(C("1.2.3 ||") == Constraint::disjunction(Constraint::exact(V("1.2.3")), Constraint::any()));
  CHECK(C("1.0.0 || 2.0.0") ==
        Constraint::disjunction(Constraint::exact(V("1.0.0")), Constraint::exact(V("2.0.0"))));
}

TEST_CASE("malformed ranges are parse errors") {
  for (std::string bad : {">", "^", "1.2.3 -", "- 1.2.3", "1.2.3 - 2 - 3", "v1.2.3", "1.2.3.4",
                          ">=a", "1.x.3", "~<1.2.3", "1.2.3-", "1.2.3 ^"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Constraint::parse(bad), ParseError);
  }
}

TEST_CASE("prerelease gating examples") {
  const char* r = ">1.2.3-alpha.3 <1.5.2-alpha.8";
  CHECK(S(r, "1.3.4"));
  CHECK_FALSE(S(r, "1.3.4-alpha.7"));
  CHECK(S(r, "1.2.3-alpha.7"));
  CHECK_FALSE(S(r, "1.2.3-alpha.2"));
  CHECK(S(r, "1.5.2-alpha.7"));
  CHECK_FALSE(S(r, "1.5.2"));
}

TEST_CASE("satisfaction examples") {
  CHECK_FALSE(S("^0.0.3", "0.0.4"));
  CHECK(S("^1.2.3", "1.3.0"));
  CHECK(S("*", "0.0.1-rc.1"));
  CHECK(S("~1.2.3", "1.2.9"));
  CHECK_FALSE(S("~1.2.3", "1.3.0"));
  CHECK(S("~1", "1.9.0"));
  CHECK(S("^0", "0.9.9"));
  CHECK_FALSE(S("^0", "1.0.0"));
  CHECK(S("^0.0", "0.0.7"));
  CHECK_FALSE(S("^0.0", "0.1.0"));
  CHECK(S("1.2.3 - 2.3", "2.3.9"));
  CHECK_FALSE(S("1.2.3 - 2.3", "2.4.0"));
  CHECK(S("<=1.2", "1.2.9"));
  CHECK_FALSE(S(">1.2", "1.2.9"));
  CHECK(S(">1.2", "1.3.0"));
  CHECK_FALSE(S("<*", "0.0.0"));
  CHECK(S("1.0.0 || ^2.0.0", "2.5.0"));
  CHECK(S("1.0.0+build", "1.0.0"));
}

TEST_CASE("caret table") {
  for (const auto& row : optidep::testing::caret_table) {
    CAPTURE(row.range);
    CAPTURE(row.version);
    CAPTURE(row.clause);
    CHECK(sat(Constraint::parse(row.range), Version::parse(row.version)) == row.expected);
  }
}

TEST_CASE("exact matches only its version") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Version v(rng() % 3, rng() % 3, rng() % 3);
    Version w(rng() % 3, rng() % 3, rng() % 3);
    CHECK(sat(Constraint::exact(v), v));
    CHECK(sat(Constraint::exact(v), w) == (v == w));
  }
  CHECK(sat(Constraint::exact(V("1.0.0-rc.1")), V("1.0.0-rc.1")));
  CHECK_FALSE(sat(Constraint::exact(V("1.0.0-rc.1")), V("1.0.0")));
}

namespace {

Constraint random_leaf(std::mt19937_64& rng, bool allow_pre) {
  Version v(rng() % 3, rng() % 3, rng() % 3);
  if (allow_pre && rng() % 4 == 0) v = Version(v.major(), v.minor(), v.patch(), {std::string("rc"), std::uint64_t{rng() % 3}});
  switch (rng() % 8) {
    case 0: return Constraint::exact(v);
    case 1: return Constraint::any();
    case 2: return Constraint::at_most(v, rng() % 2 == 0);
    case 3: return Constraint::at_least(v, rng() % 2 == 0);
    case 4: return Constraint::caret(v);
    case 5: return Constraint::tilde(v);
    case 6: return Constraint::at_least(v, true);
    default: return Constraint::at_most(v, false);
  }
}

// Disjunction of conjunctions, both folded to the left.
Constraint random_normal(std::mt19937_64& rng, bool allow_pre) {
  std::optional<Constraint> out;
  int branches = 1 + static_cast<int>(rng() % 3);
  for (int b = 0; b < branches; ++b) {
    Constraint conj = random_leaf(rng, allow_pre);
    int extra = static_cast<int>(rng() % 3);
    for (int k = 0; k < extra; ++k) conj = Constraint::conjunction(conj, random_leaf(rng, allow_pre));
    out = out ? Constraint::disjunction(*out, conj) : conj;
  }
  return *out;
}

}  // namespace

TEST_CASE("printer and parser round-trip") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 2000; ++i) {
    Constraint c = random_normal(rng, true);
    CAPTURE(c.str());
    CHECK(Constraint::parse(c.str()) == c);
  }
}

TEST_CASE("connectives are structural on release versions") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 2000; ++i) {
    Constraint a = random_normal(rng, true);
    Constraint b = random_normal(rng, true);
    Version v(rng() % 3, rng() % 3, rng() % 3);
    CHECK(sat(Constraint::conjunction(a, b), v) == (sat(a, v) && sat(b, v)));
    CHECK(sat(Constraint::disjunction(a, b), v) == (sat(a, v) || sat(b, v)));
  }
}

TEST_CASE("prerelease corpus agrees with the frozen reference verdicts") {
  auto rows = optidep::testing::read_corpus(OPTIDEP_TEST_DATA "/semver_prerelease.tsv");
  REQUIRE(rows.size() >= 3000);
  std::size_t mismatches = 0;
  for (const auto& row : rows) {
    if (sat(Constraint::parse(row.range), Version::parse(row.version)) != row.expected) {
      ++mismatches;
      MESSAGE(row.range << " / " << row.version);
    }
  }
  CHECK(mismatches == 0);
}
