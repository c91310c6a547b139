#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "optidep/audit.hpp"
#include "optidep/errors.hpp"
#include "optidep/objectives.hpp"
#include "optidep/solver.hpp"

using namespace optidep;
using testing::graph_of;

namespace {
const Advisory kMs{"GHSA-ms", "ms", Constraint::parse("<2.1.2"), Rational(15, 2)};

AuditReport report_with_total(const char* total) {
  AuditReport r;
  r.total = Rational::parse(total);
  return r;
}
}  // namespace

TEST_CASE("affected") {
  CHECK(affected(kMs, "ms", Version::parse("1.0.0")));
  CHECK_FALSE(affected(kMs, "ms", Version::parse("2.1.2")));
  CHECK_FALSE(affected(kMs, "debug", Version::parse("1.0.0")));
}

TEST_CASE("audit report") {
  std::vector<Advisory> adv{kMs};
  auto vulnerable = graph_of({{"root", {"ms@1.0.0"}}, {"ms@1.0.0", {}}});
  AuditReport r = audit_report(vulnerable, adv);
  CHECK(r.total == Rational(15, 2));
  REQUIRE(r.nodes.size() == 1);
  CHECK(r.nodes[0].advisories == std::vector<std::string>{"GHSA-ms"});
  CHECK(r.nodes[0].subtotal == Rational(15, 2));

  auto clean = graph_of({{"root", {"ms@2.1.2"}}, {"ms@2.1.2", {}}});
  CHECK(audit_report(clean, adv).total == Rational(0));

  auto dups = graph_of({{"root", {"ms@1.0.0", "ms@2.1.0"}}, {"ms@1.0.0", {}}, {"ms@2.1.0", {}}});
  AuditReport d = audit_report(dups, adv);
  CHECK(d.total == Rational(15));
  CHECK(d.nodes.size() == 2);
}

TEST_CASE("report total matches cost_cve and ignores advisory order") {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 100; ++i) {
    auto inst = testing::random_instance(rng);
    for (int k = 0; k < 4; ++k) {
      Advisory a;
      a.id = "X-" + std::to_string(k);
      a.package = std::string(1, static_cast<char>('a' + rng() % 5));
      a.affected = Constraint::parse(rng() % 2 ? "*" : ">=1.0.0");
      a.cvss = Rational(static_cast<std::int64_t>(rng() % 101), 10);
      inst.advisories.push_back(a);
    }
    auto res = solve(inst.registry, inst.root, SolverSpec{});
    if (!res.graph) continue;
    AuditReport r = audit_report(*res.graph, inst.advisories);
    CHECK(r.total == cost_cve(*res.graph, inst.advisories));
    auto shuffled = inst.advisories;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(audit_report(*res.graph, shuffled).to_json() == r.to_json());
  }
}

TEST_CASE("compare reports") {
  CHECK(compare_reports(report_with_total("59.4"), report_with_total("0")).total == Rational::parse("-59.4"));
  CHECK(compare_reports(report_with_total("3"), report_with_total("3")).total == Rational(0));
  CHECK(compare_reports(report_with_total("0"), report_with_total("7.5")).total == Rational(15, 2));

  std::vector<Advisory> adv{kMs, {"GHSA-new", "ms", Constraint::parse(">=2.1.2"), Rational(1)}};
  AuditReport before = audit_report(graph_of({{"root", {"ms@1.0.0"}}, {"ms@1.0.0", {}}}), adv);
  AuditReport after = audit_report(graph_of({{"root", {"ms@2.1.2"}}, {"ms@2.1.2", {}}}), adv);
  AuditDelta d = compare_reports(before, after);
  CHECK(d.total == Rational::parse("-6.5"));
  CHECK(d.added == std::set<std::string>{"GHSA-new"});
  CHECK(d.removed == std::set<std::string>{"GHSA-ms"});
}

TEST_CASE("report json") {
  std::vector<Advisory> adv{kMs};
  AuditReport r = audit_report(graph_of({{"root", {"ms@1.0.0", "debug@4.3.4"}}, {"ms@1.0.0", {}}, {"debug@4.3.4", {}}}), adv);
  const std::string expected = R"({
  "nodes": [
    {
      "advisories": [],
      "package": "debug",
      "subtotal": "0",
      "version": "4.3.4"
    },
    {
      "advisories": [
        "GHSA-ms"
      ],
      "package": "ms",
      "subtotal": "7.5",
      "version": "1.0.0"
    }
  ],
  "total": "7.5"
}
)";
  CHECK(r.to_json() == expected);
  AuditReport back = AuditReport::from_json(expected);
  CHECK(back.total == r.total);
  CHECK(back.to_json() == expected);
  CHECK_THROWS_AS(AuditReport::from_json(R"({"total": "x", "nodes": []})"), LoadError);
  CHECK_THROWS_AS(AuditReport::from_json(R"({"nodes": []})"), LoadError);
}
