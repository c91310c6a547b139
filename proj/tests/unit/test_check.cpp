#include <doctest.h>

#include "fixtures.hpp"
#include "optidep/check.hpp"

using namespace optidep;
using testing::graph_of;

namespace {

std::vector<int> conditions(const std::vector<Violation>& vs) {
  std::vector<int> out;
  for (const auto& v : vs) out.push_back(v.condition);
  return out;
}

SolverSpec spec_of(Consistency c, bool cycles = true) {
  SolverSpec s;
  s.consistency = c;
  s.allow_cycles = cycles;
  return s;
}

}  // namespace

TEST_CASE("valid debug/ms solution") {
  auto inst = testing::debug_ms();
  auto g = graph_of({{"root", {"debug@4.3.4", "ms@2.1.2"}}, {"debug@4.3.4", {"ms@2.1.2"}}, {"ms@2.1.2", {}}});
  for (Consistency c : {Consistency::npm, Consistency::no_dups, Consistency::cargo})
    CHECK(check_graph(inst.registry, inst.root, spec_of(c, false), g).empty());
}

TEST_CASE("each condition is reported") {
  auto inst = testing::debug_ms();
  const auto& r = inst.registry;
  const auto npm = spec_of(Consistency::npm);

  SUBCASE("root missing") {
    auto g = graph_of({{"debug@4.3.4", {"ms@2.1.2"}}, {"ms@2.1.2", {}}});
    auto vs = check_graph(r, inst.root, npm, g);
    REQUIRE_FALSE(vs.empty());
    CHECK(vs.front().condition == 1);
  }
  SUBCASE("unreachable node") {
    auto g = graph_of({{"root", {"debug@4.3.4", "ms@2.1.2"}}, {"debug@4.3.4", {"ms@2.1.2"}},
                       {"ms@2.1.2", {}}, {"ms@1.0.0", {}}});
    CHECK(conditions(check_graph(r, inst.root, npm, g)) == std::vector<int>{2});
  }
  SUBCASE("arity mismatch") {
    auto g = graph_of({{"root", {"debug@4.3.4", "ms@2.1.2"}}, {"debug@4.3.4", {}}, {"ms@2.1.2", {}}});
    CHECK(conditions(check_graph(r, inst.root, npm, g)) == std::vector<int>{3});
  }
  SUBCASE("dangling edge") {
    auto g = graph_of({{"root", {"debug@4.3.4", "ms@2.1.2"}}, {"debug@4.3.4", {"ms@9.9.9"}}, {"ms@2.1.2", {}}});
    CHECK(conditions(check_graph(r, inst.root, npm, g)) == std::vector<int>{3});
  }
  SUBCASE("node absent from the registry") {
    auto g = graph_of({{"root", {"debug@4.3.4", "ms@2.1.2"}}, {"debug@4.3.4", {"ms@2.1.2"}},
                       {"ms@2.1.2", {}}, {"ms@7.0.0", {}}});
    auto cs = conditions(check_graph(r, inst.root, npm, g));
    CHECK(cs == std::vector<int>{2, 3});
  }
  SUBCASE("edge to the wrong package") {
    auto g = graph_of({{"root", {"debug@4.3.4", "debug@4.3.4"}}, {"debug@4.3.4", {"ms@2.1.2"}}, {"ms@2.1.2", {}}});
    CHECK(conditions(check_graph(r, inst.root, npm, g)) == std::vector<int>{4});
  }
  SUBCASE("constraint not satisfied") {
    auto g = graph_of({{"root", {"debug@4.3.4", "ms@1.0.0"}}, {"debug@4.3.4", {"ms@1.0.0"}}, {"ms@1.0.0", {}}});
    auto vs = check_graph(r, inst.root, npm, g);
    CHECK(conditions(vs) == std::vector<int>{4});
    CHECK(vs.front().message.find("^2.1.0") != std::string::npos);
  }
  SUBCASE("duplicate under no-dups") {
    auto g = graph_of({{"root", {"debug@4.3.4", "ms@1.0.0"}}, {"debug@4.3.4", {"ms@2.1.2"}},
                       {"ms@2.1.2", {}}, {"ms@1.0.0", {}}});
    CHECK(check_graph(r, inst.root, npm, g).empty());
    CHECK(conditions(check_graph(r, inst.root, spec_of(Consistency::no_dups), g)) == std::vector<int>{5});
    CHECK(check_graph(r, inst.root, spec_of(Consistency::cargo), g).empty());
  }
}

TEST_CASE("all violations are listed in condition order") {
  auto inst = testing::debug_ms();
  auto g = graph_of({{"root", {"debug@4.3.4", "ms@1.0.0"}}, {"debug@4.3.4", {"ms@1.0.0", "ms@2.1.2"}},
                     {"ms@1.0.0", {}}, {"ms@2.1.0", {}}, {"ms@2.1.2", {}}});
  auto cs = conditions(check_graph(inst.registry, inst.root, spec_of(Consistency::no_dups), g));
  CHECK(cs == std::vector<int>{2, 3, 4, 5, 5, 5});
}

TEST_CASE("cycles") {
  auto inst = testing::mutual_cycle();
  auto g = graph_of({{"root", {"a@1.0.0"}}, {"a@1.0.0", {"b@1.0.0"}}, {"b@1.0.0", {"a@1.0.0"}}});
  CHECK_FALSE(is_acyclic(g));
  CHECK(check_graph(inst.registry, inst.root, spec_of(Consistency::npm, true), g).empty());
  CHECK(conditions(check_graph(inst.registry, inst.root, spec_of(Consistency::npm, false), g)) ==
        std::vector<int>{6});
  CHECK(is_acyclic(graph_of({{"root", {"a@1.0.0"}}, {"a@1.0.0", {}}})));
}
