#include "optidep/solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "engine.hpp"
#include "optidep/consistency.hpp"
#include "optidep/objectives.hpp"

namespace optidep {
namespace {

using engine::Assignment;
using engine::Clock;
using engine::kUnresolved;
using engine::Query;

LexResult timed_out_with(const Sketch& sketch, const std::optional<Assignment>& best,
                         std::uint64_t nodes) {
  LexResult out;
  out.status = SolveStatus::timeout;
  if (best) out.graph = engine::to_graph(sketch, *best);
  out.search_nodes = nodes;
  return out;
}

bool feasible(const Sketch& sketch, const Registry& r, SolverSpec spec,
              Clock::time_point deadline, bool& timed_out) {
  spec.objectives = {Objective::min_num_deps};
  engine::Problem p = engine::compile(sketch, r, {}, spec);
  Query q;
  q.optimize = false;
  q.first_only = true;
  engine::Outcome o = engine::run(p, q, deadline);
  timed_out = o.timed_out;
  return o.best.has_value();
}

std::vector<Violation> explain_missing(const Sketch& sketch, const Registry& r,
                                       const SolverSpec& spec) {
  SolverSpec relaxed = spec;
  relaxed.consistency = Consistency::npm;
  relaxed.allow_cycles = true;
  relaxed.objectives = {Objective::min_num_deps};
  engine::Problem p = engine::compile(sketch, r, {}, relaxed);
  std::vector<Violation> out;
  const SketchNode& root = sketch.nodes[0];
  for (std::size_t s = 0; s < root.slots.size(); ++s) {
    const SketchSlot& slot = root.slots[s];
    const auto& ts = p.targets[0][s];
    if (std::any_of(ts.begin(), ts.end(), [&](engine::NodeIx t) { return !p.dead[t]; })) continue;
    std::string why;
    if (slot.candidates.empty())
      why = "package " + slot.package + " is not in the registry";
    else if (ts.empty())
      why = "no version of " + slot.package + " satisfies " + slot.constraint.str();
    else
      why = "every version of " + slot.package + " matching " + slot.constraint.str() +
            " has an unsatisfiable dependency";
    out.push_back({4, "root dependency " + slot.package + " " + slot.constraint.str() + ": " + why});
  }
  if (out.empty()) out.push_back({4, "dependencies cannot be satisfied"});
  return out;
}

std::vector<Violation> explain_unsat(const Sketch& sketch, const Registry& r,
                                     const SolverSpec& spec, Clock::time_point deadline) {
  bool timed_out = false;
  SolverSpec relaxed = spec;
  relaxed.consistency = Consistency::npm;
  relaxed.allow_cycles = true;
  if (!feasible(sketch, r, relaxed, deadline, timed_out))
    return timed_out ? std::vector<Violation>{} : explain_missing(sketch, r, spec);

  if (!spec.allow_cycles) {
    relaxed.allow_cycles = false;
    if (!feasible(sketch, r, relaxed, deadline, timed_out)) {
      if (timed_out) return {};
      return {{6, "every graph satisfying the dependencies contains a cycle"}};
    }
  }

  // Consistency is the blocker: name packages whose versions clash in a
  // duplicate-minimal NPM-style solution.
  relaxed.allow_cycles = spec.allow_cycles;
  relaxed.objectives = {Objective::min_duplicates};
  engine::Problem p = engine::compile(sketch, r, {}, relaxed);
  engine::Outcome o = engine::run(p, Query{}, deadline);
  std::vector<Violation> out;
  if (o.best) {
    SolutionGraph g = engine::to_graph(sketch, *o.best);
    for (auto a = g.edges.begin(); a != g.edges.end(); ++a) {
      if (a->first.is_root()) continue;
      for (auto b = std::next(a); b != g.edges.end() && b->first.package() == a->first.package(); ++b)
        if (!consistent(spec.consistency, a->first.version(), b->first.version()))
          out.push_back({5, "package " + a->first.package() + " needs both " +
                                a->first.version().str() + " and " + b->first.version().str() +
                                ", which are not consistent under " +
                                std::string(to_string(spec.consistency))});
    }
  }
  if (out.empty())
    out.push_back({5, "no combination of versions is consistent under " +
                          std::string(to_string(spec.consistency))});
  return out;
}

}  // namespace

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::unsat: return "unsat";
    case SolveStatus::timeout: return "timeout";
  }
  return "?";
}

LexResult lexicographic_minimize(const Sketch& sketch, const Registry& r,
                                 std::span<const Advisory> advisories, const SolverSpec& spec,
                                 Clock::time_point deadline) {
  spec.validate();
  const engine::Problem p = engine::compile(sketch, r, advisories, spec);
  const std::size_t n = p.node_count;

  // Optimal score.
  engine::Outcome first = engine::run(p, Query{}, deadline);
  std::uint64_t nodes = first.expansions;
  if (first.timed_out) return timed_out_with(sketch, first.best, nodes);
  if (!first.best) {
    LexResult out;
    out.search_nodes = nodes;
    return out;
  }
  const engine::Score optimum = first.best_score;
  Assignment witness = std::move(*first.best);

  auto query_at_optimum = [&](std::vector<signed char> forced,
                              std::vector<std::vector<std::int32_t>> fixed,
                              bool& timed_out) -> std::optional<Assignment> {
    Query q;
    q.bound = optimum;
    q.optimize = false;
    q.first_only = true;
    q.forced = std::move(forced);
    q.fixed = std::move(fixed);
    engine::Outcome o = engine::run(p, q, deadline);
    nodes += o.expansions;
    timed_out = o.timed_out;
    return std::move(o.best);
  };

  // Lexicographically smallest node set: decide nodes in canonical order,
  // stopping as soon as the decided-in set alone is a valid optimum.
  std::vector<signed char> forced(n, 0);
  forced[0] = 1;
  bool timed_out = false;
  for (std::size_t i = 1; i < n; ++i) {
    bool witness_is_prefix = true;
    for (std::size_t j = i; j < n && witness_is_prefix; ++j) witness_is_prefix = !witness.included[j];
    if (witness_is_prefix) break;

    std::vector<signed char> exact = forced;
    std::replace(exact.begin(), exact.end(), static_cast<signed char>(0), static_cast<signed char>(-1));
    if (auto w = query_at_optimum(exact, {}, timed_out)) {
      witness = std::move(*w);
      break;
    }
    if (timed_out) return timed_out_with(sketch, witness, nodes);

    if (p.dead[i]) {
      forced[i] = -1;
      continue;
    }
    if (witness.included[i]) {
      forced[i] = 1;
      continue;
    }
    std::vector<signed char> with_i = forced;
    with_i[i] = 1;
    if (auto w = query_at_optimum(with_i, {}, timed_out)) {
      witness = std::move(*w);
      forced[i] = 1;
    } else {
      if (timed_out) return timed_out_with(sketch, witness, nodes);
      forced[i] = -1;
    }
  }
  for (std::size_t i = 0; i < n; ++i) forced[i] = witness.included[i] ? 1 : -1;

  // Lexicographically smallest edges for that node set.
  std::vector<std::vector<std::int32_t>> fixed(n);
  for (std::size_t i = 0; i < n; ++i) fixed[i].assign(p.targets[i].size(), kUnresolved);
  for (std::size_t i = 0; i < n; ++i) {
    if (!witness.included[i]) continue;
    for (std::size_t s = 0; s < p.targets[i].size(); ++s) {
      for (engine::NodeIx t : p.targets[i][s]) {
        if (!witness.included[t]) continue;
        auto choice = static_cast<std::int32_t>(t);
        if (witness.target[i][s] == choice) {
          fixed[i][s] = choice;
          break;
        }
        auto trial = fixed;
        trial[i][s] = choice;
        if (auto w = query_at_optimum(forced, trial, timed_out)) {
          witness = std::move(*w);
          fixed = std::move(trial);
          break;
        }
        if (timed_out) return timed_out_with(sketch, witness, nodes);
      }
    }
  }

  LexResult out;
  out.status = SolveStatus::optimal;
  out.graph = engine::to_graph(sketch, witness);
  out.certified = true;
  out.search_nodes = nodes;
  for (std::size_t k = 0; k < optimum.size(); ++k) out.cost.emplace_back(optimum[k], p.scale[k]);
  return out;
}

SolveResult solve(const Registry& r, const RootManifest& root, const SolverSpec& spec,
                  std::span<const Advisory> advisories) {
  spec.validate();
  const auto deadline = Clock::now() + spec.timeout;
  const Sketch sketch = build_sketch(r, root);
  LexResult lex = lexicographic_minimize(sketch, r, advisories, spec, deadline);

  SolveResult out;
  out.status = lex.status;
  out.certified = lex.certified;
  out.search_nodes = lex.search_nodes;
  if (lex.graph) {
    std::vector<Violation> bad = check_graph(r, root, spec, *lex.graph);
    if (!bad.empty())
      throw std::logic_error("solver produced an invalid graph: condition " +
                             std::to_string(bad.front().condition) + ": " + bad.front().message);
    out.cost = evaluate(spec.objectives, *lex.graph, r, advisories);
    if (lex.status == SolveStatus::optimal && out.cost != lex.cost)
      throw std::logic_error("engine cost " + to_string(lex.cost) +
                             " disagrees with objective functions " + to_string(out.cost));
    out.graph = std::move(lex.graph);
  }
  if (out.status == SolveStatus::unsat) out.unsat_reasons = explain_unsat(sketch, r, spec, deadline);
  return out;
}

}  // namespace optidep
