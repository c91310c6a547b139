#include "optidep/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace optidep {

std::vector<NodeId> SolutionGraph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(edges.size());
  for (const auto& [n, targets] : edges) out.push_back(n);
  return out;
}

std::string_view to_string(Consistency c) {
  switch (c) {
    case Consistency::npm: return "npm";
    case Consistency::no_dups: return "no-dups";
    case Consistency::cargo: return "cargo";
  }
  return "?";
}

std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::min_oldness: return "min_oldness";
    case Objective::min_num_deps: return "min_num_deps";
    case Objective::min_duplicates: return "min_duplicates";
    case Objective::min_cve: return "min_cve";
  }
  return "?";
}

std::optional<Consistency> parse_consistency(std::string_view text) {
  if (text == "npm") return Consistency::npm;
  if (text == "no-dups" || text == "no_dups") return Consistency::no_dups;
  if (text == "cargo") return Consistency::cargo;
  return std::nullopt;
}

std::optional<Objective> parse_objective(std::string_view text) {
  for (auto o : {Objective::min_oldness, Objective::min_num_deps, Objective::min_duplicates,
                 Objective::min_cve})
    if (text == to_string(o)) return o;
  return std::nullopt;
}

void SolverSpec::validate() const {
  if (objectives.empty()) throw std::invalid_argument("objective list is empty");
  for (std::size_t i = 0; i < objectives.size(); ++i)
    if (std::find(objectives.begin() + static_cast<std::ptrdiff_t>(i) + 1, objectives.end(),
                  objectives[i]) != objectives.end())
      throw std::invalid_argument("objective " + std::string(to_string(objectives[i])) +
                                  " listed twice");
  if (timeout.count() <= 0) throw std::invalid_argument("timeout must be positive");
}

std::string to_string(const Cost& cost) {
  std::string out = "(";
  for (std::size_t i = 0; i < cost.size(); ++i) {
    if (i > 0) out += ", ";
    out += cost[i].str();
  }
  return out + ")";
}

}  // namespace optidep
