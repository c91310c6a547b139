#include "optidep/oracle.hpp"

#include <algorithm>
#include <limits>

#include "optidep/consistency.hpp"
#include "optidep/errors.hpp"
#include "optidep/objectives.hpp"

namespace optidep {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  return __builtin_mul_overflow(a, b, &out) ? kSaturated : out;
}

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  return __builtin_add_overflow(a, b, &out) ? kSaturated : out;
}

class Walk {
 public:
  Walk(const Sketch& sk, const std::vector<std::vector<std::vector<std::size_t>>>& satisfying,
       Consistency rule, bool pruned, const std::function<void(const SolutionGraph&)>& visit)
      : sk_(sk), satisfying_(satisfying), rule_(rule), pruned_(pruned), visit_(visit) {
    included_.assign(sk.nodes.size(), 0);
    included_[0] = 1;
    choice_.resize(sk.nodes.size());
    for (std::size_t i = 0; i < sk.nodes.size(); ++i) choice_[i].assign(sk.nodes[i].slots.size(), 0);
  }

  void run() { flags(1); }

 private:
  void flags(std::size_t i) {
    if (i == sk_.nodes.size()) {
      slots(0, 0);
      return;
    }
    included_[i] = 0;
    flags(i + 1);
    if (pruned_) {
      const NodeId& id = sk_.nodes[i].id;
      for (std::size_t j = i; j-- > 1 && sk_.nodes[j].id.package() == id.package();)
        if (included_[j] && !consistent(rule_, sk_.nodes[j].id.version(), id.version())) return;
    }
    included_[i] = 1;
    flags(i + 1);
    included_[i] = 0;
  }

  const std::vector<std::size_t>& domain(std::size_t node, std::size_t slot) const {
    return pruned_ ? satisfying_[node][slot] : sk_.nodes[node].slots[slot].candidates;
  }

  void slots(std::size_t node, std::size_t slot) {
    if (node == sk_.nodes.size()) {
      emit();
      return;
    }
    if (slot == sk_.nodes[node].slots.size()) {
      slots(node + 1, 0);
      return;
    }
    if (pruned_ && !included_[node]) {
      slots(node + 1, 0);
      return;
    }
    const auto& dom = domain(node, slot);
    if (dom.empty() && !pruned_) {
      // A slot with nothing to point at keeps a single "unresolved" value.
      choice_[node][slot] = kNone;
      slots(node, slot + 1);
      return;
    }
    for (std::size_t t : dom) {
      if (pruned_ && !included_[t]) continue;
      choice_[node][slot] = t;
      slots(node, slot + 1);
    }
  }

  void emit() {
    if (!pruned_) {
      // One representative per graph: excluded nodes keep their first values.
      for (std::size_t i = 1; i < sk_.nodes.size(); ++i) {
        if (included_[i]) continue;
        for (std::size_t s = 0; s < choice_[i].size(); ++s) {
          const auto& dom = domain(i, s);
          if (!dom.empty() && choice_[i][s] != dom.front()) return;
        }
      }
    }
    SolutionGraph g;
    for (std::size_t i = 0; i < sk_.nodes.size(); ++i) {
      if (!included_[i]) continue;
      std::vector<NodeId> targets;
      for (std::size_t t : choice_[i])
        if (t != kNone) targets.push_back(sk_.nodes[t].id);
      g.edges.emplace(sk_.nodes[i].id, std::move(targets));
    }
    visit_(g);
  }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  const Sketch& sk_;
  const std::vector<std::vector<std::vector<std::size_t>>>& satisfying_;
  Consistency rule_;
  bool pruned_;
  const std::function<void(const SolutionGraph&)>& visit_;
  std::vector<char> included_;
  std::vector<std::vector<std::size_t>> choice_;
};

}  // namespace

CandidateEnumeration::CandidateEnumeration(const Sketch& sketch, Consistency rule,
                                           OracleOptions options)
    : sketch_(sketch), rule_(rule), options_(options) {
  satisfying_.resize(sketch.nodes.size());
  for (std::size_t i = 0; i < sketch.nodes.size(); ++i)
    for (const SketchSlot& slot : sketch.nodes[i].slots) {
      std::vector<std::size_t> ok;
      for (std::size_t t : slot.candidates)
        if (sat(slot.constraint, sketch.nodes[t].id.version())) ok.push_back(t);
      satisfying_[i].push_back(std::move(ok));
    }

  if (options.pruned) {
    count_ = 1;
    for (std::size_t s = 0; s < satisfying_[0].size(); ++s)
      count_ = mul_sat(count_, satisfying_[0][s].size());
    for (std::size_t i = 1; i < sketch.nodes.size(); ++i) {
      std::uint64_t inner = 1;
      for (const auto& dom : satisfying_[i]) inner = mul_sat(inner, dom.size());
      count_ = mul_sat(count_, add_sat(inner, 1));
    }
  } else {
    count_ = 1;
    for (std::size_t i = 1; i < sketch.nodes.size(); ++i) count_ = mul_sat(count_, 2);
    for (const SketchNode& node : sketch.nodes)
      for (const SketchSlot& slot : node.slots)
        count_ = mul_sat(count_, std::max<std::uint64_t>(1, slot.candidates.size()));
  }
}

void CandidateEnumeration::for_each(const std::function<void(const SolutionGraph&)>& visit) const {
  if (count_ > options_.capacity)
    throw CapacityError("oracle capacity exceeded: " +
                        (count_ == kSaturated ? std::string("more than 2^64")
                                              : std::to_string(count_)) +
                        " assignments, bound " + std::to_string(options_.capacity));
  Walk(sketch_, satisfying_, rule_, options_.pruned, visit).run();
}

void enumerate_valid(const Registry& r, const RootManifest& root, const SolverSpec& spec,
                     std::span<const Advisory> advisories,
                     const std::function<void(const SolutionGraph&, const Cost&)>& visit,
                     OracleOptions options) {
  spec.validate();
  const Sketch sketch = build_sketch(r, root);
  CandidateEnumeration candidates(sketch, spec.consistency, options);
  candidates.for_each([&](const SolutionGraph& g) {
    if (check_graph(r, root, spec, g).empty()) visit(g, evaluate(spec.objectives, g, r, advisories));
  });
}

bool canonical_less(const SolutionGraph& a, const SolutionGraph& b) {
  auto an = a.nodes();
  auto bn = b.nodes();
  if (an != bn) return std::lexicographical_compare(an.begin(), an.end(), bn.begin(), bn.end());
  std::vector<NodeId> ae, be;
  for (const auto& [n, ts] : a.edges) ae.insert(ae.end(), ts.begin(), ts.end());
  for (const auto& [n, ts] : b.edges) be.insert(be.end(), ts.begin(), ts.end());
  return std::lexicographical_compare(ae.begin(), ae.end(), be.begin(), be.end());
}

OracleResult oracle_solve(const Registry& r, const RootManifest& root, const SolverSpec& spec,
                          std::span<const Advisory> advisories, OracleOptions options) {
  OracleResult out;
  enumerate_valid(
      r, root, spec, advisories,
      [&](const SolutionGraph& g, const Cost& c) {
        ++out.valid_graphs;
        if (!out.graph || c < out.cost || (c == out.cost && canonical_less(g, *out.graph))) {
          out.graph = g;
          out.cost = c;
        }
      },
      options);
  out.status = out.graph ? SolveStatus::optimal : SolveStatus::unsat;
  return out;
}

}  // namespace optidep
