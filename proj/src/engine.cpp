#include "engine.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "optidep/consistency.hpp"
#include "optidep/objectives.hpp"

namespace optidep::engine {
namespace {

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  __int128 l = static_cast<__int128>(a / std::gcd(a, b)) * b;
  if (l > INT64_MAX) throw std::overflow_error("cost denominators too large to scale exactly");
  return static_cast<std::int64_t>(l);
}

}  // namespace

Problem compile(const Sketch& sketch, const Registry& r, std::span<const Advisory> advisories,
                const SolverSpec& spec) {
  Problem p;
  p.node_count = sketch.nodes.size();
  p.allow_cycles = spec.allow_cycles;
  p.objectives = spec.objectives;

  // Packages appear as contiguous runs in sketch order.
  p.package_of.assign(p.node_count, 0);
  p.local_index.assign(p.node_count, 0);
  for (std::size_t i = 1; i < p.node_count; ++i) {
    if (i == 1 || sketch.nodes[i].id.package() != sketch.nodes[i - 1].id.package())
      p.package_nodes.emplace_back();
    p.package_of[i] = static_cast<std::uint32_t>(p.package_nodes.size() - 1);
    p.local_index[i] = static_cast<std::uint32_t>(p.package_nodes.back().size());
    p.package_nodes.back().push_back(static_cast<NodeIx>(i));
  }
  p.package_count = p.package_nodes.size();
  p.package_of[0] = static_cast<std::uint32_t>(p.package_count);

  p.compat.resize(p.package_count);
  for (std::size_t q = 0; q < p.package_count; ++q) {
    const auto& members = p.package_nodes[q];
    std::size_t w = members.size();
    p.compat[q].assign(w * w, 1);
    for (std::size_t a = 0; a < w; ++a)
      for (std::size_t b = 0; b < w; ++b)
        if (a != b)
          p.compat[q][a * w + b] = consistent(spec.consistency, sketch.nodes[members[a]].id.version(),
                                              sketch.nodes[members[b]].id.version());
  }

  // Exact per-node costs, then one common denominator per objective.
  const std::size_t k_count = spec.objectives.size();
  std::vector<std::vector<Rational>> exact(k_count, std::vector<Rational>(p.node_count));
  for (std::size_t k = 0; k < k_count; ++k) {
    for (std::size_t i = 1; i < p.node_count; ++i) {
      const NodeId& id = sketch.nodes[i].id;
      switch (spec.objectives[k]) {
        case Objective::min_num_deps: exact[k][i] = 1; break;
        case Objective::min_duplicates: break;
        case Objective::min_oldness: exact[k][i] = oldness(r, id.package(), id.version()); break;
        case Objective::min_cve:
          for (const Advisory& a : advisories)
            if (a.package == id.package() && sat(a.affected, id.version())) exact[k][i] += a.cvss;
          break;
      }
    }
    if (spec.objectives[k] == Objective::min_duplicates) p.duplicate_objectives.push_back(k);
  }
  p.scale.assign(k_count, 1);
  p.node_cost.assign(p.node_count, Score(k_count, 0));
  for (std::size_t k = 0; k < k_count; ++k) {
    for (std::size_t i = 1; i < p.node_count; ++i)
      p.scale[k] = checked_lcm(p.scale[k], exact[k][i].denominator());
    __int128 total = 0;
    for (std::size_t i = 1; i < p.node_count; ++i) {
      __int128 v = static_cast<__int128>(exact[k][i].numerator()) * (p.scale[k] / exact[k][i].denominator());
      total += v;
      if (total > INT64_MAX / 4) throw std::overflow_error("scaled cost exceeds 64-bit range");
      p.node_cost[i][k] = static_cast<std::int64_t>(v);
    }
  }

  p.targets.resize(p.node_count);
  for (std::size_t i = 0; i < p.node_count; ++i) {
    for (const SketchSlot& slot : sketch.nodes[i].slots) {
      std::vector<NodeIx> ok;
      for (std::size_t t : slot.candidates) {
        if (!sat(slot.constraint, sketch.nodes[t].id.version())) continue;
        if (t != i && !p.compatible(static_cast<NodeIx>(i), static_cast<NodeIx>(t))) continue;
        ok.push_back(static_cast<NodeIx>(t));
      }
      p.targets[i].push_back(std::move(ok));
    }
  }

  p.dead.assign(p.node_count, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < p.node_count; ++i) {
      if (p.dead[i]) continue;
      for (const auto& ts : p.targets[i]) {
        if (std::none_of(ts.begin(), ts.end(), [&](NodeIx t) { return !p.dead[t]; })) {
          p.dead[i] = 1;
          changed = true;
          break;
        }
      }
    }
  }
  return p;
}

SolutionGraph to_graph(const Sketch& sketch, const Assignment& a) {
  SolutionGraph g;
  for (std::size_t i = 0; i < sketch.nodes.size(); ++i) {
    if (!a.included[i]) continue;
    std::vector<NodeId> targets;
    for (std::int32_t t : a.target[i]) targets.push_back(sketch.nodes[static_cast<std::size_t>(t)].id);
    g.edges.emplace(sketch.nodes[i].id, std::move(targets));
  }
  return g;
}

namespace {

struct OpenSlot {
  NodeIx node;
  std::uint32_t slot;
};

class Search {
 public:
  Search(const Problem& p, const Query& q, Clock::time_point deadline)
      : p_(p), q_(q), deadline_(deadline), k_(p.objectives.size()) {
    included_.assign(p.node_count, 0);
    conflicts_.assign(p.node_count, 0);
    pkg_count_.assign(p.package_count + 1, 0);
    target_.resize(p.node_count);
    for (std::size_t i = 0; i < p.node_count; ++i) target_[i].assign(p.targets[i].size(), kUnresolved);
    cost_.assign(k_, 0);
    mark_.assign(p.node_count, 0);
    pkg_mark_.assign(p.package_count + 1, 0);
    pkg_pending_.assign(p.package_count + 1, 0);
    pkg_need_.assign(p.package_count + 1, Score(k_, 0));
    if (!q.forced.empty())
      for (std::size_t i = 0; i < p.node_count; ++i)
        if (q.forced[i] > 0) forced_in_.push_back(static_cast<NodeIx>(i));
    bound_ = q.bound;
  }

  Outcome run() {
    if (forced(0) < 0 || p_.dead[0]) return finish();
    include(0);
    dfs();
    return finish();
  }

 private:
  signed char forced(NodeIx n) const { return q_.forced.empty() ? 0 : q_.forced[n]; }
  std::int32_t fixed(NodeIx n, std::uint32_t s) const {
    return q_.fixed.empty() ? kUnresolved : q_.fixed[n][s];
  }

  bool addable(NodeIx t) const {
    return !included_[t] && !p_.dead[t] && forced(t) >= 0 && conflicts_[t] == 0;
  }

  Score delta(NodeIx t) const {
    Score d = p_.node_cost[t];
    if (pkg_count_[p_.package_of[t]] > 0)
      for (std::size_t k : p_.duplicate_objectives) d[k] += 1;
    return d;
  }

  void include(NodeIx t) {
    Score d = delta(t);
    for (std::size_t k = 0; k < k_; ++k) cost_[k] += d[k];
    included_[t] = 1;
    ++pkg_count_[p_.package_of[t]];
    touch_conflicts(t, +1);
    for (std::uint32_t s = 0; s < p_.targets[t].size(); ++s) open_.push_back({t, s});
  }

  void exclude(NodeIx t) {
    open_.resize(open_.size() - p_.targets[t].size());
    touch_conflicts(t, -1);
    --pkg_count_[p_.package_of[t]];
    included_[t] = 0;
    Score d = delta(t);
    for (std::size_t k = 0; k < k_; ++k) cost_[k] -= d[k];
  }

  void touch_conflicts(NodeIx t, int by) {
    std::uint32_t q = p_.package_of[t];
    if (q == p_.package_count) return;
    for (NodeIx u : p_.package_nodes[q])
      if (u != t && !p_.compatible(t, u)) conflicts_[u] += by;
  }

  // Whether `to` is reachable from `from` along resolved edges.
  bool reaches(NodeIx from, NodeIx to) {
    if (from == to) return true;
    ++stamp_;
    stack_.clear();
    stack_.push_back(from);
    mark_[from] = stamp_;
    while (!stack_.empty()) {
      NodeIx n = stack_.back();
      stack_.pop_back();
      for (std::int32_t t : target_[n]) {
        if (t == kUnresolved) continue;
        auto u = static_cast<NodeIx>(t);
        if (u == to) return true;
        if (mark_[u] != stamp_) {
          mark_[u] = stamp_;
          stack_.push_back(u);
        }
      }
    }
    return false;
  }

  bool within_bound(const Score& lb) const {
    if (!bound_) return true;
    return q_.optimize ? lb < *bound_ : lb <= *bound_;
  }

  // Componentwise lower bound on the score of any completion, or nullopt when
  // no completion can exist. Also picks the open slot to branch on.
  std::optional<Score> lower_bound(std::size_t& branch_slot) {
    Score lb = cost_;
    ++pkg_stamp_;
    const std::uint32_t stamp = pkg_stamp_;
    auto pkg_touch = [&](std::uint32_t q) {
      if (pkg_mark_[q] != stamp) {
        pkg_mark_[q] = stamp;
        pkg_pending_[q] = 0;
        std::fill(pkg_need_[q].begin(), pkg_need_[q].end(), -1);
      }
    };

    // Forced nodes still to be added.
    pending_.clear();
    for (NodeIx f : forced_in_) {
      if (included_[f]) continue;
      if (!addable(f)) return std::nullopt;
      for (NodeIx g : pending_)
        if (!p_.compatible(f, g)) return std::nullopt;
      pending_.push_back(f);
      std::uint32_t q = p_.package_of[f];
      pkg_touch(q);
      for (std::size_t k = 0; k < k_; ++k) lb[k] += p_.node_cost[f][k];
      if (pkg_count_[q] + pkg_pending_[q] > 0)
        for (std::size_t k : p_.duplicate_objectives) lb[k] += 1;
      ++pkg_pending_[q];
    }
    ++stamp_;
    for (NodeIx f : pending_) mark_[f] = stamp_;  // mark_ == stamp_: pending

    std::size_t best_options = SIZE_MAX;
    branch_slot = 0;
    Score slot_min(k_);
    for (std::size_t o = 0; o < open_.size(); ++o) {
      auto [n, s] = open_[o];
      std::int32_t fx = fixed(n, s);
      bool covered = false;
      bool any_new = false;
      std::size_t options = 0;
      for (NodeIx t : p_.targets[n][s]) {
        if (fx != kUnresolved && static_cast<std::int32_t>(t) != fx) continue;
        if (included_[t]) {
          covered = true;
          ++options;
        } else if (addable(t)) {
          ++options;
          if (mark_[t] == stamp_) {
            covered = true;
            continue;
          }
          if (!any_new) {
            slot_min = p_.node_cost[t];
            any_new = true;
          } else {
            for (std::size_t k = 0; k < k_; ++k) slot_min[k] = std::min(slot_min[k], p_.node_cost[t][k]);
          }
        }
      }
      if (options == 0) return std::nullopt;
      if (options < best_options) {
        best_options = options;
        branch_slot = o;
      }
      if (covered) continue;
      std::uint32_t q = p_.package_of[p_.targets[n][s].front()];
      pkg_touch(q);
      auto& need = pkg_need_[q];
      for (std::size_t k = 0; k < k_; ++k) need[k] = std::max(need[k], slot_min[k]);
    }

    // Each package that must gain a new node pays at least its largest slot minimum.
    for (std::size_t o = 0; o < open_.size(); ++o) {
      auto [n, s] = open_[o];
      if (p_.targets[n][s].empty()) continue;
      std::uint32_t q = p_.package_of[p_.targets[n][s].front()];
      if (pkg_mark_[q] != stamp || pkg_need_[q][0] < 0) continue;
      for (std::size_t k = 0; k < k_; ++k) lb[k] += pkg_need_[q][k];
      if (pkg_count_[q] + pkg_pending_[q] > 0)
        for (std::size_t k : p_.duplicate_objectives) lb[k] += 1;
      pkg_need_[q][0] = -1;  // count each package once
    }

    if (!pending_.empty() && !pending_reachable()) return std::nullopt;
    return lb;
  }

  // Every pending forced node must be reachable from an open slot through
  // nodes that could still be added.
  bool pending_reachable() {
    ++stamp_;
    stack_.clear();
    auto push = [&](NodeIx t) {
      if (mark_[t] != stamp_ && addable(t)) {
        mark_[t] = stamp_;
        stack_.push_back(t);
      }
    };
    for (auto [n, s] : open_) {
      std::int32_t fx = fixed(n, s);
      for (NodeIx t : p_.targets[n][s])
        if (fx == kUnresolved || static_cast<std::int32_t>(t) == fx) push(t);
    }
    while (!stack_.empty()) {
      NodeIx n = stack_.back();
      stack_.pop_back();
      for (std::uint32_t s = 0; s < p_.targets[n].size(); ++s) {
        std::int32_t fx = fixed(n, s);
        for (NodeIx t : p_.targets[n][s])
          if (fx == kUnresolved || static_cast<std::int32_t>(t) == fx) push(t);
      }
    }
    for (NodeIx f : pending_)
      if (mark_[f] != stamp_) return false;
    return true;
  }

  bool timed_out() {
    if ((++expansions_ & 0x3ff) == 0 && Clock::now() >= deadline_) timed_out_ = true;
    return timed_out_;
  }

  // Returns true to stop the whole search.
  bool dfs() {
    if (timed_out()) return true;
    std::size_t branch = 0;
    std::optional<Score> lb = lower_bound(branch);
    if (!lb || !within_bound(*lb)) return false;

    if (open_.empty()) {
      // lower_bound() rejected pending forced nodes, so this leaf is complete.
      best_ = Assignment{included_, target_};
      best_score_ = cost_;
      if (q_.optimize) bound_ = cost_;
      return q_.first_only;
    }

    OpenSlot slot = open_[branch];
    std::swap(open_[branch], open_.back());
    open_.pop_back();

    // Existing nodes first, then new nodes by marginal cost.
    std::vector<NodeIx> existing;
    std::vector<std::pair<Score, NodeIx>> fresh;
    std::int32_t fx = fixed(slot.node, slot.slot);
    for (NodeIx t : p_.targets[slot.node][slot.slot]) {
      if (fx != kUnresolved && static_cast<std::int32_t>(t) != fx) continue;
      if (included_[t])
        existing.push_back(t);
      else if (addable(t))
        fresh.emplace_back(delta(t), t);
    }
    std::stable_sort(fresh.begin(), fresh.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    bool stop = false;
    auto& edge = target_[slot.node][slot.slot];
    for (NodeIx t : existing) {
      if (!p_.allow_cycles && reaches(t, slot.node)) continue;
      edge = static_cast<std::int32_t>(t);
      stop = dfs();
      edge = kUnresolved;
      if (stop) break;
    }
    if (!stop) {
      for (const auto& [d, t] : fresh) {
        if (!addable(t)) continue;
        edge = static_cast<std::int32_t>(t);
        include(t);
        stop = dfs();
        exclude(t);
        edge = kUnresolved;
        if (stop) break;
      }
    }

    open_.push_back(slot);
    std::swap(open_[branch], open_.back());
    return stop;
  }

  Outcome finish() {
    Outcome out;
    out.timed_out = timed_out_;
    out.best = std::move(best_);
    out.best_score = std::move(best_score_);
    out.expansions = expansions_;
    return out;
  }

  const Problem& p_;
  const Query& q_;
  Clock::time_point deadline_;
  std::size_t k_;

  std::vector<char> included_;
  std::vector<std::uint32_t> conflicts_;
  std::vector<std::uint32_t> pkg_count_;
  std::vector<std::vector<std::int32_t>> target_;
  std::vector<OpenSlot> open_;
  Score cost_;
  std::vector<NodeIx> forced_in_;

  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
  std::vector<std::uint32_t> pkg_mark_;
  std::uint32_t pkg_stamp_ = 0;
  std::vector<std::uint32_t> pkg_pending_;
  std::vector<Score> pkg_need_;
  std::vector<NodeIx> pending_;
  std::vector<NodeIx> stack_;

  std::optional<Score> bound_;
  std::optional<Assignment> best_;
  Score best_score_;
  std::uint64_t expansions_ = 0;
  bool timed_out_ = false;
};

}  // namespace

Outcome run(const Problem& problem, const Query& query, Clock::time_point deadline) {
  return Search(problem, query, deadline).run();
}

}  // namespace optidep::engine
