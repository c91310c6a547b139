#include "optidep/constraint.hpp"

#include <cctype>
#include <limits>
#include <optional>

#include "optidep/errors.hpp"

namespace optidep {

struct Constraint::Node {
  Kind kind = Kind::any;
  Version version;
  bool inclusive = false;
  Constraint lhs{Null{}};
  Constraint rhs{Null{}};
};

namespace {

// A version with possibly-missing trailing fields: "1", "1.2", "1.x", "*".
struct Partial {
  int fields = 0;  // count of leading numeric fields
  Version full;    // missing fields zero-filled; carries prerelease/build when fields == 3
};

[[noreturn]] void fail(std::string_view whole, std::string_view token, std::size_t offset,
                       const std::string& why) {
  throw ParseError("invalid range '" + std::string(whole) + "': " + why + " at '" +
                       std::string(token) + "'",
                   std::string(token), offset);
}

bool is_wildcard(std::string_view field) {
  return field == "x" || field == "X" || field == "*";
}

Partial parse_partial(std::string_view text, std::string_view whole, std::size_t offset) {
  if (text.empty()) fail(whole, text, offset, "missing version");
  if (text.front() == 'v' || text.front() == 'V') fail(whole, text, offset, "'v' prefix");

  std::string_view core = text;
  std::string_view pre_text, build_text;
  bool has_pre = false, has_build = false;
  if (auto plus = core.find('+'); plus != std::string_view::npos) {
    build_text = core.substr(plus + 1);
    has_build = true;
    core = core.substr(0, plus);
  }
  if (auto dash = core.find('-'); dash != std::string_view::npos) {
    pre_text = core.substr(dash + 1);
    has_pre = true;
    core = core.substr(0, dash);
  }

  std::uint64_t nums[3] = {0, 0, 0};
  int fields = 0;
  bool wildcard_seen = false;
  std::size_t start = 0;
  for (int i = 0;; ++i) {
    if (i == 3) fail(whole, text, offset, "too many version fields");
    std::size_t dot = core.find('.', start);
    std::string_view field = core.substr(start, dot == std::string_view::npos ? dot : dot - start);
    if (is_wildcard(field)) {
      wildcard_seen = true;
    } else {
      if (wildcard_seen) fail(whole, field, offset + start, "number after wildcard");
      nums[i] = detail::parse_numeric(field, whole, offset + start);
      ++fields;
    }
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }

  std::vector<PrereleaseId> pre;
  if (has_pre) {
    if (fields != 3) fail(whole, text, offset, "prerelease on a partial version");
    pre = detail::parse_prerelease(pre_text, whole, offset + (pre_text.data() - text.data()));
  }
  std::string build;
  if (has_build) {
    if (fields != 3) fail(whole, text, offset, "build metadata on a partial version");
    detail::check_build(build_text, whole, offset + (build_text.data() - text.data()));
    build = std::string(build_text);
  }
  return {fields, Version(nums[0], nums[1], nums[2], std::move(pre), std::move(build))};
}

std::uint64_t bump(std::uint64_t n, std::string_view whole) {
  if (n == std::numeric_limits<std::uint64_t>::max())
    throw ParseError("invalid range '" + std::string(whole) + "': version field overflow",
                     std::string(whole), 0);
  return n + 1;
}

// First version above everything the partial covers: 1 -> 2.0.0, 1.2 -> 1.3.0.
Version partial_ceiling(const Partial& p, std::string_view whole) {
  if (p.fields == 1) return Version(bump(p.full.major(), whole), 0, 0);
  return Version(p.full.major(), bump(p.full.minor(), whole), 0);
}

Constraint half_open(Version lo, Version hi) {
  return Constraint::conjunction(Constraint::at_least(std::move(lo), true),
                                 Constraint::at_most(std::move(hi), false));
}

Constraint desugar(std::string_view op, const Partial& p, std::string_view whole) {
  const Version& v = p.full;
  if (op.empty() || op == "=") {
    if (p.fields == 0) return Constraint::any();
    if (p.fields == 3) return Constraint::exact(v);
    return half_open(v, partial_ceiling(p, whole));
  }
  if (op == ">") {
    if (p.fields == 0) return Constraint::none();
    if (p.fields == 3) return Constraint::at_least(v, false);
    return Constraint::at_least(partial_ceiling(p, whole), true);
  }
  if (op == ">=") {
    if (p.fields == 0) return Constraint::any();
    return Constraint::at_least(v, true);
  }
  if (op == "<") {
    if (p.fields == 0) return Constraint::none();
    return Constraint::at_most(v, false);
  }
  if (op == "<=") {
    if (p.fields == 0) return Constraint::any();
    if (p.fields == 3) return Constraint::at_most(v, true);
    return Constraint::at_most(partial_ceiling(p, whole), false);
  }
  if (op == "~" || op == "~>") {
    if (p.fields == 0) return Constraint::any();
    if (p.fields == 1) return half_open(v, partial_ceiling(p, whole));
    return Constraint::tilde(v);
  }
  // caret
  if (p.fields == 0) return Constraint::any();
  if (p.fields == 3 || v.major() > 0 || (p.fields == 2 && v.minor() > 0))
    return Constraint::caret(v);
  // ^0 and ^0.0 span a whole major/minor; Caret(0.0.0) would pin 0.0.0 exactly.
  return half_open(v, partial_ceiling(p, whole));
}

std::string_view split_operator(std::string_view token) {
  for (std::string_view op : {">=", "<=", ">", "<", "=", "^", "~>", "~"})
    if (token.substr(0, op.size()) == op) return op;
  return {};
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Token {
  std::string_view text;
  std::size_t offset;
};

std::vector<Token> tokenize(std::string_view range, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < range.size()) {
    while (i < range.size() && is_space(range[i])) ++i;
    if (i == range.size()) break;
    std::size_t start = i;
    while (i < range.size() && !is_space(range[i])) ++i;
    out.push_back({range.substr(start, i - start), base + start});
  }
  // "> 1.2.3": glue a bare operator onto the following token.
  std::vector<Token> merged;
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::string_view op = split_operator(out[k].text);
    if (!op.empty() && op.size() == out[k].text.size() && k + 1 < out.size()) {
      const char* begin = out[k].text.data();
      const char* end = out[k + 1].text.data() + out[k + 1].text.size();
      merged.push_back({std::string_view(begin, static_cast<std::size_t>(end - begin)), out[k].offset});
      ++k;
    } else {
      merged.push_back(out[k]);
    }
  }
  return merged;
}

Constraint parse_simple(const Token& tok, std::string_view whole) {
  std::string_view op = split_operator(tok.text);
  std::string_view rest = tok.text.substr(op.size());
  std::size_t skip = 0;
  while (skip < rest.size() && is_space(rest[skip])) ++skip;
  return desugar(op, parse_partial(rest.substr(skip), whole, tok.offset + op.size() + skip), whole);
}

Constraint parse_hyphen(const Token& lo_tok, const Token& hi_tok, std::string_view whole) {
  Partial lo = parse_partial(lo_tok.text, whole, lo_tok.offset);
  Partial hi = parse_partial(hi_tok.text, whole, hi_tok.offset);
  std::optional<Constraint> lower, upper;
  if (lo.fields > 0) lower = Constraint::at_least(lo.full, true);
  if (hi.fields == 3)
    upper = Constraint::at_most(hi.full, true);
  else if (hi.fields > 0)
    upper = Constraint::at_most(partial_ceiling(hi, whole), false);
  if (lower && upper) return Constraint::conjunction(*lower, *upper);
  if (lower) return *lower;
  if (upper) return *upper;
  return Constraint::any();
}

Constraint parse_range(std::string_view range, std::size_t base, std::string_view whole) {
  std::vector<Token> toks = tokenize(range, base);
  if (toks.empty()) return Constraint::any();
  if (toks.size() == 3 && toks[1].text == "-") return parse_hyphen(toks[0], toks[2], whole);
  std::optional<Constraint> acc;
  for (const Token& t : toks) {
    if (t.text == "-") fail(whole, t.text, t.offset, "misplaced hyphen");
    Constraint c = parse_simple(t, whole);
    acc = acc ? Constraint::conjunction(*acc, c) : c;
  }
  return *acc;
}

bool numeric_sat(const Constraint& c, const Version& v) {
  using K = Constraint::Kind;
  switch (c.kind()) {
    case K::exact: return v == c.version();
    case K::any: return true;
    case K::at_most: return c.inclusive() ? v <= c.version() : v < c.version();
    case K::at_least: return c.inclusive() ? v >= c.version() : v > c.version();
    case K::caret: {
      const Version& b = c.version();
      if (v < b) return false;
      if (b.major() > 0) return v.major() == b.major();
      if (b.minor() > 0) return v.major() == 0 && v.minor() == b.minor();
      return v.major() == 0 && v.minor() == 0 && v.patch() == b.patch();
    }
    case K::tilde: {
      const Version& b = c.version();
      return v >= b && v.major() == b.major() && v.minor() == b.minor();
    }
    case K::conjunction: return numeric_sat(c.lhs(), v) && numeric_sat(c.rhs(), v);
    case K::disjunction: return numeric_sat(c.lhs(), v) || numeric_sat(c.rhs(), v);
  }
  return false;
}

bool admits_prerelease(const Constraint& c, const Version& v) {
  using K = Constraint::Kind;
  switch (c.kind()) {
    case K::any: return true;
    case K::conjunction:
    case K::disjunction: return admits_prerelease(c.lhs(), v) || admits_prerelease(c.rhs(), v);
    default: return c.version().is_prerelease() && c.version().same_triple(v);
  }
}

using Clause = std::vector<const Constraint*>;

std::vector<Clause> to_dnf(const Constraint& c) {
  using K = Constraint::Kind;
  if (c.kind() == K::disjunction) {
    auto out = to_dnf(c.lhs());
    for (auto& clause : to_dnf(c.rhs())) out.push_back(std::move(clause));
    return out;
  }
  if (c.kind() == K::conjunction) {
    std::vector<Clause> out;
    auto left = to_dnf(c.lhs());
    auto right = to_dnf(c.rhs());
    for (const auto& l : left)
      for (const auto& r : right) {
        Clause merged = l;
        merged.insert(merged.end(), r.begin(), r.end());
        out.push_back(std::move(merged));
      }
    return out;
  }
  return {{&c}};
}

std::string leaf_str(const Constraint& c) {
  using K = Constraint::Kind;
  const std::string v = c.kind() == K::any ? "" : c.version().str();
  switch (c.kind()) {
    case K::exact: return v;
    case K::any: return "*";
    case K::at_most: return (c.inclusive() ? "<=" : "<") + v;
    case K::at_least: return (c.inclusive() ? ">=" : ">") + v;
    case K::caret: return "^" + v;
    case K::tilde: return "~" + v;
    default: return {};
  }
}

}  // namespace

Constraint::Constraint() {
  static const auto any_node = std::make_shared<const Node>();
  node_ = any_node;
}

Constraint Constraint::leaf(Kind kind, Version v, bool inclusive) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->version = std::move(v);
  node->inclusive = inclusive;
  return Constraint(std::shared_ptr<const Node>(std::move(node)));
}

Constraint Constraint::exact(Version v) { return leaf(Kind::exact, std::move(v), true); }
Constraint Constraint::any() { return Constraint(); }
Constraint Constraint::at_most(Version v, bool inclusive) {
  return leaf(Kind::at_most, std::move(v), inclusive);
}
Constraint Constraint::at_least(Version v, bool inclusive) {
  return leaf(Kind::at_least, std::move(v), inclusive);
}
Constraint Constraint::caret(Version v) { return leaf(Kind::caret, std::move(v), true); }
Constraint Constraint::tilde(Version v) { return leaf(Kind::tilde, std::move(v), true); }
Constraint Constraint::conjunction(Constraint lhs, Constraint rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::conjunction;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return Constraint(std::shared_ptr<const Node>(std::move(node)));
}
Constraint Constraint::disjunction(Constraint lhs, Constraint rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::disjunction;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return Constraint(std::shared_ptr<const Node>(std::move(node)));
}
Constraint Constraint::none() { return at_most(Version(0, 0, 0, {std::uint64_t{0}}), false); }

Constraint::Kind Constraint::kind() const noexcept { return node_->kind; }
const Version& Constraint::version() const noexcept { return node_->version; }
bool Constraint::inclusive() const noexcept { return node_->inclusive; }
const Constraint& Constraint::lhs() const noexcept { return node_->lhs; }
const Constraint& Constraint::rhs() const noexcept { return node_->rhs; }

Constraint Constraint::parse(std::string_view text) {
  std::optional<Constraint> acc;
  std::size_t start = 0;
  while (true) {
    std::size_t bar = text.find("||", start);
    std::string_view part = text.substr(start, bar == std::string_view::npos ? bar : bar - start);
    Constraint c = parse_range(part, start, text);
    acc = acc ? disjunction(*acc, c) : c;
    if (bar == std::string_view::npos) break;
    start = bar + 2;
  }
  return *acc;
}

std::string Constraint::str() const {
  std::string out;
  bool first_clause = true;
  for (const Clause& clause : to_dnf(*this)) {
    if (!first_clause) out += " || ";
    first_clause = false;
    for (std::size_t i = 0; i < clause.size(); ++i) {
      if (i > 0) out += ' ';
      out += leaf_str(*clause[i]);
    }
  }
  return out;
}

bool operator==(const Constraint& a, const Constraint& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Constraint::Kind::any: return true;
    case Constraint::Kind::conjunction:
    case Constraint::Kind::disjunction: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    default:
      return a.inclusive() == b.inclusive() && a.version() == b.version() &&
             a.version().build() == b.version().build();
  }
}

bool sat_ignoring_prerelease_gate(const Constraint& c, const Version& v) { return numeric_sat(c, v); }

bool sat(const Constraint& c, const Version& v) {
  if (!numeric_sat(c, v)) return false;
  return !v.is_prerelease() || admits_prerelease(c, v);
}

}  // namespace optidep
