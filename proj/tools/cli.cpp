#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "optidep/audit.hpp"
#include "optidep/check.hpp"
#include "optidep/errors.hpp"
#include "optidep/lockfile.hpp"
#include "optidep/objectives.hpp"
#include "optidep/oracle.hpp"
#include "optidep/solver.hpp"

namespace optidep::cli {
namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Inputs {
  std::string registry;
  std::string manifest;
  std::string advisories;
  std::string lockfile;
  std::string baseline;
  std::string consistency = "npm";
  std::string minimize = "min_oldness";
  bool acyclic = false;
  bool allow_cycles = false;
  double timeout = 600;
  std::uint64_t capacity = OracleOptions{}.capacity;
  std::string out;
  std::string format = "summary";
};

std::vector<Objective> parse_objectives(const std::string& list) {
  std::vector<Objective> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto o = parse_objective(item);
    if (!o) throw UsageError("unknown objective '" + item + "'");
    out.push_back(*o);
  }
  return out;
}

SolverSpec make_spec(const Inputs& in) {
  SolverSpec spec;
  auto c = parse_consistency(in.consistency);
  if (!c) throw UsageError("unknown consistency '" + in.consistency + "'");
  spec.consistency = *c;
  spec.objectives = parse_objectives(in.minimize);
  spec.allow_cycles = !in.acyclic;
  if (!(in.timeout > 0) || in.timeout > 1e9) throw UsageError("--timeout must be in (0, 1e9] seconds");
  spec.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(std::ceil(in.timeout * 1000)));
  spec.validate();
  bool wants_cve = std::find(spec.objectives.begin(), spec.objectives.end(), Objective::min_cve) !=
                   spec.objectives.end();
  if (wants_cve && in.advisories.empty()) throw UsageError("min_cve requires --advisories");
  return spec;
}

std::vector<Advisory> advisories_of(const Inputs& in) {
  return in.advisories.empty() ? std::vector<Advisory>{} : load_advisories_file(in.advisories);
}

struct Metrics {
  std::size_t nodes = 0;
  std::size_t dependencies = 0;
  Rational mean_oldness;
  Rational duplicates;
  Rational cvss_total;
};

Metrics metrics_of(const SolutionGraph& g, const Registry& r, std::span<const Advisory> advisories) {
  Metrics m;
  m.nodes = g.size();
  m.dependencies = static_cast<std::size_t>(cost_num_deps(g).numerator());
  if (m.dependencies > 0)
    m.mean_oldness = cost_oldness(g, r) / Rational(static_cast<std::int64_t>(m.dependencies));
  m.duplicates = cost_duplicates(g);
  m.cvss_total = cost_cve(g, advisories);
  return m;
}

void print_metrics(const Metrics& m, json& doc, std::vector<std::string>& lines) {
  doc["nodes"] = m.nodes;
  doc["dependencies"] = m.dependencies;
  doc["mean_oldness"] = m.mean_oldness.str();
  doc["duplicates"] = m.duplicates.str();
  doc["cvss_total"] = m.cvss_total.str();
  lines.push_back("nodes: " + std::to_string(m.nodes));
  lines.push_back("dependencies: " + std::to_string(m.dependencies));
  lines.push_back("mean_oldness: " + m.mean_oldness.str());
  lines.push_back("duplicates: " + m.duplicates.str());
  lines.push_back("cvss_total: " + m.cvss_total.str());
}

void emit(const Inputs& in, const json& doc, const std::vector<std::string>& lines,
          std::ostream& out) {
  if (in.format == "json") {
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& l : lines) out << l << "\n";
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) throw LoadError(path, "cannot write file");
}

void violations_to(const std::vector<Violation>& vs, json& doc, std::vector<std::string>& lines) {
  json arr = json::array();
  for (const auto& v : vs) {
    arr.push_back({{"condition", v.condition}, {"message", v.message}});
    lines.push_back("condition " + std::to_string(v.condition) + ": " + v.message);
  }
  doc["violations"] = std::move(arr);
}

int report_solution(const Inputs& in, const SolverSpec& spec, const Registry& r,
                    std::span<const Advisory> advisories, SolveStatus status, bool certified,
                    const std::optional<SolutionGraph>& graph, const Cost& cost,
                    const std::vector<Violation>& reasons, std::ostream& out) {
  json doc;
  std::vector<std::string> lines;
  doc["status"] = std::string(to_string(status));
  lines.push_back("status: " + std::string(to_string(status)));
  json objectives = json::array();
  std::string names;
  for (Objective o : spec.objectives) {
    objectives.push_back(std::string(to_string(o)));
    names += (names.empty() ? "" : ",") + std::string(to_string(o));
  }
  doc["objectives"] = std::move(objectives);
  lines.push_back("objectives: " + names);
  if (graph) {
    json c = json::array();
    for (const auto& x : cost) c.push_back(x.str());
    doc["certified"] = certified;
    doc["cost"] = std::move(c);
    lines.push_back("cost: " + to_string(cost) + (certified ? "" : " (not certified)"));
    print_metrics(metrics_of(*graph, r, advisories), doc, lines);
    if (!in.out.empty()) write_file(in.out, write_lockfile(*graph));
  }
  if (status == SolveStatus::unsat) {
    if (reasons.empty()) lines.push_back("no candidate graph satisfies every condition");
    violations_to(reasons, doc, lines);
  }
  emit(in, doc, lines, out);
  switch (status) {
    case SolveStatus::optimal: return Exit::ok;
    case SolveStatus::unsat: return Exit::unsat;
    case SolveStatus::timeout: return Exit::timeout;
  }
  return Exit::internal;
}

int cmd_solve(const Inputs& in, std::ostream& out) {
  SolverSpec spec = make_spec(in);
  Registry r = Registry::load_file(in.registry);
  RootManifest root = RootManifest::load_file(in.manifest);
  std::vector<Advisory> advisories = advisories_of(in);
  SolveResult res = solve(r, root, spec, advisories);
  return report_solution(in, spec, r, advisories, res.status, res.certified, res.graph, res.cost,
                         res.unsat_reasons, out);
}

int cmd_oracle(const Inputs& in, std::ostream& out) {
  SolverSpec spec = make_spec(in);
  Registry r = Registry::load_file(in.registry);
  RootManifest root = RootManifest::load_file(in.manifest);
  std::vector<Advisory> advisories = advisories_of(in);
  OracleOptions options;
  options.capacity = in.capacity;
  OracleResult res = oracle_solve(r, root, spec, advisories, options);
  return report_solution(in, spec, r, advisories, res.status, true, res.graph, res.cost, {}, out);
}

int cmd_check(const Inputs& in, std::ostream& out) {
  SolverSpec spec = make_spec(in);
  Registry r = Registry::load_file(in.registry);
  RootManifest root = RootManifest::load_file(in.manifest);
  SolutionGraph g = read_lockfile(read_text_file(in.lockfile));
  std::vector<Violation> vs = check_graph(r, root, spec, g);
  json doc;
  std::vector<std::string> lines;
  doc["valid"] = vs.empty();
  lines.push_back(vs.empty() ? "valid" : "invalid");
  violations_to(vs, doc, lines);
  emit(in, doc, lines, out);
  return vs.empty() ? Exit::ok : Exit::unsat;
}

int cmd_metrics(const Inputs& in, std::ostream& out) {
  Registry r = Registry::load_file(in.registry);
  SolutionGraph g = read_lockfile(read_text_file(in.lockfile));
  std::vector<Advisory> advisories = advisories_of(in);
  json doc;
  std::vector<std::string> lines;
  print_metrics(metrics_of(g, r, advisories), doc, lines);
  emit(in, doc, lines, out);
  return Exit::ok;
}

int cmd_audit(const Inputs& in, std::ostream& out) {
  std::vector<Advisory> advisories = load_advisories_file(in.advisories);
  AuditReport after = audit_report(read_lockfile(read_text_file(in.lockfile)), advisories);
  if (in.baseline.empty()) {
    if (in.format == "json") {
      out << after.to_json();
    } else {
      for (const auto& e : after.nodes) {
        if (e.advisories.empty()) continue;
        std::string ids;
        for (const auto& id : e.advisories) ids += " " + id;
        out << e.node.str() << " " << e.subtotal.str() << ":" << ids << "\n";
      }
      out << "cvss_total: " << after.total.str() << "\n";
    }
    return Exit::ok;
  }
  AuditReport before = audit_report(read_lockfile(read_text_file(in.baseline)), advisories);
  AuditDelta d = compare_reports(before, after);
  json doc;
  std::vector<std::string> lines;
  doc["delta"] = d.total.str();
  doc["added"] = d.added;
  doc["removed"] = d.removed;
  lines.push_back("delta: " + d.total.str());
  for (const auto& id : d.added) lines.push_back("added: " + id);
  for (const auto& id : d.removed) lines.push_back("removed: " + id);
  emit(in, doc, lines, out);
  return Exit::ok;
}

void solver_flags(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--consistency", in.consistency, "npm, no-dups or cargo")
      ->check(CLI::IsMember({"npm", "no-dups", "cargo"}));
  auto* allow = cmd->add_flag("--allow-cycles", in.allow_cycles, "permit cyclic graphs (default)");
  cmd->add_flag("--acyclic", in.acyclic, "require an acyclic graph")->excludes(allow);
}

void output_flags(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--format", in.format, "json or summary")->check(CLI::IsMember({"json", "summary"}));
}

void solve_flags(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--registry", in.registry, "registry JSON")->required();
  cmd->add_option("--manifest", in.manifest, "root manifest JSON")->required();
  cmd->add_option("--advisories", in.advisories, "advisory JSON");
  cmd->add_option("--minimize", in.minimize, "comma-separated objectives");
  cmd->add_option("--timeout", in.timeout, "seconds");
  cmd->add_option("--out", in.out, "lockfile to write");
  solver_flags(cmd, in);
  output_flags(cmd, in);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Optimal dependency resolution over a local registry", "optidep");
  app.require_subcommand(1);
  Inputs in;

  auto* solve_cmd = app.add_subcommand("solve", "compute an optimal solution graph");
  solve_flags(solve_cmd, in);

  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive reference solve");
  solve_flags(oracle_cmd, in);
  oracle_cmd->add_option("--capacity", in.capacity, "largest candidate count to enumerate");

  auto* check_cmd = app.add_subcommand("check", "validate a lockfile");
  check_cmd->add_option("--lockfile", in.lockfile)->required();
  check_cmd->add_option("--registry", in.registry)->required();
  check_cmd->add_option("--manifest", in.manifest)->required();
  solver_flags(check_cmd, in);
  output_flags(check_cmd, in);

  auto* metrics_cmd = app.add_subcommand("metrics", "report lockfile metrics");
  metrics_cmd->add_option("--lockfile", in.lockfile)->required();
  metrics_cmd->add_option("--registry", in.registry)->required();
  metrics_cmd->add_option("--advisories", in.advisories);
  output_flags(metrics_cmd, in);

  auto* audit_cmd = app.add_subcommand("audit", "list advisories matching a lockfile");
  audit_cmd->add_option("--lockfile", in.lockfile)->required();
  audit_cmd->add_option("--advisories", in.advisories)->required();
  audit_cmd->add_option("--baseline", in.baseline, "earlier lockfile to diff against");
  output_flags(audit_cmd, in);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Exit::ok : Exit::bad_input;
  }

  try {
    if (*solve_cmd) return cmd_solve(in, out);
    if (*oracle_cmd) return cmd_oracle(in, out);
    if (*check_cmd) return cmd_check(in, out);
    if (*metrics_cmd) return cmd_metrics(in, out);
    if (*audit_cmd) return cmd_audit(in, out);
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::capacity;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::bad_input;
  } catch (const LoadError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::bad_input;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::bad_input;
  } catch (const NotFound& e) {
    err << "error: " << e.what() << "\n";
    return Exit::bad_input;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return Exit::bad_input;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return Exit::internal;
  }
  return Exit::internal;
}

}  // namespace optidep::cli
