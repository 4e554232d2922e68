#include "pnhs/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pnhs/homespace.hpp"
#include "pnhs/io.hpp"
#include "pnhs/reach.hpp"
#include "pnhs/witness.hpp"

namespace pnhs {

using nlohmann::json;

Simulation simulate(const PetriNet& net, const Configuration& init, std::size_t steps, std::uint64_t seed) {
  if (init.size() != net.dim()) throw DimensionMismatch("initial configuration has wrong dimension");
  std::mt19937_64 rng(seed);
  Simulation sim{Trace{init, {}, init}, false};
  for (std::size_t s = 0; s < steps; ++s) {
    auto choices = enabled_actions(net, sim.trace.end);
    if (choices.empty()) {
      sim.deadlock = true;
      break;
    }
    std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
    std::size_t a = choices[pick(rng)];
    sim.trace.steps.push_back(a);
    sim.trace.end = fire(net, sim.trace.end, a);
  }
  if (!sim.deadlock && enabled_actions(net, sim.trace.end).empty() && sim.trace.steps.size() < steps)
    sim.deadlock = true;
  return sim;
}

namespace {

struct Settings {
  std::string net_path;
  std::string from_path;
  std::string to_path;
  std::string linear_path;
  std::string init;
  std::size_t node_budget = 100000;
  double time_budget_secs = 10;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t steps = 10;
};

json vec_json(const Vector& v) { return json(v); }

json partial_json(const PartialVector& v) { return v.to_string(); }

json counters_json(const OracleCounters& c) {
  const ReachStats& r = c.reach_stats;
  return json{{"dc", c.dc},
              {"dcb", c.dcb},
              {"dcb_shortcut", c.dcb_shortcut},
              {"uy", c.uy},
              {"reach", c.reach},
              {"cache_hits", c.cache_hits},
              {"reach_queries", r.queries},
              {"pair_instances", r.pair_instances},
              {"refuted_by_state_equation", r.by_state_equation},
              {"refuted_by_coverability", r.by_coverability},
              {"refuted_by_exhaustion", r.by_bfs_exhaustion},
              {"found_by_bfs", r.by_bfs_trace},
              {"unknown", r.unknown},
              {"nodes_explored", r.nodes}};
}

json basis_json(const MinBasis& b) {
  json arr = json::array();
  for (const auto& e : b.elements) arr.push_back(vec_json(e));
  return arr;
}

json blocker_json(const WitnessBlocker& b) {
  return json{{"oracle", b.oracle}, {"query", partial_json(b.query)}, {"context", b.context}};
}

json witness_json(const WitnessResult& w) {
  json uy = json::array();
  for (const auto& e : w.uy_tables) uy.push_back(json{{"y", vec_json(e.y)}, {"basis", basis_json(e.basis)}});
  json j{{"conclusive", w.conclusive()},
         {"decrease_basis", basis_json(w.decrease_basis)},
         {"uy_tables", uy},
         {"pieces", w.pieces.size()},
         {"components", w.witness.size()},
         {"oracle_calls", counters_json(w.counters)}};
  if (w.blocker) j["blocker"] = blocker_json(*w.blocker);
  return j;
}

json budgets_json(const Settings& s) {
  return json{{"node_budget", s.node_budget}, {"time_budget_secs", s.time_budget_secs}};
}

json trace_json(const PetriNet& net, const Trace& t) {
  json steps = json::array();
  for (std::size_t s : t.steps) steps.push_back(net.action(s).name);
  return json{{"start", vec_json(t.start)}, {"steps", steps}, {"end", vec_json(t.end)}};
}

Budget budget_of(const Settings& s) {
  Budget b;
  b.node_budget = s.node_budget;
  b.time_cap = std::chrono::milliseconds(static_cast<std::int64_t>(s.time_budget_secs * 1000));
  return b;
}

PetriNet load_net(const Settings& s) { return parse_net(read_file(s.net_path)); }

SemilinearSet load_set(const std::string& path, std::size_t dim) {
  return parse_semilinear(read_file(path), dim);
}

Vector parse_config(const std::string& text, std::size_t dim) {
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  Vector v;
  std::string tok;
  while (in >> tok) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
      throw ParseError(1, 1, "invalid configuration entry '" + tok + "'");
    v.push_back(std::stoll(tok));
  }
  if (v.size() != dim)
    throw ParseError(1, 1, "configuration has " + std::to_string(v.size()) + " entries, expected " +
                               std::to_string(dim));
  return v;
}

void emit(std::ostream& out, const Settings& s, json j, const std::string& text) {
  if (s.format == "json") {
    j["version"] = version;
    out << j.dump(2) << '\n';
  } else {
    out << text;
  }
}

std::string counters_text(const OracleCounters& c) {
  std::ostringstream os;
  const ReachStats& r = c.reach_stats;
  os << "oracle calls: dc=" << c.dc << " dcb=" << c.dcb << " (shortcut " << c.dcb_shortcut << ") uy=" << c.uy
     << " reach=" << c.reach << " cache-hits=" << c.cache_hits << '\n'
     << "reachability: queries=" << r.queries << " pairs=" << r.pair_instances
     << " state-equation=" << r.by_state_equation << " coverability=" << r.by_coverability
     << " exhausted=" << r.by_bfs_exhaustion << " traces=" << r.by_bfs_trace << " unknown=" << r.unknown
     << " nodes=" << r.nodes << '\n';
  return os.str();
}

int cmd_check(const Settings& s, std::ostream& out, std::ostream& err) {
  PetriNet net = load_net(s);
  SemilinearSet from = load_set(s.from_path, net.dim());
  SemilinearSet home = load_set(s.to_path, net.dim());
  WitnessOptions opts;
  if (s.format == "text") opts.progress = [&err](const std::string& m) { err << "[pnhs] " << m << '\n'; };
  CheckReport r = check(HomeSpaceQuery{net, from, home, budget_of(s)}, opts);

  json j{{"verdict", verdict_name(r.verdict)}};
  std::ostringstream text;
  text << "verdict: " << verdict_name(r.verdict) << '\n';
  if (auto* n = std::get_if<NotHomeSpace>(&r.verdict)) {
    json chain = json::array();
    for (const auto& c : n->chain) chain.push_back(vec_json(c));
    j["witness_chain"] = json{{"configurations", chain}, {"run", trace_json(net, n->run)},
                              {"checkpoints", n->checkpoints}};
    text << "chain:";
    for (const auto& c : n->chain) text << ' ' << to_string(c);
    text << "\nrun:";
    for (std::size_t st : n->run.steps) text << ' ' << net.action(st).name;
    text << '\n';
  }
  json prov{{"oracle_calls", counters_json(r.counters)}, {"budgets", budgets_json(s)}};
  json ws = json::array();
  for (const auto& w : r.witnesses) ws.push_back(witness_json(w));
  prov["witnesses"] = ws;
  if (auto* u = std::get_if<UndecidedHomeSpace>(&r.verdict)) {
    prov["unknown_reason"] = u->reason;
    text << "reason: " << u->reason << '\n';
    if (u->blocker) {
      prov["blocking_query"] = blocker_json(*u->blocker);
      text << "blocking query: " << u->blocker->oracle << ' ' << u->blocker->query.to_string() << " ("
           << u->blocker->context << ")\n";
    }
  }
  j["provenance"] = prov;
  for (std::size_t i = 0; i < r.witnesses.size(); ++i)
    text << "witness " << i << ": " << r.witnesses[i].witness.size() << " components\n";
  text << counters_text(r.counters);
  emit(out, s, j, text.str());
  return std::holds_alternative<UndecidedHomeSpace>(r.verdict) ? 2 : 0;
}

int cmd_witness(const Settings& s, std::ostream& out, std::ostream& err) {
  PetriNet net = load_net(s);
  SemilinearSet l = load_set(s.linear_path, net.dim());
  if (l.size() != 1) throw ParseError(1, 1, "--linear expects exactly one linear component");
  WitnessOptions opts;
  opts.budget = budget_of(s);
  if (s.format == "text") opts.progress = [&err](const std::string& m) { err << "[pnhs] " << m << '\n'; };
  WitnessResult w = witness_linear(net, l.components().front(), opts);
  json j{{"verdict", w.conclusive() ? "witness" : "unknown"},
         {"provenance", json{{"witness", witness_json(w)}, {"budgets", budgets_json(s)}}}};
  std::ostringstream text;
  if (w.conclusive()) {
    j["witness"] = format_semilinear(w.witness);
    text << format_semilinear(w.witness);
    text << "# decrease basis:";
    for (const auto& e : w.decrease_basis.elements) text << ' ' << to_string(e);
    text << '\n';
  } else {
    text << "# inconclusive: " << w.blocker->oracle << ' ' << w.blocker->query.to_string() << " ("
         << w.blocker->context << ")\n";
  }
  std::string counters = counters_text(w.counters);
  std::istringstream lines(counters);
  for (std::string line; std::getline(lines, line);) text << "# " << line << '\n';
  emit(out, s, j, text.str());
  return w.conclusive() ? 0 : 2;
}

int cmd_reach(const Settings& s, std::ostream& out, std::ostream&) {
  PetriNet net = load_net(s);
  SemilinearSet from = load_set(s.from_path, net.dim());
  SemilinearSet to = load_set(s.to_path, net.dim());
  ReachStats stats;
  ReachVerdict v = decide(ReachQuery{net, from, to}, budget_of(s), &stats);
  json j;
  std::ostringstream text;
  if (auto* r = std::get_if<Reachable>(&v)) {
    j["verdict"] = "reachable";
    j["trace"] = trace_json(net, r->original);
    j["source_component"] = r->source_component;
    j["target_component"] = r->target_component;
    text << "verdict: reachable\n" << to_string(r->original.start);
    for (std::size_t st : r->original.steps) text << " -" << net.action(st).name << "->";
    text << ' ' << to_string(r->original.end) << '\n';
  } else if (auto* u = std::get_if<Unreachable>(&v)) {
    j["verdict"] = "unreachable";
    json certs = json::array();
    for (auto k : u->certificates) certs.push_back(to_string(k));
    j["certificates"] = certs;
    j["certificate"] = u->certificates.empty() ? "empty-set" : to_string(u->certificates.front());
    text << "verdict: unreachable\ncertificate:";
    if (u->certificates.empty()) text << " empty-set";
    for (auto k : u->certificates) text << ' ' << to_string(k);
    text << '\n';
  } else {
    const auto& un = std::get<Unknown>(v);
    j["verdict"] = "unknown";
    j["reason"] = to_string(un.reason);
    j["detail"] = un.detail;
    text << "verdict: unknown\nreason: " << to_string(un.reason) << " " << un.detail << '\n';
  }
  OracleCounters c;
  c.reach_stats = stats;
  j["provenance"] = json{{"oracle_calls", counters_json(c)}, {"budgets", budgets_json(s)}};
  emit(out, s, j, text.str());
  return is_unknown(v) ? 2 : 0;
}

int cmd_minbasis(const Settings& s, std::ostream& out, std::ostream&) {
  PetriNet net = load_net(s);
  Budget budget = budget_of(s);
  OracleCounters counters;
  std::string kind = "dc";
  UpwardOracle oracle{net.dim(), [&](const PartialVector& x) { return dc_oracle(net, x, budget, &counters); }};
  std::vector<Vector> periods;
  if (!s.linear_path.empty()) {
    SemilinearSet l = load_set(s.linear_path, net.dim());
    if (l.size() != 1) throw ParseError(1, 1, "--linear expects exactly one linear component");
    periods = l.components().front().periods();
    kind = "dcb";
    oracle = UpwardOracle{net.dim() + periods.size(), [&](const PartialVector& p) {
                            return dcb_oracle(net, periods, p, budget, &counters);
                          }};
  }
  VjStats st;
  VjOutcome res = min_basis(oracle, &st);
  counters.cache_hits = st.cache_hits;
  json j{{"set", kind}};
  std::ostringstream text;
  int code = 0;
  if (auto* b = std::get_if<MinBasis>(&res)) {
    j["verdict"] = "basis";
    j["basis"] = basis_json(*b);
    text << "MIN(" << (kind == "dc" ? "DC" : "DCB") << "):";
    if (b->elements.empty()) text << " (empty)";
    for (const auto& e : b->elements) text << ' ' << to_string(e);
    text << '\n';
  } else {
    const auto& inc = std::get<Inconclusive>(res);
    j["verdict"] = "unknown";
    j["blocking_query"] = partial_json(inc.query);
    text << "inconclusive at query " << inc.query.to_string() << '\n';
    code = 2;
  }
  j["provenance"] = json{{"oracle_calls", counters_json(counters)},
                         {"vj", json{{"iterations", st.iterations}, {"queries", st.oracle_calls}}},
                         {"budgets", budgets_json(s)}};
  text << counters_text(counters);
  emit(out, s, j, text.str());
  return code;
}

int cmd_simulate(const Settings& s, std::ostream& out, std::ostream&) {
  PetriNet net = load_net(s);
  Vector init = parse_config(s.init, net.dim());
  Simulation sim = simulate(net, init, s.steps, s.seed);
  json j{{"verdict", sim.deadlock ? "deadlock" : "completed"}, {"trace", trace_json(net, sim.trace)},
         {"deadlock", sim.deadlock},
         {"provenance", json{{"seed", s.seed}, {"steps_requested", s.steps}}}};
  std::ostringstream text;
  text << to_string(sim.trace.start);
  Configuration cur = sim.trace.start;
  for (std::size_t st : sim.trace.steps) {
    cur = fire(net, cur, st);
    text << " -" << net.action(st).name << "-> " << to_string(cur);
  }
  text << '\n';
  if (sim.deadlock) text << "deadlock at " << to_string(sim.trace.end) << '\n';
  emit(out, s, j, text.str());
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  if (const char* env = std::getenv("PNHS_BUDGET")) {
    try {
      s.node_budget = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: PNHS_BUDGET is not a number\n";
      return 1;
    }
  }

  CLI::App app{"Semilinear home-space analysis for Petri nets", "pnhs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version);
  auto common = [&](CLI::App* c) {
    c->add_option("--net", s.net_path, "net file")->required();
    c->add_option("--node-budget", s.node_budget, "nodes per reachability query")
        ->check(CLI::PositiveNumber);
    c->add_option("--time-budget-secs", s.time_budget_secs, "wall-clock cap per reachability query")
        ->check(CLI::PositiveNumber);
    c->add_option("--format", s.format, "output format")->check(CLI::IsMember({"text", "json"}));
    c->add_option("--seed", s.seed, "random seed");
  };
  auto* check_cmd = app.add_subcommand("check", "decide whether H is a home-space for X");
  common(check_cmd);
  check_cmd->add_option("--from", s.from_path, "semilinear file for X")->required();
  check_cmd->add_option("--home,--to", s.to_path, "semilinear file for H")->required();

  auto* witness_cmd = app.add_subcommand("witness", "non-home-space witness for a linear set");
  common(witness_cmd);
  witness_cmd->add_option("--linear", s.linear_path, "single-component semilinear file")
      ->required();

  auto* reach_cmd = app.add_subcommand("reach", "reachability between semilinear sets");
  common(reach_cmd);
  reach_cmd->add_option("--from", s.from_path, "source set")->required();
  reach_cmd->add_option("--to,--home", s.to_path, "target set")->required();

  auto* minbasis_cmd = app.add_subcommand("minbasis", "MIN(DC), or MIN(DCB) for the periods of --linear");
  common(minbasis_cmd);
  minbasis_cmd->add_option("--linear", s.linear_path, "linear set whose periods define DCB");

  auto* simulate_cmd = app.add_subcommand("simulate", "random walk from a configuration");
  common(simulate_cmd);
  simulate_cmd->add_option("--init", s.init, "initial configuration, e.g. \"1 0\"")->required();
  simulate_cmd->add_option("--steps", s.steps, "maximum number of steps");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (check_cmd->parsed()) return cmd_check(s, out, err);
    if (witness_cmd->parsed()) return cmd_witness(s, out, err);
    if (reach_cmd->parsed()) return cmd_reach(s, out, err);
    if (minbasis_cmd->parsed()) return cmd_minbasis(s, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(s, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace pnhs
