// Command line front end. Every verb is a thin wrapper: parse, call the
// library, render. Exit codes: 0 success or affirmative answer, 1 negative
// answer, 2 parse error, 3 invariant violation, 4 search budget exceeded.
#include "smgame/bidding.hpp"
#include "smgame/coalition.hpp"
#include "smgame/dynamic.hpp"
#include "smgame/engine.hpp"
#include "smgame/oracle.hpp"
#include "smgame/threats.hpp"
#include "smgame/ttc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace smgame;

constexpr int kAffirmative = 0;
constexpr int kNegative = 1;
constexpr int kParseTrouble = 2;
constexpr int kInvariantTrouble = 3;
constexpr int kBudgetTrouble = 4;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ParsedFile load(const std::string& path) {
  return parse_instance_text(slurp(path));
}

std::string bname(const Instance& inst, BoyId b) {
  return "b" + std::to_string(b - 1 + inst.base);
}

std::string gname(const Instance& inst, GirlId g) {
  return "g" + std::to_string(g - 1 + inst.base);
}

int internal_id(int raw, const Instance& inst) { return raw - inst.base + 1; }

// "2,3,10" in the file's id base to internal ids.
std::vector<int> internal_ids(const std::string& raw, const Instance& inst) {
  std::vector<int> out;
  std::istringstream in(raw);
  for (std::string part; std::getline(in, part, ',');)
    if (!part.empty()) out.push_back(internal_id(std::stoi(part), inst));
  return out;
}

std::string cycle_line(const Instance& inst, const TradingCycle& cycle) {
  std::string out = gname(inst, cycle.front().from_girl);
  for (const TradeStep& step : cycle)
    out += "|" + bname(inst, step.boy) + "->" + gname(inst, step.to_girl);
  return out;
}

std::string bid_event_lines(const BidInstance& market, const BidTrace& trace) {
  const Instance& inst = market.base;
  std::string out;
  std::vector<BoyId> holder(inst.n + 1, 0);
  for (size_t i = 0; i < trace.events.size(); ++i) {
    const BidEvent& e = trace.events[i];
    out += bname(inst, e.boy) + "->" + gname(inst, e.girl) + "@" +
           std::to_string(e.quote);
    if (e.kind == BidEventKind::Requote) out += " (requote)";
    if (e.holds) {
      holder[e.girl] = e.boy;
    } else {
      // A lost requote is decided by the proposal right behind it.
      BoyId victor = e.kind == BidEventKind::Requote ? trace.events[i + 1].boy
                                                     : holder[e.girl];
      out += "(" + bname(inst, victor) + ")";
    }
    out += "\n";
  }
  return out;
}

std::string coalition_pass_lines(const Instance& inst,
                                 const CoalitionStableResult& res) {
  std::string out;
  for (size_t i = 0; i < res.iterations.size(); ++i) {
    out += "pass " + std::to_string(i + 1) + ": settled";
    for (auto [b, g] : res.iterations[i].fixed)
      out += " " + bname(inst, b) + " " + gname(inst, g);
    out += "\n";
  }
  return out;
}

struct SolveOptions {
  std::string algo = "gs";
  std::string path = "-";
  bool trace = false;
  bool json = false;
};

int run_solve(const SolveOptions& opt) {
  ParsedFile pf = load(opt.path);
  const Instance& inst = pf.inst;
  Matching final;
  std::string trace_text;
  if (opt.algo == "gs") {
    PlayTrace tr = run_gale_shapley(inst);
    final = tr.final;
    trace_text = format_trace(tr);
  } else if (opt.algo == "coalition") {
    CoalitionStableResult res = coalition_stable_matching(inst);
    final = res.matching;
    trace_text = coalition_pass_lines(inst, res);
  } else if (opt.algo == "ttc") {
    std::vector<TradingCycle> applied;
    final = ttc_improve(inst, run_gale_shapley(inst).final, &applied);
    for (const TradingCycle& c : applied) trace_text += cycle_line(inst, c) + "\n";
  } else {
    BidInstance market = make_bid_instance(pf);
    BidTrace tr = run_bidding_gs(market);
    final = tr.final;
    trace_text = bid_event_lines(market, tr);
  }

  std::string matching_text = format_matching(inst, final);
  if (opt.json) {
    nlohmann::json doc;
    doc["algo"] = opt.algo;
    doc["matching"] = nlohmann::json::array();
    std::istringstream lines(matching_text);
    for (std::string line; std::getline(lines, line);) {
      auto cut = line.find(' ');
      doc["matching"].push_back({line.substr(0, cut), line.substr(cut + 1)});
    }
    if (opt.trace) {
      doc["trace"] = nlohmann::json::array();
      std::istringstream tl(trace_text);
      for (std::string line; std::getline(tl, line);) doc["trace"].push_back(line);
    }
    std::cout << doc.dump() << "\n";
    return kAffirmative;
  }
  std::cout << matching_text;
  if (opt.trace) std::cout << trace_text;
  return kAffirmative;
}

struct AnalyzeOptions {
  std::string mode;
  std::string path = "-";
  std::string matching_path;
  std::string coalition_path;
  bool expect_stable = false;
};

int run_analyze(const AnalyzeOptions& opt) {
  ParsedFile pf = load(opt.path);
  const Instance& inst = pf.inst;
  auto read_matching = [&]() {
    if (opt.matching_path.empty()) return run_gale_shapley(inst).final;
    std::istringstream in(slurp(opt.matching_path));
    return parse_matching(inst, in);
  };

  if (opt.mode == "hopeless") {
    auto pairs = hopeless_pairs(run_gale_shapley(inst));
    std::sort(pairs.begin(), pairs.end());
    for (auto [b, g] : pairs)
      std::cout << bname(inst, b) << " " << gname(inst, g) << "\n";
    return kAffirmative;
  }
  if (opt.mode == "blocking") {
    auto pairs = blocking_pairs(inst, read_matching());
    for (const BlockingPair& p : pairs)
      std::cout << bname(inst, p.boy) << " " << gname(inst, p.girl) << "\n";
    return opt.expect_stable && !pairs.empty() ? kNegative : kAffirmative;
  }
  if (opt.mode == "cycles") {
    for (const TradingCycle& c : find_trading_cycles(inst, read_matching()))
      std::cout << cycle_line(inst, c) << "\n";
    return kAffirmative;
  }
  // vetoes
  if (opt.coalition_path.empty())
    throw std::invalid_argument("vetoes needs --coalition with a pairs file");
  std::istringstream in(slurp(opt.coalition_path));
  Matching pairs = parse_matching(inst, in);
  std::map<BoyId, GirlId> promise;
  for (BoyId b = 1; b <= inst.n; ++b)
    if (pairs.girl_of[b]) promise[b] = pairs.girl_of[b];
  Coalition coalition = make_coalition(promise);
  auto direct = direct_vetoers(inst, coalition);
  auto legitimate = legitimate_vetoers(inst, coalition);
  auto print = [&](const char* label, const std::vector<BoyId>& vetoers) {
    std::cout << label << ":";
    if (vetoers.empty()) std::cout << " none";
    for (BoyId b : vetoers) std::cout << " " << bname(inst, b);
    std::cout << "\n";
  };
  print("direct", direct);
  print("legitimate", legitimate);
  return opt.expect_stable && !direct.empty() ? kNegative : kAffirmative;
}

struct ThreatsOptions {
  std::string mode;
  std::string path = "-";
  int boy = 0, girl = 0;
  std::uint64_t budget = 1'000'000;
  std::string boys, girls, externals;
};

int run_threats(const ThreatsOptions& opt) {
  ParsedFile pf = load(opt.path);
  const Instance& inst = pf.inst;
  AugmentedInstance aug = pf.aug ? *pf.aug : default_augmented(inst);

  if (opt.mode == "feasible") {
    FeasibleResult res = is_outcome_feasible(aug, internal_id(opt.boy, inst),
                                             internal_id(opt.girl, inst), opt.budget);
    std::cout << "nodes: " << res.nodes << "\n";
    switch (res.verdict) {
      case Feasibility::BudgetExceeded:
        std::cout << "verdict: budget-exceeded\n";
        return kBudgetTrouble;
      case Feasibility::NotFound:
        std::cout << "verdict: not-found\n";
        return kNegative;
      case Feasibility::Feasible:
        break;
    }
    std::cout << "verdict: feasible\norder:";
    for (BoyId b : res.state.order) std::cout << " " << bname(inst, b);
    std::cout << "\n" << format_matching(inst, res.outcome);
    return kAffirmative;
  }
  if (opt.mode == "satisfiable") {
    if (auto m = satisfiable_all(aug)) {
      std::cout << "satisfiable\n" << format_matching(inst, *m);
      return kAffirmative;
    }
    std::cout << "unsatisfiable\n";
    return kNegative;
  }
  // control
  ControlQuery query;
  for (int b : internal_ids(opt.boys, inst)) query.boys.insert(b);
  for (int g : internal_ids(opt.girls, inst)) query.girls.insert(g);
  for (int b : internal_ids(opt.externals, inst)) query.externals.insert(b);
  ControlResult res = has_control(inst, query);
  if (!res.held) {
    std::cout << "lost\n";
    return kNegative;
  }
  std::cout << "held\n" << format_matching(inst, res.witness);
  return kAffirmative;
}

struct SimulateOptions {
  std::string path = "-";
  std::string script_path;
  bool trace = false;
};

int run_simulate(const SimulateOptions& opt) {
  ParsedFile pf = load(opt.path);
  Script script;
  if (!opt.script_path.empty())
    script = parse_script_text(slurp(opt.script_path), pf.inst.base);
  ConcurrentTrace trace = run_dynamic(pf.inst, script);
  if (opt.trace) std::cout << format_play(to_play(trace), pf.inst.base);
  std::cout << format_matching(pf.inst, trace.final);
  return kAffirmative;
}

struct OracleOptions {
  std::string mode;
  std::string path = "-";
  int max_n = 0;  // 0 = the library default for the mode
  std::string space = "all";
  int boy = 0;
};

int run_oracle(const OracleOptions& opt) {
  ParsedFile pf = load(opt.path);
  const Instance& inst = pf.inst;
  if (opt.mode == "dag") {
    GameDag dag = enumerate_game_dag(inst, opt.max_n ? opt.max_n : 4);
    std::cout << "nodes: " << dag.total_nodes << "\n"
              << "terminals: " << dag.total_terminals << "\n"
              << "reachable: " << dag.reachable_nodes << "\n"
              << "reachable-terminals: " << dag.reachable_terminals << "\n"
              << "edges: " << dag.edges << "\n"
              << "acyclic: " << (dag.acyclic ? "yes" : "no") << "\n";
    return kAffirmative;
  }
  int cap = opt.max_n ? opt.max_n : 5;
  if (opt.mode == "worst") {
    GirlId g = worst_case_outcome(inst, internal_id(opt.boy, inst), cap);
    std::cout << bname(inst, internal_id(opt.boy, inst)) << " " << gname(inst, g)
              << "\n";
    return kAffirmative;
  }
  ProfileSpace space =
      opt.space == "conservative" ? ProfileSpace::Conservative : ProfileSpace::All;
  OutcomeAtlas atlas = enumerate_static_outcomes(inst, space, cap);
  std::cout << "combinations: " << atlas.combinations() << "\n"
            << "outcomes: " << atlas.matchings.size() << "\n";
  for (BoyId b = 1; b <= inst.n; ++b)
    std::cout << bname(inst, b) << ": best " << gname(inst, atlas.best[b])
              << " worst " << gname(inst, atlas.worst[b]) << "\n";
  return kAffirmative;
}

struct GenOptions {
  std::string mode;
  int n = 0;
  std::uint64_t seed = 1;
};

int run_gen(const GenOptions& opt) {
  ParsedFile pf = opt.mode == "inferno" ? gen_inferno(opt.n) : gen_random(opt.n, opt.seed);
  std::cout << write_instance(pf);
  return kAffirmative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable marriage market toolbox"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand("solve", "Run a matching algorithm");
  solve->add_option("--algo", solve_opt.algo, "gs | coalition | ttc | bidding")
      ->check(CLI::IsMember({"gs", "coalition", "ttc", "bidding"}));
  solve->add_flag("--trace", solve_opt.trace, "append the full trace");
  solve->add_flag("--json", solve_opt.json, "structured output");
  solve->add_option("file", solve_opt.path, "instance file, - for stdin");

  AnalyzeOptions analyze_opt;
  CLI::App* analyze = app.add_subcommand("analyze", "Inspect a market");
  analyze->add_option("mode", analyze_opt.mode, "hopeless | blocking | vetoes | cycles")
      ->required()
      ->check(CLI::IsMember({"hopeless", "blocking", "vetoes", "cycles"}));
  analyze->add_option("--matching", analyze_opt.matching_path,
                      "pairs file; engine output when omitted");
  analyze->add_option("--coalition", analyze_opt.coalition_path,
                      "pairs file naming the coalition promises");
  analyze->add_flag("--expect-stable", analyze_opt.expect_stable,
                    "exit 1 when violations exist");
  analyze->add_option("file", analyze_opt.path, "instance file, - for stdin");

  ThreatsOptions threats_opt;
  CLI::App* threats = app.add_subcommand("threats", "Coalition and feasibility analysis");
  threats->add_option("mode", threats_opt.mode, "feasible | satisfiable | control")
      ->required()
      ->check(CLI::IsMember({"feasible", "satisfiable", "control"}));
  threats->add_option("--boy", threats_opt.boy, "target boy id");
  threats->add_option("--girl", threats_opt.girl, "target girl id");
  threats->add_option("--budget", threats_opt.budget, "search node budget");
  threats->add_option("--boys", threats_opt.boys, "coalition boy ids, comma separated");
  threats->add_option("--girls", threats_opt.girls, "held girl ids, comma separated");
  threats->add_option("--externals", threats_opt.externals,
                      "rival boy ids, comma separated");
  threats->add_option("file", threats_opt.path, "instance file, - for stdin");

  SimulateOptions simulate_opt;
  CLI::App* simulate = app.add_subcommand("simulate", "Simultaneous-rounds play");
  simulate->add_option("--script", simulate_opt.script_path, "strategy script file");
  simulate->add_flag("--trace", simulate_opt.trace, "print the play text");
  simulate->add_option("file", simulate_opt.path, "instance file, - for stdin");

  OracleOptions oracle_opt;
  CLI::App* oracle = app.add_subcommand("oracle", "Small-market brute force");
  oracle->add_option("mode", oracle_opt.mode, "atlas | dag | worst")
      ->required()
      ->check(CLI::IsMember({"atlas", "dag", "worst"}));
  oracle->add_option("--max-n", oracle_opt.max_n, "enumeration cap override");
  oracle->add_option("--space", oracle_opt.space, "all | conservative")
      ->check(CLI::IsMember({"all", "conservative"}));
  oracle->add_option("--boy", oracle_opt.boy, "boy id for worst");
  oracle->add_option("file", oracle_opt.path, "instance file, - for stdin");

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen", "Emit a generated instance");
  gen->add_option("mode", gen_opt.mode, "random | inferno")
      ->required()
      ->check(CLI::IsMember({"random", "inferno"}));
  gen->add_option("--n", gen_opt.n, "market size")->required();
  gen->add_option("--seed", gen_opt.seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kParseTrouble;
  }

  try {
    if (solve->parsed()) return run_solve(solve_opt);
    if (analyze->parsed()) return run_analyze(analyze_opt);
    if (threats->parsed()) return run_threats(threats_opt);
    if (simulate->parsed()) return run_simulate(simulate_opt);
    if (oracle->parsed()) return run_oracle(oracle_opt);
    return run_gen(gen_opt);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kParseTrouble;
  } catch (const std::logic_error& e) {
    std::cerr << e.what() << "\n";
    return kInvariantTrouble;
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kParseTrouble;
  }
}
