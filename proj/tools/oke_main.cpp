// Command-line front end: exposes parsing, reduction, regression, entailment
// (pipeline and brute-force oracle), the statistical decision procedure, and
// the built-in card-game demonstration.
//
// Exit codes: 0 success / entailed / Accept; 1 not entailed / Reject;
// 2 usage, parse, or validation errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "oke/errors.hpp"
#include "oke/formula.hpp"
#include "oke/pac.hpp"
#include "oke/propcore.hpp"
#include "oke/reduction.hpp"
#include "oke/regression.hpp"
#include "oke/scenario.hpp"
#include "oke/semantics.hpp"

namespace {

using nlohmann::json;

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw oke::ValidationError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --scenario takes the literal name "cardgame" or a scenario file path.
oke::Scenario resolveScenario(const std::string& ref) {
  if (ref == "cardgame") return oke::cardGameScenario();
  return oke::loadScenario(readFile(ref));
}

oke::ReductionMode parseMode(const std::string& mode) {
  if (mode == "res") return oke::ReductionMode::ResSubstitution;
  if (mode == "implication") return oke::ReductionMode::ImplicationForm;
  throw oke::ValidationError("unknown reduction mode '" + mode + "' (use res or implication)");
}

void emit(const json& record, const std::string& format) {
  if (format == "json") {
    std::cout << record.dump(2) << "\n";
    return;
  }
  // Text rendering: every command stores its printable lines under "text".
  for (const auto& line : record.at("text")) {
    std::cout << line.get<std::string>() << "\n";
  }
}

json baseRecord(const std::string& command) {
  json j;
  j["command"] = command;
  return j;
}

struct CommonOpts {
  std::string scenario = "cardgame";
  std::string format = "text";
  std::string mode = "res";
};

void addCommon(CLI::App* cmd, CommonOpts& opts, bool withMode = true) {
  cmd->add_option("--scenario", opts.scenario,
                  "Scenario file path, or 'cardgame' for the built-in example");
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  if (withMode) {
    cmd->add_option("--mode", opts.mode, "Reduction mode")
        ->check(CLI::IsMember({"res", "implication"}));
  }
}

std::string decisionName(oke::Decision d) {
  return d == oke::Decision::Accept ? "Accept" : "Reject";
}

int runParse(const CommonOpts& opts, const std::string& query) {
  oke::Scenario s = resolveScenario(opts.scenario);
  oke::Formula f = oke::parse(query, s.parseOptions());
  json j = baseRecord("parse");
  j["query"] = query;
  j["rendered"] = oke::render(f);
  j["objective"] = f.isObjective();
  j["text"] = {oke::render(f)};
  emit(j, opts.format);
  return 0;
}

int runReduce(const CommonOpts& opts, const std::string& query, bool dimacs) {
  oke::Scenario s = resolveScenario(opts.scenario);
  oke::Formula f = oke::parse(query, s.parseOptions());
  oke::ReducedQuery r = oke::represent(f, s, parseMode(opts.mode));
  json j = baseRecord("reduce");
  j["query"] = query;
  j["mode"] = opts.mode;
  j["reduced"] = oke::render(r.objectiveResult);
  std::vector<std::string> lines{oke::render(r.objectiveResult)};
  if (dimacs) {
    std::ostringstream out;
    oke::writeDimacs(oke::toClauses(r.objectiveResult), out);
    j["dimacs"] = out.str();
    lines.push_back(out.str());
  }
  j["text"] = lines;
  emit(j, opts.format);
  return 0;
}

int runRegress(const CommonOpts& opts, const std::string& query) {
  oke::Scenario s = resolveScenario(opts.scenario);
  oke::Formula f = oke::parse(query, s.parseOptions());
  oke::Formula r = oke::regress(f, s);
  json j = baseRecord("regress");
  j["query"] = query;
  j["regressed"] = oke::render(r);
  j["text"] = {oke::render(r)};
  emit(j, opts.format);
  return 0;
}

int runEntail(const CommonOpts& opts, const std::string& query,
              const std::string& action) {
  oke::Scenario s = resolveScenario(opts.scenario);
  oke::Formula f = oke::parse(query, s.parseOptions());
  oke::ReductionMode mode = parseMode(opts.mode);
  bool entailed = false;
  if (!action.empty()) {
    entailed = oke::checkDynamicEntailment(s, oke::ActionId{action}, f, mode);
  } else {
    entailed = oke::decideQuery(s, oke::regress(f, s), mode);
  }
  json j = baseRecord("entail");
  j["query"] = query;
  j["action"] = action.empty() ? json(nullptr) : json(action);
  j["mode"] = opts.mode;
  j["entailed"] = entailed;
  j["text"] = {entailed ? "entailed" : "not entailed"};
  emit(j, opts.format);
  return entailed ? 0 : 1;
}

int runOracle(const CommonOpts& opts, const std::string& query) {
  oke::Scenario s = resolveScenario(opts.scenario);
  oke::Formula f = oke::parse(query, s.parseOptions());
  bool entailed = oke::bruteForceEntails(s, f);
  json j = baseRecord("oracle");
  j["query"] = query;
  j["entailed"] = entailed;
  j["text"] = {entailed ? "entailed" : "not entailed"};
  emit(j, opts.format);
  return entailed ? 0 : 1;
}

int runDecidePac(const CommonOpts& opts, const std::string& query,
                 const std::string& obsPath, double epsilon,
                 std::optional<double> gamma, std::optional<double> delta) {
  oke::Scenario s = resolveScenario(opts.scenario);
  oke::Formula alpha = oke::parse(query, s.parseOptions());
  std::vector<oke::Observation> obs = oke::loadObservations(readFile(obsPath), s);
  oke::Verdict v = oke::decidePAC(s, alpha, obs, epsilon);

  json j = baseRecord("decide-pac");
  j["query"] = query;
  j["decision"] = decisionName(v.decision);
  j["m"] = v.m;
  j["b"] = v.b;
  j["failed"] = v.failed;
  j["epsilon"] = epsilon;
  j["gamma"] = gamma ? json(*gamma) : json(nullptr);
  j["delta"] = delta ? json(*delta) : json(nullptr);
  j["seed"] = nullptr;  // this command consumes observations, it draws nothing
  j["per_observation"] = v.perObservation;
  std::ostringstream checks;
  for (bool ok : v.perObservation) checks << (ok ? " pass" : " fail");
  j["text"] = {"decision: " + decisionName(v.decision),
               "m: " + std::to_string(v.m) + "  b: " + std::to_string(v.b) +
                   "  failed: " + std::to_string(v.failed),
               "checks:" + checks.str()};
  emit(j, opts.format);
  return v.decision == oke::Decision::Accept ? 0 : 1;
}

int runEstimate(const CommonOpts& opts, const std::string& query, int trials,
                std::optional<double> maskQ, const std::vector<std::string>& menu,
                std::uint64_t seed) {
  oke::Scenario s = resolveScenario(opts.scenario);
  oke::Formula alpha = oke::parse(query, s.parseOptions());

  oke::MaskSpec spec = oke::MaskSpec::perAtomReveal(1.0, seed);
  json maskJson;
  if (maskQ && !menu.empty()) {
    throw oke::ValidationError("--mask-q and --mask-menu are mutually exclusive");
  }
  if (!menu.empty()) {
    std::vector<oke::ActionId> actions;
    for (const std::string& name : menu) actions.push_back(oke::ActionId{name});
    spec = oke::MaskSpec::actionMenu(std::move(actions), seed);
    maskJson = {{"mode", "action-menu"}, {"actions", menu}};
  } else {
    double q = maskQ.value_or(1.0);
    spec = oke::MaskSpec::perAtomReveal(q, seed);
    maskJson = {{"mode", "per-atom-reveal"}, {"q", q}};
  }

  oke::WorldDistribution d = oke::WorldDistribution::uniformOver(oke::premiseWorlds(s));
  double estimate = oke::estimateValidity(s, alpha, d, spec, trials);

  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", estimate);
  json j = baseRecord("estimate");
  j["query"] = query;
  j["trials"] = trials;
  j["estimate"] = estimate;
  j["seed"] = seed;
  j["mask"] = maskJson;
  j["text"] = {std::string("estimate: ") + buf,
               "trials: " + std::to_string(trials) + "  seed: " + std::to_string(seed)};
  emit(j, opts.format);
  return 0;
}

struct DemoRow {
  std::string label;
  std::string query;
  bool expected;
};

int runDemo(const CommonOpts& opts) {
  const oke::Scenario& s = oke::cardGameScenario();
  // The seven entailments that hold in the card game, then three control
  // queries that must fail: knowing the own card before sensing, knowing a
  // loss that did not happen, and attributing the sensed card to the other
  // agent's knowledge.
  const std::vector<DemoRow> rows = {
      {"1", "!K_A na1 & !K_A na2 & !K_A na3 & !K_A na4", true},
      {"2", "[rho_a4] K_A na4", true},
      {"3", "[rho_a4] K_A !nb4", true},
      {"4", "[rho_a4] K_A !K_B na1", true},
      {"5", "[rho_a4] K_A K_B (K_A na1 | K_A !na1)", true},
      {"6", "[rho_a4] (K_A wa & K_A !K_B wa)", true},
      {"7", "[rho_a4_b3] K_A K_B !nb4", true},
      {"N1", "K_A na4", false},
      {"N2", "[rho_a4] K_A wb", false},
      {"N3", "[rho_a4] K_A K_B na4", false},
  };

  json j = baseRecord("demo-cardgame");
  json rowsJson = json::array();
  std::vector<std::string> lines;
  lines.push_back(" row  expected  pipeline  oracle  status  query");
  bool allPass = true;
  for (const DemoRow& row : rows) {
    oke::Formula f = oke::parse(row.query, s.parseOptions());
    bool pipeline = oke::decideQuery(s, oke::regress(f, s));
    bool oracle = oke::bruteForceEntails(s, f);
    bool pass = pipeline == row.expected && oracle == row.expected;
    allPass = allPass && pass;
    auto word = [](bool v) { return v ? std::string("true ") : std::string("false"); };
    char line[256];
    std::snprintf(line, sizeof(line), " %-4s %-9s %-9s %-7s %-7s %s",
                  row.label.c_str(), word(row.expected).c_str(),
                  word(pipeline).c_str(), word(oracle).c_str(),
                  pass ? "ok" : "MISMATCH", row.query.c_str());
    lines.push_back(line);
    rowsJson.push_back({{"row", row.label},
                        {"query", row.query},
                        {"expected", row.expected},
                        {"pipeline", pipeline},
                        {"oracle", oracle},
                        {"pass", pass}});
  }
  lines.push_back(allPass ? "all rows agree on both engines"
                          : "MISMATCH: see rows above");
  j["rows"] = rowsJson;
  j["all_pass"] = allPass;
  j["text"] = lines;
  emit(j, opts.format);
  return allPass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epistemic entailment and statistical query decision toolkit"};
  app.require_subcommand(1);

  CommonOpts parseOpts, reduceOpts, regressOpts, entailOpts, oracleOpts,
      pacOpts, estOpts, demoOpts;
  std::string query, action, obsPath;
  bool dimacs = false;
  double epsilon = 0.0;
  std::optional<double> gamma, delta, maskQ;
  int trials = 10000;
  std::uint64_t seed = 0;
  std::vector<std::string> menu;
  bool strict = false;

  CLI::App* cmdParse = app.add_subcommand("parse", "Parse a formula and print it back");
  addCommon(cmdParse, parseOpts, false);
  cmdParse->add_option("--query", query, "Formula to parse")->required();

  CLI::App* cmdReduce =
      app.add_subcommand("reduce", "Compile a dynamic-free query to objective form");
  addCommon(cmdReduce, reduceOpts);
  cmdReduce->add_option("--query", query, "Query formula")->required();
  cmdReduce->add_flag("--dimacs", dimacs, "Also print the clause form as DIMACS CNF");

  CLI::App* cmdRegress =
      app.add_subcommand("regress", "Rewrite dynamic observation operators away");
  addCommon(cmdRegress, regressOpts, false);
  cmdRegress->add_option("--query", query, "Query formula")->required();

  CLI::App* cmdEntail =
      app.add_subcommand("entail", "Decide whether the scenario premise entails the query");
  addCommon(cmdEntail, entailOpts);
  cmdEntail->add_option("--query", query, "Query formula")->required();
  cmdEntail->add_option("--action", action,
                        "Decide 'after this action, the root agent knows the query'");

  CLI::App* cmdOracle = app.add_subcommand(
      "oracle", "Decide the query by exhaustive model checking (slow, independent path)");
  addCommon(cmdOracle, oracleOpts, false);
  cmdOracle->add_option("--query", query, "Query formula")->required();

  CLI::App* cmdPac = app.add_subcommand(
      "decide-pac", "Accept or reject a query from a file of observations");
  addCommon(cmdPac, pacOpts, false);
  cmdPac->add_option("--query", query, "Query formula")->required();
  cmdPac->add_option("--obs", obsPath, "Observation file")->required();
  cmdPac->add_option("--epsilon", epsilon, "Tolerated invalidity rate")->required();
  auto* gammaOpt = cmdPac->add_option("--gamma", "Accuracy margin (echoed in output)");
  auto* deltaOpt = cmdPac->add_option("--delta", "Confidence bound (echoed in output)");

  CLI::App* cmdEst = app.add_subcommand(
      "estimate", "Monte-Carlo estimate of the witnessed validity of a query");
  addCommon(cmdEst, estOpts, false);
  cmdEst->add_option("--query", query, "Query formula")->required();
  cmdEst->add_option("--trials", trials, "Number of sampled observations");
  auto* maskQOpt = cmdEst->add_option("--mask-q", "Per-atom reveal probability");
  cmdEst->add_option("--mask-menu", menu, "Comma-separated action menu")->delimiter(',');
  auto* seedOpt = cmdEst->add_option("--seed", seed, "Generator seed");
  cmdEst->add_flag("--strict", strict, "Fail unless --seed is given explicitly");

  CLI::App* cmdDemo = app.add_subcommand(
      "demo-cardgame", "Run the card-game properties through pipeline and oracle");
  addCommon(cmdDemo, demoOpts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      return app.exit(e);
    }
    app.exit(e);
    return 2;
  }

  try {
    if (cmdParse->parsed()) return runParse(parseOpts, query);
    if (cmdReduce->parsed()) return runReduce(reduceOpts, query, dimacs);
    if (cmdRegress->parsed()) return runRegress(regressOpts, query);
    if (cmdEntail->parsed()) return runEntail(entailOpts, query, action);
    if (cmdOracle->parsed()) return runOracle(oracleOpts, query);
    if (cmdPac->parsed()) {
      if (gammaOpt->count()) gamma = gammaOpt->as<double>();
      if (deltaOpt->count()) delta = deltaOpt->as<double>();
      return runDecidePac(pacOpts, query, obsPath, epsilon, gamma, delta);
    }
    if (cmdEst->parsed()) {
      if (strict && seedOpt->count() == 0) {
        throw oke::ValidationError("--strict requires an explicit --seed");
      }
      if (maskQOpt->count()) maskQ = maskQOpt->as<double>();
      return runEstimate(estOpts, query, trials, maskQ, menu, seed);
    }
    if (cmdDemo->parsed()) return runDemo(demoOpts);
  } catch (const oke::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
