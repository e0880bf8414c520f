#include "oke/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "oke/propcore.hpp"

namespace oke {

namespace {

std::string trim(std::string s) {
  auto notSpace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notSpace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notSpace).base(), s.end());
  return s;
}

std::string stripComment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool validLowerName(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::islower(c) || std::isdigit(c) || c == '_';
  });
}

bool validAgentName(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

struct Section {
  std::string header;  // text inside the brackets
  int line = 0;
  std::vector<std::pair<int, std::string>> lines;  // non-empty body lines
};

std::vector<Section> splitSections(std::string_view text) {
  std::vector<Section> sections;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::string line = trim(stripComment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError("unterminated section header", lineNo, 1);
      }
      sections.push_back(Section{trim(line.substr(1, line.size() - 2)), lineNo, {}});
    } else {
      if (sections.empty()) {
        throw ParseError("content before the first section header", lineNo, 1);
      }
      sections.back().lines.emplace_back(lineNo, line);
    }
  }
  return sections;
}

std::string joinLines(const Section& s) {
  std::string out;
  for (const auto& [_, line] : s.lines) {
    if (!out.empty()) out += ' ';
    out += line;
  }
  return out;
}

// "key = value" within [agents] and [action ...] bodies.
std::pair<std::string, std::string> splitAssignment(const std::string& line, int lineNo) {
  auto eq = line.find('=');
  if (eq == std::string::npos) {
    throw ParseError("expected 'name = value'", lineNo, 1);
  }
  return {trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
}

Formula parseSectionFormula(const std::string& text, const std::string& where,
                            const ParseOptions& options) {
  try {
    return parse(text, options);
  } catch (const ParseError& e) {
    throw ValidationError("in [" + where + "]: " + e.what());
  }
}

}  // namespace

const Formula& Scenario::senseOf(const ActionId& a, const AgentId& i) const {
  static const Formula kTrue = Formula::truth();
  auto it = actions.find(a);
  if (it == actions.end()) {
    throw ValidationError("unknown action '" + a.name + "'");
  }
  auto entry = it->second.perAgent.find(i);
  return entry == it->second.perAgent.end() ? kTrue : entry->second;
}

ParseOptions Scenario::parseOptions() const {
  ParseOptions options;
  options.agents = {rootAgent.name, otherAgent.name};
  options.vocabulary = &atomVocabulary;
  options.actions = &actionNames;
  return options;
}

Scenario loadScenario(std::string_view text) {
  Scenario s;
  s.rootAgent = AgentId{"A"};
  s.otherAgent = AgentId{"B"};

  const Section* agentsSec = nullptr;
  const Section* atomsSec = nullptr;
  const Section* kbRootSec = nullptr;
  const Section* kbNestedSec = nullptr;
  const Section* realWorldSec = nullptr;
  std::vector<const Section*> actionSecs;

  std::vector<Section> sections = splitSections(text);
  auto claim = [](const Section*& slot, const Section& sec) {
    if (slot) {
      throw ValidationError("duplicate section [" + sec.header + "]");
    }
    slot = &sec;
  };
  for (const auto& sec : sections) {
    if (sec.header == "agents") {
      claim(agentsSec, sec);
    } else if (sec.header == "atoms") {
      claim(atomsSec, sec);
    } else if (sec.header == "kb_root") {
      claim(kbRootSec, sec);
    } else if (sec.header == "kb_nested") {
      claim(kbNestedSec, sec);
    } else if (sec.header == "real_world") {
      claim(realWorldSec, sec);
    } else if (sec.header.rfind("action", 0) == 0) {
      actionSecs.push_back(&sec);
    } else if (sec.header.rfind("kb_nested", 0) == 0) {
      throw ValidationError("section [" + sec.header +
                            "]: knowledge nesting deeper than kb_nested is not supported");
    } else {
      throw ValidationError("unknown section [" + sec.header + "]");
    }
  }

  if (agentsSec) {
    bool sawRoot = false, sawOther = false;
    for (const auto& [lineNo, line] : agentsSec->lines) {
      auto [key, value] = splitAssignment(line, lineNo);
      if (!validAgentName(value)) {
        throw ValidationError("invalid agent name '" + value + "'");
      }
      if (key == "root") {
        s.rootAgent = AgentId{value};
        sawRoot = true;
      } else if (key == "other") {
        s.otherAgent = AgentId{value};
        sawOther = true;
      } else {
        throw ValidationError(
            "two-agent engine: [agents] takes exactly 'root' and 'other', got '" +
            key + "'");
      }
    }
    if (!sawRoot || !sawOther) {
      throw ValidationError("[agents] must declare both root and other");
    }
  }
  if (s.rootAgent == s.otherAgent) {
    throw ValidationError("root and other agent must be distinct");
  }

  if (!atomsSec) {
    throw ValidationError("missing [atoms] section");
  }
  for (const auto& [lineNo, line] : atomsSec->lines) {
    std::istringstream words(line);
    std::string w;
    while (words >> w) {
      if (!validLowerName(w)) {
        throw ParseError("invalid atom name '" + w + "'", lineNo, 1);
      }
      s.atomVocabulary.insert(w);
    }
  }
  if (s.atomVocabulary.empty()) {
    throw ValidationError("[atoms] declares no atoms");
  }

  // Register actions before parsing formulas so queries can reference them.
  for (const auto* sec : actionSecs) {
    std::string name = trim(sec->header.substr(6));
    if (!validLowerName(name)) {
      throw ValidationError("invalid action name '" + name + "' in [" + sec->header + "]");
    }
    if (!s.actionNames.insert(name).second) {
      throw ValidationError("duplicate action '" + name + "'");
    }
    s.actions[ActionId{name}] = SensingEntry{};
  }

  ParseOptions options = s.parseOptions();

  auto parseKb = [&](const Section* sec, const char* name) {
    if (!sec) return Formula::truth();
    Formula f = parseSectionFormula(joinLines(*sec), name, options);
    if (!f.isObjective()) {
      throw ValidationError(std::string("[") + name + "] must be objective, got: " + render(f));
    }
    return f;
  };
  if (!kbRootSec) {
    throw ValidationError("missing [kb_root] section");
  }
  s.kbRoot = parseKb(kbRootSec, "kb_root");
  s.kbNested = parseKb(kbNestedSec, "kb_nested");
  s.realWorld = parseKb(realWorldSec, "real_world");

  for (const auto* sec : actionSecs) {
    std::string name = trim(sec->header.substr(6));
    SensingEntry& entry = s.actions.at(ActionId{name});
    for (const auto& [lineNo, line] : sec->lines) {
      auto [key, value] = splitAssignment(line, lineNo);
      if (key.rfind("obs_", 0) != 0) {
        throw ValidationError("in [" + sec->header + "]: expected obs_<agent> = <reading>");
      }
      std::string agent = key.substr(4);
      if (agent != s.rootAgent.name && agent != s.otherAgent.name) {
        throw ValidationError("in [" + sec->header + "]: unknown agent '" + agent + "'");
      }
      Formula reading = parseSectionFormula(value, sec->header, options);
      if (!reading.isConjunctionOfLiterals()) {
        throw ValidationError("in [" + sec->header + "]: reading for " + agent +
                              " must be a conjunction of literals or true");
      }
      entry.perAgent.insert_or_assign(AgentId{agent}, reading);
    }
  }

  Formula premise = Formula::conj(Formula::conj(s.kbRoot, s.kbNested), s.realWorld);
  if (!isSatisfiable(premise).satisfiable) {
    throw ValidationError("unsatisfiable premise: kb_root & kb_nested & real_world");
  }
  return s;
}

namespace {

std::string cardGameSource() {
  std::string kb =
      "(na1 | na2 | na3 | na4)\n"
      "& (nb1 | nb2 | nb3 | nb4)\n"
      "& !(na1 & na2) & !(na1 & na3) & !(na1 & na4)\n"
      "& !(na2 & na3) & !(na2 & na4) & !(na3 & na4)\n"
      "& !(nb1 & nb2) & !(nb1 & nb3) & !(nb1 & nb4)\n"
      "& !(nb2 & nb3) & !(nb2 & nb4) & !(nb3 & nb4)\n"
      "& !(na1 & nb1) & !(na2 & nb2) & !(na3 & nb3) & !(na4 & nb4)\n"
      "& (wa <-> (na2 & nb1) | (na3 & nb1) | (na4 & nb1)"
      " | (na3 & nb2) | (na4 & nb2) | (na4 & nb3))\n"
      "& (wb <-> (nb2 & na1) | (nb3 & na1) | (nb4 & na1)"
      " | (nb3 & na2) | (nb4 & na2) | (nb4 & na3))\n";

  std::string s;
  s += "# Two players each draw one of four numbered cards; the higher card wins.\n";
  s += "[agents]\nroot = A\nother = B\n\n";
  s += "[atoms]\nna1 na2 na3 na4\nnb1 nb2 nb3 nb4\nwa wb\n\n";
  s += "[kb_root]\n" + kb + "\n";
  s += "[kb_nested]\n" + kb + "\n";
  s += "[real_world]\nna4 & nb3\n\n";
  for (int i = 1; i <= 4; ++i) {
    s += "[action rho_a" + std::to_string(i) + "]\n";
    s += "obs_A = na" + std::to_string(i) + "\nobs_B = true\n\n";
  }
  for (int j = 1; j <= 4; ++j) {
    s += "[action rho_b" + std::to_string(j) + "]\n";
    s += "obs_A = true\nobs_B = nb" + std::to_string(j) + "\n\n";
  }
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      if (i == j) continue;
      s += "[action rho_a" + std::to_string(i) + "_b" + std::to_string(j) + "]\n";
      s += "obs_A = na" + std::to_string(i) + "\n";
      s += "obs_B = nb" + std::to_string(j) + "\n\n";
    }
  }
  return s;
}

}  // namespace

const Scenario& cardGameScenario() {
  static const Scenario s = loadScenario(cardGameSource());
  return s;
}

Observation makeRawObservation(const Formula& reading, const Scenario& s) {
  if (!reading.isConjunctionOfLiterals()) {
    throw ValidationError("observation must be a conjunction of literals or true, got: " +
                          render(reading));
  }
  // Readings may disagree with the current real world (they can come from
  // other rounds, or be noise), but never with what the root agent knows:
  // the procedures extend the knowledge base with them.
  if (!isSatisfiable(Formula::conj(s.kbRoot, reading)).satisfiable) {
    throw ValidationError("observation inconsistent with kb_root: " + render(reading));
  }
  return Observation{ActionId{"raw"}, reading};
}

std::vector<Observation> loadObservations(std::string_view text, const Scenario& s) {
  std::vector<Observation> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::string line = trim(stripComment(raw));
    if (line.empty()) continue;
    if (line.rfind("raw:", 0) == 0) {
      Formula reading = Formula::truth();
      try {
        reading = parse(line.substr(4), s.parseOptions());
      } catch (const ParseError& e) {
        throw ValidationError("observation line " + std::to_string(lineNo) + ": " + e.what());
      }
      out.push_back(makeRawObservation(reading, s));
    } else {
      if (!s.actionNames.count(line)) {
        throw ValidationError("observation line " + std::to_string(lineNo) +
                              ": unknown action '" + line + "'");
      }
      ActionId a{line};
      Observation obs{a, s.senseOf(a, s.rootAgent)};
      if (!isSatisfiable(Formula::conj(s.kbRoot, obs.revealed)).satisfiable) {
        throw ValidationError("observation line " + std::to_string(lineNo) +
                              ": reading inconsistent with kb_root");
      }
      out.push_back(std::move(obs));
    }
  }
  return out;
}

}  // namespace oke
