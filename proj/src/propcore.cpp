#include "oke/propcore.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <functional>

namespace oke {

namespace {

// Rewrites away the constants true/false so the clause builder only sees
// atoms and connectives. Input must be objective.
Formula foldConstants(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::True:
    case K::False:
      return f;
    case K::Not: {
      Formula c = foldConstants(f.child());
      if (c.kind() == K::True) return Formula::falsity();
      if (c.kind() == K::False) return Formula::truth();
      return Formula::negate(c);
    }
    case K::And: {
      Formula l = foldConstants(f.left());
      Formula r = foldConstants(f.right());
      if (l.kind() == K::False || r.kind() == K::False) return Formula::falsity();
      if (l.kind() == K::True) return r;
      if (r.kind() == K::True) return l;
      return Formula::conj(l, r);
    }
    case K::Or: {
      Formula l = foldConstants(f.left());
      Formula r = foldConstants(f.right());
      if (l.kind() == K::True || r.kind() == K::True) return Formula::truth();
      if (l.kind() == K::False) return r;
      if (r.kind() == K::False) return l;
      return Formula::disj(l, r);
    }
    case K::Implies: {
      Formula l = foldConstants(f.left());
      Formula r = foldConstants(f.right());
      if (l.kind() == K::False || r.kind() == K::True) return Formula::truth();
      if (l.kind() == K::True) return r;
      if (r.kind() == K::False) {
        if (l.kind() == K::True) return Formula::falsity();
        return Formula::negate(l);
      }
      return Formula::implies(l, r);
    }
    default:
      throw ScopeError("clause form requires an objective formula");
  }
}

// Variables are 1-based; [1 .. realAtomCount] are the formula's own atoms in
// lexicographic order, definition variables follow.
struct Cnf {
  std::vector<std::string> names;
  int realAtomCount = 0;
  std::vector<std::vector<int>> clauses;
};

// Polarity-aware definitional transform: each non-literal subformula gets a
// definition variable, with defining clauses emitted only for the polarities
// in which the subformula actually occurs.
class ClauseBuilder {
 public:
  explicit ClauseBuilder(const Formula& f) {
    std::set<std::string> atomSet = f.atoms();
    for (const auto& a : atomSet) {
      cnf_.names.push_back(a);
      atomVar_[a] = static_cast<int>(cnf_.names.size());
    }
    cnf_.realAtomCount = static_cast<int>(cnf_.names.size());
    cnf_.clauses.push_back({literalFor(f, true)});
  }

  Cnf take() { return std::move(cnf_); }

 private:
  int literalFor(const Formula& f, bool positively) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Atom:
        return atomVar_.at(f.atomName());
      case K::Not:
        return -literalFor(f.child(), !positively);
      default:
        break;
    }
    int v;
    auto it = defVar_.find(f.identity());
    if (it != defVar_.end()) {
      v = it->second;
    } else {
      cnf_.names.push_back("_t" + std::to_string(++auxCount_));
      v = static_cast<int>(cnf_.names.size());
      defVar_[f.identity()] = v;
    }
    auto key = std::make_pair(f.identity(), positively);
    if (emitted_.insert(key).second) define(f, v, positively);
    return v;
  }

  void define(const Formula& f, int v, bool positively) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::And:
        if (positively) {
          cnf_.clauses.push_back({-v, literalFor(f.left(), true)});
          cnf_.clauses.push_back({-v, literalFor(f.right(), true)});
        } else {
          cnf_.clauses.push_back(
              {v, -literalFor(f.left(), false), -literalFor(f.right(), false)});
        }
        break;
      case K::Or:
        if (positively) {
          cnf_.clauses.push_back(
              {-v, literalFor(f.left(), true), literalFor(f.right(), true)});
        } else {
          cnf_.clauses.push_back({v, -literalFor(f.left(), false)});
          cnf_.clauses.push_back({v, -literalFor(f.right(), false)});
        }
        break;
      case K::Implies:
        if (positively) {
          cnf_.clauses.push_back(
              {-v, -literalFor(f.left(), false), literalFor(f.right(), true)});
        } else {
          cnf_.clauses.push_back({v, literalFor(f.left(), true)});
          cnf_.clauses.push_back({v, -literalFor(f.right(), false)});
        }
        break;
      default:
        assert(false && "constants are folded away before clause building");
    }
  }

  Cnf cnf_;
  std::map<std::string, int> atomVar_;
  std::map<const void*, int> defVar_;
  std::set<std::pair<const void*, bool>> emitted_;
  int auxCount_ = 0;
};

// Complete backtracking search with unit propagation over the integer form.
class Solver {
 public:
  explicit Solver(const Cnf& cnf) : cnf_(cnf), value_(cnf.names.size() + 1, -1) {}

  bool solve() { return search(); }

  bool valueOf(int var) const { return value_[var] == 1; }

 private:
  // Returns false on conflict. Assignments land on the trail for undo.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : cnf_.clauses) {
        int unassigned = 0;
        int unit = 0;
        bool satisfied = false;
        for (int lit : clause) {
          int v = value_[std::abs(lit)];
          if (v == -1) {
            ++unassigned;
            unit = lit;
          } else if ((v == 1) == (lit > 0)) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(unit);
          changed = true;
        }
      }
    }
    return true;
  }

  bool search() {
    std::size_t mark = trail_.size();
    if (!propagate()) {
      undoTo(mark);
      return false;
    }
    int var = 0;
    for (std::size_t v = 1; v < value_.size(); ++v) {
      if (value_[v] == -1) {
        var = static_cast<int>(v);
        break;
      }
    }
    if (var == 0) return true;  // complete assignment, all clauses satisfied
    for (int lit : {var, -var}) {  // positive branch first
      std::size_t inner = trail_.size();
      assign(lit);
      if (search()) return true;
      undoTo(inner);
    }
    undoTo(mark);
    return false;
  }

  void assign(int lit) {
    value_[std::abs(lit)] = lit > 0 ? 1 : 0;
    trail_.push_back(std::abs(lit));
  }

  void undoTo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  const Cnf& cnf_;
  std::vector<signed char> value_;
  std::vector<int> trail_;
};

void requireObjective(const Formula& f, const char* op) {
  if (!f.isObjective()) {
    throw ScopeError(std::string(op) + " requires an objective formula, got: " +
                     render(f));
  }
}

}  // namespace

ClauseSet toClauses(const Formula& f) {
  requireObjective(f, "toClauses");
  Formula folded = foldConstants(f);
  ClauseSet out;
  if (folded.kind() == Formula::Kind::True) return out;
  if (folded.kind() == Formula::Kind::False) {
    out.clauses.push_back({});
    return out;
  }
  Cnf cnf = ClauseBuilder(folded).take();
  for (const auto& clause : cnf.clauses) {
    std::vector<Literal> lits;
    lits.reserve(clause.size());
    for (int lit : clause) {
      lits.push_back(Literal{cnf.names[std::abs(lit) - 1], lit > 0});
    }
    out.clauses.push_back(std::move(lits));
  }
  for (int v = cnf.realAtomCount; v < static_cast<int>(cnf.names.size()); ++v) {
    out.auxiliaries.insert(cnf.names[v]);
  }
  return out;
}

SatResult isSatisfiable(const Formula& f, const std::set<std::string>& extraVocabulary) {
  requireObjective(f, "isSatisfiable");
  SatResult result;
  Assignment witness;
  for (const auto& a : extraVocabulary) witness[a] = false;
  for (const auto& a : f.atoms()) witness[a] = false;

  Formula folded = foldConstants(f);
  if (folded.kind() == Formula::Kind::False) return result;
  if (folded.kind() == Formula::Kind::True) {
    result.satisfiable = true;
    result.witness = std::move(witness);
    return result;
  }

  Cnf cnf = ClauseBuilder(folded).take();
  Solver solver(cnf);
  if (!solver.solve()) return result;
  result.satisfiable = true;
  for (int v = 1; v <= cnf.realAtomCount; ++v) {
    witness[cnf.names[v - 1]] = solver.valueOf(v);
  }
  result.witness = std::move(witness);
  return result;
}

bool isValid(const Formula& f) {
  requireObjective(f, "isValid");
  return !isSatisfiable(Formula::negate(f)).satisfiable;
}

bool entails(const Formula& premise, const Formula& goal) {
  requireObjective(premise, "entails");
  requireObjective(goal, "entails");
  return isValid(Formula::implies(premise, goal));
}

void writeDimacs(const ClauseSet& cs, std::ostream& out) {
  std::map<std::string, int> var;
  std::vector<std::string> names;
  auto intern = [&](const std::string& atom) {
    auto [it, fresh] = var.try_emplace(atom, static_cast<int>(names.size()) + 1);
    if (fresh) names.push_back(atom);
    return it->second;
  };
  // Vocabulary atoms first, then definition variables, both in name order.
  std::set<std::string> vocab, aux;
  for (const auto& clause : cs.clauses) {
    for (const auto& lit : clause) {
      (cs.auxiliaries.count(lit.atom) ? aux : vocab).insert(lit.atom);
    }
  }
  for (const auto& a : vocab) intern(a);
  for (const auto& a : aux) intern(a);

  for (const auto& name : names) {
    out << "c " << var.at(name) << ' ' << name << '\n';
  }
  out << "p cnf " << names.size() << ' ' << cs.clauses.size() << '\n';
  for (const auto& clause : cs.clauses) {
    for (const auto& lit : clause) {
      out << (lit.positive ? "" : "-") << var.at(lit.atom) << ' ';
    }
    out << "0\n";
  }
}

}  // namespace oke
