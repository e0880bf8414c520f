#include "oke/formula.hpp"

#include <cassert>
#include <cctype>
#include <sstream>
#include <utility>

namespace oke {

struct Formula::Node {
  Kind kind;
  std::string name;  // atom name, agent name, or action name
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  // Scans cached at construction; cheap because children are immutable.
  bool hasKnow = false;
  bool hasOnlyKnow = false;
  bool hasDyn = false;
};

namespace {

using NodePtr = std::shared_ptr<const Formula::Node>;

NodePtr makeNode(Formula::Kind kind, std::string name, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  n->name = std::move(name);
  n->a = std::move(a);
  n->b = std::move(b);
  for (const auto& c : {n->a, n->b}) {
    if (!c) continue;
    n->hasKnow |= c->hasKnow;
    n->hasOnlyKnow |= c->hasOnlyKnow;
    n->hasDyn |= c->hasDyn;
  }
  switch (kind) {
    case Formula::Kind::Know: n->hasKnow = true; break;
    case Formula::Kind::OnlyKnow: n->hasOnlyKnow = true; break;
    case Formula::Kind::Dyn: n->hasDyn = true; break;
    default: break;
  }
  return n;
}

}  // namespace

// ─── Construction ───────────────────────────────────────────────────────────

Formula Formula::atom(std::string name) {
  return Formula(makeNode(Kind::Atom, std::move(name), nullptr, nullptr));
}

Formula Formula::truth() {
  static const Formula t(makeNode(Kind::True, "", nullptr, nullptr));
  return t;
}

Formula Formula::falsity() {
  static const Formula f(makeNode(Kind::False, "", nullptr, nullptr));
  return f;
}

Formula Formula::negate(Formula f) {
  return Formula(makeNode(Kind::Not, "", std::move(f.node_), nullptr));
}

Formula Formula::conj(Formula l, Formula r) {
  return Formula(makeNode(Kind::And, "", std::move(l.node_), std::move(r.node_)));
}

Formula Formula::disj(Formula l, Formula r) {
  return Formula(makeNode(Kind::Or, "", std::move(l.node_), std::move(r.node_)));
}

Formula Formula::implies(Formula l, Formula r) {
  return Formula(makeNode(Kind::Implies, "", std::move(l.node_), std::move(r.node_)));
}

Formula Formula::know(AgentId agent, Formula f) {
  return Formula(makeNode(Kind::Know, std::move(agent.name), std::move(f.node_), nullptr));
}

Formula Formula::onlyKnow(AgentId agent, Formula f) {
  return Formula(makeNode(Kind::OnlyKnow, std::move(agent.name), std::move(f.node_), nullptr));
}

Formula Formula::after(ActionId action, Formula f) {
  if (f.containsDyn()) {
    throw ValidationError("dynamic operator [" + action.name +
                          "] applied to a formula that already contains one");
  }
  return Formula(makeNode(Kind::Dyn, std::move(action.name), std::move(f.node_), nullptr));
}

// ─── Accessors ──────────────────────────────────────────────────────────────

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::atomName() const {
  assert(kind() == Kind::Atom);
  return node_->name;
}

AgentId Formula::agent() const {
  assert(kind() == Kind::Know || kind() == Kind::OnlyKnow);
  return AgentId{node_->name};
}

ActionId Formula::action() const {
  assert(kind() == Kind::Dyn);
  return ActionId{node_->name};
}

Formula Formula::child() const {
  assert(node_->a && !node_->b);
  return Formula(node_->a);
}

Formula Formula::left() const {
  assert(node_->a && node_->b);
  return Formula(node_->a);
}

Formula Formula::right() const {
  assert(node_->b);
  return Formula(node_->b);
}

const void* Formula::identity() const { return node_.get(); }

// ─── Structural predicates ──────────────────────────────────────────────────

namespace {

bool nodesEqual(const NodePtr& x, const NodePtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind || x->name != y->name) return false;
  return nodesEqual(x->a, y->a) && nodesEqual(x->b, y->b);
}

}  // namespace

bool Formula::operator==(const Formula& other) const {
  return nodesEqual(node_, other.node_);
}

bool Formula::isObjective() const {
  return !node_->hasKnow && !node_->hasOnlyKnow && !node_->hasDyn;
}

bool Formula::containsDyn() const { return node_->hasDyn; }
bool Formula::containsOnlyKnow() const { return node_->hasOnlyKnow; }
bool Formula::containsKnow() const { return node_->hasKnow; }

bool Formula::isLiteral() const {
  if (kind() == Kind::Atom) return true;
  return kind() == Kind::Not && node_->a->kind == Kind::Atom;
}

bool Formula::isConjunctionOfLiterals() const {
  switch (kind()) {
    case Kind::True:
      return true;
    case Kind::And:
      return left().isConjunctionOfLiterals() && right().isConjunctionOfLiterals();
    default:
      return isLiteral();
  }
}

namespace {

void collectAtoms(const NodePtr& n, std::set<std::string>& out) {
  if (!n) return;
  if (n->kind == Formula::Kind::Atom) out.insert(n->name);
  collectAtoms(n->a, out);
  collectAtoms(n->b, out);
}

}  // namespace

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  collectAtoms(node_, out);
  return out;
}

namespace {

int nodeDepth(const NodePtr& n, const std::string& agent) {
  switch (n->kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::True:
    case Formula::Kind::False:
      return 1;
    case Formula::Kind::Not:
    case Formula::Kind::Dyn:
      return nodeDepth(n->a, agent);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return std::max(nodeDepth(n->a, agent), nodeDepth(n->b, agent));
    case Formula::Kind::Know:
    case Formula::Kind::OnlyKnow:
      if (n->name == agent) return nodeDepth(n->a, agent);
      return nodeDepth(n->a, n->name) + 1;
  }
  return 1;
}

}  // namespace

int Formula::depth(const AgentId& i) const { return nodeDepth(node_, i.name); }

// ─── Parsing ────────────────────────────────────────────────────────────────

namespace {

struct Token {
  enum class Type {
    Atom, True, False, Know, OnlyKnow,
    Not, And, Or, Arrow, Iff,
    LParen, RParen, LBracket, RBracket,
    End
  };
  Type type = Type::End;
  std::string text;  // atom name, or agent name for Know/OnlyKnow
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  Lexer(std::string_view src, const ParseOptions& options)
      : src_(src), options_(options) {
    advance();
  }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, int line, int col) const {
    throw ParseError(msg, line, col);
  }

  void advance() {
    skipBlanks();
    current_ = Token{};
    current_.line = line_;
    current_.col = col_;
    if (pos_ >= src_.size()) {
      current_.type = Token::Type::End;
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      lexWord();
      return;
    }
    switch (c) {
      case '!': bump(); current_.type = Token::Type::Not; return;
      case '&': bump(); current_.type = Token::Type::And; return;
      case '|': bump(); current_.type = Token::Type::Or; return;
      case '(': bump(); current_.type = Token::Type::LParen; return;
      case ')': bump(); current_.type = Token::Type::RParen; return;
      case '[': bump(); current_.type = Token::Type::LBracket; return;
      case ']': bump(); current_.type = Token::Type::RBracket; return;
      case '-':
        bump();
        if (pos_ < src_.size() && src_[pos_] == '>') {
          bump();
          current_.type = Token::Type::Arrow;
          return;
        }
        fail("expected '->'", current_.line, current_.col);
      case '<':
        bump();
        if (pos_ + 1 < src_.size() && src_[pos_] == '-' && src_[pos_ + 1] == '>') {
          bump();
          bump();
          current_.type = Token::Type::Iff;
          return;
        }
        fail("expected '<->'", current_.line, current_.col);
      default:
        fail(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void lexWord() {
    std::string word;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        word += c;
        bump();
      } else {
        break;
      }
    }
    if (word == "true") {
      current_.type = Token::Type::True;
      return;
    }
    if (word == "false") {
      current_.type = Token::Type::False;
      return;
    }
    if ((word.rfind("K_", 0) == 0 || word.rfind("O_", 0) == 0) && word.size() > 2) {
      std::string agent = word.substr(2);
      bool known = false;
      for (const auto& a : options_.agents) known |= (a == agent);
      if (!known) fail("unknown agent '" + agent + "'", current_.line, current_.col);
      current_.type = word[0] == 'K' ? Token::Type::Know : Token::Type::OnlyKnow;
      current_.text = agent;
      return;
    }
    if (std::islower(static_cast<unsigned char>(word[0]))) {
      for (char c : word) {
        if (std::isupper(static_cast<unsigned char>(c))) {
          fail("atom names are lower case: '" + word + "'", current_.line, current_.col);
        }
      }
      current_.type = Token::Type::Atom;
      current_.text = word;
      return;
    }
    fail("unexpected identifier '" + word + "'", current_.line, current_.col);
  }

  void skipBlanks() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

class Parser {
 public:
  Parser(std::string_view src, const ParseOptions& options)
      : lexer_(src, options), options_(options) {}

  Formula run() {
    Formula f = parseIff();
    const Token& t = lexer_.peek();
    if (t.type != Token::Type::End) {
      throw ParseError("unexpected trailing input", t.line, t.col);
    }
    return f;
  }

 private:
  // iff is the loosest level and pure sugar: a <-> b becomes (a -> b) & (b -> a).
  Formula parseIff() {
    Formula a = parseImplies();
    while (lexer_.peek().type == Token::Type::Iff) {
      lexer_.take();
      Formula b = parseImplies();
      a = Formula::conj(Formula::implies(a, b), Formula::implies(b, a));
    }
    return a;
  }

  Formula parseImplies() {
    Formula a = parseOr();
    if (lexer_.peek().type == Token::Type::Arrow) {
      lexer_.take();
      return Formula::implies(a, parseImplies());  // right associative
    }
    return a;
  }

  Formula parseOr() {
    Formula a = parseAnd();
    while (lexer_.peek().type == Token::Type::Or) {
      lexer_.take();
      a = Formula::disj(a, parseAnd());
    }
    return a;
  }

  Formula parseAnd() {
    Formula a = parseUnary();
    while (lexer_.peek().type == Token::Type::And) {
      lexer_.take();
      a = Formula::conj(a, parseUnary());
    }
    return a;
  }

  Formula parseUnary() {
    const Token t = lexer_.peek();
    switch (t.type) {
      case Token::Type::Not:
        lexer_.take();
        return Formula::negate(parseUnary());
      case Token::Type::Know: {
        lexer_.take();
        return Formula::know(AgentId{t.text}, parseUnary());
      }
      case Token::Type::OnlyKnow: {
        lexer_.take();
        return Formula::onlyKnow(AgentId{t.text}, parseUnary());
      }
      case Token::Type::LBracket: {
        lexer_.take();
        Token name = lexer_.take();
        if (name.type != Token::Type::Atom) {
          throw ParseError("expected action name after '['", name.line, name.col);
        }
        if (options_.actions && !options_.actions->count(name.text)) {
          throw ParseError("unknown action '" + name.text + "'", name.line, name.col);
        }
        Token close = lexer_.take();
        if (close.type != Token::Type::RBracket) {
          throw ParseError("expected ']'", close.line, close.col);
        }
        Formula body = parseUnary();
        try {
          return Formula::after(ActionId{name.text}, body);
        } catch (const ValidationError&) {
          throw ParseError("nested dynamic operator", t.line, t.col);
        }
      }
      default:
        return parsePrimary();
    }
  }

  Formula parsePrimary() {
    const Token t = lexer_.take();
    switch (t.type) {
      case Token::Type::Atom:
        if (options_.vocabulary && !options_.vocabulary->count(t.text)) {
          throw ParseError("undeclared atom '" + t.text + "'", t.line, t.col);
        }
        return Formula::atom(t.text);
      case Token::Type::True:
        return Formula::truth();
      case Token::Type::False:
        return Formula::falsity();
      case Token::Type::LParen: {
        Formula f = parseIff();
        const Token close = lexer_.take();
        if (close.type != Token::Type::RParen) {
          throw ParseError("expected ')'", close.line, close.col);
        }
        return f;
      }
      case Token::Type::End:
        throw ParseError("unexpected end of input", t.line, t.col);
      default:
        throw ParseError("expected a formula", t.line, t.col);
    }
  }

  Lexer lexer_;
  const ParseOptions& options_;
};

}  // namespace

Formula parse(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).run();
}

// ─── Rendering ──────────────────────────────────────────────────────────────

namespace {

// Binding strength, loosest to tightest. The biconditional never appears in
// rendered output (it desugars at parse time).
int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not:
    case Formula::Kind::Know:
    case Formula::Kind::OnlyKnow:
    case Formula::Kind::Dyn: return 4;
    default: return 5;
  }
}

void renderInto(const Formula& f, int minLevel, std::string& out) {
  const int level = precedence(f.kind());
  const bool parens = level < minLevel;
  if (parens) out += '(';
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += f.atomName();
      break;
    case Formula::Kind::True:
      out += "true";
      break;
    case Formula::Kind::False:
      out += "false";
      break;
    case Formula::Kind::Not:
      out += '!';
      renderInto(f.child(), 4, out);
      break;
    case Formula::Kind::Know:
    case Formula::Kind::OnlyKnow:
      out += f.kind() == Formula::Kind::Know ? "K_" : "O_";
      out += f.agent().name;
      out += ' ';
      renderInto(f.child(), 4, out);
      break;
    case Formula::Kind::Dyn:
      out += '[';
      out += f.action().name;
      out += "] ";
      renderInto(f.child(), 4, out);
      break;
    case Formula::Kind::And:
      renderInto(f.left(), 3, out);
      out += " & ";
      renderInto(f.right(), 4, out);  // left associative
      break;
    case Formula::Kind::Or:
      renderInto(f.left(), 2, out);
      out += " | ";
      renderInto(f.right(), 3, out);
      break;
    case Formula::Kind::Implies:
      renderInto(f.left(), 2, out);  // right associative
      out += " -> ";
      renderInto(f.right(), 1, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  renderInto(f, 0, out);
  return out;
}

}  // namespace oke
