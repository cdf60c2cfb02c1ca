#include "modal/formula.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace modal {

namespace {

std::size_t combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::shared_ptr<const Formula::Node> make_node(Kind kind, int var,
                                               std::vector<Formula> children) {
  auto node = std::make_shared<Formula::Node>();
  node->kind = kind;
  node->var = var;
  node->children = std::move(children);
  std::int64_t size = 1;
  int depth = 0;
  std::size_t hash = combine(static_cast<std::size_t>(kind) * 0x100000001b3ULL,
                             static_cast<std::size_t>(var));
  for (const Formula& c : node->children) {
    size += c.size();
    depth = std::max(depth, c.modal_depth());
    hash = combine(hash, c.hash());
  }
  if (kind == Kind::Box || kind == Kind::Diamond) depth += 1;
  node->size = size;
  node->depth = depth;
  node->hash = hash;
  return node;
}

}  // namespace

Formula Formula::var(int index) {
  if (index < 1) throw std::invalid_argument("variable index must be >= 1");
  return Formula(make_node(Kind::Var, index, {}));
}

Formula Formula::falsum() { return Formula(make_node(Kind::Falsum, 0, {})); }

Formula Formula::top() { return Formula(make_node(Kind::Top, 0, {})); }

Formula Formula::implies(Formula left, Formula right) {
  return Formula(make_node(Kind::Implies, 0, {std::move(left), std::move(right)}));
}

Formula Formula::box(Formula body) {
  return Formula(make_node(Kind::Box, 0, {std::move(body)}));
}

Formula Formula::diamond(Formula body) {
  return Formula(make_node(Kind::Diamond, 0, {std::move(body)}));
}

Formula Formula::neg(Formula body) {
  return Formula(make_node(Kind::Not, 0, {std::move(body)}));
}

Formula Formula::conj(std::vector<Formula> parts) {
  return Formula(make_node(Kind::And, 0, std::move(parts)));
}

Formula Formula::disj(std::vector<Formula> parts) {
  return Formula(make_node(Kind::Or, 0, std::move(parts)));
}

int Formula::var_index() const {
  if (kind() != Kind::Var) throw std::logic_error("var_index on a non-variable node");
  return node_->var;
}

bool Formula::operator==(const Formula& other) const {
  const Node* a = node_.get();
  const Node* b = other.node_.get();
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->var != b->var ||
      a->size != b->size || a->children.size() != b->children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (a->children[i] != b->children[i]) return false;
  }
  return true;
}

ParseError::ParseError(const std::string& message, std::size_t pos)
    : std::runtime_error(message + " (at offset " + std::to_string(pos) + ")"),
      position(pos) {}

Substitution& Substitution::set(int var_index, Formula replacement) {
  if (var_index < 1) throw std::invalid_argument("variable index must be >= 1");
  entries_.insert_or_assign(var_index, std::move(replacement));
  return *this;
}

const Formula* Substitution::lookup(int var_index) const {
  auto it = entries_.find(var_index);
  return it == entries_.end() ? nullptr : &it->second;
}

Formula box_pow(int n, const Formula& f) {
  if (n < 0) throw std::invalid_argument("box_pow: negative exponent");
  Formula out = f;
  for (int i = 0; i < n; ++i) out = Formula::box(out);
  return out;
}

Formula diamond_pow(int n, const Formula& f) {
  if (n < 0) throw std::invalid_argument("diamond_pow: negative exponent");
  Formula out = f;
  for (int i = 0; i < n; ++i) out = Formula::diamond(out);
  return out;
}

Formula box_upto(int n, const Formula& f) {
  if (n < 0) throw std::invalid_argument("box_upto: negative exponent");
  Formula out = f;
  for (int i = 1; i <= n; ++i) out = Formula::conj({std::move(out), box_pow(i, f)});
  return out;
}

Formula box_plus(const Formula& f) { return Formula::conj({f, Formula::box(f)}); }

Formula big_and(std::vector<Formula> parts) {
  if (parts.empty()) return Formula::top();
  if (parts.size() == 1) return parts.front();
  return Formula::conj(std::move(parts));
}

Formula big_or(std::vector<Formula> parts) {
  if (parts.empty()) return Formula::falsum();
  if (parts.size() == 1) return parts.front();
  return Formula::disj(std::move(parts));
}

namespace {

Formula substitute_rec(const Formula& f, const Substitution& s,
                       std::unordered_map<const Formula::Node*, Formula>& memo) {
  auto it = memo.find(f.raw());
  if (it != memo.end()) return it->second;
  Formula out = [&] {
    switch (f.kind()) {
      case Kind::Var: {
        const Formula* r = s.lookup(f.var_index());
        return r ? *r : f;
      }
      case Kind::Falsum:
      case Kind::Top:
        return f;
      default: {
        std::vector<Formula> rebuilt;
        rebuilt.reserve(f.children().size());
        bool changed = false;
        for (const Formula& c : f.children()) {
          Formula rc = substitute_rec(c, s, memo);
          if (rc != c) changed = true;
          rebuilt.push_back(std::move(rc));
        }
        if (!changed) return f;
        switch (f.kind()) {
          case Kind::Implies:
            return Formula::implies(rebuilt[0], rebuilt[1]);
          case Kind::Box:
            return Formula::box(rebuilt[0]);
          case Kind::Diamond:
            return Formula::diamond(rebuilt[0]);
          case Kind::Not:
            return Formula::neg(rebuilt[0]);
          case Kind::And:
            return Formula::conj(std::move(rebuilt));
          case Kind::Or:
            return Formula::disj(std::move(rebuilt));
          default:
            throw std::logic_error("substitute: unexpected node kind");
        }
      }
    }
    throw std::logic_error("substitute: unreachable");
  }();
  memo.emplace(f.raw(), out);
  return out;
}

}  // namespace

Formula substitute(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  std::unordered_map<const Formula::Node*, Formula> memo;
  return substitute_rec(f, s, memo);
}

namespace {

void vars_rec(const Formula& f, std::set<int>& out,
              std::unordered_set<const Formula::Node*>& seen) {
  if (!seen.insert(f.raw()).second) return;
  if (f.kind() == Kind::Var) {
    out.insert(f.var_index());
    return;
  }
  for (const Formula& c : f.children()) vars_rec(c, out, seen);
}

void collect_subformulas(const Formula& f,
                         std::unordered_set<Formula, FormulaHash>& out) {
  if (!out.insert(f).second) return;
  for (const Formula& c : f.children()) collect_subformulas(c, out);
}

}  // namespace

std::set<int> vars(const Formula& f) {
  std::set<int> out;
  std::unordered_set<const Formula::Node*> seen;
  vars_rec(f, out, seen);
  return out;
}

std::vector<Formula> subformulas(const Formula& f) {
  std::unordered_set<Formula, FormulaHash> set;
  collect_subformulas(f, set);
  std::vector<std::pair<std::string, Formula>> keyed;
  keyed.reserve(set.size());
  for (const Formula& g : set) keyed.emplace_back(print_formula(g), g);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
    return a.first < b.first;
  });
  std::vector<Formula> out;
  out.reserve(keyed.size());
  for (auto& [text, g] : keyed) out.push_back(std::move(g));
  return out;
}

namespace {

Formula expand_rec(const Formula& f,
                   std::unordered_map<const Formula::Node*, Formula>& memo) {
  auto it = memo.find(f.raw());
  if (it != memo.end()) return it->second;
  Formula out = [&]() -> Formula {
    switch (f.kind()) {
      case Kind::Var:
      case Kind::Falsum:
        return f;
      case Kind::Top:
        return Formula::implies(Formula::falsum(), Formula::falsum());
      case Kind::Implies:
        return Formula::implies(expand_rec(f.child(0), memo),
                                expand_rec(f.child(1), memo));
      case Kind::Box:
        return Formula::box(expand_rec(f.child(0), memo));
      case Kind::Not:
        return Formula::implies(expand_rec(f.child(0), memo), Formula::falsum());
      case Kind::Diamond:
        return Formula::implies(
            Formula::box(Formula::implies(expand_rec(f.child(0), memo),
                                          Formula::falsum())),
            Formula::falsum());
      case Kind::And: {
        if (f.children().empty())
          return Formula::implies(Formula::falsum(), Formula::falsum());
        Formula acc = expand_rec(f.children().back(), memo);
        for (auto it2 = f.children().rbegin() + 1; it2 != f.children().rend(); ++it2) {
          // a & b  =>  (a -> (b -> false)) -> false
          acc = Formula::implies(
              Formula::implies(expand_rec(*it2, memo),
                               Formula::implies(acc, Formula::falsum())),
              Formula::falsum());
        }
        return acc;
      }
      case Kind::Or: {
        if (f.children().empty()) return Formula::falsum();
        Formula acc = expand_rec(f.children().back(), memo);
        for (auto it2 = f.children().rbegin() + 1; it2 != f.children().rend(); ++it2) {
          // a | b  =>  (a -> false) -> b
          acc = Formula::implies(
              Formula::implies(expand_rec(*it2, memo), Formula::falsum()), acc);
        }
        return acc;
      }
    }
    throw std::logic_error("expand_abbreviations: unreachable");
  }();
  memo.emplace(f.raw(), out);
  return out;
}

}  // namespace

Formula expand_abbreviations(const Formula& f) {
  std::unordered_map<const Formula::Node*, Formula> memo;
  return expand_rec(f, memo);
}

namespace {

// Precedence levels used by both printer and parser:
// implication 0, disjunction 1, conjunction 2, prefix operators and atoms 3.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case Kind::Implies:
      return 0;
    case Kind::Or:
      return f.children().size() >= 2 ? 1 : 3;
    case Kind::And:
      return f.children().size() >= 2 ? 2 : 3;
    default:
      return 3;
  }
}

void print_rec(const Formula& f, std::string& out);

void print_wrapped(const Formula& f, int min_prec, std::string& out) {
  if (precedence(f) < min_prec) {
    out += '(';
    print_rec(f, out);
    out += ')';
  } else {
    print_rec(f, out);
  }
}

void print_rec(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Var:
      out += 'p';
      out += std::to_string(f.var_index());
      return;
    case Kind::Falsum:
      out += "false";
      return;
    case Kind::Top:
      out += "true";
      return;
    case Kind::Not:
      out += '~';
      print_wrapped(f.child(0), 3, out);
      return;
    case Kind::Box:
      out += "[]";
      print_wrapped(f.child(0), 3, out);
      return;
    case Kind::Diamond:
      out += "<>";
      print_wrapped(f.child(0), 3, out);
      return;
    case Kind::And: {
      if (f.children().empty()) {
        out += "true";
        return;
      }
      if (f.children().size() == 1) {
        print_rec(f.child(0), out);
        return;
      }
      bool first = true;
      for (const Formula& c : f.children()) {
        if (!first) out += " & ";
        first = false;
        print_wrapped(c, 3, out);
      }
      return;
    }
    case Kind::Or: {
      if (f.children().empty()) {
        out += "false";
        return;
      }
      if (f.children().size() == 1) {
        print_rec(f.child(0), out);
        return;
      }
      bool first = true;
      for (const Formula& c : f.children()) {
        if (!first) out += " | ";
        first = false;
        print_wrapped(c, 2, out);
      }
      return;
    }
    case Kind::Implies:
      print_wrapped(f.child(0), 1, out);
      out += " -> ";
      print_rec(f.child(1), out);
      return;
  }
}

struct Lexer {
  enum class Tok { LParen, RParen, Not, Box, Diamond, And, Or, Arrow, Var, False, True, End };

  std::string_view text;
  std::size_t pos = 0;
  Tok tok = Tok::End;
  int var_value = 0;
  std::size_t tok_pos = 0;

  explicit Lexer(std::string_view t) : text(t) { advance(); }

  [[noreturn]] void fail(const std::string& message, std::size_t at) const {
    throw ParseError(message, at);
  }

  void advance() {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r')) {
      ++pos;
    }
    tok_pos = pos;
    if (pos >= text.size()) {
      tok = Tok::End;
      return;
    }
    unsigned char c = static_cast<unsigned char>(text[pos]);
    if (c >= 0x80) fail("non-ASCII byte in formula", pos);
    switch (c) {
      case '(':
        ++pos;
        tok = Tok::LParen;
        return;
      case ')':
        ++pos;
        tok = Tok::RParen;
        return;
      case '~':
        ++pos;
        tok = Tok::Not;
        return;
      case '&':
        ++pos;
        tok = Tok::And;
        return;
      case '|':
        ++pos;
        tok = Tok::Or;
        return;
      case '[':
        if (pos + 1 >= text.size() || text[pos + 1] != ']') fail("expected ']' after '['", pos);
        pos += 2;
        tok = Tok::Box;
        return;
      case '<':
        if (pos + 1 >= text.size() || text[pos + 1] != '>') fail("expected '>' after '<'", pos);
        pos += 2;
        tok = Tok::Diamond;
        return;
      case '-':
        if (pos + 1 >= text.size() || text[pos + 1] != '>') fail("expected '>' after '-'", pos);
        pos += 2;
        tok = Tok::Arrow;
        return;
      default:
        break;
    }
    if (c == 'p' && pos + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
      std::size_t start = pos;
      ++pos;
      long long value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        if (value > 1000000000) fail("variable index too large", start);
        ++pos;
      }
      if (value < 1) fail("variable index must be >= 1", start);
      tok = Tok::Var;
      var_value = static_cast<int>(value);
      return;
    }
    if (std::isalpha(c)) {
      std::size_t start = pos;
      while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
      std::string_view word = text.substr(start, pos - start);
      if (word == "false") {
        tok = Tok::False;
        return;
      }
      if (word == "true") {
        tok = Tok::True;
        return;
      }
      fail("unknown word '" + std::string(word) + "'", start);
    }
    fail(std::string("unexpected character '") + text[pos] + "'", pos);
  }
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Formula parse() {
    Formula f = implication();
    if (lex_.tok != Lexer::Tok::End) lex_.fail("unexpected trailing input", lex_.tok_pos);
    return f;
  }

 private:
  Lexer lex_;

  Formula implication() {
    Formula left = disjunction();
    if (lex_.tok == Lexer::Tok::Arrow) {
      lex_.advance();
      return Formula::implies(std::move(left), implication());
    }
    return left;
  }

  Formula disjunction() {
    std::vector<Formula> items;
    items.push_back(conjunction());
    while (lex_.tok == Lexer::Tok::Or) {
      lex_.advance();
      items.push_back(conjunction());
    }
    if (items.size() == 1) return std::move(items.front());
    return Formula::disj(std::move(items));
  }

  Formula conjunction() {
    std::vector<Formula> items;
    items.push_back(unary());
    while (lex_.tok == Lexer::Tok::And) {
      lex_.advance();
      items.push_back(unary());
    }
    if (items.size() == 1) return std::move(items.front());
    return Formula::conj(std::move(items));
  }

  Formula unary() {
    switch (lex_.tok) {
      case Lexer::Tok::Not:
        lex_.advance();
        return Formula::neg(unary());
      case Lexer::Tok::Box:
        lex_.advance();
        return Formula::box(unary());
      case Lexer::Tok::Diamond:
        lex_.advance();
        return Formula::diamond(unary());
      default:
        return atom();
    }
  }

  Formula atom() {
    switch (lex_.tok) {
      case Lexer::Tok::Var: {
        Formula f = Formula::var(lex_.var_value);
        lex_.advance();
        return f;
      }
      case Lexer::Tok::False:
        lex_.advance();
        return Formula::falsum();
      case Lexer::Tok::True:
        lex_.advance();
        return Formula::top();
      case Lexer::Tok::LParen: {
        lex_.advance();
        Formula f = implication();
        if (lex_.tok != Lexer::Tok::RParen) lex_.fail("expected ')'", lex_.tok_pos);
        lex_.advance();
        return f;
      }
      case Lexer::Tok::End:
        lex_.fail("unexpected end of input", lex_.tok_pos);
      default:
        lex_.fail("expected a formula", lex_.tok_pos);
    }
  }
};

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, out);
  return out;
}

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace modal
