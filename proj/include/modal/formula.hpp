#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modal {

enum class Kind : std::uint8_t { Var, Falsum, Top, Implies, Box, Diamond, Not, And, Or };

/// Immutable modal formula over variables p1, p2, ... with core connectives
/// falsum, implication and box, plus first-class abbreviation nodes:
/// negation, n-ary conjunction/disjunction (n >= 0), diamond and verum.
/// Formulas are values: cheap to copy, structurally comparable, safe to share.
class Formula {
 public:
  struct Node;

  static Formula var(int index);  // index >= 1
  static Formula falsum();
  static Formula top();
  static Formula implies(Formula left, Formula right);
  static Formula box(Formula body);
  static Formula diamond(Formula body);
  static Formula neg(Formula body);
  static Formula conj(std::vector<Formula> parts);  // n-ary And; empty means verum
  static Formula disj(std::vector<Formula> parts);  // n-ary Or; empty means falsum

  Kind kind() const { return node_->kind; }
  int var_index() const;
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }

  /// Number of nodes in the syntax tree.
  std::int64_t size() const { return node_->size; }
  /// Maximal nesting of box/diamond operators.
  int modal_depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  /// Stable identity of the underlying node, for memoisation tables.
  const Node* raw() const { return node_.get(); }

  struct Node {
    Kind kind;
    int var = 0;
    std::vector<Formula> children;
    std::int64_t size = 1;
    int depth = 0;
    std::size_t hash = 0;
  };

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Thrown by the text parsers; position is a byte offset into the input.
struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& message, std::size_t pos);
};

/// Finite map from variable indices to formulas; identity elsewhere.
class Substitution {
 public:
  Substitution() = default;
  Substitution& set(int var_index, Formula replacement);
  const Formula* lookup(int var_index) const;
  bool empty() const { return entries_.empty(); }
  const std::map<int, Formula>& entries() const { return entries_; }

 private:
  std::map<int, Formula> entries_;
};

/// n-fold box (n = 0 yields f itself).
Formula box_pow(int n, const Formula& f);
/// n-fold diamond.
Formula diamond_pow(int n, const Formula& f);
/// Conjunction of box_pow(i, f) for i = 0..n, associated per the recursion
/// up_to(n+1) = up_to(n) & box^(n+1).
Formula box_upto(int n, const Formula& f);
/// f & []f.
Formula box_plus(const Formula& f);

/// Conjunction helper that collapses degenerate arities: {} -> top, {x} -> x.
Formula big_and(std::vector<Formula> parts);
/// Disjunction helper: {} -> falsum, {x} -> x.
Formula big_or(std::vector<Formula> parts);

/// Simultaneous substitution; shares unchanged subterms.
Formula substitute(const Formula& f, const Substitution& s);

/// Set of variable indices occurring in f.
std::set<int> vars(const Formula& f);

/// All distinct subterms of f (including f and every abbreviation node),
/// ordered by (size, printed form) so iteration is deterministic.
std::vector<Formula> subformulas(const Formula& f);

/// Rewrites abbreviation nodes into the falsum/implication/box core:
/// ~a => a -> false, true => false -> false, <>a => [](a -> false) -> false,
/// conjunction/disjunction fold rightwards through their definitions.
Formula expand_abbreviations(const Formula& f);

/// Canonical text form; parse_formula(print_formula(f)) == f for every
/// formula whose And/Or nodes all have arity >= 2.
std::string print_formula(const Formula& f);

/// Parser for the formula grammar: variables p1, p2, ...; constants
/// false/true; prefix ~, [], <>; infix &, |, ->; parentheses. Precedence
/// prefix > & > | > ->; -> associates right, & and | left. ASCII only.
Formula parse_formula(std::string_view text);

}  // namespace modal
