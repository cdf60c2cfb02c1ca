#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "modal/formula.hpp"
#include "modal/kripke.hpp"

namespace modal {

enum class Quantifier { Exists, Forall };

/// Fully quantified boolean formula in prenex form. prefix[i] binds p(i+1);
/// the matrix is propositional (modal depth 0) over exactly those variables.
struct Qbf {
  std::vector<Quantifier> prefix;
  Formula matrix;

  int variable_count() const { return static_cast<int>(prefix.size()); }
};

/// Grammar: quantifier tokens "E p<k>" / "A p<k>" binding p1..pm in order,
/// then ".", then a propositional formula over p1..pm. m >= 1.
Qbf parse_qbf(std::string_view text);

bool evaluate_qbf(const Qbf& q);

/// Strategy tree for a true instance: level-i nodes carry the values chosen
/// for p1..pi; an existential level has one child (false preferred when both
/// values win), a universal level has two (false child first).
struct QuantifierTreeNode {
  int level = 0;
  std::vector<bool> assignment;
  std::vector<QuantifierTreeNode> children;
};

struct QuantifierTree {
  QuantifierTreeNode root;
};

/// Requires evaluate_qbf(q); throws std::invalid_argument otherwise.
QuantifierTree quantifier_tree(const Qbf& q);

/// Model built on the quantifier tree: worlds are tree nodes numbered in
/// preorder, the relation is the reflexive symmetric closure of the
/// daughter-of relation, level-i nodes satisfy the level marker variable
/// p(m+1+i), and p_i holds at a level-j node (j >= i) exactly when the
/// branch chose true for p_i. Returns the model and its root world (0).
std::pair<Model, int> witness_model(const Qbf& q);

/// Modal encoding of q over fresh level markers q_0..q_m realized as
/// p(m+1)..p(2m+1): a conjunction of six schemas that is satisfiable on a
/// reflexive symmetric frame iff q is true, and unsatisfiable outright
/// otherwise. The result is always a six-way conjunction; schemas with empty
/// index ranges degenerate to verum.
Formula translate_qbf(const Qbf& q);

/// Negation of translate_qbf(q): valid exactly when q is false.
Formula negated_translate_qbf(const Qbf& q);

}  // namespace modal
