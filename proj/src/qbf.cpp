#include "modal/qbf.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace modal {

namespace {

void skip_ws(std::string_view text, std::size_t& pos) {
  while (pos < text.size() &&
         (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r')) {
    ++pos;
  }
}

int read_var_token(std::string_view text, std::size_t& pos) {
  if (pos >= text.size() || text[pos] != 'p')
    throw ParseError("expected a variable p<k> after the quantifier", pos);
  std::size_t start = pos;
  ++pos;
  if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
    throw ParseError("expected digits after 'p'", start);
  long long value = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    value = value * 10 + (text[pos] - '0');
    if (value > 1000000000) throw ParseError("variable index too large", start);
    ++pos;
  }
  if (value < 1) throw ParseError("variable index must be >= 1", start);
  return static_cast<int>(value);
}

bool eval_matrix(const Formula& f, const std::vector<bool>& assignment) {
  switch (f.kind()) {
    case Kind::Var:
      return assignment[static_cast<std::size_t>(f.var_index()) - 1];
    case Kind::Falsum:
      return false;
    case Kind::Top:
      return true;
    case Kind::Not:
      return !eval_matrix(f.child(0), assignment);
    case Kind::Implies:
      return !eval_matrix(f.child(0), assignment) || eval_matrix(f.child(1), assignment);
    case Kind::And:
      for (const Formula& c : f.children())
        if (!eval_matrix(c, assignment)) return false;
      return true;
    case Kind::Or:
      for (const Formula& c : f.children())
        if (eval_matrix(c, assignment)) return true;
      return false;
    case Kind::Box:
    case Kind::Diamond:
      throw std::logic_error("eval_matrix: modal operator in a propositional matrix");
  }
  throw std::logic_error("eval_matrix: unreachable");
}

bool eval_from(const Qbf& q, std::size_t level, std::vector<bool>& assignment) {
  if (level == q.prefix.size()) return eval_matrix(q.matrix, assignment);
  bool out;
  assignment.push_back(false);
  if (q.prefix[level] == Quantifier::Exists) {
    out = eval_from(q, level + 1, assignment);
    if (!out) {
      assignment.back() = true;
      out = eval_from(q, level + 1, assignment);
    }
  } else {
    out = eval_from(q, level + 1, assignment);
    if (out) {
      assignment.back() = true;
      out = eval_from(q, level + 1, assignment);
    }
  }
  assignment.pop_back();
  return out;
}

QuantifierTreeNode build_tree(const Qbf& q, int level, std::vector<bool>& assignment) {
  QuantifierTreeNode node;
  node.level = level;
  node.assignment = assignment;
  if (level == q.variable_count()) return node;
  if (q.prefix[level] == Quantifier::Exists) {
    // Prefer false when both values keep the remaining game winnable.
    assignment.push_back(false);
    if (!eval_from(q, level + 1, assignment)) assignment.back() = true;
    node.children.push_back(build_tree(q, level + 1, assignment));
    assignment.pop_back();
  } else {
    for (bool value : {false, true}) {
      assignment.push_back(value);
      node.children.push_back(build_tree(q, level + 1, assignment));
      assignment.pop_back();
    }
  }
  return node;
}

void number_preorder(const QuantifierTreeNode& node, int parent,
                     std::vector<std::pair<int, int>>& edges,
                     std::vector<const QuantifierTreeNode*>& order) {
  int id = static_cast<int>(order.size());
  order.push_back(&node);
  if (parent >= 0) edges.emplace_back(parent, id);
  for (const QuantifierTreeNode& c : node.children) number_preorder(c, id, edges, order);
}

}  // namespace

Qbf parse_qbf(std::string_view text) {
  std::size_t pos = 0;
  std::vector<Quantifier> prefix;
  for (;;) {
    skip_ws(text, pos);
    if (pos >= text.size()) throw ParseError("expected '.' before the matrix", pos);
    if (text[pos] == '.') {
      ++pos;
      break;
    }
    std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string_view word = text.substr(start, pos - start);
    Quantifier quant;
    if (word == "E")
      quant = Quantifier::Exists;
    else if (word == "A")
      quant = Quantifier::Forall;
    else
      throw ParseError("expected quantifier E or A", start);
    skip_ws(text, pos);
    std::size_t var_pos = pos;
    int index = read_var_token(text, pos);
    if (index != static_cast<int>(prefix.size()) + 1)
      throw ParseError("quantifier must bind p" + std::to_string(prefix.size() + 1) +
                           " next (indices are contiguous from p1)",
                       var_pos);
    prefix.push_back(quant);
  }
  if (prefix.empty()) throw ParseError("prefix must bind at least one variable", 0);
  Formula matrix = [&] {
    try {
      return parse_formula(text.substr(pos));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()), e.position + pos);
    }
  }();
  if (matrix.modal_depth() != 0)
    throw ParseError("matrix must not contain modal operators", pos);
  const int m = static_cast<int>(prefix.size());
  for (int v : vars(matrix)) {
    if (v > m)
      throw ParseError("matrix uses unbound variable p" + std::to_string(v), pos);
  }
  return Qbf{std::move(prefix), std::move(matrix)};
}

bool evaluate_qbf(const Qbf& q) {
  std::vector<bool> assignment;
  assignment.reserve(q.prefix.size());
  return eval_from(q, 0, assignment);
}

QuantifierTree quantifier_tree(const Qbf& q) {
  if (!evaluate_qbf(q))
    throw std::invalid_argument("quantifier_tree: the instance is false");
  std::vector<bool> assignment;
  assignment.reserve(q.prefix.size());
  return QuantifierTree{build_tree(q, 0, assignment)};
}

std::pair<Model, int> witness_model(const Qbf& q) {
  QuantifierTree tree = quantifier_tree(q);
  std::vector<std::pair<int, int>> edges;
  std::vector<const QuantifierTreeNode*> order;
  number_preorder(tree.root, -1, edges, order);
  const int n = static_cast<int>(order.size());
  const int m = q.variable_count();

  std::vector<std::pair<int, int>> rel;
  rel.reserve(static_cast<std::size_t>(n) + 2 * edges.size());
  for (int w = 0; w < n; ++w) rel.emplace_back(w, w);
  for (auto [a, b] : edges) {
    rel.emplace_back(a, b);
    rel.emplace_back(b, a);
  }

  std::map<int, std::vector<int>> val;
  for (int w = 0; w < n; ++w) {
    const QuantifierTreeNode* node = order[w];
    val[m + 1 + node->level].push_back(w);
    for (int i = 1; i <= node->level; ++i)
      if (node->assignment[static_cast<std::size_t>(i) - 1]) val[i].push_back(w);
  }
  return {Model(Frame(n, std::move(rel)), val), 0};
}

Formula translate_qbf(const Qbf& q) {
  const int m = q.variable_count();
  auto level = [&](int i) { return Formula::var(m + 1 + i); };
  auto p = [](int i) { return Formula::var(i); };

  Formula first = level(0);

  std::vector<Formula> uniq;
  for (int i = 0; i <= m; ++i) {
    std::vector<Formula> others;
    for (int j = 0; j <= m; ++j)
      if (j != i) others.push_back(Formula::neg(level(j)));
    uniq.push_back(Formula::implies(level(i), big_and(std::move(others))));
  }
  Formula second = box_upto(m, big_and(std::move(uniq)));

  std::vector<Formula> exists_steps;
  std::vector<Formula> forall_steps;
  for (int i = 1; i <= m; ++i) {
    if (q.prefix[static_cast<std::size_t>(i) - 1] == Quantifier::Exists) {
      exists_steps.push_back(
          Formula::implies(level(i - 1), Formula::diamond(level(i))));
    } else {
      forall_steps.push_back(Formula::implies(
          level(i - 1),
          Formula::conj({Formula::diamond(Formula::conj({level(i), p(i)})),
                         Formula::diamond(Formula::conj({level(i), Formula::neg(p(i))}))})));
    }
  }
  Formula third = box_upto(m - 1, big_and(std::move(exists_steps)));
  Formula fourth = box_upto(m - 1, big_and(std::move(forall_steps)));

  std::vector<Formula> persist;
  for (int i = 1; i <= m - 1; ++i) {
    std::vector<Formula> keep_true;
    std::vector<Formula> keep_false;
    for (int j = 1; j <= i; ++j) {
      keep_true.push_back(Formula::implies(
          p(j), Formula::box(Formula::implies(level(i + 1), p(j)))));
      keep_false.push_back(Formula::implies(
          Formula::neg(p(j)),
          Formula::box(Formula::implies(level(i + 1), Formula::neg(p(j))))));
    }
    persist.push_back(Formula::implies(
        level(i),
        Formula::conj({big_and(std::move(keep_true)), big_and(std::move(keep_false))})));
  }
  Formula fifth = box_upto(m - 1, big_and(std::move(persist)));

  Formula sixth = box_pow(m, Formula::implies(level(m), q.matrix));

  return Formula::conj({std::move(first), std::move(second), std::move(third),
                        std::move(fourth), std::move(fifth), std::move(sixth)});
}

Formula negated_translate_qbf(const Qbf& q) { return Formula::neg(translate_qbf(q)); }

}  // namespace modal
