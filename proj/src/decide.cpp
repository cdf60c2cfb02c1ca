#include "modal/decide.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace modal {

bool is_sat(const SatResult& r) { return std::holds_alternative<SatWitness>(r); }
bool is_unsat(const SatResult& r) { return std::holds_alternative<UnsatCertificate>(r); }
bool is_inconclusive(const SatResult& r) {
  return std::holds_alternative<InconclusiveSearch>(r);
}

std::uint64_t filtration_bound(const Formula& f) {
  std::size_t count = subformulas(f).size();
  if (count >= 64) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << count;
}

namespace detail {

MaskEvaluator::MaskEvaluator(const Formula& f) {
  std::unordered_map<Formula, int, FormulaHash> slot_of;
  auto compile = [&](auto&& self, const Formula& g) -> int {
    auto it = slot_of.find(g);
    if (it != slot_of.end()) return it->second;
    Step step{Op::Falsum, 0, 0};
    switch (g.kind()) {
      case Kind::Var:
        step = {Op::Var, g.var_index(), 0};
        max_var_ = std::max(max_var_, g.var_index());
        break;
      case Kind::Falsum:
        step = {Op::Falsum, 0, 0};
        break;
      case Kind::Top:
        step = {Op::Top, 0, 0};
        break;
      case Kind::Not:
        step = {Op::Not, self(self, g.child(0)), 0};
        break;
      case Kind::Box:
        step = {Op::Box, self(self, g.child(0)), 0};
        break;
      case Kind::Diamond:
        step = {Op::Diamond, self(self, g.child(0)), 0};
        break;
      case Kind::Implies: {
        int a = self(self, g.child(0));
        int b = self(self, g.child(1));
        step = {Op::Implies, a, b};
        break;
      }
      case Kind::And:
      case Kind::Or: {
        std::vector<int> parts;
        parts.reserve(g.children().size());
        for (const Formula& c : g.children()) parts.push_back(self(self, c));
        step.op = g.kind() == Kind::And ? Op::And : Op::Or;
        step.a = static_cast<int>(operands_.size());
        operands_.insert(operands_.end(), parts.begin(), parts.end());
        step.b = static_cast<int>(operands_.size());
        break;
      }
    }
    steps_.push_back(step);
    int slot = static_cast<int>(steps_.size()) - 1;
    slot_of.emplace(g, slot);
    return slot;
  };
  compile(compile, f);
}

std::uint64_t MaskEvaluator::evaluate(int world_count, const std::uint64_t* succ,
                                      const std::vector<std::uint64_t>& val) const {
  if (world_count < 1 || world_count > 64)
    throw std::invalid_argument("MaskEvaluator handles 1..64 worlds");
  const std::uint64_t full =
      world_count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << world_count) - 1;
  slots_.resize(steps_.size());
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const Step& st = steps_[i];
    std::uint64_t m = 0;
    switch (st.op) {
      case Op::Var:
        m = st.a <= static_cast<int>(val.size()) ? val[st.a - 1] & full : 0;
        break;
      case Op::Falsum:
        m = 0;
        break;
      case Op::Top:
        m = full;
        break;
      case Op::Not:
        m = ~slots_[st.a] & full;
        break;
      case Op::Implies:
        m = (~slots_[st.a] | slots_[st.b]) & full;
        break;
      case Op::And:
        m = full;
        for (int k = st.a; k < st.b; ++k) m &= slots_[operands_[k]];
        break;
      case Op::Or:
        m = 0;
        for (int k = st.a; k < st.b; ++k) m |= slots_[operands_[k]];
        break;
      case Op::Box: {
        const std::uint64_t body = slots_[st.a];
        for (int w = 0; w < world_count; ++w)
          if ((succ[w] & full & ~body) == 0) m |= std::uint64_t{1} << w;
        break;
      }
      case Op::Diamond: {
        const std::uint64_t body = slots_[st.a];
        for (int w = 0; w < world_count; ++w)
          if (succ[w] & full & body) m |= std::uint64_t{1} << w;
        break;
      }
    }
    slots_[i] = m;
  }
  return slots_.back();
}

}  // namespace detail

namespace {

bool relation_in_class(std::uint64_t r, int n, FrameClass c) {
  const bool need_reflexive = c == FrameClass::T || c == FrameClass::KTB;
  const bool need_symmetric =
      c == FrameClass::KB || c == FrameClass::KDB || c == FrameClass::KTB;
  const bool need_serial = c == FrameClass::KD || c == FrameClass::KDB;
  if (need_reflexive)
    for (int i = 0; i < n; ++i)
      if (!((r >> (i * n + i)) & 1)) return false;
  if (need_symmetric)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (((r >> (i * n + j)) & 1) != ((r >> (j * n + i)) & 1)) return false;
  if (need_serial) {
    const std::uint64_t row = (std::uint64_t{1} << n) - 1;
    for (int i = 0; i < n; ++i)
      if (((r >> (i * n)) & row) == 0) return false;
  }
  return true;
}

Model assemble_model(std::uint64_t r, int n, const std::vector<int>& var_indices,
                     const std::vector<std::uint64_t>& val) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((r >> (i * n + j)) & 1) rel.emplace_back(i, j);
  std::map<int, std::vector<int>> valuation;
  for (int v : var_indices) {
    std::vector<int> worlds;
    for (int w = 0; w < n; ++w)
      if ((val[v - 1] >> w) & 1) worlds.push_back(w);
    if (!worlds.empty()) valuation[v] = std::move(worlds);
  }
  return Model(Frame(n, std::move(rel)), valuation);
}

}  // namespace

SatResult sat_bruteforce(const Formula& f, FrameClass c, int max_worlds) {
  if (max_worlds < 1)
    throw std::invalid_argument("sat_bruteforce needs max_worlds >= 1");
  if (max_worlds > 7)
    throw std::invalid_argument(
        "sat_bruteforce enumerates every relation and valuation; beyond 7 "
        "worlds the space is out of reach");
  const std::set<int> var_set = vars(f);
  const std::vector<int> var_indices(var_set.begin(), var_set.end());
  const int nv = static_cast<int>(var_indices.size());
  if (nv * max_worlds > 62)
    throw std::invalid_argument("sat_bruteforce: too many variables to enumerate");
  const detail::MaskEvaluator eval(f);
  std::vector<std::uint64_t> val(std::max(eval.max_var(), 1), 0);
  const std::uint64_t bound = filtration_bound(f);

  for (int n = 1; n <= max_worlds; ++n) {
    const std::uint64_t rel_space = std::uint64_t{1} << (n * n);
    const std::uint64_t val_space = std::uint64_t{1} << (nv * n);
    const std::uint64_t row = (std::uint64_t{1} << n) - 1;
    std::uint64_t succ[7];
    for (std::uint64_t r = 0; r < rel_space; ++r) {
      if (!relation_in_class(r, n, c)) continue;
      for (int w = 0; w < n; ++w) succ[w] = (r >> (w * n)) & row;
      for (std::uint64_t v = 0; v < val_space; ++v) {
        for (int a = 0; a < nv; ++a) val[var_indices[a] - 1] = (v >> (a * n)) & row;
        const std::uint64_t holds = eval.evaluate(n, succ, val);
        if (holds) {
          const int w = std::countr_zero(holds);
          Model model = assemble_model(r, n, var_indices, val);
          if (!model_check(model, w, f) || !is_in_class(model.frame(), c))
            throw std::logic_error("internal: brute-force witness failed re-verification");
          return SatWitness{std::move(model), w};
        }
      }
    }
  }
  if (static_cast<std::uint64_t>(max_worlds) >= bound)
    return UnsatCertificate{UnsatMethod::BoundExhaustedComplete};
  return InconclusiveSearch{max_worlds, bound};
}

namespace {

struct BudgetExceeded {
  int worlds = 0;
};

/// Shared budget meter: counts work units and spawned worlds, polls the
/// wall clock occasionally, and aborts the search via BudgetExceeded.
class Ticker {
 public:
  explicit Ticker(const Budget& budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  void tick(std::uint64_t amount = 1) {
    nodes_ += amount;
    if (nodes_ > budget_.max_nodes) throw BudgetExceeded{worlds_};
    if (budget_.wall_ms != 0 && nodes_ >= next_clock_check_) {
      next_clock_check_ = nodes_ + 8192;
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start_);
      if (static_cast<std::uint64_t>(elapsed.count()) > budget_.wall_ms)
        throw BudgetExceeded{worlds_};
    }
  }

  void world() {
    ++worlds_;
    if (worlds_ > budget_.max_worlds) throw BudgetExceeded{worlds_};
    tick();
  }

  int worlds() const { return worlds_; }

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
  std::uint64_t next_clock_check_ = 0;
  int worlds_ = 0;
};

struct WorldTree {
  std::vector<int> true_vars;
  std::vector<WorldTree> children;
};

/// Signed tableau for the classes whose frames need not be symmetric.
/// A branch is a set of signed formulas saturated in insertion order;
/// diamond-true and box-false entries spawn successor worlds seeded with the
/// box-true/diamond-false constraints. Class T adds the local reflexivity
/// rules and closes every world under them; class KD grows one successor
/// for worlds that carry universal constraints but no obligation.
class TableauSolver {
 public:
  TableauSolver(FrameClass c, Ticker& ticker) : class_(c), ticker_(ticker) {}

  std::optional<WorldTree> solve(const std::vector<std::pair<Formula, bool>>& seed) {
    return solve_world(seed);
  }

 private:
  struct Branch {
    std::vector<std::pair<Formula, bool>> entries;
    std::unordered_map<Formula, std::uint8_t, FormulaHash> signs;
    std::size_t next = 0;
  };

  static std::uint8_t sign_bit(bool sign) { return sign ? 1 : 2; }

  bool present(const Branch& br, const Formula& f, bool sign) const {
    auto it = br.signs.find(f);
    return it != br.signs.end() && (it->second & sign_bit(sign));
  }

  // False means the branch closed.
  bool add(Branch& br, const Formula& f, bool sign) {
    ticker_.tick();
    if (f.kind() == Kind::Falsum && sign) return false;
    if (f.kind() == Kind::Top && !sign) return false;
    std::uint8_t& s = br.signs[f];
    if (s & sign_bit(!sign)) return false;
    if (s & sign_bit(sign)) return true;
    s |= sign_bit(sign);
    br.entries.emplace_back(f, sign);
    return true;
  }

  std::optional<WorldTree> solve_world(const std::vector<std::pair<Formula, bool>>& seed) {
    ticker_.world();
    std::vector<std::pair<int, bool>> key;
    key.reserve(seed.size());
    for (const auto& [g, s] : seed) key.emplace_back(node_id(g), s);
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    Branch br;
    bool open = true;
    for (const auto& [g, s] : seed)
      if (!add(br, g, s)) {
        open = false;
        break;
      }
    std::optional<WorldTree> result = open ? saturate(std::move(br)) : std::nullopt;
    memo_.emplace(std::move(key), result);
    return result;
  }

  std::optional<WorldTree> saturate(Branch br) {
    while (br.next < br.entries.size()) {
      const auto [f, sign] = br.entries[br.next];
      ++br.next;
      switch (f.kind()) {
        case Kind::Var:
        case Kind::Falsum:
        case Kind::Top:
          break;
        case Kind::Not:
          if (!add(br, f.child(0), !sign)) return std::nullopt;
          break;
        case Kind::Implies:
          if (sign) return split(std::move(br), {{f.child(0), false}, {f.child(1), true}});
          if (!add(br, f.child(0), true) || !add(br, f.child(1), false))
            return std::nullopt;
          break;
        case Kind::And:
          if (sign) {
            for (const Formula& c : f.children())
              if (!add(br, c, true)) return std::nullopt;
          } else {
            std::vector<std::pair<Formula, bool>> alts;
            alts.reserve(f.children().size());
            for (const Formula& c : f.children()) alts.emplace_back(c, false);
            return split(std::move(br), std::move(alts));
          }
          break;
        case Kind::Or:
          if (!sign) {
            for (const Formula& c : f.children())
              if (!add(br, c, false)) return std::nullopt;
          } else {
            std::vector<std::pair<Formula, bool>> alts;
            alts.reserve(f.children().size());
            for (const Formula& c : f.children()) alts.emplace_back(c, true);
            return split(std::move(br), std::move(alts));
          }
          break;
        case Kind::Box:
          if (class_ == FrameClass::T && sign && !add(br, f.child(0), true))
            return std::nullopt;
          break;
        case Kind::Diamond:
          if (class_ == FrameClass::T && !sign && !add(br, f.child(0), false))
            return std::nullopt;
          break;
      }
    }
    return modal_phase(br);
  }

  std::optional<WorldTree> split(Branch br,
                                 std::vector<std::pair<Formula, bool>> alts) {
    for (const auto& [g, s] : alts)
      if (present(br, g, s)) return saturate(std::move(br));
    std::vector<std::pair<Formula, bool>> live;
    live.reserve(alts.size());
    for (auto& [g, s] : alts)
      if (!present(br, g, !s)) live.emplace_back(std::move(g), s);
    if (live.empty()) return std::nullopt;
    if (live.size() == 1) {
      if (!add(br, live.front().first, live.front().second)) return std::nullopt;
      return saturate(std::move(br));
    }
    for (const auto& [g, s] : live) {
      Branch copy = br;
      if (!add(copy, g, s)) continue;
      if (auto result = saturate(std::move(copy))) return result;
    }
    return std::nullopt;
  }

  std::optional<WorldTree> modal_phase(const Branch& br) {
    std::vector<std::pair<Formula, bool>> universal, obligations;
    auto push_unique = [](std::vector<std::pair<Formula, bool>>& into,
                          const Formula& g, bool s) {
      for (const auto& [h, t] : into)
        if (t == s && h == g) return;
      into.emplace_back(g, s);
    };
    for (const auto& [f, sign] : br.entries) {
      if (f.kind() == Kind::Box) {
        if (sign)
          push_unique(universal, f.child(0), true);
        else
          push_unique(obligations, f.child(0), false);
      } else if (f.kind() == Kind::Diamond) {
        if (sign)
          push_unique(obligations, f.child(0), true);
        else
          push_unique(universal, f.child(0), false);
      }
    }

    std::vector<WorldTree> children;
    children.reserve(obligations.size());
    for (const auto& ob : obligations) {
      std::vector<std::pair<Formula, bool>> seed;
      seed.reserve(universal.size() + 1);
      seed.push_back(ob);
      seed.insert(seed.end(), universal.begin(), universal.end());
      auto child = solve_world(seed);
      if (!child) return std::nullopt;
      children.push_back(std::move(*child));
    }
    if (class_ == FrameClass::KD && obligations.empty() && !universal.empty()) {
      auto child = solve_world(universal);
      if (!child) return std::nullopt;
      children.push_back(std::move(*child));
    }

    WorldTree node;
    for (const auto& [f, sign] : br.entries)
      if (f.kind() == Kind::Var && sign) node.true_vars.push_back(f.var_index());
    node.children = std::move(children);
    return node;
  }

  int node_id(const Formula& g) {
    auto it = ids_.find(g);
    if (it != ids_.end()) return it->second;
    const int id = static_cast<int>(ids_.size());
    ids_.emplace(g, id);
    return id;
  }

  FrameClass class_;
  Ticker& ticker_;
  std::unordered_map<Formula, int, FormulaHash> ids_;
  std::map<std::vector<std::pair<int, bool>>, std::optional<WorldTree>> memo_;
};

Model tree_to_model(const WorldTree& root, FrameClass c) {
  std::vector<std::pair<int, int>> rel;
  std::map<int, std::vector<int>> val;
  std::vector<bool> childless;
  int counter = 0;
  auto walk = [&](auto&& self, const WorldTree& node) -> int {
    const int id = counter++;
    childless.push_back(node.children.empty());
    for (int v : node.true_vars) val[v].push_back(id);
    for (const WorldTree& child : node.children) {
      const int cid = self(self, child);
      rel.emplace_back(id, cid);
    }
    return id;
  };
  walk(walk, root);
  if (c == FrameClass::T) {
    for (int w = 0; w < counter; ++w) rel.emplace_back(w, w);
  } else if (c == FrameClass::KD) {
    for (int w = 0; w < counter; ++w)
      if (childless[w]) rel.emplace_back(w, w);
  }
  for (auto& [v, worlds] : val) std::sort(worlds.begin(), worlds.end());
  return Model(Frame(counter, std::move(rel)), val);
}

SatResult tableau_sat(const Formula& f, FrameClass c, const Budget& budget) {
  Ticker ticker(budget);
  TableauSolver solver(c, ticker);
  try {
    auto tree = solver.solve({{f, true}});
    if (!tree) return UnsatCertificate{UnsatMethod::TableauClosed};
    Model model = tree_to_model(*tree, c);
    if (!model_check(model, 0, f) || !is_in_class(model.frame(), c))
      throw std::logic_error("internal: tableau witness failed re-verification");
    return SatWitness{std::move(model), 0};
  } catch (const BudgetExceeded& e) {
    return InconclusiveSearch{e.worlds, filtration_bound(f)};
  }
}

/// Type elimination over the subformula closure, for the symmetric classes.
/// A type fixes a truth value for every closure member (composites are
/// forced by their children); two types are compatible when the box and
/// diamond constraints hold along an edge read in both directions, which
/// bakes symmetry in. Types lacking a surviving witness for some true
/// diamond or false box are discarded until a fixpoint; the survivors
/// reachable from a type satisfying f form the witness model.
class TypeElimination {
 public:
  TypeElimination(const Formula& f, FrameClass c, Ticker& ticker)
      : class_(c), ticker_(ticker), closure_(subformulas(f)) {
    for (std::size_t i = 0; i < closure_.size(); ++i) index_.emplace(closure_[i], i);
    for (std::size_t i = 0; i < closure_.size(); ++i) {
      const Kind k = closure_[i].kind();
      if (k == Kind::Var || k == Kind::Box || k == Kind::Diamond)
        free_slots_.push_back(static_cast<int>(i));
      if (k == Kind::Box) boxes_.push_back(static_cast<int>(i));
      if (k == Kind::Diamond) diamonds_.push_back(static_cast<int>(i));
    }
  }

  // Number of candidate types; the caller checks it against the budget.
  std::uint64_t type_space() const {
    return free_slots_.size() >= 63 ? std::numeric_limits<std::uint64_t>::max()
                                    : std::uint64_t{1} << free_slots_.size();
  }

  SatResult run(const Formula& f) {
    build_types();
    eliminate();
    const int root = at(f);
    for (std::size_t t = 0; t < types_.size(); ++t) {
      if (!alive_[t] || !types_[t][root]) continue;
      Model model = extract_model(t);
      if (!model_check(model, 0, f) || !is_in_class(model.frame(), class_))
        throw std::logic_error("internal: elimination witness failed re-verification");
      return SatWitness{std::move(model), 0};
    }
    return UnsatCertificate{UnsatMethod::BoundExhaustedComplete};
  }

 private:
  int at(const Formula& g) const { return static_cast<int>(index_.at(g)); }

  bool locally_admissible(const std::vector<bool>& tv) const {
    if (class_ != FrameClass::KTB) return true;
    // Reflexive frames force self-compatibility.
    for (int b : boxes_)
      if (tv[b] && !tv[at(closure_[b].child(0))]) return false;
    for (int d : diamonds_)
      if (tv[at(closure_[d].child(0))] && !tv[d]) return false;
    return true;
  }

  void build_types() {
    const std::uint64_t space = type_space();
    for (std::uint64_t mask = 0; mask < space; ++mask) {
      ticker_.tick(closure_.size());
      std::vector<bool> tv(closure_.size(), false);
      for (std::size_t s = 0; s < free_slots_.size(); ++s)
        tv[free_slots_[s]] = (mask >> s) & 1;
      // Closure members are ordered by size, so children come first.
      for (std::size_t i = 0; i < closure_.size(); ++i) {
        const Formula& g = closure_[i];
        switch (g.kind()) {
          case Kind::Var:
          case Kind::Box:
          case Kind::Diamond:
            break;
          case Kind::Falsum:
            tv[i] = false;
            break;
          case Kind::Top:
            tv[i] = true;
            break;
          case Kind::Not:
            tv[i] = !tv[at(g.child(0))];
            break;
          case Kind::Implies:
            tv[i] = !tv[at(g.child(0))] || tv[at(g.child(1))];
            break;
          case Kind::And: {
            bool all = true;
            for (const Formula& ch : g.children()) all = all && tv[at(ch)];
            tv[i] = all;
            break;
          }
          case Kind::Or: {
            bool any = false;
            for (const Formula& ch : g.children()) any = any || tv[at(ch)];
            tv[i] = any;
            break;
          }
        }
      }
      if (locally_admissible(tv)) types_.push_back(std::move(tv));
    }
    alive_.assign(types_.size(), true);

    compatible_.assign(types_.size(), std::vector<bool>(types_.size(), false));
    for (std::size_t t = 0; t < types_.size(); ++t)
      for (std::size_t s = t; s < types_.size(); ++s) {
        ticker_.tick();
        const bool c = compatible(types_[t], types_[s]);
        compatible_[t][s] = c;
        compatible_[s][t] = c;
      }
  }

  bool compatible(const std::vector<bool>& t, const std::vector<bool>& s) const {
    for (int b : boxes_) {
      const int body = at(closure_[b].child(0));
      if (t[b] && !s[body]) return false;
      if (s[b] && !t[body]) return false;
    }
    for (int d : diamonds_) {
      const int body = at(closure_[d].child(0));
      if (!t[d] && s[body]) return false;
      if (!s[d] && t[body]) return false;
    }
    return true;
  }

  void eliminate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t t = 0; t < types_.size(); ++t) {
        if (!alive_[t]) continue;
        ticker_.tick();
        if (!supported(t)) {
          alive_[t] = false;
          changed = true;
        }
      }
    }
  }

  bool supported(std::size_t t) const {
    auto witness = [&](auto&& pred) {
      for (std::size_t s = 0; s < types_.size(); ++s) {
        ticker_.tick();
        if (alive_[s] && compatible_[t][s] && pred(s)) return true;
      }
      return false;
    };
    for (int d : diamonds_) {
      const int body = at(closure_[d].child(0));
      if (types_[t][d] && !witness([&](std::size_t s) { return types_[s][body]; }))
        return false;
    }
    for (int b : boxes_) {
      const int body = at(closure_[b].child(0));
      if (!types_[t][b] && !witness([&](std::size_t s) { return !types_[s][body]; }))
        return false;
    }
    if (class_ == FrameClass::KDB && !witness([](std::size_t) { return true; }))
      return false;
    return true;
  }

  Model extract_model(std::size_t start) const {
    std::vector<int> world_of(types_.size(), -1);
    std::vector<std::size_t> order;
    world_of[start] = 0;
    order.push_back(start);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const std::size_t t = order[head];
      for (std::size_t s = 0; s < types_.size(); ++s)
        if (alive_[s] && compatible_[t][s] && world_of[s] < 0) {
          world_of[s] = static_cast<int>(order.size());
          order.push_back(s);
        }
    }
    std::vector<std::pair<int, int>> rel;
    for (std::size_t a = 0; a < order.size(); ++a)
      for (std::size_t b = 0; b < order.size(); ++b)
        if (compatible_[order[a]][order[b]])
          rel.emplace_back(static_cast<int>(a), static_cast<int>(b));
    std::map<int, std::vector<int>> val;
    for (std::size_t i = 0; i < closure_.size(); ++i) {
      if (closure_[i].kind() != Kind::Var) continue;
      std::vector<int> worlds;
      for (std::size_t a = 0; a < order.size(); ++a)
        if (types_[order[a]][i]) worlds.push_back(static_cast<int>(a));
      if (!worlds.empty()) val[closure_[i].var_index()] = std::move(worlds);
    }
    return Model(Frame(static_cast<int>(order.size()), std::move(rel)), val);
  }

  FrameClass class_;
  Ticker& ticker_;
  std::vector<Formula> closure_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
  std::vector<int> free_slots_, boxes_, diamonds_;
  std::vector<std::vector<bool>> types_;
  std::vector<bool> alive_;
  std::vector<std::vector<bool>> compatible_;
};

SatResult elimination_sat(const Formula& f, FrameClass c, const Budget& budget) {
  Ticker ticker(budget);
  TypeElimination elim(f, c, ticker);
  const std::uint64_t space = elim.type_space();
  if (space > 4096 || space * space > budget.max_nodes)
    return InconclusiveSearch{0, filtration_bound(f)};
  try {
    return elim.run(f);
  } catch (const BudgetExceeded&) {
    return InconclusiveSearch{0, filtration_bound(f)};
  }
}

}  // namespace

SatResult sat_decide(const Formula& f, FrameClass c, const Budget& budget) {
  if (budget.max_worlds < 1 || budget.max_nodes < 1)
    throw std::invalid_argument("sat_decide budget must be positive");
  if (f.kind() == Kind::Falsum) return UnsatCertificate{UnsatMethod::TableauClosed};
  switch (c) {
    case FrameClass::K:
    case FrameClass::KD:
    case FrameClass::T:
      return tableau_sat(f, c, budget);
    case FrameClass::KB:
    case FrameClass::KDB:
    case FrameClass::KTB:
      return elimination_sat(f, c, budget);
  }
  throw std::logic_error("unreachable frame class");
}

ValidityResult decide_validity(const Formula& f, FrameClass c, const Budget& budget) {
  SatResult r = sat_decide(Formula::neg(f), c, budget);
  ValidityResult out;
  if (is_unsat(r)) {
    out.valid = true;
    return out;
  }
  if (is_sat(r)) {
    out.valid = false;
    out.counterexample = std::get<SatWitness>(std::move(r));
    return out;
  }
  out.valid = false;
  out.conclusive = false;
  return out;
}

}  // namespace modal
