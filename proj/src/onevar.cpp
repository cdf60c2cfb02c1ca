#include "modal/onevar.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace modal {

EmbeddingContext EmbeddingContext::for_formula(const Formula& f) {
  std::set<int> vs = vars(f);
  return EmbeddingContext{vs.empty() ? 0 : *vs.rbegin()};
}

namespace {

void check_context(const Formula& f, const EmbeddingContext& ctx) {
  if (ctx.n < 0) throw std::invalid_argument("embedding context needs n >= 0");
  std::set<int> vs = vars(f);
  if (!vs.empty() && *vs.rbegin() > ctx.n)
    throw std::invalid_argument("formula uses p" + std::to_string(*vs.rbegin()) +
                                " but the context reserves p" +
                                std::to_string(ctx.fresh()) + " as fresh");
}

Formula relativize_core(const Formula& f, const Formula& guard,
                        std::unordered_map<const Formula::Node*, Formula>& memo) {
  auto it = memo.find(f.raw());
  if (it != memo.end()) return it->second;
  Formula out = [&]() -> Formula {
    switch (f.kind()) {
      case Kind::Var:
      case Kind::Falsum:
        return f;
      case Kind::Implies:
        return Formula::implies(relativize_core(f.child(0), guard, memo),
                                relativize_core(f.child(1), guard, memo));
      case Kind::Box:
        return Formula::box(
            Formula::implies(guard, relativize_core(f.child(0), guard, memo)));
      default:
        throw std::logic_error("relativize: abbreviation survived expansion");
    }
  }();
  memo.emplace(f.raw(), out);
  return out;
}

Formula star_core(const Formula& f, const Formula& guard_proxy,
                  std::unordered_map<const Formula::Node*, Formula>& memo) {
  auto it = memo.find(f.raw());
  if (it != memo.end()) return it->second;
  Formula out = [&]() -> Formula {
    switch (f.kind()) {
      case Kind::Var:
        return var_proxy(f.var_index());
      case Kind::Falsum:
        return f;
      case Kind::Implies:
        return Formula::implies(star_core(f.child(0), guard_proxy, memo),
                                star_core(f.child(1), guard_proxy, memo));
      case Kind::Box:
        return Formula::box(Formula::implies(
            guard_proxy, star_core(f.child(0), guard_proxy, memo)));
      default:
        throw std::logic_error("star: abbreviation survived expansion");
    }
  }();
  memo.emplace(f.raw(), out);
  return out;
}

}  // namespace

Formula relativize(const Formula& f, const EmbeddingContext& ctx) {
  check_context(f, ctx);
  std::unordered_map<const Formula::Node*, Formula> memo;
  return relativize_core(expand_abbreviations(f), Formula::var(ctx.fresh()), memo);
}

Formula guarded(const Formula& f, const EmbeddingContext& ctx) {
  return Formula::conj({Formula::var(ctx.fresh()), relativize(f, ctx)});
}

Formula center_marker(int i) {
  if (i < 0) throw std::invalid_argument("center_marker needs i >= 0");
  Formula p = Formula::var(1);
  return Formula::conj({box_upto(i, Formula::neg(p)), diamond_pow(i + 1, p)});
}

Formula tail_marker() { return box_plus(Formula::var(1)); }

Formula suffix_marker(int i, int k) {
  if (i < 1 || i > k) throw std::invalid_argument("suffix_marker needs 1 <= i <= k");
  if (i == k)
    return Formula::conj({center_marker(k), diamond_pow(k + 2, tail_marker())});
  return Formula::conj(
      {center_marker(i), diamond_pow(2 * i + 3, suffix_marker(i + 1, k))});
}

Formula root_marker(int k) {
  if (k < 1) throw std::invalid_argument("root_marker needs k >= 1");
  return Formula::conj({Formula::var(1), diamond_pow(2, suffix_marker(1, k))});
}

Formula var_proxy(int k) {
  if (k < 1) throw std::invalid_argument("var_proxy needs k >= 1");
  return Formula::conj(
      {Formula::neg(Formula::var(1)), Formula::diamond(root_marker(k))});
}

Formula star(const Formula& f, const EmbeddingContext& ctx) {
  check_context(f, ctx);
  Formula proxy = var_proxy(ctx.fresh());
  std::unordered_map<const Formula::Node*, Formula> memo;
  Formula body = star_core(expand_abbreviations(f), proxy, memo);
  return Formula::conj({std::move(proxy), std::move(body)});
}

Formula embed(const Formula& f) {
  EmbeddingContext ctx = EmbeddingContext::for_formula(f);
  return Formula::neg(star(Formula::neg(f), ctx));
}

int ChainModel::c_world(int i) const {
  if (i < 1 || i > k) throw std::invalid_argument("chain gap index out of range");
  return i * i + 2 * i - 1;
}

ChainModel build_chain(int k) {
  if (k < 1) throw std::invalid_argument("build_chain needs k >= 1");
  std::vector<int> p_worlds;
  int n = 0;
  for (int i = 1; i <= k; ++i) {
    p_worlds.push_back(n);  // segment leader; the first one is the root
    n += 1 + (2 * i + 1);
  }
  for (int t = 0; t < 3; ++t) p_worlds.push_back(n + t);
  n += 3;

  std::vector<std::pair<int, int>> rel;
  rel.reserve(3 * static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) rel.emplace_back(w, w);
  for (int w = 0; w + 1 < n; ++w) {
    rel.emplace_back(w, w + 1);
    rel.emplace_back(w + 1, w);
  }
  Model model(Frame(n, std::move(rel)), {{1, p_worlds}});
  return ChainModel{std::move(model), k, 0};
}

Model attach(const Model& m, const EmbeddingContext& ctx, FrameClass c) {
  if (c != FrameClass::K && c != FrameClass::KB && c != FrameClass::KTB)
    throw std::invalid_argument("attach supports classes K, KB and KTB");
  if (!is_in_class(m.frame(), c))
    throw std::invalid_argument("model frame is not in the requested class");
  const int fresh = ctx.fresh();
  const int base_worlds = m.frame().world_count();
  for (int w = 0; w < base_worlds; ++w) {
    if (!m.holds(fresh, w))
      throw std::invalid_argument("guard variable p" + std::to_string(fresh) +
                                  " must hold at every world");
  }

  std::vector<Model> blocks;
  blocks.reserve(static_cast<std::size_t>(fresh) + 1);
  blocks.push_back(m);
  for (int k = 1; k <= fresh; ++k) blocks.push_back(build_chain(k).model);
  auto [unioned, offsets] = disjoint_union(blocks);

  std::vector<std::pair<int, int>> rel = unioned.frame().relation();
  for (int x = 0; x < base_worlds; ++x) {
    for (int k = 1; k <= fresh; ++k) {
      if (m.holds(k, x)) {
        rel.emplace_back(x, offsets[k]);
        rel.emplace_back(offsets[k], x);
      }
    }
  }

  const std::map<int, std::vector<int>> union_val = unioned.valuation();
  std::vector<int> p_worlds;
  for (int w : union_val.at(1))
    if (w >= offsets[1]) p_worlds.push_back(w);

  return Model(Frame(unioned.frame().world_count(), std::move(rel)),
               {{1, p_worlds}});
}

std::pair<Model, int> star_witness(const Model& m, int world, const Formula& f,
                                   FrameClass c) {
  EmbeddingContext ctx = EmbeddingContext::for_formula(f);
  if (!is_in_class(m.frame(), c))
    throw std::invalid_argument("model frame is not in the requested class");
  if (!model_check(m, world, f))
    throw std::invalid_argument("the formula does not hold at the given world");
  std::vector<int> everywhere(static_cast<std::size_t>(m.frame().world_count()));
  std::iota(everywhere.begin(), everywhere.end(), 0);
  Model prepared = m.with_valuation(ctx.fresh(), everywhere);
  return {attach(prepared, ctx, c), world};
}

}  // namespace modal
