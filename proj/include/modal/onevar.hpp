#pragma once

#include <utility>

#include "modal/formula.hpp"
#include "modal/kripke.hpp"

namespace modal {

/// Context for the single-variable embedding: the source formula may use
/// p1..pn and p(n+1) is the fresh guard variable.
struct EmbeddingContext {
  int n = 0;

  int fresh() const { return n + 1; }

  /// n is the largest variable index occurring in f (0 when f is variable-free).
  static EmbeddingContext for_formula(const Formula& f);
};

/// Core translation that restricts every box to guard-satisfying successors:
/// variables and falsum are unchanged, implication commutes, and
/// ([]g)' = [](p(n+1) -> g'). Abbreviations are expanded first.
Formula relativize(const Formula& f, const EmbeddingContext& ctx);

/// p(n+1) & relativize(f): equivalent to f once the guard is substituted by
/// verum, and insensitive to worlds where the guard fails.
Formula guarded(const Formula& f, const EmbeddingContext& ctx);

/// Single-variable formulas over p1 used to address worlds of chain models.
/// center_marker(i) holds exactly at the centre of the i-th gap (among the
/// worlds up to that centre); tail_marker holds on the closing p-block;
/// suffix_marker(i, k) pins the rest of the k-chain from gap i onwards;
/// root_marker(k) identifies the root of the k-chain; var_proxy(k) is the
/// formula substituted for the variable pk.
Formula center_marker(int i);
Formula tail_marker();
Formula suffix_marker(int i, int k);
Formula root_marker(int k);
Formula var_proxy(int k);

/// The single-variable form: var_proxy(n+1) & t(f) where t maps variables to
/// their proxies and guards every box with var_proxy(n+1). Structurally equal
/// to substitute(guarded(f, ctx), {i -> var_proxy(i)}).
Formula star(const Formula& f, const EmbeddingContext& ctx);

/// ~star(~f): valid over reflexive symmetric frames iff f is. Uses only p1.
Formula embed(const Formula& f);

/// Chain model for index k: for each i = 1..k in turn a p-world followed by
/// a gap of 2i+1 non-p worlds (the first p-world is the root), closed by
/// three final p-worlds; the relation is the reflexive symmetric closure of
/// the consecutive-neighbour chain.
struct ChainModel {
  Model model;
  int k;
  int root_world;

  /// Centre of the i-th gap (0-based world index i*i + 2*i - 1), 1 <= i <= k.
  int c_world(int i) const;
};

ChainModel build_chain(int k);

/// Disjoint union of m with the chains for 1..n+1, linking every world x of
/// m to the root of chain k (both directions) exactly when pk holds at x.
/// In the result p1 follows the chain pattern and is false on m's worlds;
/// every other variable is cleared. Requires the guard variable p(n+1) to
/// hold at every world of m, and c to be one of K, KB, KTB.
Model attach(const Model& m, const EmbeddingContext& ctx, FrameClass c);

/// Total witness pipeline: checks m is in class c and satisfies f at world,
/// makes the guard true everywhere, and attaches the chains. The returned
/// model satisfies star(f, ctx) at the returned world.
std::pair<Model, int> star_witness(const Model& m, int world, const Formula& f,
                                   FrameClass c);

}  // namespace modal
