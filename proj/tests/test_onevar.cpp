#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "modal/formula.hpp"
#include "modal/kripke.hpp"
#include "modal/onevar.hpp"

using namespace modal;

TEST_CASE("embedding context tracks the largest variable") {
  CHECK(EmbeddingContext::for_formula(parse_formula("p1 & <>p2")).n == 2);
  CHECK(EmbeddingContext::for_formula(parse_formula("p3")).n == 3);
  CHECK(EmbeddingContext::for_formula(parse_formula("true")).n == 0);
  CHECK(EmbeddingContext{2}.fresh() == 3);
}

TEST_CASE("relativize guards every box") {
  const EmbeddingContext ctx{1};
  CHECK(print_formula(relativize(parse_formula("[]p1"), ctx)) == "[](p2 -> p1)");
  CHECK(print_formula(relativize(parse_formula("p1 -> []((p1 -> false) -> false)"), ctx)) ==
        "p1 -> [](p2 -> (p1 -> false) -> false)");
  // Abbreviations are expanded before relativizing.
  CHECK(relativize(parse_formula("<>p1"), ctx) ==
        relativize(expand_abbreviations(parse_formula("<>p1")), ctx));

  CHECK_THROWS_AS(relativize(parse_formula("p2"), ctx), std::invalid_argument);
}

TEST_CASE("guarded formulas forget the guard under verum") {
  const Formula f = parse_formula("p1 & <>(p2 | []p1)");
  const EmbeddingContext ctx = EmbeddingContext::for_formula(f);
  const Formula g = guarded(f, ctx);
  CHECK(g.kind() == Kind::And);
  CHECK(g.child(0) == Formula::var(ctx.fresh()));

  Substitution verum;
  verum.set(ctx.fresh(), Formula::top());
  const Formula back = substitute(g, verum);

  const Model m(Frame(3, {{0, 1}, {1, 2}, {2, 0}, {1, 1}}), {{1, {0, 1}}, {2, {2}}});
  for (int w = 0; w < 3; ++w) CHECK(model_check(m, w, f) == model_check(m, w, back));
}

TEST_CASE("marker formulas have the frozen shapes") {
  CHECK(print_formula(center_marker(1)) == "(~p1 & []~p1) & <><>p1");
  CHECK(print_formula(tail_marker()) == "p1 & []p1");
  CHECK(print_formula(root_marker(1)) ==
        "p1 & <><>(((~p1 & []~p1) & <><>p1) & <><><>(p1 & []p1))");
  CHECK(suffix_marker(1, 1) ==
        Formula::conj({center_marker(1), diamond_pow(3, tail_marker())}));
  CHECK(suffix_marker(1, 2) ==
        Formula::conj({center_marker(1), diamond_pow(5, suffix_marker(2, 2))}));
  CHECK(var_proxy(1) ==
        Formula::conj({Formula::neg(Formula::var(1)), Formula::diamond(root_marker(1))}));
  for (const Formula& f : {center_marker(3), root_marker(2), var_proxy(4)})
    CHECK(vars(f) == std::set<int>{1});
}

TEST_CASE("chain models have the stated layout") {
  const ChainModel c1 = build_chain(1);
  CHECK(c1.k == 1);
  CHECK(c1.root_world == 0);
  CHECK(c1.c_world(1) == 2);
  CHECK(format_model(c1.model) ==
        "worlds 7\n"
        "rel 0 0\nrel 0 1\nrel 1 0\nrel 1 1\nrel 1 2\nrel 2 1\nrel 2 2\nrel 2 3\n"
        "rel 3 2\nrel 3 3\nrel 3 4\nrel 4 3\nrel 4 4\nrel 4 5\nrel 5 4\nrel 5 5\n"
        "rel 5 6\nrel 6 5\nrel 6 6\n"
        "val p1 0 4 5 6\n");

  const ChainModel c2 = build_chain(2);
  CHECK(c2.model.frame().world_count() == 13);
  CHECK(c2.c_world(1) == 2);
  CHECK(c2.c_world(2) == 7);
  CHECK(c2.model.valuation() ==
        std::map<int, std::vector<int>>{{1, {0, 4, 10, 11, 12}}});

  for (int k = 1; k <= 6; ++k) {
    const ChainModel c = build_chain(k);
    CHECK(c.model.frame().world_count() == k * k + 3 * k + 3);
    CHECK(is_in_class(c.model.frame(), FrameClass::KTB));
  }
  CHECK_THROWS_AS(build_chain(0), std::invalid_argument);
}

TEST_CASE("markers address the chains they were built for") {
  for (int k = 1; k <= 4; ++k) {
    const ChainModel chain = build_chain(k);
    CHECK(model_check(chain.model, chain.root_world, root_marker(k)));
    for (int i = 1; i <= k; ++i)
      CHECK(model_check(chain.model, chain.c_world(i), center_marker(i)));
    // The root marker of any other chain index fails at this root.
    for (int j = 1; j <= 4; ++j)
      if (j != k) CHECK_FALSE(model_check(chain.model, chain.root_world, root_marker(j)));
  }
}

TEST_CASE("star is the proxy substitution of the guarded formula") {
  const Formula f = parse_formula("p1 & <>(p2 -> p1)");
  const EmbeddingContext ctx = EmbeddingContext::for_formula(f);
  Substitution proxies;
  for (int i = 1; i <= ctx.fresh(); ++i) proxies.set(i, var_proxy(i));
  CHECK(star(f, ctx) == substitute(guarded(f, ctx), proxies));

  CHECK(star(Formula::var(1), EmbeddingContext{1}) ==
        Formula::conj({var_proxy(2), var_proxy(1)}));
  CHECK(vars(star(f, ctx)) == std::set<int>{1});

  // Variable-free formulas still get the guard proxy.
  const Formula top_star = star(Formula::top(), EmbeddingContext{0});
  CHECK(top_star.kind() == Kind::And);
  CHECK(top_star.child(0) == var_proxy(1));
}

TEST_CASE("embed negates the starred negation and uses only p1") {
  const Formula f = parse_formula("p1 -> []<>p1");
  const Formula neg_f = Formula::neg(f);
  CHECK(embed(f) == Formula::neg(star(neg_f, EmbeddingContext::for_formula(neg_f))));
  CHECK(vars(embed(parse_formula("p2 & (p3 | []p1)"))) == std::set<int>{1});
}

TEST_CASE("attach links worlds to the chains of their true variables") {
  const Model m = parse_model("worlds 1\nrel 0 0\nval p1 0\nval p2 0\n");
  const EmbeddingContext ctx{1};
  const Model attached = attach(m, ctx, FrameClass::KTB);

  // Base world, then the 7-world chain for p1 and the 13-world chain for p2.
  CHECK(attached.frame().world_count() == 21);
  CHECK(attached.frame().has_edge(0, 1));
  CHECK(attached.frame().has_edge(1, 0));
  CHECK(attached.frame().has_edge(0, 8));
  CHECK(attached.frame().has_edge(8, 0));
  CHECK(is_in_class(attached.frame(), FrameClass::KTB));

  // In the result only p1 survives, false on the base block.
  CHECK(attached.valuation() ==
        std::map<int, std::vector<int>>{{1, {1, 5, 6, 7, 8, 12, 18, 19, 20}}});

  // The roots answer to their markers through the link.
  CHECK(model_check(attached, 0, Formula::diamond(root_marker(1))));
  CHECK(model_check(attached, 0, Formula::diamond(root_marker(2))));
  CHECK(model_check(attached, 0, var_proxy(1)));
}

TEST_CASE("attach validates its preconditions") {
  const EmbeddingContext ctx{1};
  // Guard p2 must hold everywhere.
  CHECK_THROWS_AS(attach(parse_model("worlds 1\nrel 0 0\nval p1 0\n"), ctx, FrameClass::KTB),
                  std::invalid_argument);
  // Model must lie in the class.
  CHECK_THROWS_AS(attach(parse_model("worlds 1\nval p2 0\n"), ctx, FrameClass::KTB),
                  std::invalid_argument);
  // Only K, KB and KTB are supported.
  const Model fine = parse_model("worlds 1\nrel 0 0\nval p2 0\n");
  CHECK_THROWS_AS(attach(fine, ctx, FrameClass::KD), std::invalid_argument);
  CHECK_THROWS_AS(attach(fine, ctx, FrameClass::T), std::invalid_argument);
  CHECK_THROWS_AS(attach(fine, ctx, FrameClass::KDB), std::invalid_argument);
}

TEST_CASE("star_witness produces a model of the starred formula") {
  const Model m = parse_model("worlds 1\nrel 0 0\nval p1 0\n");
  const Formula f = Formula::var(1);
  const EmbeddingContext ctx = EmbeddingContext::for_formula(f);
  const auto [witness, w0] = star_witness(m, 0, f, FrameClass::KTB);
  CHECK(w0 == 0);
  CHECK(witness.frame().world_count() == 21);
  CHECK(model_check(witness, w0, star(f, ctx)));

  // A two-world K model through the same pipeline.
  const Model m2 = parse_model("worlds 2\nrel 0 1\nval p1 0\nval p2 1\n");
  const Formula g = parse_formula("p1 & <>p2");
  const auto [witness2, start2] = star_witness(m2, 0, g, FrameClass::K);
  CHECK(model_check(witness2, start2, star(g, EmbeddingContext::for_formula(g))));

  // The base model must satisfy the formula at the chosen world.
  CHECK_THROWS_AS(star_witness(m, 0, Formula::neg(f), FrameClass::KTB),
                  std::invalid_argument);
}
