#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "modal/formula.hpp"

using namespace modal;

TEST_CASE("parse and print round-trip on canonical forms") {
  const char* inputs[] = {
      "p1",
      "false",
      "true",
      "~p1",
      "[]p1",
      "<>false",
      "p1 & p2 & p3",
      "p1 | p2 | p3",
      "p1 -> p2 -> p3",
      "(p1 -> p2) -> p3",
      "~[]<>~p12",
      "p1 & (p2 | p3)",
      "(p1 | p2) & p3",
      "p1 -> p2 -> ~[]p3 & <>false",
      "[](p1 -> p2) -> []p1 -> []p2",
  };
  for (const char* text : inputs) {
    const Formula f = parse_formula(text);
    CHECK(print_formula(f) == text);
    CHECK(parse_formula(print_formula(f)) == f);
  }
}

TEST_CASE("precedence and associativity") {
  CHECK(parse_formula("p1 & p2 | p3") == parse_formula("(p1 & p2) | p3"));
  CHECK(parse_formula("p1 | p2 -> p3") == parse_formula("(p1 | p2) -> p3"));
  CHECK(parse_formula("p1 -> p2 -> p3") == parse_formula("p1 -> (p2 -> p3)"));
  CHECK(parse_formula("~p1 & p2") == parse_formula("(~p1) & p2"));
  CHECK(parse_formula("[]p1 -> p2") != parse_formula("[](p1 -> p2)"));

  // & and | parse as flat n-ary nodes.
  const Formula three = parse_formula("p1 & p2 & p3");
  CHECK(three.kind() == Kind::And);
  CHECK(three.children().size() == 3);
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("p0"), ParseError);
  CHECK_THROWS_AS(parse_formula("p1 &"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p1"), ParseError);
  CHECK_THROWS_AS(parse_formula("p1 p2"), ParseError);
  try {
    parse_formula("p1 &");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
}

TEST_CASE("constructors expose structure") {
  const Formula f = Formula::implies(Formula::var(1), Formula::box(Formula::falsum()));
  CHECK(f.kind() == Kind::Implies);
  CHECK(f.child(0).var_index() == 1);
  CHECK(f.child(1).kind() == Kind::Box);
  CHECK(f.size() == 4);
  CHECK(f.modal_depth() == 1);

  CHECK_THROWS_AS(Formula::var(0), std::invalid_argument);
  CHECK_THROWS_AS(Formula::var(-3), std::invalid_argument);
}

TEST_CASE("degenerate conjunction and disjunction arities") {
  CHECK(Formula::conj({}).kind() == Kind::And);
  CHECK(print_formula(Formula::conj({})) == "true");
  CHECK(print_formula(Formula::disj({})) == "false");
  CHECK(print_formula(Formula::conj({Formula::var(2)})) == "p2");

  CHECK(big_and({}) == Formula::top());
  CHECK(big_or({}) == Formula::falsum());
  CHECK(big_and({Formula::var(1)}) == Formula::var(1));
  CHECK(big_and({Formula::var(1), Formula::var(2)}) == parse_formula("p1 & p2"));
}

TEST_CASE("box and diamond powers") {
  const Formula p = Formula::var(1);
  CHECK(box_pow(0, p) == p);
  CHECK(print_formula(box_pow(3, p)) == "[][][]p1");
  CHECK(print_formula(diamond_pow(2, p)) == "<><>p1");
  CHECK(print_formula(box_plus(p)) == "p1 & []p1");

  // up_to(n+1) = up_to(n) & box^(n+1): left-nested binary conjunctions.
  CHECK(box_upto(0, p) == p);
  CHECK(print_formula(box_upto(2, p)) == "(p1 & []p1) & [][]p1");
  CHECK(box_upto(2, p) == Formula::conj({box_upto(1, p), box_pow(2, p)}));
  CHECK(box_upto(2, p).size() == 8);
}

TEST_CASE("substitution replaces variables and shares unchanged parts") {
  const Formula f = parse_formula("p1 -> [](p2 & p1)");
  Substitution s;
  s.set(1, parse_formula("<>p3"));
  const Formula g = substitute(f, s);
  CHECK(print_formula(g) == "<>p3 -> [](p2 & <>p3)");

  // p2 was untouched, so its node is shared.
  CHECK(g.child(1).child(0).child(0).raw() == f.child(1).child(0).child(0).raw());

  // Identity substitution returns the same representation.
  CHECK(substitute(f, Substitution{}).raw() == f.raw());
}

TEST_CASE("substitution composes simultaneously, not sequentially") {
  Substitution swap;
  swap.set(1, Formula::var(2));
  swap.set(2, Formula::var(1));
  CHECK(print_formula(substitute(parse_formula("p1 & p2"), swap)) == "p2 & p1");
}

TEST_CASE("vars collects variable indices") {
  CHECK(vars(parse_formula("p3 -> [](p1 & p3)")) == std::set<int>{1, 3});
  CHECK(vars(Formula::falsum()).empty());
}

TEST_CASE("subformulas are ordered by size then text") {
  const std::vector<Formula> subs = subformulas(parse_formula("p1 -> (p2 & p1)"));
  REQUIRE(subs.size() == 4);
  CHECK(print_formula(subs[0]) == "p1");
  CHECK(print_formula(subs[1]) == "p2");
  CHECK(print_formula(subs[2]) == "p2 & p1");
  CHECK(print_formula(subs[3]) == "p1 -> p2 & p1");

  // Duplicates appear once.
  CHECK(subformulas(parse_formula("p1 & p1")).size() == 2);
}

TEST_CASE("expand_abbreviations reaches the falsum/implication/box core") {
  CHECK(print_formula(expand_abbreviations(parse_formula("~p1"))) == "p1 -> false");
  CHECK(print_formula(expand_abbreviations(parse_formula("true"))) == "false -> false");
  CHECK(print_formula(expand_abbreviations(parse_formula("<>p1"))) ==
        "[](p1 -> false) -> false");
  CHECK(print_formula(expand_abbreviations(parse_formula("p1 | p2"))) ==
        "(p1 -> false) -> p2");

  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Formula> pool = {Formula::var(1), Formula::var(2), Formula::falsum()};
    for (int step = 0; step < 10; ++step) {
      const std::size_t a = rng() % pool.size();
      const std::size_t b = rng() % pool.size();
      switch (rng() % 6) {
        case 0: pool.push_back(Formula::neg(pool[a])); break;
        case 1: pool.push_back(Formula::box(pool[a])); break;
        case 2: pool.push_back(Formula::diamond(pool[a])); break;
        case 3: pool.push_back(Formula::implies(pool[a], pool[b])); break;
        case 4: pool.push_back(Formula::conj({pool[a], pool[b]})); break;
        default: pool.push_back(Formula::disj({pool[a], pool[b]})); break;
      }
    }
    const Formula expanded = expand_abbreviations(pool.back());
    for (const Formula& sub : subformulas(expanded)) {
      const Kind k = sub.kind();
      CHECK((k == Kind::Var || k == Kind::Falsum || k == Kind::Implies || k == Kind::Box));
    }
  }
}

TEST_CASE("structural equality is representation-independent") {
  CHECK(parse_formula("p1 & p2") == Formula::conj({Formula::var(1), Formula::var(2)}));
  CHECK(parse_formula("p1 & p2") != parse_formula("p2 & p1"));
  CHECK(parse_formula("p1 & p2").hash() == Formula::conj({Formula::var(1), Formula::var(2)}).hash());
}
