#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "tai/errors.hpp"
#include "tai/eval.hpp"
#include "tai/formula.hpp"
#include "tai/structure.hpp"

using namespace tai;

namespace {

FiniteStructure path3() { return parse_structure("domain 3\nrel E/2 = { (0,1) (1,2) }"); }

Relation rel(int arity, std::set<Tuple> ts) { return Relation(arity, std::move(ts)); }

}  // namespace

TEST_CASE("eval_fo: atoms, equality, and quantifiers") {
  FiniteStructure s = path3();
  EvalContext ctx{s};
  Assignment a;
  a.push("x", 0);
  a.push("y", 1);
  CHECK(eval_fo(ctx, parse_formula("E(x,y)"), a));
  CHECK(!eval_fo(ctx, parse_formula("E(y,x)"), a));
  CHECK(eval_fo(ctx, parse_formula("x = x"), a));
  CHECK(!eval_fo(ctx, parse_formula("x = y"), a));

  Assignment empty;
  CHECK(!eval_fo(ctx, parse_formula("forall x. exists y. E(x,y)"), empty));  // 2 has no successor
  CHECK(eval_fo(ctx, parse_formula("exists x. exists y. E(x,y)"), empty));
  CHECK(eval_fo(ctx, parse_formula("forall x. (exists y. E(x,y) | x = 2)"), empty));
}

TEST_CASE("eval_fo: connective truth tables") {
  FiniteStructure s = parse_structure("domain 2\nrel P/1 = { (1) }");
  EvalContext ctx{s};
  Assignment a;
  a.push("x", 0);
  a.push("y", 1);
  CHECK(eval_fo(ctx, parse_formula("P(x) -> P(y)"), a));
  CHECK(eval_fo(ctx, parse_formula("P(y) -> P(x)"), a) == false);
  CHECK(eval_fo(ctx, parse_formula("P(x) <-> P(x)"), a));
  CHECK(!eval_fo(ctx, parse_formula("P(x) <-> P(y)"), a));
  CHECK(eval_fo(ctx, parse_formula("!P(x)"), a));
}

TEST_CASE("eval_fo: errors") {
  FiniteStructure s = path3();
  EvalContext ctx{s};
  Assignment a;
  CHECK_THROWS_AS(eval_fo(ctx, parse_formula("E(x,y)"), a), SemanticError);   // unbound var
  CHECK_THROWS_AS(eval_fo(ctx, parse_formula("Q(0)"), a), SemanticError);     // unbound pred
  CHECK_THROWS_AS(eval_fo(ctx, parse_formula("E(0)"), a), SemanticError);     // arity
  CHECK_THROWS_AS(eval_fo(ctx, parse_formula("P(5)"), a), SemanticError);     // literal range
  CHECK_THROWS_AS(eval_fo(ctx, parse_formula("lfp[R(x): R(x)](0)"), a), SemanticError);
}

TEST_CASE("eval_term: constants fall back through the structure") {
  FiniteStructure s = parse_structure("domain 3\nconst c = 2\nrel E/2 = { (0,1) }");
  EvalContext ctx{s};
  Assignment a;
  CHECK(eval_term(ctx, Term::variable("c"), a) == 2);  // signature-free parse fallback
  CHECK(eval_term(ctx, Term::constant("c"), a) == 2);
  CHECK(eval_term(ctx, Term::element(1), a) == 1);
  a.push("c", 0);  // an explicit binding shadows the constant
  CHECK(eval_term(ctx, Term::variable("c"), a) == 0);
  CHECK_THROWS_AS(eval_term(ctx, Term::constant("zz"), a), SemanticError);
}

TEST_CASE("sat_set: documented examples") {
  FiniteStructure s = path3();
  EvalContext ctx{s};
  CHECK(sat_set(ctx, parse_formula("exists y. E(x,y)"), {"x"}) == rel(1, {{0}, {1}}));
  CHECK(sat_set(ctx, parse_formula("x = x"), {"x"}) == rel(1, {{0}, {1}, {2}}));
  CHECK(sat_set(ctx, parse_formula("!(x = x)"), {"x"}) == Relation(1));
  CHECK(sat_set(ctx, parse_formula("E(x,y)"), {"x", "y"}) == rel(2, {{0, 1}, {1, 2}}));
  // Argument order follows the vars list, not the formula.
  CHECK(sat_set(ctx, parse_formula("E(x,y)"), {"y", "x"}) == rel(2, {{1, 0}, {2, 1}}));
}

TEST_CASE("sat_set: intersection/union laws on sample formulas") {
  FiniteStructure s = path3();
  EvalContext ctx{s};
  Formula f = parse_formula("exists y. E(x,y)");
  Formula g = parse_formula("exists y. E(y,x)");
  Relation fr = sat_set(ctx, f, {"x"});
  Relation gr = sat_set(ctx, g, {"x"});
  Relation both = sat_set(ctx, Formula::conj(f, g), {"x"});
  Relation either = sat_set(ctx, Formula::disj(f, g), {"x"});
  std::set<Tuple> inter, uni;
  for (const Tuple& t : fr.tuples())
    if (gr.contains(t)) inter.insert(t);
  uni = fr.tuples();
  for (const Tuple& t : gr.tuples()) uni.insert(t);
  CHECK(both == rel(1, inter));
  CHECK(either == rel(1, uni));
}

TEST_CASE("sat_set against the serial reference, parallel on and off") {
  FiniteStructure s = parse_structure("domain 4\nrel E/2 = { (0,1) (1,2) (2,3) (3,0) (1,1) }");
  for (const char* text : {
           "E(x,y)",
           "exists z. (E(x,z) & E(z,y))",
           "forall z. (E(x,z) -> E(z,y))",
           "!E(x,y) | x = y",
           "E(x,x) <-> E(y,y)",
       }) {
    Formula f = parse_formula(text);
    EvalContext serial{s, nullptr, {.parallel = false}};
    EvalContext parallel{s, nullptr, {.parallel = true, .parallelCutoff = 1}};
    Relation a = sat_set(serial, f, {"x", "y"});
    Relation b = sat_set(parallel, f, {"x", "y"});
    Relation c = sat_set_reference(serial, f, {"x", "y"});
    CHECK(a == b);
    CHECK(a == c);
  }
}

TEST_CASE("truth_table layout: first variable is the slowest axis") {
  FiniteStructure s = parse_structure("domain 2\nrel P/1 = { (1) }");
  EvalContext ctx{s};
  std::vector<std::uint8_t> bits = truth_table(ctx, parse_formula("P(x)"), {"x", "y"});
  // Index = 2*x + y.
  CHECK(bits == std::vector<std::uint8_t>{0, 0, 1, 1});
  bits = truth_table(ctx, parse_formula("P(y)"), {"x", "y"});
  CHECK(bits == std::vector<std::uint8_t>{0, 1, 0, 1});
  CHECK(truth_table(ctx, parse_formula("exists x. P(x)"), {}) ==
        std::vector<std::uint8_t>{1});
}

TEST_CASE("truth_table: errors escape the parallel region intact") {
  FiniteStructure s = parse_structure("domain 3\nrel E/2 = { }");
  EvalContext ctx{s, nullptr, {.parallel = true, .parallelCutoff = 1}};
  CHECK_THROWS_AS(truth_table(ctx, parse_formula("Q(x)"), {"x", "y", "z"}), SemanticError);
}

TEST_CASE("apply_operator: documented single steps") {
  FiniteStructure s = path3();
  EvalContext ctx{s};
  Formula tc = parse_formula("[F R(z1,z2)][iter R(x,y): E(x,y) | exists z. (E(x,z) & R(z,y))](a,b)");
  std::vector<Relation> cur{Relation(2)};
  std::vector<Relation> next = apply_operator(ctx, tc.system(), cur);
  CHECK(next[0] == rel(2, {{0, 1}, {1, 2}}));
  next = apply_operator(ctx, tc.system(), next);
  CHECK(next[0] == rel(2, {{0, 1}, {1, 2}, {0, 2}}));

  FiniteStructure one = parse_structure("domain 1");
  EvalContext ctx1{one};
  Formula neg = parse_formula("[F R(z)][iter R(x): !R(x)](y)");
  std::vector<Relation> out = apply_operator(ctx1, neg.system(), {Relation(1)});
  CHECK(out[0] == rel(1, {{0}}));

  Formula two = parse_formula("[F A(z)][iter A(x): !B(x); B(x): A(x)](y)");
  std::vector<Relation> ab = apply_operator(ctx1, two.system(), {Relation(1), Relation(1)});
  CHECK(ab[0] == rel(1, {{0}}));  // reads the old (empty) B
  CHECK(ab[1] == Relation(1));    // reads the old (empty) A
}

TEST_CASE("apply_operator: monotone and anti-monotone one-step behavior") {
  FiniteStructure s = parse_structure("domain 2\nrel E/2 = { (0,1) (1,0) }");
  EvalContext ctx{s};
  Formula pos = parse_formula("[F R(z)][iter R(x): exists y. (E(x,y) & R(y)) | E(x,x)](w)");
  Formula neg = parse_formula("[F R(z)][iter R(x): !R(x)](w)");
  // All 16 pairs P ⊆ P' over domain {0,1}, arity 1.
  std::vector<Relation> subsets;
  for (int mask = 0; mask < 4; ++mask) {
    Relation r(1);
    if (mask & 1) r.insert({0});
    if (mask & 2) r.insert({1});
    subsets.push_back(r);
  }
  auto subset = [](const Relation& a, const Relation& b) {
    for (const Tuple& t : a.tuples())
      if (!b.contains(t)) return false;
    return true;
  };
  for (const Relation& p : subsets)
    for (const Relation& q : subsets) {
      if (!subset(p, q)) continue;
      Relation fp = apply_operator(ctx, pos.system(), {p})[0];
      Relation fq = apply_operator(ctx, pos.system(), {q})[0];
      CHECK(subset(fp, fq));
      Relation gp = apply_operator(ctx, neg.system(), {p})[0];
      Relation gq = apply_operator(ctx, neg.system(), {q})[0];
      CHECK(subset(gq, gp));
    }
}

TEST_CASE("eval negation law on sample formulas") {
  FiniteStructure s = path3();
  EvalContext ctx{s};
  for (const char* text : {"E(x,y)", "exists z. E(x,z)", "forall z. E(z,y)", "x = y"}) {
    Formula f = parse_formula(text);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        Assignment a;
        a.push("x", x);
        a.push("y", y);
        CHECK(eval_fo(ctx, Formula::negation(f), a) == !eval_fo(ctx, f, a));
      }
  }
}

TEST_CASE("PredEnv: inner bindings shadow, others fall through") {
  FiniteStructure s = path3();
  PredEnv outer;
  outer.bind("R", rel(1, {{0}}));
  outer.bind("Q", rel(1, {{1}}));
  PredEnv inner(&outer);
  inner.bind("R", rel(1, {{2}}));
  EvalContext ctx{s, &inner};
  Assignment a;
  CHECK(sat_set(ctx, parse_formula("R(x)"), {"x"}) == rel(1, {{2}}));
  CHECK(sat_set(ctx, parse_formula("Q(x)"), {"x"}) == rel(1, {{1}}));
  CHECK(sat_set(ctx, parse_formula("E(x,x)"), {"x"}) == Relation(1));
}
