#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "tai/errors.hpp"
#include "tai/eval.hpp"
#include "tai/formula.hpp"
#include "tai/formula_ops.hpp"
#include "tai/rewrites.hpp"
#include "tai/structure.hpp"
#include "tai/translate.hpp"

using namespace tai;

namespace {

Relation rel(int arity, std::set<Tuple> ts) { return Relation(arity, std::move(ts)); }

FiniteStructure path3() { return parse_structure("domain 3\nrel E/2 = { (0,1) (1,2) }"); }
FiniteStructure diamond() {
  return parse_structure("domain 4\nrel E/2 = { (0,1) (0,2) (1,3) (2,3) }");
}
FiniteStructure cycle4() {
  return parse_structure("domain 4\nrel E/2 = { (0,1) (1,2) (2,3) (3,0) }");
}
FiniteStructure dom1() { return parse_structure("domain 1"); }
FiniteStructure mixed() {
  return parse_structure("domain 3\nrel P/1 = { (0) }\nrel Q/1 = { (1) }");
}

const std::string kTC = "iter R(x,y): E(x,y) | exists z. E(x,z) & R(z,y)";
const std::string kFlip = "iter R(x): !R(x)";
const std::string kMixedBody = "iter R(x): (!R(x) & P(x)) | Q(x)";

Relation direct(const FiniteStructure& s, const std::string& q,
                const std::vector<std::string>& vars) {
  EvalContext ctx{s};
  return sat_set(ctx, expand(parse_formula(q, &s.signature()), &s.signature()), vars);
}

void collect_derived(const Formula& f, std::vector<DerivedKind>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equal:
      return;
    case Formula::Kind::Iter:
      collect_derived(f.header(), out);
      for (const IterationDef& d : f.system().defs) collect_derived(d.body, out);
      return;
    case Formula::Kind::Derived:
      out.push_back(f.derivedKind());
      for (const IterationDef& d : f.system().defs) collect_derived(d.body, out);
      return;
    default:
      for (std::size_t i = 0; i < connective_children(f.kind()); ++i)
        collect_derived(f.child(i), out);
  }
}

// Translate, verify the promised output language, evaluate the result.
Relation via_pfp(const FiniteStructure& s, const std::string& q,
                 const std::vector<std::string>& vars) {
  Formula t = translate_to_pfp(parse_formula(q, &s.signature()), &s.signature());
  CHECK_FALSE(has_temporal_anywhere(t));
  CHECK_FALSE(has_iter_anywhere(t));
  std::vector<DerivedKind> kinds;
  collect_derived(t, kinds);
  for (DerivedKind k : kinds) CHECK(k == DerivedKind::PfpGen);
  EvalContext ctx{s};
  return sat_set(ctx, expand(t, &s.signature()), vars);
}

Relation via_lfp(const FiniteStructure& s, const std::string& q,
                 const std::vector<std::string>& vars) {
  EvalContext ctx{s};
  MonotoneTranslation mt =
      translate_monotone_to_lfp(parse_formula(q, &s.signature()), &s.signature());
  CHECK_FALSE(has_temporal_anywhere(mt.formula));
  CHECK_FALSE(has_iter_anywhere(mt.formula));
  std::vector<DerivedKind> kinds;
  collect_derived(mt.formula, kinds);
  for (DerivedKind k : kinds) CHECK(k == DerivedKind::Lfp);
  FiniteStructure s2 = materialize_aux(ctx, mt.aux);
  EvalContext ctx2{s2};
  return sat_set(ctx2, expand(mt.formula, &s2.signature()), vars);
}

void cross_pfp(const FiniteStructure& s, const std::string& q,
               const std::vector<std::string>& vars) {
  CAPTURE(q);
  CHECK(via_pfp(s, q, vars) == direct(s, q, vars));
}

void cross_lfp(const FiniteStructure& s, const std::string& q,
               const std::vector<std::string>& vars) {
  CAPTURE(q);
  CHECK(via_lfp(s, q, vars) == direct(s, q, vars));
}

}  // namespace

// ---------------------------------------------------------------------------
// Iteration into generalized partial fixpoints.
// ---------------------------------------------------------------------------

TEST_CASE("pfp translation: eventually header pins the flip accumulator shape") {
  FiniteStructure s = dom1();
  Formula t = translate_to_pfp(parse_formula("[F R(hx)][" + kFlip + "](y)", &s.signature()),
                               &s.signature());
  Formula want = parse_formula("pfpgen[__acc1(__w1): __acc1(__w1) | R(__w1); R(x): !R(x)](y)",
                               &s.signature());
  CHECK(t == want);
}

TEST_CASE("pfp translation: pure first-order input is returned unchanged") {
  FiniteStructure s = path3();
  Formula f = parse_formula("E(x,y) & !E(y,x)", &s.signature());
  CHECK(translate_to_pfp(f, &s.signature()) == f);
}

TEST_CASE("pfp translation matches direct evaluation on reachability headers") {
  for (const FiniteStructure& s : {path3(), diamond(), cycle4()}) {
    for (std::string h :
         {"F R(hx,hy)", "G R(hx,hy)", "X R(hx,hy)", "X X R(hx,hy)", "!R(hx,hy)",
          "X (F R(hx,hy))", "(!R(hx,hy)) U R(hx,hy)", "E(hx,hy) & F R(hx,hy)",
          "F (R(hx,hy) & R(hy,hx))"}) {
      cross_pfp(s, "[" + std::string(h) + "][" + kTC + "](u,v)", {"u", "v"});
    }
    cross_pfp(s, "[exists w. F R(w,hy)][" + kTC + "](v)", {"v"});
  }
}

TEST_CASE("pfp translation: frozen stage values on the path") {
  FiniteStructure s = path3();
  CHECK(via_pfp(s, "[X R(hx,hy)][" + kTC + "](u,v)", {"u", "v"}) ==
        rel(2, {{0, 1}, {1, 2}}));
  CHECK(via_pfp(s, "[X X R(hx,hy)][" + kTC + "](u,v)", {"u", "v"}) ==
        rel(2, {{0, 1}, {0, 2}, {1, 2}}));
  CHECK(via_pfp(s, "[!R(hx,hy)][" + kTC + "](u,v)", {"u", "v"}) == Relation::full(2, 3));
}

TEST_CASE("pfp translation matches direct evaluation on non-monotone systems") {
  FiniteStructure f1 = dom1();
  CHECK(via_pfp(f1, "[F R(hx)][" + kFlip + "](y)", {"y"}) == rel(1, {{0}}));
  CHECK(via_pfp(f1, "[(!R(hx)) U R(hx)][" + kFlip + "](y)", {"y"}) == rel(1, {{0}}));
  CHECK(via_pfp(f1, "[G R(hx)][" + kFlip + "](y)", {"y"}) == rel(1, {}));
  CHECK(via_pfp(f1, "[(!R(hx)) U (R(hx) & !R(hx))][" + kFlip + "](y)", {"y"}) == rel(1, {}));
  for (std::string h :
       {"F R(hx)", "G R(hx)", "X R(hx)", "X X R(hx)", "!R(hx)", "(!R(hx)) U R(hx)",
        "P(hx) U R(hx)", "X (G R(hx))"}) {
    cross_pfp(mixed(), "[" + std::string(h) + "][" + kMixedBody + "](y)", {"y"});
    if (h != "P(hx) U R(hx)") cross_pfp(dom1(), "[" + std::string(h) + "][" + kFlip + "](y)", {"y"});
  }
}

TEST_CASE("pfp translation handles simultaneous definitions") {
  const std::string sys =
      "iter A(x,y): E(x,y) | exists z. E(x,z) & B(z,y); B(x,y): exists z. E(x,z) & A(z,y)";
  for (const FiniteStructure& s : {path3(), diamond(), cycle4()}) {
    cross_pfp(s, "[F A(hx,hy)][" + sys + "](u,v)", {"u", "v"});
    cross_pfp(s, "[X B(hx,hy)][" + sys + "](u,v)", {"u", "v"});
    cross_pfp(s, "[X X A(hx,hy)][" + sys + "](u,v)", {"u", "v"});
    cross_pfp(s, "[(!B(hx,hy)) U A(hx,hy)][" + sys + "](u,v)", {"u", "v"});
  }
}

TEST_CASE("pfp translation expands classical operators first") {
  FiniteStructure s = path3();
  std::string q = "!lfp[R(x,y): E(x,y) | exists z. E(x,z) & R(z,y)](u,v) & u = 0";
  CHECK(via_pfp(s, q, {"u", "v"}) == rel(2, {{0, 0}}));
  cross_pfp(s, q, {"u", "v"});
}

TEST_CASE("pfp translation rejects temporal operands of eventuality operators") {
  FiniteStructure s = path3();
  for (std::string h : {"F (X R(hx,hy))", "F (F R(hx,hy))", "F (G R(hx,hy))",
                               "G (F R(hx,hy))", "(F R(hx,hy)) U R(hx,hy)",
                               "R(hx,hy) U (X R(hx,hy))"}) {
    CAPTURE(h);
    CHECK_THROWS_AS(translate_to_pfp(parse_formula("[" + std::string(h) + "][" + kTC + "](u,v)",
                                                   &s.signature()),
                                     &s.signature()),
                    UnsupportedHeader);
  }
}

// ---------------------------------------------------------------------------
// Monotone iteration into least fixpoints over stage comparison.
// ---------------------------------------------------------------------------

TEST_CASE("lfp translation: frozen next-stage value on the path") {
  CHECK(via_lfp(path3(), "[X R(hx,hy)][" + kTC + "](u,v)", {"u", "v"}) ==
        rel(2, {{0, 1}, {1, 2}}));
}

TEST_CASE("lfp translation: pure first-order input is returned unchanged") {
  FiniteStructure s = path3();
  Formula f = parse_formula("E(u,v) & !E(v,u)", &s.signature());
  MonotoneTranslation mt = translate_monotone_to_lfp(f, &s.signature());
  CHECK(mt.formula == f);
  CHECK(mt.aux.empty());
}

TEST_CASE("lfp translation records one comparison pair per construct") {
  FiniteStructure s = path3();
  MonotoneTranslation mt = translate_monotone_to_lfp(
      parse_formula("[F R(hx,hy)][" + kTC + "](u,v)", &s.signature()), &s.signature());
  REQUIRE(mt.aux.size() == 1);
  CHECK(mt.aux[0].leqName == "__leq_R1");
  CHECK(mt.aux[0].nextName == "__next_R1");
  REQUIRE(mt.aux[0].system.defs.size() == 1);
  CHECK(mt.aux[0].system.defs[0].pred == "R");
}

TEST_CASE("lfp translation matches direct evaluation, including nested headers") {
  for (const FiniteStructure& s : {path3(), diamond(), cycle4()}) {
    for (std::string h :
         {"R(hx,hy)", "F R(hx,hy)", "G R(hx,hy)", "X R(hx,hy)", "X X R(hx,hy)", "!R(hx,hy)",
          "F !R(hx,hy)", "F (G R(hx,hy))", "G (F R(hx,hy))", "X (F R(hx,hy))",
          "F (X R(hx,hy))", "G (R(hx,hy) | !R(hx,hy))", "(!R(hx,hy)) U R(hx,hy)",
          "(X R(hx,hy)) U R(hx,hy)", "R(hx,hy) U (X R(hx,hy))", "E(hx,hy) & F R(hx,hy)",
          "F (R(hx,hy) & R(hy,hx))"}) {
      cross_lfp(s, "[" + std::string(h) + "][" + kTC + "](u,v)", {"u", "v"});
    }
    cross_lfp(s, "[exists w. F R(w,hy)][" + kTC + "](v)", {"v"});
  }
}

TEST_CASE("lfp translation expands classical operators first") {
  FiniteStructure s = path3();
  CHECK(via_lfp(s, "lfp[R(x,y): E(x,y) | exists z. E(x,z) & R(z,y)](u,v)", {"u", "v"}) ==
        rel(2, {{0, 1}, {0, 2}, {1, 2}}));
}

TEST_CASE("lfp translation supports iteration nested in a definition body") {
  // The inner closure is translated on its own and the outer stage system
  // then reads the inner comparison relations.
  std::string q =
      "[F R(hx,hy)][iter R(x,y): [F S(sa,sb)][iter S(a,b): E(a,b) | exists c. E(a,c) & S(c,b)]"
      "(x,y) | exists z. E(x,z) & R(z,y)](u,v)";
  for (const FiniteStructure& s : {path3(), diamond()}) {
    MonotoneTranslation mt =
        translate_monotone_to_lfp(parse_formula(q, &s.signature()), &s.signature());
    CHECK(mt.aux.size() == 2);
    cross_lfp(s, q, {"u", "v"});
  }
  CHECK(via_lfp(path3(), q, {"u", "v"}) == rel(2, {{0, 1}, {0, 2}, {1, 2}}));
}

TEST_CASE("lfp translation rejects unsupported systems") {
  FiniteStructure s = path3();
  CHECK_THROWS_AS(
      translate_monotone_to_lfp(
          parse_formula("[F R(hx)][iter R(x): !R(x)](y)", &s.signature()), &s.signature()),
      PolarityError);
  CHECK_THROWS_AS(translate_monotone_to_lfp(
                      parse_formula("[F R(hx)][" + kMixedBody + "](y)", &mixed().signature()),
                      &mixed().signature()),
                  PolarityError);
  std::string multi =
      "[F A(hx,hy)][iter A(x,y): E(x,y) | exists z. E(x,z) & B(z,y); "
      "B(x,y): exists z. E(x,z) & A(z,y)](u,v)";
  CHECK_THROWS_AS(
      translate_monotone_to_lfp(parse_formula(multi, &s.signature()), &s.signature()),
      SemanticError);
}

TEST_CASE("materialized comparison structure prints and reparses") {
  FiniteStructure s = path3();
  EvalContext ctx{s};
  MonotoneTranslation mt = translate_monotone_to_lfp(
      parse_formula("[F R(hx,hy)][" + kTC + "](u,v)", &s.signature()), &s.signature());
  FiniteStructure s2 = materialize_aux(ctx, mt.aux);
  REQUIRE(s2.findRelation("__leq_R1") != nullptr);
  REQUIRE(s2.findRelation("__next_R1") != nullptr);
  CHECK(parse_structure(print_structure(s2)) == s2);

  // Ranks on the path: E-pairs enter at stage one, the remaining pair at
  // stage two, and the iteration is stable from stage two on.
  const Relation& leq = *s2.findRelation("__leq_R1");
  const Relation& nxt = *s2.findRelation("__next_R1");
  CHECK(leq.contains({0, 1, 0, 2}));   // stage one before stage two
  CHECK(!leq.contains({0, 2, 0, 1}));  // and not conversely
  CHECK(leq.contains({0, 1, 1, 2}));   // equal stages compare both ways
  CHECK(leq.contains({1, 2, 0, 1}));
  CHECK(!leq.contains({0, 0, 0, 1}));  // never entering compares to nothing
  CHECK(!leq.contains({0, 1, 0, 0}));
  CHECK(nxt.contains({0, 1, 0, 2}));   // consecutive stages
  CHECK(!nxt.contains({0, 2, 0, 1}));
  CHECK(nxt.contains({0, 2, 0, 2}));   // the stable stage repeats itself
  CHECK(!nxt.contains({0, 1, 0, 1}));
}
