#include <gtest/gtest.h>

#include <random>

#include "rhosk/rewrite.hpp"
#include "rhosk/ski.hpp"
#include "rhosk/syntax.hpp"

using namespace rhosk;

namespace {

// A small presentation with the curried parallel operator as an ACU group.
Presentation par_presentation() {
  Presentation p;
  p.sorts = {{"T"}};
  p.constructors = {{"0", {}, "T"}, {"|", {}, "T"}, {"C", {}, "T"}, {"P", {}, "T"},
                    {"Q", {}, "T"}, {"K", {}, "T"}, {"@", {"T", "T"}, "T"}};
  auto bar = Pattern::node("|");
  p.congruence.acu_groups = {
      {Pattern::apply(Pattern::apply(bar, Pattern::var("x")), Pattern::var("y")),
       Term::make("0")}};
  return p;
}

Term par(Term a, Term b) { return Term::apply(Term::apply(Term::make("|"), a), b); }

const Presentation& plain() {
  static const Presentation p = ski_presentation(SkiVariant::plain);
  return p;
}

}  // namespace

TEST(Validate, SkiPresentationsAreOk) {
  EXPECT_TRUE(validate_presentation(ski_presentation(SkiVariant::plain)).ok());
  EXPECT_TRUE(validate_presentation(ski_presentation(SkiVariant::whnf)).ok());
  EXPECT_TRUE(validate_presentation(ski_presentation(SkiVariant::gas)).ok());
}

TEST(Validate, EmptyPresentationIsOk) { EXPECT_TRUE(validate_presentation({}).ok()); }

TEST(Validate, UnboundMetavariable) {
  Presentation p = ski_presentation(SkiVariant::plain);
  p.rules.push_back({"bad", Pattern::apply(Pattern::node("I"), Pattern::var("z")),
                     Pattern::var("w")});
  auto report = validate_presentation(p);
  ASSERT_FALSE(report.ok());
  bool found = false;
  for (const auto& d : report.defects) found |= d.find("unbound metavariable") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(Validate, ArityAndSortDefects) {
  Presentation p = ski_presentation(SkiVariant::plain);
  p.sorts.push_back({"U"});
  p.constructors.push_back({"u", {}, "U"});
  p.rules.push_back({"arity", Pattern::node("S", {Pattern::var("x")}), Pattern::var("x")});
  p.rules.push_back({"sorts", Pattern::apply(Pattern::node("K"), Pattern::var("x")),
                     Pattern::node("u")});
  p.rules.push_back({"sigma", Pattern::node("S"), Pattern::node("S")});
  auto report = validate_presentation(p);
  EXPECT_EQ(report.defects.size(), 3u);
}

TEST(Validate, NonTerminatingEquation) {
  Presentation p;
  p.sorts = {{"T"}};
  p.constructors = {{"a", {}, "T"}, {"f", {"T"}, "T"}, {"g", {"T"}, "T"}};
  p.congruence.oriented_equations = {
      {Pattern::node("f", {Pattern::var("x")}), Pattern::node("g", {Pattern::var("x")})},
      {Pattern::node("g", {Pattern::var("x")}), Pattern::node("f", {Pattern::var("x")})}};
  p.congruence.fuel = 50;
  EXPECT_FALSE(validate_presentation(p).ok());
  EXPECT_THROW(canonicalize(p, Term::make("f", {Term::make("a")})), FuelExhausted);
}

TEST(Canonicalize, UnitLaw) {
  auto p = par_presentation();
  EXPECT_EQ(canonicalize(p, par(Term::make("0"), Term::make("P"))), Term::make("P"));
}

TEST(Canonicalize, MarkerPushedLeft) {
  auto p = ski_presentation(SkiVariant::whnf);
  EXPECT_EQ(canonicalize(p, parse_ski("(R (S K))")), parse_ski("((R S) K)"));
}

TEST(Canonicalize, Idempotent) {
  auto p = par_presentation();
  Term t = par(par(Term::make("Q"), Term::make("0")), par(Term::make("P"), Term::make("Q")));
  Term c = canonicalize(p, t);
  EXPECT_EQ(canonicalize(p, c), c);
  auto w = ski_presentation(SkiVariant::whnf);
  Term u = parse_ski("(R (R ((S (R K)) I)))");
  EXPECT_EQ(canonicalize(w, canonicalize(w, u)), canonicalize(w, u));
}

TEST(Congruent, MonoidLaws) {
  auto p = par_presentation();
  Term P = Term::make("P"), Q = Term::make("Q"), Z = Term::make("0");
  EXPECT_TRUE(congruent(p, par(P, Q), par(Q, P)));
  EXPECT_TRUE(congruent(p, par(Z, par(P, Q)), par(Q, P)));
  EXPECT_TRUE(congruent(p, par(par(P, Q), Z), par(P, par(Q, Z))));
  EXPECT_FALSE(congruent(p, par(P, P), P));
}

TEST(Match, Simple) {
  auto b = match_pattern(plain(), Pattern::apply(Pattern::node("I"), Pattern::var("z")),
                         parse_ski("(I K)"));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->at("z"), Term::make("K"));
  auto any = match_pattern(plain(), Pattern::var("x"), parse_ski("(S K)"));
  ASSERT_TRUE(any);
  EXPECT_EQ(any->at("x"), parse_ski("(S K)"));
}

TEST(Match, NonLinear) {
  auto p = par_presentation();
  auto pat = Pattern::apply(Pattern::apply(Pattern::node("@"), Pattern::var("x")),
                            Pattern::var("x"));
  Term P = Term::make("P"), Q = Term::make("Q");
  Term same = Term::make("@", {Term::make("@", {Term::make("@"), par(P, Q)}), par(Q, P)});
  EXPECT_TRUE(match_pattern(p, pat, canonicalize(p, same)));
  Term differ = Term::make("@", {Term::make("@", {Term::make("@"), P}), Q});
  EXPECT_FALSE(match_pattern(p, pat, differ));
}

TEST(Redexes, NestedIota) {
  auto rs = find_redexes(plain(), parse_ski("(I (I K))"));
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0].position, Position{});
  EXPECT_EQ(rs[1].position, Position{1});
  EXPECT_EQ(apply_redex(plain(), parse_ski("(I (I K))"), rs[1]), parse_ski("(I K)"));
  EXPECT_EQ(step(plain(), parse_ski("(I (I K))")), std::vector<Term>{parse_ski("(I K)")});
}

TEST(Redexes, NoneOnAtom) { EXPECT_TRUE(find_redexes(plain(), parse_ski("S")).empty()); }

TEST(Redexes, KappaAtRoot) {
  auto rs = find_redexes(plain(), parse_ski("((K S) I)"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].rule, "kappa");
  EXPECT_EQ(rs[0].position, Position{});
}

TEST(Apply, SigmaAndIota) {
  Term t = parse_ski("(((S S) K) I)");
  auto rs = find_redexes(plain(), t);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(apply_redex(plain(), t, rs[0]), parse_ski("((S I) (K I))"));
  EXPECT_EQ(apply_redex(plain(), parse_ski("(I K)"), find_redexes(plain(), parse_ski("(I K)"))[0]),
            parse_ski("K"));
}

TEST(Apply, StaleRedexRejected) {
  auto rs = find_redexes(plain(), parse_ski("(I (I K))"));
  EXPECT_THROW(apply_redex(plain(), parse_ski("K"), rs[1]), InvalidRedex);
  Redex unknown{"nope", {}, {}, 0};
  EXPECT_THROW(apply_redex(plain(), parse_ski("K"), unknown), InvalidRedex);
}

TEST(Step, NormalForm) {
  EXPECT_TRUE(step(plain(), parse_ski("K")).empty());
  EXPECT_TRUE(is_normal(plain(), parse_ski("K")));
  EXPECT_FALSE(is_normal(plain(), parse_ski("(I K)")));
  EXPECT_FALSE(is_normal(plain(), parse_ski("((K S) I)")));
}

TEST(Reduce, FirstStrategy) {
  auto trace = reduce(plain(), parse_ski("(((S K) K) I)"), Strategy::first(), 10);
  EXPECT_EQ(trace.status, TraceStatus::normal_form);
  ASSERT_EQ(trace.steps.size(), 2u);
  EXPECT_EQ(trace.steps[0].redex.rule, "sigma");
  EXPECT_EQ(trace.steps[1].redex.rule, "kappa");
  EXPECT_EQ(trace.final_state(), parse_ski("I"));
}

TEST(Reduce, EmptyAndZeroFuel) {
  auto k = reduce(plain(), parse_ski("K"), Strategy::first(), 10);
  EXPECT_TRUE(k.steps.empty());
  EXPECT_EQ(k.status, TraceStatus::normal_form);
  auto z = reduce(plain(), parse_ski("(I K)"), Strategy::all(), 0);
  EXPECT_TRUE(z.steps.empty());
  EXPECT_EQ(z.status, TraceStatus::fuel_exhausted);
}

TEST(Reduce, RandomIsReproducible) {
  Term t = parse_ski("((I (I K)) ((K I) (I S)))");
  auto a = reduce(plain(), t, Strategy::random(7), 20);
  auto b = reduce(plain(), t, Strategy::random(7), 20);
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) EXPECT_EQ(a.steps[i].result, b.steps[i].result);
  EXPECT_EQ(a.final_state(), parse_ski("(K I)"));
}

TEST(Reduce, AllFindsShortest) {
  // Rule order makes `first` fire sigma inside the discarded argument.
  Term t = parse_ski("((K I) (((S K) K) K))");
  EXPECT_EQ(reduce(plain(), t, Strategy::first(), 10).steps.size(), 2u);
  auto trace = reduce(plain(), t, Strategy::all(), 10);
  EXPECT_EQ(trace.status, TraceStatus::normal_form);
  EXPECT_EQ(trace.steps.size(), 1u);
  EXPECT_EQ(trace.final_state(), parse_ski("I"));
}

TEST(Reduce, TargetSearch) {
  RewriteSystem sys(plain());
  auto trace = sys.reduce_to(parse_ski("(I (I K))"), parse_ski("(I K)"), 5);
  EXPECT_EQ(trace.status, TraceStatus::target_reached);
  EXPECT_EQ(trace.steps.size(), 1u);
}

TEST(Acu, ExtensionMatchLeavesRest) {
  Presentation p = par_presentation();
  auto bar = [](Pattern a, Pattern b) {
    return Pattern::apply(Pattern::apply(Pattern::node("|"), a), b);
  };
  p.rules = {{"fuse", bar(Pattern::node("P"), Pattern::node("Q")), Pattern::node("K")}};
  Term t = canonicalize(p, par(Term::make("Q"), par(Term::make("C"), Term::make("P"))));
  auto rs = find_redexes(p, t);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].position, Position{});
  EXPECT_EQ(apply_redex(p, t, rs[0]), canonicalize(p, par(Term::make("C"), Term::make("K"))));
}
