#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <string>

#include "doctest.h"
#include "nrb/ast.hpp"
#include "nrb/errors.hpp"
#include "nrb/eval.hpp"
#include "nrb/model.hpp"
#include "nrb/parser.hpp"
#include "nrb/printer.hpp"

using namespace nrb;

namespace {

StateSpace space_x(long long high) { return StateSpace({{"x", 0, high, {}}}); }

TransitionSet model(const std::string& text, const StateSpace& sp,
                    const GotoEnv& g = {}, const SubMap& subs = {}) {
  return interpret(parse_stmt(text), g, sp, subs);
}

TransitionSet identity(const StateSpace& sp, const Colour& c) {
  TransitionSet ts;
  for (State s : enumerate_states(sp)) ts.insert({s, c, s});
  return ts;
}

// Small random statements over x in 0..2 that never leave the range.
StmtPtr random_stmt(std::mt19937& rng, int depth) {
  auto pick = [&](int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
  };
  if (depth == 0 || pick(3) == 0) {
    switch (pick(6)) {
      case 0:
        return s_skip();
      case 1:
        return s_return();
      case 2:
        return s_break();
      case 3:
        return s_goto("l");
      case 4:
        return s_throw("k");
      default:
        return s_assign("x", t_int(pick(3)));
    }
  }
  switch (pick(5)) {
    case 0:
      return s_seq(random_stmt(rng, depth - 1), random_stmt(rng, depth - 1));
    case 1:
      return s_guard(b_rel(t_var("x"), static_cast<RelOp>(pick(6)),
                           t_int(pick(3))),
                     random_stmt(rng, depth - 1));
    case 2:
      return s_choice(random_stmt(rng, depth - 1),
                      random_stmt(rng, depth - 1));
    case 3:
      return s_do(random_stmt(rng, depth - 1));
    default:
      return s_try(random_stmt(rng, depth - 1), "k",
                   random_stmt(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("atoms produce identity transitions of their colour") {
  auto sp = space_x(2);
  CHECK(model("skip", sp) == identity(sp, Colour::N()));
  CHECK(model("return", sp) == identity(sp, Colour::R()));
  CHECK(model("break", sp) == identity(sp, Colour::B()));
  CHECK(model("throw k", sp) == identity(sp, Colour::E("k")));
  // goto takes its colour from the label regardless of g
  CHECK(model("goto l", sp) == identity(sp, Colour::G("l")));
}

TEST_CASE("assignment moves to the updated state") {
  auto sp = space_x(2);
  auto ts = model("x < 2 -> x = x + 1", sp);
  REQUIRE(ts.size() == 2);
  for (const Transition& t : ts) {
    CHECK(t.colour == Colour::N());
    CHECK(sp.value(t.to, 0) == sp.value(t.from, 0) + 1);
  }
}

TEST_CASE("out-of-range assignments raise DomainNotClosed") {
  auto sp = space_x(2);
  CHECK_THROWS_AS(model("x = 5", sp), DomainNotClosedError);
  // but only when control reaches them
  CHECK(model("x = 0 -> x = 5", StateSpace({{"x", 1, 2, {}}})).empty());
  // a guard downstream does not save an executed bad store
  CHECK_THROWS_AS(model("x = 5; x = 0", sp), DomainNotClosedError);
}

TEST_CASE("sequence composes only normal exits") {
  auto sp = space_x(3);
  CHECK(model("skip; return", sp) == identity(sp, Colour::R()));
  CHECK(model("return; skip", sp) == identity(sp, Colour::R()));
  CHECK(model("return; skip", sp) == model("return", sp));
  CHECK(model("break; return", sp) == identity(sp, Colour::B()));
}

TEST_CASE("sequencing with skip is a unit") {
  auto sp = space_x(2);
  std::mt19937 rng(31);
  GotoEnv g{{"l", {0, 1}}};
  for (int i = 0; i < 60; ++i) {
    auto p = random_stmt(rng, 3);
    auto lhs = interpret(s_seq(p, s_skip()), g, sp, {});
    auto rhs = interpret(s_seq(s_skip(), p), g, sp, {});
    auto just = interpret(p, g, sp, {});
    CHECK(lhs == just);
    CHECK(rhs == just);
  }
}

TEST_CASE("guards filter on the initial state") {
  auto sp = space_x(2);
  auto ts = model("x < 2 -> return", sp);
  CHECK(ts.size() == 2);
  for (const Transition& t : ts) CHECK(sp.value(t.from, 0) < 2);
}

TEST_CASE("choice is set union") {
  auto sp = space_x(2);
  auto both = model("skip | return", sp);
  CHECK(both.size() == 6);
  CHECK(model("skip | skip", sp) == model("skip", sp));
}

TEST_CASE("do loops convert break to normal and drop divergence") {
  auto sp = space_x(2);
  auto ts = model("do { x = 2 -> break | x < 2 -> x = x + 1 }", sp);
  REQUIRE(ts.size() == 3);
  for (const Transition& t : ts) {
    CHECK(t.colour == Colour::N());
    CHECK(sp.value(t.to, 0) == 2);
  }
  // a loop that never breaks hangs: no transitions at all
  CHECK(model("do { skip }", sp).empty());
  // return exits the loop with its own colour
  CHECK(model("do { return }", sp) == identity(sp, Colour::R()));
}

TEST_CASE("labelled statements admit every hypothesised entry state") {
  auto sp = space_x(2);
  GotoEnv g{{"l", {1}}};
  auto ts = interpret(parse_stmt("{ skip : l }"), g, sp, {});
  // identity plus an N-edge from every state into g_l; 1->1 is shared
  CHECK(ts.size() == 5);
  for (State s : enumerate_states(sp)) CHECK(ts.count({s, Colour::N(), 1}));
}

TEST_CASE("label declarations subtract their own goto colour") {
  auto sp = space_x(0);
  auto ts = model("label l. { goto l; skip : l }", sp);
  for (const Transition& t : ts) CHECK(!(t.colour == Colour::G("l")));
  // a backward goto at the end is pure divergence: nothing is left
  CHECK(model("label l. { l: goto l }", sp).empty());
}

TEST_CASE("the label fixpoint is the least solution") {
  auto sp = space_x(1);
  auto body = parse_stmt("x = 0 -> { x = 1; goto l } | ~(x = 0) -> { skip : l }");
  StateSet fix = label_fixpoint("l", body, {}, sp, {});
  StateSet expected{*sp.with(0, 0, 1)};
  CHECK(fix == expected);
  // a body with no goto l has the empty fixpoint
  CHECK(label_fixpoint("l", s_skip(), {}, sp, {}).empty());
}

TEST_CASE("the two-label example collapses to a single return") {
  auto sp = space_x(0);
  auto ts = model("label A, B. skip; goto A; B: return; A: goto B", sp);
  REQUIRE(ts.size() == 1);
  CHECK(ts.begin()->colour == Colour::R());
  CHECK(ts.begin()->from == ts.begin()->to);
  // both label fixpoints contain the single state
  auto decl = parse_stmt("label A, B. skip; goto A; B: return; A: goto B");
  const auto& outer = std::get<Stmt::LabelDecl>(decl->node);
  const auto& inner = std::get<Stmt::LabelDecl>(outer.body->node);
  StateSet ga = label_fixpoint("A", inner.body, {}, sp, {});
  CHECK(ga == StateSet{0});
  GotoEnv with_a{{"A", ga}};
  CHECK(label_fixpoint("B", inner.body, with_a, sp, {}) == StateSet{0});
}

TEST_CASE("the labelled fragment of the two-label example") {
  // Q = (skip; goto A; B: return) labelled A, the prefix of the program
  // before the final goto B.
  auto sp = space_x(0);
  auto q = s_labelled(parse_stmt("{ skip; goto A; B: return }"), "A");
  GotoEnv g{{"A", {0}}, {"B", {0}}};
  auto ts = interpret(q, g, sp, {});
  TransitionSet expected{{0, Colour::N(), 0},
                         {0, Colour::G("A"), 0},
                         {0, Colour::R(), 0}};
  CHECK(ts == expected);
  // with no external entries at B, the return is unreachable
  GotoEnv g0{{"A", {0}}};
  TransitionSet no_b{{0, Colour::N(), 0}, {0, Colour::G("A"), 0}};
  CHECK(interpret(q, g0, sp, {}) == no_b);
}

TEST_CASE("calls run the body under no assumptions and return normally") {
  auto sp = space_x(2);
  SubMap subs{{"f", parse_stmt("{ x = 1; return }")}};
  auto ts = interpret(s_call("f"), {{"l", {0}}}, sp, subs);
  REQUIRE(ts.size() == 3);
  for (const Transition& t : ts) {
    CHECK(t.colour == Colour::N());
    CHECK(sp.value(t.to, 0) == 1);
  }
  // a body that breaks or hangs produces nothing for the caller
  SubMap subs2{{"f", s_break()}};
  CHECK(interpret(s_call("f"), {}, sp, subs2).empty());
  // exceptions pass through
  SubMap subs3{{"f", s_throw("k")}};
  CHECK(interpret(s_call("f"), {}, sp, subs3) ==
        identity(sp, Colour::E("k")));
}

TEST_CASE("try handles only the named exception") {
  auto sp = space_x(2);
  auto ts = model("try { throw k } catch (k) { x = 0 }", sp);
  for (const Transition& t : ts) {
    CHECK(t.colour == Colour::N());
    CHECK(sp.value(t.to, 0) == 0);
  }
  CHECK(model("try { throw other } catch (k) { skip }", sp) ==
        identity(sp, Colour::E("other")));
  // an E_k transition survives only if the handler emits one
  auto rethrow = model("try { throw k } catch (k) { throw k }", sp);
  CHECK(rethrow == identity(sp, Colour::E("k")));
  std::mt19937 rng(17);
  for (int i = 0; i < 40; ++i) {
    auto body = random_stmt(rng, 3);
    auto handler = random_stmt(rng, 2);
    bool handler_emits_k = false;
    for (const Transition& t :
         interpret(handler, {{"l", {0}}}, sp, {}))
      if (t.colour == Colour::E("k")) handler_emits_k = true;
    auto tries =
        interpret(s_try(body, "k", handler), {{"l", {0}}}, sp, {});
    for (const Transition& t : tries)
      if (t.colour == Colour::E("k")) CHECK(handler_emits_k);
  }
}

TEST_CASE("models grow monotonically with the assumptions") {
  auto sp = space_x(2);
  std::mt19937 rng(23);
  for (int i = 0; i < 60; ++i) {
    auto p = s_labelled(random_stmt(rng, 3), "l");
    GotoEnv small{{"l", {0}}};
    GotoEnv large{{"l", {0, 1, 2}}};
    auto m_small = interpret(p, small, sp, {});
    auto m_large = interpret(p, large, sp, {});
    for (const Transition& t : m_small) CHECK(m_large.count(t) == 1);
  }
}

TEST_CASE("check_triple on the axioms and a counterexample") {
  auto sp = space_x(2);
  Judgement skp{{}, b_true(), s_skip(), parse_formula("N[true]")};
  CHECK(check_triple(skp, sp, {}).holds);

  Judgement wrong{{}, b_true(), s_return(), parse_formula("B[true]")};
  auto v = check_triple(wrong, sp, {});
  CHECK(!v.holds);
  REQUIRE(!v.counterexamples.empty());
  CHECK(v.counterexamples[0].colour == Colour::R());

  Judgement vacuous{{}, b_false(), s_do(s_skip()), parse_formula("B[false]")};
  CHECK(check_triple(vacuous, sp, {}).holds);
}

TEST_CASE("check_triple reads assumptions syntactically") {
  auto sp = space_x(2);
  Judgement j = parse_judgement(
      "assume G(l): x=0; pre: x=0; prog: goto l; post: G(l)[x=0];");
  CHECK(check_triple(j, sp, {}).holds);
  // the hypothesised entry states decide whether the final N state is safe
  Judgement good = parse_judgement(
      "assume G(l): x=0; pre: true; prog: { x = 0; skip : l }; "
      "post: N[x=0];");
  CHECK(check_triple(good, sp, {}).holds);
  Judgement bad = parse_judgement(
      "assume G(l): x<2; pre: true; prog: { x = 0; skip : l }; "
      "post: N[x=0];");
  CHECK(!check_triple(bad, sp, {}).holds);
}

TEST_CASE("determinism check") {
  auto sp = space_x(2);
  CHECK(determinism_check(parse_stmt("skip | skip"), {}, sp, {}));
  CHECK(!determinism_check(parse_stmt("skip | return"), {}, sp, {}));
  CHECK(determinism_check(parse_stmt("x < 1 -> skip | ~(x < 1) -> return"),
                          {}, sp, {}));
}

TEST_CASE("dot export names states and colours") {
  auto sp = space_x(1);
  auto dot = to_dot(model("skip", sp), sp);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("x=0") != std::string::npos);
  CHECK(dot.find("N") != std::string::npos);
  CHECK(state_label(sp, 0) == "x=0");
}
