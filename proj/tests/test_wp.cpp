#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <vector>

#include "doctest.h"
#include "nrb/ast.hpp"
#include "nrb/eval.hpp"
#include "nrb/modal.hpp"
#include "nrb/model.hpp"
#include "nrb/parser.hpp"
#include "nrb/printer.hpp"
#include "nrb/wp.hpp"

using namespace nrb;

namespace {

StateSpace space_x(long long high) { return StateSpace({{"x", 0, high, {}}}); }

StateSet state_set(const StateSpace& sp, std::initializer_list<long long> xs) {
  StateSet out;
  for (long long v : xs) out.insert(static_cast<State>(*sp.with(0, 0, v)));
  return out;
}

// Range-safe random statements over x, y in 0..2 (assignments only store
// constants, so DomainNotClosed never fires).
StmtPtr random_stmt(std::mt19937& rng, int depth) {
  auto pick = [&](int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
  };
  const char* var = pick(2) ? "x" : "y";
  if (depth == 0 || pick(3) == 0) {
    switch (pick(7)) {
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
      case 5:
        return s_call("f");
      default:
        return s_assign(var, t_int(pick(3)));
    }
  }
  switch (pick(8)) {
    case 0:
      return s_seq(random_stmt(rng, depth - 1), random_stmt(rng, depth - 1));
    case 1:
      return s_guard(b_rel(t_var(var), static_cast<RelOp>(pick(6)),
                           t_int(pick(3))),
                     random_stmt(rng, depth - 1));
    case 2:
      return s_choice(random_stmt(rng, depth - 1),
                      random_stmt(rng, depth - 1));
    case 3:
      return s_do(random_stmt(rng, depth - 1));
    case 4:
      return s_labelled(random_stmt(rng, depth - 1), "l");
    case 5:
      return s_labeldecl("l", random_stmt(rng, depth - 1));
    case 6:
      return s_try(random_stmt(rng, depth - 1), "k",
                   random_stmt(rng, depth - 1));
    default:
      return s_seq(random_stmt(rng, depth - 1), random_stmt(rng, depth - 1));
  }
}

ModalPtr random_post(std::mt19937& rng, int depth) {
  auto pick = [&](int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
  };
  if (depth == 0 || pick(3) == 0) {
    switch (pick(3)) {
      case 0:
        return m_base(b_true());
      case 1:
        return m_base(b_rel(t_var(pick(2) ? "x" : "y"),
                            static_cast<RelOp>(pick(6)), t_int(pick(3))));
      default: {
        Colour cs[5] = {Colour::N(), Colour::R(), Colour::B(), Colour::G("l"),
                        Colour::E("k")};
        return m_modal(cs[pick(5)], random_post(rng, 0));
      }
    }
  }
  switch (pick(3)) {
    case 0:
      return m_or(random_post(rng, depth - 1), random_post(rng, depth - 1));
    case 1:
      return m_and(random_post(rng, depth - 1), random_post(rng, depth - 1));
    default:
      return m_not(random_post(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("assignment wp is substitution") {
  auto sp = space_x(2);
  auto p = wp(parse_stmt("x = x + 1"), parse_formula("N[x = 2]"), {}, sp, {});
  CHECK(p.states == state_set(sp, {1}));
  CHECK(to_string(p.rendering) == "x + 1 = 2");
  CHECK(to_string(render(p.states, sp)) == "x = 1");
}

TEST_CASE("return never ends normally") {
  auto sp = space_x(2);
  auto p = wp(s_return(), parse_formula("N[true]"), {}, sp, {});
  CHECK(p.states.empty());
  CHECK(to_string(p.rendering) == "false");
  auto r = wp(s_return(), parse_formula("R[x = 1]"), {}, sp, {});
  CHECK(r.states == state_set(sp, {1}));
}

TEST_CASE("atom wp picks the matching colour component") {
  auto sp = space_x(2);
  auto q = parse_formula("N[x=0] \\/ B[x=1] \\/ G(l)[x=2] \\/ E(k)[x<1]");
  CHECK(wp(s_skip(), q, {}, sp, {}).states == state_set(sp, {0}));
  CHECK(wp(s_break(), q, {}, sp, {}).states == state_set(sp, {1}));
  CHECK(wp(s_goto("l"), q, {}, sp, {}).states == state_set(sp, {2}));
  CHECK(wp(s_throw("k"), q, {}, sp, {}).states == state_set(sp, {0}));
  CHECK(wp(s_return(), q, {}, sp, {}).states.empty());
}

TEST_CASE("the loop example reaches its break from every state") {
  auto sp = space_x(2);
  auto p = wp(parse_stmt("do { x = 2 -> break | x < 2 -> x = x + 1 }"),
              parse_formula("N[x = 2]"), {}, sp, {});
  CHECK(p.states.size() == 3);
  CHECK(to_string(render(p.states, sp)) == "true");
}

TEST_CASE("divergent states satisfy every wp") {
  auto sp = space_x(2);
  auto p = wp(s_do(s_skip()), parse_formula("N[false]"), {}, sp, {});
  CHECK(p.states.size() == 3);
}

TEST_CASE("a base postcondition is the whole space") {
  StateSpace sp({{"x", 0, 2, {}}, {"y", 0, 2, {}}});
  std::mt19937 rng(5);
  SubMap subs{{"f", parse_stmt("{ x = 1; return }")}};
  for (int i = 0; i < 30; ++i) {
    auto s = random_stmt(rng, 3);
    auto p = wp(s, m_base(b_true()), {{"l", {0}}}, sp, subs);
    CHECK(p.states.size() == 9);
    CHECK(to_string(p.rendering) == "true");
  }
}

TEST_CASE("guard wp is classical implication") {
  auto sp = space_x(2);
  auto p = wp(parse_stmt("x < 2 -> return"), parse_formula("R[x = 0]"), {},
              sp, {});
  // x=2 passes vacuously, x=0 passes, x=1 fails
  CHECK(p.states == state_set(sp, {0, 2}));
}

TEST_CASE("choice wp is conjunction") {
  auto sp = space_x(2);
  auto q = parse_formula("N[x=1] \\/ R[x=1]");
  auto p = wp(parse_stmt("x = 1 | return"), q, {}, sp, {});
  CHECK(p.states == state_set(sp, {1}));
}

TEST_CASE("labelled wp demands safe hypothesised entries") {
  auto sp = space_x(2);
  GotoEnv ok{{"l", state_set(sp, {1})}};
  auto q = parse_formula("N[x >= 1]");
  auto p = wp(parse_stmt("skip : l"), q, ok, sp, {});
  CHECK(p.states == state_set(sp, {1, 2}));
  GotoEnv unsafe{{"l", state_set(sp, {0})}};
  CHECK(wp(parse_stmt("skip : l"), q, unsafe, sp, {}).states.empty());
}

TEST_CASE("skip-return equals return for random postconditions") {
  StateSpace sp({{"x", 0, 2, {}}, {"y", 0, 2, {}}});
  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto q = random_post(rng, 3);
    auto a = wp(parse_stmt("{ skip; return }"), q, {}, sp, {});
    auto b = wp(s_return(), q, {}, sp, {});
    CHECK(a.states == b.states);
  }
}

TEST_CASE("wp is the weakest precondition state by state") {
  StateSpace sp({{"x", 0, 2, {}}, {"y", 0, 2, {}}});
  std::mt19937 rng(13);
  SubMap subs{{"f", parse_stmt("{ x = 1; return }")}};
  GotoEnv g{{"l", state_set(sp, {0})}};
  for (int i = 0; i < 40; ++i) {
    auto s = random_stmt(rng, 3);
    auto q = random_post(rng, 2);
    auto p = wp(s, q, g, sp, subs);
    auto ts = interpret(s, g, sp, subs);
    for (State st : enumerate_states(sp)) {
      bool all_ok = true;
      for (const Transition& t : ts)
        if (t.from == st && !eval_modal(q, t, sp)) all_ok = false;
      CHECK(static_cast<bool>(p.states.count(st)) == all_ok);
    }
  }
}

TEST_CASE("wp is monotone in the postcondition") {
  StateSpace sp({{"x", 0, 2, {}}, {"y", 0, 2, {}}});
  std::mt19937 rng(19);
  SubMap subs{{"f", parse_stmt("{ x = 1; return }")}};
  GotoEnv g{{"l", {0}}};
  std::set<Colour> cs{Colour::N(), Colour::R(), Colour::B(), Colour::G("l"),
                      Colour::E("k")};
  for (int i = 0; i < 40; ++i) {
    auto s = random_stmt(rng, 3);
    auto q = random_post(rng, 2);
    auto q2 = m_or(q, random_post(rng, 2));
    auto a = wp(s, q, g, sp, subs);
    auto b = wp(s, q2, g, sp, subs);
    for (State st : a.states) CHECK(b.states.count(st) == 1);
  }
}

TEST_CASE("deterministic programs split the full space over colours") {
  auto sp = space_x(2);
  auto s = parse_stmt("x < 2 -> skip | ~(x < 2) -> return");
  REQUIRE(determinism_check(s, {}, sp, {}));
  StateSet covered;
  for (Colour c : {Colour::N(), Colour::R(), Colour::B()}) {
    auto p = wp(s, m_modal(c, m_base(b_true())), {}, sp, {});
    covered.insert(p.states.begin(), p.states.end());
  }
  CHECK(covered.size() == 3);
}

TEST_CASE("rendering examples") {
  auto sp = space_x(2);
  CHECK(to_string(render({}, sp)) == "false");
  CHECK(to_string(render(state_set(sp, {1}), sp)) == "x = 1");
  CHECK(to_string(render(state_set(sp, {0, 1, 2}), sp)) == "true");
  CHECK(to_string(render(state_set(sp, {0, 2}), sp)) == "x = 0 \\/ x = 2");
  StateSpace two({{"x", 0, 1, {}}, {"y", 0, 1, {}}});
  StateSet one{*two.with(*two.with(0, 0, 1), 1, 0)};
  CHECK(to_string(render(one, two)) == "x = 1 /\\ y = 0");
  // rendering satisfies exactly the given states
  auto mixed = state_set(sp, {0, 1});
  CHECK(satisfying_states(render(mixed, sp), sp) == mixed);
}

TEST_CASE("colour universe covers statements, bodies, and extras") {
  SubMap subs{{"f", s_throw("deep")}};
  auto s = parse_stmt("label l. { goto l; call f : l }");
  auto cs = colour_universe(s, subs, {Colour::E("x")});
  CHECK(cs.count(Colour::N()) == 1);
  CHECK(cs.count(Colour::R()) == 1);
  CHECK(cs.count(Colour::B()) == 1);
  CHECK(cs.count(Colour::G("l")) == 1);
  CHECK(cs.count(Colour::E("deep")) == 1);
  CHECK(cs.count(Colour::E("x")) == 1);
}

TEST_CASE("structural wp agrees with the brute-force oracle at scale") {
  StateSpace sp({{"x", 0, 2, {}}, {"y", 0, 2, {}}});
  SubMap subs{{"f", parse_stmt("{ x = 1; return }")}};
  GotoEnv g{{"l", {0, 4}}};
  std::mt19937 rng(2718);
  for (int i = 0; i < 500; ++i) {
    auto s = random_stmt(rng, 3);
    auto q = random_post(rng, 2);
    CHECK(verify_wp(s, q, g, sp, subs));
  }
}
