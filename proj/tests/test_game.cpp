#include <doctest.h>

#include "corpus.hpp"
#include "zeroone/error.hpp"
#include "zeroone/game.hpp"
#include "zeroone/poly.hpp"

using namespace zeroone;

namespace {

const Vocabulary kP = Vocabulary::parse_list("P/1");
const Vocabulary kE = Vocabulary::parse_list("E/2");
const Vocabulary kPE = Vocabulary::parse_list("P/1,E/2");

const char* kCentre = "exists' x. (!E(x,x) & forall' y. (E(x,y) | (!E(x,y) & exists' z. (E(x,z) & E(z,y)))))";
const char* kCentreWeak = "exists' x. (!E(x,x) & forall' y. (E(x,y) | exists' z. (E(x,z) & E(z,y))))";

}  // namespace

TEST_CASE("decision examples") {
  Semiring e3 = Semiring::e3();
  AtomicType empty(kP, e3);
  Formula taut = parse_formula("forall x. (P(x) | !P(x))", kP);
  CHECK(decide(taut, empty, e3.parse_value("e")));
  CHECK_FALSE(decide(taut, empty, e3.one()));
  CHECK(decide(parse_formula("exists x. x = x", kP), empty, e3.one()));
  CHECK(decide(parse_formula("exists x. x != x", kP), empty, e3.zero()));
}

TEST_CASE("value examples") {
  Semiring e3 = Semiring::e3();
  CHECK(eval_game(parse_formula(kCentre, kE), AtomicType(kE, e3)) == e3.parse_value("e"));
  CHECK(eval_game(parse_formula(kCentreWeak, kE), AtomicType(kE, e3)) == e3.one());
  CHECK(eval_game(parse_formula("exists x. x != x", kE), AtomicType(kE, e3)) == e3.zero());
}

TEST_CASE("errors") {
  Formula p = parse_formula("P(x)", kP);
  AtomicType wrong(kP, Semiring::e3());
  CHECK_THROWS_AS(eval_game(p, wrong), Error);
  try {
    eval_game(parse_formula("exists x. P(x)", kP), AtomicType(kP, Semiring::viterbi()));
    FAIL("expected UnsupportedKind");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedKind);
  }
  try {
    eval_game(parse_formula(kCentre, kE), AtomicType(kE, Semiring::e3()), {true, 50});
    FAIL("expected ResourceLimit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceLimit);
  }
}

TEST_CASE("the game value is functional, memo-independent and agrees with the polynomial") {
  auto corpus = zeroone::testing::parse_corpus(zeroone::testing::random_corpus(kPE, {.count = 60, .max_scope = 2, .seed = 12}), kPE);
  for (const Semiring& s : {Semiring::e3(), Semiring::minmax({"0", "1", "2", "3"})}) {
    for (const auto& f : corpus) {
      auto fv = free_variables(f);
      auto types = zeroone::testing::all_types(kPE, s, static_cast<int>(fv.size()));
      EPoly poly = build_epoly(f, kPE);
      for (std::size_t i = 0; i < types.size(); i += 1 + types.size() / 12) {
        const AtomicType& rho = types[i];
        CAPTURE(to_string(f));
        CAPTURE(rho.to_string());
        Value v = eval_game(f, rho);
        CHECK(v == eval_game(f, rho, {false}));
        CHECK(v == eval_epoly(poly, rho, s.epsilon()));
        int hits = 0;
        for (const auto& c : s.elements()) hits += decide(f, rho, c);
        CHECK(hits == 1);
        CHECK(decide(f, rho, v));
      }
    }
  }
}
