#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "zeroone/error.hpp"
#include "zeroone/poly.hpp"

using namespace zeroone;

namespace {

const Vocabulary kE = Vocabulary::parse_list("E/2");
const Vocabulary kP = Vocabulary::parse_list("P/1");
const Vocabulary kPE = Vocabulary::parse_list("P/1,E/2");

const char* kCentre = "exists' x. (!E(x,x) & forall' y. (E(x,y) | (!E(x,y) & exists' z. (E(x,z) & E(z,y)))))";
const char* kCentreWeak = "exists' x. (!E(x,x) & forall' y. (E(x,y) | exists' z. (E(x,z) & E(z,y))))";

std::uint32_t lit(const AtomSpace& space, std::vector<std::uint8_t> args, bool negated) {
  return static_cast<std::uint32_t>(2 * space.index_of(0, args) + (negated ? 1 : 0));
}

// Swaps the operands of every binary connective.
Formula mirror(const Formula& f) {
  if (f.is_binary()) return Formula::binary(f.kind(), mirror(f.rhs()), mirror(f.lhs()));
  if (f.is_quantifier()) return Formula::quantifier(f.kind(), f.var(), mirror(f.body()));
  return f;
}

}  // namespace

TEST_CASE("polynomials of the centre example") {
  auto space = make_atom_space(kE, 2);
  Formula sub = parse_formula("!E(x,y) & exists' z. (E(x,z) & E(z,y))", kE);
  CHECK(build_epoly(sub, kE, std::vector<std::string>{"x", "y"}) == EPoly::indeterminate(lit(*space, {0, 1}, true)));
  CHECK(build_epoly(parse_formula(kCentre, kE), kE) == EPoly::constant(Coef::E));
  CHECK(build_epoly(parse_formula(kCentreWeak, kE), kE) == EPoly::constant(Coef::One));
  CHECK(to_string(build_epoly(parse_formula(kCentre, kE), kE), *make_atom_space(kE, 0)) == "e");
}

TEST_CASE("evaluation of polynomials") {
  Semiring e3 = Semiring::e3();
  AtomicType empty(kE, e3);
  CHECK(eval_epoly(EPoly::constant(Coef::E), empty, e3.epsilon()) == e3.epsilon());
  CHECK(eval_epoly(EPoly::constant(std::nullopt), empty, e3.epsilon()) == e3.zero());

  Semiring m = Semiring::minmax({"0", "1", "2", "3"});
  auto space = make_atom_space(kE, 2);
  AtomicType rho = parse_atomic_type("!E(x1,x1)=3\nE(x1,x2)=3\n!E(x2,x1)=3\n!E(x2,x2)=3\n", kE, m, 2);
  EPoly y = EPoly::indeterminate(lit(*space, {0, 1}, false)) + EPoly::indeterminate(lit(*space, {0, 1}, true));
  CHECK(eval_epoly(y, rho, m.epsilon()) == m.one());
  CHECK(eval_epoly(EPoly{}, rho, m.epsilon()) == m.zero());
  EPoly wide = EPoly::indeterminate(lit(*make_atom_space(kE, 3), {2, 2}, false));
  CHECK_THROWS_AS(eval_epoly(wide, rho, m.epsilon()), Error);
}

TEST_CASE("evaluation with e read as delta") {
  Semiring r = Semiring::real_minmax();
  Value quarter = r.parse_value("1/4");
  AtomicType empty(kE, r);
  CHECK(eval_epoly_delta(EPoly::constant(Coef::E), empty, quarter) == quarter);
  CHECK(eval_epoly_delta(EPoly::constant(Coef::One), empty, quarter) == r.one());
  auto space = make_atom_space(kE, 1);
  AtomicType rho = parse_atomic_type("!E(x1,x1)=1\n", kE, r, 1);
  EPoly ex = EPoly::constant(Coef::E) * EPoly::indeterminate(lit(*space, {0, 0}, true));
  CHECK(eval_epoly_delta(ex, rho, quarter) == quarter);
}

TEST_CASE("sentence classes") {
  CHECK(sentence_class(build_epoly(parse_formula(kCentre, kE), kE)) == SentenceClass::Eps);
  CHECK(sentence_class(build_epoly(parse_formula("exists x. x != x", kE), kE)) == SentenceClass::Zero);
  CHECK(sentence_class(build_epoly(parse_formula("exists x. x = x", kE), kE)) == SentenceClass::One);
  CHECK_THROWS_AS(sentence_class(EPoly::indeterminate(0)), Error);
}

TEST_CASE("coefficient arithmetic") {
  EPoly x = EPoly::indeterminate(0);
  CHECK(EPoly::constant(Coef::E) + EPoly::constant(Coef::One) == EPoly::constant(Coef::One));
  CHECK(EPoly::constant(Coef::E) * EPoly::constant(Coef::One) == EPoly::constant(Coef::E));
  CHECK((x + x) == x);
  CHECK((x * x).terms().begin()->first.size() == 2);
  CHECK((x * EPoly{}).is_zero());
}

TEST_CASE("construction is confluent and independent of operand order") {
  for (const Vocabulary& v : {kP, kE}) {
    auto texts = zeroone::testing::random_corpus(v, {.count = 100, .max_scope = 2, .seed = 6});
    for (const auto& t : texts) {
      CAPTURE(t);
      Formula f = parse_formula(t, v);
      EPoly a = build_epoly(f, v);
      CHECK(build_epoly(parse_formula(t, v), v) == a);
      CHECK(build_epoly(mirror(f), v, free_variables(f)) == a);
    }
  }
}

TEST_CASE("evaluation is monotone in the type") {
  Semiring m = Semiring::minmax({"0", "a", "b", "1"});
  auto texts = zeroone::testing::random_corpus(kPE, {.count = 60, .max_scope = 2, .max_free = 1, .seed = 7});
  std::mt19937_64 rng(8);
  auto types = zeroone::testing::all_types(kPE, m, 1);
  for (const auto& t : texts) {
    Formula f = parse_formula(t, kPE);
    if (free_variables(f).size() != 1) continue;
    EPoly p = build_epoly(f, kPE);
    for (int i = 0; i < 40; ++i) {
      const AtomicType& lo = types[rng() % types.size()];
      // Raise every nonzero literal to a random value at least as large.
      std::vector<LitPair> up = lo.values();
      for (auto& pair : up) {
        Value& v = m.is_zero(pair.pos) ? pair.neg : pair.pos;
        v = m.join(v, m.elements()[1 + rng() % 3]);
      }
      AtomicType hi(lo.space_ptr(), m, up);
      REQUIRE(type_leq(lo, hi));
      CHECK(m.natural_leq(eval_epoly(p, lo, m.epsilon()), eval_epoly(p, hi, m.epsilon())));
    }
  }
}
