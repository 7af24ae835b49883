#include <doctest.h>

#include <map>
#include <random>

#include "corpus.hpp"
#include "zeroone/error.hpp"
#include "zeroone/interp.hpp"

using namespace zeroone;

namespace {

ErrorKind load_error(const std::string& text, const Semiring& s) {
  try {
    Interpretation::parse(text, &s);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;  // no error
}

Interpretation unary(const Semiring& s, int n, const std::string& lines) {
  return Interpretation::parse("universe " + std::to_string(n) + "\nrelation P/1\n" + lines, &s);
}

// Classical satisfaction, written independently of the semiring evaluator.
bool holds(const Interpretation& pi, const Formula& f, std::vector<std::pair<std::string, int>>& env) {
  auto lookup = [&](const std::string& x) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == x) return it->second;
    FAIL("unbound " << x);
    return -1;
  };
  auto atom_true = [&]() {
    std::vector<int> t;
    for (const auto& a : f.args()) t.push_back(lookup(a));
    return pi.get(static_cast<std::uint32_t>(*pi.vocab().find(f.relation())), t).pos == Value(std::uint32_t{1});
  };
  auto range = [&](bool excluding, bool any) {
    for (int a = 0; a < pi.size(); ++a) {
      if (excluding) {
        bool clash = false;
        for (const auto& [name, v] : env) clash = clash || v == a;
        if (clash) continue;
      }
      env.emplace_back(f.var(), a);
      bool r = holds(pi, f.body(), env);
      env.pop_back();
      if (r == any) return any;
    }
    return !any;
  };
  switch (f.kind()) {
    case NodeKind::Eq: return lookup(f.args()[0]) == lookup(f.args()[1]);
    case NodeKind::Neq: return lookup(f.args()[0]) != lookup(f.args()[1]);
    case NodeKind::Atom: return atom_true();
    case NodeKind::NegAtom: return !atom_true();
    case NodeKind::Or: return holds(pi, f.lhs(), env) || holds(pi, f.rhs(), env);
    case NodeKind::And: return holds(pi, f.lhs(), env) && holds(pi, f.rhs(), env);
    case NodeKind::Exists: return range(false, true);
    case NodeKind::Forall: return range(false, false);
    case NodeKind::ExistsNe: return range(true, true);
    case NodeKind::ForallNe: return range(true, false);
    case NodeKind::Not: return !holds(pi, f.body(), env);
  }
  return false;
}

Interpretation random_interp(const Vocabulary& vocab, const Semiring& s, int n, std::mt19937_64& rng,
                             const std::vector<Value>& positives) {
  Interpretation pi(vocab, s, n);
  for (std::uint32_t r = 0; r < vocab.size(); ++r)
    for (std::size_t c = 0; c < pi.cells(r); ++c) {
      Value v = positives[rng() % positives.size()];
      pi.set_code(r, c, rng() % 2 ? LitPair{v, s.zero()} : LitPair{s.zero(), v});
    }
  return pi;
}

const Vocabulary kPE = Vocabulary::parse_list("P/1,E/2");

}  // namespace

TEST_CASE("loading interpretations") {
  Semiring nat = Semiring::natural();
  Interpretation pi = unary(nat, 2, "P(0)=2\n!P(1)=1\n");
  CHECK(pi.get(0, {0}) == LitPair{nat.parse_value("2"), nat.zero()});
  CHECK(pi.get(0, {1}) == LitPair{nat.zero(), nat.one()});
  CHECK(Interpretation::parse(pi.to_text()).get(0, {0}) == pi.get(0, {0}));

  std::string head = "universe 2\nrelation P/1\n";
  CHECK(load_error(head + "P(0)=1\n!P(0)=1\nP(1)=1\n", nat) == ErrorKind::NotModelDefining);
  CHECK(load_error(head + "P(0)=0\nP(1)=1\n", nat) == ErrorKind::NotModelDefining);
  CHECK(load_error(head + "P(0)=1\n", nat) == ErrorKind::MissingAtom);
  CHECK(load_error(head + "P(0)=1/2\nP(1)=1\n", nat) == ErrorKind::OutOfCarrier);
}

TEST_CASE("evaluation examples") {
  Semiring nat = Semiring::natural();
  Interpretation pi = unary(nat, 2, "P(0)=2\n!P(1)=1\n");
  CHECK(evaluate(pi, parse_formula("exists x. P(x)", pi.vocab())) == nat.parse_value("2"));
  CHECK(evaluate(pi, parse_formula("forall x. (P(x) | !P(x))", pi.vocab())) == nat.parse_value("2"));
  CHECK(evaluate(pi, parse_formula("exists x. exists' y. x != y", pi.vocab())) == nat.parse_value("2"));

  Semiring e3 = Semiring::e3();
  Interpretation rho = unary(e3, 4, "P(0)=e\nP(1)=1\n!P(2)=e\n!P(3)=1\n");
  CHECK(evaluate(rho, parse_formula("forall x. (P(x) | !P(x))", rho.vocab())) == e3.parse_value("e"));
  CHECK(evaluate(rho, parse_formula("P(x)", rho.vocab()), {{"x", 1}}) == e3.one());
  CHECK_THROWS_AS(evaluate(rho, parse_formula("P(x)", rho.vocab())), Error);
}

TEST_CASE("atomic types of tuples") {
  Semiring nat = Semiring::natural();
  Interpretation pi = unary(nat, 2, "P(0)=2\n!P(1)=1\n");
  AtomicType t = atomic_type_of(pi, {0});
  CHECK(t.k() == 1);
  CHECK(t.pair(0) == LitPair{nat.parse_value("2"), nat.zero()});
  CHECK(atomic_type_of(pi, {}).k() == 0);
  CHECK_THROWS_AS(atomic_type_of(pi, {1, 1}), Error);

  Interpretation g(Vocabulary::parse_list("E/2"), Semiring::boolean(), 3);
  g.set(0, {1, 1}, {Semiring::boolean().one(), Semiring::boolean().zero()});
  AtomicType t2 = atomic_type_of(g, {1, 0});
  CHECK(t2.space().size() == 4);
  CHECK(t2.pair(t2.space().index_of(0, {0, 0})).pos == Semiring::boolean().one());
}

TEST_CASE("type comparisons") {
  Semiring e3 = Semiring::e3();
  Vocabulary p = Vocabulary::parse_list("P/1");
  auto t = [&](const char* text) { return parse_atomic_type(text, p, e3, 1); };
  AtomicType a = t("P(x1)=e"), b = t("P(x1)=1"), c = t("!P(x1)=1");
  CHECK(type_bool_equiv(a, a));
  CHECK(type_leq(a, a));
  CHECK(type_bool_equiv(a, b));
  CHECK(type_leq(a, b));
  CHECK_FALSE(type_leq(b, a));
  CHECK_FALSE(type_bool_equiv(c, b));
  CHECK_FALSE(type_leq(c, b));
  CHECK_THROWS_AS(type_leq(a, AtomicType(p, e3)), Error);
}

TEST_CASE("extension enumeration counts") {
  Vocabulary p = Vocabulary::parse_list("P/1"), e = Vocabulary::parse_list("E/2");
  CHECK(enumerate_extensions(AtomicType(p, Semiring::e3())).size() == 4);
  CHECK(enumerate_extensions(AtomicType(p, Semiring::boolean())).size() == 2);
  for (const Semiring& s : {Semiring::boolean(), Semiring::e3(), Semiring::minmax({"0", "a", "b", "1"})}) {
    std::size_t choices = 2 * (s.carrier_size() - 1);
    for (const auto& one : enumerate_extensions(AtomicType(e, s))) {
      auto two = enumerate_extensions(one);
      CHECK(two.size() == choices * choices * choices);
      for (const auto& r : two) CHECK(r.restrict_last() == one);
    }
  }
  CHECK_THROWS_AS(enumerate_extensions(AtomicType(p, Semiring::viterbi())), Error);
}

TEST_CASE("k-extension") {
  Semiring e3 = Semiring::e3();
  Interpretation full = unary(e3, 4, "P(0)=e\nP(1)=1\n!P(2)=e\n!P(3)=1\n");
  CHECK(check_k_extension(full, 1).holds);
  CHECK_FALSE(check_k_extension(full, 2).holds);
  Interpretation half = unary(e3, 2, "P(0)=e\n!P(1)=e\n");
  auto r = check_k_extension(half, 1);
  CHECK_FALSE(r.holds);
  CHECK(r.extension.has_value());
  CHECK(check_k_extension(half, 0).holds);
  CHECK_THROWS_AS(check_k_extension(unary(Semiring::viterbi(), 1, "P(0)=1/2\n"), 1), Error);
}

TEST_CASE("(k,delta)-extension") {
  Semiring r = Semiring::real_minmax();
  Value delta = r.parse_value("1/2");
  Interpretation pi = unary(r, 4, "P(0)=1\nP(1)=1/4\n!P(2)=1\n!P(3)=1/4\n");
  CHECK(check_k_delta_extension(pi, 1, delta).holds);
  Interpretation big = unary(r, 2, "P(0)=1\n!P(1)=1\n");
  CHECK_FALSE(check_k_delta_extension(big, 1, delta).holds);
  CHECK(check_k_delta_extension(big, 0, delta).holds);
  CHECK_THROWS_AS(check_k_delta_extension(unary(Semiring::natural(), 1, "P(0)=1\n"), 1, Value(ExtNat{1})), Error);
}

TEST_CASE("strong (k,gamma)-extension") {
  Semiring nat = Semiring::natural();
  Interpretation pi = unary(nat, 4, "P(0)=2\nP(1)=3\n!P(2)=2\n!P(3)=5\n");
  CHECK(check_strong_extension(pi, 1, Rational(1, 2)).holds);
  Interpretation weak = unary(nat, 4, "P(0)=2\nP(1)=1\n!P(2)=2\n!P(3)=5\n");
  CHECK_FALSE(check_strong_extension(weak, 1, Rational(1, 2)).holds);
  CHECK_FALSE(check_strong_extension(pi, 1, Rational(3, 2)).holds);
}

TEST_CASE("Boolean evaluation agrees with a classical model checker") {
  Semiring b = Semiring::boolean();
  auto corpus = zeroone::testing::parse_corpus(zeroone::testing::random_corpus(kPE, {.count = 150, .seed = 3}), kPE);
  std::mt19937_64 rng(9);
  for (int n = 1; n <= 3; ++n)
    for (int round = 0; round < 4; ++round) {
      Interpretation pi = random_interp(kPE, b, n, rng, {b.one()});
      for (const auto& f : corpus) {
        auto fv = free_variables(f);
        if (static_cast<int>(fv.size()) > n) continue;
        std::map<std::string, int> asg;
        std::vector<std::pair<std::string, int>> env;
        for (std::size_t i = 0; i < fv.size(); ++i) {
          asg[fv[i]] = static_cast<int>(i);
          env.emplace_back(fv[i], static_cast<int>(i));
        }
        CAPTURE(to_string(f));
        CHECK((evaluate(pi, f, asg) == b.one()) == holds(pi, f, env));
      }
    }
}

TEST_CASE("positive semirings: the zero pattern is the Boolean value") {
  Semiring nat = Semiring::natural(), b = Semiring::boolean();
  auto corpus = zeroone::testing::parse_corpus(
      zeroone::testing::random_corpus(kPE, {.count = 80, .sentences_only = true, .seed = 4}), kPE);
  std::mt19937_64 rng(10);
  for (int n = 1; n <= 3; ++n) {
    Interpretation pi = random_interp(kPE, nat, n, rng, {ExtNat{1}, ExtNat{2}, ExtNat{3}});
    Interpretation shadow(kPE, b, n);
    for (std::uint32_t r = 0; r < kPE.size(); ++r)
      for (std::size_t c = 0; c < pi.cells(r); ++c) {
        bool pos = !nat.is_zero(pi.get_code(r, c).pos);
        shadow.set_code(r, c, pos ? LitPair{b.one(), b.zero()} : LitPair{b.zero(), b.one()});
      }
    for (const auto& f : corpus) CHECK(nat.is_zero(evaluate(pi, f)) == b.is_zero(evaluate(shadow, f)));
  }
}
