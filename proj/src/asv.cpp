#include "zeroone/asv.hpp"

#include "zeroone/error.hpp"
#include "zeroone/poly.hpp"

namespace zeroone {

namespace {

// Candidates for ε: the support itself, and on finite carriers every element.
std::vector<Value> candidates(const ResolvedDistribution& p) {
  if (p.semiring.is_finite()) return p.semiring.elements();
  std::vector<Value> out{p.semiring.zero()};
  out.insert(out.end(), p.values.begin(), p.values.end());
  return out;
}

bool some_between(const Semiring& s, const Value& lo, const Value& hi) {
  if (!s.is_finite()) return s.natural_lt(lo, hi);  // dense carriers
  for (const auto& g : s.elements())
    if (s.natural_lt(lo, g) && s.natural_lt(g, hi)) return true;
  return false;
}

void require_sentence(const Formula& f) {
  if (!is_sentence(f)) throw Error(ErrorKind::NotASentence, "free variables in " + to_string(f));
}

Formula excluding_nnf(const Formula& f, const std::vector<std::string>& env) {
  Formula g = is_nnf(f) ? f : to_nnf(f);
  return uses_standard_quantifiers(g) ? to_excluding(g, env) : g;
}

bool trivial_rec(const Formula& f, std::vector<std::string>& env) {
  switch (f.kind()) {
    case NodeKind::Eq: return f.args()[0] == f.args()[1];
    case NodeKind::Neq: return f.args()[0] != f.args()[1];
    case NodeKind::And: return trivial_rec(f.lhs(), env) && trivial_rec(f.rhs(), env);
    case NodeKind::Or:
      return (trivial_rec(f.lhs(), env) && is_as_false(f.rhs(), env)) ||
             (is_as_false(f.lhs(), env) && trivial_rec(f.rhs(), env));
    case NodeKind::ForallNe: {
      env.push_back(f.var());
      bool t = trivial_rec(f.body(), env);
      env.pop_back();
      return t;
    }
    default: return false;
  }
}

}  // namespace

BoundednessClass classify_distribution(const ResolvedDistribution& p) {
  const Semiring& s = p.semiring;
  if (!s.is_lattice_kind()) throw Error(ErrorKind::UnsupportedKind, "boundedness is defined on lattice semirings, not " + s.spec());
  BoundednessClass out;
  out.p_one_positive = p.mass(s.one()) > 0;
  if (p.kind == DistKind::Dyadic) {
    out.kind = BoundednessClass::Kind::Strictly;
    out.epsilon = s.zero();
  } else {
    std::optional<Value> least;
    for (const auto& v : p.values) {
      bool below_all = true;
      for (const auto& w : p.values) below_all = below_all && s.natural_leq(v, w);
      if (below_all) least = v;
    }
    if (least) {
      out.kind = BoundednessClass::Kind::Weakly;
      out.epsilon = *least;
    } else {
      std::optional<Value> found;
      for (const auto& eps : candidates(p)) {
        bool ok = true;
        for (const auto& v : p.values) ok = ok && !s.natural_leq(v, eps);
        if (!ok) continue;
        for (const auto& delta : candidates(p)) {
          if (!s.natural_lt(eps, delta)) continue;
          bool hit = false;
          for (const auto& v : p.values) hit = hit || s.natural_leq(v, delta);
          ok = ok && hit;
        }
        if (ok) {
          found = eps;
          break;
        }
      }
      if (!found) throw Error(ErrorKind::Unclassifiable, "distribution is neither weakly nor strictly bounded");
      out.kind = BoundednessClass::Kind::Strictly;
      out.epsilon = *found;
    }
  }
  out.eps_ll_one = some_between(s, out.epsilon, s.one());
  return out;
}

std::string to_string(const AsvResult& r, const Semiring& s) {
  switch (r.kind) {
    case AsvResult::Kind::Value: return s.format(r.value);
    case AsvResult::Kind::UnboundedlyLarge: return "unbounded";
    case AsvResult::Kind::IntervalConcentration: return "interval(" + s.format(r.value) + ")";
    case AsvResult::Kind::Indeterminate: return "indeterminate";
  }
  return "?";
}

AsvResult asv_lattice(const Formula& f, const ResolvedDistribution& p, const std::optional<Vocabulary>& vocab) {
  require_sentence(f);
  const Semiring& s = p.semiring;
  if (!s.is_lattice_kind()) throw Error(ErrorKind::UnsupportedKind, s.spec() + " is not a lattice semiring");
  EPoly poly = build_epoly(f, vocab ? *vocab : infer_vocabulary(f));
  SentenceClass cls = sentence_class(poly);
  AsvResult out;
  if (s.is_finite()) {
    if (p.kind != DistKind::Uniform && p.values.size() != s.positive_elements().size())
      throw Error(ErrorKind::UnsupportedDistribution, "finite lattices need full support");
    out.value = cls == SentenceClass::Zero ? s.zero() : cls == SentenceClass::One ? s.one() : s.epsilon();
    return out;
  }
  if (!s.is_01_irreducible()) throw Error(ErrorKind::NotIrreducible, s.spec() + " is not 0-1-irreducible");
  BoundednessClass b = classify_distribution(p);
  if (!b.eps_ll_one) out.note = "epsilon is not far below 1; the value rests on the simplifying assumption";
  if (cls != SentenceClass::Eps) {
    out.value = cls == SentenceClass::Zero ? s.zero() : s.one();
    return out;
  }
  out.value = b.epsilon;
  if (b.kind == BoundednessClass::Kind::Weakly || s.is_chain()) return out;
  for (const auto& d1 : p.values)
    for (const auto& d2 : p.values)
      if (s.natural_lt(b.epsilon, d1) && s.natural_lt(b.epsilon, d2) && s.meet(d1, d2) == b.epsilon) return out;
  out.kind = AsvResult::Kind::IntervalConcentration;
  out.note = "values concentrate on (eps, delta) for every delta > eps";
  return out;
}

AsvResult asv_natural(const Formula& f, const ResolvedDistribution& p, const std::optional<Vocabulary>& vocab) {
  require_sentence(f);
  if (p.semiring.kind() != SemiringKind::Natural && p.semiring.kind() != SemiringKind::NaturalInf)
    throw Error(ErrorKind::UnsupportedKind, "expected a distribution over the natural numbers");
  Rational large = 0;
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    const auto& v = std::get<ExtNat>(p.values[i]);
    if (v.inf || v.v >= 2) large += p.probs[i];
  }
  if (large == 0) throw Error(ErrorKind::BadDistribution, "needs positive probability on values >= 2");
  InftyExpr g = build_infty(f, vocab ? *vocab : infer_vocabulary(f));
  if (!g.is_const()) throw Error(ErrorKind::HasIndeterminates, "sentence expression did not fold");
  AsvResult out;
  if (g.value().inf) {
    out.kind = AsvResult::Kind::UnboundedlyLarge;
    out.value = ExtNat::infinity();
  } else {
    out.value = g.value();
  }
  return out;
}

bool is_as_false(const Formula& f, const std::optional<std::vector<std::string>>& scope) {
  return is_equiv_const(build_infty(f, infer_vocabulary(f), scope), 0);
}

bool is_trivial(const Formula& f, const std::optional<std::vector<std::string>>& scope) {
  std::vector<std::string> env = scope ? *scope : free_variables(f);
  Formula g = excluding_nnf(f, env);
  return trivial_rec(g, env);
}

bool is_trivial_combination(const Formula& f) {
  Formula g = excluding_nnf(f, {});
  if (is_trivial(g, std::vector<std::string>{})) return true;
  if (g.kind() == NodeKind::And) return is_trivial_combination(g.lhs()) && is_trivial_combination(g.rhs());
  if (g.kind() == NodeKind::Or) {
    bool l = is_trivial_combination(g.lhs()), r = is_trivial_combination(g.rhs());
    return (l && r) || (l && is_as_false(g.rhs(), std::vector<std::string>{})) ||
           (r && is_as_false(g.lhs(), std::vector<std::string>{}));
  }
  return false;
}

PhiClass classify_phi(const Formula& f, const std::optional<Vocabulary>& vocab) {
  require_sentence(f);
  InftyExpr g = build_infty(f, vocab ? *vocab : infer_vocabulary(f));
  if (!g.is_const()) throw Error(ErrorKind::HasIndeterminates, "sentence expression did not fold");
  PhiClass out{g.value(), g, std::nullopt};
  if (!g.value().inf && g.value().v != 0) out.trivial_combination = is_trivial_combination(f);
  return out;
}

AsvResult absorptive_transfer(const Formula& f, const Semiring& s, const Distribution& p,
                              const std::optional<Vocabulary>& vocab) {
  if (!s.is_absorptive()) throw Error(ErrorKind::NotAbsorptive, s.spec() + " is not absorptive");
  Semiring companion = s.companion_inf();
  AsvResult a = asv_lattice(f, resolve(p, companion), vocab);
  if (a.kind != AsvResult::Kind::Value) {
    return {AsvResult::Kind::Indeterminate, a.value, "the companion has no single almost sure value"};
  }
  if (companion.is_zero(a.value) || companion.is_one(a.value)) return a;
  if (s.is_idempotent_elem(a.value)) return a;
  return {AsvResult::Kind::Indeterminate, a.value,
          "eps = " + s.format(a.value) + " is not multiplicatively idempotent; no transfer applies"};
}

}  // namespace zeroone
