#include "zeroone/poly.hpp"

#include <algorithm>

#include "zeroone/error.hpp"

namespace zeroone {

EPoly EPoly::constant(std::optional<Coef> c) {
  EPoly p;
  if (c) p.terms_.emplace(Monomial{}, *c);
  return p;
}

EPoly EPoly::indeterminate(std::uint32_t literal) {
  EPoly p;
  p.terms_.emplace(Monomial{literal}, Coef::One);
  return p;
}

bool EPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

void EPoly::add_term(Monomial m, Coef c) {
  auto [it, inserted] = terms_.emplace(std::move(m), c);
  if (!inserted) it->second = std::max(it->second, c);
}

EPoly EPoly::operator+(const EPoly& other) const {
  EPoly out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

EPoly EPoly::operator*(const EPoly& other) const {
  EPoly out;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : other.terms_) {
      Monomial m;
      m.reserve(m1.size() + m2.size());
      std::merge(m1.begin(), m1.end(), m2.begin(), m2.end(), std::back_inserter(m));
      out.add_term(std::move(m), std::min(c1, c2));
    }
  }
  return out;
}

namespace {

class PolyBuilder {
 public:
  PolyBuilder(const Vocabulary& vocab, int width, PolyOptions options)
      : space_(make_atom_space(vocab, width)), options_(options) {}

  EPoly build(const Formula& f, std::vector<std::string>& env) {
    switch (f.kind()) {
      case NodeKind::Eq:
      case NodeKind::Neq: {
        bool same = position(f.args()[0], env) == position(f.args()[1], env);
        bool holds = (f.kind() == NodeKind::Eq) == same;
        return EPoly::constant(holds ? std::optional<Coef>(Coef::One) : std::nullopt);
      }
      case NodeKind::Atom:
      case NodeKind::NegAtom: {
        auto r = space_->vocab().find(f.relation());
        if (!r) throw Error(ErrorKind::Vocab, "unknown relation " + f.relation());
        std::vector<std::uint8_t> args;
        for (const auto& a : f.args()) args.push_back(static_cast<std::uint8_t>(position(a, env)));
        auto atom = space_->index_of(static_cast<std::uint32_t>(*r), args);
        return EPoly::indeterminate(static_cast<std::uint32_t>(2 * atom + (f.kind() == NodeKind::NegAtom)));
      }
      case NodeKind::Or:
        return guard(build(f.lhs(), env) + build(f.rhs(), env));
      case NodeKind::And: {
        EPoly l = build(f.lhs(), env);
        if (l.is_zero()) return l;
        return guard(l * build(f.rhs(), env));
      }
      case NodeKind::ExistsNe:
      case NodeKind::ForallNe:
        return quantify(f, env);
      default:
        throw Error(ErrorKind::Usage, "polynomials are built from excluding quantifiers in negation normal form");
    }
  }

 private:
  int position(const std::string& v, const std::vector<std::string>& env) const {
    for (std::size_t i = env.size(); i-- > 0;)
      if (env[i] == v) return static_cast<int>(i);
    throw Error(ErrorKind::UnboundVariable, "variable " + v + " is not in scope");
  }

  EPoly guard(EPoly p) const {
    if (p.size() > options_.monomial_limit) throw Error(ErrorKind::ResourceLimit, "polynomial exceeds the monomial limit");
    return p;
  }

  EPoly quantify(const Formula& f, std::vector<std::string>& env) {
    const int d = static_cast<int>(env.size());
    env.push_back(f.var());
    EPoly body = build(f.body(), env);
    env.pop_back();

    const std::size_t lo = space_->prefix(d), q = space_->prefix(d + 1) - lo;
    if (q >= 63 || (std::uint64_t{1} << q) > options_.selector_limit)
      throw Error(ErrorKind::ResourceLimit, "2^" + std::to_string(q) + " selector functions exceed the limit");
    const std::uint32_t first_new = static_cast<std::uint32_t>(2 * lo);

    // Per monomial: the old part, and which new atoms must be true / false for
    // the monomial to survive a selector.
    struct Split {
      EPoly::Monomial old_part;
      std::uint64_t need_pos = 0, need_neg = 0;
      bool has_new = false;
      Coef c;
    };
    std::vector<Split> split;
    for (const auto& [m, c] : body.terms()) {
      Split s{{}, 0, 0, false, c};
      for (auto lit : m) {
        if (lit < first_new) {
          s.old_part.push_back(lit);
          continue;
        }
        s.has_new = true;
        std::uint64_t bit = std::uint64_t{1} << ((lit >> 1) - lo);
        (lit & 1 ? s.need_neg : s.need_pos) |= bit;
      }
      if (!(s.need_pos & s.need_neg)) split.push_back(std::move(s));
    }

    const bool sum = f.kind() == NodeKind::ExistsNe;
    EPoly acc = sum ? EPoly() : EPoly::constant(Coef::One);
    // Selector bit i set: the positive literal of new atom i is selected.
    for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << q); ++sel) {
      EPoly image;
      for (const auto& s : split) {
        if ((sel & s.need_pos) != s.need_pos || (sel & s.need_neg)) continue;
        // Over {0,1} the surviving new factors are 1; over {0,e} they are e.
        image.add_term(s.old_part, sum || !s.has_new ? s.c : Coef::E);
      }
      if (sum) {
        acc = acc + image;
      } else {
        acc = guard(acc * image);
        if (acc.is_zero()) break;
      }
    }
    return guard(std::move(acc));
  }

  std::shared_ptr<const AtomSpace> space_;
  PolyOptions options_;
};

}  // namespace

EPoly build_epoly(const Formula& f, const Vocabulary& vocab, const std::optional<std::vector<std::string>>& scope,
                  PolyOptions options) {
  std::vector<std::string> env = scope ? *scope : free_variables(f);
  Formula g = is_nnf(f) ? f : to_nnf(f);
  if (uses_standard_quantifiers(g)) g = to_excluding(g, env);
  PolyBuilder builder(vocab, scope_depth(g, env.size()), options);
  return builder.build(g, env);
}

namespace {

Value eval_with(const EPoly& f, const AtomicType& rho, const Value& e) {
  const auto& s = rho.semiring();
  Value acc = s.zero();
  for (const auto& [m, c] : f.terms()) {
    Value term = c == Coef::One ? s.one() : e;
    for (auto lit : m) {
      if (lit >= rho.space().literal_count())
        throw Error(ErrorKind::UnhousedIndeterminate, "literal " + std::to_string(lit) + " is not valued by a " +
                                                          std::to_string(rho.k()) + "-type");
      term = s.mul(term, rho.literal(lit));
    }
    acc = s.add(acc, term);
  }
  return acc;
}

}  // namespace

Value eval_epoly(const EPoly& f, const AtomicType& rho, const Value& eps) { return eval_with(f, rho, eps); }
Value eval_epoly_delta(const EPoly& f, const AtomicType& rho, const Value& delta) { return eval_with(f, rho, delta); }

SentenceClass sentence_class(const EPoly& f) {
  if (!f.is_constant()) throw Error(ErrorKind::HasIndeterminates, "polynomial has indeterminates");
  if (f.is_zero()) return SentenceClass::Zero;
  return f.terms().begin()->second == Coef::One ? SentenceClass::One : SentenceClass::Eps;
}

std::string to_string(SentenceClass c) {
  switch (c) {
    case SentenceClass::Zero: return "0";
    case SentenceClass::One: return "1";
    case SentenceClass::Eps: return "e";
  }
  return "?";
}

std::string to_string(const EPoly& f, const AtomSpace& space, const std::map<std::uint32_t, std::string>& names) {
  if (f.is_zero()) return "0";
  auto name = [&](std::uint32_t lit) {
    auto it = names.find(lit);
    if (it != names.end()) return it->second;
    if ((lit >> 1) >= space.size()) return "X[#" + std::to_string(lit) + "]";
    return "X[" + space.literal_name(lit) + "]";
  };
  struct Printed {
    std::vector<std::string> key;
    std::string text;
  };
  std::vector<Printed> rows;
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::pair<std::string, int>> factors;
    for (auto lit : m) {
      std::string n = name(lit);
      if (!factors.empty() && factors.back().first == n) {
        ++factors.back().second;
      } else {
        factors.emplace_back(n, 1);
      }
    }
    std::sort(factors.begin(), factors.end());
    Printed p;
    std::string body;
    for (const auto& [n, e] : factors) {
      p.key.push_back(n);
      if (!body.empty()) body += "*";
      body += n + (e > 1 ? "^" + std::to_string(e) : "");
    }
    if (body.empty()) {
      p.text = c == Coef::One ? "1" : "e";
    } else {
      p.text = (c == Coef::E ? "e*" : "") + body;
    }
    rows.push_back(std::move(p));
  }
  std::sort(rows.begin(), rows.end(), [](const Printed& a, const Printed& b) { return a.key < b.key; });
  std::string out;
  for (const auto& r : rows) out += (out.empty() ? "" : " + ") + r.text;
  return out;
}

}  // namespace zeroone
