#include "zeroone/inftyexpr.hpp"

#include <algorithm>

#include "zeroone/error.hpp"

namespace zeroone {

namespace {

ExtNat nat_add(const ExtNat& a, const ExtNat& b) {
  if (a.inf || b.inf) return ExtNat::infinity();
  return {a.v + b.v, false};
}

ExtNat nat_mul(const ExtNat& a, const ExtNat& b) {
  if ((!a.inf && a.v == 0) || (!b.inf && b.v == 0)) return {0, false};
  if (a.inf || b.inf) return ExtNat::infinity();
  return {a.v * b.v, false};
}

ExtNat nat_pow(const ExtNat& a) {
  if (!a.inf && a.v <= 1) return a;
  return ExtNat::infinity();
}

void push_unique(std::vector<InftyExpr>& v, InftyExpr e) {
  if (std::find(v.begin(), v.end(), e) == v.end()) v.push_back(std::move(e));
}

}  // namespace

InftyExpr InftyExpr::constant(ExtNat value) {
  return InftyExpr(std::make_shared<const Node>(Node{InftyOp::Const, std::move(value), 0, {}}));
}

InftyExpr InftyExpr::var(std::uint32_t literal) {
  return InftyExpr(std::make_shared<const Node>(Node{InftyOp::Var, {0, false}, literal, {}}));
}

InftyExpr InftyExpr::make(InftyOp op, std::vector<InftyExpr> kids) {
  return InftyExpr(std::make_shared<const Node>(Node{op, {0, false}, 0, std::move(kids)}));
}

InftyExpr InftyExpr::sum(std::vector<InftyExpr> terms) {
  std::vector<InftyExpr> out;
  std::optional<std::size_t> const_at;
  ExtNat c{0, false};
  auto take = [&](const InftyExpr& t) {
    if (t.is_const()) {
      if (!const_at) const_at = out.size();
      c = nat_add(c, t.value());
    } else {
      out.push_back(t);
    }
  };
  for (const auto& t : terms) {
    if (t.op() == InftyOp::Sum) {
      for (const auto& u : t.children()) take(u);
    } else {
      take(t);
    }
  }
  if (c.inf) return infinity();
  if (const_at && !(c.v == 0)) out.insert(out.begin() + static_cast<std::ptrdiff_t>(*const_at), constant(c));
  if (out.empty()) return zero();
  if (out.size() == 1) return out.front();
  return make(InftyOp::Sum, std::move(out));
}

InftyExpr InftyExpr::product(std::vector<InftyExpr> factors) {
  std::vector<InftyExpr> out;
  ExtNat c{1, false};
  auto take = [&](const InftyExpr& t) {
    if (t.is_const()) {
      c = nat_mul(c, t.value());
    } else {
      out.push_back(t);
    }
  };
  for (const auto& t : factors) {
    if (t.op() == InftyOp::Product) {
      for (const auto& u : t.children()) take(u);
    } else {
      take(t);
    }
  }
  if (!c.inf && c.v == 0) return zero();
  if (c.inf || c.v != 1) out.push_back(constant(c));
  if (out.empty()) return one();
  if (out.size() == 1) return out.front();
  return make(InftyOp::Product, std::move(out));
}

InftyExpr InftyExpr::power(InftyExpr base) {
  if (base.is_const()) return constant(nat_pow(base.value()));
  if (base.op() == InftyOp::Power) return base;
  if (base.op() == InftyOp::Product) {
    // (g·g)^∞ = g^∞, since g·g and g fall in the same class of {0, 1, ≥2}.
    std::vector<InftyExpr> unique;
    for (const auto& f : base.children()) push_unique(unique, f);
    if (unique.size() != base.children().size()) base = product(std::move(unique));
    if (base.is_const() || base.op() != InftyOp::Product) return power(std::move(base));
  }
  return make(InftyOp::Power, {std::move(base)});
}

InftyExpr InftyExpr::scale_inf(InftyExpr inner) {
  if (inner.is_const()) return inner.value() == ExtNat{0, false} ? zero() : infinity();
  if (inner.op() == InftyOp::ScaleInf) return inner;
  if (inner.op() == InftyOp::Sum) {
    // ∞·(g + g) = ∞·g.
    std::vector<InftyExpr> unique;
    for (const auto& t : inner.children()) push_unique(unique, t);
    if (unique.size() != inner.children().size()) inner = sum(std::move(unique));
    if (inner.is_const() || inner.op() != InftyOp::Sum) return scale_inf(std::move(inner));
  }
  return make(InftyOp::ScaleInf, {std::move(inner)});
}

bool operator==(const InftyExpr& a, const InftyExpr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.op == y.op && x.value == y.value && x.literal == y.literal && x.kids == y.kids;
}

std::vector<std::uint32_t> InftyExpr::literals() const {
  std::vector<std::uint32_t> out;
  std::vector<const InftyExpr*> stack{this};
  while (!stack.empty()) {
    const InftyExpr* e = stack.back();
    stack.pop_back();
    if (e->op() == InftyOp::Var) out.push_back(e->literal());
    for (const auto& k : e->children()) stack.push_back(&k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

InftyExpr InftyExpr::substitute(const std::map<std::uint32_t, ExtNat>& sub) const {
  switch (op()) {
    case InftyOp::Const:
      return *this;
    case InftyOp::Var: {
      auto it = sub.find(literal());
      return it == sub.end() ? *this : constant(it->second);
    }
    default: {
      std::vector<InftyExpr> kids;
      kids.reserve(children().size());
      for (const auto& k : children()) kids.push_back(k.substitute(sub));
      switch (op()) {
        case InftyOp::Sum: return sum(std::move(kids));
        case InftyOp::Product: return product(std::move(kids));
        case InftyOp::Power: return power(std::move(kids[0]));
        default: return scale_inf(std::move(kids[0]));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Evaluation

ExtNat eval_infty(const InftyExpr& g, const std::vector<ExtNat>& sigma) {
  switch (g.op()) {
    case InftyOp::Const:
      return g.value();
    case InftyOp::Var:
      return g.literal() < sigma.size() ? sigma[g.literal()] : ExtNat{0, false};
    case InftyOp::Sum: {
      ExtNat acc{0, false};
      for (const auto& k : g.children()) {
        acc = nat_add(acc, eval_infty(k, sigma));
        if (acc.inf) break;
      }
      return acc;
    }
    case InftyOp::Product: {
      ExtNat acc{1, false};
      for (const auto& k : g.children()) {
        acc = nat_mul(acc, eval_infty(k, sigma));
        if (!acc.inf && acc.v == 0) break;
      }
      return acc;
    }
    case InftyOp::Power:
      return nat_pow(eval_infty(g.children()[0], sigma));
    case InftyOp::ScaleInf:
      return nat_mul(ExtNat::infinity(), eval_infty(g.children()[0], sigma));
  }
  return {0, false};
}

AbsClass class_of(const ExtNat& v) {
  if (v.inf) return AbsClass::I;
  if (v.v == 0) return AbsClass::Z;
  if (v.v == 1) return AbsClass::O;
  return AbsClass::F;
}

std::string to_string(AbsClass c) {
  switch (c) {
    case AbsClass::Z: return "Z";
    case AbsClass::O: return "O";
    case AbsClass::F: return "F";
    case AbsClass::I: return "I";
  }
  return "?";
}

AbsClass abs_add(AbsClass a, AbsClass b) {
  if (a == AbsClass::Z) return b;
  if (b == AbsClass::Z) return a;
  if (a == AbsClass::I || b == AbsClass::I) return AbsClass::I;
  return AbsClass::F;  // both at least one
}

AbsClass abs_mul(AbsClass a, AbsClass b) {
  if (a == AbsClass::Z || b == AbsClass::Z) return AbsClass::Z;
  if (a == AbsClass::O) return b;
  if (b == AbsClass::O) return a;
  if (a == AbsClass::I || b == AbsClass::I) return AbsClass::I;
  return AbsClass::F;
}

AbsClass abstract_eval(const InftyExpr& g, const std::vector<AbsClass>& sigma) {
  switch (g.op()) {
    case InftyOp::Const:
      return class_of(g.value());
    case InftyOp::Var:
      return g.literal() < sigma.size() ? sigma[g.literal()] : AbsClass::Z;
    case InftyOp::Sum: {
      AbsClass acc = AbsClass::Z;
      for (const auto& k : g.children()) acc = abs_add(acc, abstract_eval(k, sigma));
      return acc;
    }
    case InftyOp::Product: {
      AbsClass acc = AbsClass::O;
      for (const auto& k : g.children()) acc = abs_mul(acc, abstract_eval(k, sigma));
      return acc;
    }
    case InftyOp::Power: {
      AbsClass c = abstract_eval(g.children()[0], sigma);
      return c == AbsClass::F ? AbsClass::I : c;
    }
    case InftyOp::ScaleInf:
      return abstract_eval(g.children()[0], sigma) == AbsClass::Z ? AbsClass::Z : AbsClass::I;
  }
  return AbsClass::Z;
}

bool is_equiv_const(const InftyExpr& g, int c, InftyOptions options) {
  if (c != 0 && c != 1) throw Error(ErrorKind::Usage, "equivalence is decided against 0 or 1");
  const AbsClass want = c == 0 ? AbsClass::Z : AbsClass::O;
  std::vector<std::uint32_t> atoms;
  for (auto lit : g.literals()) atoms.push_back(lit >> 1);
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    total *= 6;
    if (total > options.assignment_limit) throw Error(ErrorKind::ResourceLimit, "too many class assignments to enumerate");
  }
  static constexpr AbsClass kChoices[6][2] = {{AbsClass::Z, AbsClass::O}, {AbsClass::Z, AbsClass::F},
                                              {AbsClass::Z, AbsClass::I}, {AbsClass::O, AbsClass::Z},
                                              {AbsClass::F, AbsClass::Z}, {AbsClass::I, AbsClass::Z}};
  std::vector<AbsClass> sigma(atoms.empty() ? 0 : 2 * (atoms.back() + 1), AbsClass::Z);
  std::vector<int> digit(atoms.size(), 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      sigma[2 * atoms[i]] = kChoices[digit[i]][0];
      sigma[2 * atoms[i] + 1] = kChoices[digit[i]][1];
    }
    if (abstract_eval(g, sigma) != want) return false;
    for (std::size_t i = atoms.size(); i-- > 0;) {
      if (++digit[i] < 6) break;
      digit[i] = 0;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Construction

namespace {

class InftyBuilder {
 public:
  InftyBuilder(const Vocabulary& vocab, int width, InftyOptions options)
      : space_(make_atom_space(vocab, width)), options_(options) {}

  InftyExpr build(const Formula& f, std::vector<std::string>& env) {
    switch (f.kind()) {
      case NodeKind::Eq:
      case NodeKind::Neq: {
        bool same = position(f.args()[0], env) == position(f.args()[1], env);
        return (f.kind() == NodeKind::Eq) == same ? InftyExpr::one() : InftyExpr::zero();
      }
      case NodeKind::Atom:
      case NodeKind::NegAtom: {
        auto r = space_->vocab().find(f.relation());
        if (!r) throw Error(ErrorKind::Vocab, "unknown relation " + f.relation());
        std::vector<std::uint8_t> args;
        for (const auto& a : f.args()) args.push_back(static_cast<std::uint8_t>(position(a, env)));
        auto atom = space_->index_of(static_cast<std::uint32_t>(*r), args);
        return InftyExpr::var(static_cast<std::uint32_t>(2 * atom + (f.kind() == NodeKind::NegAtom)));
      }
      case NodeKind::Or:
        return InftyExpr::sum({build(f.lhs(), env), build(f.rhs(), env)});
      case NodeKind::And:
        return InftyExpr::product({build(f.lhs(), env), build(f.rhs(), env)});
      case NodeKind::ExistsNe:
      case NodeKind::ForallNe:
        return quantify(f, env);
      default:
        throw Error(ErrorKind::Usage, "infinity expressions are built from excluding quantifiers in negation normal form");
    }
  }

 private:
  int position(const std::string& v, const std::vector<std::string>& env) const {
    for (std::size_t i = env.size(); i-- > 0;)
      if (env[i] == v) return static_cast<int>(i);
    throw Error(ErrorKind::UnboundVariable, "variable " + v + " is not in scope");
  }

  InftyExpr quantify(const Formula& f, std::vector<std::string>& env) {
    const int d = static_cast<int>(env.size());
    env.push_back(f.var());
    InftyExpr body = build(f.body(), env);
    env.pop_back();
    const std::size_t lo = space_->prefix(d), q = space_->prefix(d + 1) - lo;
    if (q >= 63 || (std::uint64_t{1} << q) > options_.selector_limit)
      throw Error(ErrorKind::ResourceLimit, "2^" + std::to_string(q) + " selector functions exceed the limit");
    std::vector<InftyExpr> images;
    std::map<std::uint32_t, ExtNat> sub;
    for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << q); ++sel) {
      for (std::size_t i = 0; i < q; ++i) {
        bool pos = sel >> i & 1;
        auto atom = static_cast<std::uint32_t>(lo + i);
        sub[2 * atom] = pos ? ExtNat::infinity() : ExtNat{0, false};
        sub[2 * atom + 1] = pos ? ExtNat{0, false} : ExtNat::infinity();
      }
      images.push_back(body.substitute(sub));
    }
    if (f.kind() == NodeKind::ExistsNe) return InftyExpr::scale_inf(InftyExpr::sum(std::move(images)));
    return InftyExpr::power(InftyExpr::product(std::move(images)));
  }

  std::shared_ptr<const AtomSpace> space_;
  InftyOptions options_;
};

}  // namespace

InftyExpr build_infty(const Formula& f, const Vocabulary& vocab, const std::optional<std::vector<std::string>>& scope,
                      InftyOptions options) {
  std::vector<std::string> env = scope ? *scope : free_variables(f);
  Formula g = is_nnf(f) ? f : to_nnf(f);
  if (uses_standard_quantifiers(g)) g = to_excluding(g, env);
  InftyBuilder builder(vocab, scope_depth(g, env.size()), options);
  return builder.build(g, env);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string print(const InftyExpr& g, const AtomSpace* space, const std::map<std::uint32_t, std::string>& names) {
  auto wrap = [&](const InftyExpr& e, bool need) {
    std::string s = print(e, space, names);
    return need ? "(" + s + ")" : s;
  };
  switch (g.op()) {
    case InftyOp::Const:
      return g.value().inf ? "∞" : g.value().v.str();
    case InftyOp::Var: {
      auto lit = g.literal();
      if (auto it = names.find(lit); it != names.end()) return it->second;
      if (lit & 1) {
        if (auto it = names.find(lit ^ 1); it != names.end()) return it->second + "̄";
      }
      if (space && (lit >> 1) < space->size()) return "X[" + space->literal_name(lit) + "]";
      return "X[#" + std::to_string(lit) + "]";
    }
    case InftyOp::Sum: {
      std::string out;
      for (const auto& k : g.children()) out += (out.empty() ? "" : " + ") + print(k, space, names);
      return out;
    }
    case InftyOp::Product: {
      std::string out;
      for (const auto& k : g.children()) out += (out.empty() ? "" : "·") + wrap(k, k.op() == InftyOp::Sum);
      return out;
    }
    case InftyOp::Power: {
      const auto& b = g.children()[0];
      return wrap(b, b.op() != InftyOp::Var && b.op() != InftyOp::Const) + "^∞";
    }
    case InftyOp::ScaleInf: {
      const auto& b = g.children()[0];
      return "∞·" + wrap(b, b.op() == InftyOp::Sum);
    }
  }
  return "?";
}

}  // namespace

std::string to_string(const InftyExpr& g, const AtomSpace* space, const std::map<std::uint32_t, std::string>& names) {
  return print(g, space, names);
}

}  // namespace zeroone
