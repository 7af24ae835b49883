#include "zeroone/game.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "zeroone/error.hpp"

namespace zeroone {

namespace {

using Env = std::vector<std::pair<std::string, int>>;
using Type = std::vector<std::uint32_t>;  // pos, neg per atom

class Game {
 public:
  Game(const Semiring& s, std::shared_ptr<const AtomSpace> space, const GameConfig& cfg)
      : s_(s), space_(std::move(space)), cfg_(cfg), top_(std::get<std::uint32_t>(s.one())),
        eps_(std::get<std::uint32_t>(s.epsilon())), size_(static_cast<std::uint32_t>(s.carrier_size())) {}

  std::uint32_t value(const Formula& f, Env& env, int d, const Type& t) {
    tick();
    switch (f.kind()) {
      case NodeKind::Eq:
      case NodeKind::Neq:
      case NodeKind::Atom:
      case NodeKind::NegAtom:
        return leaf(f, env, t);
      case NodeKind::Or: {
        std::uint32_t a = value(f.lhs(), env, d, t);
        if (a == top_) return a;
        return std::max(a, value(f.rhs(), env, d, t));
      }
      case NodeKind::And: {
        std::uint32_t a = value(f.lhs(), env, d, t);
        if (a == 0) return a;
        return std::min(a, value(f.rhs(), env, d, t));
      }
      case NodeKind::Not:
        throw Error(ErrorKind::Usage, "the game expects negation normal form");
      default:
        break;
    }
    Key key{f.id(), positions(env), t, 0};
    if (cfg_.memo) {
      if (auto it = values_.find(key); it != values_.end()) return it->second;
    }
    const bool is_max = f.kind() == NodeKind::Exists || f.kind() == NodeKind::ExistsNe;
    const bool standard = f.kind() == NodeKind::Exists || f.kind() == NodeKind::Forall;
    std::uint32_t acc = is_max ? 0 : top_;
    auto fold = [&](std::uint32_t v) { acc = is_max ? std::max(acc, v) : std::min(acc, v); };
    auto done = [&]() { return acc == (is_max ? top_ : 0); };
    if (standard) {
      // θ(x1..xk) := φ(x1..xk, xi)
      for (int i = 0; i < d && !done(); ++i) {
        env.emplace_back(f.var(), i);
        fold(value(f.body(), env, d, t));
        env.pop_back();
      }
    }
    const std::size_t q = fresh_count(d);
    const std::uint32_t hi = is_max ? top_ : eps_;
    for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << q) && !done(); ++sel) {
      Type ext = extend(t, sel, q, hi);
      env.emplace_back(f.var(), d);
      fold(value(f.body(), env, d + 1, ext));
      env.pop_back();
    }
    if (cfg_.memo) values_.emplace(std::move(key), acc);
    return acc;
  }

  bool decide(const Formula& f, Env& env, int d, const Type& t, std::uint32_t c) {
    tick();
    switch (f.kind()) {
      case NodeKind::Eq:
      case NodeKind::Neq:
      case NodeKind::Atom:
      case NodeKind::NegAtom:
        return leaf(f, env, t) == c;
      case NodeKind::Not:
        throw Error(ErrorKind::Usage, "the game expects negation normal form");
      default:
        break;
    }
    Key key{f.id(), positions(env), t, c};
    if (cfg_.memo) {
      if (auto it = decided_.find(key); it != decided_.end()) return it->second;
    }
    bool result = false;
    if (f.is_binary()) {
      const bool is_or = f.kind() == NodeKind::Or;
      // guess c1, c2 with max/min = c; universally challenge either claim
      for (std::uint32_t c1 = 0; c1 < size_ && !result; ++c1)
        for (std::uint32_t c2 = 0; c2 < size_ && !result; ++c2) {
          if ((is_or ? std::max(c1, c2) : std::min(c1, c2)) != c) continue;
          result = decide(f.lhs(), env, d, t, c1) && decide(f.rhs(), env, d, t, c2);
        }
    } else {
      const bool is_max = f.kind() == NodeKind::Exists || f.kind() == NodeKind::ExistsNe;
      const bool standard = f.kind() == NodeKind::Exists || f.kind() == NodeKind::Forall;
      // Branches 1..k substitute an existing variable, branch k+1 a fresh element.
      const int branches = standard ? d + 1 : 1;
      std::vector<std::uint32_t> guess(branches, 0);
      result = guess_tuple(f, env, d, t, c, is_max, standard, guess, 0, false);
    }
    if (cfg_.memo) decided_.emplace(std::move(key), result);
    return result;
  }

 private:
  struct Key {
    const void* node;
    std::vector<int> env;
    Type type;
    std::uint32_t c;
    bool operator<(const Key& o) const { return std::tie(node, env, type, c) < std::tie(o.node, o.env, o.type, o.c); }
  };

  // Chooses c_i for branch i, checking each claim as soon as it is fixed.
  bool guess_tuple(const Formula& f, Env& env, int d, const Type& t, std::uint32_t c, bool is_max, bool standard,
                   std::vector<std::uint32_t>& guess, int i, bool hit) {
    const int branches = static_cast<int>(guess.size());
    if (i == branches) return hit;
    for (std::uint32_t ci = 0; ci < size_; ++ci) {
      if (is_max ? ci > c : ci < c) continue;
      bool last = i == branches - 1;
      if (last && !hit && ci != c) continue;
      guess[i] = ci;
      bool ok;
      if (standard && i < d) {
        env.emplace_back(f.var(), i);
        ok = decide(f.body(), env, d, t, ci);
        env.pop_back();
      } else {
        ok = fresh_branch(f, env, d, t, ci, is_max);
      }
      if (ok && guess_tuple(f, env, d, t, c, is_max, standard, guess, i + 1, hit || ci == c)) return true;
    }
    return false;
  }

  // guess s; universally choose s'; s' = s must hit c exactly, any other s'
  // must reach some c' on the correct side of c.
  bool fresh_branch(const Formula& f, Env& env, int d, const Type& t, std::uint32_t c, bool is_max) {
    const std::size_t q = fresh_count(d);
    const std::uint32_t hi = is_max ? top_ : eps_;
    const std::uint64_t count = std::uint64_t{1} << q;
    env.emplace_back(f.var(), d);
    bool found = false;
    for (std::uint64_t s = 0; s < count && !found; ++s) {
      if (!decide(f.body(), env, d + 1, extend(t, s, q, hi), c)) continue;
      bool all = true;
      for (std::uint64_t s2 = 0; s2 < count && all; ++s2) {
        if (s2 == s) continue;
        Type ext = extend(t, s2, q, hi);
        bool some = false;
        for (std::uint32_t c2 = 0; c2 < size_ && !some; ++c2) {
          if (is_max ? c2 > c : c2 < c) continue;
          some = decide(f.body(), env, d + 1, ext, c2);
        }
        all = some;
      }
      found = all;
    }
    env.pop_back();
    return found;
  }

  std::uint32_t leaf(const Formula& f, const Env& env, const Type& t) const {
    if (f.is_equality()) {
      bool same = lookup(env, f.args()[0]) == lookup(env, f.args()[1]);
      return (f.kind() == NodeKind::Eq) == same ? top_ : 0;
    }
    auto r = space_->vocab().find(f.relation());
    if (!r) throw Error(ErrorKind::Vocab, "unknown relation " + f.relation());
    std::vector<std::uint8_t> args;
    for (const auto& a : f.args()) args.push_back(static_cast<std::uint8_t>(lookup(env, a)));
    std::size_t atom = space_->index_of(static_cast<std::uint32_t>(*r), args);
    return t[2 * atom + (f.kind() == NodeKind::NegAtom)];
  }

  static int lookup(const Env& env, const std::string& v) {
    for (std::size_t i = env.size(); i-- > 0;)
      if (env[i].first == v) return env[i].second;
    throw Error(ErrorKind::UnboundVariable, "variable " + v + " is not in scope");
  }

  static std::vector<int> positions(const Env& env) {
    std::vector<int> out;
    out.reserve(env.size());
    for (const auto& e : env) out.push_back(e.second);
    return out;
  }

  std::size_t fresh_count(int d) const {
    std::size_t q = space_->prefix(d + 1) - space_->prefix(d);
    if (q >= 30) throw Error(ErrorKind::ResourceLimit, "too many selector functions");
    return q;
  }

  Type extend(const Type& t, std::uint64_t sel, std::size_t q, std::uint32_t hi) const {
    Type ext = t;
    ext.reserve(t.size() + 2 * q);
    for (std::size_t i = 0; i < q; ++i) {
      bool pos = sel >> i & 1;
      ext.push_back(pos ? hi : 0);
      ext.push_back(pos ? 0 : hi);
    }
    return ext;
  }

  void tick() {
    if (++work_ > cfg_.work_limit) throw Error(ErrorKind::ResourceLimit, "game search exceeded the work limit");
  }

  const Semiring& s_;
  std::shared_ptr<const AtomSpace> space_;
  GameConfig cfg_;
  std::uint32_t top_, eps_, size_;
  std::uint64_t work_ = 0;
  std::map<Key, std::uint32_t> values_;
  std::map<Key, bool> decided_;
};

struct Setup {
  std::shared_ptr<const AtomSpace> space;
  Env env;
  Type type;
  Formula f;
};

Setup prepare(const Formula& f, const AtomicType& rho, const std::optional<std::vector<std::string>>& scope) {
  const auto& s = rho.semiring();
  if (s.kind() != SemiringKind::Boolean && s.kind() != SemiringKind::E3 && s.kind() != SemiringKind::FiniteMinMax)
    throw Error(ErrorKind::UnsupportedKind, "the game runs over finite min-max semirings, not " + s.spec());
  std::vector<std::string> vars = scope ? *scope : free_variables(f);
  if (static_cast<int>(vars.size()) != rho.k())
    throw Error(ErrorKind::ShapeMismatch, "type has " + std::to_string(rho.k()) + " variables, scope has " +
                                              std::to_string(vars.size()));
  for (const auto& v : free_variables(f))
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw Error(ErrorKind::UnboundVariable, "variable " + v + " is not valued by the type");
  Formula g = is_nnf(f) ? f : to_nnf(f);
  Setup out{make_atom_space(rho.space().vocab(), scope_depth(g, vars.size())), {}, {}, g};
  for (std::size_t i = 0; i < vars.size(); ++i) out.env.emplace_back(vars[i], static_cast<int>(i));
  for (const auto& p : rho.values()) {
    out.type.push_back(std::get<std::uint32_t>(p.pos));
    out.type.push_back(std::get<std::uint32_t>(p.neg));
  }
  return out;
}

}  // namespace

Value eval_game(const Formula& f, const AtomicType& rho, const GameConfig& cfg,
                const std::optional<std::vector<std::string>>& scope) {
  Setup st = prepare(f, rho, scope);
  Game game(rho.semiring(), st.space, cfg);
  return game.value(st.f, st.env, rho.k(), st.type);
}

bool decide(const Formula& f, const AtomicType& rho, const Value& c, const GameConfig& cfg,
            const std::optional<std::vector<std::string>>& scope) {
  if (!rho.semiring().contains(c)) throw Error(ErrorKind::OutOfCarrier, "value outside " + rho.semiring().spec());
  Setup st = prepare(f, rho, scope);
  Game game(rho.semiring(), st.space, cfg);
  return game.decide(st.f, st.env, rho.k(), st.type, std::get<std::uint32_t>(c));
}

}  // namespace zeroone
