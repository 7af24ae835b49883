#include "zeroone/interp.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "zeroone/error.hpp"

namespace zeroone {

Interpretation::Interpretation(Vocabulary vocab, Semiring semiring, int n)
    : vocab_(std::move(vocab)), semiring_(std::move(semiring)), n_(n) {
  if (n < 1) throw Error(ErrorKind::Usage, "universe must be nonempty");
  for (const auto& r : vocab_.relations()) {
    std::size_t cells = 1;
    for (int i = 0; i < r.arity; ++i) {
      cells *= static_cast<std::size_t>(n);
      if (cells > (std::size_t{1} << 28)) throw Error(ErrorKind::ResourceLimit, "interpretation too large");
    }
    values_.emplace_back(cells, LitPair{semiring_.zero(), semiring_.one()});
  }
}

std::size_t Interpretation::code(std::uint32_t relation, const std::vector<int>& tuple) const {
  if (static_cast<int>(tuple.size()) != vocab_.at(relation).arity) throw Error(ErrorKind::Vocab, "arity mismatch");
  std::size_t c = 0;
  for (int a : tuple) {
    if (a < 0 || a >= n_) throw Error(ErrorKind::OutOfCarrier, "element " + std::to_string(a) + " outside the universe");
    c = c * n_ + a;
  }
  return c;
}

void Interpretation::set(std::uint32_t relation, const std::vector<int>& tuple, LitPair values) {
  if (semiring_.is_zero(values.pos) == semiring_.is_zero(values.neg))
    throw Error(ErrorKind::NotModelDefining, "exactly one literal of each atom must be zero");
  if (!semiring_.contains(values.pos) || !semiring_.contains(values.neg))
    throw Error(ErrorKind::OutOfCarrier, "value outside " + semiring_.spec());
  values_[relation][code(relation, tuple)] = std::move(values);
}

void Interpretation::set_code(std::uint32_t relation, std::size_t code, LitPair values) {
  if (semiring_.is_zero(values.pos) == semiring_.is_zero(values.neg))
    throw Error(ErrorKind::NotModelDefining, "exactly one literal of each atom must be zero");
  if (!semiring_.contains(values.pos) || !semiring_.contains(values.neg))
    throw Error(ErrorKind::OutOfCarrier, "value outside " + semiring_.spec());
  values_.at(relation).at(code) = std::move(values);
}

const LitPair& Interpretation::get(std::uint32_t relation, const std::vector<int>& tuple) const {
  return values_[relation][code(relation, tuple)];
}

Interpretation Interpretation::parse(std::string_view text, const Semiring* semiring) {
  std::optional<int> n;
  std::optional<Semiring> sr;
  if (semiring) sr = *semiring;
  Vocabulary vocab;
  struct Entry {
    std::uint32_t rel;
    std::vector<int> tuple;
    bool neg;
    std::string value;
    int line;
  };
  std::vector<Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::string first;
    if (!(words >> first)) continue;
    auto where = [&]() { return "line " + std::to_string(lineno) + ": "; };
    if (first == "universe") {
      int v = 0;
      if (!(words >> v) || v < 1) throw Error(ErrorKind::Parse, where() + "expected 'universe <n>' with n >= 1");
      n = v;
    } else if (first == "semiring") {
      std::string spec;
      words >> spec;
      if (!semiring) sr = Semiring::parse(spec);
    } else if (first == "relation") {
      std::string decl;
      words >> decl;
      auto one = Vocabulary::parse_list(decl);
      if (one.size() != 1) throw Error(ErrorKind::Vocab, where() + "bad relation declaration");
      vocab.add(one.at(0).name, one.at(0).arity);
    } else {
      std::string line = raw;
      line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
      auto open = line.find('('), close = line.find(')'), eq = line.find('=');
      if (open == std::string::npos || close == std::string::npos || eq == std::string::npos || eq < close)
        throw Error(ErrorKind::Parse, where() + "expected R(i,..)=v");
      bool neg = line[0] == '!';
      std::string name = line.substr(neg ? 1 : 0, open - (neg ? 1 : 0));
      auto r = vocab.find(name);
      if (!r) throw Error(ErrorKind::Vocab, where() + "undeclared relation " + name);
      std::vector<int> tuple;
      std::stringstream parts(line.substr(open + 1, close - open - 1));
      std::string a;
      while (std::getline(parts, a, ',')) {
        if (a.empty() || !std::all_of(a.begin(), a.end(), [](unsigned char c) { return std::isdigit(c); }))
          throw Error(ErrorKind::Parse, where() + "elements are non-negative integers");
        tuple.push_back(std::stoi(a));
      }
      entries.push_back({static_cast<std::uint32_t>(*r), tuple, neg, line.substr(eq + 1), lineno});
    }
  }
  if (!n) throw Error(ErrorKind::Parse, "missing 'universe <n>' header");
  if (!sr) throw Error(ErrorKind::Usage, "no semiring given in file or on the command line");
  Interpretation pi(vocab, *sr, *n);
  std::vector<std::vector<char>> seen;
  for (std::size_t r = 0; r < vocab.size(); ++r) seen.emplace_back(pi.cells(static_cast<std::uint32_t>(r)), 0);
  for (const auto& e : entries) {
    auto where = "line " + std::to_string(e.line) + ": ";
    if (static_cast<int>(e.tuple.size()) != vocab.at(e.rel).arity) throw Error(ErrorKind::Vocab, where + "arity mismatch");
    for (int a : e.tuple)
      if (a >= *n) throw Error(ErrorKind::Parse, where + "element " + std::to_string(a) + " outside the universe");
    Value v = sr->parse_value(e.value);
    if (sr->is_zero(v)) throw Error(ErrorKind::NotModelDefining, where + "the listed literal must be the nonzero one");
    std::size_t c = pi.code(e.rel, e.tuple);
    if (seen[e.rel][c]) throw Error(ErrorKind::NotModelDefining, where + "atom listed twice");
    seen[e.rel][c] = 1;
    pi.set(e.rel, e.tuple, e.neg ? LitPair{sr->zero(), v} : LitPair{v, sr->zero()});
  }
  for (std::uint32_t r = 0; r < vocab.size(); ++r) {
    for (std::size_t c = 0; c < seen[r].size(); ++c) {
      if (seen[r][c]) continue;
      std::string t;
      std::size_t rest = c;
      std::vector<int> tuple(vocab.at(r).arity);
      for (int i = vocab.at(r).arity - 1; i >= 0; --i) {
        tuple[i] = static_cast<int>(rest % *n);
        rest /= *n;
      }
      for (std::size_t i = 0; i < tuple.size(); ++i) t += (i ? "," : "") + std::to_string(tuple[i]);
      throw Error(ErrorKind::MissingAtom, "no value for " + vocab.at(r).name + "(" + t + ")");
    }
  }
  return pi;
}

Interpretation Interpretation::load(const std::string& path, const Semiring* semiring) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), semiring);
}

std::string Interpretation::to_text() const {
  std::ostringstream out;
  out << "universe " << n_ << "\nsemiring " << semiring_.spec() << "\n";
  for (const auto& r : vocab_.relations()) out << "relation " << r.name << "/" << r.arity << "\n";
  for (std::uint32_t r = 0; r < vocab_.size(); ++r) {
    int arity = vocab_.at(r).arity;
    for (std::size_t c = 0; c < values_[r].size(); ++c) {
      std::vector<int> tuple(arity);
      std::size_t rest = c;
      for (int i = arity - 1; i >= 0; --i) {
        tuple[i] = static_cast<int>(rest % n_);
        rest /= n_;
      }
      const auto& p = values_[r][c];
      bool neg = semiring_.is_zero(p.pos);
      out << (neg ? "!" : "") << vocab_.at(r).name << "(";
      for (int i = 0; i < arity; ++i) out << (i ? "," : "") << tuple[i];
      out << ")=" << semiring_.format(neg ? p.neg : p.pos) << "\n";
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct CNode {
  NodeKind kind;
  std::uint32_t rel = 0;
  std::vector<int> slots;  // atom arguments or equality sides
  int slot = 0;            // slot bound by a quantifier
  std::vector<CNode> kids;
};

class Compiler {
 public:
  Compiler(const Vocabulary& vocab, std::vector<std::string> scope) : vocab_(vocab), env_(std::move(scope)) {}

  CNode compile(const Formula& f) {
    CNode c{f.kind(), 0, {}, 0, {}};
    switch (f.kind()) {
      case NodeKind::Eq:
      case NodeKind::Neq:
        c.slots = {lookup(f.args()[0]), lookup(f.args()[1])};
        break;
      case NodeKind::Atom:
      case NodeKind::NegAtom: {
        auto r = vocab_.find(f.relation());
        if (!r) throw Error(ErrorKind::Vocab, "unknown relation " + f.relation());
        if (static_cast<int>(f.args().size()) != vocab_.at(*r).arity)
          throw Error(ErrorKind::Vocab, "arity mismatch for " + f.relation());
        c.rel = static_cast<std::uint32_t>(*r);
        for (const auto& a : f.args()) c.slots.push_back(lookup(a));
        break;
      }
      case NodeKind::Or:
      case NodeKind::And:
        c.kids.push_back(compile(f.lhs()));
        c.kids.push_back(compile(f.rhs()));
        break;
      case NodeKind::Not:
        throw Error(ErrorKind::Usage, "evaluation expects negation normal form");
      default:
        c.slot = static_cast<int>(env_.size());
        env_.push_back(f.var());
        c.kids.push_back(compile(f.body()));
        env_.pop_back();
        max_slots_ = std::max(max_slots_, c.slot + 1);
        break;
    }
    return c;
  }

  int max_slots() const { return std::max<int>(max_slots_, static_cast<int>(env_.size())); }

 private:
  int lookup(const std::string& v) const {
    for (std::size_t i = env_.size(); i-- > 0;)
      if (env_[i] == v) return static_cast<int>(i);
    throw Error(ErrorKind::UnboundVariable, "variable " + v + " is not assigned");
  }

  const Vocabulary& vocab_;
  std::vector<std::string> env_;
  int max_slots_ = 0;
};

class Evaluator {
 public:
  Evaluator(const Interpretation& pi) : pi_(pi), s_(pi.semiring()) {}

  Value run(const CNode& c, std::vector<int>& vals) {
    switch (c.kind) {
      case NodeKind::Eq:
        return vals[c.slots[0]] == vals[c.slots[1]] ? s_.one() : s_.zero();
      case NodeKind::Neq:
        return vals[c.slots[0]] != vals[c.slots[1]] ? s_.one() : s_.zero();
      case NodeKind::Atom:
      case NodeKind::NegAtom: {
        std::size_t code = 0;
        for (int sl : c.slots) code = code * pi_.size() + vals[sl];
        const auto& p = pi_.get_code(c.rel, code);
        return c.kind == NodeKind::Atom ? p.pos : p.neg;
      }
      case NodeKind::Or: {
        Value a = run(c.kids[0], vals);
        if (saturated_sum(a)) return a;
        return s_.add(a, run(c.kids[1], vals));
      }
      case NodeKind::And: {
        Value a = run(c.kids[0], vals);
        if (s_.is_zero(a)) return a;
        return s_.mul(a, run(c.kids[1], vals));
      }
      default: {
        bool sum = c.kind == NodeKind::Exists || c.kind == NodeKind::ExistsNe;
        bool excl = c.kind == NodeKind::ExistsNe || c.kind == NodeKind::ForallNe;
        Value acc = sum ? s_.zero() : s_.one();
        for (int a = 0; a < pi_.size(); ++a) {
          if (excl && std::find(vals.begin(), vals.begin() + c.slot, a) != vals.begin() + c.slot) continue;
          vals[c.slot] = a;
          Value v = run(c.kids[0], vals);
          acc = sum ? s_.add(acc, v) : s_.mul(acc, v);
          if (sum ? saturated_sum(acc) : s_.is_zero(acc)) break;
        }
        return acc;
      }
    }
  }

 private:
  bool saturated_sum(const Value& v) const {
    if (auto n = std::get_if<ExtNat>(&v)) return n->inf;
    return s_.is_absorptive() && s_.is_one(v);
  }

  const Interpretation& pi_;
  const Semiring& s_;
};

}  // namespace

Value evaluate(const Interpretation& pi, const Formula& f, const std::vector<std::string>& scope,
               const std::vector<int>& tuple) {
  if (scope.size() != tuple.size()) throw Error(ErrorKind::ShapeMismatch, "scope and tuple differ in length");
  for (int a : tuple)
    if (a < 0 || a >= pi.size()) throw Error(ErrorKind::OutOfCarrier, "element " + std::to_string(a) + " outside the universe");
  Compiler comp(pi.vocab(), scope);
  CNode root = comp.compile(f);
  std::vector<int> vals(std::max<std::size_t>(comp.max_slots(), scope.size()) + 1, -1);
  std::copy(tuple.begin(), tuple.end(), vals.begin());
  return Evaluator(pi).run(root, vals);
}

Value evaluate(const Interpretation& pi, const Formula& f, const std::map<std::string, int>& assignment) {
  std::vector<std::string> scope;
  std::vector<int> tuple;
  for (const auto& v : free_variables(f)) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw Error(ErrorKind::UnboundVariable, "variable " + v + " is not assigned");
    scope.push_back(v);
    tuple.push_back(it->second);
  }
  return evaluate(pi, f, scope, tuple);
}

AtomicType atomic_type_of(const Interpretation& pi, const std::vector<int>& tuple) {
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] < 0 || tuple[i] >= pi.size())
      throw Error(ErrorKind::OutOfCarrier, "element " + std::to_string(tuple[i]) + " outside the universe");
    for (std::size_t j = i + 1; j < tuple.size(); ++j)
      if (tuple[i] == tuple[j]) throw Error(ErrorKind::DuplicateElements, "tuple elements must be pairwise distinct");
  }
  auto space = make_atom_space(pi.vocab(), static_cast<int>(tuple.size()));
  std::vector<LitPair> values;
  values.reserve(space->size());
  std::vector<int> t;
  for (std::size_t i = 0; i < space->size(); ++i) {
    const auto& a = space->atom(i);
    t.assign(a.args.size(), 0);
    for (std::size_t j = 0; j < a.args.size(); ++j) t[j] = tuple[a.args[j]];
    values.push_back(pi.get(a.relation, t));
  }
  return AtomicType(space, pi.semiring(), std::move(values));
}

}  // namespace zeroone
