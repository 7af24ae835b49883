#include "zeroone/formula.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "zeroone/error.hpp"

namespace zeroone {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Vocab: return "VocabError";
    case ErrorKind::NotRectifiable: return "NotRectifiable";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::NotModelDefining: return "NotModelDefining";
    case ErrorKind::MissingAtom: return "MissingAtom";
    case ErrorKind::OutOfCarrier: return "OutOfCarrier";
    case ErrorKind::DuplicateElements: return "DuplicateElements";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InfiniteCarrier: return "InfiniteCarrier";
    case ErrorKind::UnsupportedKind: return "UnsupportedKind";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::NotAbsorptive: return "NotAbsorptive";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::UnhousedIndeterminate: return "UnhousedIndeterminate";
    case ErrorKind::HasIndeterminates: return "HasIndeterminates";
    case ErrorKind::NotASentence: return "NotASentence";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::UnsupportedDistribution: return "UnsupportedDistribution";
    case ErrorKind::BadDistribution: return "BadDistribution";
    case ErrorKind::Unclassifiable: return "Unclassifiable";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

// ---------------------------------------------------------------------------
// Vocabulary

Vocabulary::Vocabulary(std::vector<Relation> relations) {
  for (auto& r : relations) add(std::move(r.name), r.arity);
}

void Vocabulary::add(std::string name, int arity) {
  if (name.empty()) throw Error(ErrorKind::Vocab, "empty relation name");
  if (arity < 1) throw Error(ErrorKind::Vocab, "relation " + name + " must have arity >= 1");
  if (find(name)) throw Error(ErrorKind::Vocab, "relation " + name + " declared twice");
  relations_.push_back({std::move(name), arity});
}

std::optional<std::size_t> Vocabulary::find(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name == name) return i;
  return std::nullopt;
}

int Vocabulary::max_arity() const {
  int m = 0;
  for (const auto& r : relations_) m = std::max(m, r.arity);
  return m;
}

namespace {

Relation parse_relation_decl(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) throw Error(ErrorKind::Vocab, "expected name/arity, got '" + std::string(text) + "'");
  std::string name(text.substr(0, slash));
  std::string arity_text(text.substr(slash + 1));
  int arity = 0;
  try {
    std::size_t used = 0;
    arity = std::stoi(arity_text, &used);
    if (used != arity_text.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw Error(ErrorKind::Vocab, "bad arity in '" + std::string(text) + "'");
  }
  return {name, arity};
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Vocabulary Vocabulary::parse(std::string_view text) {
  Vocabulary vocab;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    std::istringstream words(t);
    std::string keyword, decl;
    words >> keyword >> decl;
    if (keyword != "relation" || decl.empty())
      throw Error(ErrorKind::Vocab, "expected 'relation <name>/<arity>', got '" + t + "'");
    auto r = parse_relation_decl(decl);
    vocab.add(r.name, r.arity);
  }
  return vocab;
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

Vocabulary Vocabulary::parse_list(std::string_view list) {
  Vocabulary vocab;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto comma = list.find(',', start);
    auto piece = trim(list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!piece.empty()) {
      auto r = parse_relation_decl(piece);
      vocab.add(r.name, r.arity);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return vocab;
}

// ---------------------------------------------------------------------------
// Formula nodes

struct Formula::Node {
  NodeKind kind;
  std::string name;               // relation or bound variable
  std::vector<std::string> args;  // atom tuple or (in)equality sides
  std::vector<Formula> children;
};

namespace {
const std::string kEmpty;
const std::vector<std::string> kNoArgs;
}  // namespace

Formula Formula::eq(std::string lhs, std::string rhs) {
  return Formula(std::make_shared<const Node>(Node{NodeKind::Eq, {}, {std::move(lhs), std::move(rhs)}, {}}));
}

Formula Formula::neq(std::string lhs, std::string rhs) {
  return Formula(std::make_shared<const Node>(Node{NodeKind::Neq, {}, {std::move(lhs), std::move(rhs)}, {}}));
}

Formula Formula::atom(std::string relation, std::vector<std::string> args) {
  return Formula(std::make_shared<const Node>(Node{NodeKind::Atom, std::move(relation), std::move(args), {}}));
}

Formula Formula::neg_atom(std::string relation, std::vector<std::string> args) {
  return Formula(std::make_shared<const Node>(Node{NodeKind::NegAtom, std::move(relation), std::move(args), {}}));
}

Formula Formula::binary(NodeKind kind, Formula lhs, Formula rhs) {
  if (kind != NodeKind::Or && kind != NodeKind::And) throw std::logic_error("binary(): not a connective");
  return Formula(std::make_shared<const Node>(Node{kind, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::disj(Formula lhs, Formula rhs) { return binary(NodeKind::Or, std::move(lhs), std::move(rhs)); }
Formula Formula::conj(Formula lhs, Formula rhs) { return binary(NodeKind::And, std::move(lhs), std::move(rhs)); }

Formula Formula::quantifier(NodeKind kind, std::string var, Formula body) {
  switch (kind) {
    case NodeKind::Exists:
    case NodeKind::Forall:
    case NodeKind::ExistsNe:
    case NodeKind::ForallNe:
      break;
    default:
      throw std::logic_error("quantifier(): not a quantifier kind");
  }
  return Formula(std::make_shared<const Node>(Node{kind, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::exists(std::string var, Formula body) { return quantifier(NodeKind::Exists, std::move(var), std::move(body)); }
Formula Formula::forall(std::string var, Formula body) { return quantifier(NodeKind::Forall, std::move(var), std::move(body)); }
Formula Formula::exists_ne(std::string var, Formula body) { return quantifier(NodeKind::ExistsNe, std::move(var), std::move(body)); }
Formula Formula::forall_ne(std::string var, Formula body) { return quantifier(NodeKind::ForallNe, std::move(var), std::move(body)); }

Formula Formula::negation(Formula body) {
  return Formula(std::make_shared<const Node>(Node{NodeKind::Not, {}, {}, {std::move(body)}}));
}

NodeKind Formula::kind() const { return node_->kind; }

const std::string& Formula::relation() const { return is_literal() ? node_->name : kEmpty; }

const std::vector<std::string>& Formula::args() const {
  return (is_literal() || is_equality()) ? node_->args : kNoArgs;
}

const std::string& Formula::var() const { return is_quantifier() ? node_->name : kEmpty; }

const Formula& Formula::lhs() const {
  if (!is_binary()) throw std::logic_error("lhs() on non-binary node");
  return node_->children[0];
}

const Formula& Formula::rhs() const {
  if (!is_binary()) throw std::logic_error("rhs() on non-binary node");
  return node_->children[1];
}

const Formula& Formula::body() const {
  if (!is_quantifier() && kind() != NodeKind::Not) throw std::logic_error("body() on node without body");
  return node_->children[0];
}

bool Formula::is_quantifier() const {
  switch (kind()) {
    case NodeKind::Exists:
    case NodeKind::Forall:
    case NodeKind::ExistsNe:
    case NodeKind::ForallNe:
      return true;
    default:
      return false;
  }
}

bool Formula::is_binary() const { return kind() == NodeKind::Or || kind() == NodeKind::And; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.args == y.args && x.children == y.children;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string_view quantifier_keyword(NodeKind kind) {
  switch (kind) {
    case NodeKind::Exists: return "exists";
    case NodeKind::Forall: return "forall";
    case NodeKind::ExistsNe: return "exists'";
    case NodeKind::ForallNe: return "forall'";
    default: return "";
  }
}

// Context levels: 0 top, 1 left of '|', 2 right of '|' or left of '&', 3 right of '&' or under '~'.
void print(const Formula& f, int ctx, std::string& out) {
  auto tuple = [&](const std::vector<std::string>& args) {
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ',';
      out += args[i];
    }
    out += ')';
  };
  switch (f.kind()) {
    case NodeKind::Eq:
      out += f.args()[0] + " = " + f.args()[1];
      return;
    case NodeKind::Neq:
      out += f.args()[0] + " != " + f.args()[1];
      return;
    case NodeKind::Atom:
      out += f.relation();
      tuple(f.args());
      return;
    case NodeKind::NegAtom:
      out += '!';
      out += f.relation();
      tuple(f.args());
      return;
    case NodeKind::Not:
      out += '~';
      print(f.body(), 3, out);
      return;
    case NodeKind::Or:
    case NodeKind::And: {
      bool is_or = f.kind() == NodeKind::Or;
      bool parens = ctx >= (is_or ? 2 : 3);
      if (parens) out += '(';
      print(f.lhs(), is_or ? 1 : 2, out);
      out += is_or ? " | " : " & ";
      print(f.rhs(), is_or ? 2 : 3, out);
      if (parens) out += ')';
      return;
    }
    default: {
      bool parens = ctx >= 1;
      if (parens) out += '(';
      out += quantifier_keyword(f.kind());
      out += ' ';
      out += f.var();
      out += ". ";
      print(f.body(), 0, out);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Validation and variables

void validate(const Formula& f, const Vocabulary& vocab) {
  if (f.is_literal()) {
    auto idx = vocab.find(f.relation());
    if (!idx) throw Error(ErrorKind::Vocab, "unknown relation " + f.relation());
    int arity = vocab.at(*idx).arity;
    if (static_cast<int>(f.args().size()) != arity)
      throw Error(ErrorKind::Vocab, "relation " + f.relation() + " has arity " + std::to_string(arity) + " but is used with " +
                                        std::to_string(f.args().size()) + " arguments");
    return;
  }
  if (f.is_binary()) {
    validate(f.lhs(), vocab);
    validate(f.rhs(), vocab);
  } else if (f.is_quantifier() || f.kind() == NodeKind::Not) {
    validate(f.body(), vocab);
  }
}

namespace {

void infer(const Formula& f, Vocabulary& vocab) {
  if (f.is_literal()) {
    auto idx = vocab.find(f.relation());
    int arity = static_cast<int>(f.args().size());
    if (!idx) {
      vocab.add(f.relation(), arity);
    } else if (vocab.at(*idx).arity != arity) {
      throw Error(ErrorKind::Vocab, "relation " + f.relation() + " used with inconsistent arities");
    }
    return;
  }
  if (f.is_binary()) {
    infer(f.lhs(), vocab);
    infer(f.rhs(), vocab);
  } else if (f.is_quantifier() || f.kind() == NodeKind::Not) {
    infer(f.body(), vocab);
  }
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) != bound.end()) return;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  if (f.is_literal() || f.is_equality()) {
    for (const auto& v : f.args()) note(v);
  } else if (f.is_binary()) {
    collect_free(f.lhs(), bound, out);
    collect_free(f.rhs(), bound, out);
  } else if (f.is_quantifier()) {
    bound.push_back(f.var());
    collect_free(f.body(), bound, out);
    bound.pop_back();
  } else {
    collect_free(f.body(), bound, out);
  }
}

void collect_names(const Formula& f, std::set<std::string>& names) {
  if (f.is_literal() || f.is_equality()) {
    names.insert(f.args().begin(), f.args().end());
  } else if (f.is_binary()) {
    collect_names(f.lhs(), names);
    collect_names(f.rhs(), names);
  } else {
    if (f.is_quantifier()) names.insert(f.var());
    collect_names(f.body(), names);
  }
}

int quantifier_depth(const Formula& f) {
  if (f.is_binary()) return std::max(quantifier_depth(f.lhs()), quantifier_depth(f.rhs()));
  if (f.is_quantifier()) return 1 + quantifier_depth(f.body());
  if (f.kind() == NodeKind::Not) return quantifier_depth(f.body());
  return 0;
}

}  // namespace

Vocabulary infer_vocabulary(const Formula& f) {
  Vocabulary vocab;
  infer(f, vocab);
  return vocab;
}

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

FormulaStats stats(const Formula& f) {
  std::set<std::string> names;
  collect_names(f, names);
  return {static_cast<int>(names.size()), free_variables(f), quantifier_depth(f)};
}

int scope_depth(const Formula& f, std::size_t root_scope) {
  return static_cast<int>(root_scope) + quantifier_depth(f);
}

int scope_depth(const Formula& f) { return scope_depth(f, free_variables(f).size()); }

// ---------------------------------------------------------------------------
// Negation normal form

namespace {

Formula nnf(const Formula& f, bool negate) {
  switch (f.kind()) {
    case NodeKind::Eq:
      return negate ? Formula::neq(f.args()[0], f.args()[1]) : f;
    case NodeKind::Neq:
      return negate ? Formula::eq(f.args()[0], f.args()[1]) : f;
    case NodeKind::Atom:
      return negate ? Formula::neg_atom(f.relation(), f.args()) : f;
    case NodeKind::NegAtom:
      return negate ? Formula::atom(f.relation(), f.args()) : f;
    case NodeKind::Not:
      return nnf(f.body(), !negate);
    case NodeKind::Or:
    case NodeKind::And: {
      NodeKind k = f.kind();
      if (negate) k = (k == NodeKind::Or) ? NodeKind::And : NodeKind::Or;
      return Formula::binary(k, nnf(f.lhs(), negate), nnf(f.rhs(), negate));
    }
    case NodeKind::Exists:
      return Formula::quantifier(negate ? NodeKind::Forall : NodeKind::Exists, f.var(), nnf(f.body(), negate));
    case NodeKind::Forall:
      return Formula::quantifier(negate ? NodeKind::Exists : NodeKind::Forall, f.var(), nnf(f.body(), negate));
    case NodeKind::ExistsNe:
      return Formula::quantifier(negate ? NodeKind::ForallNe : NodeKind::ExistsNe, f.var(), nnf(f.body(), negate));
    case NodeKind::ForallNe:
      return Formula::quantifier(negate ? NodeKind::ExistsNe : NodeKind::ForallNe, f.var(), nnf(f.body(), negate));
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

bool is_nnf(const Formula& f) {
  if (f.kind() == NodeKind::Not) return false;
  if (f.is_binary()) return is_nnf(f.lhs()) && is_nnf(f.rhs());
  if (f.is_quantifier()) return is_nnf(f.body());
  return true;
}

// ---------------------------------------------------------------------------
// Renaming

namespace {

class Rectifier {
 public:
  Rectifier(const Formula& f, ParseOptions options) : options_(options) {
    collect_names(f, taken_);
    auto free = free_variables(f);
    free_.insert(free.begin(), free.end());
  }

  Formula run(const Formula& f) { return go(f); }

 private:
  std::string fresh(const std::string& base) {
    for (int i = 1;; ++i) {
      std::string candidate = base + "_" + std::to_string(i);
      if (!taken_.count(candidate)) {
        taken_.insert(candidate);
        return candidate;
      }
    }
  }

  std::string lookup(const std::string& v) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == v) return it->second;
    return v;
  }

  std::vector<std::string> map_args(const std::vector<std::string>& args) const {
    std::vector<std::string> out;
    out.reserve(args.size());
    for (const auto& a : args) out.push_back(lookup(a));
    return out;
  }

  Formula go(const Formula& f) {
    switch (f.kind()) {
      case NodeKind::Eq: {
        auto a = map_args(f.args());
        return Formula::eq(a[0], a[1]);
      }
      case NodeKind::Neq: {
        auto a = map_args(f.args());
        return Formula::neq(a[0], a[1]);
      }
      case NodeKind::Atom:
        return Formula::atom(f.relation(), map_args(f.args()));
      case NodeKind::NegAtom:
        return Formula::neg_atom(f.relation(), map_args(f.args()));
      case NodeKind::Not:
        return Formula::negation(go(f.body()));
      case NodeKind::Or:
      case NodeKind::And: {
        Formula l = go(f.lhs());
        Formula r = go(f.rhs());
        return Formula::binary(f.kind(), std::move(l), std::move(r));
      }
      default: {
        const std::string& v = f.var();
        if (free_.count(v))
          throw Error(ErrorKind::NotRectifiable, "variable " + v + " occurs both free and bound");
        std::string name = v;
        if (bound_.count(v)) {
          if (!options_.auto_rectify) throw Error(ErrorKind::NotRectifiable, "variable " + v + " is bound twice");
          name = fresh(v);
        }
        bound_.insert(name);
        env_.emplace_back(v, name);
        Formula body = go(f.body());
        env_.pop_back();
        return Formula::quantifier(f.kind(), name, std::move(body));
      }
    }
  }

  ParseOptions options_;
  std::set<std::string> taken_;
  std::set<std::string> free_;
  std::set<std::string> bound_;
  std::vector<std::pair<std::string, std::string>> env_;
};

}  // namespace

Formula rectify(const Formula& f, ParseOptions options) { return Rectifier(f, options).run(f); }

Formula substitute(const Formula& f, const std::string& from, const std::string& to) {
  auto map_args = [&](const std::vector<std::string>& args) {
    std::vector<std::string> out = args;
    for (auto& a : out)
      if (a == from) a = to;
    return out;
  };
  switch (f.kind()) {
    case NodeKind::Eq: {
      auto a = map_args(f.args());
      return Formula::eq(a[0], a[1]);
    }
    case NodeKind::Neq: {
      auto a = map_args(f.args());
      return Formula::neq(a[0], a[1]);
    }
    case NodeKind::Atom:
      return Formula::atom(f.relation(), map_args(f.args()));
    case NodeKind::NegAtom:
      return Formula::neg_atom(f.relation(), map_args(f.args()));
    case NodeKind::Not:
      return Formula::negation(substitute(f.body(), from, to));
    case NodeKind::Or:
    case NodeKind::And:
      return Formula::binary(f.kind(), substitute(f.lhs(), from, to), substitute(f.rhs(), from, to));
    default:
      if (f.var() == from) return f;
      if (f.var() == to) throw Error(ErrorKind::NotRectifiable, "substituting " + to + " would be captured");
      return Formula::quantifier(f.kind(), f.var(), substitute(f.body(), from, to));
  }
}

// ---------------------------------------------------------------------------
// Excluding quantifiers

namespace {

Formula excl(const Formula& f, std::vector<std::string>& scope) {
  switch (f.kind()) {
    case NodeKind::Or:
    case NodeKind::And:
      return Formula::binary(f.kind(), excl(f.lhs(), scope), excl(f.rhs(), scope));
    case NodeKind::Not:
      return Formula::negation(excl(f.body(), scope));
    case NodeKind::ExistsNe:
    case NodeKind::ForallNe: {
      scope.push_back(f.var());
      Formula body = excl(f.body(), scope);
      scope.pop_back();
      return Formula::quantifier(f.kind(), f.var(), std::move(body));
    }
    case NodeKind::Exists:
    case NodeKind::Forall: {
      bool is_exists = f.kind() == NodeKind::Exists;
      NodeKind connective = is_exists ? NodeKind::Or : NodeKind::And;
      std::optional<Formula> acc;
      // Copy: recursion below may push onto scope.
      const std::vector<std::string> outer = scope;
      for (const auto& x : outer) {
        Formula branch = excl(substitute(f.body(), f.var(), x), scope);
        acc = acc ? Formula::binary(connective, *acc, branch) : branch;
      }
      scope.push_back(f.var());
      Formula body = excl(f.body(), scope);
      scope.pop_back();
      Formula q = Formula::quantifier(is_exists ? NodeKind::ExistsNe : NodeKind::ForallNe, f.var(), std::move(body));
      return acc ? Formula::binary(connective, *acc, q) : q;
    }
    default:
      return f;
  }
}

}  // namespace

Formula to_excluding(const Formula& f, const std::vector<std::string>& scope) {
  std::vector<std::string> s = scope;
  return excl(f, s);
}

Formula to_excluding(const Formula& f) { return to_excluding(f, free_variables(f)); }

bool uses_standard_quantifiers(const Formula& f) {
  if (f.kind() == NodeKind::Exists || f.kind() == NodeKind::Forall) return true;
  if (f.is_binary()) return uses_standard_quantifiers(f.lhs()) || uses_standard_quantifiers(f.rhs());
  if (f.is_quantifier() || f.kind() == NodeKind::Not) return uses_standard_quantifiers(f.body());
  return false;
}

}  // namespace zeroone
