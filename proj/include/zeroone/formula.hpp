#ifndef ZEROONE_FORMULA_HPP
#define ZEROONE_FORMULA_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zeroone {

struct Relation {
  std::string name;
  int arity = 1;

  friend bool operator==(const Relation&, const Relation&) = default;
};

/// A finite relational vocabulary. Relation order is significant: it fixes
/// the canonical enumeration of atoms used by types, polynomials and the
/// random sampler.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<Relation> relations);

  void add(std::string name, int arity);
  std::optional<std::size_t> find(std::string_view name) const;
  const Relation& at(std::size_t index) const { return relations_.at(index); }
  const std::vector<Relation>& relations() const { return relations_; }
  std::size_t size() const { return relations_.size(); }
  bool empty() const { return relations_.empty(); }
  int max_arity() const;

  /// Parses `relation <name>/<arity>` lines. Blank lines and `#` comments are skipped.
  static Vocabulary parse(std::string_view text);
  static Vocabulary load(const std::string& path);
  /// Parses a compact list such as `E/2,P/1`.
  static Vocabulary parse_list(std::string_view list);

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<Relation> relations_;
};

enum class NodeKind {
  Eq,
  Neq,
  Atom,
  NegAtom,
  Or,
  And,
  Exists,
  Forall,
  ExistsNe,
  ForallNe,
  Not,  // general negation; only present before to_nnf
};

/// Immutable first-order formula. Copies share structure.
class Formula {
 public:
  static Formula eq(std::string lhs, std::string rhs);
  static Formula neq(std::string lhs, std::string rhs);
  static Formula atom(std::string relation, std::vector<std::string> args);
  static Formula neg_atom(std::string relation, std::vector<std::string> args);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);
  static Formula exists_ne(std::string var, Formula body);
  static Formula forall_ne(std::string var, Formula body);
  static Formula negation(Formula body);
  static Formula quantifier(NodeKind kind, std::string var, Formula body);
  static Formula binary(NodeKind kind, Formula lhs, Formula rhs);

  NodeKind kind() const;
  /// Relation name of an atom.
  const std::string& relation() const;
  /// Argument variables of an atom, or the two sides of an (in)equality.
  const std::vector<std::string>& args() const;
  /// Variable bound by a quantifier.
  const std::string& var() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const;

  bool is_quantifier() const;
  bool is_binary() const;
  bool is_equality() const { return kind() == NodeKind::Eq || kind() == NodeKind::Neq; }
  bool is_literal() const { return kind() == NodeKind::Atom || kind() == NodeKind::NegAtom; }

  /// Address of the shared node; stable for the lifetime of any copy.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaStats {
  int width = 0;
  std::vector<std::string> free_vars;
  int quantifier_depth = 0;
};

struct ParseOptions {
  /// Rename bound variables apart automatically. When false, any clash
  /// between bound variables, or between a bound and a free variable, is
  /// reported as NotRectifiable.
  bool auto_rectify = true;
};

/// Parses without vocabulary checks and without normalisation; `~` survives.
Formula parse_formula_raw(std::string_view text);
/// Parses, checks against the vocabulary, eliminates `~` and rectifies.
Formula parse_formula(std::string_view text, const Vocabulary& vocab, ParseOptions options = {});
/// Like parse_formula, with the vocabulary read off the atoms that occur.
Formula parse_formula(std::string_view text, ParseOptions options = {});

/// Canonical ASCII form, accepted back by the parser.
std::string to_string(const Formula& f);

/// Throws Vocab on unknown relations or arity mismatches.
void validate(const Formula& f, const Vocabulary& vocab);
Vocabulary infer_vocabulary(const Formula& f);

Formula to_nnf(const Formula& f);
bool is_nnf(const Formula& f);

Formula rectify(const Formula& f, ParseOptions options = {});

/// Rewrites standard quantifiers into excluding ones. `scope` lists the
/// variables in scope at the root; it defaults to the free variables.
Formula to_excluding(const Formula& f);
Formula to_excluding(const Formula& f, const std::vector<std::string>& scope);
bool uses_standard_quantifiers(const Formula& f);

/// Replaces free occurrences of `from` by `to`.
Formula substitute(const Formula& f, const std::string& from, const std::string& to);

FormulaStats stats(const Formula& f);
/// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const Formula& f);
bool is_sentence(const Formula& f);
/// Number of variables simultaneously in scope at the deepest point,
/// counting the free variables: the k for which extension properties matter.
int scope_depth(const Formula& f);
int scope_depth(const Formula& f, std::size_t root_scope);

}  // namespace zeroone

#endif  // ZEROONE_FORMULA_HPP
