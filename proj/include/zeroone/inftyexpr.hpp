#ifndef ZEROONE_INFTYEXPR_HPP
#define ZEROONE_INFTYEXPR_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zeroone/atoms.hpp"
#include "zeroone/formula.hpp"
#include "zeroone/semiring.hpp"

namespace zeroone {

enum class InftyOp { Const, Var, Sum, Product, Power, ScaleInf };

/// Arithmetic term over ℕ∪{∞} in literal indeterminates. The factories fold
/// constants, so a term without indeterminates is always a single Const.
class InftyExpr {
 public:
  static InftyExpr constant(ExtNat value);
  static InftyExpr zero() { return constant({0, false}); }
  static InftyExpr one() { return constant({1, false}); }
  static InftyExpr infinity() { return constant(ExtNat::infinity()); }
  static InftyExpr var(std::uint32_t literal);
  static InftyExpr sum(std::vector<InftyExpr> terms);
  static InftyExpr product(std::vector<InftyExpr> factors);
  static InftyExpr power(InftyExpr base);      // g^∞
  static InftyExpr scale_inf(InftyExpr inner);  // ∞·g

  InftyOp op() const { return node_->op; }
  const ExtNat& value() const { return node_->value; }
  std::uint32_t literal() const { return node_->literal; }
  const std::vector<InftyExpr>& children() const { return node_->kids; }
  bool is_const() const { return op() == InftyOp::Const; }
  bool is_const(const ExtNat& v) const { return is_const() && value() == v; }

  /// Sorted, deduplicated literal ids occurring in the term.
  std::vector<std::uint32_t> literals() const;
  /// Replaces indeterminates by constants where `sub` has an entry, refolding.
  InftyExpr substitute(const std::map<std::uint32_t, ExtNat>& sub) const;

  friend bool operator==(const InftyExpr& a, const InftyExpr& b);

 private:
  struct Node {
    InftyOp op;
    ExtNat value;
    std::uint32_t literal = 0;
    std::vector<InftyExpr> kids;
  };
  explicit InftyExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static InftyExpr make(InftyOp op, std::vector<InftyExpr> kids);
  std::shared_ptr<const Node> node_;
};

/// Abstraction of ℕ∞ into zero, one, finite ≥ 2 and infinity.
enum class AbsClass : std::uint8_t { Z, O, F, I };
AbsClass class_of(const ExtNat& v);
std::string to_string(AbsClass c);
AbsClass abs_add(AbsClass a, AbsClass b);
AbsClass abs_mul(AbsClass a, AbsClass b);

struct InftyOptions {
  std::uint64_t selector_limit = std::uint64_t{1} << 20;
  std::uint64_t assignment_limit = std::uint64_t{1} << 22;
};

/// g_ψ with x1..xi bound to `scope` (default: the free variables).
InftyExpr build_infty(const Formula& f, const Vocabulary& vocab, const std::optional<std::vector<std::string>>& scope = {},
                      InftyOptions options = {});

/// `sigma` is indexed by literal id; missing entries read as 0.
ExtNat eval_infty(const InftyExpr& g, const std::vector<ExtNat>& sigma);
AbsClass abstract_eval(const InftyExpr& g, const std::vector<AbsClass>& sigma);

/// g ≡ c for c ∈ {0, 1}, over every consistent class assignment.
bool is_equiv_const(const InftyExpr& g, int c, InftyOptions options = {});

/// Paper-style rendering: `∞·(Y + Ȳ·∞)`, `X·(1 + X̄)^∞`. Literals are named
/// via `names` when given, otherwise `X[E(x1,x2)]`.
std::string to_string(const InftyExpr& g, const AtomSpace* space = nullptr,
                      const std::map<std::uint32_t, std::string>& names = {});

}  // namespace zeroone

#endif  // ZEROONE_INFTYEXPR_HPP
