#ifndef ZEROONE_POLY_HPP
#define ZEROONE_POLY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zeroone/atoms.hpp"
#include "zeroone/formula.hpp"
#include "zeroone/semiring.hpp"

namespace zeroone {

/// Coefficients of E-polynomials. Zero coefficients are never stored; the
/// numeric order makes E-addition max and E-multiplication min.
enum class Coef : std::uint8_t { E = 1, One = 2 };

/// Polynomial over E with indeterminates X_β for literals β over x1..xk.
/// A monomial is a sorted multiset of literal ids (2*atom + negated).
class EPoly {
 public:
  using Monomial = std::vector<std::uint32_t>;

  EPoly() = default;
  static EPoly constant(std::optional<Coef> c);
  static EPoly indeterminate(std::uint32_t literal);

  const std::map<Monomial, Coef>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }

  void add_term(Monomial m, Coef c);
  EPoly operator+(const EPoly& other) const;
  EPoly operator*(const EPoly& other) const;

  friend bool operator==(const EPoly&, const EPoly&) = default;

 private:
  std::map<Monomial, Coef> terms_;
};

struct PolyOptions {
  std::uint64_t selector_limit = std::uint64_t{1} << 20;
  std::uint64_t monomial_limit = std::uint64_t{1} << 20;
};

/// f_ψ with x1..xi bound to `scope` (default: the free variables). Standard
/// quantifiers are rewritten into excluding ones first.
EPoly build_epoly(const Formula& f, const Vocabulary& vocab, const std::optional<std::vector<std::string>>& scope = {},
                  PolyOptions options = {});

Value eval_epoly(const EPoly& f, const AtomicType& rho, const Value& eps);
/// e evaluated as δ.
Value eval_epoly_delta(const EPoly& f, const AtomicType& rho, const Value& delta);

enum class SentenceClass { Zero, One, Eps };
SentenceClass sentence_class(const EPoly& f);
std::string to_string(SentenceClass c);

/// Canonical form: monomials sorted by their indeterminate names, e.g.
/// `e*X[!E(x1,x2)] + X[E(x1,x1)]`. `names` may rename literals.
std::string to_string(const EPoly& f, const AtomSpace& space, const std::map<std::uint32_t, std::string>& names = {});

}  // namespace zeroone

#endif  // ZEROONE_POLY_HPP
