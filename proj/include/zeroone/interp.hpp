#ifndef ZEROONE_INTERP_HPP
#define ZEROONE_INTERP_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zeroone/atoms.hpp"
#include "zeroone/formula.hpp"
#include "zeroone/semiring.hpp"

namespace zeroone {

/// Model-defining K-interpretation on the universe {0, ..., n-1}.
class Interpretation {
 public:
  /// All atoms false with value one on the negative literal.
  Interpretation(Vocabulary vocab, Semiring semiring, int n);

  const Vocabulary& vocab() const { return vocab_; }
  const Semiring& semiring() const { return semiring_; }
  int size() const { return n_; }

  /// Sets the pair of an atom; exactly one side must be zero.
  void set(std::uint32_t relation, const std::vector<int>& tuple, LitPair values);
  /// Same as set, addressing the atom by its lexicographic tuple code.
  void set_code(std::uint32_t relation, std::size_t code, LitPair values);
  const LitPair& get(std::uint32_t relation, const std::vector<int>& tuple) const;
  const LitPair& get_code(std::uint32_t relation, std::size_t code) const { return values_[relation][code]; }
  std::size_t code(std::uint32_t relation, const std::vector<int>& tuple) const;
  std::size_t cells(std::uint32_t relation) const { return values_[relation].size(); }

  /// Header `universe n`, `semiring s`, `relation R/a` lines, then one
  /// `R(i,..)=v` or `!R(i,..)=v` line per atom with v nonzero.
  static Interpretation parse(std::string_view text, const Semiring* semiring = nullptr);
  static Interpretation load(const std::string& path, const Semiring* semiring = nullptr);
  std::string to_text() const;

 private:
  Vocabulary vocab_;
  Semiring semiring_;
  int n_;
  std::vector<std::vector<LitPair>> values_;
};

/// π⟦f⟧ under `assignment`. Excluding quantifiers avoid the values of the
/// `scope` variables and of every enclosing bound variable; `scope`
/// defaults to the free variables of f.
Value evaluate(const Interpretation& pi, const Formula& f, const std::map<std::string, int>& assignment = {});
Value evaluate(const Interpretation& pi, const Formula& f, const std::vector<std::string>& scope,
               const std::vector<int>& tuple);

AtomicType atomic_type_of(const Interpretation& pi, const std::vector<int>& tuple);

struct ExtensionReport {
  bool holds = true;
  std::vector<int> tuple;                  // the failing ā
  std::optional<AtomicType> extension;     // an unrealised ρ⁺
  std::string detail;
};

/// Exhaustive k-extension check; finite carriers only.
ExtensionReport check_k_extension(const Interpretation& pi, int k);
/// (k,δ)-extension check for lattice semirings.
ExtensionReport check_k_delta_extension(const Interpretation& pi, int k, const Value& delta);
/// Strong (k,γ)-extension check for the natural semiring.
ExtensionReport check_strong_extension(const Interpretation& pi, int k, const Rational& gamma);

/// Budget for exhaustive checks, from ZEROONE_WORK_LIMIT when set.
std::uint64_t default_work_limit();

}  // namespace zeroone

#endif  // ZEROONE_INTERP_HPP
