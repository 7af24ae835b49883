#ifndef ZEROONE_SEMIRING_HPP
#define ZEROONE_SEMIRING_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace zeroone {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Natural number or infinity. `v` is zero whenever `inf` is set.
struct ExtNat {
  BigInt v;
  bool inf = false;

  static ExtNat infinity() { return {0, true}; }
  friend bool operator==(const ExtNat&, const ExtNat&) = default;
};

/// Non-negative rational or +infinity, for tropical carriers.
struct ExtRational {
  Rational v;
  bool inf = false;

  static ExtRational infinity() { return {0, true}; }
  friend bool operator==(const ExtRational&, const ExtRational&) = default;
};

/// Element of some semiring. Finite carriers use an index into the element
/// list (for chains, the rank from 0 upwards).
using Value = std::variant<std::uint32_t, Rational, ExtRational, ExtNat>;

bool ext_leq(const ExtNat& a, const ExtNat& b);

enum class SemiringKind {
  Boolean,
  E3,
  FiniteMinMax,
  FiniteLattice,
  Viterbi,
  Tropical,
  TropicalInf,  // (min, max) companion of Tropical
  Lukasiewicz,
  Truncation,
  Natural,
  NaturalInf,
  RealMinMax,
};

/// Finite bounded distributive lattice given by its order relation.
class FiniteLattice {
 public:
  /// `le` lists generating pairs x <= y; reflexive-transitive closure is taken.
  FiniteLattice(std::vector<std::string> names, const std::vector<std::pair<std::string, std::string>>& le);

  static FiniteLattice parse(std::string_view text);
  static FiniteLattice load(const std::string& path);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::uint32_t> find(std::string_view name) const;
  bool leq(std::uint32_t a, std::uint32_t b) const { return leq_[a * size() + b]; }
  std::uint32_t join(std::uint32_t a, std::uint32_t b) const { return join_[a * size() + b]; }
  std::uint32_t meet(std::uint32_t a, std::uint32_t b) const { return meet_[a * size() + b]; }
  std::uint32_t bottom() const { return bottom_; }
  std::uint32_t top() const { return top_; }
  bool is_chain() const;

 private:
  std::vector<std::string> names_;
  std::vector<char> leq_;
  std::vector<std::uint32_t> join_;
  std::vector<std::uint32_t> meet_;
  std::uint32_t bottom_ = 0;
  std::uint32_t top_ = 0;
};

class Semiring {
 public:
  static Semiring boolean();
  static Semiring e3();
  /// Chain labels[0] < labels[1] < ...; the first is 0, the last is 1.
  static Semiring minmax(std::vector<std::string> labels);
  static Semiring lattice(std::shared_ptr<const FiniteLattice> lattice, std::string source = "");
  static Semiring viterbi();
  static Semiring tropical();
  static Semiring tropical_inf();
  static Semiring lukasiewicz();
  static Semiring truncation(unsigned n);
  /// Values above `cap` saturate to infinity.
  static Semiring natural(std::optional<BigInt> cap = std::nullopt);
  static Semiring natural_inf();
  static Semiring real_minmax();

  /// Spec strings: bool, E, minmax:a,b,.., lattice:<path>, viterbi, tropical,
  /// tropicalinf, lukasiewicz, trunc:<n>, nat, natinf, realminmax.
  static Semiring parse(std::string_view spec);

  SemiringKind kind() const { return kind_; }
  const std::string& spec() const { return spec_; }

  Value zero() const;
  Value one() const;
  Value add(const Value& a, const Value& b) const;
  Value mul(const Value& a, const Value& b) const;
  bool is_zero(const Value& a) const { return a == zero(); }
  bool is_one(const Value& a) const { return a == one(); }

  bool is_finite() const;
  /// All elements of a finite carrier, zero first, in index order.
  std::vector<Value> elements() const;
  std::vector<Value> positive_elements() const;
  std::size_t carrier_size() const;

  bool is_lattice_kind() const;
  bool is_minmax_kind() const;  // totally ordered lattice kinds
  bool is_absorptive() const;
  bool is_idempotent_add() const;
  bool is_chain() const;

  /// a + b = b; numeric order for Natural and NaturalInf.
  bool natural_leq(const Value& a, const Value& b) const;
  bool natural_lt(const Value& a, const Value& b) const { return natural_leq(a, b) && !(a == b); }
  /// Supremum and infimum of the natural order.
  Value join(const Value& a, const Value& b) const;
  Value meet(const Value& a, const Value& b) const;

  /// Infimum of the nonzero elements.
  Value epsilon() const;
  bool is_01_irreducible() const;
  Semiring companion_inf() const;
  bool is_idempotent_elem(const Value& a) const;

  bool contains(const Value& a) const;
  Value parse_value(std::string_view text) const;
  std::string format(const Value& a) const;

  const std::optional<BigInt>& cap() const { return cap_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const FiniteLattice* finite_lattice() const { return lattice_.get(); }

  friend bool operator==(const Semiring& a, const Semiring& b) { return a.spec_ == b.spec_; }

 private:
  Semiring(SemiringKind kind, std::string spec) : kind_(kind), spec_(std::move(spec)) {}
  ExtNat saturate(ExtNat v) const;

  SemiringKind kind_;
  std::string spec_;
  std::vector<std::string> labels_;  // finite chains
  std::shared_ptr<const FiniteLattice> lattice_;
  unsigned trunc_n_ = 0;
  std::optional<BigInt> cap_;
};

std::string format_rational(const Rational& r);
/// Accepts integers, `p/q` and finite decimals such as `0.25`.
Rational parse_rational(std::string_view text);

std::string to_string(SemiringKind kind);

}  // namespace zeroone

#endif  // ZEROONE_SEMIRING_HPP
