#ifndef ZEROONE_ATOMS_HPP
#define ZEROONE_ATOMS_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "zeroone/formula.hpp"
#include "zeroone/semiring.hpp"

namespace zeroone {

/// A relational atom over variable positions 0..k-1 (printed x1..xk).
struct AtomRef {
  std::uint32_t relation = 0;
  std::vector<std::uint8_t> args;

  friend bool operator==(const AtomRef&, const AtomRef&) = default;
};

/// Canonical enumeration of the atoms over k variables. Atoms are grouped by
/// their largest position, then by relation, then lexicographically, so the
/// enumeration for k is a prefix of the one for k+1 and literal ids
/// (2*atom + negated) do not depend on k.
class AtomSpace {
 public:
  AtomSpace(Vocabulary vocab, int k);

  const Vocabulary& vocab() const { return vocab_; }
  int k() const { return k_; }
  std::size_t size() const { return atoms_.size(); }
  std::size_t literal_count() const { return 2 * atoms_.size(); }
  const AtomRef& atom(std::size_t i) const { return atoms_[i]; }
  /// Number of atoms using only positions < i.
  std::size_t prefix(int i) const { return prefix_.at(i); }
  std::size_t index_of(std::uint32_t relation, const std::vector<std::uint8_t>& args) const;

  std::string atom_name(std::size_t atom) const;
  /// `E(x1,x2)` or `!E(x1,x2)` for literal id 2*atom + negated.
  std::string literal_name(std::uint32_t literal) const;

 private:
  Vocabulary vocab_;
  int k_;
  std::vector<AtomRef> atoms_;
  std::vector<std::size_t> prefix_;
  std::vector<std::vector<std::uint32_t>> lookup_;  // per relation, radix-k tuple code
};

std::shared_ptr<const AtomSpace> make_atom_space(const Vocabulary& vocab, int k);

struct LitPair {
  Value pos;
  Value neg;

  friend bool operator==(const LitPair&, const LitPair&) = default;
};

/// Valuation of all literals over x1..xk. Consistent: one of each pair is 0.
class AtomicType {
 public:
  AtomicType(std::shared_ptr<const AtomSpace> space, Semiring semiring, std::vector<LitPair> values);
  /// The empty 0-type.
  AtomicType(const Vocabulary& vocab, Semiring semiring);

  int k() const { return space_->k(); }
  const AtomSpace& space() const { return *space_; }
  const std::shared_ptr<const AtomSpace>& space_ptr() const { return space_; }
  const Semiring& semiring() const { return semiring_; }
  const std::vector<LitPair>& values() const { return values_; }
  const Value& literal(std::uint32_t id) const { return id & 1 ? values_[id >> 1].neg : values_[id >> 1].pos; }
  const LitPair& pair(std::size_t atom) const { return values_[atom]; }

  /// Appends a position whose new atoms take `fresh` (in canonical order).
  AtomicType extend(const std::vector<LitPair>& fresh) const;
  /// Drops the last position.
  AtomicType restrict_last() const;

  std::string to_string() const;

  friend bool operator==(const AtomicType& a, const AtomicType& b) {
    return a.k() == b.k() && a.semiring_ == b.semiring_ && a.values_ == b.values_;
  }

 private:
  std::shared_ptr<const AtomSpace> space_;
  Semiring semiring_;
  std::vector<LitPair> values_;
};

/// Same literals mapped to 0.
bool type_bool_equiv(const AtomicType& a, const AtomicType& b);
/// Pointwise natural order; implies type_bool_equiv.
bool type_leq(const AtomicType& a, const AtomicType& b);
/// All consistent one-position extensions, in canonical order.
std::vector<AtomicType> enumerate_extensions(const AtomicType& rho);

/// Parses `E(x1,x2)=v` / `!E(x1,x2)=v` lines (nonzero literal of each atom).
AtomicType parse_atomic_type(std::string_view text, const Vocabulary& vocab, const Semiring& semiring, int k);

}  // namespace zeroone

#endif  // ZEROONE_ATOMS_HPP
