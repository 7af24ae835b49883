#ifndef ZEROONE_ASV_HPP
#define ZEROONE_ASV_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zeroone/atoms.hpp"
#include "zeroone/formula.hpp"
#include "zeroone/inftyexpr.hpp"
#include "zeroone/semiring.hpp"

namespace zeroone {

enum class DistKind {
  Uniform,  // finite carriers: every positive element equally likely
  Weights,  // finite carriers: explicit, full support
  Support,  // explicit finite support on any carrier
  Dyadic,   // p(1/2^n) = 1/2^(n+1) on [0,1] carriers
};

/// Unresolved distribution as written by the user, e.g. `weights:e=0.3,1=0.7`
/// or `support:1/2=0.25,1=0.75;bias=1/3`.
struct Distribution {
  DistKind kind = DistKind::Uniform;
  std::vector<std::pair<std::string, Rational>> entries;
  Rational bias{1, 2};
  std::string text;
};

Distribution parse_distribution(std::string_view text);

/// A distribution checked against a semiring, with its support explicit.
/// For Dyadic the support is infinite and `values` stays empty.
struct ResolvedDistribution {
  Semiring semiring;
  DistKind kind = DistKind::Uniform;
  std::vector<Value> values;
  std::vector<Rational> probs;
  Rational bias{1, 2};

  /// One literal pair: the atom is true with probability `bias`, and the
  /// true literal gets a value drawn from the distribution.
  LitPair sample(std::mt19937_64& rng) const;
  /// p[x = v], exact.
  Rational mass(const Value& v) const;
};

ResolvedDistribution resolve(const Distribution& d, const Semiring& s);

struct BoundednessClass {
  enum class Kind { Weakly, Strictly };
  Kind kind = Kind::Weakly;
  Value epsilon;
  bool p_one_positive = false;
  bool eps_ll_one = false;  // some γ with ε < γ < 1
};

/// Weak or strict ε-boundedness on small values; lattice kinds only.
BoundednessClass classify_distribution(const ResolvedDistribution& p);

struct AsvResult {
  enum class Kind { Value, UnboundedlyLarge, IntervalConcentration, Indeterminate };
  Kind kind = Kind::Value;
  Value value;  // the value, or ε for IntervalConcentration
  std::string note;
};

std::string to_string(const AsvResult& r, const Semiring& s);

/// Almost sure valuation of a sentence over a lattice semiring. `vocab`
/// defaults to the relations occurring in f.
AsvResult asv_lattice(const Formula& f, const ResolvedDistribution& p, const std::optional<Vocabulary>& vocab = {});
/// Almost sure valuation over the natural numbers; p must be resolved
/// against a Natural semiring.
AsvResult asv_natural(const Formula& f, const ResolvedDistribution& p, const std::optional<Vocabulary>& vocab = {});

/// g_f ≡ 0.
bool is_as_false(const Formula& f, const std::optional<std::vector<std::string>>& scope = {});
/// Membership in the inductively defined class of trivial formulae.
bool is_trivial(const Formula& f, const std::optional<std::vector<std::string>>& scope = {});

struct PhiClass {
  ExtNat j;  // inf for the unboundedly large class
  InftyExpr certificate;
  /// Set when j ∉ {0, ∞}: whether f is an and/or combination of trivial sentences.
  std::optional<bool> trivial_combination;
};

PhiClass classify_phi(const Formula& f, const std::optional<Vocabulary>& vocab = {});
/// And/or combination of trivial sentences, where disjuncts may also be
/// almost surely false.
bool is_trivial_combination(const Formula& f);

/// Almost sure valuation over an absorptive semiring, read off its lattice
/// companion where that is sound. `p` is resolved against the companion.
AsvResult absorptive_transfer(const Formula& f, const Semiring& s, const Distribution& p,
                              const std::optional<Vocabulary>& vocab = {});

}  // namespace zeroone

#endif  // ZEROONE_ASV_HPP
