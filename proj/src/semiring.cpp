#include "zeroone/semiring.hpp"

#include <algorithm>

#include "zeroone/error.hpp"

namespace zeroone {

bool ext_leq(const ExtNat& a, const ExtNat& b) {
  if (b.inf) return true;
  if (a.inf) return false;
  return a.v <= b.v;
}

std::string format_rational(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(std::string_view text) {
  std::string t(text);
  auto bad = [&]() { return Error(ErrorKind::Parse, "not a number: '" + t + "'"); };
  if (t.empty()) throw bad();
  auto digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  bool negative = false;
  std::string body = t;
  if (body[0] == '-') {
    negative = true;
    body.erase(0, 1);
  }
  Rational r;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string p = body.substr(0, slash), q = body.substr(slash + 1);
    if (!digits(p) || !digits(q)) throw bad();
    BigInt den(q);
    if (den == 0) throw bad();
    r = Rational(BigInt(p), den);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!digits(ip) || !digits(fp)) throw bad();
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fp.size()));
    r = Rational(BigInt(ip) * scale + BigInt(fp), scale);
  } else {
    if (!digits(body)) throw bad();
    r = Rational(BigInt(body));
  }
  return negative ? Rational(-r) : r;
}

std::string to_string(SemiringKind kind) {
  switch (kind) {
    case SemiringKind::Boolean: return "Boolean";
    case SemiringKind::E3: return "E3";
    case SemiringKind::FiniteMinMax: return "FiniteMinMax";
    case SemiringKind::FiniteLattice: return "FiniteLattice";
    case SemiringKind::Viterbi: return "Viterbi";
    case SemiringKind::Tropical: return "Tropical";
    case SemiringKind::TropicalInf: return "TropicalInf";
    case SemiringKind::Lukasiewicz: return "Lukasiewicz";
    case SemiringKind::Truncation: return "Truncation";
    case SemiringKind::Natural: return "Natural";
    case SemiringKind::NaturalInf: return "NaturalInf";
    case SemiringKind::RealMinMax: return "RealMinMax";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Construction

Semiring Semiring::boolean() {
  Semiring s(SemiringKind::Boolean, "bool");
  s.labels_ = {"0", "1"};
  return s;
}

Semiring Semiring::e3() {
  Semiring s(SemiringKind::E3, "E");
  s.labels_ = {"0", "e", "1"};
  return s;
}

Semiring Semiring::minmax(std::vector<std::string> labels) {
  if (labels.size() < 2) throw Error(ErrorKind::Usage, "minmax needs at least two labels");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) throw Error(ErrorKind::Usage, "empty minmax label");
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j]) throw Error(ErrorKind::Usage, "minmax label " + labels[i] + " repeated");
  }
  std::string spec = "minmax:";
  for (std::size_t i = 0; i < labels.size(); ++i) spec += (i ? "," : "") + labels[i];
  Semiring s(SemiringKind::FiniteMinMax, spec);
  s.labels_ = std::move(labels);
  return s;
}

Semiring Semiring::lattice(std::shared_ptr<const FiniteLattice> lattice, std::string source) {
  std::string spec = "lattice:" + source;
  if (source.empty()) {
    // Inline lattices are identified by their order relation.
    spec = "lattice{";
    for (std::uint32_t a = 0; a < lattice->size(); ++a)
      for (std::uint32_t b = 0; b < lattice->size(); ++b)
        if (lattice->leq(a, b)) spec += lattice->names()[a] + "<=" + lattice->names()[b] + ";";
    spec += "}";
  }
  Semiring s(SemiringKind::FiniteLattice, spec);
  s.labels_ = lattice->names();
  s.lattice_ = std::move(lattice);
  return s;
}

Semiring Semiring::viterbi() { return Semiring(SemiringKind::Viterbi, "viterbi"); }
Semiring Semiring::tropical() { return Semiring(SemiringKind::Tropical, "tropical"); }
Semiring Semiring::tropical_inf() { return Semiring(SemiringKind::TropicalInf, "tropicalinf"); }
Semiring Semiring::lukasiewicz() { return Semiring(SemiringKind::Lukasiewicz, "lukasiewicz"); }

Semiring Semiring::truncation(unsigned n) {
  if (n < 1) throw Error(ErrorKind::Usage, "trunc:n needs n >= 1");
  Semiring s(SemiringKind::Truncation, "trunc:" + std::to_string(n));
  s.trunc_n_ = n;
  for (unsigned i = 0; i <= n; ++i) s.labels_.push_back(std::to_string(i));
  return s;
}

Semiring Semiring::natural(std::optional<BigInt> cap) {
  Semiring s(SemiringKind::Natural, cap ? "nat:cap=" + cap->str() : "nat");
  s.cap_ = std::move(cap);
  return s;
}

Semiring Semiring::natural_inf() { return Semiring(SemiringKind::NaturalInf, "natinf"); }
Semiring Semiring::real_minmax() { return Semiring(SemiringKind::RealMinMax, "realminmax"); }

Semiring Semiring::parse(std::string_view spec_text) {
  std::string spec(spec_text);
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto no_arg = [&]() {
    if (colon != std::string::npos) throw Error(ErrorKind::Usage, "semiring " + head + " takes no parameter");
  };
  if (head == "bool" || head == "boolean") return no_arg(), boolean();
  if (head == "E" || head == "e3") return no_arg(), e3();
  if (head == "viterbi") return no_arg(), viterbi();
  if (head == "tropical") return no_arg(), tropical();
  if (head == "tropicalinf") return no_arg(), tropical_inf();
  if (head == "lukasiewicz") return no_arg(), lukasiewicz();
  if (head == "natinf") return no_arg(), natural_inf();
  if (head == "realminmax") return no_arg(), real_minmax();
  if (head == "nat") {
    if (colon == std::string::npos) return natural();
    if (arg.rfind("cap=", 0) != 0) throw Error(ErrorKind::Usage, "expected nat or nat:cap=<n>");
    try {
      return natural(BigInt(arg.substr(4)));
    } catch (const std::runtime_error&) {
      throw Error(ErrorKind::Usage, "bad saturation cap '" + arg + "'");
    }
  }
  if (head == "minmax") {
    std::vector<std::string> labels;
    std::size_t start = 0;
    while (true) {
      auto comma = arg.find(',', start);
      labels.push_back(arg.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return minmax(std::move(labels));
  }
  if (head == "trunc") {
    unsigned long n = 0;
    try {
      std::size_t used = 0;
      n = std::stoul(arg, &used);
      if (used != arg.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "bad truncation bound '" + arg + "'");
    }
    return truncation(static_cast<unsigned>(n));
  }
  if (head == "lattice") {
    if (arg.empty()) throw Error(ErrorKind::Usage, "lattice:<path> needs a path");
    return lattice(std::make_shared<const FiniteLattice>(FiniteLattice::load(arg)), arg);
  }
  throw Error(ErrorKind::Usage, "unknown semiring '" + spec + "'");
}

// ---------------------------------------------------------------------------
// Arithmetic

namespace {

std::uint32_t idx(const Value& v) { return std::get<std::uint32_t>(v); }
const Rational& rat(const Value& v) { return std::get<Rational>(v); }
const ExtRational& xrat(const Value& v) { return std::get<ExtRational>(v); }
const ExtNat& xnat(const Value& v) { return std::get<ExtNat>(v); }

bool xrat_less(const ExtRational& a, const ExtRational& b) {
  if (a.inf) return false;
  if (b.inf) return true;
  return a.v < b.v;
}

}  // namespace

ExtNat Semiring::saturate(ExtNat v) const {
  if (!v.inf && cap_ && v.v > *cap_) return ExtNat::infinity();
  return v;
}

Value Semiring::zero() const {
  switch (kind_) {
    case SemiringKind::FiniteLattice: return lattice_->bottom();
    case SemiringKind::Viterbi:
    case SemiringKind::Lukasiewicz:
    case SemiringKind::RealMinMax: return Rational(0);
    case SemiringKind::Tropical:
    case SemiringKind::TropicalInf: return ExtRational::infinity();
    case SemiringKind::Natural:
    case SemiringKind::NaturalInf: return ExtNat{0, false};
    default: return std::uint32_t{0};
  }
}

Value Semiring::one() const {
  switch (kind_) {
    case SemiringKind::FiniteLattice: return lattice_->top();
    case SemiringKind::Viterbi:
    case SemiringKind::Lukasiewicz:
    case SemiringKind::RealMinMax: return Rational(1);
    case SemiringKind::Tropical:
    case SemiringKind::TropicalInf: return ExtRational{0, false};
    case SemiringKind::Natural:
    case SemiringKind::NaturalInf: return ExtNat{1, false};
    default: return static_cast<std::uint32_t>(labels_.size() - 1);
  }
}

Value Semiring::add(const Value& a, const Value& b) const {
  switch (kind_) {
    case SemiringKind::FiniteLattice: return lattice_->join(idx(a), idx(b));
    case SemiringKind::Viterbi:
    case SemiringKind::Lukasiewicz:
    case SemiringKind::RealMinMax: return std::max(rat(a), rat(b));
    case SemiringKind::Tropical:
    case SemiringKind::TropicalInf: return xrat_less(xrat(b), xrat(a)) ? b : a;
    case SemiringKind::Natural:
    case SemiringKind::NaturalInf: {
      const auto &x = xnat(a), &y = xnat(b);
      if (x.inf || y.inf) return ExtNat::infinity();
      return saturate({x.v + y.v, false});
    }
    default: return std::max(idx(a), idx(b));
  }
}

Value Semiring::mul(const Value& a, const Value& b) const {
  switch (kind_) {
    case SemiringKind::FiniteLattice: return lattice_->meet(idx(a), idx(b));
    case SemiringKind::Viterbi: return Rational(rat(a) * rat(b));
    case SemiringKind::Lukasiewicz: {
      Rational s = rat(a) + rat(b) - 1;
      return s > 0 ? s : Rational(0);
    }
    case SemiringKind::RealMinMax: return std::min(rat(a), rat(b));
    case SemiringKind::Tropical: {
      const auto &x = xrat(a), &y = xrat(b);
      if (x.inf || y.inf) return ExtRational::infinity();
      return ExtRational{x.v + y.v, false};
    }
    case SemiringKind::TropicalInf: return xrat_less(xrat(a), xrat(b)) ? b : a;
    case SemiringKind::Natural:
    case SemiringKind::NaturalInf: {
      const auto &x = xnat(a), &y = xnat(b);
      if ((!x.inf && x.v == 0) || (!y.inf && y.v == 0)) return ExtNat{0, false};
      if (x.inf || y.inf) return ExtNat::infinity();
      return saturate({x.v * y.v, false});
    }
    case SemiringKind::Truncation: {
      int s = static_cast<int>(idx(a)) + static_cast<int>(idx(b)) - static_cast<int>(trunc_n_);
      return static_cast<std::uint32_t>(std::max(0, s));
    }
    default: return std::min(idx(a), idx(b));
  }
}

// ---------------------------------------------------------------------------
// Capabilities

bool Semiring::is_finite() const {
  switch (kind_) {
    case SemiringKind::Boolean:
    case SemiringKind::E3:
    case SemiringKind::FiniteMinMax:
    case SemiringKind::FiniteLattice:
    case SemiringKind::Truncation: return true;
    default: return false;
  }
}

std::size_t Semiring::carrier_size() const {
  if (!is_finite()) throw Error(ErrorKind::InfiniteCarrier, spec_ + " has an infinite carrier");
  return labels_.size();
}

std::vector<Value> Semiring::elements() const {
  std::size_t n = carrier_size();
  std::vector<Value> out;
  // Zero first; for lattices the bottom need not be index 0.
  out.push_back(zero());
  for (std::uint32_t i = 0; i < n; ++i)
    if (!(Value(i) == zero())) out.push_back(i);
  return out;
}

std::vector<Value> Semiring::positive_elements() const {
  auto all = elements();
  all.erase(all.begin());
  return all;
}

bool Semiring::is_lattice_kind() const {
  switch (kind_) {
    case SemiringKind::Boolean:
    case SemiringKind::E3:
    case SemiringKind::FiniteMinMax:
    case SemiringKind::FiniteLattice:
    case SemiringKind::RealMinMax:
    case SemiringKind::TropicalInf: return true;
    default: return false;
  }
}

bool Semiring::is_minmax_kind() const {
  switch (kind_) {
    case SemiringKind::Boolean:
    case SemiringKind::E3:
    case SemiringKind::FiniteMinMax:
    case SemiringKind::RealMinMax:
    case SemiringKind::TropicalInf: return true;
    default: return false;
  }
}

bool Semiring::is_chain() const {
  if (kind_ == SemiringKind::FiniteLattice) return lattice_->is_chain();
  // Every other carrier is totally ordered.
  return true;
}

bool Semiring::is_absorptive() const { return kind_ != SemiringKind::Natural && kind_ != SemiringKind::NaturalInf; }
bool Semiring::is_idempotent_add() const { return is_absorptive(); }

bool Semiring::natural_leq(const Value& a, const Value& b) const {
  switch (kind_) {
    case SemiringKind::Natural:
    case SemiringKind::NaturalInf: return ext_leq(xnat(a), xnat(b));
    default: return add(a, b) == b;
  }
}

Value Semiring::join(const Value& a, const Value& b) const {
  switch (kind_) {
    case SemiringKind::Natural:
    case SemiringKind::NaturalInf: return ext_leq(xnat(a), xnat(b)) ? b : a;
    default: return add(a, b);
  }
}

Value Semiring::meet(const Value& a, const Value& b) const {
  switch (kind_) {
    case SemiringKind::FiniteLattice: return lattice_->meet(idx(a), idx(b));
    case SemiringKind::Viterbi:
    case SemiringKind::Lukasiewicz:
    case SemiringKind::RealMinMax: return std::min(rat(a), rat(b));
    case SemiringKind::Tropical:
    case SemiringKind::TropicalInf: return xrat_less(xrat(a), xrat(b)) ? b : a;
    case SemiringKind::Natural:
    case SemiringKind::NaturalInf: return ext_leq(xnat(a), xnat(b)) ? a : b;
    default: return std::min(idx(a), idx(b));
  }
}

Value Semiring::epsilon() const {
  switch (kind_) {
    case SemiringKind::Boolean:
    case SemiringKind::E3:
    case SemiringKind::FiniteMinMax: return std::uint32_t{1};
    case SemiringKind::FiniteLattice: {
      auto pos = positive_elements();
      Value m = pos.front();
      for (const auto& v : pos) m = meet(m, v);
      return m;
    }
    // Infimum of (0,1] in the continuous carrier, not attained.
    case SemiringKind::RealMinMax: return Rational(0);
    // Positive elements are the finite reals; their natural-order infimum is the zero.
    case SemiringKind::TropicalInf: return zero();
    default: throw Error(ErrorKind::UnsupportedKind, "epsilon is defined for lattice semirings, not " + spec_);
  }
}

bool Semiring::is_01_irreducible() const {
  if (is_minmax_kind()) return true;
  if (kind_ != SemiringKind::FiniteLattice)
    throw Error(ErrorKind::UnsupportedKind, "0-1-irreducibility is decided for lattice semirings, not " + spec_);
  auto pos = positive_elements();
  for (const auto& a : pos)
    for (const auto& b : pos) {
      if (is_zero(meet(a, b))) return false;
      if (!is_one(a) && !is_one(b) && is_one(join(a, b))) return false;
    }
  return true;
}

Semiring Semiring::companion_inf() const {
  switch (kind_) {
    case SemiringKind::Viterbi:
    case SemiringKind::Lukasiewicz: return real_minmax();
    case SemiringKind::Tropical: return tropical_inf();
    case SemiringKind::Truncation: return minmax(labels_);
    case SemiringKind::Natural:
    case SemiringKind::NaturalInf: throw Error(ErrorKind::NotAbsorptive, spec_ + " is not absorptive");
    default: return *this;
  }
}

bool Semiring::is_idempotent_elem(const Value& a) const { return mul(a, a) == a; }

bool Semiring::contains(const Value& a) const {
  switch (kind_) {
    case SemiringKind::Viterbi:
    case SemiringKind::Lukasiewicz:
    case SemiringKind::RealMinMax:
      return std::holds_alternative<Rational>(a) && rat(a) >= 0 && rat(a) <= 1;
    case SemiringKind::Tropical:
    case SemiringKind::TropicalInf:
      return std::holds_alternative<ExtRational>(a) && (xrat(a).inf ? xrat(a).v == 0 : xrat(a).v >= 0);
    case SemiringKind::Natural:
    case SemiringKind::NaturalInf:
      if (!std::holds_alternative<ExtNat>(a)) return false;
      if (xnat(a).inf) return xnat(a).v == 0 && (kind_ == SemiringKind::NaturalInf || cap_.has_value());
      return xnat(a).v >= 0 && (!cap_ || xnat(a).v <= *cap_);
    default:
      return std::holds_alternative<std::uint32_t>(a) && idx(a) < labels_.size();
  }
}

Value Semiring::parse_value(std::string_view text) const {
  std::string t(text);
  auto out_of = [&]() { return Error(ErrorKind::OutOfCarrier, "'" + t + "' is not an element of " + spec_); };
  auto number = [&]() {
    try {
      return parse_rational(t);
    } catch (const Error&) {
      throw out_of();
    }
  };
  Value v;
  switch (kind_) {
    case SemiringKind::Viterbi:
    case SemiringKind::Lukasiewicz:
    case SemiringKind::RealMinMax:
      v = number();
      break;
    case SemiringKind::Tropical:
    case SemiringKind::TropicalInf:
      if (t == "inf" || t == "∞") {
        v = ExtRational::infinity();
      } else {
        v = ExtRational{number(), false};
      }
      break;
    case SemiringKind::Natural:
    case SemiringKind::NaturalInf:
      if (t == "inf" || t == "∞") {
        if (kind_ != SemiringKind::NaturalInf) throw out_of();
        v = ExtNat::infinity();
      } else {
        Rational r = number();
        if (boost::multiprecision::denominator(r) != 1) throw out_of();
        v = ExtNat{boost::multiprecision::numerator(r), false};
      }
      break;
    default: {
      auto it = std::find(labels_.begin(), labels_.end(), t);
      if (it == labels_.end()) {
        if (kind_ == SemiringKind::Boolean && (t == "true" || t == "false")) return std::uint32_t(t == "true");
        throw out_of();
      }
      return static_cast<std::uint32_t>(it - labels_.begin());
    }
  }
  if (!contains(v)) throw out_of();
  return v;
}

std::string Semiring::format(const Value& a) const {
  if (auto p = std::get_if<std::uint32_t>(&a)) return *p < labels_.size() ? labels_[*p] : "?" + std::to_string(*p);
  if (auto p = std::get_if<Rational>(&a)) return format_rational(*p);
  if (auto p = std::get_if<ExtRational>(&a)) return p->inf ? "inf" : format_rational(p->v);
  const auto& n = std::get<ExtNat>(a);
  return n.inf ? "inf" : n.v.str();
}

}  // namespace zeroone
