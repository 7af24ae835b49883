#include "zeroone/atoms.hpp"

#include <algorithm>
#include <sstream>

#include "zeroone/error.hpp"

namespace zeroone {

AtomSpace::AtomSpace(Vocabulary vocab, int k) : vocab_(std::move(vocab)), k_(k) {
  if (k < 0 || k > 255) throw Error(ErrorKind::Usage, "atom space width out of range");
  prefix_.push_back(0);
  lookup_.resize(vocab_.size());
  for (std::size_t r = 0; r < vocab_.size(); ++r) {
    std::size_t cells = 1;
    for (int i = 0; i < vocab_.at(r).arity; ++i) cells *= static_cast<std::size_t>(k);
    if (cells > (1u << 24)) throw Error(ErrorKind::ResourceLimit, "too many atoms over " + std::to_string(k) + " variables");
    lookup_[r].assign(cells, 0);
  }
  for (int level = 0; level < k; ++level) {
    for (std::uint32_t r = 0; r < vocab_.size(); ++r) {
      int arity = vocab_.at(r).arity;
      std::vector<std::uint8_t> t(arity, 0);
      // Lexicographic walk over [0, level]^arity, keeping tuples that touch `level`.
      while (true) {
        if (std::find(t.begin(), t.end(), static_cast<std::uint8_t>(level)) != t.end()) {
          std::size_t code = 0;
          for (auto a : t) code = code * k + a;
          lookup_[r][code] = static_cast<std::uint32_t>(atoms_.size());
          atoms_.push_back({r, t});
        }
        int i = arity - 1;
        while (i >= 0 && t[i] == level) t[i--] = 0;
        if (i < 0) break;
        ++t[i];
      }
    }
    prefix_.push_back(atoms_.size());
  }
}

std::size_t AtomSpace::index_of(std::uint32_t relation, const std::vector<std::uint8_t>& args) const {
  std::size_t code = 0;
  for (auto a : args) {
    if (a >= k_) throw std::out_of_range("atom position beyond width");
    code = code * k_ + a;
  }
  return lookup_.at(relation).at(code);
}

std::string AtomSpace::atom_name(std::size_t atom) const {
  const auto& a = atoms_.at(atom);
  std::string out = vocab_.at(a.relation).name + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ',';
    out += "x" + std::to_string(a.args[i] + 1);
  }
  return out + ")";
}

std::string AtomSpace::literal_name(std::uint32_t literal) const {
  return (literal & 1 ? "!" : "") + atom_name(literal >> 1);
}

std::shared_ptr<const AtomSpace> make_atom_space(const Vocabulary& vocab, int k) {
  return std::make_shared<const AtomSpace>(vocab, k);
}

// ---------------------------------------------------------------------------

AtomicType::AtomicType(std::shared_ptr<const AtomSpace> space, Semiring semiring, std::vector<LitPair> values)
    : space_(std::move(space)), semiring_(std::move(semiring)), values_(std::move(values)) {
  if (values_.size() != space_->size())
    throw Error(ErrorKind::ShapeMismatch, "type has " + std::to_string(values_.size()) + " atoms, expected " +
                                              std::to_string(space_->size()));
  for (std::size_t i = 0; i < values_.size(); ++i) {
    bool pz = semiring_.is_zero(values_[i].pos), nz = semiring_.is_zero(values_[i].neg);
    if (pz == nz) throw Error(ErrorKind::NotModelDefining, "inconsistent type at " + space_->atom_name(i));
  }
}

AtomicType::AtomicType(const Vocabulary& vocab, Semiring semiring)
    : space_(make_atom_space(vocab, 0)), semiring_(std::move(semiring)) {}

AtomicType AtomicType::extend(const std::vector<LitPair>& fresh) const {
  auto bigger = make_atom_space(space_->vocab(), k() + 1);
  std::vector<LitPair> v = values_;
  v.insert(v.end(), fresh.begin(), fresh.end());
  return AtomicType(std::move(bigger), semiring_, std::move(v));
}

AtomicType AtomicType::restrict_last() const {
  if (k() == 0) throw std::logic_error("restrict_last on a 0-type");
  auto smaller = make_atom_space(space_->vocab(), k() - 1);
  std::vector<LitPair> v(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(smaller->size()));
  return AtomicType(std::move(smaller), semiring_, std::move(v));
}

std::string AtomicType::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    bool neg = semiring_.is_zero(values_[i].pos);
    out += (neg ? "!" : "") + space_->atom_name(i) + "=" + semiring_.format(neg ? values_[i].neg : values_[i].pos) + "\n";
  }
  return out;
}

bool type_bool_equiv(const AtomicType& a, const AtomicType& b) {
  if (a.k() != b.k() || !(a.semiring() == b.semiring()) || !(a.space().vocab() == b.space().vocab()))
    throw Error(ErrorKind::ShapeMismatch, "types of different shape");
  const auto& s = a.semiring();
  for (std::size_t i = 0; i < a.values().size(); ++i)
    if (s.is_zero(a.pair(i).pos) != s.is_zero(b.pair(i).pos)) return false;
  return true;
}

bool type_leq(const AtomicType& a, const AtomicType& b) {
  if (a.k() != b.k() || !(a.semiring() == b.semiring()) || !(a.space().vocab() == b.space().vocab()))
    throw Error(ErrorKind::ShapeMismatch, "types of different shape");
  const auto& s = a.semiring();
  for (std::size_t i = 0; i < a.values().size(); ++i)
    if (!s.natural_leq(a.pair(i).pos, b.pair(i).pos) || !s.natural_leq(a.pair(i).neg, b.pair(i).neg)) return false;
  return true;
}

std::vector<AtomicType> enumerate_extensions(const AtomicType& rho) {
  const auto& s = rho.semiring();
  if (!s.is_finite()) throw Error(ErrorKind::InfiniteCarrier, "cannot enumerate extensions over " + s.spec());
  auto pos = s.positive_elements();
  auto bigger = make_atom_space(rho.space().vocab(), rho.k() + 1);
  std::size_t q = bigger->size() - rho.space().size();
  std::vector<LitPair> choices;
  for (const auto& v : pos) choices.push_back({v, s.zero()});
  for (const auto& v : pos) choices.push_back({s.zero(), v});
  std::size_t total = 1;
  for (std::size_t i = 0; i < q; ++i) {
    total *= choices.size();
    if (total > (1u << 22)) throw Error(ErrorKind::ResourceLimit, "too many extension types to enumerate");
  }
  std::vector<AtomicType> out;
  out.reserve(total);
  std::vector<std::size_t> digit(q, 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<LitPair> v = rho.values();
    for (std::size_t i = 0; i < q; ++i) v.push_back(choices[digit[i]]);
    out.emplace_back(bigger, s, std::move(v));
    for (std::size_t i = q; i-- > 0;) {
      if (++digit[i] < choices.size()) break;
      digit[i] = 0;
    }
  }
  return out;
}

AtomicType parse_atomic_type(std::string_view text, const Vocabulary& vocab, const Semiring& semiring, int k) {
  auto space = make_atom_space(vocab, k);
  std::vector<std::optional<LitPair>> seen(space->size());
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
    if (line.empty()) continue;
    auto eq = line.find('=');
    auto open = line.find('(');
    auto close = line.find(')');
    if (eq == std::string::npos || open == std::string::npos || close == std::string::npos || close > eq)
      throw Error(ErrorKind::Parse, "bad type line '" + line + "'");
    bool neg = line[0] == '!';
    std::string rel = line.substr(neg ? 1 : 0, open - (neg ? 1 : 0));
    auto r = vocab.find(rel);
    if (!r) throw Error(ErrorKind::Vocab, "unknown relation " + rel);
    std::vector<std::uint8_t> args;
    std::stringstream parts(line.substr(open + 1, close - open - 1));
    std::string a;
    while (std::getline(parts, a, ',')) {
      if (a.size() < 2 || a[0] != 'x') throw Error(ErrorKind::Parse, "type variables are x1..xk, got '" + a + "'");
      int p = std::stoi(a.substr(1));
      if (p < 1 || p > k) throw Error(ErrorKind::Parse, "variable " + a + " beyond width " + std::to_string(k));
      args.push_back(static_cast<std::uint8_t>(p - 1));
    }
    if (static_cast<int>(args.size()) != vocab.at(*r).arity) throw Error(ErrorKind::Vocab, "arity mismatch for " + rel);
    Value v = semiring.parse_value(line.substr(eq + 1));
    if (semiring.is_zero(v)) throw Error(ErrorKind::NotModelDefining, "listed literal must be nonzero: " + line);
    std::size_t i = space->index_of(*r, args);
    if (seen[i]) throw Error(ErrorKind::NotModelDefining, "atom " + space->atom_name(i) + " listed twice");
    seen[i] = neg ? LitPair{semiring.zero(), v} : LitPair{v, semiring.zero()};
  }
  std::vector<LitPair> values;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw Error(ErrorKind::MissingAtom, "type does not value " + space->atom_name(i));
    values.push_back(*seen[i]);
  }
  return AtomicType(space, semiring, std::move(values));
}

}  // namespace zeroone
