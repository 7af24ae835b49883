#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>

#include "zeroone/error.hpp"
#include "zeroone/interp.hpp"

namespace zeroone {

std::uint64_t default_work_limit() {
  if (const char* env = std::getenv("ZEROONE_WORK_LIMIT")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "ZEROONE_WORK_LIMIT must be a positive integer");
    }
  }
  return 2'000'000'000ULL;
}

namespace {

// Calls `visit(tuple, new_pairs_for_each_b)` for every m-tuple of distinct
// elements, m < k. The callback gets, per candidate b, the pairs of the atoms
// that involve the new position.
using Visitor = std::function<bool(const std::vector<int>&, int m,
                                   const std::vector<std::pair<int, std::vector<LitPair>>>&)>;

void for_each_extension_site(const Interpretation& pi, int k, const Visitor& visit) {
  const int n = pi.size();
  std::uint64_t budget = default_work_limit(), spent = 0;
  for (int m = 0; m < k && m < n; ++m) {
    auto space = make_atom_space(pi.vocab(), m + 1);
    std::size_t lo = space->prefix(m), hi = space->prefix(m + 1);
    std::vector<int> tuple(m, 0);
    std::vector<int> t;
    // Odometer over [n]^m, skipping tuples with repeats.
    while (true) {
      bool distinct = true;
      for (int i = 0; i < m && distinct; ++i)
        for (int j = i + 1; j < m; ++j)
          if (tuple[i] == tuple[j]) distinct = false;
      if (distinct) {
        std::vector<std::pair<int, std::vector<LitPair>>> rows;
        rows.reserve(n);
        for (int b = 0; b < n; ++b) {
          if (std::find(tuple.begin(), tuple.end(), b) != tuple.end()) continue;
          spent += hi - lo + 1;
          if (spent > budget) throw Error(ErrorKind::ResourceLimit, "extension check exceeded the work limit");
          std::vector<LitPair> pairs;
          pairs.reserve(hi - lo);
          for (std::size_t i = lo; i < hi; ++i) {
            const auto& a = space->atom(i);
            t.assign(a.args.size(), 0);
            for (std::size_t j = 0; j < a.args.size(); ++j) t[j] = a.args[j] == m ? b : tuple[a.args[j]];
            pairs.push_back(pi.get(a.relation, t));
          }
          rows.emplace_back(b, std::move(pairs));
        }
        if (!visit(tuple, m, rows)) return;
      }
      int i = m - 1;
      while (i >= 0 && tuple[i] == n - 1) tuple[i--] = 0;
      if (i < 0) break;
      ++tuple[i];
    }
  }
}

AtomicType make_extension(const Interpretation& pi, const std::vector<int>& tuple, const std::vector<LitPair>& fresh) {
  return atomic_type_of(pi, tuple).extend(fresh);
}

std::string tuple_text(const std::vector<int>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

}  // namespace

ExtensionReport check_k_extension(const Interpretation& pi, int k) {
  const auto& s = pi.semiring();
  if (!s.is_finite()) throw Error(ErrorKind::InfiniteCarrier, "k-extension needs a finite carrier, not " + s.spec());
  auto pos = s.positive_elements();
  const std::size_t radix = 2 * pos.size();
  auto digit_of = [&](const LitPair& p) -> std::uint8_t {
    bool neg = s.is_zero(p.pos);
    const Value& v = neg ? p.neg : p.pos;
    auto it = std::find(pos.begin(), pos.end(), v);
    return static_cast<std::uint8_t>((neg ? pos.size() : 0) + static_cast<std::size_t>(it - pos.begin()));
  };
  auto pair_of = [&](std::uint8_t d) {
    return d < pos.size() ? LitPair{pos[d], s.zero()} : LitPair{s.zero(), pos[d - pos.size()]};
  };
  ExtensionReport report;
  for_each_extension_site(pi, k, [&](const std::vector<int>& tuple, int, const auto& rows) {
    std::size_t q = rows.empty() ? 0 : rows.front().second.size();
    if (rows.empty()) {
      // No fresh element at all, so no extension is realised.
      auto space = make_atom_space(pi.vocab(), static_cast<int>(tuple.size()) + 1);
      q = space->size() - space->prefix(static_cast<int>(tuple.size()));
    }
    std::set<std::vector<std::uint8_t>> seen;
    for (const auto& [b, pairs] : rows) {
      std::vector<std::uint8_t> code;
      code.reserve(q);
      for (const auto& p : pairs) code.push_back(digit_of(p));
      seen.insert(std::move(code));
    }
    // Total number of extension types is radix^q; compare without overflow.
    bool complete = true;
    {
      std::size_t total = 1;
      for (std::size_t i = 0; i < q && complete; ++i) {
        if (total > seen.size()) complete = false;
        total *= radix;
      }
      if (total != seen.size()) complete = false;
    }
    if (complete) return true;
    std::vector<std::uint8_t> want(q, 0);
    for (const auto& got : seen) {
      if (got != want) break;
      for (std::size_t i = q; i-- > 0;) {
        if (++want[i] < radix) break;
        want[i] = 0;
      }
    }
    std::vector<LitPair> fresh;
    for (auto d : want) fresh.push_back(pair_of(d));
    report.holds = false;
    report.tuple = tuple;
    report.extension = make_extension(pi, tuple, fresh);
    report.detail = "tuple " + tuple_text(tuple) + " realises " + std::to_string(seen.size()) + " of the extension types";
    return false;
  });
  return report;
}

ExtensionReport check_k_delta_extension(const Interpretation& pi, int k, const Value& delta) {
  const auto& s = pi.semiring();
  if (!s.is_lattice_kind()) throw Error(ErrorKind::UnsupportedKind, "(k,delta)-extension needs a lattice semiring, not " + s.spec());
  if (!s.contains(delta) || s.is_zero(delta)) throw Error(ErrorKind::OutOfCarrier, "delta must be a positive element");
  ExtensionReport report;
  for_each_extension_site(pi, k, [&](const std::vector<int>& tuple, int m, const auto& rows) {
    auto space = make_atom_space(pi.vocab(), m + 1);
    std::size_t q = space->size() - space->prefix(m);
    if (q > 24) throw Error(ErrorKind::ResourceLimit, "too many maximal extensions");
    std::set<std::uint32_t> exact, small;
    for (const auto& [b, pairs] : rows) {
      std::uint32_t pattern = 0;
      bool is_exact = true, is_small = true;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        bool neg = s.is_zero(pairs[i].pos);
        if (neg) pattern |= 1u << i;
        const Value& v = neg ? pairs[i].neg : pairs[i].pos;
        if (!s.is_one(v)) is_exact = false;
        if (!s.natural_leq(v, delta)) is_small = false;
      }
      if (is_exact) exact.insert(pattern);
      if (is_small) small.insert(pattern);
    }
    for (std::uint32_t pattern = 0; pattern < (1u << q); ++pattern) {
      bool has_exact = exact.count(pattern), has_small = small.count(pattern);
      if (has_exact && has_small) continue;
      std::vector<LitPair> fresh;
      for (std::size_t i = 0; i < q; ++i)
        fresh.push_back(pattern >> i & 1 ? LitPair{s.zero(), s.one()} : LitPair{s.one(), s.zero()});
      report.holds = false;
      report.tuple = tuple;
      report.extension = make_extension(pi, tuple, fresh);
      report.detail = "tuple " + tuple_text(tuple) + (has_exact ? " lacks a delta-small realisation" : " lacks an exact realisation") +
                      " of a maximal extension";
      return false;
    }
    return true;
  });
  return report;
}

ExtensionReport check_strong_extension(const Interpretation& pi, int k, const Rational& gamma) {
  const auto& s = pi.semiring();
  if (s.kind() != SemiringKind::Natural && s.kind() != SemiringKind::NaturalInf)
    throw Error(ErrorKind::UnsupportedKind, "strong extension is defined over the natural semiring, not " + s.spec());
  if (gamma <= 0) throw Error(ErrorKind::Usage, "gamma must be positive");
  const Rational need = gamma * pi.size();
  ExtensionReport report;
  for_each_extension_site(pi, k, [&](const std::vector<int>& tuple, int m, const auto& rows) {
    auto space = make_atom_space(pi.vocab(), m + 1);
    std::size_t q = space->size() - space->prefix(m);
    if (q > 24) throw Error(ErrorKind::ResourceLimit, "too many Boolean extension classes");
    std::vector<std::uint64_t> count(std::size_t{1} << q, 0);
    for (const auto& [b, pairs] : rows) {
      std::uint32_t pattern = 0;
      bool large = true;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        bool neg = s.is_zero(pairs[i].pos);
        if (neg) pattern |= 1u << i;
        const auto& v = std::get<ExtNat>(neg ? pairs[i].neg : pairs[i].pos);
        if (!v.inf && v.v < 2) large = false;
      }
      if (large) ++count[pattern];
    }
    for (std::uint32_t pattern = 0; pattern < count.size(); ++pattern) {
      if (Rational(count[pattern]) >= need) continue;
      std::vector<LitPair> fresh;
      for (std::size_t i = 0; i < q; ++i)
        fresh.push_back(pattern >> i & 1 ? LitPair{s.zero(), ExtNat{2, false}} : LitPair{ExtNat{2, false}, s.zero()});
      report.holds = false;
      report.tuple = tuple;
      report.extension = make_extension(pi, tuple, fresh);
      report.detail = "tuple " + tuple_text(tuple) + " has " + std::to_string(count[pattern]) +
                      " large witnesses for a Boolean class, needs " + format_rational(need);
      return false;
    }
    return true;
  });
  return report;
}

}  // namespace zeroone
