#include <bit>

#include "zeroone/asv.hpp"
#include "zeroone/error.hpp"

namespace zeroone {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Rational probability(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw Error(ErrorKind::BadDistribution, "'" + text + "' is not a probability");
  }
}

double to_double(const Rational& r) { return static_cast<double>(r); }

// 53 random bits in [0,1); identical on every platform.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Distribution parse_distribution(std::string_view text) {
  Distribution d;
  d.text = trim(text);
  std::string body = d.text;
  std::string head = body, rest;
  if (auto colon = body.find(':'); colon != std::string::npos) {
    head = trim(body.substr(0, colon));
    rest = body.substr(colon + 1);
  } else if (auto semi = body.find_first_of(";,"); semi != std::string::npos) {
    head = trim(body.substr(0, semi));
    rest = body.substr(semi + 1);
  }
  if (head == "uniform") {
    d.kind = DistKind::Uniform;
  } else if (head == "weights") {
    d.kind = DistKind::Weights;
  } else if (head == "support") {
    d.kind = DistKind::Support;
  } else if (head == "dyadic") {
    d.kind = DistKind::Dyadic;
  } else {
    throw Error(ErrorKind::BadDistribution, "unknown distribution '" + d.text + "'");
  }
  std::size_t pos = 0;
  while (pos <= rest.size() && !rest.empty()) {
    std::size_t end = rest.find_first_of(",;", pos);
    std::string item = trim(rest.substr(pos, end == std::string::npos ? std::string::npos : end - pos));
    if (!item.empty()) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::BadDistribution, "expected value=probability, got '" + item + "'");
      std::string key = trim(item.substr(0, eq));
      Rational prob = probability(trim(item.substr(eq + 1)));
      if (key == "bias") {
        if (prob <= 0 || prob >= 1) throw Error(ErrorKind::BadDistribution, "bias must lie strictly between 0 and 1");
        d.bias = prob;
      } else {
        if (d.kind == DistKind::Uniform || d.kind == DistKind::Dyadic)
          throw Error(ErrorKind::BadDistribution, head + " takes no weights");
        d.entries.emplace_back(key, prob);
      }
    }
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  if ((d.kind == DistKind::Weights || d.kind == DistKind::Support) && d.entries.empty())
    throw Error(ErrorKind::BadDistribution, head + " needs at least one value");
  return d;
}

ResolvedDistribution resolve(const Distribution& d, const Semiring& s) {
  ResolvedDistribution r{s, d.kind, {}, {}, d.bias};
  switch (d.kind) {
    case DistKind::Uniform: {
      if (!s.is_finite()) throw Error(ErrorKind::UnsupportedDistribution, "uniform needs a finite carrier, not " + s.spec());
      r.values = s.positive_elements();
      r.probs.assign(r.values.size(), Rational(1, static_cast<long>(r.values.size())));
      return r;
    }
    case DistKind::Dyadic: {
      if (s.kind() != SemiringKind::RealMinMax && s.kind() != SemiringKind::Viterbi &&
          s.kind() != SemiringKind::Lukasiewicz)
        throw Error(ErrorKind::UnsupportedDistribution, "dyadic needs a [0,1] carrier, not " + s.spec());
      return r;
    }
    case DistKind::Weights:
      if (!s.is_finite()) throw Error(ErrorKind::UnsupportedDistribution, "weights need a finite carrier, use support:");
      break;
    case DistKind::Support:
      break;
  }
  Rational total = 0;
  for (const auto& [key, prob] : d.entries) {
    Value v;
    try {
      v = s.parse_value(key);
    } catch (const Error& e) {
      throw Error(ErrorKind::BadDistribution, e.what());
    }
    if (s.is_zero(v)) throw Error(ErrorKind::BadDistribution, "the support must avoid zero");
    if (prob <= 0) throw Error(ErrorKind::BadDistribution, "probability of " + key + " must be positive");
    for (const auto& w : r.values)
      if (w == v) throw Error(ErrorKind::BadDistribution, key + " is listed twice");
    r.values.push_back(v);
    r.probs.push_back(prob);
    total += prob;
  }
  if (total != 1) throw Error(ErrorKind::BadDistribution, "probabilities sum to " + format_rational(total) + ", not 1");
  if (s.is_finite() && r.values.size() != s.positive_elements().size())
    throw Error(ErrorKind::BadDistribution, "a finite carrier needs positive probability on every nonzero element");
  return r;
}

Rational ResolvedDistribution::mass(const Value& v) const {
  if (kind == DistKind::Dyadic) {
    if (!std::holds_alternative<Rational>(v)) return 0;
    const Rational& x = std::get<Rational>(v);
    if (x <= 0 || numerator(x) != 1) return 0;
    BigInt den = denominator(x);
    if ((den & (den - 1)) != 0) return 0;
    return x / 2;
  }
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == v) return probs[i];
  return 0;
}

LitPair ResolvedDistribution::sample(std::mt19937_64& rng) const {
  const bool truth = unit(rng) < to_double(bias);
  Value v;
  if (kind == DistKind::Dyadic) {
    int n = std::min(std::countr_zero(rng()), 60);
    v = Rational(1, BigInt(1) << n);
  } else {
    double u = unit(rng), acc = 0;
    std::size_t i = 0;
    for (; i + 1 < values.size(); ++i) {
      acc += to_double(probs[i]);
      if (u < acc) break;
    }
    v = values[i];
  }
  return truth ? LitPair{v, semiring.zero()} : LitPair{semiring.zero(), v};
}

}  // namespace zeroone
