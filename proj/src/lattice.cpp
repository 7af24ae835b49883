#include <fstream>
#include <sstream>

#include "zeroone/error.hpp"
#include "zeroone/semiring.hpp"

namespace zeroone {

FiniteLattice::FiniteLattice(std::vector<std::string> names, const std::vector<std::pair<std::string, std::string>>& le)
    : names_(std::move(names)) {
  const std::size_t n = names_.size();
  if (n < 2) throw Error(ErrorKind::NotALattice, "a lattice semiring needs at least two elements");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (names_[i] == names_[j]) throw Error(ErrorKind::NotALattice, "element " + names_[i] + " listed twice");

  leq_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) leq_[i * n + i] = 1;
  for (const auto& [x, y] : le) {
    auto a = find(x), b = find(y);
    if (!a || !b) throw Error(ErrorKind::NotALattice, "unknown element in 'le " + x + " " + y + "'");
    leq_[*a * n + *b] = 1;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k * n + j]) leq_[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq_[i * n + j] && leq_[j * n + i])
        throw Error(ErrorKind::NotALattice, "order is not antisymmetric on " + names_[i] + ", " + names_[j]);

  auto find_extreme = [&](bool least) -> std::uint32_t {
    for (std::uint32_t i = 0; i < n; ++i) {
      bool ok = true;
      for (std::uint32_t j = 0; j < n && ok; ++j) ok = least ? leq(i, j) : leq(j, i);
      if (ok) return i;
    }
    throw Error(ErrorKind::NotALattice, least ? "no least element" : "no greatest element");
  };
  bottom_ = find_extreme(true);
  top_ = find_extreme(false);

  join_.assign(n * n, 0);
  meet_.assign(n * n, 0);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      std::optional<std::uint32_t> lub, glb;
      for (std::uint32_t c = 0; c < n; ++c) {
        if (leq(a, c) && leq(b, c)) {
          bool least = true;
          for (std::uint32_t d = 0; d < n && least; ++d)
            if (leq(a, d) && leq(b, d) && !leq(c, d)) least = false;
          if (least) lub = c;
        }
        if (leq(c, a) && leq(c, b)) {
          bool greatest = true;
          for (std::uint32_t d = 0; d < n && greatest; ++d)
            if (leq(d, a) && leq(d, b) && !leq(d, c)) greatest = false;
          if (greatest) glb = c;
        }
      }
      if (!lub || !glb) throw Error(ErrorKind::NotALattice, "no join or meet for " + names_[a] + ", " + names_[b]);
      join_[a * n + b] = *lub;
      meet_[a * n + b] = *glb;
    }
  }
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c)))
          throw Error(ErrorKind::NotALattice, "not distributive at " + names_[a] + ", " + names_[b] + ", " + names_[c]);
}

std::optional<std::uint32_t> FiniteLattice::find(std::string_view name) const {
  for (std::uint32_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool FiniteLattice::is_chain() const {
  for (std::uint32_t a = 0; a < size(); ++a)
    for (std::uint32_t b = 0; b < size(); ++b)
      if (!leq(a, b) && !leq(b, a)) return false;
  return true;
}

FiniteLattice FiniteLattice::parse(std::string_view text) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> le;
  bool have_elements = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;
    if (keyword == "elements") {
      if (have_elements) throw Error(ErrorKind::NotALattice, "duplicate elements line");
      have_elements = true;
      std::string w;
      while (words >> w) names.push_back(w);
    } else if (keyword == "le") {
      std::string x, y, extra;
      if (!(words >> x >> y) || (words >> extra)) throw Error(ErrorKind::NotALattice, "expected 'le <x> <y>'");
      le.emplace_back(x, y);
    } else {
      throw Error(ErrorKind::NotALattice, "unexpected line '" + line + "'");
    }
  }
  if (!have_elements) throw Error(ErrorKind::NotALattice, "missing elements line");
  return FiniteLattice(std::move(names), le);
}

FiniteLattice FiniteLattice::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace zeroone
