#include "zeroone/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "zeroone/error.hpp"

namespace zeroone {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto end = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos)));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

bool success(const Target& t, const Semiring& s, const Interpretation& pi, const std::optional<Formula>& f) {
  if (t.kind == Target::Kind::Ext) {
    if (t.gamma) return check_strong_extension(pi, t.k, *t.gamma).holds;
    if (t.delta) return check_k_delta_extension(pi, t.k, *t.delta).holds;
    return check_k_extension(pi, t.k).holds;
  }
  Value v = evaluate(pi, *f);
  switch (t.kind) {
    case Target::Kind::Eq: return v == t.value;
    case Target::Kind::Interval: return s.natural_lt(t.lo, v) && s.natural_leq(v, t.hi);
    case Target::Kind::Gt: return s.natural_lt(t.value, v);
    default: return false;
  }
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, int n, std::uint64_t trial) {
  return splitmix(splitmix(splitmix(seed) ^ static_cast<std::uint64_t>(n)) ^ trial);
}

Interpretation sample_interpretation(const Vocabulary& vocab, int n, const ResolvedDistribution& p, std::mt19937_64& rng) {
  Interpretation pi(vocab, p.semiring, n);
  for (std::uint32_t r = 0; r < vocab.size(); ++r)
    for (std::size_t c = 0; c < pi.cells(r); ++c) pi.set_code(r, c, p.sample(rng));
  return pi;
}

Target parse_target(std::string_view text, const Semiring& s) {
  Target t;
  t.text = trim(text);
  auto colon = t.text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::Usage, "target '" + t.text + "' needs the form kind:args");
  std::string kind = t.text.substr(0, colon), args = t.text.substr(colon + 1);
  if (kind == "eq") {
    t.kind = Target::Kind::Eq;
    t.value = s.parse_value(trim(args));
  } else if (kind == "gt") {
    t.kind = Target::Kind::Gt;
    t.value = s.parse_value(trim(args));
  } else if (kind == "interval") {
    auto parts = split(args, ',');
    if (parts.size() != 2) throw Error(ErrorKind::Usage, "interval needs lo,hi");
    t.kind = Target::Kind::Interval;
    t.lo = s.parse_value(parts[0]);
    t.hi = s.parse_value(parts[1]);
  } else if (kind == "ext") {
    auto parts = split(args, ',');
    t.kind = Target::Kind::Ext;
    try {
      t.k = std::stoi(parts[0]);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "ext needs an integer k");
    }
    if (t.k < 1) throw Error(ErrorKind::Usage, "ext needs k >= 1");
    for (std::size_t i = 1; i < parts.size(); ++i) {
      auto eq = parts[i].find('=');
      std::string key = trim(parts[i].substr(0, eq));
      std::string val = eq == std::string::npos ? "" : trim(parts[i].substr(eq + 1));
      if (key == "delta") {
        t.delta = s.parse_value(val);
      } else if (key == "gamma") {
        t.gamma = parse_rational(val);
      } else {
        throw Error(ErrorKind::Usage, "unknown ext option '" + key + "'");
      }
    }
  } else {
    throw Error(ErrorKind::Usage, "unknown target kind '" + kind + "'");
  }
  return t;
}

ExperimentPlan parse_plan(std::string_view text) {
  ExperimentPlan plan;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string l = trim(line);
    if (l.empty() || l[0] == '#') continue;
    auto eq = l.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Parse, "plan line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(l.substr(0, eq)), val = trim(l.substr(eq + 1));
    try {
      if (key == "formula") {
        plan.formula = val;
      } else if (key == "semiring") {
        plan.semiring = val;
      } else if (key == "dist") {
        plan.distribution = val;
      } else if (key == "vocab") {
        plan.vocab = val;
      } else if (key == "sizes") {
        plan.sizes.clear();
        for (const auto& s : split(val, ',')) plan.sizes.push_back(std::stoi(s));
      } else if (key == "trials") {
        plan.trials = std::stoi(val);
      } else if (key == "seed") {
        plan.seed = std::stoull(val, nullptr, 0);
      } else if (key == "target") {
        plan.target = val;
      } else if (key == "out") {
        plan.output = val;
      } else if (key == "threads") {
        plan.threads = static_cast<unsigned>(std::stoul(val));
      } else {
        throw Error(ErrorKind::Parse, "plan line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, "plan line " + std::to_string(lineno) + ": bad number '" + val + "'");
    }
  }
  return plan;
}

ExperimentPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_plan(ss.str());
}

Semiring experiment_semiring(const std::string& spec) {
  if (spec == "nat" || spec == "natural") return Semiring::natural(BigInt(1) << 64);
  return Semiring::parse(spec);
}

std::vector<ExperimentRow> run_convergence(const ExperimentPlan& plan) {
  if (plan.trials < 1) throw Error(ErrorKind::Usage, "trials must be at least 1");
  if (plan.sizes.empty()) throw Error(ErrorKind::Usage, "no universe sizes given");
  for (std::size_t i = 0; i < plan.sizes.size(); ++i) {
    if (plan.sizes[i] < 1) throw Error(ErrorKind::Usage, "universe sizes must be positive");
    if (i > 0 && plan.sizes[i] <= plan.sizes[i - 1]) throw Error(ErrorKind::Usage, "universe sizes must ascend");
  }
  Semiring s = experiment_semiring(plan.semiring);
  ResolvedDistribution p = resolve(parse_distribution(plan.distribution), s);
  Target target = parse_target(plan.target, s);

  std::optional<Formula> f;
  Vocabulary vocab;
  if (!plan.vocab.empty()) vocab = Vocabulary::parse_list(plan.vocab);
  if (target.kind != Target::Kind::Ext) {
    if (plan.formula.empty()) throw Error(ErrorKind::Usage, "target " + target.text + " needs a formula");
    f = plan.vocab.empty() ? parse_formula(plan.formula) : parse_formula(plan.formula, vocab);
    if (!is_sentence(*f)) throw Error(ErrorKind::NotASentence, "simulation needs a sentence");
    if (plan.vocab.empty()) vocab = infer_vocabulary(*f);
  }
  if (vocab.empty() && target.kind == Target::Kind::Ext) throw Error(ErrorKind::Usage, "no vocabulary: pass --vocab");

  unsigned threads = plan.threads ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(plan.trials));

  std::vector<ExperimentRow> rows;
  for (int n : plan.sizes) {
    std::vector<char> hit(plan.trials, 0);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
      try {
        for (int t; (t = next.fetch_add(1)) < plan.trials;) {
          std::mt19937_64 rng(trial_seed(plan.seed, n, static_cast<std::uint64_t>(t)));
          Interpretation pi = sample_interpretation(vocab, n, p, rng);
          hit[t] = success(target, s, pi, f);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = plan.trials;
      }
    };
    auto start = std::chrono::steady_clock::now();
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    ExperimentRow row{n, plan.trials, target.text, 0, ms / plan.trials};
    for (char h : hit) row.successes += h;
    rows.push_back(std::move(row));
  }
  if (!plan.output.empty()) emit_report(rows, plan.output);
  return rows;
}

std::string report_csv(const std::vector<ExperimentRow>& rows) {
  if (rows.empty()) throw Error(ErrorKind::Usage, "no rows to report");
  std::string out = "n,trials,target,frequency,ms\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(r.successes) / r.trials);
    std::string freq = std::to_string(r.successes) + "/" + std::to_string(r.trials) + " (" + buf + ")";
    std::snprintf(buf, sizeof buf, "%.3f", r.ms);
    out += std::to_string(r.n) + "," + std::to_string(r.trials) + "," + csv_field(r.target) + "," + freq + "," + buf + "\n";
  }
  return out;
}

void emit_report(const std::vector<ExperimentRow>& rows, const std::string& path) {
  std::string text = report_csv(rows);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write to " + path + " failed");
}

}  // namespace zeroone
