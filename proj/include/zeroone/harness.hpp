#ifndef ZEROONE_HARNESS_HPP
#define ZEROONE_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "zeroone/asv.hpp"
#include "zeroone/interp.hpp"
#include "zeroone/semiring.hpp"

namespace zeroone {

inline constexpr std::uint64_t kShippedSeed = 0x5eed2024;

/// Seed of the mt19937_64 stream for one trial, from SplitMix64 mixing of
/// (seed, n, trial). Serial and threaded runs draw the same streams.
std::uint64_t trial_seed(std::uint64_t seed, int n, std::uint64_t trial);

/// Atoms are drawn relation by relation in vocabulary order, tuples in
/// lexicographic order.
Interpretation sample_interpretation(const Vocabulary& vocab, int n, const ResolvedDistribution& p, std::mt19937_64& rng);

/// What a trial counts as a success.
///   eq:<v>                 π⟦ψ⟧ = v
///   interval:<lo>,<hi>     lo < π⟦ψ⟧ <= hi
///   gt:<v>                 π⟦ψ⟧ > v
///   ext:<k>[,delta=<d>|,gamma=<g>]   the extension property
struct Target {
  enum class Kind { Eq, Interval, Gt, Ext };
  Kind kind = Kind::Eq;
  Value value, lo, hi;
  int k = 0;
  std::optional<Value> delta;
  std::optional<Rational> gamma;
  std::string text;
};

Target parse_target(std::string_view text, const Semiring& s);

struct ExperimentPlan {
  std::string formula;  // may stay empty for extension targets
  std::string semiring = "E";
  std::string distribution = "uniform";
  std::string vocab;  // `E/2,P/1`; inferred from the formula when empty
  std::vector<int> sizes{5, 10, 20, 40};
  int trials = 200;
  std::uint64_t seed = kShippedSeed;
  std::string target;
  std::string output;    // CSV path; empty for none
  unsigned threads = 0;  // 0: hardware concurrency
};

/// `key = value` lines with the CLI flag names; `sizes` takes a comma list.
ExperimentPlan parse_plan(std::string_view text);
ExperimentPlan load_plan(const std::string& path);

struct ExperimentRow {
  int n = 0;
  int trials = 0;
  std::string target;
  std::uint64_t successes = 0;
  double ms = 0;  // mean wall time per trial

  Rational frequency() const { return Rational(successes, trials); }
};

/// The semiring a plan runs over. `nat` without a cap saturates at 2^64.
Semiring experiment_semiring(const std::string& spec);

std::vector<ExperimentRow> run_convergence(const ExperimentPlan& plan);

/// Header `n,trials,target,frequency,ms`; frequencies as `s/t (0.dddddd)`.
std::string report_csv(const std::vector<ExperimentRow>& rows);
void emit_report(const std::vector<ExperimentRow>& rows, const std::string& path);

}  // namespace zeroone

#endif  // ZEROONE_HARNESS_HPP
