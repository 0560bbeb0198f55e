#pragma once

// Expectations of the average age over random adversary sequences, exact
// competitive ratios and the empirical side of the minimax lower bound.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "aoi/adversaries.hpp"
#include "aoi/dynamics.hpp"
#include "aoi/oracle.hpp"
#include "aoi/rational.hpp"

namespace aoi {

enum class ExpectationMethod { Propagation, Enumeration, MonteCarlo };

std::string to_string(ExpectationMethod method);
/// Accepts "propagation", "enumeration", "monte-carlo" and "mc".
ExpectationMethod parse_expectation_method(std::string_view text);

struct ExpectationResult {
  ExpectationMethod method = ExpectationMethod::Propagation;
  /// Exact expectation, or the exact sample mean for Monte Carlo.
  Rational mean;
  double standardError = 0.0;  ///< Monte Carlo only
  std::uint64_t samples = 0;   ///< Monte Carlo only

  double value() const { return to_double(mean); }
};

/// Exact E[average age] under i.i.d. Bernoulli(p) forwarding. Propagates the
/// distribution of the user's packet generation slot by slot; the cache
/// content is fixed by the schedule.
ExpectationResult exact_expected_age(const Schedule& schedule, const InstanceParams& params,
                                     const Rational& p = make_rational(1, 2));

/// Same, conditioned on the bits in `fixedBits`.
ExpectationResult exact_expected_age_conditional(const Schedule& schedule,
                                                 const InstanceParams& params,
                                                 const std::map<int, AdversaryAction>& fixedBits,
                                                 const Rational& p = make_rational(1, 2));

/// Weighted average over all 2^T sequences.
ExpectationResult enumerated_expected_age(const Schedule& schedule, const InstanceParams& params,
                                          const Rational& p = make_rational(1, 2),
                                          int cap = kDefaultEnumerationCap, int workers = 1);

/// Samples are drawn in fixed chunks of this size, each from its own stream.
inline constexpr std::uint64_t kMonteCarloChunk = 4096;

/// Stream seed of chunk `chunk` under master seed `master`.
std::uint64_t chunk_seed(std::uint64_t master, std::uint64_t chunk);

/// Seeded sample mean with standard error. The result depends only on
/// (dist, samples), never on `workers`.
ExpectationResult mc_expected_age(const Schedule& schedule, const InstanceParams& params,
                                  const SequenceDistribution& dist, std::uint64_t samples,
                                  int workers = 1);

struct RatioReport {
  InstanceParams params;
  std::string policyName;
  ExpectationMethod method = ExpectationMethod::Enumeration;
  Rational ratio;
  /// Competitive ratio: the online average age at the maximizing sequence.
  /// Yao bound: the expected age of the policy.
  Rational numerator;
  /// The matching offline-optimal average age or its expectation.
  Rational denominator;
  std::optional<AdversarySequence> argmaxSigma;
  std::uint64_t samples = 0;
  double denominatorStdError = 0.0;

  double value() const { return to_double(ratio); }
};

/// max over all sequences of A(schedule, sigma) / A(optimal, sigma). The
/// first maximizer in index order is reported.
RatioReport exact_competitive_ratio(const Schedule& schedule, const InstanceParams& params,
                                    bool enforceSingleUpdate = true,
                                    int cap = kDefaultEnumerationCap,
                                    std::string policyName = "custom");

struct YaoOptions {
  ExpectationMethod method = ExpectationMethod::Enumeration;
  bool enforceSingleUpdate = true;
  int cap = kDefaultEnumerationCap;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  int workers = 1;
};

/// E[A(check policy)] / E[A(optimal)] under fair coin flips. The ratio of
/// expectations, not the expectation of ratios.
RatioReport yao_bound_empirical(const InstanceParams& params, const YaoOptions& options = {});

/// E over fair coin flips of the offline-optimal average age, exact.
Rational expected_optimal_age(const InstanceParams& params, bool enforceSingleUpdate = true,
                              int cap = kDefaultEnumerationCap);

struct BestDeterministic {
  Schedule schedule;
  ExpectationResult expectation;
  /// The check policy's expectation when the instance admits it.
  std::optional<ExpectationResult> checkExpectation;
  /// The winner is strictly better than the check policy.
  bool counterexample = false;
  std::uint64_t candidates = 0;
};

/// Exhaustive minimization of the expected average age under fair coin
/// flips. Ties keep the lexicographically smallest schedule.
BestDeterministic best_deterministic_under_P1(const InstanceParams& params,
                                              bool enforceSingleUpdate = true,
                                              std::uint64_t cap = kDefaultBruteForceCap);

}  // namespace aoi
