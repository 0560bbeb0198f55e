#include "aoi/estimator.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "aoi/error.hpp"
#include "aoi/policies.hpp"
#include "parallel.hpp"

namespace aoi {

namespace {

void require_valid(const InstanceParams& params) {
  if (auto report = validate_instance(params); !report) {
    throw ValidationError("invalid instance (" + to_string(params) + "): " + report.summary());
  }
}

void require_length(const Schedule& schedule, const InstanceParams& params) {
  require_valid(params);
  if (schedule.size() != params.T) {
    throw ValidationError("schedule length " + std::to_string(schedule.size()) +
                          " does not match T=" + std::to_string(params.T));
  }
}

struct Probability {
  BigInt num;  // forward weight
  BigInt den;
};

Probability split(const Rational& p) {
  if (p < 0 || p > 1) throw ValidationError("forward probability outside [0,1]");
  return {boost::multiprecision::numerator(p), boost::multiprecision::denominator(p)};
}

// Probabilities are kept as integer weights over den^t, so the whole
// computation is exact integer arithmetic with a single division at the end.
Rational propagate(const Schedule& schedule, const InstanceParams& params,
                   const std::map<int, AdversaryAction>& fixedBits, const Rational& p) {
  require_length(schedule, params);
  const auto [a, b] = split(p);
  const int T = params.T;
  for (const auto& [slot, bit] : fixedBits) {
    if (slot < 0 || slot >= T) {
      throw ValidationError("fixed slot " + std::to_string(slot) + " outside the horizon");
    }
  }

  // weight[g + 1] for user generation g in -1..T-1.
  std::vector<BigInt> weight(static_cast<std::size_t>(T + 1)), next(weight.size());
  weight[0] = 1;
  int cacheGen = -1;
  BigInt acc = 0;
  for (int t = 0; t < T; ++t) {
    BigInt slotSum = 0;
    for (int g = -1; g < t; ++g) {
      const auto& w = weight[static_cast<std::size_t>(g + 1)];
      if (!w.is_zero()) slotSum += w * (t - g);
    }
    acc = t == 0 ? slotSum : acc * b + slotSum;

    BigInt forwardWeight = a;
    BigInt idleWeight = b - a;
    if (auto it = fixedBits.find(t); it != fixedBits.end()) {
      const bool fwd = it->second == AdversaryAction::Forward;
      forwardWeight = fwd ? b : BigInt(0);
      idleWeight = fwd ? BigInt(0) : b;
    }

    for (auto& w : next) w = 0;
    int cacheAfter = cacheGen;
    for (int g = -1; g < t; ++g) {
      const auto& w = weight[static_cast<std::size_t>(g + 1)];
      if (w.is_zero()) continue;
      // The user's stamp never reaches `now`, so any stamp below t behaves
      // the same in step(); -1 stands in for it.
      const SystemState state{t, cacheGen, g, -1};
      const auto idle = step(state, schedule[t], AdversaryAction::Idle);
      const auto fwd = step(state, schedule[t], AdversaryAction::Forward);
      cacheAfter = idle.cacheGen;
      if (!idleWeight.is_zero()) next[static_cast<std::size_t>(idle.userGen + 1)] += w * idleWeight;
      if (!forwardWeight.is_zero()) next[static_cast<std::size_t>(fwd.userGen + 1)] += w * forwardWeight;
    }
    cacheGen = cacheAfter;
    weight.swap(next);
  }
  BigInt scale = 1;
  for (int t = 1; t < T; ++t) scale *= b;
  return Rational(acc, scale * T);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct ChunkStats {
  std::int64_t sum = 0;
  long double sumSquares = 0;
};

// Draws `samples` sequences in fixed chunks and reduces `measure(sigma)` in
// chunk order.
template <class Measure>
ChunkStats sample_chunks(int T, const SequenceDistribution& dist, std::uint64_t samples,
                         int workers, Measure&& measure) {
  if (samples < 1) throw ValidationError("sample count must be >= 1");
  const BernoulliSampler sampler(dist.p);
  const std::uint64_t chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<ChunkStats> partial(chunks);
  detail::parallel_for(chunks, workers, [&](std::size_t c) {
    const std::uint64_t begin = c * kMonteCarloChunk;
    const std::uint64_t count = std::min(kMonteCarloChunk, samples - begin);
    std::mt19937_64 rng(chunk_seed(dist.seed, c));
    AdversarySequence sigma(T);
    ChunkStats stats;
    for (std::uint64_t k = 0; k < count; ++k) {
      sampler.fill(sigma, rng);
      const std::int64_t v = measure(sigma);
      stats.sum += v;
      stats.sumSquares += static_cast<long double>(v) * v;
    }
    partial[c] = stats;
  });
  ChunkStats total;
  for (const auto& s : partial) {
    total.sum += s.sum;
    total.sumSquares += s.sumSquares;
  }
  return total;
}

// Standard error of the mean of the per-sample averages (totals / T).
double standard_error(const ChunkStats& stats, std::uint64_t n, int T) {
  if (n < 2) return 0.0;
  const long double mean = static_cast<long double>(stats.sum) / n;
  long double var = (stats.sumSquares - mean * mean * n) / (n - 1);
  if (var < 0) var = 0;
  return static_cast<double>(std::sqrt(var / n) / T);
}

}  // namespace

std::string to_string(ExpectationMethod method) {
  switch (method) {
    case ExpectationMethod::Propagation: return "propagation";
    case ExpectationMethod::Enumeration: return "enumeration";
    case ExpectationMethod::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

ExpectationMethod parse_expectation_method(std::string_view text) {
  if (text == "propagation" || text == "exact") return ExpectationMethod::Propagation;
  if (text == "enumeration" || text == "enum") return ExpectationMethod::Enumeration;
  if (text == "monte-carlo" || text == "mc") return ExpectationMethod::MonteCarlo;
  throw ValidationError("unknown method '" + std::string(text) + "'");
}

ExpectationResult exact_expected_age(const Schedule& schedule, const InstanceParams& params,
                                     const Rational& p) {
  return {ExpectationMethod::Propagation, propagate(schedule, params, {}, p), 0.0, 0};
}

ExpectationResult exact_expected_age_conditional(const Schedule& schedule,
                                                 const InstanceParams& params,
                                                 const std::map<int, AdversaryAction>& fixedBits,
                                                 const Rational& p) {
  return {ExpectationMethod::Propagation, propagate(schedule, params, fixedBits, p), 0.0, 0};
}

ExpectationResult enumerated_expected_age(const Schedule& schedule, const InstanceParams& params,
                                          const Rational& p, int cap, int workers) {
  require_length(schedule, params);
  const auto [a, b] = split(p);
  const int T = params.T;
  const auto range = enumerate_sequences(T, cap);

  // Total age summed per number of forwarding slots; every sequence with k
  // forwards has weight a^k (b-a)^(T-k).
  const std::size_t shards = std::min<std::uint64_t>(range.size(), 64);
  std::vector<std::vector<std::int64_t>> partial(shards);
  detail::parallel_for(shards, workers, [&](std::size_t k) {
    std::vector<std::int64_t> byCount(static_cast<std::size_t>(T + 1), 0);
    for (const auto& sigma : range.shard(k, shards)) {
      byCount[static_cast<std::size_t>(sigma.forward_count())] +=
          total_age(schedule.actions(), sigma);
    }
    partial[k] = std::move(byCount);
  });

  BigInt numerator = 0;
  for (int k = 0; k <= T; ++k) {
    std::int64_t sum = 0;
    for (const auto& part : partial) sum += part[static_cast<std::size_t>(k)];
    if (sum == 0) continue;
    BigInt w = sum;
    for (int i = 0; i < k; ++i) w *= a;
    for (int i = k; i < T; ++i) w *= (b - a);
    numerator += w;
  }
  BigInt denominator = T;
  for (int i = 0; i < T; ++i) denominator *= b;
  return {ExpectationMethod::Enumeration, Rational(numerator, denominator), 0.0, 0};
}

std::uint64_t chunk_seed(std::uint64_t master, std::uint64_t chunk) {
  return splitmix64(splitmix64(master) ^ splitmix64(chunk + 1));
}

ExpectationResult mc_expected_age(const Schedule& schedule, const InstanceParams& params,
                                  const SequenceDistribution& dist, std::uint64_t samples,
                                  int workers) {
  require_length(schedule, params);
  const auto stats = sample_chunks(params.T, dist, samples, workers, [&](const auto& sigma) {
    return total_age(schedule.actions(), sigma);
  });
  ExpectationResult r;
  r.method = ExpectationMethod::MonteCarlo;
  r.mean = Rational(BigInt(stats.sum), BigInt(samples) * params.T);
  r.standardError = standard_error(stats, samples, params.T);
  r.samples = samples;
  return r;
}

RatioReport exact_competitive_ratio(const Schedule& schedule, const InstanceParams& params,
                                    bool enforceSingleUpdate, int cap, std::string policyName) {
  require_length(schedule, params);
  const auto totals = offline_optimal_totals(params, enforceSingleUpdate, cap);
  const int T = params.T;

  std::uint64_t bestIndex = 0;
  std::int64_t bestOnline = -1;
  std::int64_t bestOffline = 1;
  for (std::uint64_t i = 0; i < totals.size(); ++i) {
    const auto sigma = AdversarySequence::from_index(T, i);
    const std::int64_t online = total_age(schedule.actions(), sigma);
    const std::int64_t offline = totals[i];
    if (bestOnline < 0 || online * bestOffline > bestOnline * offline) {
      bestIndex = i;
      bestOnline = online;
      bestOffline = offline;
    }
  }

  RatioReport r;
  r.params = params;
  r.policyName = std::move(policyName);
  r.method = ExpectationMethod::Enumeration;
  r.numerator = make_rational(bestOnline, T);
  r.denominator = make_rational(bestOffline, T);
  r.ratio = make_rational(bestOnline, bestOffline);
  r.argmaxSigma = AdversarySequence::from_index(T, bestIndex);
  return r;
}

Rational expected_optimal_age(const InstanceParams& params, bool enforceSingleUpdate, int cap) {
  const auto totals = offline_optimal_totals(params, enforceSingleUpdate, cap);
  BigInt sum = 0;
  for (auto v : totals) sum += v;
  return Rational(sum, BigInt(totals.size()) * params.T);
}

RatioReport yao_bound_empirical(const InstanceParams& params, const YaoOptions& options) {
  const auto check = build_check_policy(params);
  RatioReport r;
  r.params = params;
  r.policyName = "check";
  r.method = options.method;
  r.numerator = exact_expected_age(check, params).mean;

  switch (options.method) {
    case ExpectationMethod::Enumeration:
      r.denominator = expected_optimal_age(params, options.enforceSingleUpdate, options.cap);
      break;
    case ExpectationMethod::MonteCarlo: {
      const SequenceDistribution fair{make_rational(1, 2), options.seed};
      const auto stats =
          sample_chunks(params.T, fair, options.samples, options.workers, [&](const auto& sigma) {
            return offline_optimal(sigma, params, options.enforceSingleUpdate).totalAge;
          });
      r.denominator = Rational(BigInt(stats.sum), BigInt(options.samples) * params.T);
      r.denominatorStdError = standard_error(stats, options.samples, params.T);
      r.samples = options.samples;
      break;
    }
    case ExpectationMethod::Propagation:
      throw ValidationError("the optimal-age expectation needs enumeration or monte-carlo");
  }
  r.ratio = r.numerator / r.denominator;
  return r;
}

BestDeterministic best_deterministic_under_P1(const InstanceParams& params,
                                              bool enforceSingleUpdate, std::uint64_t cap) {
  require_valid(params);
  const auto candidates = bruteforce_candidate_count(params);
  if (candidates > cap) {
    throw CapExceeded("schedule search would visit " + std::to_string(candidates) +
                      " schedules, cap is " + std::to_string(cap));
  }

  BestDeterministic best;
  bool found = false;
  best.candidates = for_each_schedule(params, enforceSingleUpdate, [&](const Schedule& s) {
    auto e = exact_expected_age(s, params);
    if (!found || e.mean < best.expectation.mean) {
      found = true;
      best.schedule = s;
      best.expectation = std::move(e);
    }
  });

  const auto g = SectionGeometry::of(params);
  if (g.x2 != 0 && g.x3 != 0) {
    best.checkExpectation = exact_expected_age(build_check_policy(params), params);
    best.counterexample = best.expectation.mean < best.checkExpectation->mean;
  }
  return best;
}

}  // namespace aoi
