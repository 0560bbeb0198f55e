#include "aoi/adversaries.hpp"

#include <limits>
#include <random>
#include <string>
#include <vector>

#include "aoi/error.hpp"

namespace aoi {

AdversarySequence constant_sequence(int T, AdversaryAction bit) {
  if (T < 1) throw ValidationError("sequence length must be positive");
  return AdversarySequence(T, bit);
}

BernoulliSampler::BernoulliSampler(const Rational& p) {
  if (p < 0 || p > 1) throw ValidationError("forward probability outside [0,1]");
  const BigInt num = boost::multiprecision::numerator(p);
  const BigInt den = boost::multiprecision::denominator(p);
  if (den > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw ValidationError("forward probability denominator too large to sample");
  }
  num_ = num.convert_to<std::uint64_t>();
  den_ = den.convert_to<std::uint64_t>();
}

void BernoulliSampler::fill(AdversarySequence& out, std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint64_t> draw(0, den_ - 1);
  for (int t = 0; t < out.size(); ++t) {
    out[t] = draw(rng) < num_ ? AdversaryAction::Forward : AdversaryAction::Idle;
  }
}

AdversarySequence bernoulli_sequence(const SequenceDistribution& dist, int T) {
  if (T < 1) throw ValidationError("sequence length must be positive");
  const BernoulliSampler sampler(dist.p);
  std::mt19937_64 rng(dist.seed);
  AdversarySequence s(T);
  sampler.fill(s, rng);
  return s;
}

SequenceRange SequenceRange::shard(std::uint64_t k, std::uint64_t shards) const {
  const std::uint64_t n = size();
  const std::uint64_t lo = first_ + n * k / shards;
  const std::uint64_t hi = first_ + n * (k + 1) / shards;
  return {length_, lo, hi};
}

SequenceRange enumerate_sequences(int T, int cap) {
  if (T < 1) throw ValidationError("sequence length must be positive");
  if (T > cap || T > 62) {
    throw CapExceeded("enumerating 2^" + std::to_string(T) + " sequences exceeds cap T<=" +
                      std::to_string(cap));
  }
  return {T, 0, std::uint64_t{1} << T};
}

WorstCase worst_sequence(const Schedule& schedule, const InstanceParams& params) {
  if (auto report = validate_instance(params); !report) {
    throw ValidationError("invalid instance: " + report.summary());
  }
  const int T = params.T;
  if (schedule.size() != T) throw ValidationError("schedule length must equal T");

  // cacheGen after the source acts at slot t.
  std::vector<int> cacheAfter(static_cast<std::size_t>(T));
  int cg = -1;
  for (int t = 0; t < T; ++t) {
    if (schedule[t] == SourceAction::ToCache) cg = t;
    cacheAfter[static_cast<std::size_t>(t)] = cg;
  }

  // best[t][g+1]: max total age over slots t..T-1 given userGen = g before t.
  const int width = T + 1;
  std::vector<std::int64_t> best(static_cast<std::size_t>((T + 1) * width), 0);
  auto at = [&](int t, int g) -> std::int64_t& {
    return best[static_cast<std::size_t>(t * width + g + 1)];
  };
  auto next_gen = [&](int t, int g, AdversaryAction a) {
    if (schedule[t] == SourceAction::ToUser) return t;
    if (a == AdversaryAction::Forward) return cacheAfter[static_cast<std::size_t>(t)];
    return g;
  };
  for (int t = T - 1; t >= 0; --t) {
    for (int g = -1; g < t; ++g) {
      const auto idle = at(t + 1, next_gen(t, g, AdversaryAction::Idle));
      const auto fwd = at(t + 1, next_gen(t, g, AdversaryAction::Forward));
      at(t, g) = (t - g) + std::max(idle, fwd);
    }
  }

  WorstCase result;
  result.sigma = AdversarySequence(T);
  int g = -1;
  for (int t = 0; t < T; ++t) {
    const int gi = next_gen(t, g, AdversaryAction::Idle);
    const int gf = next_gen(t, g, AdversaryAction::Forward);
    if (at(t + 1, gf) > at(t + 1, gi)) {
      result.sigma[t] = AdversaryAction::Forward;
      g = gf;
    } else {
      g = gi;
    }
  }
  result.totalAge = at(0, -1);
  result.value = make_rational(result.totalAge, T);
  return result;
}

}  // namespace aoi
