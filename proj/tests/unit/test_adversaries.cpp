#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "aoi/adversaries.hpp"
#include "aoi/error.hpp"
#include "aoi/policies.hpp"
#include "reference_model.hpp"

using namespace aoi;

namespace {

Schedule random_feasible(std::mt19937_64& rng, const InstanceParams& p) {
  for (;;) {
    Schedule s(p.T);
    std::uniform_int_distribution<int> pick(0, 4);
    for (int t = 0; t < p.T; ++t) {
      const int k = pick(rng);
      s[t] = k == 0 ? SourceAction::ToCache : k == 1 ? SourceAction::ToUser : SourceAction::Idle;
    }
    if (validate_schedule(s, p, true).ok()) return s;
  }
}

}  // namespace

TEST(ConstantSequence, AllSameBit) {
  EXPECT_EQ(constant_sequence(5, AdversaryAction::Forward).to_string(), "11111");
  EXPECT_EQ(constant_sequence(3, AdversaryAction::Idle).to_string(), "000");
  EXPECT_THROW(constant_sequence(0, AdversaryAction::Idle), ValidationError);
}

TEST(BernoulliSequence, DegenerateProbabilities) {
  EXPECT_EQ(bernoulli_sequence({make_rational(0), 7}, 50).forward_count(), 0);
  EXPECT_EQ(bernoulli_sequence({make_rational(1), 7}, 50).forward_count(), 50);
}

TEST(BernoulliSequence, EmpiricalFraction) {
  for (const auto& p : {make_rational(1, 2), make_rational(1, 4), make_rational(9, 10)}) {
    const auto s = bernoulli_sequence({p, 99}, 10000);
    EXPECT_NEAR(s.forward_count() / 10000.0, to_double(p), 0.02);
  }
}

TEST(BernoulliSequence, SeedReproducible) {
  const SequenceDistribution d{make_rational(1, 2), 1234};
  EXPECT_EQ(bernoulli_sequence(d, 200), bernoulli_sequence(d, 200));
  EXPECT_NE(bernoulli_sequence(d, 200), bernoulli_sequence({d.p, 1235}, 200));
}

TEST(BernoulliSequence, RejectsBadProbability) {
  EXPECT_THROW(bernoulli_sequence({make_rational(3, 2), 0}, 5), ValidationError);
  EXPECT_THROW(bernoulli_sequence({make_rational(-1, 2), 0}, 5), ValidationError);
}

TEST(EnumerateSequences, OrderAndCount) {
  const auto range = enumerate_sequences(3);
  EXPECT_EQ(range.size(), 8U);
  std::vector<std::string> seen;
  for (const auto& s : range) seen.push_back(s.to_string());
  EXPECT_EQ(seen, (std::vector<std::string>{"000", "001", "010", "011", "100", "101", "110", "111"}));
}

TEST(EnumerateSequences, ShardsPartitionTheRange) {
  const auto range = enumerate_sequences(10);
  std::set<std::string> all;
  std::uint64_t total = 0;
  for (std::uint64_t k = 0; k < 7; ++k) {
    for (const auto& s : range.shard(k, 7)) {
      all.insert(s.to_string());
      ++total;
    }
  }
  EXPECT_EQ(total, 1024U);
  EXPECT_EQ(all.size(), 1024U);
}

TEST(EnumerateSequences, CapExceeded) {
  EXPECT_THROW(enumerate_sequences(21), CapExceeded);
  EXPECT_THROW(enumerate_sequences(12, 11), CapExceeded);
  EXPECT_NO_THROW(enumerate_sequences(12, 12));
}

TEST(WorstSequence, HatAllZerosIsWorst) {
  const InstanceParams p{24, 3, 6};
  const auto w = worst_sequence(build_hat_policy(p), p);
  EXPECT_EQ(w.value, make_rational(7, 2));
  EXPECT_EQ(w.sigma, AdversarySequence(24));
}

TEST(WorstSequence, IdleScheduleIsIndifferent) {
  const InstanceParams p{11, 1, 2};
  const auto w = worst_sequence(build_idle_policy(p), p);
  EXPECT_EQ(w.value, make_rational(12, 2));
}

TEST(WorstSequence, MatchesEnumeration) {
  std::mt19937_64 rng(21);
  for (const InstanceParams p : {InstanceParams{8, 1, 2}, InstanceParams{10, 2, 3},
                                 InstanceParams{9, 1, 1}, InstanceParams{12, 2, 4}}) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto s = trial == 0 && p.T == 8 ? build_hat_policy(p) : random_feasible(rng, p);
      const auto w = worst_sequence(s, p);
      std::int64_t best = -1;
      for (const auto& sigma : enumerate_sequences(p.T)) {
        best = std::max(best, ref::total(s.to_string(), sigma.to_string()));
      }
      EXPECT_EQ(w.totalAge, best) << s.to_string();
      EXPECT_EQ(ref::total(s.to_string(), w.sigma.to_string()), best);
      EXPECT_EQ(w.value, make_rational(best, p.T));
    }
  }
}
