#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "aoi/dynamics.hpp"
#include "aoi/error.hpp"
#include "aoi/policies.hpp"
#include "reference_model.hpp"

using namespace aoi;

namespace {

Schedule random_schedule(std::mt19937_64& rng, int T) {
  Schedule s(T);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int t = 0; t < T; ++t) s[t] = static_cast<SourceAction>(pick(rng));
  return s;
}

AdversarySequence random_sequence(std::mt19937_64& rng, int T) {
  AdversarySequence s(T);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < T; ++t) s[t] = coin(rng) ? AdversaryAction::Forward : AdversaryAction::Idle;
  return s;
}

std::vector<int> simulate_ages(const std::string& schedule, const std::string& sigma) {
  const int T = static_cast<int>(schedule.size());
  return simulate(Schedule::parse(schedule), AdversarySequence::parse(sigma), {T, 0, 0}).ages;
}

}  // namespace

TEST(ValidateInstance, AcceptsFigureInstances) {
  EXPECT_TRUE(validate_instance({24, 3, 6}).ok());
  EXPECT_TRUE(validate_instance({27, 2, 4}).ok());
}

TEST(ValidateInstance, RejectsBudgetAtLeastHorizon) {
  const auto r = validate_instance({5, 3, 3});
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.summary().find("T1+T2"), std::string::npos) << r.summary();
}

TEST(ValidateInstance, RejectsNegativeAndInvertedBudgets) {
  EXPECT_FALSE(validate_instance({0, 0, 0}).ok());
  EXPECT_FALSE(validate_instance({5, -1, 1}).ok());
  EXPECT_FALSE(validate_instance({10, 3, 2}).ok());
  EXPECT_TRUE(validate_instance({10, 2, 2}).ok());
}

TEST(ValidateSchedule, HatPolicyIsValid) {
  const InstanceParams p{24, 3, 6};
  EXPECT_TRUE(validate_schedule(build_hat_policy(p), p).ok());
}

TEST(ValidateSchedule, TwoUserUpdatesWithoutCacheUpdate) {
  const InstanceParams p{6, 2, 3};
  const auto s = Schedule::parse("U..U..");
  EXPECT_FALSE(validate_schedule(s, p, true).ok());
  EXPECT_TRUE(validate_schedule(s, p, false).ok());
  EXPECT_TRUE(validate_schedule(Schedule::parse("U.C.U."), p, true).ok());
}

TEST(ValidateSchedule, AllIdleIsValid) {
  const InstanceParams p{8, 1, 2};
  EXPECT_TRUE(validate_schedule(Schedule(8), p).ok());
}

TEST(ValidateSchedule, BudgetOverrunsAreListed) {
  const InstanceParams p{8, 1, 2};
  const auto r = validate_schedule(Schedule::parse("UCUCCC.."), p, true);
  EXPECT_GE(r.violations.size(), 2U);
}

TEST(ValidateSchedule, LengthMismatchThrows) {
  EXPECT_THROW(validate_schedule(Schedule(7), {8, 1, 2}), ValidationError);
}

TEST(Step, FreshCacheForwardGivesAgeOne) {
  const SystemState s{5, 1, 2, 3};
  const auto next = step(s, SourceAction::ToCache, AdversaryAction::Forward);
  EXPECT_EQ(next.cacheGen, 5);
  EXPECT_EQ(next.userGen, 5);
  EXPECT_EQ(next.now, 6);
  EXPECT_EQ(next.age(), 1);
}

TEST(Step, ForgedStaleForwardRaisesAge) {
  const int t = 10;
  const SystemState s{t, t - 4, t - 2, t - 2};
  EXPECT_EQ(s.age(), 2);
  const auto next = step(s, SourceAction::Idle, AdversaryAction::Forward);
  EXPECT_EQ(next.userGen, t - 4);
  EXPECT_EQ(next.userStamp, t);
  EXPECT_EQ(next.age(), 5);
}

TEST(Step, SourcePrevailsOverForward) {
  const SystemState s{7, 3, 1, 6};
  const auto next = step(s, SourceAction::ToUser, AdversaryAction::Forward);
  EXPECT_EQ(next.userGen, 7);
  EXPECT_EQ(next.userStamp, 7);
}

TEST(Step, EqualStampIsRejected) {
  // Not reachable through simulate; pins the tie rule.
  const SystemState s{4, 2, 0, 4};
  const auto next = step(s, SourceAction::Idle, AdversaryAction::Forward);
  EXPECT_EQ(next.userGen, 0);
}

TEST(Step, IdleAdversaryDeliversNothing) {
  const SystemState s{4, 3, 0, 0};
  const auto next = step(s, SourceAction::Idle, AdversaryAction::Idle);
  EXPECT_EQ(next.userGen, 0);
  EXPECT_EQ(next.cacheGen, 3);
}

TEST(Simulate, HatAllZerosAverageSevenHalves) {
  const InstanceParams p{24, 3, 6};
  const auto trace = simulate(build_hat_policy(p), AdversarySequence(24), p);
  EXPECT_EQ(trace.averageAge, make_rational(7, 2));
}

TEST(Simulate, IdleScheduleAgesCountUp) {
  const InstanceParams p{9, 1, 2};
  for (auto bit : {AdversaryAction::Idle, AdversaryAction::Forward}) {
    const auto trace = simulate(Schedule(9), AdversarySequence(9, bit), p);
    for (int t = 0; t < 9; ++t) EXPECT_EQ(trace.ages[static_cast<std::size_t>(t)], t + 1);
    EXPECT_EQ(trace.averageAge, make_rational(10, 2));
  }
}

TEST(Simulate, CheckPolicyAllOnesMatchesHandExecution) {
  const InstanceParams p{27, 2, 4};
  const auto s = build_check_policy(p);
  const auto ones = AdversarySequence(27, AdversaryAction::Forward);
  const auto trace = simulate(s, ones, p);
  // Cache updates at 4,10,15,21 relay at once; direct updates at 9,20.
  const std::vector<int> expected{1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 1, 1, 2, 3, 4, 5,
                                  1, 2, 3, 4, 5, 1, 1, 2, 3, 4, 5};
  EXPECT_EQ(trace.ages, expected);
  EXPECT_EQ(trace.ages, ref::ages(s.to_string(), ones.to_string()));
}

TEST(Simulate, RejectsLengthMismatch) {
  EXPECT_THROW(simulate(Schedule(5), AdversarySequence(6), {5, 1, 2}), ValidationError);
  EXPECT_THROW(simulate(Schedule(5), AdversarySequence(5), {6, 1, 2}), ValidationError);
}

TEST(AverageAge, ExactMean) {
  const std::vector<int> a{1, 2, 3, 4};
  EXPECT_EQ(average_age(a), make_rational(5, 2));
  const std::vector<int> ones(7, 1);
  EXPECT_EQ(average_age(ones), make_rational(1));
}

TEST(AverageAge, EmptyThrows) {
  const std::vector<int> none;
  EXPECT_THROW(average_age(none), Error);
  EXPECT_THROW(average_age(AgeTrace{}), Error);
}

TEST(SimulateProperty, MatchesReferenceModel) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int T = 1 + static_cast<int>(rng() % 30);
    const auto s = random_schedule(rng, T);
    const auto sigma = random_sequence(rng, T);
    EXPECT_EQ(simulate_ages(s.to_string(), sigma.to_string()),
              ref::ages(s.to_string(), sigma.to_string()))
        << s.to_string() << " / " << sigma.to_string();
    EXPECT_EQ(total_age(s.actions(), sigma), ref::total(s.to_string(), sigma.to_string()));
  }
}

TEST(SimulateProperty, AgeStepLaw) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const int T = 2 + static_cast<int>(rng() % 25);
    const auto s = random_schedule(rng, T);
    const auto sigma = random_sequence(rng, T);
    SystemState st;
    for (int t = 0; t < T; ++t) {
      st.now = t;
      const int before = st.age();
      const auto next = step(st, s[t], sigma[t]);
      SystemState probe = next;
      probe.now = t + 1;
      const int after = probe.age();
      const bool plusOne = after == before + 1;
      const bool direct = after == 1 && s[t] == SourceAction::ToUser;
      const bool forged = sigma.forwards(t) && after == t + 1 - next.cacheGen;
      EXPECT_TRUE(plusOne || direct || forged) << "slot " << t;
      EXPECT_GE(next.userStamp, st.userStamp);
      EXPECT_LE(next.userGen, next.userStamp);
      st = next;
    }
  }
}

TEST(SimulateProperty, AllZerosIgnoresCacheUpdates) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int T = 1 + static_cast<int>(rng() % 20);
    auto s = random_schedule(rng, T);
    auto stripped = s;
    for (int t = 0; t < T; ++t) {
      if (stripped[t] == SourceAction::ToCache) stripped[t] = SourceAction::Idle;
    }
    const AdversarySequence zeros(T);
    const InstanceParams p{T, 0, 0};
    EXPECT_EQ(simulate(s, zeros, p).ages, simulate(stripped, zeros, p).ages);
  }
}

TEST(SimulateProperty, ImmediateRelayEqualsDirectUpdate) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const int T = 1 + static_cast<int>(rng() % 20);
    Schedule s(T);
    AdversarySequence sigma(T);
    Schedule direct(T);
    for (int t = 0; t < T; ++t) {
      if (rng() % 3 == 0) {
        s[t] = SourceAction::ToCache;
        sigma[t] = AdversaryAction::Forward;
        direct[t] = SourceAction::ToUser;
      }
    }
    const InstanceParams p{T, 0, 0};
    EXPECT_EQ(simulate(s, sigma, p).ages, simulate(direct, AdversarySequence(T), p).ages);
  }
}

TEST(SimulateProperty, Deterministic) {
  std::mt19937_64 rng(15);
  const auto s = random_schedule(rng, 40);
  const auto sigma = random_sequence(rng, 40);
  const InstanceParams p{40, 0, 0};
  EXPECT_EQ(simulate(s, sigma, p).ages, simulate(s, sigma, p).ages);
}

TEST(Schedule, ParseRoundTrip) {
  const auto s = Schedule::parse("..U.C...");
  EXPECT_EQ(s.to_string(), "..U.C...");
  EXPECT_EQ(s.user_updates(), 1);
  EXPECT_EQ(s.cache_updates(), 1);
  EXPECT_EQ(s.slots_of(SourceAction::ToUser), std::vector<int>{2});
  EXPECT_THROW(Schedule::parse("..X"), ValidationError);
}

TEST(AdversarySequence, ParseAndIndex) {
  const auto s = AdversarySequence::parse("0110");
  EXPECT_EQ(s.to_string(), "0110");
  EXPECT_EQ(s.forward_count(), 2);
  EXPECT_EQ(AdversarySequence::from_index(4, 6), s);
  EXPECT_THROW(AdversarySequence::parse("012"), ValidationError);
}

TEST(TraceCsv, HeaderRowsAndAverage) {
  const auto s = Schedule::parse("U.C");
  const auto sigma = AdversarySequence::parse("001");
  const auto trace = simulate(s, sigma, {3, 1, 1});
  std::ostringstream out;
  write_trace_csv(out, trace, s, sigma);
  EXPECT_EQ(out.str(), "t,age,src_action,adv_action\n0,1,U,0\n1,1,.,0\n2,2,C,1\n# average=4/3\n");
}
