#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "aoi/analysis.hpp"
#include "aoi/error.hpp"
#include "aoi/estimator.hpp"
#include "aoi/policies.hpp"
#include "reference_model.hpp"

using namespace aoi;

namespace {

Schedule random_feasible(std::mt19937_64& rng, const InstanceParams& p) {
  for (;;) {
    Schedule s(p.T);
    for (int t = 0; t < p.T; ++t) {
      const auto k = rng() % 5;
      s[t] = k == 0 ? SourceAction::ToCache : k == 1 ? SourceAction::ToUser : SourceAction::Idle;
    }
    if (validate_schedule(s, p, true).ok()) return s;
  }
}

Rational to_lib(const ref::Rational& r) {
  return Rational(BigInt(boost::multiprecision::numerator(r)),
                  BigInt(boost::multiprecision::denominator(r)));
}

}  // namespace

TEST(ExpectationMethod, Names) {
  EXPECT_EQ(to_string(ExpectationMethod::MonteCarlo), "monte-carlo");
  EXPECT_EQ(parse_expectation_method("mc"), ExpectationMethod::MonteCarlo);
  EXPECT_EQ(parse_expectation_method("exact"), ExpectationMethod::Propagation);
  EXPECT_EQ(parse_expectation_method("enumeration"), ExpectationMethod::Enumeration);
  EXPECT_THROW(parse_expectation_method("guess"), ValidationError);
}

TEST(ExactExpectedAge, DegenerateProbabilitiesMatchSimulation) {
  for (const InstanceParams p : {InstanceParams{24, 3, 6}, InstanceParams{27, 2, 4}}) {
    const auto s = p.T == 24 ? build_hat_policy(p) : build_check_policy(p);
    EXPECT_EQ(exact_expected_age(s, p, make_rational(0)).mean,
              simulate(s, AdversarySequence(p.T), p).averageAge);
    EXPECT_EQ(exact_expected_age(s, p, make_rational(1)).mean,
              simulate(s, AdversarySequence(p.T, AdversaryAction::Forward), p).averageAge);
  }
}

TEST(ExactExpectedAge, CheckPolicySmallInstance) {
  const InstanceParams p{7, 1, 1};
  const auto s = build_check_policy(p);
  const auto exact = exact_expected_age(s, p).mean;
  EXPECT_EQ(exact, enumerated_expected_age(s, p).mean);
  EXPECT_EQ(exact, to_lib(ref::expected_average(s.to_string(), ref::Rational(1, 2))));
  EXPECT_EQ(exact, make_rational(111, 56));
}

TEST(ExactExpectedAge, MatchesReferenceOnRandomSchedules) {
  std::mt19937_64 rng(41);
  const InstanceParams p{10, 2, 3};
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_feasible(rng, p);
    for (const auto& q : {make_rational(0), make_rational(1, 4), make_rational(1, 2),
                          make_rational(2, 3), make_rational(1)}) {
      const auto want = to_lib(ref::expected_average(
          s.to_string(), ref::Rational(boost::multiprecision::numerator(q).convert_to<int>(),
                                       boost::multiprecision::denominator(q).convert_to<int>())));
      EXPECT_EQ(exact_expected_age(s, p, q).mean, want) << s.to_string();
      EXPECT_EQ(enumerated_expected_age(s, p, q, 20, 3).mean, want) << s.to_string();
    }
  }
}

TEST(ExactExpectedAge, Errors) {
  EXPECT_THROW(exact_expected_age(Schedule(5), {6, 1, 2}), ValidationError);
  EXPECT_THROW(exact_expected_age(Schedule(6), {6, 1, 2}, make_rational(2)), ValidationError);
  EXPECT_THROW(enumerated_expected_age(Schedule(21), {21, 1, 2}), CapExceeded);
}

TEST(ConditionalExpectation, NoFixedBitsIsUnconditional) {
  const InstanceParams p{27, 2, 4};
  const auto s = build_check_policy(p);
  EXPECT_EQ(exact_expected_age_conditional(s, p, {}).mean, exact_expected_age(s, p).mean);
}

TEST(ConditionalExpectation, AllBitsFixedIsSimulation) {
  std::mt19937_64 rng(42);
  const InstanceParams p{12, 2, 3};
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_feasible(rng, p);
    AdversarySequence sigma(p.T);
    std::map<int, AdversaryAction> fixed;
    for (int t = 0; t < p.T; ++t) {
      sigma[t] = rng() & 1U ? AdversaryAction::Forward : AdversaryAction::Idle;
      fixed[t] = sigma[t];
    }
    EXPECT_EQ(exact_expected_age_conditional(s, p, fixed).mean, simulate(s, sigma, p).averageAge);
  }
}

TEST(ConditionalExpectation, AveragesOverTheFixedBit) {
  const InstanceParams p{10, 2, 3};
  const auto s = Schedule::parse("C..U.C..UC");
  const auto both = exact_expected_age_conditional(s, p, {{4, AdversaryAction::Forward}}).mean +
                    exact_expected_age_conditional(s, p, {{4, AdversaryAction::Idle}}).mean;
  EXPECT_EQ(both / 2, exact_expected_age(s, p).mean);
}

TEST(MonteCarlo, WithinThreeStandardErrors) {
  const InstanceParams p{27, 2, 4};
  const auto s = build_check_policy(p);
  const auto exact = exact_expected_age(s, p).value();
  const auto mc = mc_expected_age(s, p, {make_rational(1, 2), 5}, 100000);
  EXPECT_EQ(mc.samples, 100000U);
  EXPECT_GT(mc.standardError, 0.0);
  EXPECT_LE(std::abs(mc.value() - exact), 3 * mc.standardError);
}

TEST(MonteCarlo, ZeroVarianceAtDegenerateProbability) {
  const InstanceParams p{24, 3, 6};
  const auto s = build_hat_policy(p);
  const auto mc = mc_expected_age(s, p, {make_rational(0), 5}, 5000);
  EXPECT_EQ(mc.mean, make_rational(7, 2));
  EXPECT_EQ(mc.standardError, 0.0);
}

TEST(MonteCarlo, ReproducibleAndWorkerIndependent) {
  const InstanceParams p{27, 2, 4};
  const auto s = build_check_policy(p);
  const SequenceDistribution d{make_rational(1, 3), 77};
  const auto a = mc_expected_age(s, p, d, 20000, 1);
  const auto b = mc_expected_age(s, p, d, 20000, 4);
  const auto c = mc_expected_age(s, p, d, 20000, 1);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.standardError, b.standardError);
  EXPECT_EQ(a.mean, c.mean);
  EXPECT_NE(a.mean, mc_expected_age(s, p, {d.p, 78}, 20000).mean);
}

TEST(MonteCarlo, ChunkSeedsDiffer) {
  EXPECT_NE(chunk_seed(0, 0), chunk_seed(0, 1));
  EXPECT_NE(chunk_seed(0, 0), chunk_seed(1, 0));
  EXPECT_EQ(chunk_seed(9, 3), chunk_seed(9, 3));
}

TEST(CompetitiveRatio, HatWithinBlockBound) {
  const InstanceParams p{8, 1, 2};
  const auto r = exact_competitive_ratio(build_hat_policy(p), p, true, 20, "hat");
  EXPECT_LE(r.ratio, theorem1_bound_exact(p));
  EXPECT_EQ(r.policyName, "hat");
  ASSERT_TRUE(r.argmaxSigma.has_value());
  const auto opt = offline_optimal(*r.argmaxSigma, p);
  EXPECT_EQ(r.denominator, opt.value);
  EXPECT_EQ(r.numerator, simulate(build_hat_policy(p), *r.argmaxSigma, p).averageAge);
  EXPECT_EQ(r.ratio, r.numerator / r.denominator);
}

TEST(CompetitiveRatio, RatioIsMaximumOverSequences) {
  const InstanceParams p{9, 1, 2};
  const auto s = Schedule::parse("C..UC....");
  const auto r = exact_competitive_ratio(s, p);
  Rational best = 0;
  for (const auto& sigma : enumerate_sequences(p.T)) {
    const auto q = simulate(s, sigma, p).averageAge / offline_optimal(sigma, p).value;
    if (q > best) best = q;
  }
  EXPECT_EQ(r.ratio, best);
}

TEST(CompetitiveRatio, TrivialInstancesHaveRatioOne) {
  EXPECT_EQ(exact_competitive_ratio(Schedule::parse("C."), {2, 0, 1}).ratio, make_rational(1));
  EXPECT_EQ(exact_competitive_ratio(Schedule(6), {6, 0, 0}).ratio, make_rational(1));
}

TEST(CompetitiveRatio, CapExceeded) {
  const InstanceParams p{30, 1, 2};
  EXPECT_THROW(exact_competitive_ratio(Schedule(30), p), CapExceeded);
}

TEST(YaoEmpirical, SmallInstanceValue) {
  const InstanceParams p{7, 1, 1};
  const auto r = yao_bound_empirical(p);
  EXPECT_EQ(r.numerator, make_rational(111, 56));
  EXPECT_EQ(r.denominator, make_rational(789, 448));
  EXPECT_EQ(r.ratio, make_rational(296, 263));
  const auto check = exact_competitive_ratio(build_check_policy(p), p);
  EXPECT_LE(r.ratio, check.ratio);
}

TEST(YaoEmpirical, DenominatorIsMeanOfOptima) {
  const InstanceParams p{8, 1, 2};
  Rational sum = 0;
  for (const auto& sigma : enumerate_sequences(p.T)) sum += offline_optimal(sigma, p).value;
  EXPECT_EQ(expected_optimal_age(p), sum / 256);
}

TEST(YaoEmpirical, MonteCarloApproachesEnumeration) {
  const InstanceParams p{7, 1, 1};
  YaoOptions o;
  o.method = ExpectationMethod::MonteCarlo;
  o.samples = 20000;
  o.seed = 3;
  const auto mc = yao_bound_empirical(p, o);
  const auto exact = yao_bound_empirical(p);
  EXPECT_LE(std::abs(to_double(mc.denominator) - to_double(exact.denominator)),
            4 * mc.denominatorStdError);
  o.workers = 3;
  EXPECT_EQ(yao_bound_empirical(p, o).ratio, mc.ratio);
  o.method = ExpectationMethod::Propagation;
  EXPECT_THROW(yao_bound_empirical(p, o), ValidationError);
}

TEST(BestDeterministic, NoBetterThanCheckOnSmallInstances) {
  for (const InstanceParams p : {InstanceParams{7, 1, 1}, InstanceParams{13, 1, 2}}) {
    const auto best = best_deterministic_under_P1(p);
    ASSERT_TRUE(best.checkExpectation.has_value());
    EXPECT_LE(best.expectation.mean, best.checkExpectation->mean);
    EXPECT_EQ(best.counterexample, best.expectation.mean < best.checkExpectation->mean);
    EXPECT_TRUE(validate_schedule(best.schedule, p, true).ok());
    EXPECT_EQ(exact_expected_age(best.schedule, p).mean, best.expectation.mean);
  }
}

TEST(BestDeterministic, MatchesReferenceSearch) {
  const InstanceParams p{6, 1, 2};
  const auto best = best_deterministic_under_P1(p);
  ref::Rational want = -1;
  for (const auto& s : ref::all_schedules(6, 1, 2, true)) {
    const auto e = ref::expected_average(s, ref::Rational(1, 2));
    if (want < 0 || e < want) want = e;
  }
  EXPECT_EQ(best.expectation.mean, to_lib(want));
  EXPECT_EQ(best.candidates, ref::all_schedules(6, 1, 2, true).size());
}

TEST(BestDeterministic, DegenerateBudgets) {
  const auto cacheOnly = best_deterministic_under_P1({8, 0, 2});
  EXPECT_EQ(cacheOnly.schedule.user_updates(), 0);
  EXPECT_FALSE(cacheOnly.checkExpectation.has_value());
  const auto none = best_deterministic_under_P1({8, 0, 0});
  EXPECT_EQ(none.expectation.mean, make_rational(9, 2));
  EXPECT_EQ(none.candidates, 1U);
  EXPECT_THROW(best_deterministic_under_P1({20, 3, 6}, true, 1000), CapExceeded);
}
