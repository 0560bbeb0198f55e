#pragma once

// Closed-form bounds and expected-age expressions.
//
// Two quantities share the name x3 in the derivations: the number of sections
// per megasection (MegasectionParams::x3 = T2/T1) and the offset of the
// direct update inside a section (the `offset` argument of
// lemma1_differences). They are kept apart here.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aoi/dynamics.hpp"
#include "aoi/rational.hpp"

namespace aoi {

struct MegasectionParams {
  int x2 = 1;  ///< section length
  int x3 = 1;  ///< sections per megasection

  static MegasectionParams of(const InstanceParams& params);
};

struct ClosedFormReport {
  std::string name;
  std::map<std::string, double> inputs;
  double value = 0.0;
  std::string description;
};

// Competitive-ratio bound of the block policy:
// ((1+T1+T)/(1+T2+T1+T)) * (1 + T2/(T1+1)).
double theorem1_bound(const InstanceParams& params);
Rational theorem1_bound_exact(const InstanceParams& params);

// Universal lower bound on the optimal average age: (1 + T/(T1+T2+1)) / 2.
double optimal_age_lower_bound(const InstanceParams& params);
Rational optimal_age_lower_bound_exact(const InstanceParams& params);

// Block policy under the all-idle adversary: (1 + T/(T1+1)) / 2.
double hat_age_all_zeros(const InstanceParams& params);
Rational hat_age_all_zeros_exact(const InstanceParams& params);

/// E[v_j | v_0] while the cache holds a packet from slot 0 of the section.
/// j = 0 returns v0.
double numerator_recursion(double v0, int j, int x2);

/// E[v_j | v_0] when the cache update waits for the first forwarding slot.
double denominator_recursion(double v0, int j, int x2);

std::pair<double, double> alpha_beta(int x2);
std::pair<double, double> r_s(int x2);
std::pair<double, double> alphabar_betabar(int x2);
std::pair<double, double> rbar_sbar(int x2);

/// Expected total age of one megasection, closed form.
double megasection_numerator(const MegasectionParams& m);
double megasection_denominator(const MegasectionParams& m);

enum class MegasectionKind { Numerator, Denominator };

/// Same totals by chaining the per-section recursions from v_{0,1} = 1.
double megasection_recursion_sum(const MegasectionParams& m, MegasectionKind kind);

double expected_age_check(const InstanceParams& params);
double offline_expected_upper(const InstanceParams& params);
double yao_lower_bound(const InstanceParams& params);

/// Expected-age differences between the section policy and its variant with
/// the left cache update shifted one slot earlier, split by the adversary's
/// actions at the two slots around the shift.
struct Lemma1Differences {
  double S = 0;   ///< E[A~ - A | sigma(t1-1)=0, sigma(t1)=1]
  double S1 = 0;  ///< E[A - A~ | 1,0]
  double S2 = 0;  ///< E[A - A~ | 1,1]
  double S3 = 0;  ///< E[A~ - A | 0,0]
  double total = 0;  ///< combined E[A - A~]
};

Lemma1Differences lemma1_differences(int x2, int offset);

/// Every closed form that applies to `params`.
std::vector<ClosedFormReport> closed_form_reports(const InstanceParams& params);

}  // namespace aoi
