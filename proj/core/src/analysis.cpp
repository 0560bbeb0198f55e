#include "aoi/analysis.hpp"

#include <cmath>
#include <string>

#include "aoi/error.hpp"
#include "aoi/policies.hpp"

namespace aoi {

namespace {

double pow2(double e) { return std::exp2(e); }

void require_x2(int x2) {
  if (x2 < 1) throw ValidationError("section length x2 must be >= 1");
}

void require_valid(const InstanceParams& params) {
  if (auto report = validate_instance(params); !report) {
    throw ValidationError("invalid instance (" + to_string(params) + "): " + report.summary());
  }
}

void require_megasection(const MegasectionParams& m) {
  if (m.x2 < 1 || m.x3 < 1) throw ValidationError("megasection needs x2 >= 1 and x3 >= 1");
}

}  // namespace

MegasectionParams MegasectionParams::of(const InstanceParams& params) {
  require_valid(params);
  const auto g = SectionGeometry::of(params);
  if (g.x2 == 0 || g.x3 == 0) {
    throw ValidationError("megasection geometry needs (T2+1) | (T-T1), T1 >= 1 and T1 | T2: " +
                          to_string(params));
  }
  return {g.x2, g.x3};
}

Rational theorem1_bound_exact(const InstanceParams& params) {
  require_valid(params);
  const auto& [T, T1, T2] = params;
  return make_rational(1 + T1 + T, 1 + T2 + T1 + T) * (1 + make_rational(T2, T1 + 1));
}

double theorem1_bound(const InstanceParams& params) {
  return to_double(theorem1_bound_exact(params));
}

Rational optimal_age_lower_bound_exact(const InstanceParams& params) {
  require_valid(params);
  return (1 + make_rational(params.T, params.T1 + params.T2 + 1)) / 2;
}

double optimal_age_lower_bound(const InstanceParams& params) {
  return to_double(optimal_age_lower_bound_exact(params));
}

Rational hat_age_all_zeros_exact(const InstanceParams& params) {
  require_valid(params);
  if (params.T % (params.T1 + 1) != 0) {
    throw ValidationError("(T1+1) must divide T: " + to_string(params));
  }
  return (1 + make_rational(params.T, params.T1 + 1)) / 2;
}

double hat_age_all_zeros(const InstanceParams& params) {
  return to_double(hat_age_all_zeros_exact(params));
}

double numerator_recursion(double v0, int j, int x2) {
  require_x2(x2);
  if (j < 0 || j > x2) throw ValidationError("slot offset j must lie in 0..x2");
  double v = v0 / pow2(j);
  for (int k = 2; k <= j + 1; ++k) v += k / pow2(j + 2 - k);
  return v;
}

double denominator_recursion(double v0, int j, int x2) {
  require_x2(x2);
  if (j < 0 || j > x2) throw ValidationError("slot offset j must lie in 0..x2");
  double v = (v0 + j) / pow2(j);
  for (int k = 0; k <= j - 1; ++k) v += (j - k) / pow2(k + 1);
  return v;
}

std::pair<double, double> alpha_beta(int x2) {
  require_x2(x2);
  return {2.0 * (1.0 - 1.0 / pow2(x2)), (x2 - 1.0) * x2 / 2.0};
}

std::pair<double, double> r_s(int x2) {
  require_x2(x2);
  return {1.0 / pow2(x2), static_cast<double>(x2)};
}

std::pair<double, double> alphabar_betabar(int x2) {
  require_x2(x2);
  const double p = pow2(x2);
  return {2.0 * (1.0 - 1.0 / p), 4.0 - 2.0 * x2 / p - 4.0 / p + (x2 - 3.0) * x2 / 2.0};
}

std::pair<double, double> rbar_sbar(int x2) {
  require_x2(x2);
  const double p = pow2(x2);
  return {1.0 / p, x2 / p + x2 + 1.0 / p - 1.0};
}

double megasection_numerator(const MegasectionParams& m) {
  require_megasection(m);
  const double x2 = m.x2;
  const double x3 = m.x3;
  const double p = pow2(x2);
  const double pAll = pow2(x2 * x3);
  return x3 * x2 * (x2 - 1) / 2 + 2 * x2 * x3 + 2 - 1 / pAll + (x2 * p / (p - 1)) * (1 / pAll - 1);
}

double megasection_denominator(const MegasectionParams& m) {
  require_megasection(m);
  const double x2 = m.x2;
  const double x3 = m.x3;
  const double p = pow2(x2);
  const double pAll = pow2(x2 * x3);
  return 3 - 2 * x3 / p + 2 * x3 + x2 - 2 / pAll + x3 * x2 * (x2 - 3) / 2 + 2 * x3 * x2 +
         x2 * (p + 1) / (pAll * (p - 1)) - 2 * x2 * p / (p - 1);
}

double megasection_recursion_sum(const MegasectionParams& m, MegasectionKind kind) {
  require_megasection(m);
  auto rec = [&](double v0, int j) {
    return kind == MegasectionKind::Numerator ? numerator_recursion(v0, j, m.x2)
                                              : denominator_recursion(v0, j, m.x2);
  };
  // Slots 0..x2-1 of every section, plus slot x2 of the last one.
  double sum = 0;
  double v0 = 1;
  for (int i = 1; i <= m.x3; ++i) {
    for (int j = 0; j < m.x2; ++j) sum += rec(v0, j);
    const double carry = rec(v0, m.x2);
    if (i == m.x3) sum += carry;
    v0 = carry;
  }
  return sum;
}

double expected_age_check(const InstanceParams& params) {
  const auto m = MegasectionParams::of(params);
  return static_cast<double>(params.T1) / params.T * megasection_numerator(m);
}

double offline_expected_upper(const InstanceParams& params) {
  const auto m = MegasectionParams::of(params);
  return static_cast<double>(params.T1) / params.T * megasection_denominator(m);
}

double yao_lower_bound(const InstanceParams& params) {
  return expected_age_check(params) / offline_expected_upper(params);
}

Lemma1Differences lemma1_differences(int x2, int offset) {
  require_x2(x2);
  if (offset < 1 || offset > x2) throw ValidationError("offset must lie in 1..x2");
  const double a = 1.0 / pow2(x2 - offset + 1);
  const double b = 1.0 / pow2(offset);
  Lemma1Differences d;
  d.S = 1.5 * x2 + a - offset * a - 0.5;
  d.S1 = 2.0 * x2 - 2.0 * x2 * b - 0.5 - a;
  d.S2 = -a - 0.5;
  d.S3 = x2 + 2.0 * b + a - 2.5;
  d.total = 2.0 - x2 / 2.0 - 2.0 / pow2(x2 - offset) - 2.0 * x2 * b + offset * a - 2.0 * b;
  return d;
}

std::vector<ClosedFormReport> closed_form_reports(const InstanceParams& params) {
  require_valid(params);
  const std::map<std::string, double> in{
      {"T", params.T}, {"T1", params.T1}, {"T2", params.T2}};
  std::vector<ClosedFormReport> out;
  out.push_back({"theorem1_bound", in, theorem1_bound(params),
                 "competitive-ratio upper bound of the block policy"});
  out.push_back({"optimal_age_lower_bound", in, optimal_age_lower_bound(params),
                 "lower bound on any schedule's average age"});
  const auto g = SectionGeometry::of(params);
  if (g.blockLen != 0) {
    out.push_back({"hat_age_all_zeros", in, hat_age_all_zeros(params),
                   "block policy average age under the idle adversary"});
  }
  if (g.x2 != 0 && g.x3 != 0) {
    auto mi = in;
    mi["x2"] = g.x2;
    mi["x3"] = g.x3;
    out.push_back({"expected_age_check", mi, expected_age_check(params),
                   "megasection policy expected age under fair coin flips"});
    out.push_back({"offline_expected_upper", mi, offline_expected_upper(params),
                   "upper bound on the expected offline-optimal age"});
    out.push_back({"yao_lower_bound", mi, yao_lower_bound(params),
                   "lower bound on the best randomized competitive ratio"});
  }
  return out;
}

}  // namespace aoi
