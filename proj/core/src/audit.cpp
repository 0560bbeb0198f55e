#include "aoi/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

#include "aoi/adversaries.hpp"
#include "aoi/error.hpp"
#include "aoi/estimator.hpp"
#include "aoi/oracle.hpp"
#include "parallel.hpp"

namespace aoi {

namespace {

std::string megasection_label(const MegasectionParams& m) {
  return "x2=" + std::to_string(m.x2) + ";x3=" + std::to_string(m.x3);
}

std::string instance_label(const InstanceParams& p) {
  return "T=" + std::to_string(p.T) + ";T1=" + std::to_string(p.T1) + ";T2=" + std::to_string(p.T2);
}

AuditRow equality_row(std::string formula, std::string params, double closed, double oracle,
                      Verdict onMismatch = Verdict::Mismatch) {
  const double diff = std::abs(closed - oracle);
  return {std::move(formula), std::move(params), closed, oracle, diff,
          diff <= kAuditTolerance ? Verdict::Pass : onMismatch};
}

// `holds` says whether the inequality the closed form claims is satisfied.
AuditRow bound_row(std::string formula, std::string params, double closed, double oracle,
                   bool holds) {
  return {std::move(formula), std::move(params), closed, oracle, std::abs(closed - oracle),
          holds ? Verdict::Holds : Verdict::Violated};
}

std::int64_t sum_slots(const Schedule& s, const AdversarySequence& sigma, int first, int last) {
  SystemState state;
  std::int64_t sum = 0;
  for (int t = 0; t <= last; ++t) {
    state.now = t;
    if (t >= first) sum += state.age();
    state = step(state, s[t], sigma[t]);
  }
  return sum;
}

void audit_constants(int x2, std::vector<AuditRow>& rows) {
  const std::string label = "x2=" + std::to_string(x2);
  for (const auto kind : {MegasectionKind::Numerator, MegasectionKind::Denominator}) {
    const bool num = kind == MegasectionKind::Numerator;
    auto rec = [&](double v0, int j) {
      return num ? numerator_recursion(v0, j, x2) : denominator_recursion(v0, j, x2);
    };
    double alpha = 0;
    double beta = 0;
    for (int j = 0; j < x2; ++j) {
      alpha += rec(1, j) - rec(0, j);
      beta += rec(0, j);
    }
    const double r = rec(1, x2) - rec(0, x2);
    const double s = rec(0, x2);
    const auto [ca, cb] = num ? alpha_beta(x2) : alphabar_betabar(x2);
    const auto [cr, cs] = num ? r_s(x2) : rbar_sbar(x2);
    const std::string suffix = num ? "" : "_bar";
    rows.push_back(equality_row("alpha" + suffix, label, ca, alpha));
    rows.push_back(equality_row("beta" + suffix, label, cb, beta));
    rows.push_back(equality_row("r" + suffix, label, cr, r));
    rows.push_back(equality_row("s" + suffix, label, cs, s));
  }
}

void audit_megasection(const MegasectionParams& m, int workers, std::vector<AuditRow>& rows) {
  const auto label = megasection_label(m);
  const double num = to_double(megasection_oracle(m, MegasectionKind::Numerator, workers));
  const double den = to_double(megasection_oracle(m, MegasectionKind::Denominator, workers));
  rows.push_back(equality_row("megasection_numerator", label, megasection_numerator(m), num));
  rows.push_back(equality_row("megasection_numerator_recursion", label,
                              megasection_recursion_sum(m, MegasectionKind::Numerator), num));
  rows.push_back(equality_row("megasection_denominator", label, megasection_denominator(m), den));
  rows.push_back(equality_row("megasection_denominator_recursion", label,
                              megasection_recursion_sum(m, MegasectionKind::Denominator), den));
}

void audit_instance(const InstanceParams& p, int cap, std::vector<AuditRow>& rows) {
  const auto label = instance_label(p);
  const auto g = SectionGeometry::of(p);
  const bool check = g.x2 != 0 && g.x3 != 0;
  if (check) {
    const double yao = yao_lower_bound(p);
    const double t1 = theorem1_bound(p);
    rows.push_back(bound_row("yao_lower_bound<=theorem1_bound", label, yao, t1,
                             yao <= t1 + kAuditTolerance));
  }
  if (p.T > cap) return;

  const auto totals = offline_optimal_totals(p, true, cap);
  std::int64_t minTotal = totals.front();
  for (auto v : totals) minTotal = std::min(minTotal, v);
  const double lower = optimal_age_lower_bound(p);
  const double minOpt = static_cast<double>(minTotal) / p.T;
  rows.push_back(bound_row("optimal_age_lower_bound", label, lower, minOpt,
                           minOpt >= lower - kAuditTolerance));

  if (g.blockLen != 0) {
    const auto hat = build_hat_policy(p);
    const auto zeros = constant_sequence(p.T, AdversaryAction::Idle);
    rows.push_back(equality_row("hat_age_all_zeros", label, hat_age_all_zeros(p),
                                to_double(simulate(hat, zeros, p).averageAge)));
    const double bound = theorem1_bound(p);
    const double ratio = exact_competitive_ratio(hat, p, true, cap, "hat").value();
    rows.push_back(bound_row("theorem1_bound", label, bound, ratio,
                             ratio <= bound + kAuditTolerance));
  }

  if (check) {
    const double exact = exact_expected_age(build_check_policy(p), p).value();
    rows.push_back(equality_row("expected_age_check", label, expected_age_check(p), exact,
                                Verdict::Gap));
    const double upper = offline_expected_upper(p);
    const double opt = to_double(expected_optimal_age(p, true, cap));
    rows.push_back(bound_row("offline_expected_upper", label, upper, opt,
                             upper >= opt - kAuditTolerance));
    const double yao = yao_bound_empirical(p, {.cap = cap}).value();
    rows.push_back(equality_row("yao_lower_bound", label, yao_lower_bound(p), yao, Verdict::Gap));
  }
}

void audit_lemma1(int x2, int offset, std::vector<AuditRow>& rows) {
  const auto audit = lemma1_audit(x2, offset);
  const auto closed = lemma1_differences(x2, offset);
  const std::string label = "x2=" + std::to_string(x2) + ";offset=" + std::to_string(offset);
  rows.push_back(equality_row("lemma1_S", label, closed.S, to_double(audit.S)));
  rows.push_back(equality_row("lemma1_S1", label, closed.S1, to_double(audit.S1)));
  rows.push_back(equality_row("lemma1_S2", label, closed.S2, to_double(audit.S2)));
  rows.push_back(equality_row("lemma1_S3", label, closed.S3, to_double(audit.S3)));
  rows.push_back(equality_row("lemma1_total", label, closed.total, to_double(audit.total)));
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MegasectionHarness megasection_harness(const MegasectionParams& m) {
  if (m.x2 < 1 || m.x3 < 1) throw ValidationError("megasection needs x2 >= 1 and x3 >= 1");
  MegasectionHarness h;
  h.layout.x2 = m.x2;
  h.layout.ends.push_back(1);
  for (int i = 1; i < m.x3; ++i) h.layout.ends.push_back(1 + i * m.x2);
  const int last = 1 + m.x3 * m.x2 + 1;
  h.layout.ends.push_back(last);
  h.layout.userSlots = {0, last - 1};
  h.lastSlot = last;
  h.T = last + 1;

  h.fixedSchedule = Schedule(h.T);
  for (int u : h.layout.userSlots) h.fixedSchedule[u] = SourceAction::ToUser;
  for (int e : h.layout.ends) h.fixedSchedule[e] = SourceAction::ToCache;
  return h;
}

Rational megasection_oracle(const MegasectionParams& m, MegasectionKind kind, int workers) {
  const auto h = megasection_harness(m);
  const auto range = enumerate_sequences(h.T, 62);
  const std::size_t shards = std::min<std::uint64_t>(range.size(), 64);
  std::vector<std::int64_t> partial(shards, 0);
  detail::parallel_for(shards, workers, [&](std::size_t k) {
    std::int64_t sum = 0;
    for (const auto& sigma : range.shard(k, shards)) {
      const auto s = kind == MegasectionKind::Numerator
                         ? h.fixedSchedule
                         : place_clairvoyant_updates(h.T, h.layout, sigma);
      sum += sum_slots(s, sigma, h.firstSlot, h.lastSlot);
    }
    partial[k] = sum;
  });
  std::int64_t total = 0;
  for (auto v : partial) total += v;
  return Rational(BigInt(total), BigInt(range.size()));
}

Lemma1Audit lemma1_audit(int x2, int offset) {
  if (x2 < 2) throw ValidationError("the shift comparison needs x2 >= 2");
  if (offset < 1 || offset > x2) throw ValidationError("offset must lie in 1..x2");
  Lemma1Audit a;
  a.params = {4 * x2 + 2, 2, 3};
  a.t1 = x2 - 1;
  const int users[] = {a.t1 + offset, a.t1 + x2 + 2};
  a.bar = build_bar_policy(a.params, users);
  a.tilde = shift_cache_update(a.bar, 1, -1);

  auto diff = [&](AdversaryAction before, AdversaryAction at) -> Rational {
    const std::map<int, AdversaryAction> fixed{{a.t1 - 1, before}, {a.t1, at}};
    const auto bar = exact_expected_age_conditional(a.bar, a.params, fixed).mean;
    const auto tilde = exact_expected_age_conditional(a.tilde, a.params, fixed).mean;
    return (bar - tilde) * a.params.T;
  };
  using enum AdversaryAction;
  a.S = -diff(Idle, Forward);
  a.S1 = diff(Forward, Idle);
  a.S2 = diff(Forward, Forward);
  a.S3 = -diff(Idle, Idle);
  a.total = (exact_expected_age(a.bar, a.params).mean - exact_expected_age(a.tilde, a.params).mean) *
            a.params.T;
  return a;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Gap: return "gap";
  }
  return "unknown";
}

AuditGrid default_audit_grid() {
  AuditGrid grid;
  for (int x2 = 1; x2 <= 4; ++x2) {
    for (int x3 = 1; x3 <= 3; ++x3) {
      grid.megasections.push_back({x2, x3});
      grid.instances.push_back({(x3 + 1) * x2 + 1, 1, x3});
    }
  }
  grid.instances.push_back({24, 3, 6});
  for (int x2 = 2; x2 <= 5; ++x2) {
    for (int offset = 1; offset <= x2; ++offset) grid.lemma1Points.emplace_back(x2, offset);
  }
  return grid;
}

std::vector<AuditRow> audit_formulas(const AuditGrid& grid, int workers) {
  std::vector<AuditRow> rows;
  std::vector<int> seen;
  for (const auto& m : grid.megasections) {
    if (std::find(seen.begin(), seen.end(), m.x2) == seen.end()) {
      seen.push_back(m.x2);
      audit_constants(m.x2, rows);
    }
  }
  for (const auto& m : grid.megasections) audit_megasection(m, workers, rows);
  for (const auto& p : grid.instances) {
    if (auto report = validate_instance(p); !report) {
      throw ValidationError("audit instance " + instance_label(p) + ": " + report.summary());
    }
    audit_instance(p, grid.enumerationCap, rows);
  }
  for (const auto& [x2, offset] : grid.lemma1Points) audit_lemma1(x2, offset, rows);
  return rows;
}

void write_audit_csv(std::ostream& out, const std::vector<AuditRow>& rows) {
  out << "formula,params,closed_form,oracle,abs_diff,verdict\n";
  for (const auto& r : rows) {
    out << r.formula << ',' << r.params << ',' << format_number(r.closedForm) << ','
        << format_number(r.oracle) << ',' << format_number(r.absDiff) << ',' << to_string(r.verdict)
        << '\n';
  }
}

}  // namespace aoi
