#pragma once

// Closed forms checked against exact oracles, one row per formula and
// parameter point.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "aoi/analysis.hpp"
#include "aoi/dynamics.hpp"
#include "aoi/policies.hpp"

namespace aoi {

inline constexpr double kAuditTolerance = 1e-9;

/// One megasection with a warm start: a direct update at slot 0, the
/// previous section's end at slot 1, then x3 sections of x2 slots, the last
/// one stretched by the direct update at its second-last slot. The
/// megasection covers slots 2..lastSlot; T = lastSlot + 1.
struct MegasectionHarness {
  int T = 0;
  int firstSlot = 2;
  int lastSlot = 0;
  Schedule fixedSchedule;  ///< cache updates at every section end
  SectionLayout layout;    ///< for clairvoyant cache placement
};

MegasectionHarness megasection_harness(const MegasectionParams& m);

/// Expected total age over the megasection slots under fair coin flips,
/// by enumerating every sequence through the slot dynamics.
Rational megasection_oracle(const MegasectionParams& m, MegasectionKind kind, int workers = 1);

/// Exact conditional expectations for the one-slot cache shift comparison.
/// Instance (4*x2+2, 2, 3): sections 2 and 3 hold the direct updates, at
/// t1+offset and at the first slot of section 3; t1 ends section 1.
/// `tilde` moves the first cache update from t1 to t1-1. Differences are in
/// total age with the same signs as Lemma1Differences.
struct Lemma1Audit {
  InstanceParams params;
  int t1 = 0;
  Schedule bar;
  Schedule tilde;
  Rational S, S1, S2, S3, total;
};

Lemma1Audit lemma1_audit(int x2, int offset);

enum class Verdict { Pass, Mismatch, Holds, Violated, Gap };
std::string to_string(Verdict v);

struct AuditRow {
  std::string formula;
  std::string params;
  double closedForm = 0.0;
  double oracle = 0.0;
  double absDiff = 0.0;
  Verdict verdict = Verdict::Pass;
};

struct AuditGrid {
  std::vector<MegasectionParams> megasections;
  std::vector<InstanceParams> instances;
  std::vector<std::pair<int, int>> lemma1Points;  ///< (x2, offset)
  int enumerationCap = 13;  ///< instances above this T get closed-form rows only
};

/// x2 in 1..4 and x3 in 1..3, their single-direct-update instances plus
/// (24,3,6), and the cache-shift points x2 in 2..5.
AuditGrid default_audit_grid();

std::vector<AuditRow> audit_formulas(const AuditGrid& grid, int workers = 1);

/// Header `formula,params,closed_form,oracle,abs_diff,verdict`.
void write_audit_csv(std::ostream& out, const std::vector<AuditRow>& rows);

}  // namespace aoi
