#pragma once

// Deterministic source policies and the schedule edits used to compare them.

#include <optional>
#include <span>
#include <vector>

#include "aoi/dynamics.hpp"

namespace aoi {

/// Section geometry of an instance. A field is 0 when the corresponding
/// divisibility does not hold.
struct SectionGeometry {
  int x2 = 0;        ///< base section length (T-T1)/(T2+1)
  int x3 = 0;        ///< sections per megasection T2/T1
  int blockLen = 0;  ///< block length T/(T1+1)

  static SectionGeometry of(const InstanceParams& params);
};

/// Nominal sections of the T2+1 section policies. `ends[0]` is the virtual
/// end of the section preceding the first one; `ends[i]` (i = 1..T2) is the
/// last slot of section i, where its cache update nominally sits.
struct SectionLayout {
  int x2 = 0;
  std::vector<int> ends;
  std::vector<int> userSlots;
};

struct HatOptions {
  /// Slots for the T2-T1 cache updates not tied to block boundaries. When
  /// unset they go to the earliest idle slots.
  std::optional<std::vector<int>> extraCacheSlots;
};

/// T1+1 equal blocks: cache update at the start of blocks 2..T1+1, direct
/// update at the end of blocks 1..T1, remaining cache budget spread per
/// `options`. Requires (T1+1) | T.
Schedule build_hat_policy(const InstanceParams& params, const HatOptions& options = {});

/// T2+1 sections with the direct update just before every (T2/T1)-th cache
/// update. Requires (T2+1) | (T-T1), T1 >= 1 and T1 | T2.
Schedule build_check_policy(const InstanceParams& params);
SectionLayout check_layout(const InstanceParams& params);

/// Cache updates at the ends of T2+1 sections; a section holding one of
/// `userSlots` is stretched to x2+1 slots. Each user slot must fall strictly
/// before the end of a distinct section.
Schedule build_bar_policy(const InstanceParams& params, std::span<const int> userSlots);

/// Moves the `updateIndex`-th cache update (1-based) by `delta` slots.
Schedule shift_cache_update(const Schedule& schedule, int updateIndex, int delta);

/// Clairvoyant upper-bound policy: user updates as in the check policy; the
/// cache update of section i waits for the first forwarding slot of the
/// window [end(i-1), end(i-1)+x2-1].
Schedule build_clairvoyant_bound_policy(const InstanceParams& params,
                                        const AdversarySequence& sigma);

/// Window placement on an arbitrary layout, for horizons that do not start
/// at a section boundary. Occupied slots are skipped; a window without a
/// forwarding slot gets its update at its last free slot, or at the nominal
/// end when the window is empty.
Schedule place_clairvoyant_updates(int T, const SectionLayout& layout,
                                   const AdversarySequence& sigma);

/// Equal spacing of all T1+T2 updates as direct updates, L = T/(T1+T2+1).
/// A witness for the age lower bound, not a feasible schedule.
Schedule build_uniform_reference(const InstanceParams& params);

/// No transmissions at all.
Schedule build_idle_policy(const InstanceParams& params);

}  // namespace aoi
