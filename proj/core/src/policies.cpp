#include "aoi/policies.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "aoi/error.hpp"

namespace aoi {

namespace {

void require_valid(const InstanceParams& params) {
  if (auto report = validate_instance(params); !report) {
    throw ValidationError("invalid instance (" + to_string(params) + "): " + report.summary());
  }
}

int require_x2(const InstanceParams& params) {
  const auto g = SectionGeometry::of(params);
  if (g.x2 == 0) {
    throw ValidationError("(T2+1) must divide (T-T1) for section policies: " + to_string(params));
  }
  return g.x2;
}

SectionLayout section_layout(const InstanceParams& params, std::span<const int> userSlots) {
  const int x2 = require_x2(params);
  std::vector<int> sorted(userSlots.begin(), userSlots.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("duplicate user slot");
  }
  if (static_cast<int>(sorted.size()) > params.T1) {
    throw ValidationError("more user slots than T1=" + std::to_string(params.T1));
  }

  SectionLayout layout;
  layout.x2 = x2;
  layout.ends.push_back(-1);
  std::size_t next = 0;
  int start = 0;
  for (int i = 1; i <= params.T2; ++i) {
    int len = x2;
    if (next < sorted.size() && sorted[next] < start) {
      throw ValidationError("user slot " + std::to_string(sorted[next]) +
                            " shares a section with another user slot or sits on a cache slot");
    }
    if (next < sorted.size() && sorted[next] < start + x2) {
      len = x2 + 1;
      layout.userSlots.push_back(sorted[next++]);
    }
    start += len;
    layout.ends.push_back(start - 1);
  }
  // Final section runs to the horizon and carries no cache update.
  if (next < sorted.size()) {
    if (sorted[next] < start) {
      throw ValidationError("user slot " + std::to_string(sorted[next]) + " sits on a cache slot");
    }
    layout.userSlots.push_back(sorted[next++]);
  }
  if (next < sorted.size()) {
    throw ValidationError("two user slots in the final section");
  }
  if (!layout.userSlots.empty() && layout.userSlots.back() >= params.T) {
    throw ValidationError("user slot outside [0,T)");
  }
  if (start > params.T) throw ValidationError("sections overflow the horizon");
  return layout;
}

Schedule from_layout(int T, const SectionLayout& layout) {
  Schedule s(T);
  for (std::size_t i = 1; i < layout.ends.size(); ++i) s[layout.ends[i]] = SourceAction::ToCache;
  for (int u : layout.userSlots) s[u] = SourceAction::ToUser;
  return s;
}

}  // namespace

SectionGeometry SectionGeometry::of(const InstanceParams& params) {
  SectionGeometry g;
  if (params.T2 + 1 > 0 && params.T - params.T1 > 0 && (params.T - params.T1) % (params.T2 + 1) == 0) {
    g.x2 = (params.T - params.T1) / (params.T2 + 1);
  }
  if (params.T1 > 0 && params.T2 > 0 && params.T2 % params.T1 == 0) g.x3 = params.T2 / params.T1;
  if (params.T > 0 && params.T % (params.T1 + 1) == 0) g.blockLen = params.T / (params.T1 + 1);
  return g;
}

Schedule build_hat_policy(const InstanceParams& params, const HatOptions& options) {
  require_valid(params);
  const auto g = SectionGeometry::of(params);
  if (g.blockLen == 0) {
    throw ValidationError("(T1+1) must divide T for the block policy: " + to_string(params));
  }
  const int L = g.blockLen;
  Schedule s(params.T);
  for (int b = 2; b <= params.T1 + 1; ++b) s[(b - 1) * L] = SourceAction::ToCache;
  for (int b = 1; b <= params.T1; ++b) s[b * L - 1] = SourceAction::ToUser;

  const int extra = params.T2 - params.T1;
  if (options.extraCacheSlots) {
    const auto& slots = *options.extraCacheSlots;
    if (static_cast<int>(slots.size()) != extra) {
      throw ValidationError("expected " + std::to_string(extra) + " extra cache slots, got " +
                            std::to_string(slots.size()));
    }
    for (int t : slots) {
      if (t < 0 || t >= params.T || s[t] != SourceAction::Idle) {
        throw ValidationError("extra cache slot " + std::to_string(t) + " is not an idle slot");
      }
      s[t] = SourceAction::ToCache;
    }
  } else {
    int placed = 0;
    for (int t = 0; t < params.T && placed < extra; ++t) {
      if (s[t] == SourceAction::Idle) {
        s[t] = SourceAction::ToCache;
        ++placed;
      }
    }
  }
  if (auto report = validate_schedule(s, params, true); !report) {
    throw ValidationError("block policy violates constraints: " + report.summary());
  }
  return s;
}

SectionLayout check_layout(const InstanceParams& params) {
  require_valid(params);
  const auto g = SectionGeometry::of(params);
  require_x2(params);
  if (g.x3 == 0) {
    throw ValidationError("T1 must be positive and divide T2 for the megasection policy: " +
                          to_string(params));
  }
  SectionLayout layout;
  layout.x2 = g.x2;
  layout.ends.push_back(-1);
  int start = 0;
  for (int i = 1; i <= params.T2; ++i) {
    const bool megasectionEnd = i % g.x3 == 0;
    const int len = megasectionEnd ? g.x2 + 1 : g.x2;
    start += len;
    layout.ends.push_back(start - 1);
    if (megasectionEnd) layout.userSlots.push_back(start - 2);
  }
  return layout;
}

Schedule build_check_policy(const InstanceParams& params) {
  return from_layout(params.T, check_layout(params));
}

Schedule build_bar_policy(const InstanceParams& params, std::span<const int> userSlots) {
  require_valid(params);
  for (int u : userSlots) {
    if (u < 0 || u >= params.T) throw ValidationError("user slot outside [0,T)");
  }
  const auto layout = section_layout(params, userSlots);
  Schedule s = from_layout(params.T, layout);
  if (auto report = validate_schedule(s, params, true); !report) {
    throw ValidationError("section policy violates constraints: " + report.summary());
  }
  return s;
}

Schedule shift_cache_update(const Schedule& schedule, int updateIndex, int delta) {
  const auto slots = schedule.slots_of(SourceAction::ToCache);
  if (updateIndex < 1 || updateIndex > static_cast<int>(slots.size())) {
    throw ValidationError("cache update ordinal " + std::to_string(updateIndex) +
                          " out of range 1.." + std::to_string(slots.size()));
  }
  const int from = slots[static_cast<std::size_t>(updateIndex - 1)];
  const int to = from + delta;
  if (to < 0 || to >= schedule.size()) {
    throw ValidationError("shifted cache update leaves the horizon");
  }
  if (schedule[to] != SourceAction::Idle) {
    throw ValidationError("shifted cache update collides with slot " + std::to_string(to));
  }
  Schedule out = schedule;
  out[from] = SourceAction::Idle;
  out[to] = SourceAction::ToCache;
  return out;
}

Schedule place_clairvoyant_updates(int T, const SectionLayout& layout,
                                   const AdversarySequence& sigma) {
  if (sigma.size() != T) throw ValidationError("sequence length must equal T");
  if (layout.x2 < 1) throw ValidationError("layout needs a positive section length");
  Schedule s(T);
  for (int u : layout.userSlots) s[u] = SourceAction::ToUser;

  for (std::size_t i = 1; i < layout.ends.size(); ++i) {
    const int lo = std::max(0, layout.ends[i - 1]);
    const int hi = std::min(T - 1, layout.ends[i - 1] + layout.x2 - 1);
    int chosen = -1;
    int lastFree = -1;
    for (int t = lo; t <= hi; ++t) {
      if (s[t] != SourceAction::Idle) continue;
      lastFree = t;
      if (sigma.forwards(t)) {
        chosen = t;
        break;
      }
    }
    if (chosen < 0) chosen = lastFree;
    if (chosen < 0) chosen = layout.ends[i];
    if (chosen < 0 || chosen >= T || s[chosen] != SourceAction::Idle) {
      throw ValidationError("no free slot for cache update " + std::to_string(i));
    }
    s[chosen] = SourceAction::ToCache;
  }
  return s;
}

Schedule build_clairvoyant_bound_policy(const InstanceParams& params,
                                        const AdversarySequence& sigma) {
  if (sigma.size() != params.T) throw ValidationError("sequence length must equal T");
  return place_clairvoyant_updates(params.T, check_layout(params), sigma);
}

Schedule build_uniform_reference(const InstanceParams& params) {
  require_valid(params);
  const int updates = params.T1 + params.T2;
  if (params.T % (updates + 1) != 0) {
    throw ValidationError("(T1+T2+1) must divide T for the uniform reference: " +
                          to_string(params));
  }
  const int L = params.T / (updates + 1);
  Schedule s(params.T);
  for (int k = 1; k <= updates; ++k) s[k * L - 1] = SourceAction::ToUser;
  return s;
}

Schedule build_idle_policy(const InstanceParams& params) {
  require_valid(params);
  return Schedule(params.T);
}

}  // namespace aoi
