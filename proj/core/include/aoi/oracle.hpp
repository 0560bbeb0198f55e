#pragma once

// Offline optimum: the best schedule for an adversary sequence known in
// advance.

#include <cstdint>
#include <functional>
#include <vector>

#include "aoi/dynamics.hpp"

namespace aoi {

inline constexpr int kDefaultOracleCap = 64;
inline constexpr std::uint64_t kDefaultBruteForceCap = 20'000'000;
inline constexpr std::uint64_t kOracleStateCap = std::uint64_t{1} << 26;

struct OracleResult {
  Schedule bestSchedule;
  Rational value;
  std::int64_t totalAge = 0;
  std::uint64_t statesExplored = 0;
};

/// Minimum average age over schedules with at most T1 direct and T2 cache
/// updates (plus the single-update rule when enforced). Exact backward DP
/// over (slot, budgets used, cache generation, user generation, rule flag).
/// Among optimal schedules returns the lexicographically smallest string
/// ('.' < 'C' < 'U'). Throws CapExceeded when T > cap.
OracleResult offline_optimal(const AdversarySequence& sigma, const InstanceParams& params,
                             bool enforceSingleUpdate = true, int cap = kDefaultOracleCap);

/// Exhaustive search over every action string within budget. Same result as
/// offline_optimal; exists to check it. `cap` bounds the number of strings.
OracleResult offline_optimal_bruteforce(const AdversarySequence& sigma,
                                        const InstanceParams& params,
                                        bool enforceSingleUpdate = true,
                                        std::uint64_t cap = kDefaultBruteForceCap);

/// Calls `visit` with every schedule within budget, in lexicographic order
/// ('.' < 'C' < 'U'), skipping those that break the single-update rule when
/// it is enforced. Returns the number of action strings generated.
std::uint64_t for_each_schedule(const InstanceParams& params, bool enforceSingleUpdate,
                                const std::function<void(const Schedule&)>& visit);

/// Number of action strings the brute force visits (saturates at UINT64_MAX).
std::uint64_t bruteforce_candidate_count(const InstanceParams& params);

/// Optimal total age for all 2^T sequences, indexed like
/// AdversarySequence::from_index. Shares DP layers between sequences with a
/// common suffix.
std::vector<std::int64_t> offline_optimal_totals(const InstanceParams& params,
                                                 bool enforceSingleUpdate, int cap);

}  // namespace aoi
