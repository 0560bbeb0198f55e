#include "aoi/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "aoi/adversaries.hpp"
#include "aoi/error.hpp"

namespace aoi {

namespace {

using Value = std::int32_t;
constexpr Value kInfinity = std::numeric_limits<Value>::max() / 2;

// Layered state space. Layer t holds states before slot t; generation times
// range over -1..t-1.
class StateSpace {
 public:
  StateSpace(const InstanceParams& params, bool enforce)
      : T_(params.T), T1_(params.T1), T2_(params.T2), flags_(enforce ? 2 : 1), enforce_(enforce) {}

  std::size_t layer_size(int t) const {
    const auto n = static_cast<std::size_t>(t + 1);
    return static_cast<std::size_t>(T1_ + 1) * static_cast<std::size_t>(T2_ + 1) * n * n *
           static_cast<std::size_t>(flags_);
  }

  std::size_t index(int t, int u, int c, int cg, int ug, int f) const {
    const auto n = static_cast<std::size_t>(t + 1);
    std::size_t i = static_cast<std::size_t>(u) * static_cast<std::size_t>(T2_ + 1) +
                    static_cast<std::size_t>(c);
    i = i * n + static_cast<std::size_t>(cg + 1);
    i = i * n + static_cast<std::size_t>(ug + 1);
    return i * static_cast<std::size_t>(flags_) + static_cast<std::size_t>(f);
  }

  struct Move {
    bool allowed = false;
    int u = 0, c = 0, cg = 0, ug = 0, f = 0;
  };

  Move apply(int t, int u, int c, int cg, int ug, int f, SourceAction a, bool forward) const {
    Move m{true, u, c, cg, ug, f};
    switch (a) {
      case SourceAction::Idle:
        if (forward) m.ug = cg;
        break;
      case SourceAction::ToCache:
        if (c >= T2_) return {};
        m.c = c + 1;
        m.cg = t;
        m.f = 0;
        if (forward) m.ug = t;
        break;
      case SourceAction::ToUser:
        if (u >= T1_ || (enforce_ && f == 1)) return {};
        m.u = u + 1;
        m.ug = t;
        m.f = enforce_ ? 1 : 0;
        break;
    }
    return m;
  }

  // Fills `cur` (layer t) from `next` (layer t+1).
  void relax_layer(int t, bool forward, const Value* next, Value* cur) const {
    static constexpr SourceAction kActions[] = {SourceAction::Idle, SourceAction::ToCache,
                                                SourceAction::ToUser};
    for (int u = 0; u <= T1_; ++u) {
      for (int c = 0; c <= T2_; ++c) {
        for (int cg = -1; cg < t; ++cg) {
          for (int ug = -1; ug < t; ++ug) {
            for (int f = 0; f < flags_; ++f) {
              Value best = kInfinity;
              for (auto a : kActions) {
                const Move m = apply(t, u, c, cg, ug, f, a, forward);
                if (!m.allowed) continue;
                best = std::min(best, next[index(t + 1, m.u, m.c, m.cg, m.ug, m.f)]);
              }
              cur[index(t, u, c, cg, ug, f)] = static_cast<Value>(t - ug) + best;
            }
          }
        }
      }
    }
  }

  int T() const { return T_; }
  int flags() const { return flags_; }

 private:
  int T_, T1_, T2_, flags_;
  bool enforce_;
};

void check_oracle_inputs(const AdversarySequence& sigma, const InstanceParams& params, int cap) {
  if (auto report = validate_instance(params); !report) {
    throw ValidationError("invalid instance: " + report.summary());
  }
  if (sigma.size() != params.T) throw ValidationError("sequence length must equal T");
  if (params.T > cap) {
    throw CapExceeded("oracle horizon T=" + std::to_string(params.T) + " exceeds cap " +
                      std::to_string(cap));
  }
}

}  // namespace

OracleResult offline_optimal(const AdversarySequence& sigma, const InstanceParams& params,
                             bool enforceSingleUpdate, int cap) {
  check_oracle_inputs(sigma, params, cap);
  const StateSpace space(params, enforceSingleUpdate);
  const int T = params.T;

  std::vector<std::size_t> offset(static_cast<std::size_t>(T + 2), 0);
  for (int t = 0; t <= T; ++t) {
    offset[static_cast<std::size_t>(t + 1)] = offset[static_cast<std::size_t>(t)] + space.layer_size(t);
  }
  const std::uint64_t total = offset.back();
  if (total > kOracleStateCap) {
    throw CapExceeded("oracle state space of " + std::to_string(total) + " states exceeds cap");
  }
  std::vector<Value> table(total, 0);
  auto layer = [&](int t) { return table.data() + offset[static_cast<std::size_t>(t)]; };

  for (int t = T - 1; t >= 0; --t) space.relax_layer(t, sigma.forwards(t), layer(t + 1), layer(t));

  OracleResult result;
  result.bestSchedule = Schedule(T);
  result.statesExplored = total - space.layer_size(T);
  int u = 0, c = 0, cg = -1, ug = -1, f = 0;
  for (int t = 0; t < T; ++t) {
    const Value here = layer(t)[space.index(t, u, c, cg, ug, f)];
    for (auto a : {SourceAction::Idle, SourceAction::ToCache, SourceAction::ToUser}) {
      const auto m = space.apply(t, u, c, cg, ug, f, a, sigma.forwards(t));
      if (!m.allowed) continue;
      if (static_cast<Value>(t - ug) + layer(t + 1)[space.index(t + 1, m.u, m.c, m.cg, m.ug, m.f)] == here) {
        result.bestSchedule[t] = a;
        u = m.u, c = m.c, cg = m.cg, ug = m.ug, f = m.f;
        break;
      }
    }
  }
  result.totalAge = layer(0)[0];
  result.value = make_rational(result.totalAge, T);
  return result;
}

std::uint64_t for_each_schedule(const InstanceParams& params, bool enforceSingleUpdate,
                                const std::function<void(const Schedule&)>& visit) {
  if (auto report = validate_instance(params); !report) {
    throw ValidationError("invalid instance: " + report.summary());
  }
  const int T = params.T;
  Schedule current(T);
  std::uint64_t generated = 0;
  auto descend = [&](auto&& self, int t, int usedU, int usedC) -> void {
    if (t == T) {
      ++generated;
      if (validate_schedule(current, params, enforceSingleUpdate)) visit(current);
      return;
    }
    current[t] = SourceAction::Idle;
    self(self, t + 1, usedU, usedC);
    if (usedC < params.T2) {
      current[t] = SourceAction::ToCache;
      self(self, t + 1, usedU, usedC + 1);
    }
    if (usedU < params.T1) {
      current[t] = SourceAction::ToUser;
      self(self, t + 1, usedU + 1, usedC);
    }
    current[t] = SourceAction::Idle;
  };
  descend(descend, 0, 0, 0);
  return generated;
}

std::uint64_t bruteforce_candidate_count(const InstanceParams& params) {
  auto choose = [](int n, int k) -> long double {
    if (k < 0 || k > n) return 0;
    long double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  long double total = 0;
  for (int u = 0; u <= params.T1; ++u) {
    for (int c = 0; c <= params.T2; ++c) total += choose(params.T, u) * choose(params.T - u, c);
  }
  if (total >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(total + 0.5L);
}

OracleResult offline_optimal_bruteforce(const AdversarySequence& sigma,
                                        const InstanceParams& params, bool enforceSingleUpdate,
                                        std::uint64_t cap) {
  check_oracle_inputs(sigma, params, std::numeric_limits<int>::max());
  const auto candidates = bruteforce_candidate_count(params);
  if (candidates > cap) {
    throw CapExceeded("brute force would visit " + std::to_string(candidates) +
                      " schedules, cap is " + std::to_string(cap));
  }

  OracleResult result;
  result.totalAge = std::numeric_limits<std::int64_t>::max();
  // Lexicographic order with strict improvement keeps the smallest optimum.
  result.statesExplored = for_each_schedule(params, enforceSingleUpdate, [&](const Schedule& s) {
    const auto total = total_age(s.actions(), sigma);
    if (total < result.totalAge) {
      result.totalAge = total;
      result.bestSchedule = s;
    }
  });
  result.value = make_rational(result.totalAge, params.T);
  return result;
}

std::vector<std::int64_t> offline_optimal_totals(const InstanceParams& params,
                                                 bool enforceSingleUpdate, int cap) {
  if (auto report = validate_instance(params); !report) {
    throw ValidationError("invalid instance: " + report.summary());
  }
  const auto range = enumerate_sequences(params.T, cap);
  const StateSpace space(params, enforceSingleUpdate);
  const int T = params.T;

  std::vector<std::vector<Value>> layers(static_cast<std::size_t>(T + 1));
  std::uint64_t footprint = 0;
  for (int t = 0; t <= T; ++t) {
    layers[static_cast<std::size_t>(t)].assign(space.layer_size(t), 0);
    footprint += space.layer_size(t);
  }
  if (footprint > kOracleStateCap) {
    throw CapExceeded("oracle state space of " + std::to_string(footprint) + " states exceeds cap");
  }

  std::vector<std::int64_t> totals(range.size(), 0);
  // Layer t depends on sigma(t..T-1) only; walk suffixes depth first.
  auto descend = [&](auto&& self, int t, std::uint64_t suffixBits) -> void {
    if (t < 0) {
      totals[suffixBits] = layers[0][0];
      return;
    }
    for (int bit = 0; bit <= 1; ++bit) {
      space.relax_layer(t, bit == 1, layers[static_cast<std::size_t>(t + 1)].data(),
                        layers[static_cast<std::size_t>(t)].data());
      const std::uint64_t bits = suffixBits | (static_cast<std::uint64_t>(bit) << (T - 1 - t));
      self(self, t - 1, bits);
    }
  };
  descend(descend, T - 1, 0);
  return totals;
}

}  // namespace aoi
