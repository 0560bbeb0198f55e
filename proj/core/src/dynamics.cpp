#include "aoi/dynamics.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "aoi/error.hpp"

namespace aoi {

std::string to_string(const InstanceParams& params) {
  std::ostringstream os;
  os << "T=" << params.T << " T1=" << params.T1 << " T2=" << params.T2;
  return os.str();
}

char to_char(SourceAction a) {
  switch (a) {
    case SourceAction::Idle: return '.';
    case SourceAction::ToCache: return 'C';
    case SourceAction::ToUser: return 'U';
  }
  return '?';
}

char to_char(AdversaryAction a) { return a == AdversaryAction::Forward ? '1' : '0'; }

// ---------------------------------------------------------------- Schedule

Schedule Schedule::parse(std::string_view text) {
  std::vector<SourceAction> actions;
  actions.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '.': actions.push_back(SourceAction::Idle); break;
      case 'C': actions.push_back(SourceAction::ToCache); break;
      case 'U': actions.push_back(SourceAction::ToUser); break;
      default:
        throw ValidationError("schedule string may only contain '.', 'C', 'U': got '" +
                              std::string(1, c) + "'");
    }
  }
  return Schedule(std::move(actions));
}

int Schedule::count(SourceAction a) const {
  return static_cast<int>(std::count(actions_.begin(), actions_.end(), a));
}

std::vector<int> Schedule::slots_of(SourceAction a) const {
  std::vector<int> out;
  for (int t = 0; t < size(); ++t) {
    if ((*this)[t] == a) out.push_back(t);
  }
  return out;
}

std::string Schedule::to_string() const {
  std::string s;
  s.reserve(actions_.size());
  for (auto a : actions_) s.push_back(to_char(a));
  return s;
}

// ------------------------------------------------------- AdversarySequence

AdversarySequence AdversarySequence::parse(std::string_view text) {
  std::vector<AdversaryAction> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0') {
      bits.push_back(AdversaryAction::Idle);
    } else if (c == '1') {
      bits.push_back(AdversaryAction::Forward);
    } else {
      throw ValidationError("adversary sequence may only contain '0' and '1': got '" +
                            std::string(1, c) + "'");
    }
  }
  return AdversarySequence(std::move(bits));
}

AdversarySequence AdversarySequence::from_index(int length, std::uint64_t index) {
  AdversarySequence s(length);
  for (int t = 0; t < length; ++t) {
    if ((index >> (length - 1 - t)) & 1U) s[t] = AdversaryAction::Forward;
  }
  return s;
}

int AdversarySequence::forward_count() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), AdversaryAction::Forward));
}

std::string AdversarySequence::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(to_char(b));
  return s;
}

// -------------------------------------------------------------- validation

std::string ValidationReport::summary() const {
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v;
  }
  return s;
}

ValidationReport validate_instance(const InstanceParams& params) {
  ValidationReport report;
  if (params.T < 1) report.violations.push_back("T must be positive");
  if (params.T1 < 0) report.violations.push_back("T1 must be non-negative");
  if (params.T2 < 0) report.violations.push_back("T2 must be non-negative");
  if (params.T1 + params.T2 >= params.T) {
    report.violations.push_back("budget constraint T1+T2<T violated (" +
                                std::to_string(params.T1 + params.T2) +
                                " >= " + std::to_string(params.T) + ")");
  }
  if (params.T1 > params.T2) report.violations.push_back("T1<=T2 violated");
  return report;
}

ValidationReport validate_schedule(const Schedule& schedule, const InstanceParams& params,
                                   bool enforceSingleUpdate) {
  if (schedule.size() != params.T) {
    throw ValidationError("schedule length " + std::to_string(schedule.size()) +
                          " does not match T=" + std::to_string(params.T));
  }
  ValidationReport report;
  const int nU = schedule.user_updates();
  const int nC = schedule.cache_updates();
  if (nU > params.T1) {
    report.violations.push_back("direct updates " + std::to_string(nU) + " exceed T1=" +
                                std::to_string(params.T1));
  }
  if (nC > params.T2) {
    report.violations.push_back("cache updates " + std::to_string(nC) + " exceed T2=" +
                                std::to_string(params.T2));
  }
  if (enforceSingleUpdate) {
    int run = 0;
    int runStart = 0;
    for (int t = 0; t < schedule.size(); ++t) {
      if (schedule[t] == SourceAction::ToCache) {
        run = 0;
        runStart = t + 1;
      } else if (schedule[t] == SourceAction::ToUser && ++run == 2) {
        report.violations.push_back("more than one direct update between cache updates near slot " +
                                    std::to_string(runStart) + ".." + std::to_string(t));
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------- dynamics

SystemState step(const SystemState& state, SourceAction src, AdversaryAction adv) {
  const int t = state.now;
  SystemState next = state;

  if (src == SourceAction::ToCache) next.cacheGen = t;
  const bool direct = src == SourceAction::ToUser;
  const bool forged = adv == AdversaryAction::Forward;

  if (direct) {
    next.userGen = t;
    next.userStamp = t;
  } else if (forged && t > state.userStamp) {
    next.userGen = next.cacheGen;
    next.userStamp = t;
  }
  next.now = t + 1;
  return next;
}

AgeTrace simulate(const Schedule& schedule, const AdversarySequence& sigma,
                  const InstanceParams& params) {
  if (auto report = validate_instance(params); !report) {
    throw ValidationError("invalid instance: " + report.summary());
  }
  if (schedule.size() != params.T || sigma.size() != params.T) {
    throw ValidationError("schedule/sequence length must equal T=" + std::to_string(params.T));
  }
  AgeTrace trace;
  trace.ages.reserve(static_cast<std::size_t>(params.T));
  SystemState state;
  for (int t = 0; t < params.T; ++t) {
    trace.ages.push_back(state.age());
    state = step(state, schedule[t], sigma[t]);
  }
  trace.averageAge = average_age(trace.ages);
  return trace;
}

std::int64_t total_age(std::span<const SourceAction> schedule, const AdversarySequence& sigma) {
  // Forged stamps always exceed the user's stamp, so only the same-slot
  // direct update can block a forward.
  std::int64_t total = 0;
  int cacheGen = -1;
  int userGen = -1;
  const int T = static_cast<int>(schedule.size());
  for (int t = 0; t < T; ++t) {
    total += t - userGen;
    const SourceAction a = schedule[static_cast<std::size_t>(t)];
    if (a == SourceAction::ToCache) cacheGen = t;
    if (a == SourceAction::ToUser) {
      userGen = t;
    } else if (sigma.forwards(t)) {
      userGen = cacheGen;
    }
  }
  return total;
}

Rational average_age(std::span<const int> ages) {
  if (ages.empty()) throw ValidationError("average age of an empty trace");
  std::int64_t sum = 0;
  for (int v : ages) sum += v;
  return make_rational(sum, static_cast<std::int64_t>(ages.size()));
}

Rational average_age(const AgeTrace& trace) { return average_age(trace.ages); }

void write_trace_csv(std::ostream& out, const AgeTrace& trace, const Schedule& schedule,
                     const AdversarySequence& sigma) {
  out << "t,age,src_action,adv_action\n";
  for (std::size_t t = 0; t < trace.ages.size(); ++t) {
    const int slot = static_cast<int>(t);
    out << t << ',' << trace.ages[t] << ',' << to_char(schedule[slot]) << ','
        << to_char(sigma[slot]) << '\n';
  }
  out << "# average=" << to_fraction_string(trace.averageAge) << '\n';
}

}  // namespace aoi
