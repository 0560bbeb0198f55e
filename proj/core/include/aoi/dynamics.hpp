#pragma once

// Slot-level model of the source / cache / user system with a timestomping
// adversary on the cache -> user link.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/rational.hpp"

namespace aoi {

/// Horizon and transmission budgets.
struct InstanceParams {
  int T = 0;   ///< number of slots
  int T1 = 0;  ///< slots the source may spend on direct user updates
  int T2 = 0;  ///< slots the source may spend on cache updates

  friend bool operator==(const InstanceParams&, const InstanceParams&) = default;
};

std::string to_string(const InstanceParams& params);

enum class SourceAction : std::uint8_t { Idle, ToCache, ToUser };
enum class AdversaryAction : std::uint8_t { Idle = 0, Forward = 1 };

char to_char(SourceAction a);
char to_char(AdversaryAction a);

/// Per-slot source actions. Serialized as one character per slot:
/// '.' idle, 'C' to cache, 'U' to user.
class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(int length) : actions_(static_cast<std::size_t>(length), SourceAction::Idle) {}
  explicit Schedule(std::vector<SourceAction> actions) : actions_(std::move(actions)) {}

  static Schedule parse(std::string_view text);

  int size() const { return static_cast<int>(actions_.size()); }
  SourceAction operator[](int t) const { return actions_[static_cast<std::size_t>(t)]; }
  SourceAction& operator[](int t) { return actions_[static_cast<std::size_t>(t)]; }
  std::span<const SourceAction> actions() const { return actions_; }

  int user_updates() const { return count(SourceAction::ToUser); }
  int cache_updates() const { return count(SourceAction::ToCache); }
  int count(SourceAction a) const;
  std::vector<int> slots_of(SourceAction a) const;

  std::string to_string() const;

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::vector<SourceAction> actions_;
};

/// The oblivious adversary's per-slot decisions, serialized as a 0/1 string.
class AdversarySequence {
 public:
  AdversarySequence() = default;
  explicit AdversarySequence(int length, AdversaryAction fill = AdversaryAction::Idle)
      : bits_(static_cast<std::size_t>(length), fill) {}
  explicit AdversarySequence(std::vector<AdversaryAction> bits) : bits_(std::move(bits)) {}

  static AdversarySequence parse(std::string_view text);
  /// Sequence number `index` in lexicographic order; slot 0 is the most
  /// significant bit.
  static AdversarySequence from_index(int length, std::uint64_t index);

  int size() const { return static_cast<int>(bits_.size()); }
  AdversaryAction operator[](int t) const { return bits_[static_cast<std::size_t>(t)]; }
  AdversaryAction& operator[](int t) { return bits_[static_cast<std::size_t>(t)]; }
  bool forwards(int t) const { return (*this)[t] == AdversaryAction::Forward; }
  int forward_count() const;

  std::string to_string() const;

  friend bool operator==(const AdversarySequence&, const AdversarySequence&) = default;

 private:
  std::vector<AdversaryAction> bits_;
};

struct SystemState {
  int now = 0;
  int cacheGen = -1;   ///< generation time of the cached packet
  int userGen = -1;    ///< true generation time of the user's packet
  int userStamp = -1;  ///< timestamp the user believes its packet carries

  int age() const { return now - userGen; }

  friend bool operator==(const SystemState&, const SystemState&) = default;
};

struct AgeTrace {
  std::vector<int> ages;  ///< v(t) for t = 0..T-1
  Rational averageAge;
};

/// List of violated constraints; empty means valid.
struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
  std::string summary() const;
};

ValidationReport validate_instance(const InstanceParams& params);

/// Budgets are upper bounds. With `enforceSingleUpdate`, at most one ToUser
/// may fall between consecutive ToCache slots (and before the first / after
/// the last). Throws ValidationError on length mismatch.
ValidationReport validate_schedule(const Schedule& schedule, const InstanceParams& params,
                                   bool enforceSingleUpdate = true);

/// Advance one slot: source action first, then the adversary, then the user
/// resolves what arrived. A direct packet always wins; a forged forward
/// carries stamp `now` and is accepted iff that beats the user's stamp.
SystemState step(const SystemState& state, SourceAction src, AdversaryAction adv);

/// Runs the horizon from the all -1 initial state, recording v(t) before
/// each step. Throws ValidationError on invalid params or length mismatch.
AgeTrace simulate(const Schedule& schedule, const AdversarySequence& sigma,
                  const InstanceParams& params);

/// Sum of v(t) over the horizon without building a trace. Lengths must match;
/// not checked.
std::int64_t total_age(std::span<const SourceAction> schedule, const AdversarySequence& sigma);

Rational average_age(const AgeTrace& trace);
Rational average_age(std::span<const int> ages);

/// CSV `t,age,src_action,adv_action` followed by `# average=<num>/<den>`.
void write_trace_csv(std::ostream& out, const AgeTrace& trace, const Schedule& schedule,
                     const AdversarySequence& sigma);

}  // namespace aoi
