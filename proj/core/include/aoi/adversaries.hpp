#pragma once

#include <cstdint>
#include <iterator>
#include <random>

#include "aoi/dynamics.hpp"
#include "aoi/rational.hpp"

namespace aoi {

/// i.i.d. per-slot forwarding with probability `p`.
struct SequenceDistribution {
  Rational p = make_rational(1, 2);
  std::uint64_t seed = 0;
};

inline constexpr int kDefaultEnumerationCap = 20;

AdversarySequence constant_sequence(int T, AdversaryAction bit);

/// Draws are exact: a slot forwards iff a uniform integer in [0, den) is
/// below num. Same (seed, T, p) gives the same sequence.
AdversarySequence bernoulli_sequence(const SequenceDistribution& dist, int T);

/// The draw rule of bernoulli_sequence on a caller-owned engine, for loops
/// that sample many sequences from one stream.
class BernoulliSampler {
 public:
  explicit BernoulliSampler(const Rational& p);

  void fill(AdversarySequence& out, std::mt19937_64& rng) const;

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// Forward iterator over all 2^T sequences in lexicographic order.
class SequenceRange {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = AdversarySequence;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = AdversarySequence;

    iterator() = default;
    iterator(int length, std::uint64_t index) : length_(length), index_(index) {}

    AdversarySequence operator*() const { return AdversarySequence::from_index(length_, index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++index_;
      return copy;
    }
    std::uint64_t index() const { return index_; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

   private:
    int length_ = 0;
    std::uint64_t index_ = 0;
  };

  SequenceRange(int length, std::uint64_t first, std::uint64_t last)
      : length_(length), first_(first), last_(last) {}

  iterator begin() const { return {length_, first_}; }
  iterator end() const { return {length_, last_}; }
  std::uint64_t size() const { return last_ - first_; }

  /// Sub-range for parallel sweeps: shard `k` of `shards`.
  SequenceRange shard(std::uint64_t k, std::uint64_t shards) const;

 private:
  int length_;
  std::uint64_t first_;
  std::uint64_t last_;
};

/// Throws CapExceeded when T > cap.
SequenceRange enumerate_sequences(int T, int cap = kDefaultEnumerationCap);

struct WorstCase {
  AdversarySequence sigma;
  Rational value;  ///< supremum of the average age over all sequences
  std::int64_t totalAge = 0;
};

/// Exact supremum of the average age over all sequences for a fixed
/// schedule. Ties prefer Idle at the earliest differing slot, so the
/// returned sequence is the lexicographically smallest maximizer.
WorstCase worst_sequence(const Schedule& schedule, const InstanceParams& params);

}  // namespace aoi
