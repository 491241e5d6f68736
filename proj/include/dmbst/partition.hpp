#pragma once

#include <cstdint>
#include <vector>

namespace dmbst {

/// Stirling number of the second kind S(n, k): the number of partitions of
/// an n-element set into exactly k nonempty blocks. Computed in unsigned
/// 64-bit arithmetic; n is capped at 25 to stay clear of overflow.
std::uint64_t stirling2(int n, int k);

/// Enumerator for the partitions of {0, ..., n-1} into exactly k nonempty
/// blocks. Partitions are represented as restricted growth strings: rgs[i]
/// is the block of item i, rgs[0] == 0, and each value may exceed the
/// running maximum by at most one. Lexicographic order on the strings gives
/// the canonical enumeration order, and unrank() jumps to any position so
/// disjoint rank ranges can be scanned independently.
class KPartitions {
 public:
  KPartitions(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  std::uint64_t count() const { return count_; }

  /// The lexicographically first string: zeros, then a forced climb to k-1.
  std::vector<int> first() const;

  /// Advances rgs to its successor in place; false once the last string has
  /// been passed.
  bool advance(std::vector<int>& rgs) const;

  /// The string at position `rank` (0-based) in enumeration order.
  std::vector<int> unrank(std::uint64_t rank) const;

  /// Rebuilds the explicit blocks of a string, ordered by smallest element.
  static std::vector<std::vector<int>> blocks(const std::vector<int>& rgs,
                                              int k);

 private:
  // completions_[i * k_ + m]: ways to fill positions i..n-1 when the prefix
  // already uses blocks 0..m.
  std::uint64_t completions(int i, int m) const;
  void fill_smallest(std::vector<int>& rgs, int from) const;

  int n_;
  int k_;
  std::uint64_t count_;
  std::vector<std::uint64_t> completions_;
};

}  // namespace dmbst
