#include "dmbst/partition.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "dmbst/errors.hpp"

namespace dmbst {

std::uint64_t stirling2(int n, int k) {
  if (n < 1 || k < 1 || k > n)
    throw ValidationError("stirling2 requires 1 <= k <= n");
  if (n > 25)
    throw CapExceeded("stirling2 is limited to n <= 25, got n = " +
                      std::to_string(n));
  if (k == 1 || k == n) return 1;
  // S(n,k) = k*S(n-1,k) + S(n-1,k-1), rolling row. S(25,*) fits in 64 bits.
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
  row[1] = 1;
  for (int i = 2; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j)
      row[j] = static_cast<std::uint64_t>(j) * row[j] +
               (j > 1 ? row[j - 1] : 0);
  }
  return row[k];
}

KPartitions::KPartitions(int n, int k) : n_(n), k_(k) {
  count_ = stirling2(n, k);  // also validates the (n, k) range
  completions_.assign(static_cast<std::size_t>(n_ + 1) * k_, 0);
  // Base: a full prefix is valid exactly when all k blocks were opened.
  completions_[static_cast<std::size_t>(n_) * k_ + (k_ - 1)] = 1;
  for (int i = n_ - 1; i >= 1; --i) {
    for (int m = 0; m < k_; ++m) {
      std::uint64_t ways =
          static_cast<std::uint64_t>(m + 1) *
          completions_[static_cast<std::size_t>(i + 1) * k_ + m];
      if (m + 1 < k_)
        ways += completions_[static_cast<std::size_t>(i + 1) * k_ + (m + 1)];
      completions_[static_cast<std::size_t>(i) * k_ + m] = ways;
    }
  }
}

std::uint64_t KPartitions::completions(int i, int m) const {
  return completions_[static_cast<std::size_t>(i) * k_ + m];
}

void KPartitions::fill_smallest(std::vector<int>& rgs, int from) const {
  int running = 0;
  for (int i = 0; i < from; ++i) running = std::max(running, rgs[i]);
  for (int i = from; i < n_; ++i) {
    // Zero unless the remaining positions are exactly enough to open the
    // blocks still missing, in which case the climb is forced.
    if ((k_ - 1) - running > n_ - 1 - i) {
      ++running;
      rgs[i] = running;
    } else {
      rgs[i] = 0;
    }
  }
}

std::vector<int> KPartitions::first() const {
  std::vector<int> rgs(n_, 0);
  fill_smallest(rgs, 1);
  return rgs;
}

bool KPartitions::advance(std::vector<int>& rgs) const {
  // n_ <= 25 (stirling2 cap), so a fixed-size scratch avoids heap churn in
  // enumeration loops.
  std::array<int, 32> prefix_max{};
  for (int i = 1; i < n_; ++i)
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i - 1]);
  for (int i = n_ - 1; i >= 1; --i) {
    const int cand = rgs[i] + 1;
    if (cand > prefix_max[i] + 1 || cand > k_ - 1) continue;
    const int new_max = std::max(prefix_max[i], cand);
    if ((k_ - 1) - new_max > n_ - 1 - i) continue;
    rgs[i] = cand;
    fill_smallest(rgs, i + 1);
    return true;
  }
  return false;
}

std::vector<int> KPartitions::unrank(std::uint64_t rank) const {
  if (rank >= count_)
    throw ValidationError("partition rank " + std::to_string(rank) +
                          " out of range, count is " + std::to_string(count_));
  std::vector<int> rgs(n_, 0);
  int running = 0;
  for (int i = 1; i < n_; ++i) {
    const int top = std::min(running + 1, k_ - 1);
    for (int val = 0; val <= top; ++val) {
      const std::uint64_t ways = completions(i + 1, std::max(running, val));
      if (rank < ways) {
        rgs[i] = val;
        running = std::max(running, val);
        break;
      }
      rank -= ways;
    }
  }
  return rgs;
}

std::vector<std::vector<int>> KPartitions::blocks(const std::vector<int>& rgs,
                                                  int k) {
  std::vector<std::vector<int>> out(k);
  for (int i = 0; i < static_cast<int>(rgs.size()); ++i)
    out[rgs[i]].push_back(i);
  return out;
}

}  // namespace dmbst
