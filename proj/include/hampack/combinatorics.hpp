#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace hampack {

// C(n,k), saturating at uint64 max instead of overflowing.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

// n(n-1)...(n-k+1), saturating.
inline std::uint64_t falling_factorial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  unsigned __int128 acc = 1;
  for (int i = 0; i < k; ++i) {
    acc *= static_cast<unsigned>(n - i);
    if (acc > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

inline std::uint64_t factorial(int n) { return falling_factorial(n, n); }

// Advance a strictly increasing k-subset of {1..n} to its lex successor.
// Returns false when idx was the last subset.
inline bool next_k_subset(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[static_cast<std::size_t>(i)] < n - (k - 1 - i)) {
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

// Calls f on every k-subset of {1..n} in lex order.
template <typename F>
void for_each_k_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  do {
    f(static_cast<const std::vector<int>&>(idx));
  } while (next_k_subset(idx, n));
}

}  // namespace hampack
