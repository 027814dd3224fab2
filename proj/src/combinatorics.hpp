#pragma once

#include <map>
#include <vector>

namespace koszul::detail {

/// All k-subsets of {0..n-1} as increasing sequences, lexicographic.
inline std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

/// All nondecreasing length-k sequences over {0..n-1}, lexicographic.
inline std::vector<std::vector<int>> multisets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0) return out;
  if (k == 0) return {{}};
  if (n <= 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(k), 0);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - 1) --i;
    if (i < 0) break;
    const int v = cur[static_cast<std::size_t>(i)] + 1;
    for (int j = i; j < k; ++j) cur[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

/// Enumerated list of index sequences with reverse lookup.
class SeqIndex {
 public:
  SeqIndex() = default;
  explicit SeqIndex(std::vector<std::vector<int>> items) : items_(std::move(items)) {
    for (std::size_t i = 0; i < items_.size(); ++i) lookup_.emplace(items_[i], i);
  }
  std::size_t size() const { return items_.size(); }
  const std::vector<int>& operator[](std::size_t i) const { return items_[i]; }
  /// Index of `s`, or size() when absent.
  std::size_t find(const std::vector<int>& s) const {
    auto it = lookup_.find(s);
    return it == lookup_.end() ? items_.size() : it->second;
  }

 private:
  std::vector<std::vector<int>> items_;
  std::map<std::vector<int>, std::size_t> lookup_;
};

/// Inserts v into the sorted sequence s.
inline std::vector<int> insert_sorted(std::vector<int> s, int v) {
  auto it = s.begin();
  while (it != s.end() && *it <= v) ++it;
  s.insert(it, v);
  return s;
}

}  // namespace koszul::detail
