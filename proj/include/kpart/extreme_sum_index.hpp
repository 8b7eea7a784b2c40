#pragma once

#include <cassert>
#include <limits>
#include <set>
#include <utility>

namespace kpart {

/// Ordered index over the active (sum, set-id) pairs. argmin returns the
/// smallest sum, and argmax the largest sum, each breaking ties toward the
/// smallest set id. insert/erase/update are O(log K).
template <class Sum>
class ExtremeSumIndex {
 public:
  using Entry = std::pair<Sum, int>;  // (sum, set id)

  void insert(Sum sum, int id) { entries_.insert({sum, id}); }

  void erase(Sum sum, int id) {
    auto it = entries_.find({sum, id});
    assert(it != entries_.end());
    entries_.erase(it);
  }

  void update(Sum old_sum, Sum new_sum, int id) {
    erase(old_sum, id);
    insert(new_sum, id);
  }

  /// Smallest sum; smallest id among ties.
  Entry argmin() const {
    assert(!entries_.empty());
    return *entries_.begin();
  }

  /// Largest sum; smallest id among ties.
  Entry argmax() const {
    assert(!entries_.empty());
    Sum top = std::prev(entries_.end())->first;
    return *entries_.lower_bound({top, std::numeric_limits<int>::min()});
  }

  bool contains(Sum sum, int id) const { return entries_.count({sum, id}) > 0; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::set<Entry> entries_;  // ascending by (sum, id)
};

}  // namespace kpart
