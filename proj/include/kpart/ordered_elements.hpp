#pragma once

#include <limits>
#include <optional>
#include <set>
#include <utility>

#include "kpart/numeric.hpp"

namespace kpart {

/// Per-set element storage: an ordered multiset of (value, original index)
/// sorted by value then index. Duplicated values stay distinct through their
/// indices. Threshold queries run in O(log n) and take the wide Sum type so
/// callers can pass raw set-sum differences without overflow checks.
template <class Num>
class OrderedElements {
 public:
  using Sum = SumOf<Num>;

  struct Elem {
    Num value;
    int index;
  };

  OrderedElements() = default;

  /// Bulk construction from (value, index) pairs already sorted ascending.
  template <class It>
  OrderedElements(It first, It last) : elems_(first, last) {}

  void insert(Num value, int index) { elems_.insert({value, index}); }

  void erase(Num value, int index) { elems_.erase({value, index}); }

  /// Largest element with value < bound; the largest index among equal values.
  std::optional<Elem> max_below(Sum bound) const {
    if (bound <= Sum(std::numeric_limits<Num>::lowest())) return std::nullopt;
    typename Set::const_iterator it;
    if (bound > Sum(std::numeric_limits<Num>::max())) {
      it = elems_.end();
    } else {
      it = elems_.lower_bound({(Num)bound, std::numeric_limits<int>::min()});
    }
    if (it == elems_.begin()) return std::nullopt;
    --it;
    return Elem{it->first, it->second};
  }

  /// Smallest element with value > bound; the largest index among equal values.
  std::optional<Elem> min_above(Sum bound) const {
    if (bound >= Sum(std::numeric_limits<Num>::max())) return std::nullopt;
    typename Set::const_iterator it;
    if (bound < Sum(std::numeric_limits<Num>::lowest())) {
      it = elems_.begin();
    } else {
      it = elems_.upper_bound({(Num)bound, std::numeric_limits<int>::max()});
    }
    if (it == elems_.end()) return std::nullopt;
    Num v = it->first;
    auto last_of_run = std::prev(elems_.upper_bound({v, std::numeric_limits<int>::max()}));
    return Elem{last_of_run->first, last_of_run->second};
  }

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

 private:
  using Set = std::set<std::pair<Num, int>>;
  Set elems_;
};

}  // namespace kpart
