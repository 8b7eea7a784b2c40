#include "kpart/baselines.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "kpart/error.hpp"

namespace kpart::baselines {

template <class Num>
Partition greedy_lpt(const Instance<Num>& inst, int k) {
  using Sum = SumOf<Num>;
  if (k < 1) throw Error(Errc::InvalidK, "k must be at least 1");
  const int n = inst.size();

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    Sum ma = abs_sum(Sum(inst.values[a])), mb = abs_sum(Sum(inst.values[b]));
    return ma != mb ? ma > mb : a < b;
  });

  Partition part;
  part.k = k;
  part.assign.resize(n);

  using Slot = std::pair<Sum, int>;
  std::priority_queue<Slot, std::vector<Slot>, std::greater<Slot>> heap;
  for (int s = 1; s <= k; ++s) heap.push({Sum(0), s});
  for (int e : order) {
    auto [sum, id] = heap.top();
    heap.pop();
    part.assign[e] = (int32_t)id;
    heap.push({sum + Sum(inst.values[e]), id});
  }
  return part;
}

namespace {

template <class Sum>
struct KkTuple {
  std::vector<Sum> slot_sum;
  std::vector<std::vector<int>> slot_elems;

  Sum spread() const {
    auto [mn, mx] = std::minmax_element(slot_sum.begin(), slot_sum.end());
    return *mx - *mn;
  }
};

// Slot order for merging and for the final set mapping: by sum, ties toward
// the lower slot position.
template <class Sum>
std::vector<int> slot_order(const std::vector<Sum>& sums, bool descending) {
  std::vector<int> idx(sums.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (sums[a] != sums[b]) return descending ? sums[a] > sums[b] : sums[a] < sums[b];
    return a < b;
  });
  return idx;
}

}  // namespace

template <class Num>
Partition karmarkar_karp_multiway(const Instance<Num>& inst, int k) {
  using Sum = SumOf<Num>;
  if (k < 1) throw Error(Errc::InvalidK, "k must be at least 1");
  for (int e = 0; e < inst.size(); ++e) {
    if (inst.values[e] < Num(0))
      throw Error(Errc::NegativeInput,
                  "differencing is defined for nonnegative values, element " + std::to_string(e) +
                      " is negative");
  }

  const int n = inst.size();
  Partition part;
  part.k = k;
  part.assign.assign(n, 1);
  if (n == 0 || k == 1) return part;

  // Pool keyed by (spread descending, insertion sequence ascending). Slot sums
  // stay raw rather than renormalized: the spread key is unchanged by a common
  // offset, so the merge order is the textbook one, and the surviving tuple's
  // slots then equal the true set sums.
  struct KeyCmp {
    bool operator()(const std::pair<Sum, int64_t>& a, const std::pair<Sum, int64_t>& b) const {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    }
  };
  std::map<std::pair<Sum, int64_t>, KkTuple<Sum>, KeyCmp> pool;

  int64_t seq = 0;
  for (int e = 0; e < n; ++e) {
    KkTuple<Sum> t;
    t.slot_sum.assign(k, Sum(0));
    t.slot_sum[0] = Sum(inst.values[e]);
    t.slot_elems.assign(k, {});
    t.slot_elems[0] = {e};
    pool.emplace(std::pair<Sum, int64_t>{t.spread(), seq++}, std::move(t));
  }

  while (pool.size() > 1) {
    KkTuple<Sum> a = std::move(pool.begin()->second);
    pool.erase(pool.begin());
    KkTuple<Sum> b = std::move(pool.begin()->second);
    pool.erase(pool.begin());

    auto ia = slot_order(a.slot_sum, true);
    auto ib = slot_order(b.slot_sum, false);
    KkTuple<Sum> merged;
    merged.slot_sum.resize(k);
    merged.slot_elems.resize(k);
    for (int r = 0; r < k; ++r) {
      merged.slot_sum[r] = a.slot_sum[ia[r]] + b.slot_sum[ib[r]];
      merged.slot_elems[r] = std::move(a.slot_elems[ia[r]]);
      auto& extra = b.slot_elems[ib[r]];
      merged.slot_elems[r].insert(merged.slot_elems[r].end(), extra.begin(), extra.end());
    }
    pool.emplace(std::pair<Sum, int64_t>{merged.spread(), seq++}, std::move(merged));
  }

  const KkTuple<Sum>& final_tuple = pool.begin()->second;
  auto ranked = slot_order(final_tuple.slot_sum, true);
  for (int r = 0; r < k; ++r)
    for (int e : final_tuple.slot_elems[ranked[r]]) part.assign[e] = (int32_t)(r + 1);
  return part;
}

template Partition greedy_lpt(const Instance<int64_t>&, int);
template Partition greedy_lpt(const Instance<double>&, int);
template Partition karmarkar_karp_multiway(const Instance<int64_t>&, int);
template Partition karmarkar_karp_multiway(const Instance<double>&, int);

}  // namespace kpart::baselines
