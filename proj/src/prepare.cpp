#include "kpart/prepare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace kpart {

namespace {

// Accumulate with overflow detection. Int128 cannot overflow on int64 inputs
// until the element count itself exceeds 2^64, but the check keeps the
// contract explicit; float sums overflow to infinity and are rejected.
bool accumulate_checked(Int128& acc, int64_t v) {
  return !__builtin_add_overflow(acc, (Int128)v, &acc);
}

bool accumulate_checked(double& acc, double v) {
  acc += v;
  return std::isfinite(acc);
}

}  // namespace

template <class Num>
Prepared<Num> prepare(const Instance<Num>& inst) {
  const int n = inst.size();

  if constexpr (!numeric_traits<Num>::exact) {
    for (int i = 0; i < n; ++i) {
      if (!std::isfinite(inst.values[i])) {
        throw Error(Errc::NonFiniteInput,
                    "value at index " + std::to_string(i) + " is not finite");
      }
    }
  }

  Prepared<Num> out;
  out.orig_index.resize(n);
  std::iota(out.orig_index.begin(), out.orig_index.end(), 0);
  std::sort(out.orig_index.begin(), out.orig_index.end(), [&](int a, int b) {
    return inst.values[a] != inst.values[b] ? inst.values[a] < inst.values[b] : a < b;
  });

  out.sorted_values.resize(n);
  for (int p = 0; p < n; ++p) out.sorted_values[p] = inst.values[out.orig_index[p]];

  for (Num v : out.sorted_values) {
    if (v < Num(0)) {
      ++out.n_negative;
      if (!accumulate_checked(out.negative_sum, v))
        throw Error(Errc::OverflowRisk, "negative partial sum exceeds accumulation width");
    } else if (v > Num(0)) {
      ++out.n_positive;
      if (!accumulate_checked(out.positive_sum, v))
        throw Error(Errc::OverflowRisk, "positive partial sum exceeds accumulation width");
    } else {
      ++out.n_zero;
    }
  }
  out.total = out.positive_sum + out.negative_sum;
  return out;
}

template Prepared<int64_t> prepare(const Instance<int64_t>&);
template Prepared<double> prepare(const Instance<double>&);

}  // namespace kpart
