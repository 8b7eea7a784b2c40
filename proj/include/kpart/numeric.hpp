#pragma once

#include <cstdint>
#include <string>
#include <type_traits>

namespace kpart {

using Int128 = __int128;

/// Numeric regime of an instance. Integer instances carry int64_t values and
/// accumulate sums in 128-bit signed arithmetic, so set sums stay exact even
/// for values near 2^60. Float instances use double throughout with strict
/// comparisons; no epsilons anywhere.
template <class Num>
struct numeric_traits;

template <>
struct numeric_traits<int64_t> {
  using Sum = Int128;
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "integer";
};

template <>
struct numeric_traits<double> {
  using Sum = double;
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "float";
};

template <class Num>
using SumOf = typename numeric_traits<Num>::Sum;

template <class S>
constexpr S abs_sum(S v) {
  return v < S(0) ? -v : v;
}

inline std::string to_string(Int128 v) {
  if (v == 0) return "0";
  unsigned __int128 u = v < 0 ? -(unsigned __int128)v : (unsigned __int128)v;
  char buf[48];
  int pos = 48;
  while (u > 0) {
    buf[--pos] = char('0' + (int)(u % 10));
    u /= 10;
  }
  std::string out;
  if (v < 0) out.push_back('-');
  out.append(buf + pos, 48 - pos);
  return out;
}

inline std::string sum_string(Int128 v) { return to_string(v); }
std::string sum_string(double v);  // shortest round-trip decimal, io.cpp

constexpr bool fits_int64(Int128 v) {
  return v >= Int128(INT64_MIN) && v <= Int128(INT64_MAX);
}

}  // namespace kpart
