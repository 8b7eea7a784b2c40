#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kpart/numeric.hpp"

namespace kpart {

/// An index-stable multiset of numbers to partition. Position n holds x_n;
/// duplicates are distinct elements identified by their index.
template <class Num>
struct Instance {
  std::vector<Num> values;
  std::string name;

  Instance() = default;
  explicit Instance(std::vector<Num> v, std::string nm = {})
      : values(std::move(v)), name(std::move(nm)) {}

  int size() const { return (int)values.size(); }
};

using IntInstance = Instance<int64_t>;
using FloatInstance = Instance<double>;

}  // namespace kpart
