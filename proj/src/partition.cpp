#include "kpart/partition.hpp"

#include <string>

#include "kpart/error.hpp"

namespace kpart {

template <class Num>
void validate_partition(const Instance<Num>& inst, const Partition& part) {
  if (part.k < 1) throw Error(Errc::InvalidK, "k must be at least 1");
  if ((int)part.assign.size() != inst.size())
    throw Error(Errc::InvalidAssignment,
                "assignment has " + std::to_string(part.assign.size()) +
                    " entries, instance has " + std::to_string(inst.size()));
  for (int i = 0; i < inst.size(); ++i) {
    if (part.assign[i] < 1 || part.assign[i] > part.k)
      throw Error(Errc::InvalidAssignment,
                  "element " + std::to_string(i) + " assigned to set " +
                      std::to_string(part.assign[i]) + ", valid range is 1.." +
                      std::to_string(part.k));
  }
}

template <class Num>
std::vector<SumOf<Num>> set_sums(const Instance<Num>& inst, const Partition& part) {
  validate_partition(inst, part);
  std::vector<SumOf<Num>> sums(part.k, SumOf<Num>(0));
  for (int i = 0; i < inst.size(); ++i) sums[part.assign[i] - 1] += SumOf<Num>(inst.values[i]);
  return sums;
}

template <class Num>
SumOf<Num> objective_value(const Instance<Num>& inst, const Partition& part, Objective obj) {
  auto vals = objectives_from_sums(set_sums(inst, part));
  switch (obj) {
    case Objective::MinimizeMax: return vals.min_max;
    case Objective::MaximizeMin: return vals.max_min;
    default: return vals.range;
  }
}

template void validate_partition(const Instance<int64_t>&, const Partition&);
template void validate_partition(const Instance<double>&, const Partition&);
template std::vector<Int128> set_sums(const Instance<int64_t>&, const Partition&);
template std::vector<double> set_sums(const Instance<double>&, const Partition&);
template Int128 objective_value(const Instance<int64_t>&, const Partition&, Objective);
template double objective_value(const Instance<double>&, const Partition&, Objective);

}  // namespace kpart
