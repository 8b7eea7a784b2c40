#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kpart/check.hpp"
#include "kpart/instance.hpp"
#include "kpart/partition.hpp"
#include "kpart/solve.hpp"

namespace kpart::oracle {

/// Cap on K^N state enumeration. Enumeration refuses to start (BudgetExceeded)
/// rather than run past the cap.
struct OracleBudget {
  uint64_t max_states = 100'000'000;
};

/// Exhaustively enumerates all K^N assignments and returns one attaining the
/// optimum of the objective, with its value. Assignment vectors are visited
/// in mixed-radix counter order (element 0 cycles fastest); the first optimum
/// encountered is kept, which fixes the tie-break deterministically.
template <class Num>
std::pair<Partition, SumOf<Num>> brute_force_optimal(const Instance<Num>& inst, int k,
                                                     Objective obj, OracleBudget budget = {});

/// Ground truth for is_locally_optimal: the literal double loop over all
/// ordered set pairs and all elements, O(N*K). Returns every violation,
/// ordered by (from, to, element).
template <class Num>
std::vector<Violation<Num>> exhaustive_local_check(const Instance<Num>& inst,
                                                   const Partition& part);

/// Count and objective extremes over all locally optimal assignments
/// (those passing exhaustive_local_check).
template <class Sum>
struct LocalOptimaSummary {
  uint64_t count = 0;
  Sum best{};   // objective value: min over optima for minimization, max for MaximizeMin
  Sum worst{};
};

template <class Num>
LocalOptimaSummary<SumOf<Num>> enumerate_local_optima(const Instance<Num>& inst, int k,
                                                      Objective obj, OracleBudget budget = {});

/// Reference transcription of the solver: identical dispatch, tie rules, and
/// trace events, but every per-iteration decision is made by a full linear
/// scan over sets and elements instead of ordered containers. Output matches
/// kpart::solve byte for byte in integer mode.
template <class Num>
SolveOutcome<Num> reference_solver(const Instance<Num>& inst, int k);

}  // namespace kpart::oracle
