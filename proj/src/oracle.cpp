#include "kpart/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "kpart/prepare.hpp"

namespace kpart::oracle {

namespace {

uint64_t state_count_or_throw(int k, int n, const OracleBudget& budget) {
  uint64_t states = 1;
  bool over = false;
  for (int e = 0; e < n && !over; ++e) {
    if (states > UINT64_MAX / (uint64_t)k) over = true;
    else states *= (uint64_t)k;
  }
  if (over || states > budget.max_states) {
    std::string total = over ? [&] {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3Le", powl((long double)k, (long double)n));
      return std::string(buf);
    }() : std::to_string(states);
    throw Error(Errc::BudgetExceeded, "K^N = " + total + " states exceeds budget " +
                                          std::to_string(budget.max_states));
  }
  return states;
}

// Advance the mixed-radix assignment counter by one (element 0 is the least
// significant digit), patching sums incrementally. Callers never step past
// the last state, so pos stays in range.
template <class Num, class Sum>
void advance(const Instance<Num>& inst, int k, std::vector<int>& digits, std::vector<Sum>& sums) {
  int pos = 0;
  while (true) {
    Sum x = Sum(inst.values[pos]);
    int d = digits[pos];
    if (d + 1 < k) {
      digits[pos] = d + 1;
      sums[d] -= x;
      sums[d + 1] += x;
      return;
    }
    digits[pos] = 0;
    sums[d] -= x;
    sums[0] += x;
    ++pos;
  }
}

template <class Sum>
Sum eval_objective(const std::vector<Sum>& sums, Objective obj) {
  Sum mx = sums[0], mn = sums[0];
  for (Sum s : sums) {
    if (s > mx) mx = s;
    if (s < mn) mn = s;
  }
  switch (obj) {
    case Objective::MinimizeMax: return mx;
    case Objective::MaximizeMin: return mn;
    default: return mx - mn;
  }
}

}  // namespace

template <class Num>
std::pair<Partition, SumOf<Num>> brute_force_optimal(const Instance<Num>& inst, int k,
                                                     Objective obj, OracleBudget budget) {
  using Sum = SumOf<Num>;
  if (k < 1) throw Error(Errc::InvalidK, "k must be at least 1");
  const int n = inst.size();
  const uint64_t states = state_count_or_throw(k, n, budget);

  std::vector<int> digits(n, 0);
  std::vector<Sum> sums(k, Sum(0));
  for (Num v : inst.values) sums[0] += Sum(v);

  std::vector<int> best_digits = digits;
  Sum best = eval_objective(sums, obj);
  const bool maximize = obj == Objective::MaximizeMin;
  for (uint64_t s = 1; s < states; ++s) {
    advance(inst, k, digits, sums);
    Sum v = eval_objective(sums, obj);
    if (maximize ? v > best : v < best) {
      best = v;
      best_digits = digits;
    }
  }

  Partition part;
  part.k = k;
  part.assign.resize(n);
  for (int e = 0; e < n; ++e) part.assign[e] = (int32_t)(best_digits[e] + 1);
  return {part, best};
}

template <class Num>
std::vector<Violation<Num>> exhaustive_local_check(const Instance<Num>& inst,
                                                   const Partition& part) {
  using Sum = SumOf<Num>;
  auto sums = set_sums(inst, part);
  const int n = inst.size();

  std::vector<Violation<Num>> out;
  for (int from = 1; from <= part.k; ++from) {
    for (int to = 1; to <= part.k; ++to) {
      if (to == from) continue;
      for (int e = 0; e < n; ++e) {
        if (part.assign[e] != from) continue;
        Sum x = Sum(inst.values[e]);
        Sum old_d = abs_sum(sums[from - 1] - sums[to - 1]);
        Sum new_d = abs_sum((sums[from - 1] - x) - (sums[to - 1] + x));
        if (new_d < old_d) out.push_back({e, from, to, old_d, new_d});
      }
    }
  }
  return out;
}

template <class Num>
LocalOptimaSummary<SumOf<Num>> enumerate_local_optima(const Instance<Num>& inst, int k,
                                                      Objective obj, OracleBudget budget) {
  using Sum = SumOf<Num>;
  if (k < 1) throw Error(Errc::InvalidK, "k must be at least 1");
  const int n = inst.size();
  const uint64_t states = state_count_or_throw(k, n, budget);

  std::vector<int> digits(n, 0);
  std::vector<Sum> sums(k, Sum(0));
  for (Num v : inst.values) sums[0] += Sum(v);

  auto locally_optimal = [&]() {
    for (int e = 0; e < n; ++e) {
      Sum x = Sum(inst.values[e]);
      int from = digits[e];
      for (int to = 0; to < k; ++to) {
        if (to == from) continue;
        Sum old_d = abs_sum(sums[from] - sums[to]);
        Sum new_d = abs_sum((sums[from] - x) - (sums[to] + x));
        if (new_d < old_d) return false;
      }
    }
    return true;
  };

  LocalOptimaSummary<Sum> summary;
  const bool maximize = obj == Objective::MaximizeMin;
  for (uint64_t s = 0; s < states; ++s) {
    if (s > 0) advance(inst, k, digits, sums);
    if (!locally_optimal()) continue;
    Sum v = eval_objective(sums, obj);
    if (summary.count == 0) {
      summary.best = summary.worst = v;
    } else if (maximize ? v > summary.best : v < summary.best) {
      summary.best = v;
    } else if (maximize ? v < summary.worst : v > summary.worst) {
      summary.worst = v;
    }
    ++summary.count;
  }
  return summary;
}

template <class Num>
SolveOutcome<Num> reference_solver(const Instance<Num>& inst, int k) {
  using Sum = SumOf<Num>;
  if (k < 1) throw Error(Errc::InvalidK, "k must be at least 1");
  Prepared<Num> prep = prepare(inst);
  const int n = inst.size();

  SolveOutcome<Num> out;
  out.partition.k = k;
  out.partition.assign.assign(n, 1);

  if (k == 1) return out;
  if (prep.n_negative + prep.n_positive == 0) {
    for (int idx = 0; idx < n; ++idx) out.partition.assign[idx] = (int32_t)(idx % k + 1);
    return out;
  }

  std::vector<Num> vals;
  std::vector<int> full_index;
  for (int idx = 0; idx < n; ++idx) {
    if (inst.values[idx] != Num(0)) {
      vals.push_back(inst.values[idx]);
      full_index.push_back(idx);
    }
  }
  const int m = (int)vals.size();
  const bool has_neg = prep.n_negative > 0;

  // Seed the sums from a fresh preparation of the stripped values so the
  // accumulation order (ascending value, then index) matches the core solver
  // bit for bit in float mode.
  Instance<Num> sub;
  sub.values = vals;
  Prepared<Num> prep_sub = prepare(sub);
  std::vector<int> assign_sub(m, 1);
  std::vector<Sum> sums(k, Sum(0));
  if (has_neg) {
    sums[0] += prep_sub.positive_sum;
    sums[k - 1] += prep_sub.negative_sum;
    for (int e = 0; e < m; ++e)
      if (vals[e] < Num(0)) assign_sub[e] = k;
  } else {
    sums[0] = prep_sub.total;
  }

  std::vector<char> active(k + 1, 1);
  int active_count = k;
  Trace<Num>& trace = out.trace;
  const int64_t iter_budget = (int64_t)m + k;

  while (active_count > 1) {
    int i = 0, j = 0;
    for (int s = 1; s <= k; ++s) {
      if (!active[s]) continue;
      if (i == 0 || sums[s - 1] > sums[i - 1]) i = s;
      if (j == 0 || sums[s - 1] < sums[j - 1]) j = s;
    }
    const Sum d = sums[i - 1] - sums[j - 1];

    // Candidate scans over every element, exactly mirroring the core rules:
    // positive from the argmax set with x < d, negative from the argmin set
    // with |x| < d; larger value (magnitude) wins, then larger index.
    int pos_e = -1, neg_e = -1;
    for (int e = 0; e < m; ++e) {
      if (assign_sub[e] == i && vals[e] > Num(0) && Sum(vals[e]) < d) {
        if (pos_e < 0 || vals[e] > vals[pos_e] || (vals[e] == vals[pos_e] && e > pos_e)) pos_e = e;
      }
      if (has_neg && assign_sub[e] == j && vals[e] < Num(0) && -Sum(vals[e]) < d) {
        if (neg_e < 0 || vals[e] < vals[neg_e] || (vals[e] == vals[neg_e] && e > neg_e)) neg_e = e;
      }
    }
    if (pos_e >= 0) {
      Sum new_si = sums[i - 1] - Sum(vals[pos_e]), new_sj = sums[j - 1] + Sum(vals[pos_e]);
      if (!(abs_sum(new_si - new_sj) < d)) pos_e = -1;
    }
    if (neg_e >= 0) {
      Sum new_si = sums[i - 1] + Sum(vals[neg_e]), new_sj = sums[j - 1] - Sum(vals[neg_e]);
      if (!(abs_sum(new_si - new_sj) < d)) neg_e = -1;
    }

    bool take_pos = neg_e < 0 || (pos_e >= 0 && Sum(vals[pos_e]) >= -Sum(vals[neg_e]));
    if (pos_e < 0 && neg_e < 0) {
      if (!has_neg) {
        active[i] = 0;
        --active_count;
        ++trace.discard_count;
        trace.events.push_back(DiscardEvent{i});
      } else {
        // Same rescue rule as the core loop: before discarding, hunt for a
        // positive anywhere that still improves toward the argmin or a
        // negative anywhere that improves toward the argmax. Per set, the
        // best candidate by value then index, rechecked on the actual sums.
        std::vector<int> set_pos(k + 1, -1), set_neg(k + 1, -1);
        for (int e = 0; e < m; ++e) {
          int a = assign_sub[e];
          if (!active[a]) continue;
          if (vals[e] > Num(0)) {
            if (Sum(vals[e]) < sums[a - 1] - sums[j - 1]) {
              int& b = set_pos[a];
              if (b < 0 || vals[e] > vals[b] || (vals[e] == vals[b] && e > b)) b = e;
            }
          } else if (-Sum(vals[e]) < sums[i - 1] - sums[a - 1]) {
            int& b = set_neg[a];
            if (b < 0 || vals[e] < vals[b] || (vals[e] == vals[b] && e > b)) b = e;
          }
        }
        int best_e = -1, best_from = 0;
        bool best_is_pos = false;
        auto offer = [&](int e, int from, bool positive) {
          Sum mag = positive ? Sum(vals[e]) : -Sum(vals[e]);
          if (best_e >= 0) {
            Sum best_mag = best_is_pos ? Sum(vals[best_e]) : -Sum(vals[best_e]);
            if (mag < best_mag) return;
            if (mag == best_mag) {
              if (best_is_pos && !positive) return;
              if (best_is_pos == positive && e < best_e) return;
            }
          }
          best_e = e;
          best_from = from;
          best_is_pos = positive;
        };
        for (int a = 1; a <= k; ++a) {
          if (int e = set_pos[a]; e >= 0) {
            Sum gap = sums[a - 1] - sums[j - 1];
            if (abs_sum((sums[a - 1] - Sum(vals[e])) - (sums[j - 1] + Sum(vals[e]))) < gap)
              offer(e, a, true);
          }
          if (int e = set_neg[a]; e >= 0) {
            Sum gap = sums[i - 1] - sums[a - 1];
            if (abs_sum((sums[i - 1] + Sum(vals[e])) - (sums[a - 1] - Sum(vals[e]))) < gap)
              offer(e, a, false);
          }
        }
        if (best_e >= 0) {
          int dest = best_is_pos ? j : i;
          Sum old_gap = best_is_pos ? sums[best_from - 1] - sums[j - 1]
                                    : sums[i - 1] - sums[best_from - 1];
          Sum new_from = sums[best_from - 1] - Sum(vals[best_e]);
          Sum new_dest = sums[dest - 1] + Sum(vals[best_e]);
          sums[best_from - 1] = new_from;
          sums[dest - 1] = new_dest;
          assign_sub[best_e] = dest;
          ++trace.move_count;
          trace.events.push_back(MoveEvent<Num>{full_index[best_e], vals[best_e], best_from, dest,
                                                old_gap, abs_sum(new_from - new_dest)});
        } else {
          active[i] = 0;
          --active_count;
          if (j != i) {
            active[j] = 0;
            --active_count;
          }
          ++trace.discard_count;
          trace.events.push_back(DiscardPairEvent{i, j});
        }
      }
    } else if (take_pos) {
      Num x = vals[pos_e];
      Sum new_si = sums[i - 1] - Sum(x), new_sj = sums[j - 1] + Sum(x);
      sums[i - 1] = new_si;
      sums[j - 1] = new_sj;
      assign_sub[pos_e] = j;
      ++trace.move_count;
      trace.events.push_back(
          MoveEvent<Num>{full_index[pos_e], x, i, j, d, abs_sum(new_si - new_sj)});
    } else {
      Num x = vals[neg_e];
      Sum new_si = sums[i - 1] + Sum(x), new_sj = sums[j - 1] - Sum(x);
      sums[i - 1] = new_si;
      sums[j - 1] = new_sj;
      assign_sub[neg_e] = i;
      ++trace.move_count;
      trace.events.push_back(
          MoveEvent<Num>{full_index[neg_e], x, j, i, d, abs_sum(new_si - new_sj)});
    }
    if (trace.iterations() > iter_budget)
      throw Error(Errc::NonTermination, "reference solver exceeded N + K iterations");
  }

  for (int e = 0; e < m; ++e) out.partition.assign[full_index[e]] = (int32_t)assign_sub[e];
  int slot = 0;
  for (int idx = 0; idx < n; ++idx)
    if (inst.values[idx] == Num(0)) out.partition.assign[idx] = (int32_t)(slot++ % k + 1);
  return out;
}

template std::pair<Partition, Int128> brute_force_optimal(const Instance<int64_t>&, int, Objective,
                                                          OracleBudget);
template std::pair<Partition, double> brute_force_optimal(const Instance<double>&, int, Objective,
                                                          OracleBudget);
template std::vector<Violation<int64_t>> exhaustive_local_check(const Instance<int64_t>&,
                                                                const Partition&);
template std::vector<Violation<double>> exhaustive_local_check(const Instance<double>&,
                                                               const Partition&);
template LocalOptimaSummary<Int128> enumerate_local_optima(const Instance<int64_t>&, int, Objective,
                                                           OracleBudget);
template LocalOptimaSummary<double> enumerate_local_optima(const Instance<double>&, int, Objective,
                                                           OracleBudget);
template SolveOutcome<int64_t> reference_solver(const Instance<int64_t>&, int);
template SolveOutcome<double> reference_solver(const Instance<double>&, int);

}  // namespace kpart::oracle
