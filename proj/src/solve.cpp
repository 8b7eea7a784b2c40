#include "kpart/solve.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kpart/check.hpp"
#include "kpart/extreme_sum_index.hpp"
#include "kpart/ordered_elements.hpp"

namespace kpart {

namespace {

[[noreturn]] void guard_tripped(int64_t iterations, int n, int k) {
  throw Error(Errc::NonTermination,
              "iteration " + std::to_string(iterations) + " exceeds budget N + K = " +
                  std::to_string(n + k) + "; arithmetic inconsistency suspected");
}

// In integer mode 0 < x < d already implies |d - 2x| < d, so the recheck is
// redundant there; in float mode the actual updated sums decide, keeping the
// strict-decrease trace invariant unconditional.
template <class Sum>
bool strictly_decreases(Sum new_si, Sum new_sj, Sum d) {
  return abs_sum(new_si - new_sj) < d;
}

}  // namespace

template <class Num>
SolveOutcome<Num> solve_positive(const Prepared<Num>& prep, int k, const SolverConfig& config) {
  using Sum = SumOf<Num>;
  if (prep.n_negative > 0 || prep.n_zero > 0)
    throw std::invalid_argument("solve_positive requires strictly positive values");
  if (k < 1) throw Error(Errc::InvalidK, "k must be at least 1");

  const int n = prep.size();
  SolveOutcome<Num> out;
  out.partition.k = k;
  out.partition.assign.assign(n, 1);
  Trace<Num>& trace = out.trace;

  std::vector<Sum> sums(k, Sum(0));
  sums[0] = prep.total;

  std::vector<std::pair<Num, int>> initial(n);
  for (int p = 0; p < n; ++p) initial[p] = {prep.sorted_values[p], prep.orig_index[p]};
  std::vector<OrderedElements<Num>> elems(k);
  elems[0] = OrderedElements<Num>(initial.begin(), initial.end());

  ExtremeSumIndex<Sum> active;
  for (int s = 1; s <= k; ++s) active.insert(sums[s - 1], s);

  const int64_t budget = (int64_t)n + k;
  while (active.size() > 1) {
    auto [si, i] = active.argmax();
    auto [sj, j] = active.argmin();
    const Sum d = si - sj;

    auto cand = elems[i - 1].max_below(d);
    bool feasible = cand.has_value();
    Sum new_si{}, new_sj{};
    if (feasible) {
      new_si = si - Sum(cand->value);
      new_sj = sj + Sum(cand->value);
      feasible = strictly_decreases(new_si, new_sj, d);
    }

    if (!feasible) {
      active.erase(si, i);
      ++trace.discard_count;
      if (config.record_trace) trace.events.push_back(DiscardEvent{i});
    } else {
      elems[i - 1].erase(cand->value, cand->index);
      elems[j - 1].insert(cand->value, cand->index);
      active.update(si, new_si, i);
      active.update(sj, new_sj, j);
      sums[i - 1] = new_si;
      sums[j - 1] = new_sj;
      out.partition.assign[cand->index] = (int32_t)j;
      ++trace.move_count;
      if (config.record_trace)
        trace.events.push_back(
            MoveEvent<Num>{cand->index, cand->value, i, j, d, abs_sum(new_si - new_sj)});
    }
    if (trace.iterations() > budget) guard_tripped(trace.iterations(), n, k);
  }
  return out;
}

template <class Num>
SolveOutcome<Num> solve_signed(const Prepared<Num>& prep, int k, const SolverConfig& config) {
  using Sum = SumOf<Num>;
  if (prep.n_zero > 0) throw std::invalid_argument("solve_signed requires nonzero values");
  if (prep.n_negative == 0)
    throw std::invalid_argument("solve_signed requires at least one negative value");
  if (k < 1) throw Error(Errc::InvalidK, "k must be at least 1");

  const int n = prep.size();
  const int neg = prep.n_negative;
  SolveOutcome<Num> out;
  out.partition.k = k;
  out.partition.assign.assign(n, 1);
  Trace<Num>& trace = out.trace;

  std::vector<Sum> sums(k, Sum(0));
  sums[0] += prep.positive_sum;
  sums[k - 1] += prep.negative_sum;

  // sorted_values is ascending, so [0, neg) are the negatives.
  std::vector<std::pair<Num, int>> init_neg(neg), init_pos(n - neg);
  for (int p = 0; p < neg; ++p) init_neg[p] = {prep.sorted_values[p], prep.orig_index[p]};
  for (int p = neg; p < n; ++p) init_pos[p - neg] = {prep.sorted_values[p], prep.orig_index[p]};
  std::vector<OrderedElements<Num>> elems(k);
  elems[0] = OrderedElements<Num>(init_pos.begin(), init_pos.end());
  for (auto& [v, idx] : init_neg) {
    elems[k - 1].insert(v, idx);
    out.partition.assign[idx] = (int32_t)k;
  }

  ExtremeSumIndex<Sum> active;
  std::vector<char> set_active(k + 1, 1);
  for (int s = 1; s <= k; ++s) active.insert(sums[s - 1], s);

  const int64_t budget = (int64_t)n + k;
  while (active.size() > 1) {
    auto [si, i] = active.argmax();
    auto [sj, j] = active.argmin();
    const Sum d = si - sj;

    // Positive candidate: largest x in X_i with 0 < x < d.
    auto pos = elems[i - 1].max_below(d);
    if (pos && pos->value <= Num(0)) pos.reset();
    if (pos && !strictly_decreases(si - Sum(pos->value), sj + Sum(pos->value), d)) pos.reset();

    // Negative candidate: largest |x| in X_j with x < 0 and |x| < d.
    auto neg_cand = elems[j - 1].min_above(-d);
    if (neg_cand && neg_cand->value >= Num(0)) neg_cand.reset();
    if (neg_cand &&
        !strictly_decreases(si + Sum(neg_cand->value), sj - Sum(neg_cand->value), d))
      neg_cand.reset();

    bool take_pos;
    if (pos && neg_cand)
      take_pos = Sum(pos->value) >= -Sum(neg_cand->value);  // positive wins |x| ties
    else
      take_pos = pos.has_value();

    if (!pos && !neg_cand) {
      // The pair pools can run dry while a third set still holds an improving
      // transfer: a positive anywhere with x < S_a - S_j still helps the
      // argmin, a negative anywhere with |x| < S_i - S_a still helps the
      // argmax, and every improving transfer between ANY two sets implies one
      // of those two forms. So scan all active sets before discarding; only
      // an empty scan certifies the whole active family mutually clean, and
      // cleanliness survives later discards because the thresholds above only
      // shrink as the extremes contract.
      struct Rescue {
        Num value;
        int index;
        int from;
        bool positive;
        Sum new_from, new_dest, old_gap;
      };
      std::optional<Rescue> best;
      auto offer = [&](Num value, int index, int from, bool positive, Sum new_from, Sum new_dest,
                       Sum old_gap) {
        Sum mag = positive ? Sum(value) : -Sum(value);
        if (best) {
          Sum best_mag = best->positive ? Sum(best->value) : -Sum(best->value);
          if (mag < best_mag) return;
          if (mag == best_mag) {
            if (best->positive && !positive) return;
            if (best->positive == positive && index < best->index) return;
          }
        }
        best = Rescue{value, index, from, positive, new_from, new_dest, old_gap};
      };
      for (int a = 1; a <= k; ++a) {
        if (!set_active[a]) continue;
        const Sum sa = sums[a - 1];
        if (auto rp = elems[a - 1].max_below(sa - sj); rp && rp->value > Num(0)) {
          Sum nf = sa - Sum(rp->value), nd = sj + Sum(rp->value);
          if (strictly_decreases(nf, nd, sa - sj))
            offer(rp->value, rp->index, a, true, nf, nd, sa - sj);
        }
        if (auto rn = elems[a - 1].min_above(-(si - sa)); rn && rn->value < Num(0)) {
          Sum nf = sa - Sum(rn->value), nd = si + Sum(rn->value);
          if (strictly_decreases(nd, nf, si - sa))
            offer(rn->value, rn->index, a, false, nf, nd, si - sa);
        }
      }
      if (best) {
        const int dest = best->positive ? j : i;
        elems[best->from - 1].erase(best->value, best->index);
        elems[dest - 1].insert(best->value, best->index);
        active.update(sums[best->from - 1], best->new_from, best->from);
        active.update(sums[dest - 1], best->new_dest, dest);
        sums[best->from - 1] = best->new_from;
        sums[dest - 1] = best->new_dest;
        out.partition.assign[best->index] = (int32_t)dest;
        ++trace.move_count;
        if (config.record_trace)
          trace.events.push_back(MoveEvent<Num>{best->index, best->value, best->from, dest,
                                                best->old_gap,
                                                abs_sum(best->new_from - best->new_dest)});
      } else {
        active.erase(si, i);
        set_active[i] = 0;
        if (i != j) {
          active.erase(sj, j);
          set_active[j] = 0;
        }
        ++trace.discard_count;
        if (config.record_trace) trace.events.push_back(DiscardPairEvent{i, j});
      }
    } else if (take_pos) {
      Sum new_si = si - Sum(pos->value), new_sj = sj + Sum(pos->value);
      elems[i - 1].erase(pos->value, pos->index);
      elems[j - 1].insert(pos->value, pos->index);
      active.update(si, new_si, i);
      active.update(sj, new_sj, j);
      sums[i - 1] = new_si;
      sums[j - 1] = new_sj;
      out.partition.assign[pos->index] = (int32_t)j;
      ++trace.move_count;
      if (config.record_trace)
        trace.events.push_back(
            MoveEvent<Num>{pos->index, pos->value, i, j, d, abs_sum(new_si - new_sj)});
    } else {
      Sum new_si = si + Sum(neg_cand->value), new_sj = sj - Sum(neg_cand->value);
      elems[j - 1].erase(neg_cand->value, neg_cand->index);
      elems[i - 1].insert(neg_cand->value, neg_cand->index);
      active.update(si, new_si, i);
      active.update(sj, new_sj, j);
      sums[i - 1] = new_si;
      sums[j - 1] = new_sj;
      out.partition.assign[neg_cand->index] = (int32_t)i;
      ++trace.move_count;
      if (config.record_trace)
        trace.events.push_back(
            MoveEvent<Num>{neg_cand->index, neg_cand->value, j, i, d, abs_sum(new_si - new_sj)});
    }
    if (trace.iterations() > budget) guard_tripped(trace.iterations(), n, k);
  }
  return out;
}

template <class Num>
Report<Num> solve(const Instance<Num>& inst, int k, const SolverConfig& config) {
  if (k < 1) throw Error(Errc::InvalidK, "k must be at least 1");
  auto start = std::chrono::steady_clock::now();

  Prepared<Num> prep = prepare(inst);
  const int n = inst.size();

  Report<Num> report;
  report.partition.k = k;
  report.partition.assign.assign(n, 1);

  if (k > 1 && prep.n_negative + prep.n_positive > 0) {
    if (prep.n_zero == 0) {
      auto outcome = prep.n_negative > 0 ? solve_signed(prep, k, config)
                                         : solve_positive(prep, k, config);
      report.partition = std::move(outcome.partition);
      report.trace = std::move(outcome.trace);
    } else {
      Instance<Num> nonzero;
      std::vector<int> full_index;
      nonzero.values.reserve(n - prep.n_zero);
      full_index.reserve(n - prep.n_zero);
      for (int idx = 0; idx < n; ++idx) {
        if (inst.values[idx] != Num(0)) {
          nonzero.values.push_back(inst.values[idx]);
          full_index.push_back(idx);
        }
      }
      Prepared<Num> sub = prepare(nonzero);
      auto outcome = sub.n_negative > 0 ? solve_signed(sub, k, config)
                                        : solve_positive(sub, k, config);
      for (int s = 0; s < nonzero.size(); ++s)
        report.partition.assign[full_index[s]] = outcome.partition.assign[s];
      report.trace = std::move(outcome.trace);
      for (auto& event : report.trace.events)
        if (auto* move = std::get_if<MoveEvent<Num>>(&event)) move->element = full_index[move->element];
      int slot = 0;
      for (int idx = 0; idx < n; ++idx)
        if (inst.values[idx] == Num(0)) report.partition.assign[idx] = (int32_t)(slot++ % k + 1);
    }
  } else if (k > 1) {
    // all-zero input: round-robin alone
    for (int idx = 0; idx < n; ++idx) report.partition.assign[idx] = (int32_t)(idx % k + 1);
  }

  report.sums = set_sums(inst, report.partition);
  report.objectives = objectives_from_sums(report.sums);
  if (config.run_checker) report.locally_optimal = is_locally_optimal(inst, report.partition).empty();

  auto stop = std::chrono::steady_clock::now();
  report.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

template SolveOutcome<int64_t> solve_positive(const Prepared<int64_t>&, int, const SolverConfig&);
template SolveOutcome<double> solve_positive(const Prepared<double>&, int, const SolverConfig&);
template SolveOutcome<int64_t> solve_signed(const Prepared<int64_t>&, int, const SolverConfig&);
template SolveOutcome<double> solve_signed(const Prepared<double>&, int, const SolverConfig&);
template Report<int64_t> solve(const Instance<int64_t>&, int, const SolverConfig&);
template Report<double> solve(const Instance<double>&, int, const SolverConfig&);

}  // namespace kpart
