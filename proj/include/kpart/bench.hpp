#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kpart::bench {

struct BenchRow {
  int64_t n = 0;
  int k = 0;
  int reps = 0;
  double median_ms = 0.0;
  int64_t move_count = 0;
  int64_t discard_count = 0;
};

/// Least-squares affine fit of median time against n * log2(n), one per k.
struct BenchFit {
  int k = 0;
  double slope_ms = 0.0;      // ms per unit of n*log2(n)
  double intercept_ms = 0.0;
  double r2 = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;   // one per (n, k), sizes outer order preserved
  std::vector<BenchFit> fits;   // one per distinct k
};

struct BenchConfig {
  std::vector<int64_t> sizes;
  std::vector<int> ks;
  int reps = 3;
  uint64_t seed = 1;
  int64_t value_lo = 1;          // uniform-int instance values
  int64_t value_hi = 1'000'000'000;
};

/// Generates a fresh uniform-int instance per (n, k) cell and times solve()
/// (prepare and sorting included, generation and I/O excluded), keeping the
/// median over reps. Every row is checked for move_count <= n; a violation
/// throws Errc::NonTermination since it signals the same class of internal
/// inconsistency as the solve guard.
BenchResult run_bench(const BenchConfig& config);

/// CSV rendering: header, one row per (n, k), then one "# fit ..." footer row
/// per k with the fit coefficient and R^2.
std::string to_csv(const BenchResult& result);

}  // namespace kpart::bench
