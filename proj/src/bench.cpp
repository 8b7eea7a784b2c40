#include "kpart/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "kpart/error.hpp"
#include "kpart/io.hpp"
#include "kpart/rng.hpp"
#include "kpart/solve.hpp"

namespace kpart::bench {

namespace {

uint64_t mix_seed(uint64_t a, uint64_t b) {
  SplitMix64 sm(a ^ (b + 0x9E3779B97F4A7C15ULL));
  return sm.next();
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

BenchFit fit_series(int k, const std::vector<BenchRow>& rows) {
  std::vector<double> x, y;
  for (const auto& row : rows) {
    if (row.k != k) continue;
    x.push_back((double)row.n * std::log2((double)row.n));
    y.push_back(row.median_ms);
  }
  BenchFit fit;
  fit.k = k;
  const size_t m = x.size();
  if (m == 0) return fit;
  double mean_x = 0, mean_y = 0;
  for (size_t p = 0; p < m; ++p) {
    mean_x += x[p];
    mean_y += y[p];
  }
  mean_x /= (double)m;
  mean_y /= (double)m;
  double sxx = 0, sxy = 0;
  for (size_t p = 0; p < m; ++p) {
    sxx += (x[p] - mean_x) * (x[p] - mean_x);
    sxy += (x[p] - mean_x) * (y[p] - mean_y);
  }
  fit.slope_ms = sxx > 0 ? sxy / sxx : 0.0;
  fit.intercept_ms = mean_y - fit.slope_ms * mean_x;
  double ss_res = 0, ss_tot = 0;
  for (size_t p = 0; p < m; ++p) {
    double r = y[p] - (fit.intercept_ms + fit.slope_ms * x[p]);
    ss_res += r * r;
    ss_tot += (y[p] - mean_y) * (y[p] - mean_y);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace

BenchResult run_bench(const BenchConfig& config) {
  if (config.reps < 1) throw Error(Errc::InvalidSpec, "reps must be at least 1");
  if (config.sizes.empty()) throw Error(Errc::InvalidSpec, "sizes must be nonempty");
  if (config.ks.empty()) throw Error(Errc::InvalidSpec, "ks must be nonempty");
  for (int64_t n : config.sizes)
    if (n < 1) throw Error(Errc::InvalidSpec, "sizes must be at least 1");
  for (int k : config.ks)
    if (k < 1) throw Error(Errc::InvalidK, "k must be at least 1");

  BenchResult result;
  for (int64_t n : config.sizes) {
    for (int k : config.ks) {
      io::GeneratorSpec gen;
      gen.dist = io::Distribution::UniformInt;
      gen.int_lo = config.value_lo;
      gen.int_hi = config.value_hi;
      gen.n = n;
      gen.seed = mix_seed(mix_seed(config.seed, (uint64_t)n), (uint64_t)k);
      IntInstance inst = std::get<IntInstance>(io::generate(gen));

      SolverConfig solver_config;
      solver_config.record_trace = false;
      std::vector<double> times;
      BenchRow row{n, k, config.reps, 0.0, 0, 0};
      for (int rep = 0; rep < config.reps; ++rep) {
        Report<int64_t> report = solve(inst, k, solver_config);
        times.push_back(report.wall_time_ms);
        row.move_count = report.trace.move_count;
        row.discard_count = report.trace.discard_count;
      }
      row.median_ms = median(std::move(times));
      if (row.move_count > n)
        throw Error(Errc::NonTermination, "move_count " + std::to_string(row.move_count) +
                                              " exceeds n = " + std::to_string(n));
      result.rows.push_back(row);
    }
  }

  std::vector<int> seen;
  for (int k : config.ks) {
    if (std::find(seen.begin(), seen.end(), k) != seen.end()) continue;
    seen.push_back(k);
    result.fits.push_back(fit_series(k, result.rows));
  }
  return result;
}

std::string to_csv(const BenchResult& result) {
  std::string out = "n,k,reps,median_ms,move_count,discard_count\n";
  char buf[160];
  for (const auto& row : result.rows) {
    std::snprintf(buf, sizeof buf, "%lld,%d,%d,%.6f,%lld,%lld\n", (long long)row.n, row.k,
                  row.reps, row.median_ms, (long long)row.move_count,
                  (long long)row.discard_count);
    out += buf;
  }
  for (const auto& fit : result.fits) {
    std::snprintf(buf, sizeof buf, "# fit k=%d slope_ms=%.9g intercept_ms=%.6g r2=%.6f\n", fit.k,
                  fit.slope_ms, fit.intercept_ms, fit.r2);
    out += buf;
  }
  return out;
}

}  // namespace kpart::bench
