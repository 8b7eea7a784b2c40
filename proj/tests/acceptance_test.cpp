#include <doctest.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kpart/check.hpp"
#include "kpart/oracle.hpp"
#include "kpart/rng.hpp"
#include "kpart/solve.hpp"
#include "support/instance_gen.hpp"
#include "support/spawn.hpp"
#include "support/trace_check.hpp"

#ifndef KPART_BIN
#error "KPART_BIN must point at the cli binary"
#endif

using kpart::DiscardEvent;
using kpart::DiscardPairEvent;
using kpart::Int128;
using kpart::IntInstance;
using kpart::MoveEvent;
using kpart::Objective;
using kpart::SolverConfig;
using kpart::TraceEvent;
namespace ts = kpart::testsupport;

namespace {

// Every tolerance and budget the criteria depend on, in one place.
constexpr int kC1Count = 10000;        // instances, N in [0,200], K in [1,8]
constexpr int kC2Count = 1000;         // instances, N <= 500, K <= 16
constexpr int kC5Count = 300;          // instances with K^N <= 1e6
constexpr int kC6BigCount = 40;        // instances with values near 2^60
constexpr int kC6ScaleCount = 200;     // scale-invariance cases
constexpr int kC7Count = 2000;         // mixed-sign instances with zeros
constexpr double kC1TimeLimitSec = 120.0;
constexpr double kC4TimeLimitSec = 300.0;
constexpr double kMinR2 = 0.98;
constexpr double kDoublingLo = 1.7;
constexpr double kDoublingHi = 2.7;

constexpr uint64_t kC1PickerSeed = 1001;
constexpr uint64_t kC2PickerSeed = 2002;

// Emits one "[acceptance] <criterion>: PASS|FAIL" line per test case.
struct AcceptancePrinter : doctest::IReporter {
  const doctest::TestCaseData* current = nullptr;

  explicit AcceptancePrinter(const doctest::ContextOptions&) {}

  void report_query(const doctest::QueryData&) override {}
  void test_run_start() override {}
  void test_run_end(const doctest::TestRunStats&) override {}
  void test_case_start(const doctest::TestCaseData& in) override { current = &in; }
  void test_case_reenter(const doctest::TestCaseData&) override {}
  void test_case_end(const doctest::CurrentTestCaseStats& stats) override {
    if (current)
      std::printf("[acceptance] %s: %s\n", current->m_name,
                  stats.testCaseSuccess ? "PASS" : "FAIL");
    std::fflush(stdout);
  }
  void test_case_exception(const doctest::TestCaseException&) override {}
  void subcase_start(const doctest::SubcaseSignature&) override {}
  void subcase_end() override {}
  void log_assert(const doctest::AssertData&) override {}
  void log_message(const doctest::MessageData&) override {}
  void test_case_skipped(const doctest::TestCaseData&) override {}
};

REGISTER_LISTENER("acceptance", 1, AcceptancePrinter);

double sec_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// The seeded corpora. Criterion 3 replays the exact criterion 1 and 2
// streams, so instance selection lives here and nowhere else.
template <class Fn>
void for_each_seeded_case(uint64_t picker_seed, int count, int n_hi, int k_hi, Fn&& fn) {
  kpart::Xoshiro256ss picker(picker_seed);
  for (int i = 0; i < count; ++i) {
    int n = (int)picker.uniform_int(0, n_hi);
    int k = (int)picker.uniform_int(1, k_hi);
    uint64_t seed = picker.next();
    fn(i, n, k, seed);
  }
}

template <class Fn>
void with_flavor(int i, int n, uint64_t seed, Fn&& fn) {
  switch (i % 5) {
    case 0: fn(ts::int_positive(n, seed)); break;
    case 1: fn(ts::int_mixed(n, seed)); break;
    case 2: fn(ts::float_uniform(n, seed)); break;
    case 3: fn(ts::float_gaussian(n, seed)); break;
    default: fn(ts::float_with_zeros(n, seed)); break;
  }
}

IntInstance c2_instance(int i, int n, uint64_t seed) {
  return (i % 2) ? ts::int_mixed(n, seed) : ts::int_positive(n, seed);
}

}  // namespace

TEST_CASE("criterion 1: solver output is locally optimal on 10000 seeded instances") {
  auto t0 = std::chrono::steady_clock::now();
  SolverConfig config;
  config.record_trace = false;

  long long cases = 0, failures = 0;
  std::string first_failure;
  for_each_seeded_case(kC1PickerSeed, kC1Count, 200, 8, [&](int i, int n, int k, uint64_t seed) {
    with_flavor(i, n, seed, [&](const auto& inst) {
      auto report = kpart::solve(inst, k, config);
      kpart::validate_partition(inst, report.partition);
      if (!kpart::oracle::exhaustive_local_check(inst, report.partition).empty()) {
        ++failures;
        if (first_failure.empty())
          first_failure = "case " + std::to_string(i) + " (n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ", seed=" + std::to_string(seed) + ")";
      }
      ++cases;
    });
  });

  CHECK(cases == kC1Count);
  CHECK_MESSAGE(failures == 0, first_failure);
  CHECK(sec_since(t0) < kC1TimeLimitSec);
}

TEST_CASE("criterion 2: solve matches the reference transcription on 1000 integer instances") {
  long long mismatches = 0;
  std::string first_failure;
  for_each_seeded_case(kC2PickerSeed, kC2Count, 500, 16, [&](int i, int n, int k, uint64_t seed) {
    IntInstance inst = c2_instance(i, n, seed);
    auto fast = kpart::solve(inst, k, SolverConfig{});
    auto slow = kpart::oracle::reference_solver(inst, k);
    if (fast.partition != slow.partition || fast.trace != slow.trace) {
      ++mismatches;
      if (first_failure.empty())
        first_failure = "case " + std::to_string(i) + " (n=" + std::to_string(n) +
                        ", k=" + std::to_string(k) + ", seed=" + std::to_string(seed) + ")";
    }
  });
  CHECK_MESSAGE(mismatches == 0, first_failure);
}

TEST_CASE("criterion 3: trace invariants hold across the criterion 1 and 2 corpora") {
  // check_trace replays every event: strict |dS| decrease, pair-sum
  // conservation, monotone global extremes, move_count <= N, iteration
  // budget, and the nonincreasing moved-value order of the positive variant.
  for_each_seeded_case(kC1PickerSeed, kC1Count, 200, 8, [&](int i, int n, int k, uint64_t seed) {
    with_flavor(i, n, seed, [&](const auto& inst) {
      auto report = kpart::solve(inst, k, SolverConfig{});
      ts::check_trace(inst, k, report);
    });
  });
  for_each_seeded_case(kC2PickerSeed, kC2Count, 500, 16, [&](int i, int n, int k, uint64_t seed) {
    IntInstance inst = c2_instance(i, n, seed);
    auto report = kpart::solve(inst, k, SolverConfig{});
    ts::check_trace(inst, k, report);
  });
}

TEST_CASE("criterion 4: median solve time scales as n log2 n") {
  auto t0 = std::chrono::steady_clock::now();
  auto r = ts::run_process(std::string(KPART_BIN) +
                           " bench --sizes 65536,131072,262144,524288,1048576,2097152,4194304"
                           " --ks 2,64 --reps 3 --seed 1 2>/dev/null");
  double secs = sec_since(t0);
  REQUIRE(r.code == 0);

  std::istringstream lines(r.out);
  std::string line;
  REQUIRE(std::getline(lines, line));
  REQUIRE(line == "n,k,reps,median_ms,move_count,discard_count");

  std::map<int, std::vector<std::pair<long long, double>>> series;  // k -> (n, median)
  std::map<int, double> fit_r2;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    if (line.rfind("# fit ", 0) == 0) {
      int k = 0;
      double slope = 0, intercept = 0, r2 = 0;
      REQUIRE(std::sscanf(line.c_str(), "# fit k=%d slope_ms=%lf intercept_ms=%lf r2=%lf", &k,
                          &slope, &intercept, &r2) == 4);
      CHECK(slope > 0.0);
      fit_r2[k] = r2;
    } else {
      long long n = 0, moves = 0, discards = 0;
      int k = 0, reps = 0;
      double median = 0;
      REQUIRE(std::sscanf(line.c_str(), "%lld,%d,%d,%lf,%lld,%lld", &n, &k, &reps, &median,
                          &moves, &discards) == 6);
      CHECK(moves <= n);
      series[k].push_back({n, median});
    }
  }

  REQUIRE(series.size() == 2);
  REQUIRE(fit_r2.size() == 2);
  for (int k : {2, 64}) {
    REQUIRE(series.count(k) == 1);
    const auto& rows = series[k];
    REQUIRE(rows.size() == 7);
    CAPTURE(k);
    CHECK(fit_r2[k] >= kMinR2);
    for (size_t p = 1; p < rows.size(); ++p) {
      REQUIRE(rows[p].first == 2 * rows[p - 1].first);
      double factor = rows[p].second / rows[p - 1].second;
      CAPTURE(rows[p].first);
      CHECK(factor >= kDoublingLo);
      CHECK(factor <= kDoublingHi);
    }
  }
  CHECK(secs < kC4TimeLimitSec);
}

TEST_CASE("criterion 5: solver range is bounded below by the brute-force optimum") {
  kpart::Xoshiro256ss picker(5005);
  long long cases = 0;
  double gap_sum = 0.0;
  for (int i = 0; i < kC5Count; ++i) {
    int n = (int)picker.uniform_int(0, 12);
    int k = 1 + (int)picker.uniform_int(0, 2);
    uint64_t seed = picker.next();
    IntInstance inst = (i % 2) ? ts::int_mixed(n, seed, 30) : ts::int_positive(n, seed, 30);
    CAPTURE(i);

    auto report = kpart::solve(inst, k, SolverConfig{});
    auto [opt_part, optimum] =
        kpart::oracle::brute_force_optimal(inst, k, Objective::MinimizeRange);
    kpart::validate_partition(inst, opt_part);
    CHECK(report.objectives.range >= optimum);
    CHECK(kpart::oracle::exhaustive_local_check(inst, report.partition).empty());

    if (n <= 8) {
      auto summary = kpart::oracle::enumerate_local_optima(inst, k, Objective::MinimizeRange);
      CHECK(summary.count >= 1);
      CHECK(summary.best >= optimum);
      CHECK(report.objectives.range >= summary.best);
      CHECK(report.objectives.range <= summary.worst);
    }

    gap_sum += (double)(report.objectives.range - optimum);
    ++cases;
  }
  CHECK(cases == kC5Count);
  std::printf("[acceptance] criterion 5 mean local-vs-global range gap: %.4f over %lld cases\n",
              gap_sum / (double)cases, cases);
}

TEST_CASE("criterion 6: sums near 2^60 stay exact and assignments are scale invariant") {
  kpart::Xoshiro256ss picker(6006);
  const int64_t base = int64_t(1) << 60;
  for (int i = 0; i < kC6BigCount; ++i) {
    int n = 1 + (int)picker.uniform_int(0, 79);
    int k = 2 + (int)picker.uniform_int(0, 6);
    IntInstance inst;
    for (int e = 0; e < n; ++e)
      inst.values.push_back(base + picker.uniform_int(-(int64_t(1) << 20), int64_t(1) << 20));
    CAPTURE(i);

    auto report = kpart::solve(inst, k, SolverConfig{});
    kpart::validate_partition(inst, report.partition);
    CHECK(kpart::oracle::exhaustive_local_check(inst, report.partition).empty());
    ts::check_trace(inst, k, report);

    Int128 total = 0, expected = 0;
    for (auto s : report.sums) total += s;
    for (auto v : inst.values) expected += Int128(v);
    CHECK(total == expected);
  }

  long long mismatches = 0;
  for (int i = 0; i < kC6ScaleCount; ++i) {
    int n = (int)picker.uniform_int(0, 120);
    int k = 1 + (int)picker.uniform_int(0, 7);
    auto inst = ts::int_mixed(n, picker.next(), int64_t(1) << 40);
    auto plain = kpart::solve(inst, k, SolverConfig{});
    for (int64_t c : {2, 10, 1000}) {
      IntInstance scaled = inst;
      for (auto& v : scaled.values) v *= c;
      auto got = kpart::solve(scaled, k, SolverConfig{});
      if (got.partition != plain.partition) ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("criterion 7: mixed-sign instances with zeros are checker-clean and zero-stable") {
  kpart::Xoshiro256ss picker(7007);
  SolverConfig config;
  config.record_trace = false;
  config.run_checker = true;

  for (int i = 0; i < kC7Count; ++i) {
    int n = (int)picker.uniform_int(0, 150);
    int k = 1 + (int)picker.uniform_int(0, 7);
    auto inst = ts::int_mixed(n, picker.next(), 500);
    for (int e = 0; e < n; e += 10) inst.values[e] = 0;  // pin the zero share at >= 10%
    CAPTURE(i);

    auto report = kpart::solve(inst, k, config);
    kpart::validate_partition(inst, report.partition);
    REQUIRE(report.locally_optimal.has_value());
    CHECK(*report.locally_optimal);

    IntInstance nonzero;
    for (auto v : inst.values)
      if (v != 0) nonzero.values.push_back(v);
    auto sub = kpart::solve(nonzero, k, config);
    long long diverged = 0;
    int s = 0;
    for (int e = 0; e < inst.size(); ++e) {
      if (inst.values[e] == 0) continue;
      if (report.partition.assign[e] != sub.partition.assign[s]) ++diverged;
      ++s;
    }
    CHECK(diverged == 0);
  }
}

TEST_CASE("criterion 8: the worked fixtures replay their traces event by event") {
  using IntEvents = std::vector<TraceEvent<int64_t>>;

  IntInstance five({1, 2, 3, 4, 5});
  auto r5 = kpart::solve(five, 2, SolverConfig{});
  CHECK(r5.sums == std::vector<Int128>{6, 9});
  CHECK(r5.partition.assign == std::vector<int32_t>{1, 1, 1, 2, 2});
  CHECK(r5.trace.events == IntEvents{
                               MoveEvent<int64_t>{4, 5, 1, 2, 15, 5},
                               MoveEvent<int64_t>{3, 4, 1, 2, 5, 3},
                               DiscardEvent{2},
                           });

  IntInstance six({1, 2, 3, 4, 5, 6});
  auto r6 = kpart::solve(six, 3, SolverConfig{});
  CHECK(r6.sums == std::vector<Int128>{6, 6, 9});
  CHECK(r6.partition.assign == std::vector<int32_t>{1, 1, 1, 3, 3, 2});
  CHECK(r6.trace.events == IntEvents{
                               MoveEvent<int64_t>{5, 6, 1, 2, 21, 9},
                               MoveEvent<int64_t>{4, 5, 1, 3, 15, 5},
                               MoveEvent<int64_t>{3, 4, 1, 3, 5, 3},
                               DiscardEvent{3},
                               DiscardEvent{1},
                           });

  IntInstance mixed({-3, -1, 2, 4});
  auto rm = kpart::solve(mixed, 2, SolverConfig{});
  CHECK(rm.sums == std::vector<Int128>{1, 1});
  CHECK(rm.partition.assign == std::vector<int32_t>{2, 1, 1, 2});
  CHECK(rm.trace.events == IntEvents{
                               MoveEvent<int64_t>{3, 4, 1, 2, 10, 2},
                               MoveEvent<int64_t>{1, -1, 2, 1, 2, 0},
                               DiscardPairEvent{1, 1},
                           });
}
