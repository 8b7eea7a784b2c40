#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kpart/check.hpp"
#include "kpart/oracle.hpp"
#include "kpart/prepare.hpp"
#include "kpart/solve.hpp"
#include "support/instance_gen.hpp"
#include "support/trace_check.hpp"

using kpart::DiscardEvent;
using kpart::DiscardPairEvent;
using kpart::FloatInstance;
using kpart::Instance;
using kpart::Int128;
using kpart::IntInstance;
using kpart::MoveEvent;
using kpart::Partition;
using kpart::SolverConfig;
using kpart::TraceEvent;
namespace ts = kpart::testsupport;

namespace {

using IntEvents = std::vector<TraceEvent<int64_t>>;

template <class Num>
void expect_clean(const Instance<Num>& inst, int k) {
  auto report = kpart::solve(inst, k, SolverConfig{});
  kpart::validate_partition(inst, report.partition);
  CHECK(kpart::oracle::exhaustive_local_check(inst, report.partition).empty());
  ts::check_trace(inst, k, report);
}

}  // namespace

TEST_CASE("five ascending values split as the worked trace") {
  IntInstance inst({1, 2, 3, 4, 5});
  auto report = kpart::solve(inst, 2, SolverConfig{});

  CHECK(report.partition.assign == std::vector<int32_t>{1, 1, 1, 2, 2});
  CHECK(report.sums == std::vector<Int128>{6, 9});
  CHECK(report.objectives.min_max == 9);
  CHECK(report.objectives.max_min == 6);
  CHECK(report.objectives.range == 3);

  IntEvents expected{
      MoveEvent<int64_t>{4, 5, 1, 2, 15, 5},
      MoveEvent<int64_t>{3, 4, 1, 2, 5, 3},
      DiscardEvent{2},
  };
  CHECK(report.trace.events == expected);
  CHECK(report.trace.move_count == 2);
  CHECK(report.trace.discard_count == 1);
}

TEST_CASE("six ascending values over three sets follow the worked trace") {
  IntInstance inst({1, 2, 3, 4, 5, 6});
  auto report = kpart::solve(inst, 3, SolverConfig{});

  CHECK(report.partition.assign == std::vector<int32_t>{1, 1, 1, 3, 3, 2});
  CHECK(report.sums == std::vector<Int128>{6, 6, 9});

  IntEvents expected{
      MoveEvent<int64_t>{5, 6, 1, 2, 21, 9},
      MoveEvent<int64_t>{4, 5, 1, 3, 15, 5},
      MoveEvent<int64_t>{3, 4, 1, 3, 5, 3},
      DiscardEvent{3},
      DiscardEvent{1},
  };
  CHECK(report.trace.events == expected);
}

TEST_CASE("signed fixture balances to equal sums") {
  IntInstance inst({-3, -1, 2, 4});
  auto report = kpart::solve(inst, 2, SolverConfig{});

  CHECK(report.partition.assign == std::vector<int32_t>{2, 1, 1, 2});
  CHECK(report.sums == std::vector<Int128>{1, 1});
  CHECK(report.objectives.range == 0);

  IntEvents expected{
      MoveEvent<int64_t>{3, 4, 1, 2, 10, 2},
      MoveEvent<int64_t>{1, -1, 2, 1, 2, 0},
      DiscardPairEvent{1, 1},
  };
  CHECK(report.trace.events == expected);
}

TEST_CASE("equal magnitudes prefer the positive element") {
  IntInstance inst({-1, 1});
  auto report = kpart::solve(inst, 2, SolverConfig{});
  CHECK(report.sums == std::vector<Int128>{0, 0});
  IntEvents expected{
      MoveEvent<int64_t>{1, 1, 1, 2, 2, 0},
      DiscardPairEvent{1, 1},
  };
  CHECK(report.trace.events == expected);
}

TEST_CASE("equal negative values move the larger index") {
  IntInstance inst({-5, -5});
  auto report = kpart::solve(inst, 2, SolverConfig{});
  CHECK(report.partition.assign == std::vector<int32_t>{2, 1});
  CHECK(report.sums == std::vector<Int128>{-5, -5});
  IntEvents expected{
      MoveEvent<int64_t>{1, -5, 2, 1, 10, 0},
      DiscardPairEvent{1, 1},
  };
  CHECK(report.trace.events == expected);
}

TEST_CASE("zeros are stripped and reattached round-robin") {
  IntInstance inst({5, 0, 5});
  auto report = kpart::solve(inst, 2, SolverConfig{});
  CHECK(report.partition.assign == std::vector<int32_t>{1, 1, 2});
  CHECK(report.sums == std::vector<Int128>{5, 5});
  IntEvents expected{
      MoveEvent<int64_t>{2, 5, 1, 2, 10, 0},
      DiscardEvent{1},
  };
  CHECK(report.trace.events == expected);

  IntInstance zeros({0, 0, 0});
  auto zr = kpart::solve(zeros, 2, SolverConfig{});
  CHECK(zr.partition.assign == std::vector<int32_t>{1, 2, 1});
  CHECK(zr.trace.events.empty());
}

TEST_CASE("k equal to one and empty instances return trivial partitions") {
  IntInstance inst({4, -2, 7});
  auto report = kpart::solve(inst, 1, SolverConfig{});
  CHECK(report.partition.assign == std::vector<int32_t>{1, 1, 1});
  CHECK(report.trace.events.empty());
  CHECK(report.sums == std::vector<Int128>{9});
  CHECK(report.objectives.range == 0);

  IntInstance empty;
  auto er = kpart::solve(empty, 3, SolverConfig{});
  CHECK(er.partition.assign.empty());
  CHECK(er.sums == std::vector<Int128>{0, 0, 0});
  CHECK(er.trace.events.empty());
}

TEST_CASE("k larger than n leaves empty sets") {
  IntInstance inst({9, 9});
  auto report = kpart::solve(inst, 5, SolverConfig{});
  kpart::validate_partition(inst, report.partition);
  CHECK(kpart::oracle::exhaustive_local_check(inst, report.partition).empty());
  CHECK(report.objectives.max_min == 0);
  ts::check_trace(inst, 5, report);
}

TEST_CASE("equal values with n equal to k spread one per set") {
  IntInstance inst({7, 7, 7});
  auto report = kpart::solve(inst, 3, SolverConfig{});
  auto sums = report.sums;
  CHECK(sums == std::vector<Int128>{7, 7, 7});
  CHECK(report.objectives.range == 0);
}

TEST_CASE("invalid k is rejected") {
  IntInstance inst({1, 2});
  CHECK_THROWS_AS(kpart::solve(inst, 0, SolverConfig{}), kpart::Error);
  try {
    kpart::solve(inst, -2, SolverConfig{});
    FAIL("expected a throw");
  } catch (const kpart::Error& err) {
    CHECK(err.code() == kpart::Errc::InvalidK);
  }
}

TEST_CASE("variant preconditions are enforced") {
  auto positive = kpart::prepare(IntInstance({1, 2}));
  auto mixed = kpart::prepare(IntInstance({-1, 2}));
  auto with_zero = kpart::prepare(IntInstance({0, 2}));
  CHECK_THROWS_AS(kpart::solve_positive(mixed, 2, SolverConfig{}), std::invalid_argument);
  CHECK_THROWS_AS(kpart::solve_positive(with_zero, 2, SolverConfig{}), std::invalid_argument);
  CHECK_THROWS_AS(kpart::solve_signed(positive, 2, SolverConfig{}), std::invalid_argument);
  CHECK_THROWS_AS(kpart::solve_signed(with_zero, 2, SolverConfig{}), std::invalid_argument);
}

TEST_CASE("trace recording can be disabled while counts remain") {
  IntInstance inst({1, 2, 3, 4, 5});
  SolverConfig config;
  config.record_trace = false;
  auto report = kpart::solve(inst, 2, config);
  CHECK(report.trace.events.empty());
  CHECK(report.trace.move_count == 2);
  CHECK(report.trace.discard_count == 1);
  CHECK(report.partition.assign == std::vector<int32_t>{1, 1, 1, 2, 2});
}

TEST_CASE("run_checker fills the verdict") {
  IntInstance inst({1, 2, 3, 4, 5});
  SolverConfig config;
  config.run_checker = true;
  auto report = kpart::solve(inst, 2, config);
  REQUIRE(report.locally_optimal.has_value());
  CHECK(*report.locally_optimal);

  auto unchecked = kpart::solve(inst, 2, SolverConfig{});
  CHECK_FALSE(unchecked.locally_optimal.has_value());
}

TEST_CASE("solver is deterministic") {
  auto inst = ts::int_mixed(60, 99);
  auto a = kpart::solve(inst, 4, SolverConfig{});
  auto b = kpart::solve(inst, 4, SolverConfig{});
  CHECK(a.partition == b.partition);
  CHECK(a.trace == b.trace);
  CHECK(a.sums == b.sums);
}

TEST_CASE("random positive integer instances solve clean") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    int n = (int)(seed * 7 % 60);
    int k = 1 + (int)(seed % 6);
    CAPTURE(seed);
    expect_clean(ts::int_positive(n, seed), k);
  }
}

TEST_CASE("random mixed-sign integer instances solve clean") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    int n = (int)(seed * 11 % 80);
    int k = 1 + (int)(seed % 7);
    CAPTURE(seed);
    expect_clean(ts::int_mixed(n, seed), k);
  }
}

TEST_CASE("random float instances solve clean") {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    int k = 1 + (int)(seed % 5);
    CAPTURE(seed);
    expect_clean(ts::float_uniform((int)(seed * 5 % 50), seed), k);
    expect_clean(ts::float_gaussian((int)(seed * 9 % 64), seed + 1000), k);
    expect_clean(ts::float_with_zeros((int)(seed * 6 % 50), seed + 2000), k);
  }
}

TEST_CASE("integer solve is scale invariant") {
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    auto inst = ts::int_mixed(40, seed);
    auto base = kpart::solve(inst, 3, SolverConfig{});
    for (int64_t c : {2, 10, 1000}) {
      IntInstance scaled = inst;
      for (auto& v : scaled.values) v *= c;
      auto got = kpart::solve(scaled, 3, SolverConfig{});
      CAPTURE(seed);
      CAPTURE(c);
      CHECK(got.partition == base.partition);
    }
  }
}

TEST_CASE("solving the nonzero subset reproduces the mixed assignment") {
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    auto inst = ts::int_mixed(50, seed * 13);
    auto full = kpart::solve(inst, 4, SolverConfig{});

    IntInstance nonzero;
    for (auto v : inst.values)
      if (v != 0) nonzero.values.push_back(v);
    auto sub = kpart::solve(nonzero, 4, SolverConfig{});

    int s = 0;
    for (int e = 0; e < inst.size(); ++e) {
      if (inst.values[e] == 0) continue;
      CAPTURE(seed);
      CHECK(full.partition.assign[e] == sub.partition.assign[s]);
      ++s;
    }
  }
}

TEST_CASE("values near 2^60 solve without overflow") {
  int64_t base = int64_t(1) << 60;
  IntInstance inst({base, base - 3, base - 7, base - 1, base - 4});
  auto report = kpart::solve(inst, 2, SolverConfig{});
  kpart::validate_partition(inst, report.partition);
  CHECK(kpart::oracle::exhaustive_local_check(inst, report.partition).empty());
  Int128 total = 0;
  for (auto s : report.sums) total += s;
  Int128 expect = 0;
  for (auto v : inst.values) expect += Int128(v);
  CHECK(total == expect);
}
