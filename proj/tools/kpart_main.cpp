#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kpart/baselines.hpp"
#include "kpart/bench.hpp"
#include "kpart/check.hpp"
#include "kpart/error.hpp"
#include "kpart/io.hpp"
#include "kpart/oracle.hpp"
#include "kpart/solve.hpp"

namespace {

using kpart::Errc;
using kpart::Objective;
using kpart::Partition;

// Exit code contract: 0 ok, 1 usage, 2 input, 3 guard, 4 not locally optimal,
// 5 budget.
int exit_code_for(Errc code) {
  switch (code) {
    case Errc::InvalidK:
    case Errc::InvalidSpec:
      return 1;
    case Errc::ParseError:
    case Errc::NonFiniteInput:
    case Errc::OverflowRisk:
    case Errc::InvalidAssignment:
    case Errc::NegativeInput:
      return 2;
    case Errc::NonTermination:
      return 3;
    case Errc::BudgetExceeded:
      return 5;
  }
  return 1;
}

template <class Sum>
std::string fmt_sum(Sum v) {
  return kpart::sum_string(v);
}

Objective parse_objective(const std::string& name) {
  if (name == "min-max") return Objective::MinimizeMax;
  if (name == "max-min") return Objective::MaximizeMin;
  if (name == "range") return Objective::MinimizeRange;
  throw kpart::Error(Errc::InvalidSpec, "unknown objective '" + name + "'");
}

struct PartitionOpts {
  std::string input;
  int k = 0;
  bool as_json = false;
  bool as_csv = false;
  bool check = false;
};

struct VerifyOpts {
  std::string instance_path;
  std::string partition_path;
};

struct ExactOpts {
  std::string input;
  int k = 0;
  std::string objective = "range";
  uint64_t max_states = kpart::oracle::OracleBudget{}.max_states;
  bool as_json = false;
};

struct CompareOpts {
  std::string input;
  int k = 0;
  bool with_exact = false;
  bool as_csv = false;
  uint64_t max_states = kpart::oracle::OracleBudget{}.max_states;
};

struct GenOpts {
  std::string dist = "uniform-int";
  int64_t n = 0;
  uint64_t seed = 0;
  int64_t lo = 0, hi = 100;
  double flo = 0.0, fhi = 1.0;
  double mean = 0.0, stddev = 1.0;
  int64_t magnitude = 100;
  std::string output;
};

struct BenchOpts {
  std::vector<int64_t> sizes;
  std::vector<int> ks;
  int reps = 3;
  uint64_t seed = 1;
  int64_t lo = 1, hi = 1'000'000'000;
};

template <class Num>
int run_partition_typed(const kpart::Instance<Num>& inst, const PartitionOpts& opts) {
  kpart::SolverConfig config;
  config.record_trace = false;
  config.run_checker = opts.check;
  auto report = kpart::solve(inst, opts.k, config);

  if (opts.as_json) {
    std::cout << kpart::io::report_to_json(report) << '\n';
  } else if (opts.as_csv) {
    std::cout << kpart::io::report_to_csv(report);
  } else {
    std::cout << "n=" << inst.size() << " k=" << report.partition.k
              << " mode=" << kpart::numeric_traits<Num>::mode_name << '\n';
    std::cout << "sums:";
    for (auto s : report.sums) std::cout << ' ' << fmt_sum(s);
    std::cout << '\n';
    std::cout << "min_max=" << fmt_sum(report.objectives.min_max)
              << " max_min=" << fmt_sum(report.objectives.max_min)
              << " range=" << fmt_sum(report.objectives.range) << '\n';
    std::cout << "moves=" << report.trace.move_count
              << " discards=" << report.trace.discard_count << " wall_time_ms="
              << report.wall_time_ms << '\n';
    if (report.locally_optimal)
      std::cout << "locally_optimal=" << (*report.locally_optimal ? "true" : "false") << '\n';
    std::cout << "assignment:";
    for (auto a : report.partition.assign) std::cout << ' ' << a;
    std::cout << '\n';
  }
  return 0;
}

int run_partition(const PartitionOpts& opts) {
  auto inst = kpart::io::read_instance_file(opts.input);
  return std::visit([&](const auto& i) { return run_partition_typed(i, opts); }, inst);
}

Partition read_partition_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw kpart::Error(Errc::ParseError, "cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& err) {
    throw kpart::Error(Errc::ParseError, std::string("partition file: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("k") || !doc.contains("assignment") ||
      !doc["k"].is_number_integer() || !doc["assignment"].is_array())
    throw kpart::Error(Errc::ParseError,
                       "partition file requires an object with \"k\" and \"assignment\"");
  Partition part;
  part.k = doc["k"].get<int>();
  for (const auto& a : doc["assignment"]) {
    if (!a.is_number_integer())
      throw kpart::Error(Errc::ParseError, "assignment entries must be integers");
    part.assign.push_back(a.get<int32_t>());
  }
  if ((int)part.assign.size() != n)
    throw kpart::Error(Errc::InvalidAssignment,
                       "assignment has " + std::to_string(part.assign.size()) +
                           " entries, instance has " + std::to_string(n));
  return part;
}

template <class Num>
int run_verify_typed(const kpart::Instance<Num>& inst, const Partition& part) {
  kpart::validate_partition(inst, part);
  auto violations = kpart::is_locally_optimal(inst, part);
  if (violations.empty()) {
    std::cout << "LOCALLY OPTIMAL\n";
    return 0;
  }
  std::cout << "NOT LOCALLY OPTIMAL (" << violations.size() << " improving transfer"
            << (violations.size() == 1 ? "" : "s") << ")\n";
  for (const auto& v : violations) {
    std::cout << "element " << v.element << " (value "
              << fmt_sum(kpart::SumOf<Num>(inst.values[v.element])) << "): set " << v.from
              << " -> set " << v.to << " shrinks |dS| " << fmt_sum(v.old_abs_diff) << " -> "
              << fmt_sum(v.new_abs_diff) << '\n';
  }
  return 4;
}

int run_verify(const VerifyOpts& opts) {
  auto inst = kpart::io::read_instance_file(opts.instance_path);
  int n = kpart::io::instance_size(inst);
  Partition part = read_partition_file(opts.partition_path, n);
  return std::visit([&](const auto& i) { return run_verify_typed(i, part); }, inst);
}

template <class Num>
int run_exact_typed(const kpart::Instance<Num>& inst, const ExactOpts& opts) {
  kpart::oracle::OracleBudget budget{opts.max_states};
  Objective obj = parse_objective(opts.objective);
  auto start = std::chrono::steady_clock::now();
  auto [part, value] = kpart::oracle::brute_force_optimal(inst, opts.k, obj, budget);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
  auto sums = kpart::set_sums(inst, part);

  if (opts.as_json) {
    nlohmann::json j;
    j["k"] = part.k;
    j["objective"] = opts.objective;
    j["value"] = fmt_sum(value);
    j["assignment"] = part.assign;
    j["wall_time_ms"] = ms;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "objective " << opts.objective << " optimum = " << fmt_sum(value) << '\n';
    std::cout << "sums:";
    for (auto s : sums) std::cout << ' ' << fmt_sum(s);
    std::cout << '\n';
    std::cout << "assignment:";
    for (auto a : part.assign) std::cout << ' ' << a;
    std::cout << '\n';
    std::cout << "wall_time_ms=" << ms << '\n';
  }
  return 0;
}

int run_exact(const ExactOpts& opts) {
  auto inst = kpart::io::read_instance_file(opts.input);
  return std::visit([&](const auto& i) { return run_exact_typed(i, opts); }, inst);
}

struct CompareRow {
  std::string method;
  std::string min_max, max_min, range;
  std::string locally_optimal;
  double wall_time_ms = 0.0;
};

template <class Num>
CompareRow row_for(const kpart::Instance<Num>& inst, const std::string& method,
                   const Partition& part, double ms) {
  auto sums = kpart::set_sums(inst, part);
  auto obj = kpart::objectives_from_sums(sums);
  CompareRow row;
  row.method = method;
  row.min_max = fmt_sum(obj.min_max);
  row.max_min = fmt_sum(obj.max_min);
  row.range = fmt_sum(obj.range);
  row.locally_optimal = kpart::is_locally_optimal(inst, part).empty() ? "true" : "false";
  row.wall_time_ms = ms;
  return row;
}

template <class Num>
int run_compare_typed(const kpart::Instance<Num>& inst, const CompareOpts& opts) {
  using Clock = std::chrono::steady_clock;
  auto ms_since = [](Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };

  std::vector<CompareRow> rows;

  kpart::SolverConfig config;
  config.record_trace = false;
  auto report = kpart::solve(inst, opts.k, config);
  rows.push_back(row_for(inst, "solver", report.partition, report.wall_time_ms));

  auto t0 = Clock::now();
  Partition lpt = kpart::baselines::greedy_lpt(inst, opts.k);
  rows.push_back(row_for(inst, "lpt", lpt, ms_since(t0)));

  try {
    t0 = Clock::now();
    Partition kk = kpart::baselines::karmarkar_karp_multiway(inst, opts.k);
    rows.push_back(row_for(inst, "kk", kk, ms_since(t0)));
  } catch (const kpart::Error& err) {
    if (err.code() != Errc::NegativeInput) throw;
    rows.push_back({"kk", "n/a (negative input)", "", "", "", 0.0});
  }

  if (opts.with_exact) {
    t0 = Clock::now();
    auto [part, value] = kpart::oracle::brute_force_optimal(
        inst, opts.k, Objective::MinimizeRange, kpart::oracle::OracleBudget{opts.max_states});
    (void)value;
    rows.push_back(row_for(inst, "exact", part, ms_since(t0)));
  }

  if (opts.as_csv) {
    std::cout << "method,min_max,max_min,range,locally_optimal,wall_time_ms\n";
    for (const auto& row : rows) {
      std::cout << row.method << ',' << row.min_max << ',' << row.max_min << ',' << row.range
                << ',' << row.locally_optimal << ',' << row.wall_time_ms << '\n';
    }
  } else {
    std::printf("%-8s %14s %14s %14s %16s %14s\n", "method", "min_max", "max_min", "range",
                "locally_optimal", "wall_time_ms");
    for (const auto& row : rows) {
      std::printf("%-8s %14s %14s %14s %16s %14.4f\n", row.method.c_str(), row.min_max.c_str(),
                  row.max_min.c_str(), row.range.c_str(), row.locally_optimal.c_str(),
                  row.wall_time_ms);
    }
  }
  return 0;
}

int run_compare(const CompareOpts& opts) {
  auto inst = kpart::io::read_instance_file(opts.input);
  return std::visit([&](const auto& i) { return run_compare_typed(i, opts); }, inst);
}

int run_gen(const GenOpts& opts) {
  kpart::io::GeneratorSpec spec;
  if (opts.dist == "uniform-int") {
    spec.dist = kpart::io::Distribution::UniformInt;
    spec.int_lo = opts.lo;
    spec.int_hi = opts.hi;
  } else if (opts.dist == "uniform-float") {
    spec.dist = kpart::io::Distribution::UniformFloat;
    spec.real_lo = opts.flo;
    spec.real_hi = opts.fhi;
  } else if (opts.dist == "gaussian") {
    spec.dist = kpart::io::Distribution::Gaussian;
    spec.mean = opts.mean;
    spec.stddev = opts.stddev;
  } else if (opts.dist == "mixed-sign-int") {
    spec.dist = kpart::io::Distribution::MixedSignInt;
    spec.magnitude = opts.magnitude;
  } else {
    throw kpart::Error(Errc::InvalidSpec, "unknown distribution '" + opts.dist + "'");
  }
  spec.n = opts.n;
  spec.seed = opts.seed;

  auto inst = kpart::io::generate(spec);
  kpart::io::write_instance_file(inst, opts.output);
  std::visit(
      [](const auto& i) {
        using Num = typename std::decay_t<decltype(i.values)>::value_type;
        kpart::SumOf<Num> total{};
        for (auto v : i.values) total += kpart::SumOf<Num>(v);
        std::cout << "n=" << i.size() << " sum=" << fmt_sum(total) << '\n';
      },
      inst);
  return 0;
}

int run_bench_cmd(const BenchOpts& opts) {
  kpart::bench::BenchConfig config;
  config.sizes = opts.sizes;
  config.ks = opts.ks;
  config.reps = opts.reps;
  config.seed = opts.seed;
  config.value_lo = opts.lo;
  config.value_hi = opts.hi;
  auto result = kpart::bench::run_bench(config);
  std::cout << kpart::bench::to_csv(result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-way number partitioning: locally optimal solver, oracles, baselines"};
  app.require_subcommand(1);

  PartitionOpts popts;
  auto* cmd_partition = app.add_subcommand("partition", "solve an instance file");
  cmd_partition->add_option("input", popts.input, "instance file (.json or text)")->required();
  cmd_partition->add_option("-k,--sets", popts.k, "number of sets")->required();
  auto* pjson = cmd_partition->add_flag("--json", popts.as_json, "emit the json report");
  cmd_partition->add_flag("--csv", popts.as_csv, "emit the csv summary row")->excludes(pjson);
  cmd_partition->add_flag("--check", popts.check, "run the local-optimality checker");

  VerifyOpts vopts;
  auto* cmd_verify = app.add_subcommand("verify", "check a partition file for local optimality");
  cmd_verify->add_option("instance", vopts.instance_path, "instance file")->required();
  cmd_verify->add_option("partition", vopts.partition_path, "partition json (k, assignment)")
      ->required();

  ExactOpts eopts;
  auto* cmd_exact = app.add_subcommand("exact", "brute-force optimum (K^N enumeration)");
  cmd_exact->add_option("input", eopts.input, "instance file")->required();
  cmd_exact->add_option("-k,--sets", eopts.k, "number of sets")->required();
  cmd_exact->add_option("--objective", eopts.objective, "min-max | max-min | range")
      ->check(CLI::IsMember({"min-max", "max-min", "range"}));
  cmd_exact->add_option("--max-states", eopts.max_states, "enumeration budget");
  cmd_exact->add_flag("--json", eopts.as_json, "emit json");

  CompareOpts copts;
  auto* cmd_compare = app.add_subcommand("compare", "solver vs baselines (and exact) on one instance");
  cmd_compare->add_option("input", copts.input, "instance file")->required();
  cmd_compare->add_option("-k,--sets", copts.k, "number of sets")->required();
  cmd_compare->add_flag("--with-exact", copts.with_exact, "include the brute-force optimum row");
  cmd_compare->add_flag("--csv", copts.as_csv, "csv instead of the aligned table");
  cmd_compare->add_option("--max-states", copts.max_states, "enumeration budget for --with-exact");

  GenOpts gopts;
  auto* cmd_gen = app.add_subcommand("gen", "generate a seeded instance file");
  cmd_gen->add_option("--dist", gopts.dist,
                      "uniform-int | uniform-float | gaussian | mixed-sign-int")
      ->check(CLI::IsMember({"uniform-int", "uniform-float", "gaussian", "mixed-sign-int"}));
  cmd_gen->add_option("-n,--count", gopts.n, "element count")->required();
  cmd_gen->add_option("--seed", gopts.seed, "64-bit seed");
  cmd_gen->add_option("--lo", gopts.lo, "uniform-int lower bound");
  cmd_gen->add_option("--hi", gopts.hi, "uniform-int upper bound");
  cmd_gen->add_option("--flo", gopts.flo, "uniform-float lower bound");
  cmd_gen->add_option("--fhi", gopts.fhi, "uniform-float upper bound");
  cmd_gen->add_option("--mean", gopts.mean, "gaussian mean");
  cmd_gen->add_option("--stddev", gopts.stddev, "gaussian stddev");
  cmd_gen->add_option("--magnitude", gopts.magnitude, "mixed-sign-int magnitude");
  cmd_gen->add_option("-o,--output", gopts.output, "output file (.json or text)")->required();

  BenchOpts bopts;
  auto* cmd_bench = app.add_subcommand("bench", "timing suite with n*log2(n) fit");
  cmd_bench->add_option("--sizes", bopts.sizes, "instance sizes")->required()->delimiter(',');
  cmd_bench->add_option("--ks", bopts.ks, "set counts")->required()->delimiter(',');
  cmd_bench->add_option("--reps", bopts.reps, "repetitions per cell");
  cmd_bench->add_option("--seed", bopts.seed, "base seed");
  cmd_bench->add_option("--lo", bopts.lo, "uniform-int lower bound");
  cmd_bench->add_option("--hi", bopts.hi, "uniform-int upper bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*cmd_partition) return run_partition(popts);
    if (*cmd_verify) return run_verify(vopts);
    if (*cmd_exact) return run_exact(eopts);
    if (*cmd_compare) return run_compare(copts);
    if (*cmd_gen) return run_gen(gopts);
    if (*cmd_bench) return run_bench_cmd(bopts);
  } catch (const kpart::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return exit_code_for(err.code());
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
