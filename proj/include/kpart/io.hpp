#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include "kpart/error.hpp"
#include "kpart/instance.hpp"
#include "kpart/solve.hpp"

namespace kpart::io {

/// An instance with its inferred numeric mode: exact-integer when every input
/// token is an integer, float otherwise.
using AnyInstance = std::variant<IntInstance, FloatInstance>;

enum class InstanceFormat { Text, Json };

inline int instance_size(const AnyInstance& inst) {
  return std::visit([](const auto& i) { return i.size(); }, inst);
}

/// Text: one number per line; blank lines and lines starting with '#' are
/// ignored; '\r\n' accepted. Json: {"name": string?, "values": [numbers]}.
/// Throws ParseError (with position) or Errc::NonFiniteInput.
AnyInstance read_instance(std::istream& in, InstanceFormat format, const std::string& name = {});
AnyInstance read_instance_file(const std::string& path);  // format from extension (.json)

/// Inverse of read_instance. Floats are written in shortest round-trip
/// decimal form (with a forced ".0" in text mode so the mode survives the
/// round trip); reading back reproduces values bit-exactly.
void write_instance(const AnyInstance& inst, std::ostream& out, InstanceFormat format);
void write_instance_file(const AnyInstance& inst, const std::string& path);

/// Report serialization. Json keys are stable:
///   {"k", "assignment", "sums", "objectives": {"min_max", "max_min",
///    "range"}, "moves", "discards", "locally_optimal", "wall_time_ms"}
/// Integer-mode sums emit as json numbers when they fit int64 and as decimal
/// strings beyond that. locally_optimal is null when the check was not run.
/// The csv summary is a header plus one row with the eight scalar fields.
template <class Num>
std::string report_to_json(const Report<Num>& report, int indent = 2);
template <class Num>
std::string report_to_csv(const Report<Num>& report);

// --- seeded instance generation ---

enum class Distribution { UniformInt, UniformFloat, Gaussian, MixedSignInt };

/// Identical (spec, seed) pairs generate identical instances; see rng.hpp for
/// the exact update equations. mixed-sign-int draws uniformly from
/// [-magnitude, magnitude] \ {0} and replaces a ~10% fraction with zeros
/// (r % 10 == 0 on a dedicated draw).
struct GeneratorSpec {
  Distribution dist = Distribution::UniformInt;
  int64_t int_lo = 0, int_hi = 100;   // uniform-int
  double real_lo = 0.0, real_hi = 1.0;  // uniform-float
  double mean = 0.0, stddev = 1.0;    // gaussian
  int64_t magnitude = 100;            // mixed-sign-int
  int64_t n = 0;
  uint64_t seed = 0;
};

/// Throws Errc::InvalidSpec on bad bounds (lo > hi, stddev < 0, magnitude < 1,
/// n < 0).
AnyInstance generate(const GeneratorSpec& spec);

}  // namespace kpart::io
