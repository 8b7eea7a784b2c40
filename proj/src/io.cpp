#include "kpart/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kpart/rng.hpp"

namespace kpart {

std::string sum_string(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double Xoshiro256ss::gaussian(double mean, double stddev) {
  double u1 = 1.0 - unit_double();  // (0, 1], keeps the log finite
  double u2 = unit_double();
  constexpr double two_pi = 6.283185307179586476925286766559;
  return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace kpart

namespace kpart::io {

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize_text(std::istream& in) {
  std::vector<Token> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    size_t last = line.find_last_not_of(" \t");
    tokens.push_back({line.substr(first, last - first + 1), lineno, (int)first + 1});
  }
  return tokens;
}

bool parse_int_token(const std::string& text, int64_t& out, bool& out_of_range) {
  out_of_range = false;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto res = std::from_chars(begin, end, out);
  if (res.ec == std::errc::result_out_of_range && res.ptr == end) {
    out_of_range = true;
    return false;
  }
  return res.ec == std::errc() && res.ptr == end;
}

double parse_float_token(const Token& tok) {
  double v = 0.0;
  const char* begin = tok.text.data();
  const char* end = begin + tok.text.size();
  auto res = std::from_chars(begin, end, v);
  if (res.ec == std::errc::result_out_of_range && res.ptr == end)
    throw Error(Errc::NonFiniteInput, "value at line " + std::to_string(tok.line) +
                                          " is not representable as a finite double");
  if (res.ec != std::errc() || res.ptr != end)
    throw ParseError("'" + tok.text + "' is not a number", tok.line, tok.column);
  if (!std::isfinite(v))
    throw Error(Errc::NonFiniteInput,
                "value at line " + std::to_string(tok.line) + " is not finite");
  return v;
}

AnyInstance read_text(std::istream& in, const std::string& name) {
  auto tokens = tokenize_text(in);

  // Integer mode iff every token is an int64; a value with integer grammar
  // that overflows int64 is an error rather than a silent drop to float.
  bool all_int = true;
  std::vector<int64_t> ints;
  ints.reserve(tokens.size());
  for (const auto& tok : tokens) {
    int64_t v = 0;
    bool out_of_range = false;
    if (parse_int_token(tok.text, v, out_of_range)) {
      ints.push_back(v);
    } else if (out_of_range) {
      throw ParseError("integer '" + tok.text + "' does not fit in 64 bits", tok.line, tok.column);
    } else {
      all_int = false;
      break;
    }
  }
  if (all_int) return IntInstance(std::move(ints), name);

  std::vector<double> floats;
  floats.reserve(tokens.size());
  for (const auto& tok : tokens) floats.push_back(parse_float_token(tok));
  return FloatInstance(std::move(floats), name);
}

[[noreturn]] void rethrow_json_error(const nlohmann::json::parse_error& err,
                                     const std::string& text) {
  size_t byte = err.byte > 0 ? err.byte - 1 : 0;
  byte = std::min(byte, text.size());
  int line = 1, column = 1;
  for (size_t p = 0; p < byte; ++p) {
    if (text[p] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  throw ParseError(err.what(), line, column);
}

AnyInstance read_json(std::istream& in, const std::string& fallback_name) {
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    rethrow_json_error(err, text);
  } catch (const nlohmann::json::out_of_range& err) {
    // the lexer reports 1e999 and friends as error 406
    throw Error(Errc::NonFiniteInput, err.what());
  }

  if (!doc.is_object()) throw Error(Errc::ParseError, "top-level json value must be an object");
  if (!doc.contains("values") || !doc["values"].is_array())
    throw Error(Errc::ParseError, "json instance requires a \"values\" array");
  std::string name = fallback_name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw Error(Errc::ParseError, "\"name\" must be a string");
    name = doc["name"].get<std::string>();
  }

  const auto& values = doc["values"];
  bool all_int = true;
  for (size_t e = 0; e < values.size(); ++e) {
    const auto& v = values[e];
    if (v.is_number_integer()) {
      if (v.is_number_unsigned() && v.get<uint64_t>() > (uint64_t)INT64_MAX)
        throw Error(Errc::ParseError,
                    "values[" + std::to_string(e) + "] does not fit in 64 bits");
    } else if (v.is_number_float()) {
      all_int = false;
    } else {
      throw Error(Errc::ParseError, "values[" + std::to_string(e) + "] is not a number");
    }
  }

  if (all_int) {
    std::vector<int64_t> ints;
    ints.reserve(values.size());
    for (const auto& v : values) ints.push_back(v.get<int64_t>());
    return IntInstance(std::move(ints), name);
  }
  std::vector<double> floats;
  floats.reserve(values.size());
  for (size_t e = 0; e < values.size(); ++e) {
    double v = values[e].get<double>();
    if (!std::isfinite(v))
      throw Error(Errc::NonFiniteInput, "values[" + std::to_string(e) + "] is not finite");
    floats.push_back(v);
  }
  return FloatInstance(std::move(floats), name);
}

// Shortest round-trip form, with a decimal marker forced in text mode so the
// reader infers float mode again.
std::string float_text(double v) {
  std::string s = kpart::sum_string(v);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

nlohmann::json sum_to_json(Int128 v) {
  if (fits_int64(v)) return nlohmann::json((int64_t)v);
  return nlohmann::json(kpart::to_string(v));
}

nlohmann::json sum_to_json(double v) { return nlohmann::json(v); }

}  // namespace

AnyInstance read_instance(std::istream& in, InstanceFormat format, const std::string& name) {
  if (!in) throw Error(Errc::ParseError, "input stream is not readable");
  return format == InstanceFormat::Text ? read_text(in, name) : read_json(in, name);
}

AnyInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return read_instance(in, json ? InstanceFormat::Json : InstanceFormat::Text, path);
}

void write_instance(const AnyInstance& inst, std::ostream& out, InstanceFormat format) {
  if (format == InstanceFormat::Text) {
    std::visit(
        [&](const auto& i) {
          if (!i.name.empty()) out << "# name: " << i.name << '\n';
          for (auto v : i.values) {
            if constexpr (std::is_same_v<decltype(v), int64_t>)
              out << v << '\n';
            else
              out << float_text(v) << '\n';
          }
        },
        inst);
  } else {
    nlohmann::json doc;
    std::visit(
        [&](const auto& i) {
          if (!i.name.empty()) doc["name"] = i.name;
          doc["values"] = i.values;
        },
        inst);
    out << doc.dump(2) << '\n';
  }
  if (!out) throw Error(Errc::ParseError, "write failed");
}

void write_instance_file(const AnyInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::ParseError, "cannot open '" + path + "' for writing");
  bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  write_instance(inst, out, json ? InstanceFormat::Json : InstanceFormat::Text);
}

template <class Num>
std::string report_to_json(const Report<Num>& report, int indent) {
  nlohmann::json j;
  j["k"] = report.partition.k;
  j["assignment"] = report.partition.assign;
  auto sums = nlohmann::json::array();
  for (auto s : report.sums) sums.push_back(sum_to_json(s));
  j["sums"] = std::move(sums);
  j["objectives"] = {{"min_max", sum_to_json(report.objectives.min_max)},
                     {"max_min", sum_to_json(report.objectives.max_min)},
                     {"range", sum_to_json(report.objectives.range)}};
  j["moves"] = report.trace.move_count;
  j["discards"] = report.trace.discard_count;
  j["locally_optimal"] =
      report.locally_optimal ? nlohmann::json(*report.locally_optimal) : nlohmann::json(nullptr);
  j["wall_time_ms"] = report.wall_time_ms;
  return j.dump(indent);
}

template <class Num>
std::string report_to_csv(const Report<Num>& report) {
  std::string row = "k,min_max,max_min,range,moves,discards,locally_optimal,wall_time_ms\n";
  row += std::to_string(report.partition.k);
  row += ',' + kpart::sum_string(report.objectives.min_max);
  row += ',' + kpart::sum_string(report.objectives.max_min);
  row += ',' + kpart::sum_string(report.objectives.range);
  row += ',' + std::to_string(report.trace.move_count);
  row += ',' + std::to_string(report.trace.discard_count);
  row += ',';
  row += report.locally_optimal ? (*report.locally_optimal ? "true" : "false") : "null";
  row += ',' + kpart::sum_string(report.wall_time_ms);
  row += '\n';
  return row;
}

AnyInstance generate(const GeneratorSpec& spec) {
  if (spec.n < 0) throw Error(Errc::InvalidSpec, "n must be nonnegative");
  Xoshiro256ss rng(spec.seed);

  switch (spec.dist) {
    case Distribution::UniformInt: {
      if (spec.int_lo > spec.int_hi) throw Error(Errc::InvalidSpec, "requires lo <= hi");
      std::vector<int64_t> values(spec.n);
      for (auto& v : values) v = rng.uniform_int(spec.int_lo, spec.int_hi);
      return IntInstance(std::move(values));
    }
    case Distribution::UniformFloat: {
      if (!(spec.real_lo <= spec.real_hi) || !std::isfinite(spec.real_lo) ||
          !std::isfinite(spec.real_hi))
        throw Error(Errc::InvalidSpec, "requires finite lo <= hi");
      std::vector<double> values(spec.n);
      for (auto& v : values) v = rng.uniform_double(spec.real_lo, spec.real_hi);
      return FloatInstance(std::move(values));
    }
    case Distribution::Gaussian: {
      if (!(spec.stddev >= 0.0) || !std::isfinite(spec.stddev) || !std::isfinite(spec.mean))
        throw Error(Errc::InvalidSpec, "requires finite mean and stddev >= 0");
      std::vector<double> values(spec.n);
      for (auto& v : values) v = rng.gaussian(spec.mean, spec.stddev);
      return FloatInstance(std::move(values));
    }
    case Distribution::MixedSignInt: {
      if (spec.magnitude < 1) throw Error(Errc::InvalidSpec, "requires magnitude >= 1");
      std::vector<int64_t> values(spec.n);
      for (auto& v : values) {
        if (rng.next() % 10 == 0) {
          v = 0;
          continue;
        }
        uint64_t span = 2 * (uint64_t)spec.magnitude;
        int64_t u = 1 + (int64_t)(rng.next() % span);
        v = u <= spec.magnitude ? u : -(u - spec.magnitude);
      }
      return IntInstance(std::move(values));
    }
  }
  throw Error(Errc::InvalidSpec, "unknown distribution");
}

template std::string report_to_json(const Report<int64_t>&, int);
template std::string report_to_json(const Report<double>&, int);
template std::string report_to_csv(const Report<int64_t>&);
template std::string report_to_csv(const Report<double>&);

}  // namespace kpart::io
