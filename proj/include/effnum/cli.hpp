#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "effnum/counting_function.hpp"
#include "effnum/quantum.hpp"

namespace effnum::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitParseError = 2,
  kExitConstraint = 3,
};

enum class Format { Csv, Json, Table };

/// 12 significant digits, "%.12g".
std::string format_number(double x);

/// Rounds x to the value format_number prints.
double round_to_output(double x);

/// One vector per line, comma separated; blank lines and lines starting
/// with '#' are skipped. Text starting with '[' is read as JSON (a flat
/// array or an array of arrays). Throws ParseError carrying the line.
std::vector<std::vector<double>> parse_real_rows(std::string_view text);

/// "re+imj" style tokens ("0.5", "-0.5j", "1e-3-2j").
Complex parse_complex_token(std::string_view token);

/// Rows of complex tokens, or JSON [[re, im], ...] / [[[re, im], ...], ...].
std::vector<Amplitudes> parse_complex_rows(std::string_view text);

/// "w,value" rows or JSON [[w, value], ...].
std::vector<Knot> parse_knots(std::string_view text);

/// Counting functions by name: n_star, n_plus, alpha:<a>.
CountingFunction counting_function_by_name(const std::string& name);

/// Echo of a run: command, configuration, version, timestamp. The
/// timestamp comes from SOURCE_DATE_EPOCH when set, else the wall clock.
struct RunManifest {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
};

/// Header plus rows of JSON scalars (numbers already rounded for output).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<nlohmann::ordered_json>> rows;
};

/// CSV (header row, comma delimiter), aligned text table, or the JSON
/// object {manifest, rows}.
void write_table(std::ostream& os, const Table& table, Format format,
                 const RunManifest& manifest);

/// Entry point shared by the effnum executable and the tests. `args`
/// excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace effnum::cli
