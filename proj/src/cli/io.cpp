#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "effnum/cli.hpp"
#include "effnum/errors.hpp"
#include "effnum/rng.hpp"

namespace effnum::cli {
namespace {

using ojson = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool looks_like_json(std::string_view text) {
  const auto t = trim(text);
  const auto pos = t.find_first_not_of(" \t\r\n");
  return pos != std::string_view::npos && t[pos] == '[';
}

// Full-token real parse; `line` only feeds the error.
double parse_real(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
    throw ParseError("malformed number '" + std::string(token) + "'", line);
  }
  return value;
}

template <typename F>
void for_each_row(std::string_view text, F&& on_row) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    on_row(cells, line_no);
  }
}

ojson parse_json(std::string_view text) {
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
}

double json_real(const ojson& j) {
  if (!j.is_number()) throw ParseError("expected a number in JSON input", 0);
  return j.get<double>();
}

Complex json_complex(const ojson& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw ParseError("expected [re, im] pairs in JSON input", 0);
  }
  return {json_real(j[0]), json_real(j[1])};
}

std::string iso_timestamp() {
  std::time_t t;
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string cell_text(const ojson& v) {
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round_to_output(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

std::vector<std::vector<double>> parse_real_rows(std::string_view text) {
  std::vector<std::vector<double>> rows;
  if (looks_like_json(text)) {
    const ojson j = parse_json(text);
    if (!j.is_array()) throw ParseError("JSON input must be an array", 0);
    const bool nested = !j.empty() && j.front().is_array();
    if (!nested) {
      std::vector<double> row;
      for (const auto& v : j) row.push_back(json_real(v));
      rows.push_back(std::move(row));
      return rows;
    }
    for (const auto& r : j) {
      if (!r.is_array()) throw ParseError("JSON rows must be arrays", 0);
      std::vector<double> row;
      for (const auto& v : r) row.push_back(json_real(v));
      rows.push_back(std::move(row));
    }
    return rows;
  }
  for_each_row(text, [&](const std::vector<std::string_view>& cells, std::size_t line) {
    std::vector<double> row;
    row.reserve(cells.size());
    for (auto c : cells) row.push_back(parse_real(c, line));
    rows.push_back(std::move(row));
  });
  return rows;
}

Complex parse_complex_token(std::string_view token) {
  const std::string_view t = trim(token);
  if (t.empty()) throw ParseError("empty complex token", 0);
  auto read = [&t](std::size_t from, double& value) {
    std::size_t pos = from;
    double sign = 1.0;
    if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) {
      sign = t[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    }
    // a bare "j" / "+j" means unit imaginary
    if (pos < t.size() && t[pos] == 'j') {
      value = sign;
      return pos;
    }
    const auto [end, ec] = std::from_chars(t.data() + pos, t.data() + t.size(), value);
    if (ec != std::errc()) {
      throw ParseError("malformed complex number '" + std::string(t) + "'", 0);
    }
    value *= sign;
    return static_cast<std::size_t>(end - t.data());
  };

  double first = 0.0;
  std::size_t pos = read(0, first);
  if (pos == t.size()) return {first, 0.0};
  if (t[pos] == 'j' && pos + 1 == t.size()) return {0.0, first};
  if (t[pos] != '+' && t[pos] != '-') {
    throw ParseError("malformed complex number '" + std::string(t) + "'", 0);
  }
  double second = 0.0;
  pos = read(pos, second);
  if (pos + 1 != t.size() || t[pos] != 'j') {
    throw ParseError("malformed complex number '" + std::string(t) + "'", 0);
  }
  return {first, second};
}

std::vector<Amplitudes> parse_complex_rows(std::string_view text) {
  std::vector<Amplitudes> rows;
  if (looks_like_json(text)) {
    const ojson j = parse_json(text);
    if (!j.is_array() || j.empty()) throw ParseError("JSON input must be a nonempty array", 0);
    // [[re,im],...] is one vector; [[[re,im],...],...] is several.
    const bool several = j.front().is_array() && !j.front().empty() && j.front().front().is_array();
    auto read_vector = [](const ojson& arr) {
      if (!arr.is_array()) throw ParseError("JSON vectors must be arrays", 0);
      Amplitudes a;
      for (const auto& z : arr) a.push_back(json_complex(z));
      return a;
    };
    if (!several) {
      rows.push_back(read_vector(j));
    } else {
      for (const auto& r : j) rows.push_back(read_vector(r));
    }
    return rows;
  }
  for_each_row(text, [&](const std::vector<std::string_view>& cells, std::size_t line) {
    Amplitudes row;
    for (auto c : cells) {
      try {
        row.push_back(parse_complex_token(c));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line);
      }
    }
    rows.push_back(std::move(row));
  });
  return rows;
}

std::vector<Knot> parse_knots(std::string_view text) {
  std::vector<Knot> knots;
  for (const auto& row : parse_real_rows(text)) {
    if (row.size() != 2) throw ParseError("knot rows must have exactly two columns", 0);
    knots.push_back({row[0], row[1]});
  }
  return knots;
}

CountingFunction counting_function_by_name(const std::string& name) {
  if (name == "n_star") return CountingFunction::minimal();
  if (name == "n_plus") return CountingFunction::support_plus();
  if (name.rfind("alpha:", 0) == 0) {
    return CountingFunction::alpha(parse_real(std::string_view(name).substr(6), 0));
  }
  throw std::invalid_argument("unknown counting function '" + name + "'");
}

nlohmann::ordered_json RunManifest::to_json() const {
  ojson j;
  j["command"] = command;
  j["config"] = config;
  j["version"] = kVersion;
  j["rng"] = Rng::kAlgorithm;
  j["timestamp"] = iso_timestamp();
  return j;
}

void write_table(std::ostream& os, const Table& table, Format format,
                 const RunManifest& manifest) {
  switch (format) {
    case Format::Csv: {
      for (std::size_t c = 0; c < table.header.size(); ++c) {
        os << (c ? "," : "") << csv_escape(table.header[c]);
      }
      os << '\n';
      for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          os << (c ? "," : "") << csv_escape(cell_text(row[c]));
        }
        os << '\n';
      }
      return;
    }
    case Format::Table: {
      std::vector<std::size_t> width(table.header.size());
      for (std::size_t c = 0; c < width.size(); ++c) width[c] = table.header[c].size();
      for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
          width[c] = std::max(width[c], cell_text(row[c]).size());
        }
      }
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
          if (c) os << "  ";
          os << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
        }
        os << '\n';
      };
      line(table.header);
      for (const auto& row : table.rows) {
        std::vector<std::string> cells;
        for (const auto& v : row) cells.push_back(cell_text(v));
        line(cells);
      }
      return;
    }
    case Format::Json: {
      ojson doc;
      doc["manifest"] = manifest.to_json();
      doc["rows"] = ojson::array();
      for (const auto& row : table.rows) {
        ojson r = ojson::object();
        for (std::size_t c = 0; c < row.size() && c < table.header.size(); ++c) {
          r[table.header[c]] = row[c];
        }
        doc["rows"].push_back(std::move(r));
      }
      os << doc.dump(2) << '\n';
      return;
    }
  }
}

}  // namespace effnum::cli
