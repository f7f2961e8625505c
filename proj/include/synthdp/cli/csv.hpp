// Copyright 2026 The synthdp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// CSV dialect for sweep results: '#'-prefixed metadata lines, one header
// line, then one row per result. Numbers are printed with %.17g so that a
// read-back reproduces the double exactly.

#ifndef SYNTHDP_CLI_CSV_HPP_
#define SYNTHDP_CLI_CSV_HPP_

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "synthdp/estimators/experiments.hpp"

namespace synthdp::cli {

inline constexpr std::string_view kVersion = "0.1.0";

// Bad command line, configuration or input file.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::string_view kColumns =
    "experiment,alpha,C,d,k,delta,n_syn,theta_v,theta_w,method,value,stderr,seed,notes";

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_number(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw UsageError("csv: not a number: '" + s + "'");
  }
  return v;
}

template <typename Int>
Int parse_integer(std::string_view text) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("csv: not an integer: '" + std::string(text) + "'");
  }
  return v;
}

namespace internal {

inline std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw UsageError("csv: unterminated quote");
  return fields;
}

}  // namespace internal

inline std::string format_row(const SweepRow& r) {
  std::string line = internal::quote(r.experiment);
  auto add = [&](const std::string& s) { line += ','; line += s; };
  add(format_number(r.alpha));
  add(format_number(r.C));
  add(std::to_string(r.d));
  add(std::to_string(r.k));
  add(format_number(r.delta));
  add(r.n_syn ? std::to_string(*r.n_syn) : "inf");
  add(format_number(r.theta_v));
  add(format_number(r.theta_w));
  add(internal::quote(r.method));
  add(format_number(r.value));
  add(r.stderr_ ? format_number(*r.stderr_) : "");
  add(std::to_string(r.seed));
  add(internal::quote(r.notes));
  return line;
}

inline SweepRow parse_row(const std::string& line) {
  const auto f = internal::split_record(line);
  if (f.size() != 14) {
    throw UsageError("csv: expected 14 fields, got " + std::to_string(f.size()));
  }
  SweepRow r;
  r.experiment = f[0];
  r.alpha = parse_number(f[1]);
  r.C = parse_number(f[2]);
  r.d = parse_integer<int>(f[3]);
  r.k = parse_integer<int>(f[4]);
  r.delta = parse_number(f[5]);
  if (f[6] != "inf") r.n_syn = parse_integer<std::int64_t>(f[6]);
  r.theta_v = parse_number(f[7]);
  r.theta_w = parse_number(f[8]);
  r.method = f[9];
  r.value = parse_number(f[10]);
  if (!f[11].empty()) r.stderr_ = parse_number(f[11]);
  r.seed = parse_integer<std::uint64_t>(f[12]);
  r.notes = f[13];
  return r;
}

using Metadata = std::vector<std::pair<std::string, std::string>>;

// Header line plus rows; the part of the file covered by determinism.
inline std::string csv_body(const SweepResult& rows) {
  std::string body(kColumns);
  body += '\n';
  for (const auto& r : rows) body += format_row(r) + '\n';
  return body;
}

inline void write_csv(std::ostream& out, const SweepResult& rows, const Metadata& meta) {
  for (const auto& [key, value] : meta) out << "# " << key << '=' << value << '\n';
  out << csv_body(rows);
}

struct CsvFile {
  Metadata meta;
  SweepResult rows;
};

inline CsvFile read_csv(std::istream& in) {
  CsvFile file;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string entry = line.substr(line.find_first_not_of("# "));
      const auto eq = entry.find('=');
      file.meta.emplace_back(entry.substr(0, eq),
                             eq == std::string::npos ? "" : entry.substr(eq + 1));
    } else if (!header) {
      if (line != kColumns) throw UsageError("csv: unexpected header '" + line + "'");
      header = true;
    } else {
      file.rows.push_back(parse_row(line));
    }
  }
  if (!header) throw UsageError("csv: missing header line");
  return file;
}

// Notes are ';'-separated key=value pairs.
inline std::map<std::string, std::string> parse_notes(const std::string& notes) {
  std::map<std::string, std::string> out;
  std::istringstream in(notes);
  std::string item;
  while (std::getline(in, item, ';')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

}  // namespace synthdp::cli

#endif  // SYNTHDP_CLI_CSV_HPP_
