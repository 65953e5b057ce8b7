// Copyright 2026 The resint Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "resint/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "resint/calculus.h"

namespace resint::io {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n";
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

// Line reader that strips CR and a leading UTF-8 BOM and tracks 1-based
// line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++number_;
    if (number_ == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
  int number() const { return number_; }

 private:
  std::istream& in_;
  int number_ = 0;
};

[[noreturn]] void parse_fail(int line, const std::string& why) {
  std::ostringstream os;
  os << "line " << line << ": " << why;
  throw Error(ErrorCode::kParse, os.str());
}

double parse_number(std::string_view cell, int line, const char* column) {
  std::string text(trim(cell));
  std::replace(text.begin(), text.end(), ',', '.');
  if (!text.empty() && text.front() == '+') text.erase(0, 1);
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last ||
      !std::isfinite(value)) {
    parse_fail(line, std::string("column '") + column +
                         "': not a finite decimal: '" + std::string(cell) +
                         "'");
  }
  return value;
}

void expect_header(LineReader& reader, std::string_view expected) {
  std::string line;
  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    std::string joined;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) joined += ',';
      joined += trim(cells[i]);
    }
    if (joined != expected) {
      parse_fail(reader.number(), "expected header '" + std::string(expected) +
                                      "', got '" + line + "'");
    }
    return;
  }
  parse_fail(reader.number(),
             "missing header '" + std::string(expected) + "'");
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  }
  return in;
}

json number_or_null(const std::optional<double>& v, int decimals) {
  if (!v) return nullptr;
  return round_half_up(*v, decimals);
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) {
    throw Error(ErrorCode::kDomain, "step must be finite and > 0");
  }
  if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) {
    throw Error(ErrorCode::kDomain, "horizon must be finite and > 0");
  }
  if (cfg.rounding < 0 || cfg.rounding > 15) {
    throw Error(ErrorCode::kDomain, "rounding must be in [0, 15]");
  }
}

double round_half_up(double value, int decimals) {
  if (!std::isfinite(value)) return value;
  const double scale = std::pow(10.0, decimals);
  const double scaled = std::fabs(value) * scale;
  double whole = std::floor(scaled);
  if (scaled - whole >= 0.5 - 1e-9 * std::max(1.0, scaled)) whole += 1.0;
  const double out = whole / scale;
  if (out == 0.0) return 0.0;
  return std::copysign(out, value);
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  return cells;
}

SimpleOpTable parse_simple_ops(std::istream& in) {
  LineReader reader(in);
  expect_header(reader, "id,re,pe,tr,tp");
  SimpleOpTable table;
  std::string line;
  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    const int n = reader.number();
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 5) {
      parse_fail(n, "expected 5 cells (id,re,pe,tr,tp), got " +
                        std::to_string(cells.size()));
    }
    const std::string id(trim(cells[0]));
    if (id.empty()) parse_fail(n, "empty id");
    const double re = parse_number(cells[1], n, "re");
    const double pe = parse_number(cells[2], n, "pe");
    const double tr = parse_number(cells[3], n, "tr");
    const double tp = parse_number(cells[4], n, "tp");
    try {
      table.ops.push_back(normalize_simple(re, pe, tr, tp));
    } catch (const Error& e) {
      parse_fail(n, e.what());
    }
    table.ids.push_back(id);
  }
  if (table.ops.empty()) {
    table.warnings.push_back("operation file has no data rows");
  }
  return table;
}

SimpleOpTable load_simple_ops(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  try {
    return parse_simple_ops(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

SignalFile parse_signal(std::istream& in) {
  LineReader reader(in);
  expect_header(reader, "t,value");
  std::vector<double> times;
  SignalFile file;
  std::string line;
  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    const int n = reader.number();
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 2) {
      parse_fail(n, "expected 2 cells (t,value), got " +
                        std::to_string(cells.size()));
    }
    const double t = parse_number(cells[0], n, "t");
    const double v = parse_number(cells[1], n, "value");
    if (v < 0.0) {
      std::ostringstream os;
      os << "line " << n << ": negative value " << v;
      throw Error(ErrorCode::kDomain, os.str());
    }
    if (!times.empty() && !(t > times.back())) {
      std::ostringstream os;
      os << "line " << n << ": time " << t << " is not increasing";
      throw Error(ErrorCode::kGrid, os.str());
    }
    times.push_back(t);
    file.values.push_back(v);
  }
  if (times.empty()) {
    throw Error(ErrorCode::kParse, "signal file has no data rows");
  }
  file.t0 = times.front();
  if (times.size() >= 2) {
    const double step =
        (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double gap = times[i] - times[i - 1];
      // Allow decimal-to-binary representation error of the two instants.
      const double slack =
          1e-9 * step +
          4.0 * kEps * std::max(std::fabs(times[i]), std::fabs(times[i - 1]));
      if (std::fabs(gap - step) > slack) {
        std::ostringstream os;
        os << "nonuniform time spacing at row " << i + 1 << ": gap " << gap
           << " vs step " << step;
        throw Error(ErrorCode::kGrid, os.str());
      }
    }
    file.step = step;
  }
  return file;
}

SignalOperation load_signal_op(const std::filesystem::path& path_re,
                               const std::filesystem::path& path_pe,
                               std::optional<double> step) {
  auto read = [](const std::filesystem::path& p) {
    std::ifstream in = open_input(p);
    try {
      return parse_signal(in);
    } catch (const Error& e) {
      throw Error(e.code(), p.string() + ": " + e.what());
    }
  };
  const SignalFile re = read(path_re);
  const SignalFile pe = read(path_pe);
  if (step && (!(*step > 0.0) || !std::isfinite(*step))) {
    throw Error(ErrorCode::kGrid, "step must be finite and > 0");
  }
  auto width = [&](const SignalFile& f, const SignalFile& other) {
    if (f.step) return *f.step;
    if (step) return *step;
    if (other.step) return *other.step;
    return RunConfig{}.step;
  };
  SampledSignal re_signal(re.t0, width(re, pe), re.values);
  SampledSignal pe_signal(pe.t0, width(pe, re), pe.values);
  return calculus::align_signals(re_signal, pe_signal, step);
}

void emit_report(const analysis::SetReport& report, const RunConfig& cfg,
                 std::ostream& sink) {
  validate(cfg);
  const int d = cfg.rounding;
  const bool with_profit =
      std::any_of(report.rows.begin(), report.rows.end(),
                  [](const OperationMetrics& m) {
                    return m.horizon_profit.has_value();
                  });
  auto id_at = [&](const std::optional<std::size_t>& i) -> std::string {
    if (!i) return "";
    return *i < report.ids.size() ? report.ids[*i] : std::to_string(*i + 1);
  };
  // Rank statistic keeps more digits than the table cells.
  const int stat_digits = std::max(d, 6);

  if (cfg.output_format == OutputFormat::kJson) {
    json rows = json::array();
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const OperationMetrics& m = report.rows[i];
      json row = {{"id", id_at(i)},
                  {"re", round_half_up(m.re_total, d)},
                  {"pe", round_half_up(m.pe_total, d)},
                  {"t", round_half_up(m.op_time, d)},
                  {"r_intensity", round_half_up(m.resource_intensity, d)}};
      if (with_profit) row["prof"] = number_or_null(m.horizon_profit, d);
      rows.push_back(std::move(row));
    }
    json summary = json::object();
    if (!report.rows.empty()) {
      summary["argmin_cost"] = id_at(report.argmin_cost);
      summary["argmin_r"] = id_at(report.argmin_r);
      summary["argmax_prof"] =
          report.argmax_profit ? json(id_at(report.argmax_profit)) : json();
      summary["mirror_rank_stat"] =
          number_or_null(report.mirror_rank_stat, stat_digits);
      summary["tie_cost"] = report.cost_tie;
      summary["tie_r"] = report.r_tie;
      summary["tie_prof"] = report.profit_tie;
    }
    sink << json{{"rows", rows}, {"summary", summary}}.dump(2) << '\n';
  } else {
    sink << "id,re,pe,t,r_intensity" << (with_profit ? ",prof" : "") << '\n';
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const OperationMetrics& m = report.rows[i];
      sink << id_at(i) << ',' << format_number(round_half_up(m.re_total, d))
           << ',' << format_number(round_half_up(m.pe_total, d)) << ','
           << format_number(round_half_up(m.op_time, d)) << ','
           << format_number(round_half_up(m.resource_intensity, d));
      if (with_profit) {
        sink << ',';
        if (m.horizon_profit) {
          sink << format_number(round_half_up(*m.horizon_profit, d));
        }
      }
      sink << '\n';
    }
    sink << '\n' << "summary,value\n";
    if (!report.rows.empty()) {
      sink << "argmin_cost," << id_at(report.argmin_cost) << '\n';
      sink << "argmin_r," << id_at(report.argmin_r) << '\n';
      sink << "argmax_prof," << id_at(report.argmax_profit) << '\n';
      sink << "mirror_rank_stat,"
           << (report.mirror_rank_stat
                   ? format_number(
                         round_half_up(*report.mirror_rank_stat, stat_digits))
                   : "")
           << '\n';
      sink << "tie_cost," << (report.cost_tie ? "true" : "false") << '\n';
      sink << "tie_r," << (report.r_tie ? "true" : "false") << '\n';
      sink << "tie_prof," << (report.profit_tie ? "true" : "false") << '\n';
    }
  }
  sink.flush();
  if (!sink) throw Error(ErrorCode::kIo, "failed writing report");
}

void write_thread_csv(const ThreadProfile& profile, std::ostream& sink) {
  sink << "v,ire,ipe,vre,vpe,dif,r\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    sink << format_number(profile.grid[i]) << ','
         << format_number(profile.ire[i]) << ','
         << format_number(profile.ipe[i]) << ','
         << format_number(profile.vre[i]) << ','
         << format_number(profile.vpe[i]) << ','
         << format_number(profile.dif[i]) << ','
         << format_number(profile.r[i]) << '\n';
  }
  sink.flush();
  if (!sink) throw Error(ErrorCode::kIo, "failed writing thread series");
}

}  // namespace resint::io
