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

// CSV ingestion of operation sets and registration signals, and
// CSV/JSON emission of reports and thread series.
//
// Input files are UTF-8 with LF or CRLF line ends. A numeric cell may use a
// decimal comma when quoted ("728,00"); it is read as 728.00.

#ifndef RESINT_IO_H_
#define RESINT_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resint/analysis.h"
#include "resint/op_model.h"

namespace resint::io {

enum class OutputFormat { kCsv, kJson };

struct RunConfig {
  double step = 1e-3;
  double horizon = analysis::kDefaultHorizon;
  OutputFormat output_format = OutputFormat::kCsv;
  int rounding = 2;  // decimal places
  bool signed_dif = true;
};

void validate(const RunConfig& cfg);

// Half-up (away from zero) rounding. Values within 1e-9 relative of a
// half-way point count as half-way, so 37.125 computed as 37.12499999...
// still rounds to 37.13.
double round_half_up(double value, int decimals);

// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

// Splits one CSV record; double quotes group cells and "" escapes a quote.
std::vector<std::string> split_csv_line(std::string_view line);

struct SimpleOpTable {
  std::vector<std::string> ids;
  std::vector<SimpleOperation> ops;
  std::vector<std::string> warnings;
};

// Header must be exactly `id,re,pe,tr,tp`. Errors are kParse with the line
// number.
SimpleOpTable parse_simple_ops(std::istream& in);
SimpleOpTable load_simple_ops(const std::filesystem::path& path);

// One channel as read from a `t,value` file. `step` is unset for a
// single-row file, whose bin width comes from the caller.
struct SignalFile {
  double t0 = 0.0;
  std::optional<double> step;
  std::vector<double> values;
};

SignalFile parse_signal(std::istream& in);

// Reads both channels and puts them on a common grid (see
// calculus::align_signals). `step`, when given, is the target grid step
// and the bin width of single-row files; otherwise single-row files take
// the other channel's step, falling back to RunConfig's default.
SignalOperation load_signal_op(const std::filesystem::path& path_re,
                               const std::filesystem::path& path_pe,
                               std::optional<double> step = std::nullopt);

// CSV: `id,re,pe,t,r_intensity[,prof]` rows, a blank line, then a
// `summary,value` block. JSON carries the same content.
void emit_report(const analysis::SetReport& report, const RunConfig& cfg,
                 std::ostream& sink);

// `v,ire,ipe,vre,vpe,dif,r`, full precision.
void write_thread_csv(const ThreadProfile& profile, std::ostream& sink);

}  // namespace resint::io

#endif  // RESINT_IO_H_
