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

#include "resint/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "resint/analysis.h"
#include "resint/analytic.h"
#include "resint/calculus.h"
#include "resint/io.h"

namespace resint::cli {
namespace {

using nlohmann::json;

struct SimpleArgs {
  double re = 0.0;
  double pe = 0.0;
  double tr = 0.0;
  double tp = 0.0;
};

void add_simple_options(CLI::App* cmd, SimpleArgs& a) {
  cmd->add_option("--re", a.re, "input value (sign ignored)")->required();
  cmd->add_option("--pe", a.pe, "output value")->required();
  cmd->add_option("--tr", a.tr, "input registration instant")->required();
  cmd->add_option("--tp", a.tp, "output registration instant")->required();
}

void add_format_options(CLI::App* cmd, io::RunConfig& cfg) {
  const std::map<std::string, io::OutputFormat> formats{
      {"csv", io::OutputFormat::kCsv}, {"json", io::OutputFormat::kJson}};
  cmd->add_option("--format", cfg.output_format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd->add_option("--rounding", cfg.rounding, "decimal places in tables");
}

calculus::DifMode dif_mode(const io::RunConfig& cfg) {
  return cfg.signed_dif ? calculus::DifMode::kSigned
                        : calculus::DifMode::kMagnitude;
}

const char* dif_mode_name(const io::RunConfig& cfg) {
  return cfg.signed_dif ? "signed" : "magnitude";
}

void run_analyze(const SimpleArgs& a, const io::RunConfig& cfg,
                 std::ostream& out) {
  const SimpleOperation op = normalize_simple(a.re, a.pe, a.tr, a.tp);
  const double t_a = analytic::actual_completion_simple(op);
  const double r_analytic = analytic::resource_intensity_simple(op);

  const SignalOperation signals = simple_to_signals(op, cfg.step);
  const double t_a_numeric = calculus::actual_completion_numeric(signals);
  const double r_numeric =
      calculus::mismatch_thread(signals, t_a_numeric, dif_mode(cfg)).r.back();
  const double abs_diff = std::fabs(r_numeric - r_analytic);
  const double rel_diff = r_analytic > 0.0 ? abs_diff / r_analytic : abs_diff;
  const double bound = analytic::numeric_error_bound(op, cfg.step);

  json j = {
      {"operation",
       {{"re", op.re_value}, {"pe", op.pe_value}, {"t_r", op.t_r},
        {"t_p", op.t_p}}},
      {"step", cfg.step},
      {"dif_mode", dif_mode_name(cfg)},
      {"op_time", op.op_time()},
      {"t_f", op.t_p},
      {"t_a_analytic", t_a},
      {"t_a_numeric", t_a_numeric},
      {"bd_height", analytic::bd_height(op)},
      {"R_analytic", r_analytic},
      {"R_numeric", r_numeric},
      {"abs_diff", abs_diff},
      {"rel_diff", rel_diff},
      {"error_bound", bound},
      {"within_bound", abs_diff <= bound},
  };
  if (op.op_time() > 0.0) {
    j["profit_rate"] = (op.pe_value - op.re_value) / op.op_time();
  }
  out << j.dump(2) << '\n';
}

void run_table(const std::string& input, const io::RunConfig& cfg,
               std::ostream& out, std::ostream& err) {
  io::SimpleOpTable table = io::load_simple_ops(input);
  for (const std::string& w : table.warnings) err << "warning: " << w << '\n';
  analysis::SetReport report;
  if (!table.ops.empty()) {
    report = analysis::evaluate_set(table.ops, cfg.horizon, table.ids);
  }
  io::emit_report(report, cfg, out);
}

struct SweepArgs {
  std::vector<double> base;
  VariedField vary = VariedField::kOpTime;
  double start = 0.0;
  double step = 0.0;
  int count = 1;
};

void run_sweep(const SweepArgs& a, const io::RunConfig& cfg,
               std::ostream& out) {
  if (a.base.size() < 2 || a.base.size() > 3) {
    throw Error(ErrorCode::kParse, "--base expects RE,PE or RE,PE,T");
  }
  SweepSpec spec;
  const double t = a.base.size() == 3 ? a.base[2] : 1.0;
  spec.base = SimpleOperation{std::fabs(a.base[0]), a.base[1], 0.0, t};
  spec.varied_field = a.vary;
  spec.start = a.start;
  spec.step = a.step;
  spec.count = a.count;
  spec.horizon = cfg.horizon;
  const std::vector<SimpleOperation> ops = analysis::generate_sweep(spec);
  io::emit_report(analysis::evaluate_set(ops, spec.horizon), cfg, out);
}

void run_trace(const SimpleArgs& a, const io::RunConfig& cfg,
               const std::string& path, std::ostream& out) {
  const SimpleOperation op = normalize_simple(a.re, a.pe, a.tr, a.tp);
  const ThreadProfile profile =
      analysis::thread_series(op, cfg.step, dif_mode(cfg));
  if (path == "-") {
    io::write_thread_csv(profile, out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  io::write_thread_csv(profile, file);
}

void run_signals(const std::string& re_file, const std::string& pe_file,
                 std::optional<double> step, const io::RunConfig& cfg,
                 std::ostream& out) {
  const SignalOperation op = io::load_signal_op(re_file, pe_file, step);
  const double t_a = calculus::actual_completion_numeric(op);
  const ThreadProfile profile = calculus::mismatch_thread(op, t_a, dif_mode(cfg));
  json j = {
      {"t0", op.t0()},
      {"step", op.step()},
      {"dif_mode", dif_mode_name(cfg)},
      {"re_total", op.re_signal().total()},
      {"pe_total", op.pe_signal().total()},
      {"t_start", calculus::operation_start(op)},
      {"t_f", calculus::physical_completion(op)},
      {"t_a", t_a},
      {"dif_at_t_a", profile.dif.back()},
      {"R_numeric", profile.r.back()},
  };
  out << j.dump(2) << '\n';
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonEffective:
      return kExitNonEffective;
    case ErrorCode::kHorizon:
      return kExitHorizon;
    default:
      return kExitParseOrDomain;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Resource intensity of target operations", "resint"};
  app.require_subcommand(1);
  io::RunConfig cfg;

  SimpleArgs analyze_args;
  auto* analyze = app.add_subcommand(
      "analyze", "closed-form and numeric metrics of one simple operation");
  add_simple_options(analyze, analyze_args);
  analyze->add_option("--step", cfg.step, "numeric grid step");
  analyze->add_flag("!--magnitude-dif", cfg.signed_dif,
                    "integrate |dif| instead of dif");

  std::string table_input;
  auto* table = app.add_subcommand("table", "evaluate an operation CSV");
  table->add_option("--input", table_input, "CSV with id,re,pe,tr,tp")
      ->required();
  table->add_option("--horizon", cfg.horizon, "profit horizon");
  add_format_options(table, cfg);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "generate and evaluate a sweep");
  sweep->add_option("--base", sweep_args.base, "RE,PE[,T]")
      ->required()
      ->delimiter(',');
  const std::map<std::string, VariedField> fields{
      {"time", VariedField::kOpTime},
      {"re", VariedField::kReValue},
      {"pe", VariedField::kPeValue}};
  sweep->add_option("--vary", sweep_args.vary, "time, re or pe")
      ->required()
      ->transform(CLI::CheckedTransformer(fields, CLI::ignore_case));
  sweep->add_option("--start", sweep_args.start)->required();
  sweep->add_option("--step", sweep_args.step)->required();
  sweep->add_option("--count", sweep_args.count)->required();
  sweep->add_option("--horizon", cfg.horizon, "profit horizon");
  add_format_options(sweep, cfg);

  SimpleArgs trace_args;
  std::string trace_out;
  auto* trace = app.add_subcommand("trace", "thread series CSV for plots");
  add_simple_options(trace, trace_args);
  trace->add_option("--step", cfg.step, "grid step")->required();
  trace->add_option("--out", trace_out, "output CSV, '-' for stdout")
      ->required();
  trace->add_flag("!--magnitude-dif", cfg.signed_dif,
                  "integrate |dif| instead of dif");

  std::string re_file, pe_file;
  std::optional<double> signal_step;
  auto* signals = app.add_subcommand(
      "signals", "numeric metrics of a distributed operation");
  signals->add_option("--re-file", re_file, "consumption channel t,value")
      ->required();
  signals->add_option("--pe-file", pe_file, "return channel t,value")
      ->required();
  signals->add_option("--step", signal_step, "common grid step");
  signals->add_flag("!--magnitude-dif", cfg.signed_dif,
                    "integrate |dif| instead of dif");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParseOrDomain;
  }

  try {
    io::validate(cfg);
    if (*analyze) {
      run_analyze(analyze_args, cfg, out);
    } else if (*table) {
      run_table(table_input, cfg, out, err);
    } else if (*sweep) {
      run_sweep(sweep_args, cfg, out);
    } else if (*trace) {
      run_trace(trace_args, cfg, trace_out, out);
    } else if (*signals) {
      run_signals(re_file, pe_file, signal_step, cfg, out);
    }
  } catch (const Error& e) {
    err << "error (" << error_code_name(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace resint::cli
