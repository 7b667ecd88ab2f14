#pragma once

// Subcommand implementations behind the evconflict executable. Each returns
// the process exit status and reports problems on `err`.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "evconflict/oracle.hpp"
#include "evconflict/trace_io.hpp"

namespace evc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kDegenerateLabels = 3,
  kOracleFailure = 4,
};

/// Parses "kappa,pe,..." (or "all"). Throws InvalidConfig on unknown names.
io::MetricMask parse_metric_list(std::string_view list);

struct ScoreOptions {
  std::filesystem::path params;
  std::filesystem::path traces;
  std::filesystem::path out;
  io::MetricMask metrics = io::kAllMetrics;
  std::size_t threads = 1;
};

int score_cmd(const ScoreOptions& opts, std::ostream& err);

struct EvalOptions {
  std::filesystem::path scores;
  std::filesystem::path out;  // JSON report; empty = stdout table only
  Metric metric = Metric::KappaMax;
  double fpr = 0.08;
};

int eval_cmd(const EvalOptions& opts, std::ostream& out, std::ostream& err);

int oracle_cmd(const oracle::OracleConfig& config, std::ostream& out, std::ostream& err,
               const oracle::ClosedForms& forms = {});

int synth_cmd(const io::SynthConfig& config, const std::filesystem::path& params_out,
              const std::filesystem::path& traces_out, std::ostream& err);

}  // namespace evc::cli
