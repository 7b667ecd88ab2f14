#include "evconflict/commands.hpp"

#include <ostream>
#include <string>

#include "evconflict/detection_metrics.hpp"
#include "evconflict/error.hpp"
#include "evconflict/report.hpp"
#include "evconflict/scoring.hpp"

namespace evc::cli {

namespace {

int report_error(const Error& e, std::ostream& err, int code) {
  err << "error [" << error_name(e.code()) << "]: " << e.what() << '\n';
  return code;
}

}  // namespace

io::MetricMask parse_metric_list(std::string_view list) {
  if (list == "all") return io::kAllMetrics;
  io::MetricMask mask{};
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    const std::string_view name = list.substr(start, end - start);
    const auto m = metric_from_name(name);
    require(m.has_value(), ErrorCode::InvalidConfig, "unknown metric \"" + std::string(name) + "\"");
    mask[static_cast<std::size_t>(*m)] = true;
    start = end + 1;
  }
  return mask;
}

int score_cmd(const ScoreOptions& opts, std::ostream& err) {
  try {
    const auto params = io::read_params(opts.params);
    const auto traces = io::read_traces(opts.traces);
    const auto violations = io::validate(params, traces);
    if (!violations.empty()) {
      for (const auto& v : violations) err << "violation: " << v.message << '\n';
      err << "error [validation]: " << violations.size() << " violation(s); nothing written\n";
      return kValidation;
    }
    const auto records = score_dataset(params, traces, opts.threads);
    io::write_file_atomic(opts.out, io::format_scores_csv(records, opts.metrics));
    return kOk;
  } catch (const Error& e) {
    return report_error(e, err, kValidation);
  }
}

int eval_cmd(const EvalOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto table = io::read_scores_csv(opts.scores);
    const auto column = static_cast<std::size_t>(opts.metric);
    require(table.present[column], ErrorCode::Parse,
            "score table has no " + std::string(to_string(opts.metric)) + " column");
    metrics::ReportOptions ro;
    ro.fpr_target = opts.fpr;
    ro.with_ece = table.present[static_cast<std::size_t>(Metric::Ps)] &&
                  table.present[static_cast<std::size_t>(Metric::Length)];
    const auto report = metrics::grouped_report(table.records, opts.metric, ro);
    out << io::format_report_table(report);
    if (!opts.out.empty()) io::write_file_atomic(opts.out, io::report_to_json(report).dump(2) + "\n");
    return kOk;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateLabels) return report_error(e, err, kDegenerateLabels);
    if (e.code() == ErrorCode::InvalidConfig) return report_error(e, err, kUsage);
    return report_error(e, err, kValidation);
  }
}

int oracle_cmd(const oracle::OracleConfig& config, std::ostream& out, std::ostream& err,
               const oracle::ClosedForms& forms) {
  if (config.cases == 0) {
    err << "error [usage]: --cases must be at least 1\n";
    return kUsage;
  }
  if (config.max_frame < 2 || config.max_frame > oracle::kMaxOracleFrame) {
    err << "error [usage]: --max-frame must be in [2, " << oracle::kMaxOracleFrame << "]\n";
    return kUsage;
  }
  try {
    const auto result = oracle::run_oracle(config, forms);
    out << "cases: " << result.cases << " (frames 2.." << config.max_frame << ", seed " << config.seed << ")\n";
    out << "max abs error kappa:        " << result.max_kappa_error << '\n';
    out << "max abs error m+:           " << result.max_plus_error << '\n';
    out << "max abs error m-:           " << result.max_minus_error << '\n';
    out << "max abs error plausibility: " << result.max_plausibility_error << '\n';
    out << "max abs error:              " << result.max_error() << " (tolerance " << oracle::kOracleTolerance
        << ")\n";
    if (result.passed()) return kOk;
    constexpr std::size_t kShown = 20;
    for (std::size_t k = 0; k < result.failures.size() && k < kShown; ++k) {
      const auto& f = result.failures[k];
      err << "oracle mismatch: seed " << f.seed << " case " << f.case_index << " " << f.quantity << " error "
          << f.error << '\n';
    }
    if (result.failures.size() > kShown) err << "... " << result.failures.size() - kShown << " more\n";
    return kOracleFailure;
  } catch (const Error& e) {
    return report_error(e, err, e.code() == ErrorCode::InvalidConfig ? kUsage : kOracleFailure);
  }
}

int synth_cmd(const io::SynthConfig& config, const std::filesystem::path& params_out,
              const std::filesystem::path& traces_out, std::ostream& err) {
  try {
    config.validate();
  } catch (const Error& e) {
    return report_error(e, err, kUsage);
  }
  try {
    const auto ds = io::synth_dataset(config);
    io::TraceSet set{static_cast<std::uint32_t>(ds.params.feature_dim()), ds.traces};
    // Encode both before touching the filesystem so a failure writes nothing.
    const auto params_bytes = io::encode_params(ds.params);
    const auto trace_bytes = io::encode_traces(set);
    io::write_file_atomic(params_out, params_bytes);
    io::write_file_atomic(traces_out, trace_bytes);
    return kOk;
  } catch (const Error& e) {
    return report_error(e, err, kValidation);
  }
}

}  // namespace evc::cli
