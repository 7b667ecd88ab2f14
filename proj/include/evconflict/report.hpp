#pragma once

#include <string>

#include "evconflict/detection_metrics.hpp"
#include "json.hpp"

namespace evc::io {

nlohmann::json report_to_json(const metrics::EvalReport& report);

/// Fixed-FPR block laid out as "Metric | Acc | Prec | Rec | F1", followed by
/// the AUROC/AUPR table per category.
std::string format_report_table(const metrics::EvalReport& report);

}  // namespace evc::io
