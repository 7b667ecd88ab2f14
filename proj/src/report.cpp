#include "evconflict/report.hpp"

#include <cstdio>
#include <sstream>

namespace evc::io {

namespace {

nlohmann::json optional_real(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string cell(double v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string cell(const std::optional<double>& v) { return v ? cell(*v) : std::string("   -  "); }

}  // namespace

nlohmann::json report_to_json(const metrics::EvalReport& r) {
  using nlohmann::json;
  json undefined = json::array();
  if (!r.confusion.accuracy_defined) undefined.push_back("accuracy");
  if (!r.confusion.precision_defined) undefined.push_back("precision");
  if (!r.confusion.recall_defined) undefined.push_back("recall");
  if (!r.confusion.f1_defined) undefined.push_back("f1");

  json groups = json::object();
  for (const auto& g : r.groups) {
    groups[g.axis][g.group] = {
        {"count", g.count},
        {"positives", g.positives},
        {"negatives", g.negatives},
        {"auroc", optional_real(g.auroc)},
        {"aupr", optional_real(g.aupr)},
    };
  }

  return json{
      {"metric", std::string(to_string(r.metric))},
      {"orientation", {{"negated", r.negated}, {"rule", r.orientation}}},
      {"labeled", r.labeled},
      {"unlabeled", r.unlabeled},
      {"positives", r.positives},
      {"negatives", r.negatives},
      {"auroc", r.auroc},
      {"aupr", r.aupr},
      {"fpr_target", r.fpr_target},
      {"threshold", r.threshold.tau},
      {"achieved_fpr", r.threshold.fpr},
      {"achieved_tpr", r.threshold.tpr},
      {"accuracy", r.confusion.accuracy},
      {"precision", r.confusion.precision},
      {"recall", r.confusion.recall},
      {"f1", r.confusion.f1},
      {"confusion", {{"tp", r.confusion.tp}, {"fp", r.confusion.fp}, {"tn", r.confusion.tn}, {"fn", r.confusion.fn}}},
      {"undefined_ratios", undefined},
      {"ece", optional_real(r.ece)},
      {"groups", groups},
  };
}

std::string format_report_table(const metrics::EvalReport& r) {
  std::ostringstream os;
  const std::string name(to_string(r.metric));
  os << "fixed FPR " << cell(r.fpr_target) << " (achieved " << cell(r.threshold.fpr) << ", threshold "
     << r.threshold.tau << ")\n";
  os << "metric     |    Acc |   Prec |    Rec |     F1\n";
  os << "-----------+--------+--------+--------+-------\n";
  char row[128];
  std::snprintf(row, sizeof row, "%-10s | %s | %s | %s | %s\n", name.c_str(), cell(r.confusion.accuracy).c_str(),
                cell(r.confusion.precision).c_str(), cell(r.confusion.recall).c_str(), cell(r.confusion.f1).c_str());
  os << row << '\n';

  os << "AUROC / AUPR (" << r.positives << " hallucinated, " << r.negatives << " correct, " << r.unlabeled
     << " unlabeled)\n";
  std::snprintf(row, sizeof row, "  %-12s %s / %s\n", "total", cell(r.auroc).c_str(), cell(r.aupr).c_str());
  os << row;
  for (const auto& g : r.groups) {
    std::snprintf(row, sizeof row, "  %-12s %s / %s  (n=%zu)\n", g.group.c_str(), cell(g.auroc).c_str(),
                  cell(g.aupr).c_str(), g.count);
    os << row;
  }
  if (r.ece) os << "ECE (mean chosen-token probability): " << cell(*r.ece) << '\n';
  return os.str();
}

}  // namespace evc::io
