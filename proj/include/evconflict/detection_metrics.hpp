#pragma once

// Detection quality of a suspicion score against binary labels
// (1 = hallucination / positive). Larger scores mean "more suspicious".

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evconflict/baseline_scores.hpp"
#include "evconflict/types.hpp"

namespace evc::metrics {

inline constexpr double kDefaultFprTarget = 0.08;
inline constexpr std::size_t kDefaultEceBins = 10;

struct LabeledScores {
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;

  std::size_t size() const { return scores.size(); }
  std::size_t positives() const;
  std::size_t negatives() const { return size() - positives(); }
};

/// Mann-Whitney statistic with half credit for ties.
double auroc(const LabeledScores& data);

/// Area under the precision-recall step curve; tied scores form one step.
double aupr(const LabeledScores& data);

struct ThresholdChoice {
  double tau = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
};

/// Cutoff (positive iff score > tau) whose false-positive rate is closest to
/// `target`. Ties prefer the higher TPR, then the smaller tau.
ThresholdChoice threshold_at_fpr(const LabeledScores& data, double target = kDefaultFprTarget);

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // False when the ratio had a zero denominator and is reported as 0.
  bool accuracy_defined = true;
  bool precision_defined = true;
  bool recall_defined = true;
  bool f1_defined = true;
};

Confusion confusion_at(const LabeledScores& data, double tau);

/// Expected calibration error over equal-width bins (k/B, (k+1)/B]; a
/// confidence of exactly 0 falls in the first bin.
double ece(std::span<const double> confidences, std::span<const std::uint8_t> correct,
           std::size_t bins = kDefaultEceBins);

// --- reports ----------------------------------------------------------------------

/// PS and LPS grow with confidence, so they are negated before evaluation.
bool metric_is_negated(Metric m);
double suspicion_score(const baseline::ScoreRecord& r, Metric m);

struct GroupMetrics {
  std::string axis;   // "capability" or "semantics"
  std::string group;  // e.g. "perception", "relation"
  std::size_t count = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::optional<double> auroc;  // absent when the group has a single class
  std::optional<double> aupr;
};

struct ReportOptions {
  double fpr_target = kDefaultFprTarget;
  bool with_ece = true;
  std::size_t ece_bins = kDefaultEceBins;
};

struct EvalReport {
  Metric metric = Metric::KappaMax;
  bool negated = false;
  std::string orientation;
  std::size_t labeled = 0;
  std::size_t unlabeled = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  double auroc = 0.0;
  double aupr = 0.0;
  double fpr_target = kDefaultFprTarget;
  ThresholdChoice threshold;
  Confusion confusion;
  // Calibration of the mean chosen-token probability (ps / length) against
  // correctness (label == correct).
  std::optional<double> ece;
  std::vector<GroupMetrics> groups;
};

/// Overall and per-category evaluation of one metric. Records labeled
/// unknown are excluded and tallied. Throws DegenerateLabels when the labeled
/// records do not contain both classes.
EvalReport grouped_report(std::span<const baseline::ScoreRecord> records, Metric metric,
                          const ReportOptions& options = {});

}  // namespace evc::metrics
