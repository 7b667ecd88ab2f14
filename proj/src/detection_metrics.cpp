#include "evconflict/detection_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "evconflict/error.hpp"

namespace evc::metrics {

namespace {

void check_data(const LabeledScores& data) {
  require(data.scores.size() == data.labels.size(), ErrorCode::Shape, "scores and labels differ in length");
  for (double s : data.scores) require(std::isfinite(s), ErrorCode::NonFinite, "scores must be finite");
  for (auto l : data.labels) require(l <= 1, ErrorCode::InvalidTag, "labels must be 0 or 1");
}

std::vector<std::size_t> order_by_score(const LabeledScores& data, bool descending) {
  std::vector<std::size_t> idx(data.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return descending ? data.scores[a] > data.scores[b] : data.scores[a] < data.scores[b];
  });
  return idx;
}

double ratio(std::size_t num, std::size_t den, bool& defined) {
  defined = den != 0;
  return defined ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

}  // namespace

std::size_t LabeledScores::positives() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), std::uint8_t{1}));
}

double auroc(const LabeledScores& data) {
  check_data(data);
  const std::size_t n_pos = data.positives();
  const std::size_t n_neg = data.negatives();
  require(n_pos > 0 && n_neg > 0, ErrorCode::DegenerateLabels, "AUROC needs both positives and negatives");

  // Twice the Mann-Whitney count, kept integral so the result is exact.
  const auto idx = order_by_score(data, false);
  std::uint64_t twice_wins = 0;
  std::uint64_t neg_below = 0;
  for (std::size_t b = 0; b < idx.size();) {
    std::size_t e = b;
    std::uint64_t pos_here = 0;
    std::uint64_t neg_here = 0;
    while (e < idx.size() && data.scores[idx[e]] == data.scores[idx[b]]) {
      (data.labels[idx[e]] == 1 ? pos_here : neg_here) += 1;
      ++e;
    }
    twice_wins += pos_here * (2 * neg_below + neg_here);
    neg_below += neg_here;
    b = e;
  }
  return static_cast<double>(twice_wins) / (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double aupr(const LabeledScores& data) {
  check_data(data);
  const std::size_t n_pos = data.positives();
  require(n_pos > 0, ErrorCode::DegenerateLabels, "AUPR needs at least one positive");

  const auto idx = order_by_score(data, true);
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tp_prev = 0;
  double area = 0.0;
  for (std::size_t b = 0; b < idx.size();) {
    std::size_t e = b;
    while (e < idx.size() && data.scores[idx[e]] == data.scores[idx[b]]) {
      (data.labels[idx[e]] == 1 ? tp : fp) += 1;
      ++e;
    }
    const double recall_step = static_cast<double>(tp - tp_prev) / static_cast<double>(n_pos);
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    area += recall_step * precision;
    tp_prev = tp;
    b = e;
  }
  return area;
}

ThresholdChoice threshold_at_fpr(const LabeledScores& data, double target) {
  check_data(data);
  require(std::isfinite(target) && target >= 0.0 && target <= 1.0, ErrorCode::InvalidConfig,
          "FPR target must be in [0, 1]");
  const std::size_t n_pos = data.positives();
  const std::size_t n_neg = data.negatives();
  require(n_neg > 0, ErrorCode::DegenerateLabels, "a false-positive rate needs at least one negative");

  // Walk candidate cutoffs from the largest observed score downward. At
  // tau = s, everything strictly above s is positive.
  const auto idx = order_by_score(data, true);
  std::size_t tp = 0;
  std::size_t fp = 0;
  ThresholdChoice best;
  double best_gap = std::numeric_limits<double>::infinity();
  // Distances are compared in units of negatives so that cutoffs equally
  // far from the target on either side compare equal.
  const double target_count = target * static_cast<double>(n_neg);
  auto consider = [&](double tau) {
    const double fpr = static_cast<double>(fp) / static_cast<double>(n_neg);
    const double tpr = n_pos ? static_cast<double>(tp) / static_cast<double>(n_pos) : 0.0;
    const double gap = std::abs(static_cast<double>(fp) - target_count);
    // Candidates arrive with decreasing tau, so "not worse" keeps the smaller one.
    if (gap < best_gap || (gap == best_gap && tpr >= best.tpr)) {
      best_gap = gap;
      best = ThresholdChoice{tau, fpr, tpr};
    }
  };
  for (std::size_t b = 0; b < idx.size();) {
    const double s = data.scores[idx[b]];
    consider(s);
    std::size_t e = b;
    while (e < idx.size() && data.scores[idx[e]] == s) {
      (data.labels[idx[e]] == 1 ? tp : fp) += 1;
      ++e;
    }
    b = e;
  }
  const double lowest = data.scores[idx.back()];
  consider(std::nextafter(lowest, -std::numeric_limits<double>::infinity()));
  return best;
}

Confusion confusion_at(const LabeledScores& data, double tau) {
  check_data(data);
  Confusion c;
  for (std::size_t k = 0; k < data.size(); ++k) {
    const bool predicted = data.scores[k] > tau;
    const bool actual = data.labels[k] == 1;
    if (predicted && actual) ++c.tp;
    else if (predicted) ++c.fp;
    else if (actual) ++c.fn;
    else ++c.tn;
  }
  c.accuracy = ratio(c.tp + c.tn, data.size(), c.accuracy_defined);
  c.precision = ratio(c.tp, c.tp + c.fp, c.precision_defined);
  c.recall = ratio(c.tp, c.tp + c.fn, c.recall_defined);
  c.f1_defined = c.precision_defined && c.recall_defined && (c.precision + c.recall) > 0.0;
  c.f1 = c.f1_defined ? 2.0 * c.precision * c.recall / (c.precision + c.recall) : 0.0;
  return c;
}

double ece(std::span<const double> confidences, std::span<const std::uint8_t> correct, std::size_t bins) {
  require(confidences.size() == correct.size(), ErrorCode::Shape, "confidences and outcomes differ in length");
  require(!confidences.empty(), ErrorCode::EmptyInput, "ECE needs at least one prediction");
  require(bins >= 1, ErrorCode::InvalidConfig, "ECE needs at least one bin");

  std::vector<double> conf_sum(bins, 0.0);
  std::vector<double> hit_sum(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  for (std::size_t k = 0; k < confidences.size(); ++k) {
    const double c = confidences[k];
    require(std::isfinite(c) && c >= 0.0 && c <= 1.0, ErrorCode::InvalidConfig, "confidence outside [0, 1]");
    const double pos = std::ceil(c * static_cast<double>(bins)) - 1.0;
    const auto b = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
    conf_sum[b] += c;
    hit_sum[b] += correct[k] ? 1.0 : 0.0;
    ++count[b];
  }
  const double total = static_cast<double>(confidences.size());
  double err = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    if (count[b] == 0) continue;
    const double n = static_cast<double>(count[b]);
    err += (n / total) * std::abs(hit_sum[b] / n - conf_sum[b] / n);
  }
  return err;
}

bool metric_is_negated(Metric m) { return m == Metric::Ps || m == Metric::Lps; }

double suspicion_score(const baseline::ScoreRecord& r, Metric m) {
  switch (m) {
    case Metric::KappaMax: return r.kappa_max;
    case Metric::Pe: return r.pe;
    case Metric::LnPe: return r.ln_pe;
    case Metric::Ps: return -r.ps;
    case Metric::Lps: return -r.lps;
    case Metric::Length: return static_cast<double>(r.length);
  }
  return 0.0;
}

EvalReport grouped_report(std::span<const baseline::ScoreRecord> records, Metric metric, const ReportOptions& options) {
  EvalReport rep;
  rep.metric = metric;
  rep.negated = metric_is_negated(metric);
  rep.orientation = rep.negated ? "negated: smaller " + std::string(to_string(metric)) + " is more suspicious"
                                : "as-is: larger " + std::string(to_string(metric)) + " is more suspicious";
  rep.fpr_target = options.fpr_target;

  LabeledScores all;
  std::vector<const baseline::ScoreRecord*> labeled;
  for (const auto& r : records) {
    if (r.label == Label::Unknown) {
      ++rep.unlabeled;
      continue;
    }
    labeled.push_back(&r);
    all.scores.push_back(suspicion_score(r, metric));
    all.labels.push_back(r.label == Label::Hallucination ? 1 : 0);
  }
  rep.labeled = labeled.size();
  rep.positives = all.positives();
  rep.negatives = all.negatives();
  require(rep.positives > 0 && rep.negatives > 0, ErrorCode::DegenerateLabels,
          "evaluation needs labeled hallucinations and labeled correct responses (got " +
              std::to_string(rep.positives) + " and " + std::to_string(rep.negatives) + ")");

  rep.auroc = auroc(all);
  rep.aupr = aupr(all);
  rep.threshold = threshold_at_fpr(all, options.fpr_target);
  rep.confusion = confusion_at(all, rep.threshold.tau);

  if (options.with_ece) {
    std::vector<double> conf;
    std::vector<std::uint8_t> hit;
    for (const auto* r : labeled) {
      if (r->length == 0) continue;
      conf.push_back(std::clamp(r->ps / static_cast<double>(r->length), 0.0, 1.0));
      hit.push_back(r->label == Label::Correct ? 1 : 0);
    }
    if (!conf.empty()) rep.ece = ece(conf, hit, options.ece_bins);
  }

  auto add_group = [&](const std::string& axis, const std::string& name, auto&& member) {
    GroupMetrics g;
    g.axis = axis;
    g.group = name;
    LabeledScores sub;
    for (std::size_t k = 0; k < labeled.size(); ++k) {
      if (!member(*labeled[k])) continue;
      sub.scores.push_back(all.scores[k]);
      sub.labels.push_back(all.labels[k]);
    }
    g.count = sub.size();
    g.positives = sub.positives();
    g.negatives = sub.negatives();
    if (g.positives > 0 && g.negatives > 0) {
      g.auroc = auroc(sub);
      g.aupr = aupr(sub);
    }
    rep.groups.push_back(std::move(g));
  };
  for (auto c : {Capability::Perception, Capability::Reasoning}) {
    add_group("capability", std::string(to_string(c)), [c](const auto& r) { return r.capability == c; });
  }
  for (auto s : {Semantics::Instance, Semantics::Scene, Semantics::Relation}) {
    add_group("semantics", std::string(to_string(s)), [s](const auto& r) { return r.semantics == s; });
  }
  return rep;
}

}  // namespace evc::metrics
