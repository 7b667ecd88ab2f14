#include "evconflict/evidence_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evconflict/error.hpp"
#include "evconflict/numerics.hpp"

namespace evc::evidence {

namespace {

void check_shape(const CenteredParams& cp, const FeatureVector& phi) {
  require(phi.size() == cp.feature_dim(), ErrorCode::Shape,
          "feature vector has length " + std::to_string(phi.size()) + ", parameters expect " +
              std::to_string(cp.feature_dim()));
  require(all_finite(phi.values), ErrorCode::NonFinite, "feature vector has non-finite entries");
}

void clamp_weight(double& w, bool& saturated) {
  if (w > kWeightClamp) {
    w = kWeightClamp;
    saturated = true;
  }
}

}  // namespace

void FfnParams::validate() const {
  require(vocab_size() >= 2, ErrorCode::InvalidParams, "vocabulary size must be at least 2");
  require(feature_dim() >= 1, ErrorCode::InvalidParams, "feature dimension must be at least 1");
  require(bias.size() == vocab_size(), ErrorCode::InvalidParams, "bias length must equal vocabulary size");
  require(all_finite(weights.data()) && all_finite(bias), ErrorCode::InvalidParams,
          "parameters contain non-finite entries");
}

CenteredParams center_params(const FfnParams& params) {
  params.validate();
  const std::size_t n_class = params.vocab_size();
  const std::size_t n_feat = params.feature_dim();
  const double inv_i = 1.0 / static_cast<double>(n_class);

  CenteredParams cp;
  cp.column_shift.assign(n_feat, 0.0);
  for (std::size_t i = 0; i < n_class; ++i) {
    auto row = params.weights.row(i);
    for (std::size_t j = 0; j < n_feat; ++j) cp.column_shift[j] += row[j];
  }
  for (double& c : cp.column_shift) c *= -inv_i;

  cp.weights_centered = Matrix(n_class, n_feat);
  for (std::size_t i = 0; i < n_class; ++i) {
    auto src = params.weights.row(i);
    auto dst = cp.weights_centered.row(i);
    for (std::size_t j = 0; j < n_feat; ++j) dst[j] = src[j] + cp.column_shift[j];
  }

  double bias_sum = 0.0;
  for (double b : params.bias) bias_sum += b;
  cp.bias_shift = -bias_sum * inv_i;
  cp.bias_centered.resize(n_class);
  for (std::size_t i = 0; i < n_class; ++i) cp.bias_centered[i] = params.bias[i] + cp.bias_shift;
  return cp;
}

EvidencePool build_evidence_pool(const CenteredParams& cp, const FeatureVector& phi) {
  check_shape(cp, phi);
  const std::size_t n_feat = cp.feature_dim();
  const double spread = 1.0 / static_cast<double>(n_feat);
  EvidencePool pool{Matrix(cp.vocab_size(), n_feat)};
  for (std::size_t i = 0; i < cp.vocab_size(); ++i) {
    auto src = cp.weights_centered.row(i);
    auto dst = pool.entries.row(i);
    const double bias_part = cp.bias_centered[i] * spread;
    for (std::size_t j = 0; j < n_feat; ++j) dst[j] = src[j] * phi.values[j] + bias_part;
  }
  return pool;
}

ClassEvidence split_and_aggregate(const EvidencePool& pool) {
  const std::size_t n_class = pool.entries.rows();
  ClassEvidence ce{std::vector<double>(n_class, 0.0), std::vector<double>(n_class, 0.0), false};
  for (std::size_t i = 0; i < n_class; ++i) {
    double pos = 0.0;
    double neg = 0.0;
    for (double w : pool.entries.row(i)) {
      if (w > 0.0) {
        pos += w;
      } else {
        neg -= w;
      }
    }
    clamp_weight(pos, ce.saturated);
    clamp_weight(neg, ce.saturated);
    ce.pos[i] = pos;
    ce.neg[i] = neg;
  }
  return ce;
}

ClassEvidence aggregate_evidence(const CenteredParams& cp, const FeatureVector& phi) {
  check_shape(cp, phi);
  const std::size_t n_class = cp.vocab_size();
  const std::size_t n_feat = cp.feature_dim();
  const double spread = 1.0 / static_cast<double>(n_feat);
  ClassEvidence ce{std::vector<double>(n_class, 0.0), std::vector<double>(n_class, 0.0), false};
  for (std::size_t i = 0; i < n_class; ++i) {
    auto row = cp.weights_centered.row(i);
    const double bias_part = cp.bias_centered[i] * spread;
    double pos = 0.0;
    double neg = 0.0;
    for (std::size_t j = 0; j < n_feat; ++j) {
      const double w = row[j] * phi.values[j] + bias_part;
      if (w > 0.0) {
        pos += w;
      } else {
        neg -= w;
      }
    }
    clamp_weight(pos, ce.saturated);
    clamp_weight(neg, ce.saturated);
    ce.pos[i] = pos;
    ce.neg[i] = neg;
  }
  return ce;
}

}  // namespace evc::evidence
