#include "evconflict/baseline_scores.hpp"

#include <cmath>
#include <string>

#include "evconflict/error.hpp"
#include "evconflict/numerics.hpp"

namespace evc::baseline {

TokenDistributionSeries token_distributions(const FfnParams& params, std::span<const FeatureVector> features,
                                            std::span<const std::uint32_t> chosen_ids) {
  params.validate();
  require(features.size() == chosen_ids.size(), ErrorCode::Shape,
          "feature and chosen-token sequences differ in length");
  TokenDistributionSeries series;
  series.per_token.reserve(features.size());
  for (std::size_t n = 0; n < features.size(); ++n) {
    require(features[n].size() == params.feature_dim(), ErrorCode::Shape,
            "feature vector " + std::to_string(n) + " has the wrong length");
    require(chosen_ids[n] < params.vocab_size(), ErrorCode::IdOutOfRange,
            "token id " + std::to_string(chosen_ids[n]) + " is outside the vocabulary");
    series.per_token.push_back(softmax(affine(params.weights, params.bias, features[n].values)));
    series.chosen_probs.push_back(series.per_token.back()[chosen_ids[n]]);
  }
  series.chosen_ids.assign(chosen_ids.begin(), chosen_ids.end());
  return series;
}

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double predictive_entropy(const TokenDistributionSeries& series) {
  double pe = 0.0;
  for (const auto& p : series.per_token) pe += entropy(p);
  return pe;
}

double ln_pe(double pe, std::size_t length) {
  require(length >= 1, ErrorCode::EmptyResponse, "length-normalized entropy needs at least one token");
  return pe / static_cast<double>(length);
}

double prob_sum(const TokenDistributionSeries& series) {
  double ps = 0.0;
  for (double p : series.chosen_probs) ps += p;
  return ps;
}

LogProbSum log_prob_sum(const TokenDistributionSeries& series) {
  LogProbSum out;
  for (double p : series.chosen_probs) {
    if (p < kProbFloor) {
      p = kProbFloor;
      out.floored = true;
    }
    out.value += std::log(p);
  }
  return out;
}

std::size_t response_length(const TokenDistributionSeries& series) { return series.size(); }

}  // namespace evc::baseline
