#pragma once

// Probability-based uncertainty scores of a generated response: predictive
// entropy (PE), its length-normalized form (LN-PE), the sum of chosen-token
// probabilities (PS), the sum of their logs (LPS), and the token count (L).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "evconflict/evidence_model.hpp"
#include "evconflict/types.hpp"

namespace evc::baseline {

using evidence::FeatureVector;
using evidence::FfnParams;

/// Chosen-token probabilities below this are floored before taking logs.
inline constexpr double kProbFloor = 1e-300;

struct TokenDistributionSeries {
  std::vector<std::vector<double>> per_token;
  std::vector<std::uint32_t> chosen_ids;
  std::vector<double> chosen_probs;

  std::size_t size() const { return per_token.size(); }
};

struct LogProbSum {
  double value = 0.0;
  bool floored = false;
};

struct ScoreRecord {
  std::uint64_t response_id = 0;
  double kappa_max = 0.0;
  double pe = 0.0;
  double ln_pe = 0.0;
  double ps = 0.0;
  double lps = 0.0;
  std::size_t length = 0;
  Label label = Label::Unknown;
  Capability capability = Capability::NotApplicable;
  Semantics semantics = Semantics::NotApplicable;
  bool saturated = false;
};

TokenDistributionSeries token_distributions(const FfnParams& params, std::span<const FeatureVector> features,
                                            std::span<const std::uint32_t> chosen_ids);

/// Entropy of one distribution, with 0 * ln 0 = 0.
double entropy(std::span<const double> p);

double predictive_entropy(const TokenDistributionSeries& series);
double ln_pe(double pe, std::size_t length);
double prob_sum(const TokenDistributionSeries& series);
LogProbSum log_prob_sum(const TokenDistributionSeries& series);
std::size_t response_length(const TokenDistributionSeries& series);

}  // namespace evc::baseline
