#pragma once

// Evidence pool construction from final-layer parameters.
//
// The output layer logits = B * phi + beta0 are read as a combination of
// simple mass functions, one per (class, feature) pair. The weights of
// evidence are taken from the least-committed parametrization: class-centered
// weights plus the class-centered bias spread evenly over the J features,
//
//   w_ij = Bc_ij * phi_j + bc_i / J,
//
// where Bc_ij = B_ij - mean_l B_lj and bc_i = beta0_i - mean_l beta0_l.
// Row i of W then sums to the centered logit of class i.

#include <cstddef>
#include <span>
#include <vector>

#include "evconflict/matrix.hpp"

namespace evc::evidence {

/// Aggregated class weights are clamped here; exp(690) is still finite.
inline constexpr double kWeightClamp = 690.0;

struct FfnParams {
  Matrix weights;             // I x J, row i = class z_i
  std::vector<double> bias;   // length I

  std::size_t vocab_size() const { return weights.rows(); }
  std::size_t feature_dim() const { return weights.cols(); }

  /// Throws InvalidParams on I < 2, J < 1, bias length or non-finite entries.
  void validate() const;
};

struct FeatureVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct CenteredParams {
  Matrix weights_centered;
  std::vector<double> bias_centered;
  double bias_shift = 0.0;            // c0 = -mean(beta0)
  std::vector<double> column_shift;   // c_j = -mean_l B_lj

  std::size_t vocab_size() const { return weights_centered.rows(); }
  std::size_t feature_dim() const { return weights_centered.cols(); }
};

struct EvidencePool {
  Matrix entries;  // I x J
};

struct ClassEvidence {
  std::vector<double> pos;
  std::vector<double> neg;
  bool saturated = false;

  std::size_t size() const { return pos.size(); }
};

CenteredParams center_params(const FfnParams& params);

EvidencePool build_evidence_pool(const CenteredParams& cp, const FeatureVector& phi);

ClassEvidence split_and_aggregate(const EvidencePool& pool);

/// Same result as split_and_aggregate(build_evidence_pool(cp, phi)) without
/// materializing the I x J pool.
ClassEvidence aggregate_evidence(const CenteredParams& cp, const FeatureVector& phi);

}  // namespace evc::evidence
