#pragma once

// Closed-form conflict between the positive and negative evidence of a token.
//
// Per class, the positive evidence w+_i backs {z_i} and the negative evidence
// w-_i backs the complement of {z_i}. Combining the positive simple masses
// gives m+ (focal sets: singletons and the frame); combining the negative ones
// gives m- (focal sets: every non-empty subset, never materialized here). The
// token score is the conflict between m+ and m-, evaluated in O(I).

#include <cstddef>
#include <span>
#include <vector>

#include "evconflict/dst_core.hpp"
#include "evconflict/evidence_model.hpp"

namespace evc::conflict {

using evidence::CenteredParams;
using evidence::ClassEvidence;
using evidence::FeatureVector;

/// m-'s own normalization is clamped so that 1 - kappa- stays above this.
inline constexpr double kMinusFloor = 1e-15;

struct PositiveMass {
  std::vector<double> singleton_masses;  // m+({z_i})
  double ignorance = 1.0;                // m+(V)
  double eta_plus = 1.0;
};

struct NegativeMass {
  std::vector<double> neg_weights;
  double kappa_minus = 0.0;
  double eta_minus = 1.0;
  bool saturated = false;
};

struct KappaValue {
  double kappa = 0.0;
  bool saturated = false;
};

struct ConflictScore {
  std::vector<double> per_token;
  double kappa_max = 0.0;
  std::size_t token_count = 0;
  bool saturated = false;
};

PositiveMass mass_plus(const ClassEvidence& ce);

NegativeMass mass_minus(const ClassEvidence& ce);

/// m-(A) for one subset. Only for frames of at most 20 classes.
double mass_minus_eval(const NegativeMass& nm, dst::Subset a);

/// Conflict between m+ and m-, with saturation from clamping folded in.
KappaValue evaluate_kappa(const ClassEvidence& ce);

inline double kappa(const ClassEvidence& ce) { return evaluate_kappa(ce).kappa; }

KappaValue evaluate_token(const CenteredParams& cp, const FeatureVector& phi);

inline double token_conflict(const CenteredParams& cp, const FeatureVector& phi) {
  return evaluate_token(cp, phi).kappa;
}

/// Response-level score: the largest per-token conflict.
ConflictScore sequence_conflict(std::span<const double> per_token);

/// Plausibility transformation of m+ (+) m-; proportional to exp(w+_i - w-_i).
std::vector<double> plausibility_probs(const ClassEvidence& ce);

}  // namespace evc::conflict
