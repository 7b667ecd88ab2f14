#pragma once

// Self-check of the closed forms against explicit power-set combination.
//
// Each case draws a random evidence pool (I classes, J features, entries with
// magnitude uniform in [0, 3] and random sign), then compares
//   - kappa against conflict_between(m+, m-),
//   - the m+ singleton and ignorance masses,
//   - m-(A) for every non-empty A,
//   - the plausibility transform of m+ (+) m-,
// where m+ and m- are built by Dempster-combining all I*J simple masses.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "evconflict/conflict_engine.hpp"

namespace evc::oracle {

inline constexpr double kOracleTolerance = 1e-9;
inline constexpr std::size_t kMaxOracleFrame = 12;

struct OracleConfig {
  std::size_t cases = 1000;
  std::size_t min_frame = 2;
  std::size_t max_frame = 6;
  std::size_t max_features = 8;
  double max_weight = 3.0;
  std::uint64_t seed = 42;
};

/// Closed forms under test; swappable so a corrupted one can be exercised.
struct ClosedForms {
  std::function<double(const evidence::ClassEvidence&)> kappa = conflict::kappa;
  std::function<conflict::PositiveMass(const evidence::ClassEvidence&)> mass_plus = conflict::mass_plus;
  std::function<conflict::NegativeMass(const evidence::ClassEvidence&)> mass_minus = conflict::mass_minus;
  std::function<std::vector<double>(const evidence::ClassEvidence&)> plausibility = conflict::plausibility_probs;
};

struct CaseFailure {
  std::size_t case_index = 0;
  std::uint64_t seed = 0;
  std::string quantity;
  double error = 0.0;
};

struct OracleResult {
  std::size_t cases = 0;
  double max_kappa_error = 0.0;
  double max_plus_error = 0.0;
  double max_minus_error = 0.0;
  double max_plausibility_error = 0.0;
  std::vector<CaseFailure> failures;

  double max_error() const;
  bool passed() const { return failures.empty(); }
};

/// The evidence pool used by case `index` of a run seeded with `seed`.
evidence::EvidencePool random_pool(const OracleConfig& config, std::size_t index);

OracleResult run_oracle(const OracleConfig& config, const ClosedForms& forms = {});

}  // namespace evc::oracle
