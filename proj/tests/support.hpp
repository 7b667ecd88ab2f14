#pragma once

// Shared test helpers: error-code capture, random inputs, and a reference
// evaluation of the evidential masses by explicit power-set combination.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "evconflict/dst_core.hpp"
#include "evconflict/error.hpp"
#include "evconflict/evidence_model.hpp"
#include "evconflict/random.hpp"

namespace testing {

inline evc::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const evc::Error& e) {
    return e.code();
  }
  FAIL("expected an evc::Error");
  return evc::ErrorCode::Internal;
}

inline evc::evidence::FfnParams random_params(evc::Rng& rng, std::size_t classes, std::size_t features,
                                              double scale = 1.0) {
  evc::evidence::FfnParams p;
  p.weights = evc::Matrix(classes, features);
  for (double& v : p.weights.data()) v = scale * rng.normal();
  p.bias.resize(classes);
  for (double& v : p.bias) v = scale * rng.normal();
  return p;
}

inline evc::evidence::FeatureVector random_features(evc::Rng& rng, std::size_t features, double scale = 1.0) {
  evc::evidence::FeatureVector phi;
  phi.values.resize(features);
  for (double& v : phi.values) v = scale * rng.normal();
  return phi;
}

struct Reference {
  evc::dst::MassFunction plus;
  evc::dst::MassFunction minus;
  double kappa = 0.0;
};

/// m+ combines A_i^{w+} over classes i, m- combines (complement of A_i)^{w-}.
/// Each input weight becomes its own simple mass function.
inline Reference reference_from_weights(std::size_t classes, const std::vector<std::vector<double>>& pos,
                                        const std::vector<std::vector<double>>& neg) {
  using namespace evc::dst;
  const Frame f = Frame::of_size(classes);
  std::vector<MassFunction> plus{MassFunction::vacuous(f)};
  std::vector<MassFunction> minus{MassFunction::vacuous(f)};
  for (std::size_t i = 0; i < classes; ++i) {
    for (double w : pos[i]) plus.push_back(make_simple(f, Subset::singleton(i), w));
    for (double w : neg[i]) minus.push_back(make_simple(f, f.complement(Subset::singleton(i)), w));
  }
  Reference r{combine_all(plus), combine_all(minus), 0.0};
  r.kappa = conflict_between(r.plus, r.minus);
  return r;
}

/// Splits every pool entry into its positive and negative part.
inline Reference reference_from_pool(const evc::evidence::EvidencePool& pool) {
  const std::size_t n = pool.entries.rows();
  std::vector<std::vector<double>> pos(n);
  std::vector<std::vector<double>> neg(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (double w : pool.entries.row(i)) {
      if (w > 0) pos[i].push_back(w);
      if (w < 0) neg[i].push_back(-w);
    }
  }
  return reference_from_weights(n, pos, neg);
}

/// Per-class aggregated weights as single simple masses.
inline Reference reference_from_evidence(const evc::evidence::ClassEvidence& ce) {
  std::vector<std::vector<double>> pos(ce.size());
  std::vector<std::vector<double>> neg(ce.size());
  for (std::size_t i = 0; i < ce.size(); ++i) {
    pos[i].push_back(ce.pos[i]);
    neg[i].push_back(ce.neg[i]);
  }
  return reference_from_weights(ce.size(), pos, neg);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

/// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("evc-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
