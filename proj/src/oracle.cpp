#include "evconflict/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "evconflict/dst_core.hpp"
#include "evconflict/error.hpp"
#include "evconflict/random.hpp"

namespace evc::oracle {

namespace {

struct PowerSetMasses {
  dst::MassFunction plus;
  dst::MassFunction minus;
};

PowerSetMasses combine_pool(const evidence::EvidencePool& pool) {
  const std::size_t n_class = pool.entries.rows();
  const dst::Frame frame = dst::Frame::of_size(n_class);
  std::vector<dst::MassFunction> plus;
  std::vector<dst::MassFunction> minus;
  for (std::size_t i = 0; i < n_class; ++i) {
    const auto single = dst::Subset::singleton(i);
    for (double w : pool.entries.row(i)) {
      plus.push_back(dst::make_simple(frame, single, std::max(0.0, w)));
      minus.push_back(dst::make_simple(frame, frame.complement(single), std::max(0.0, -w)));
    }
  }
  return {dst::combine_all(plus), dst::combine_all(minus)};
}

}  // namespace

double OracleResult::max_error() const {
  return std::max({max_kappa_error, max_plus_error, max_minus_error, max_plausibility_error});
}

evidence::EvidencePool random_pool(const OracleConfig& config, std::size_t index) {
  Rng rng(config.seed, index);
  const std::size_t n_class = rng.between(config.min_frame, config.max_frame);
  const std::size_t n_feat = rng.between(1, config.max_features);
  evidence::EvidencePool pool{Matrix(n_class, n_feat)};
  for (double& w : pool.entries.data()) {
    const double magnitude = rng.uniform(0.0, config.max_weight);
    w = rng.bernoulli(0.5) ? magnitude : -magnitude;
  }
  return pool;
}

OracleResult run_oracle(const OracleConfig& config, const ClosedForms& forms) {
  require(config.cases >= 1, ErrorCode::InvalidConfig, "oracle needs at least one case");
  require(config.min_frame >= 2 && config.min_frame <= config.max_frame && config.max_frame <= kMaxOracleFrame,
          ErrorCode::InvalidConfig, "oracle frame size must satisfy 2 <= min <= max <= 12");
  require(config.max_features >= 1, ErrorCode::InvalidConfig, "oracle needs at least one feature");
  require(std::isfinite(config.max_weight) && config.max_weight >= 0.0, ErrorCode::InvalidConfig,
          "oracle weight bound must be finite and non-negative");

  OracleResult result;
  result.cases = config.cases;
  for (std::size_t c = 0; c < config.cases; ++c) {
    const auto pool = random_pool(config, c);
    const auto ce = evidence::split_and_aggregate(pool);
    const auto exact = combine_pool(pool);
    const std::size_t n_class = ce.size();
    const dst::Frame& frame = exact.plus.frame();

    auto record = [&](const char* quantity, double err, double& running_max) {
      if (!(err <= kOracleTolerance)) result.failures.push_back({c, config.seed, quantity, err});
      if (std::isnan(err)) err = INFINITY;
      running_max = std::max(running_max, err);
    };

    const double kappa_exact = dst::conflict_between(exact.plus, exact.minus);
    record("kappa", std::abs(forms.kappa(ce) - kappa_exact), result.max_kappa_error);

    const auto mp = forms.mass_plus(ce);
    double plus_err = std::abs(mp.ignorance - exact.plus.mass(frame.full()));
    for (std::size_t i = 0; i < n_class; ++i) {
      plus_err = std::max(plus_err, std::abs(mp.singleton_masses.at(i) - exact.plus.mass(dst::Subset::singleton(i))));
    }
    record("m_plus", plus_err, result.max_plus_error);

    const auto mm = forms.mass_minus(ce);
    double minus_err = 0.0;
    for (std::uint32_t a = 1; a <= frame.full().bits; ++a) {
      minus_err = std::max(minus_err, std::abs(conflict::mass_minus_eval(mm, dst::Subset{a}) - exact.minus.mass(dst::Subset{a})));
    }
    record("m_minus", minus_err, result.max_minus_error);

    // The combined mass is only defined short of total conflict.
    if (kappa_exact <= dst::kTotalConflictBound) {
      const auto combined = dst::dempster_combine(exact.plus, exact.minus).mass;
      const auto p_exact = dst::plausibility_transform(combined);
      const auto p_closed = forms.plausibility(ce);
      double pl_err = 0.0;
      for (std::size_t i = 0; i < n_class; ++i) pl_err = std::max(pl_err, std::abs(p_closed.at(i) - p_exact[i]));
      record("plausibility", pl_err, result.max_plausibility_error);
    }
  }
  return result;
}

}  // namespace evc::oracle
