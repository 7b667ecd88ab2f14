#include "evconflict/conflict_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "evconflict/error.hpp"
#include "evconflict/numerics.hpp"

namespace evc::conflict {

namespace {

// Above this the positive masses are evaluated relative to exp(max w+).
constexpr double kDirectExpBound = 300.0;

constexpr double kBelowOne = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;

void check_weights(std::span<const double> w, const char* what) {
  for (double v : w) {
    require(std::isfinite(v) && v >= 0.0, ErrorCode::InvalidEvidence,
            std::string(what) + " weights must be finite and non-negative");
  }
}

void check_evidence(const ClassEvidence& ce) {
  require(ce.pos.size() == ce.neg.size() && !ce.pos.empty(), ErrorCode::Shape,
          "class evidence vectors must be non-empty and of equal length");
  check_weights(ce.pos, "positive");
  check_weights(ce.neg, "negative");
}

// log(1 - exp(-w)) for w > 0.
double log1mexp(double w) {
  return w < std::log(2.0) ? std::log(-std::expm1(-w)) : std::log1p(-std::exp(-w));
}

struct MinusState {
  double one_minus_kappa = 1.0;
  double kappa_minus = 0.0;
  double eta_minus = 1.0;
  bool saturated = false;
};

MinusState minus_state(std::span<const double> neg) {
  MinusState st;
  const bool has_zero = std::any_of(neg.begin(), neg.end(), [](double w) { return w == 0.0; });
  if (has_zero) return st;
  double log_kappa = 0.0;
  for (double w : neg) log_kappa += log1mexp(w);
  st.one_minus_kappa = -std::expm1(log_kappa);
  st.kappa_minus = std::exp(log_kappa);
  if (st.one_minus_kappa < kMinusFloor) {
    st.one_minus_kappa = kMinusFloor;
    st.kappa_minus = 1.0 - kMinusFloor;
    st.saturated = true;
  }
  st.eta_minus = 1.0 / st.one_minus_kappa;
  return st;
}

}  // namespace

PositiveMass mass_plus(const ClassEvidence& ce) {
  check_evidence(ce);
  const auto& pos = ce.pos;
  const double top = *std::max_element(pos.begin(), pos.end());
  PositiveMass pm;
  pm.singleton_masses.resize(pos.size());

  if (top <= kDirectExpBound) {
    double denom = 1.0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      pm.singleton_masses[i] = std::expm1(pos[i]);
      denom += pm.singleton_masses[i];
    }
    pm.eta_plus = 1.0 / denom;
    for (double& m : pm.singleton_masses) m *= pm.eta_plus;
  } else {
    // expm1(w) * exp(-top) = exp(w - top) - exp(-top), all finite.
    const double base = std::exp(-top);
    double denom = base;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      pm.singleton_masses[i] = std::max(0.0, std::exp(pos[i] - top) - base);
      denom += pm.singleton_masses[i];
    }
    pm.eta_plus = base / denom;
    for (double& m : pm.singleton_masses) m /= denom;
  }
  pm.ignorance = pm.eta_plus;
  return pm;
}

NegativeMass mass_minus(const ClassEvidence& ce) {
  check_evidence(ce);
  const MinusState st = minus_state(ce.neg);
  return NegativeMass{ce.neg, st.kappa_minus, st.eta_minus, st.saturated};
}

double mass_minus_eval(const NegativeMass& nm, dst::Subset a) {
  require(nm.neg_weights.size() <= dst::kMaxFrameSize, ErrorCode::UnsupportedScale,
          "subset evaluation of m- is limited to frames of at most 20 classes");
  require(!a.empty(), ErrorCode::InvalidFocal, "m- is evaluated on non-empty subsets only");
  require(a.bits >> nm.neg_weights.size() == 0, ErrorCode::FrameMismatch, "subset lies outside the frame");
  double value = nm.eta_minus;
  for (std::size_t i = 0; i < nm.neg_weights.size(); ++i) {
    const double w = nm.neg_weights[i];
    value *= a.contains(i) ? std::exp(-w) : -std::expm1(-w);
  }
  return value;
}

KappaValue evaluate_kappa(const ClassEvidence& ce) {
  const PositiveMass pm = mass_plus(ce);
  const auto& neg = ce.neg;
  const std::size_t n = neg.size();
  const MinusState st = minus_state(neg);

  // Mass that m- puts on subsets excluding z_i is
  //   eta- * (1 - exp(-w-_i)) * (1 - prod_{l != i} (1 - exp(-w-_l))),
  // with the leave-one-out products taken from prefix and suffix log sums.
  // A zero weight makes its factor vanish; those are counted, not logged.
  std::vector<double> prefix(n + 1, 0.0);
  std::vector<int> prefix_zero(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const bool zero = neg[i] == 0.0;
    prefix[i + 1] = prefix[i] + (zero ? 0.0 : log1mexp(neg[i]));
    prefix_zero[i + 1] = prefix_zero[i] + (zero ? 1 : 0);
  }
  double suffix = 0.0;
  int suffix_zero = 0;

  double k = 0.0;
  for (std::size_t r = n; r-- > 0;) {
    const double w = neg[r];
    if (pm.singleton_masses[r] > 0.0 && w > 0.0) {
      const int zeros_elsewhere = prefix_zero[r] + suffix_zero;
      const double rest = zeros_elsewhere > 0 ? 1.0 : -std::expm1(prefix[r] + suffix);
      k += pm.singleton_masses[r] * (-std::expm1(-w)) * rest * st.eta_minus;
    }
    if (w == 0.0) {
      ++suffix_zero;
    } else {
      suffix += log1mexp(w);
    }
  }

  require(std::isfinite(k), ErrorCode::Numeric, "conflict evaluated to a non-finite value");
  KappaValue out{std::max(0.0, k), ce.saturated || st.saturated};
  if (out.kappa > kBelowOne) {
    out.kappa = kBelowOne;
    out.saturated = true;
  }
  return out;
}

KappaValue evaluate_token(const CenteredParams& cp, const FeatureVector& phi) {
  return evaluate_kappa(evidence::aggregate_evidence(cp, phi));
}

ConflictScore sequence_conflict(std::span<const double> per_token) {
  require(!per_token.empty(), ErrorCode::EmptyResponse, "a response needs at least one token");
  ConflictScore score;
  score.per_token.assign(per_token.begin(), per_token.end());
  score.token_count = per_token.size();
  for (double v : per_token) {
    require(std::isfinite(v) && v >= 0.0 && v < 1.0, ErrorCode::InvalidKappa,
            "per-token conflict " + std::to_string(v) + " outside [0, 1)");
    score.kappa_max = std::max(score.kappa_max, v);
  }
  return score;
}

std::vector<double> plausibility_probs(const ClassEvidence& ce) {
  check_evidence(ce);
  std::vector<double> net(ce.size());
  for (std::size_t i = 0; i < net.size(); ++i) net[i] = ce.pos[i] - ce.neg[i];
  return softmax(net);
}

}  // namespace evc::conflict
