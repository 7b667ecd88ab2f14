#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "evconflict/conflict_engine.hpp"
#include "evconflict/numerics.hpp"
#include "support.hpp"

using namespace evc::conflict;
using evc::ErrorCode;
using evc::dst::Subset;
using evc::evidence::ClassEvidence;
using testing::code_of;

namespace {

const double kLn2 = std::log(2.0);

ClassEvidence ev(std::vector<double> pos, std::vector<double> neg) { return ClassEvidence{std::move(pos), std::move(neg)}; }

ClassEvidence random_evidence(evc::Rng& rng, std::size_t n, double max_weight) {
  ClassEvidence ce;
  for (std::size_t i = 0; i < n; ++i) {
    // Exact zeros are common in practice (a class with no support at all).
    ce.pos.push_back(rng.bernoulli(0.2) ? 0.0 : rng.uniform(0.0, max_weight));
    ce.neg.push_back(rng.bernoulli(0.2) ? 0.0 : rng.uniform(0.0, max_weight));
  }
  return ce;
}

}  // namespace

TEST_CASE("mass_plus") {
  SUBCASE("one supported class") {
    const auto pm = mass_plus(ev({kLn2, 0}, {0, 0}));
    CHECK(pm.singleton_masses[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pm.singleton_masses[1] == 0.0);
    CHECK(pm.ignorance == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("two equally supported classes") {
    const auto pm = mass_plus(ev({kLn2, kLn2, 0}, {0, 0, 0}));
    CHECK(pm.singleton_masses[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(pm.singleton_masses[1] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(pm.singleton_masses[2] == 0.0);
    CHECK(pm.ignorance == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }
  SUBCASE("no evidence is vacuous") {
    const auto pm = mass_plus(ev({0, 0, 0}, {1, 2, 3}));
    CHECK(pm.ignorance == 1.0);
    for (double m : pm.singleton_masses) CHECK(m == 0.0);
  }
  SUBCASE("large weights take the shifted branch without overflow") {
    const auto pm = mass_plus(ev({310, 309, 0}, {0, 0, 0}));
    const double r = std::exp(-1.0);
    CHECK(pm.singleton_masses[0] == doctest::Approx(1.0 / (1.0 + r)).epsilon(1e-12));
    CHECK(pm.singleton_masses[1] == doctest::Approx(r / (1.0 + r)).epsilon(1e-12));
    CHECK(pm.singleton_masses[2] == 0.0);
    CHECK(pm.ignorance >= 0.0);
    CHECK(pm.ignorance < 1e-130);
  }
  SUBCASE("both branches agree at the switch point") {
    const auto below = mass_plus(ev({299.999, 299.0}, {0, 0}));
    const auto above = mass_plus(ev({300.001, 299.002}, {0, 0}));
    CHECK(below.singleton_masses[0] == doctest::Approx(above.singleton_masses[0]).epsilon(1e-12));
    CHECK(below.singleton_masses[1] == doctest::Approx(above.singleton_masses[1]).epsilon(1e-12));
  }
  SUBCASE("invalid evidence") {
    CHECK(code_of([] { mass_plus(ev({1}, {1, 2})); }) == ErrorCode::Shape);
    CHECK(code_of([] { mass_plus(ev({}, {})); }) == ErrorCode::Shape);
    CHECK(code_of([] { mass_plus(ev({-1, 0}, {0, 0})); }) == ErrorCode::InvalidEvidence);
    CHECK(code_of([] { mass_minus(ev({0, 0}, {NAN, 0})); }) == ErrorCode::InvalidEvidence);
    CHECK(code_of([] { evaluate_kappa(ev({INFINITY, 0}, {0, 0})); }) == ErrorCode::InvalidEvidence);
  }
}

TEST_CASE("mass_minus") {
  SUBCASE("two opposed classes of a binary frame") {
    const auto nm = mass_minus(ev({0, 0}, {kLn2, kLn2}));
    CHECK(nm.kappa_minus == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(nm.eta_minus == doctest::Approx(4.0 / 3).epsilon(1e-15));
    CHECK(mass_minus_eval(nm, Subset{0b01}) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(mass_minus_eval(nm, Subset{0b10}) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(mass_minus_eval(nm, Subset{0b11}) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }
  SUBCASE("no evidence is vacuous") {
    const auto nm = mass_minus(ev({0, 0, 0}, {0, 0, 0}));
    CHECK(nm.kappa_minus == 0.0);
    CHECK(mass_minus_eval(nm, Subset{0b111}) == 1.0);
    CHECK(mass_minus_eval(nm, Subset{0b001}) == 0.0);
  }
  SUBCASE("a single unopposed class leaves no internal conflict") {
    const auto nm = mass_minus(ev({0, 0, 0, 0}, {5, 0, 30, 2}));
    CHECK(nm.kappa_minus == 0.0);
    CHECK(nm.eta_minus == 1.0);
  }
  SUBCASE("evaluation errors") {
    const auto nm = mass_minus(ev({0, 0}, {1, 1}));
    CHECK(code_of([&] { mass_minus_eval(nm, Subset{}); }) == ErrorCode::InvalidFocal);
    CHECK(code_of([&] { mass_minus_eval(nm, Subset{0b100}); }) == ErrorCode::FrameMismatch);
    const auto wide = mass_minus(ev(std::vector<double>(21, 0.0), std::vector<double>(21, 0.1)));
    CHECK(code_of([&] { mass_minus_eval(wide, Subset{1}); }) == ErrorCode::UnsupportedScale);
  }
  SUBCASE("strong opposition to every class saturates") {
    const auto nm = mass_minus(ev(std::vector<double>(3, 0.0), std::vector<double>(3, 50.0)));
    CHECK(nm.saturated);
    CHECK(nm.eta_minus == doctest::Approx(1e15));
  }
}

TEST_CASE("kappa fixtures") {
  // m+ = {z1}:1/2, V:1/2 against m- = {z2}:1/2, V:1/2.
  CHECK(kappa(ev({kLn2, 0}, {kLn2, 0})) == doctest::Approx(0.25).epsilon(1e-15));
  // Evidence against z2 supports z1: no conflict.
  CHECK(kappa(ev({kLn2, 0}, {0, kLn2})) == 0.0);
  CHECK(kappa(ev({0, 0, 0}, {1, 2, 3})) == 0.0);
  CHECK(kappa(ev({1, 2, 3}, {0, 0, 0})) == 0.0);
  // One class contradicted but nothing else ruled in: m- keeps all mass on the
  // complement of z1, so conflict is m+({z1}) times m-(not z1) = 1/2 * 1/2.
  CHECK(kappa(ev({kLn2, 0, 0}, {kLn2, 0, 0})) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("token_conflict on the two-class example") {
  // Centered weights [[1,-1],[-1,1]] and phi = (1,1) give w+ = w- = (1,1).
  evc::evidence::FfnParams p;
  p.weights = evc::Matrix(2, 2, {2, 0, 0, 2});
  p.bias = {0, 0};
  const auto cp = evc::evidence::center_params(p);
  const evc::evidence::FeatureVector phi{{1.0, 1.0}};
  const auto ce = evc::evidence::aggregate_evidence(cp, phi);
  CHECK(ce.pos == std::vector<double>{1, 1});
  CHECK(ce.neg == std::vector<double>{1, 1});

  const auto ref = testing::reference_from_pool(evc::evidence::build_evidence_pool(cp, phi));
  const double e = std::numbers::e;
  const double m_single = (e - 1) / (2 * e - 1);
  const double q = 1 - 1 / e;
  const double by_hand = 2 * m_single * q * (1 / e) / (1 - q * q);

  const double k = token_conflict(cp, phi);
  CHECK(std::abs(k - ref.kappa) <= 1e-14);
  CHECK(std::abs(k - by_hand) <= 1e-14);
}

TEST_CASE("sequence_conflict") {
  const std::vector<double> per_token{0.1, 0.7, 0.3};
  const auto s = sequence_conflict(per_token);
  CHECK(s.kappa_max == 0.7);
  CHECK(s.token_count == 3);
  CHECK(s.per_token == per_token);

  CHECK(code_of([] { sequence_conflict(std::vector<double>{}); }) == ErrorCode::EmptyResponse);
  CHECK(code_of([] { sequence_conflict(std::vector<double>{0.2, 1.0}); }) == ErrorCode::InvalidKappa);
  CHECK(code_of([] { sequence_conflict(std::vector<double>{-0.1}); }) == ErrorCode::InvalidKappa);
  CHECK(code_of([] { sequence_conflict(std::vector<double>{NAN}); }) == ErrorCode::InvalidKappa);
}

TEST_CASE("property: closed forms match power-set combination") {
  evc::Rng rng(31);
  double worst = 0.0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = rng.between(2, 6);
    const auto ce = random_evidence(rng, n, 3.0);
    const auto ref = testing::reference_from_evidence(ce);
    const Subset full{static_cast<std::uint32_t>((1u << n) - 1)};

    const double k = kappa(ce);
    worst = std::max(worst, std::abs(k - ref.kappa));
    CHECK(k >= 0.0);
    CHECK(k < 1.0);

    const auto pm = mass_plus(ce);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(pm.singleton_masses[i] - ref.plus.mass(Subset::singleton(i))) <= 1e-12);
    }
    CHECK(std::abs(pm.ignorance - ref.plus.mass(full)) <= 1e-12);
    const double plus_total = std::accumulate(pm.singleton_masses.begin(), pm.singleton_masses.end(), pm.ignorance);
    CHECK(std::abs(plus_total - 1.0) <= 1e-12);

    const auto nm = mass_minus(ce);
    double minus_total = 0.0;
    for (std::uint32_t a = 1; a <= full.bits; ++a) {
      const double m = mass_minus_eval(nm, Subset{a});
      CHECK(std::abs(m - ref.minus.mass(Subset{a})) <= 1e-12);
      minus_total += m;
    }
    CHECK(std::abs(minus_total - 1.0) <= 1e-12);

    if (ref.kappa < 1.0 - 1e-9) {
      const auto combined = evc::dst::dempster_combine(ref.plus, ref.minus).mass;
      const auto want = evc::dst::plausibility_transform(combined);
      CHECK(testing::max_abs_diff(plausibility_probs(ce), want) <= 1e-12);
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("property: per-feature pools agree with aggregated evidence") {
  evc::Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n_class = rng.between(2, 5);
    const std::size_t n_feat = rng.between(1, 4);
    const auto p = testing::random_params(rng, n_class, n_feat);
    const auto phi = testing::random_features(rng, n_feat);
    const auto cp = evc::evidence::center_params(p);
    const auto ref = testing::reference_from_pool(evc::evidence::build_evidence_pool(cp, phi));
    CHECK(std::abs(token_conflict(cp, phi) - ref.kappa) <= 1e-12);
  }
}

TEST_CASE("property: plausibility probabilities are the softmax of the logits") {
  evc::Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n_class = rng.between(2, 64);
    const std::size_t n_feat = rng.between(1, 64);
    const auto p = testing::random_params(rng, n_class, n_feat);
    const auto phi = testing::random_features(rng, n_feat);
    const auto ce = evc::evidence::aggregate_evidence(evc::evidence::center_params(p), phi);
    const auto want = evc::softmax(evc::affine(p.weights, p.bias, phi.values));
    CHECK(testing::max_abs_diff(plausibility_probs(ce), want) <= 1e-12);
  }
}

TEST_CASE("property: conflict is invariant to class order") {
  evc::Rng rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.between(2, 30);
    const auto ce = random_evidence(rng, n, 4.0);
    auto shuffled = ce;
    for (std::size_t k = n - 1; k > 0; --k) {
      const std::size_t j = rng.index(k + 1);
      std::swap(shuffled.pos[k], shuffled.pos[j]);
      std::swap(shuffled.neg[k], shuffled.neg[j]);
    }
    CHECK(kappa(shuffled) == doctest::Approx(kappa(ce)).epsilon(1e-12));
  }
}

TEST_CASE("property: conflict vanishes continuously as evidence shrinks") {
  evc::Rng rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const auto base = random_evidence(rng, rng.between(2, 10), 2.0);
    for (double scale : {1e-2, 1e-4, 1e-8}) {
      auto ce = base;
      for (double& w : ce.pos) w *= scale;
      for (double& w : ce.neg) w *= scale;
      const double k = kappa(ce);
      // Each factor of m+ and of m- contributes at most a linear term.
      CHECK(k <= 1e3 * scale * scale);
    }
  }
}

TEST_CASE("extreme evidence stays finite") {
  evc::Rng rng(36);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.between(2, 200);
    ClassEvidence ce;
    for (std::size_t i = 0; i < n; ++i) {
      ce.pos.push_back(rng.uniform(0.0, evc::evidence::kWeightClamp));
      ce.neg.push_back(rng.uniform(0.0, evc::evidence::kWeightClamp));
    }
    const auto kv = evaluate_kappa(ce);
    CHECK(std::isfinite(kv.kappa));
    CHECK(kv.kappa >= 0.0);
    CHECK(kv.kappa < 1.0);
    const auto p = plausibility_probs(ce);
    CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-12);
  }
  // Near-certain support for z1 against near-certain evidence against it.
  const auto kv = evaluate_kappa(ev({690, 0}, {690, 0}));
  CHECK(kv.kappa > 0.999);
  CHECK(kv.kappa < 1.0);
}
