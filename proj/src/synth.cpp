#include <cmath>
#include <string>

#include "evconflict/error.hpp"
#include "evconflict/numerics.hpp"
#include "evconflict/random.hpp"
#include "evconflict/trace_io.hpp"

namespace evc::io {

namespace {

constexpr double kBiasScale = 0.1;
constexpr double kAmplitudeLo = 1.5;
constexpr double kAmplitudeHi = 2.5;
constexpr double kNoiseScale = 0.05;

std::uint32_t argmax(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return static_cast<std::uint32_t>(best);
}

}  // namespace

void SynthConfig::validate() const {
  require(vocab_size >= 2 && vocab_size <= (std::size_t{1} << 24), ErrorCode::InvalidConfig,
          "vocabulary size must be in [2, 2^24]");
  require(feature_dim >= 1 && feature_dim <= (std::size_t{1} << 16), ErrorCode::InvalidConfig,
          "feature dimension must be in [1, 65536]");
  require(n_responses >= 1, ErrorCode::InvalidConfig, "need at least one response");
  require(max_tokens >= 1, ErrorCode::InvalidConfig, "max tokens must be at least 1");
  require(hallucination_rate >= 0.0 && hallucination_rate <= 1.0, ErrorCode::InvalidConfig,
          "hallucination rate must be in [0, 1]");
  require(separation >= 0.0 && separation <= 1.0, ErrorCode::InvalidConfig, "separation must be in [0, 1]");
}

DatasetHandle synth_dataset(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const std::size_t n_class = config.vocab_size;
  const std::size_t n_feat = config.feature_dim;

  DatasetHandle ds;
  ds.params.weights = Matrix(n_class, n_feat);
  for (double& v : ds.params.weights.data()) v = rng.normal();
  ds.params.bias.resize(n_class);
  for (double& v : ds.params.bias) v = kBiasScale * rng.normal();

  // The file stores float32; derive everything from the narrowed values so
  // the features match the parameters a reader will see.
  for (double& v : ds.params.weights.data()) v = static_cast<float>(v);
  for (double& v : ds.params.bias) v = static_cast<float>(v);

  // Unit-norm class directions from the class-centered weight rows.
  const auto cp = evidence::center_params(ds.params);
  Matrix directions(n_class, n_feat);
  for (std::size_t k = 0; k < n_class; ++k) {
    auto src = cp.weights_centered.row(k);
    double norm = 0.0;
    for (double v : src) norm += v * v;
    norm = std::sqrt(norm);
    auto dst = directions.row(k);
    for (std::size_t j = 0; j < n_feat; ++j) dst[j] = norm > 0.0 ? src[j] / norm : 0.0;
  }

  const double noise = kNoiseScale / std::sqrt(static_cast<double>(n_feat));
  const double flip_prob = 0.5 * config.separation;

  auto make_token = [&](bool mixed) {
    const std::size_t k = rng.index(n_class);
    const double amplitude = rng.uniform(kAmplitudeLo, kAmplitudeHi);
    auto dir = directions.row(k);
    Token tok;
    tok.features.values.resize(n_feat);
    for (std::size_t j = 0; j < n_feat; ++j) {
      double sign = 1.0;
      if (mixed && rng.bernoulli(flip_prob)) sign = -1.0;
      const double v = sign * amplitude * dir[j] + noise * rng.normal();
      tok.features.values[j] = static_cast<float>(v);
    }
    tok.token_id = argmax(affine(ds.params.weights, ds.params.bias, tok.features.values));
    return tok;
  };

  ds.traces.reserve(config.n_responses);
  for (std::size_t r = 0; r < config.n_responses; ++r) {
    ResponseTrace t;
    t.response_id = r + 1;
    const bool hallucinated = rng.bernoulli(config.hallucination_rate);
    t.label = hallucinated ? Label::Hallucination : Label::Correct;
    t.capability = static_cast<Capability>(rng.index(2));
    t.semantics = static_cast<Semantics>(rng.index(3));
    const std::size_t n_tokens = 1 + rng.index(config.max_tokens);
    const std::size_t mixed_at = rng.index(n_tokens);
    for (std::size_t n = 0; n < n_tokens; ++n) t.tokens.push_back(make_token(hallucinated && n == mixed_at));
    ds.traces.push_back(std::move(t));
  }

  ds.provenance = {
      "synthetic",
      "seed=" + std::to_string(config.seed),
      "vocab=" + std::to_string(n_class) + " features=" + std::to_string(n_feat),
      "responses=" + std::to_string(config.n_responses) + " max_tokens=" + std::to_string(config.max_tokens),
      "hallucination_rate=" + std::to_string(config.hallucination_rate) +
          " separation=" + std::to_string(config.separation),
  };
  return ds;
}

}  // namespace evc::io
