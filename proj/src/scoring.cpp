#include "evconflict/scoring.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "evconflict/error.hpp"

namespace evc {

namespace {

ErrorCode violation_code(io::ViolationKind kind) {
  switch (kind) {
    case io::ViolationKind::Shape: return ErrorCode::Shape;
    case io::ViolationKind::TokenRange: return ErrorCode::IdOutOfRange;
    case io::ViolationKind::NonFinite: return ErrorCode::NonFinite;
    case io::ViolationKind::EmptyResponse: return ErrorCode::EmptyResponse;
    case io::ViolationKind::InvalidParams: return ErrorCode::InvalidParams;
  }
  return ErrorCode::Internal;
}

}  // namespace

baseline::ScoreRecord score_response(const evidence::FfnParams& params, const evidence::CenteredParams& cp,
                                     const io::ResponseTrace& trace) {
  require(!trace.tokens.empty(), ErrorCode::EmptyResponse,
          "response " + std::to_string(trace.response_id) + " has no tokens");

  std::vector<evidence::FeatureVector> features;
  std::vector<std::uint32_t> ids;
  std::vector<double> per_token;
  features.reserve(trace.tokens.size());
  ids.reserve(trace.tokens.size());
  per_token.reserve(trace.tokens.size());

  bool saturated = false;
  for (const auto& tok : trace.tokens) {
    const auto k = conflict::evaluate_token(cp, tok.features);
    per_token.push_back(k.kappa);
    saturated = saturated || k.saturated;
    features.push_back(tok.features);
    ids.push_back(tok.token_id);
  }
  const auto conflict = conflict::sequence_conflict(per_token);
  const auto series = baseline::token_distributions(params, features, ids);
  const auto lps = baseline::log_prob_sum(series);

  baseline::ScoreRecord rec;
  rec.response_id = trace.response_id;
  rec.kappa_max = conflict.kappa_max;
  rec.pe = baseline::predictive_entropy(series);
  rec.length = baseline::response_length(series);
  rec.ln_pe = baseline::ln_pe(rec.pe, rec.length);
  rec.ps = baseline::prob_sum(series);
  rec.lps = lps.value;
  rec.label = trace.label;
  rec.capability = trace.capability;
  rec.semantics = trace.semantics;
  rec.saturated = saturated || lps.floored;
  return rec;
}

std::vector<baseline::ScoreRecord> score_dataset(const evidence::FfnParams& params, const io::TraceSet& set,
                                                 std::size_t threads) {
  const auto violations = io::validate(params, set);
  if (!violations.empty()) {
    fail(violation_code(violations.front().kind), violations.front().message + " (" + std::to_string(violations.size()) + " violation(s))");
  }
  const auto cp = evidence::center_params(params);
  std::vector<baseline::ScoreRecord> out(set.traces.size());

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, set.traces.size()));
  if (workers == 1) {
    for (std::size_t r = 0; r < set.traces.size(); ++r) out[r] = score_response(params, cp, set.traces[r]);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t r = w; r < set.traces.size(); r += workers) {
            out[r] = score_response(params, cp, set.traces[r]);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.response_id < b.response_id; });
  return out;
}

}  // namespace evc
