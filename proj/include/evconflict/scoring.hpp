#pragma once

// Response-level scoring: conflict (kappa_max) plus the probability baselines
// for every trace of a dataset.

#include <cstddef>
#include <vector>

#include "evconflict/baseline_scores.hpp"
#include "evconflict/conflict_engine.hpp"
#include "evconflict/trace_io.hpp"

namespace evc {

baseline::ScoreRecord score_response(const evidence::FfnParams& params, const evidence::CenteredParams& cp,
                                     const io::ResponseTrace& trace);

/// Scores every trace, in parallel when `threads` > 1. Records come back
/// ordered by response_id (ties keep input order). Throws on the first
/// validation violation.
std::vector<baseline::ScoreRecord> score_dataset(const evidence::FfnParams& params, const io::TraceSet& set,
                                                 std::size_t threads = 1);

}  // namespace evc
