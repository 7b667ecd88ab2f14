#pragma once

// On-disk formats shared with the model exporter.
//
// ECP1 (parameters), little-endian:
//   "ECP1" | u16 version=1 | u32 I | u32 J | f32 B[I*J] row-major | f32 bias[I]
//
// ECT1 (response traces), little-endian:
//   "ECT1" | u16 version=1 | u32 J | u32 record_count | records...
//   record: u64 response_id | u8 label | u8 capability | u8 semantics | u8 0
//           | u32 N | N x (u32 token_id | f32 features[J])
//
// Reals are stored as 32-bit floats and widened to double in memory, so a
// read followed by a write reproduces the input bytes exactly.
//
// Score tables are CSV with the fixed header in kScoresHeader; reals use 9
// significant digits and tags are written as their numeric codes.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evconflict/baseline_scores.hpp"
#include "evconflict/evidence_model.hpp"
#include "evconflict/types.hpp"

namespace evc::io {

using baseline::ScoreRecord;
using evidence::FeatureVector;
using evidence::FfnParams;

inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::string_view kScoresHeader =
    "response_id,kappa_max,pe,ln_pe,ps,lps,length,label,capability,semantics,saturated";

struct Token {
  std::uint32_t token_id = 0;
  FeatureVector features;

  friend bool operator==(const Token&, const Token&) = default;
};

struct ResponseTrace {
  std::uint64_t response_id = 0;
  Label label = Label::Unknown;
  Capability capability = Capability::NotApplicable;
  Semantics semantics = Semantics::NotApplicable;
  std::vector<Token> tokens;

  friend bool operator==(const ResponseTrace&, const ResponseTrace&) = default;
};

struct TraceSet {
  std::uint32_t feature_dim = 0;
  std::vector<ResponseTrace> traces;
};

struct DatasetHandle {
  FfnParams params;
  std::vector<ResponseTrace> traces;
  std::vector<std::string> provenance;
};

std::vector<std::uint8_t> encode_params(const FfnParams& params);
FfnParams decode_params(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_traces(const TraceSet& set);
TraceSet decode_traces(std::span<const std::uint8_t> bytes);

FfnParams read_params(const std::filesystem::path& path);
void write_params(const FfnParams& params, const std::filesystem::path& path);

TraceSet read_traces(const std::filesystem::path& path);
void write_traces(const TraceSet& set, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place, so readers
/// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

enum class ViolationKind { Shape, TokenRange, NonFinite, EmptyResponse, InvalidParams };

struct Violation {
  ViolationKind kind;
  std::size_t record = 0;  // index into the trace list; 0 for parameter issues
  std::string message;
};

/// Collects every inconsistency between parameters and traces. Never throws.
std::vector<Violation> validate(const FfnParams& params, const TraceSet& set);

// --- score tables -----------------------------------------------------------

/// Which metric columns a table carries; absent columns are left empty.
using MetricMask = std::array<bool, kMetricCount>;

inline constexpr MetricMask kAllMetrics{true, true, true, true, true, true};

std::string format_scores_csv(std::span<const ScoreRecord> records, const MetricMask& metrics = kAllMetrics);

struct ScoreTable {
  std::vector<ScoreRecord> records;
  MetricMask present{};
};

ScoreTable parse_scores_csv(std::string_view text);
ScoreTable read_scores_csv(const std::filesystem::path& path);

// --- synthetic data -------------------------------------------------------------

struct SynthConfig {
  std::size_t vocab_size = 32;
  std::size_t feature_dim = 64;
  std::size_t n_responses = 200;
  std::size_t max_tokens = 12;
  double hallucination_rate = 0.25;
  double separation = 1.0;
  std::uint64_t seed = 7;

  void validate() const;
};

/// Deterministic synthetic dataset.
///
/// Correct responses carry features aligned with the centered weight row of
/// one class, so the evidence for that class is one-signed. Hallucinated
/// responses contain one token whose features flip the sign of that direction
/// on a random subset of coordinates (each with probability separation / 2),
/// producing mixed-sign evidence for the same class. At separation 0 the two
/// populations are drawn from the same distribution.
DatasetHandle synth_dataset(const SynthConfig& config);

}  // namespace evc::io
