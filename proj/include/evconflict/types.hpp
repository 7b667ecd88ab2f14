#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace evc {

enum class Label : std::uint8_t { Correct = 0, Hallucination = 1, Unknown = 255 };
enum class Capability : std::uint8_t { Perception = 0, Reasoning = 1, NotApplicable = 255 };
enum class Semantics : std::uint8_t { Instance = 0, Scene = 1, Relation = 2, NotApplicable = 255 };

/// Score columns of a score table, in column order.
enum class Metric : std::uint8_t { KappaMax = 0, Pe, LnPe, Ps, Lps, Length };
inline constexpr std::size_t kMetricCount = 6;

/// Accepts the column names plus "kappa" as an alias of "kappa_max".
std::optional<Metric> metric_from_name(std::string_view name);
std::string_view to_string(Metric m);

std::optional<Label> label_from_byte(std::uint8_t b);
std::optional<Capability> capability_from_byte(std::uint8_t b);
std::optional<Semantics> semantics_from_byte(std::uint8_t b);

std::string_view to_string(Label v);
std::string_view to_string(Capability v);
std::string_view to_string(Semantics v);

}  // namespace evc
