#include "evconflict/types.hpp"

namespace evc {

std::optional<Metric> metric_from_name(std::string_view name) {
  if (name == "kappa_max" || name == "kappa") return Metric::KappaMax;
  if (name == "pe") return Metric::Pe;
  if (name == "ln_pe") return Metric::LnPe;
  if (name == "ps") return Metric::Ps;
  if (name == "lps") return Metric::Lps;
  if (name == "length") return Metric::Length;
  return std::nullopt;
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::KappaMax: return "kappa_max";
    case Metric::Pe: return "pe";
    case Metric::LnPe: return "ln_pe";
    case Metric::Ps: return "ps";
    case Metric::Lps: return "lps";
    case Metric::Length: return "length";
  }
  return "unknown";
}

std::optional<Label> label_from_byte(std::uint8_t b) {
  switch (b) {
    case 0: return Label::Correct;
    case 1: return Label::Hallucination;
    case 255: return Label::Unknown;
    default: return std::nullopt;
  }
}

std::optional<Capability> capability_from_byte(std::uint8_t b) {
  switch (b) {
    case 0: return Capability::Perception;
    case 1: return Capability::Reasoning;
    case 255: return Capability::NotApplicable;
    default: return std::nullopt;
  }
}

std::optional<Semantics> semantics_from_byte(std::uint8_t b) {
  switch (b) {
    case 0: return Semantics::Instance;
    case 1: return Semantics::Scene;
    case 2: return Semantics::Relation;
    case 255: return Semantics::NotApplicable;
    default: return std::nullopt;
  }
}

std::string_view to_string(Label v) {
  switch (v) {
    case Label::Correct: return "correct";
    case Label::Hallucination: return "hallucination";
    case Label::Unknown: break;
  }
  return "unknown";
}

std::string_view to_string(Capability v) {
  switch (v) {
    case Capability::Perception: return "perception";
    case Capability::Reasoning: return "reasoning";
    case Capability::NotApplicable: break;
  }
  return "n/a";
}

std::string_view to_string(Semantics v) {
  switch (v) {
    case Semantics::Instance: return "instance";
    case Semantics::Scene: return "scene";
    case Semantics::Relation: return "relation";
    case Semantics::NotApplicable: break;
  }
  return "n/a";
}

}  // namespace evc
