#include "evconflict/dst_core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "evconflict/error.hpp"

namespace evc::dst {

namespace {

constexpr double kNegativeDust = -1e-15;
constexpr double kInputSumTolerance = 1e-9;

void require_same_frame(const Frame& a, const Frame& b) {
  require(a == b, ErrorCode::FrameMismatch, "mass functions are defined on different frames");
}

// Conjunctive (unnormalized) combination accumulated over the full power set.
// Slot 0 holds the conflict.
std::vector<double> conjunctive_table(const MassFunction& m1, const MassFunction& m2) {
  std::vector<double> table(std::size_t{1} << m1.frame().size(), 0.0);
  for (const auto& b : m1.focal_elements()) {
    for (const auto& c : m2.focal_elements()) {
      table[(b.set & c.set).bits] += b.mass * c.mass;
    }
  }
  return table;
}

}  // namespace

Frame::Frame(std::vector<std::string> labels) {
  require(!labels.empty() && labels.size() <= kMaxFrameSize, ErrorCode::InvalidFrame,
          "frame size must be in [1, 20], got " + std::to_string(labels.size()));
  std::set<std::string> distinct(labels.begin(), labels.end());
  require(distinct.size() == labels.size(), ErrorCode::InvalidFrame, "frame labels must be distinct");
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

Frame Frame::of_size(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("z" + std::to_string(i + 1));
  return Frame(std::move(labels));
}

bool operator==(const Frame& a, const Frame& b) {
  return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
}

MassFunction MassFunction::from_masses(Frame frame, std::vector<FocalElement> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const FocalElement& a, const FocalElement& b) { return a.set.bits < b.set.bits; });

  std::vector<FocalElement> merged;
  double sum = 0.0;
  for (const auto& e : entries) {
    require(std::isfinite(e.mass), ErrorCode::InvalidMass, "mass is not finite");
    require(e.mass >= kNegativeDust, ErrorCode::InvalidMass, "negative mass " + std::to_string(e.mass));
    if (e.mass <= 0.0) continue;
    require(!e.set.empty(), ErrorCode::InvalidMass, "the empty set cannot carry mass");
    require(frame.contains(e.set), ErrorCode::InvalidMass, "subset lies outside the frame");
    if (!merged.empty() && merged.back().set == e.set) {
      merged.back().mass += e.mass;
    } else {
      merged.push_back(e);
    }
    sum += e.mass;
  }
  require(std::abs(sum - 1.0) <= kInputSumTolerance, ErrorCode::InvalidMass,
          "masses sum to " + std::to_string(sum) + ", expected 1");
  for (auto& e : merged) e.mass /= sum;
  return MassFunction(std::move(frame), std::move(merged));
}

MassFunction MassFunction::vacuous(Frame frame) {
  Subset all = frame.full();
  return MassFunction(std::move(frame), {FocalElement{all, 1.0}});
}

MassFunction MassFunction::certain(Frame frame, Subset focal) {
  require(!focal.empty() && frame.contains(focal), ErrorCode::InvalidFocal, "invalid focal set");
  return MassFunction(std::move(frame), {FocalElement{focal, 1.0}});
}

double MassFunction::mass(Subset a) const {
  auto it = std::lower_bound(focal_.begin(), focal_.end(), a.bits,
                             [](const FocalElement& e, std::uint32_t bits) { return e.set.bits < bits; });
  return (it != focal_.end() && it->set == a) ? it->mass : 0.0;
}

double MassFunction::total() const {
  double s = 0.0;
  for (const auto& e : focal_) s += e.mass;
  return s;
}

MassFunction make_simple(const Frame& frame, Subset focal, double weight) {
  require(!focal.empty() && frame.contains(focal), ErrorCode::InvalidFocal,
          "focal set must be a non-empty subset of the frame");
  require(std::isfinite(weight) && weight >= 0.0, ErrorCode::InvalidWeight,
          "weight of evidence must be finite and non-negative");
  const double support = -std::expm1(-weight);
  const double ignorance = std::exp(-weight);
  if (focal == frame.full()) return MassFunction::vacuous(frame);
  return MassFunction::from_masses(frame, {{focal, support}, {frame.full(), ignorance}});
}

Combination dempster_combine(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1.frame(), m2.frame());
  std::vector<double> table = conjunctive_table(m1, m2);
  const double kappa = table[0];
  require(kappa <= kTotalConflictBound, ErrorCode::TotalConflict,
          "total conflict between mass functions (kappa = " + std::to_string(kappa) + ")");

  // Normalize by the non-conflicting total rather than 1 - kappa; it keeps
  // relative accuracy when kappa is close to one.
  double normalizer = 0.0;
  for (std::size_t a = 1; a < table.size(); ++a) normalizer += table[a];
  require(normalizer > 0.0, ErrorCode::TotalConflict, "combination has no non-conflicting mass");

  std::vector<FocalElement> focal;
  for (std::size_t a = 1; a < table.size(); ++a) {
    if (table[a] > 0.0) focal.push_back({Subset{static_cast<std::uint32_t>(a)}, table[a] / normalizer});
  }
  return Combination{MassFunction::from_masses(m1.frame(), std::move(focal)), kappa};
}

MassFunction combine_all(std::span<const MassFunction> masses) {
  require(!masses.empty(), ErrorCode::EmptyInput, "combine_all needs at least one mass function");
  MassFunction acc = masses.front();
  for (std::size_t k = 1; k < masses.size(); ++k) acc = dempster_combine(acc, masses[k]).mass;
  return acc;
}

double conflict_between(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1.frame(), m2.frame());
  double kappa = 0.0;
  for (const auto& b : m1.focal_elements()) {
    for (const auto& c : m2.focal_elements()) {
      if (!b.set.intersects(c.set)) kappa += b.mass * c.mass;
    }
  }
  return kappa;
}

double belief(const MassFunction& m, Subset a) {
  require(m.frame().contains(a), ErrorCode::FrameMismatch, "subset lies outside the frame");
  double bel = 0.0;
  for (const auto& e : m.focal_elements()) {
    if (e.set.subset_of(a)) bel += e.mass;
  }
  return std::min(bel, 1.0);
}

double plausibility(const MassFunction& m, Subset a) {
  require(m.frame().contains(a), ErrorCode::FrameMismatch, "subset lies outside the frame");
  double pl = 0.0;
  for (const auto& e : m.focal_elements()) {
    if (e.set.intersects(a)) pl += e.mass;
  }
  return std::min(pl, 1.0);
}

ContourValues contour(const MassFunction& m) {
  ContourValues out{m.frame(), std::vector<double>(m.frame().size(), 0.0)};
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = plausibility(m, Subset::singleton(i));
  return out;
}

ContourValues contour_combine(const ContourValues& pl1, const ContourValues& pl2, double kappa) {
  require_same_frame(pl1.frame, pl2.frame);
  require(pl1.values.size() == pl1.frame.size() && pl2.values.size() == pl2.frame.size(), ErrorCode::Shape,
          "contour length does not match its frame");
  require(std::isfinite(kappa) && kappa >= 0.0, ErrorCode::InvalidKappa, "kappa must be finite and >= 0");
  require(kappa < 1.0, ErrorCode::TotalConflict, "contour combination undefined at kappa >= 1");
  ContourValues out{pl1.frame, std::vector<double>(pl1.values.size())};
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = pl1.values[i] * pl2.values[i] / (1.0 - kappa);
  }
  return out;
}

std::vector<double> plausibility_transform(const MassFunction& m) {
  std::vector<double> p = contour(m).values;
  double sum = 0.0;
  for (double v : p) sum += v;
  require(sum > 0.0, ErrorCode::DegenerateMass, "all singleton plausibilities are zero");
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace evc::dst
