#pragma once

// Exact Dempster-Shafer algebra over explicit power sets of small frames.
//
// Subsets of a frame with I outcomes are I-bit masks (bit i = outcome i).
// Everything here materializes subsets, so frames are capped at 20 outcomes.
// The production scoring path never goes through this header; it exists as
// the reference the closed forms in conflict_engine are checked against.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace evc::dst {

inline constexpr std::size_t kMaxFrameSize = 20;

/// Combinations whose conflict exceeds this are treated as total conflict.
inline constexpr double kTotalConflictBound = 1.0 - 1e-12;

struct Subset {
  std::uint32_t bits = 0;

  static constexpr Subset singleton(std::size_t i) { return Subset{std::uint32_t{1} << i}; }

  constexpr bool empty() const { return bits == 0; }
  constexpr bool contains(std::size_t i) const { return (bits >> i) & 1u; }
  constexpr bool subset_of(Subset other) const { return (bits & ~other.bits) == 0; }
  constexpr bool intersects(Subset other) const { return (bits & other.bits) != 0; }

  friend constexpr Subset operator&(Subset a, Subset b) { return Subset{a.bits & b.bits}; }
  friend constexpr Subset operator|(Subset a, Subset b) { return Subset{a.bits | b.bits}; }
  friend constexpr bool operator==(Subset a, Subset b) = default;
};

/// Ordered set of distinct outcome labels. Copies share the label storage.
class Frame {
 public:
  explicit Frame(std::vector<std::string> labels);

  /// Frame with labels "z1".."zN".
  static Frame of_size(std::size_t n);

  std::size_t size() const { return labels_->size(); }
  const std::string& label(std::size_t i) const { return labels_->at(i); }
  Subset full() const { return Subset{static_cast<std::uint32_t>((std::uint64_t{1} << size()) - 1)}; }
  bool contains(Subset a) const { return a.subset_of(full()); }

  /// Complement of `a` within this frame.
  Subset complement(Subset a) const { return Subset{full().bits & ~a.bits}; }

  friend bool operator==(const Frame& a, const Frame& b);

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

struct FocalElement {
  Subset set;
  double mass = 0.0;
};

/// Normalized basic belief assignment. Focal elements are kept sorted by
/// mask and are exactly the subsets with positive mass.
class MassFunction {
 public:
  /// Validates and normalizes `entries`. Duplicate subsets are summed;
  /// masses in [-1e-15, 0) are treated as round-off and dropped.
  static MassFunction from_masses(Frame frame, std::vector<FocalElement> entries);

  static MassFunction vacuous(Frame frame);
  static MassFunction certain(Frame frame, Subset focal);

  const Frame& frame() const { return frame_; }
  std::span<const FocalElement> focal_elements() const { return focal_; }
  double mass(Subset a) const;
  double total() const;

 private:
  MassFunction(Frame frame, std::vector<FocalElement> focal)
      : frame_(std::move(frame)), focal_(std::move(focal)) {}

  Frame frame_;
  std::vector<FocalElement> focal_;
};

/// A^w: mass 1 - exp(-w) on `focal`, exp(-w) on the whole frame.
MassFunction make_simple(const Frame& frame, Subset focal, double weight);

struct Combination {
  MassFunction mass;
  double kappa = 0.0;
};

/// Dempster's rule. Throws TotalConflict when kappa > kTotalConflictBound.
Combination dempster_combine(const MassFunction& m1, const MassFunction& m2);

/// Left fold of dempster_combine.
MassFunction combine_all(std::span<const MassFunction> masses);

/// Mass the conjunctive combination of m1 and m2 assigns to the empty set.
double conflict_between(const MassFunction& m1, const MassFunction& m2);

double belief(const MassFunction& m, Subset a);
double plausibility(const MassFunction& m, Subset a);

struct ContourValues {
  Frame frame;
  std::vector<double> values;
};

ContourValues contour(const MassFunction& m);

/// Contour of the combination from the operands' contours and their conflict.
ContourValues contour_combine(const ContourValues& pl1, const ContourValues& pl2, double kappa);

/// Singleton plausibilities normalized to a probability vector.
std::vector<double> plausibility_transform(const MassFunction& m);

}  // namespace evc::dst
