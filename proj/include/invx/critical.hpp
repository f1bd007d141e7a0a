#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "invx/group.hpp"

namespace invx {

/// Verdict of the bounded search for a radical (resp. bounded) witness
/// contained in a maximal point.
struct CritVerdict {
  enum class Kind { non_critical, critical_within_budget, unknown };
  Kind kind = Kind::unknown;
  std::optional<MemberCertificate> certificate;
  SearchBudget budget;
};

/// Searches the group for a radical element g with g(M) = 1. A cc_full base
/// short-circuits with chi of a clopen neighborhood; an isolated M with a
/// cc_isolated base short-circuits with chi at M.
CritVerdict detect_critical(const PresentedGroup& g, const Point& m,
                            const SearchBudget& budget,
                            ScanPolicy policy = ScanPolicy::automatic);

/// Same search for a bounded witness g >= 0 with g(M) >= 1.
CritVerdict detect_bounded_critical(const PresentedGroup& g, const Point& m,
                                    const SearchBudget& budget,
                                    ScanPolicy policy = ScanPolicy::automatic);

/// One representative per uniform orbit of points: every limit point class
/// and one isolated representative per tail region, plus every exceptional
/// index mentioned by a generator.
std::vector<Point> orbit_representatives(const PresentedGroup& g);

struct CritLocus {
  PointSet locus;
  bool unknown = false;  // some verdict exhausted its budget
  std::vector<std::pair<Point, CritVerdict>> verdicts;
};

/// Evaluates detect_critical on orbit representatives and assembles the set
/// of critical points; asserts that the result is closed.
CritLocus crit_locus(const PresentedGroup& g, const SearchBudget& budget,
                     ScanPolicy policy = ScanPolicy::automatic);

/// Identification of a closed subset with a fresh backend space.
struct Restriction {
  MaxSpace sub_space;
  /// sub-space point -> parent-space point
  std::function<Point(const Point&)> embed;
  /// parent-space point in the subset -> sub-space point
  std::function<Point(const Point&)> project;
  /// restriction of a parent-space function to the subset
  std::function<IdealFunction(const IdealFunction&)> restrict_fn;
};

/// Builds the identification for the closed-set shapes the critical sequence
/// produces: finite sets, rank-1 tail sets, and block-limit germ patterns.
Restriction make_restriction(const MaxSpace& parent, const PointSet& closed_set);

PresentedGroup restrict_group(const PresentedGroup& g, const Restriction& r);

struct CritStage {
  PointSet set;          // the stage set, in the coordinates of `group.space`
  PresentedGroup group;  // the restricted model living on that set
};

struct CritSequenceResult {
  enum class Status { completed, fixpoint_violation, unknown };
  Status status = Status::unknown;
  /// X_0 = the whole space, then each critical locus, ending with the empty
  /// set when the sequence terminates. `chain[k].set` uses the coordinates of
  /// stage k-1's space (stage 0 is the whole starting space).
  std::vector<CritStage> chain;
  std::vector<Restriction> restrictions;  // chain[k+1] = restriction of k
  std::optional<int> sp_rank;
};

CritSequenceResult crit_sequence(const PresentedGroup& g,
                                 const SearchBudget& budget,
                                 ScanPolicy policy = ScanPolicy::automatic);

/// Largest stage index alpha with M in X_alpha, or nullopt when the sequence
/// did not terminate cleanly.
std::optional<int> sp_height(const PresentedGroup& g, const Point& m,
                             const SearchBudget& budget,
                             ScanPolicy policy = ScanPolicy::automatic);

struct LayerComponent {
  int layer = 0;
  IdealFunction component;
};

/// Splits a certified member f into per-layer components c_0..c_{rank-1} with
/// sum f; c_beta vanishes after restriction to X_{beta+1}. Requires declared
/// section lifts (defaulting to the generators).
std::vector<LayerComponent> decompose_inv(const PresentedGroup& g,
                                          const IdealFunction& f,
                                          const SearchBudget& budget,
                                          ScanPolicy policy = ScanPolicy::automatic);

struct DensitySample {
  PointSet sample;
  bool meets_noncritical = false;
  std::optional<Point> witness;
};

struct DensityReport {
  bool pass = true;
  std::vector<DensitySample> samples;
};

/// Checks that every sample clopen set meets the complement of the critical
/// locus.
DensityReport density_check(const PresentedGroup& g, const SearchBudget& budget,
                            const std::vector<PointSet>& samples,
                            ScanPolicy policy = ScanPolicy::automatic);

}  // namespace invx
