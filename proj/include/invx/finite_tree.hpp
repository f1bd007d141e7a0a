#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "invx/errors.hpp"

namespace invx {

using PrimeId = std::string;
using PrimeSet = std::set<PrimeId>;

/// Spec(D) of a Prüfer domain with finite spectrum: a rooted tree ordered by
/// inclusion. The root models the zero ideal; the leaves are the maximal
/// ideals. Immutable after construction.
class FiniteTreeSpectrum {
 public:
  /// Builds and validates the tree. `parent` must be defined exactly on the
  /// non-root nodes and every node must reach the root.
  FiniteTreeSpectrum(std::vector<PrimeId> nodes,
                     std::map<PrimeId, PrimeId> parent);

  static FiniteTreeSpectrum single_point(PrimeId root_label = "r");

  const std::vector<PrimeId>& nodes() const { return nodes_; }
  const PrimeId& root() const { return root_; }
  bool has(const PrimeId& p) const { return index_.count(p) > 0; }
  std::optional<PrimeId> parent(const PrimeId& p) const;
  const std::vector<PrimeId>& children(const PrimeId& p) const;
  int height(const PrimeId& p) const;
  /// Krull dimension: the largest height of a node.
  int dim() const { return dim_; }
  bool is_maximal(const PrimeId& p) const;
  std::vector<PrimeId> maximal_points() const;
  /// Nonzero primes on the chain from the root down to m, root-adjacent first.
  std::vector<PrimeId> chain_to(const PrimeId& m) const;
  std::vector<PrimeId> nonzero_primes() const;

  /// Closure under specialization: S together with all of its descendants.
  PrimeSet up_closure(const PrimeSet& s) const;
  /// Closure under generization: S together with all of its ancestors. On a
  /// finite spectrum this is the closure in the inverse topology.
  PrimeSet down_closure(const PrimeSet& s) const;
  bool is_up_closed(const PrimeSet& s) const;
  bool is_down_closed(const PrimeSet& s) const;

  void require_known(const PrimeSet& s) const;
  void require_known(const PrimeId& p) const;

  friend bool operator==(const FiniteTreeSpectrum& a,
                         const FiniteTreeSpectrum& b) {
    return a.nodes_ == b.nodes_ && a.parent_ == b.parent_;
  }

 private:
  std::vector<PrimeId> nodes_;
  std::map<PrimeId, PrimeId> parent_;
  PrimeId root_;
  std::map<PrimeId, int> index_;
  std::map<PrimeId, std::vector<PrimeId>> children_;
  std::map<PrimeId, int> height_;
  int dim_ = 0;
};

/// Result of the three-way splitting-set check. On a finite spectrum the
/// complement of any set is compact, so that condition is vacuous; the other
/// two conditions are computed independently and must agree.
struct SplittingReport {
  bool splitting = false;           // X closed under specialization
  bool complement_compact = true;   // vacuous on a finite spectrum
  bool inverse_open = false;        // complement closed under generization
  bool transform_kills_x = false;   // no member of X survives the transform
  bool conditions_agree = false;
};

SplittingReport is_splitting_set(const FiniteTreeSpectrum& spec,
                                 const PrimeSet& x);

/// Closure of S in the inverse topology (= generization closure on a finite
/// spectrum).
PrimeSet inverse_closure(const FiniteTreeSpectrum& spec, const PrimeSet& s);

}  // namespace invx
