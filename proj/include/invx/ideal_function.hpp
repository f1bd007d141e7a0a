#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "invx/spaces.hpp"

namespace invx {

/// Integer affine form a*idx + b in one index variable.
struct Affine {
  i64 slope = 0;
  i64 intercept = 0;

  i64 at(i64 idx) const { return slope * idx + intercept; }
  bool is_zero() const { return slope == 0 && intercept == 0; }
  bool is_const() const { return slope == 0; }

  friend Affine operator+(Affine a, Affine b) {
    return {a.slope + b.slope, a.intercept + b.intercept};
  }
  friend Affine operator-(Affine a, Affine b) {
    return {a.slope - b.slope, a.intercept - b.intercept};
  }
  friend Affine operator*(i64 k, Affine a) {
    return {k * a.slope, k * a.intercept};
  }
  friend bool operator==(const Affine&, const Affine&) = default;
};

/// outer(inner(k)): substitute one affine index change into another.
Affine compose(const Affine& outer, const Affine& inner);

/// Smallest index >= lo beyond which the sign of d.at(j) no longer changes.
i64 settle_from(const Affine& d, i64 lo);

/// Function on omega+1: finitely many exceptional values over an affine tail,
/// plus the value at the limit point.
struct Seq1Fn {
  std::vector<std::pair<i64, i64>> exceptions;  // (index >= 1, value), sorted
  Affine tail;
  i64 at_limit = 0;

  friend bool operator==(const Seq1Fn&, const Seq1Fn&) = default;
};

/// Block template for the tail blocks of omega^2+1: a Seq1Fn whose numeric
/// fields are affine in the block index i.
struct Seq1Germ {
  std::vector<std::pair<i64, Affine>> exceptions;  // (j, value as fn of i)
  Affine tail;      // value at (i, j) = tail.at(j), independent of i
  Affine at_limit;  // value at l_i = at_limit.at(i)

  friend bool operator==(const Seq1Germ&, const Seq1Germ&) = default;
};

/// Function on omega^2+1. Explicit blocks override the germ, which applies to
/// every other block.
struct Seq2Fn {
  std::vector<std::pair<i64, Seq1Fn>> blocks;  // sorted by block index >= 1
  Seq1Germ germ;
  i64 at_top = 0;

  friend bool operator==(const Seq2Fn&, const Seq2Fn&) = default;
};

/// Function on a finite discrete backend (rank-0 ordinal or ball leaves),
/// one value per point.
struct DenseFn {
  std::vector<i64> values;

  friend bool operator==(const DenseFn&, const DenseFn&) = default;
};

Seq1Fn instantiate(const Seq1Germ& germ, i64 block_index);

/// A compactly supported integer-valued function on a maximal-space backend,
/// in canonical form (exceptions sorted, tail maximally absorbed). Immutable;
/// all operations return new values.
class IdealFunction {
 public:
  using Payload = std::variant<DenseFn, Seq1Fn, Seq2Fn>;

  IdealFunction(MaxSpace space, Payload payload);

  static IdealFunction zero(const MaxSpace& space);
  static IdealFunction dense(const MaxSpace& space, std::vector<i64> values);
  /// Characteristic function of a clopen set.
  static IdealFunction chi(const MaxSpace& space, const PointSet& clopen);

  const MaxSpace& space() const { return space_; }
  const Payload& payload() const { return payload_; }

  i64 eval(const Point& x) const;

  bool is_zero() const;
  bool is_nonneg() const;
  bool is_lsc() const;
  bool is_continuous() const;
  bool is_bounded() const;
  /// max |f|; requires a bounded function.
  i64 sup_norm() const;
  /// max f; requires a bounded function.
  i64 max_value() const;

  /// Closure of the cozero set in the backend topology.
  PointSet support() const;
  /// True iff the range is {0,1} and the cozero set is clopen.
  bool is_radical() const;
  /// {x : f(x) >= t}. Requires all tails locally constant (in particular any
  /// continuous function qualifies).
  PointSet level_set(i64 t) const;

  /// True iff the function is zero at every limit point and on every tail,
  /// i.e. it is a finite sum of multiples of chi at isolated points.
  bool finitely_supported_on_isolated() const;

  /// Stable serialization of space + payload, usable as a hash key.
  std::string key() const;

  friend IdealFunction add(const IdealFunction& f, const IdealFunction& g);
  friend IdealFunction sub(const IdealFunction& f, const IdealFunction& g);
  friend IdealFunction meet(const IdealFunction& f, const IdealFunction& g);
  friend IdealFunction join(const IdealFunction& f, const IdealFunction& g);
  friend IdealFunction scale(i64 k, const IdealFunction& f);
  friend IdealFunction negate(const IdealFunction& f);

  friend bool operator==(const IdealFunction& a, const IdealFunction& b) {
    return a.space_ == b.space_ && a.payload_ == b.payload_;
  }

 private:
  MaxSpace space_;
  Payload payload_;
};

/// If every tail and limit of f is 0/1-valued and clopen-consistent, returns
/// f with its finitely many exceptional isolated values clamped to the
/// characteristic function of the cozero skeleton: a radical element equal to
/// f up to a finitely supported adjustment on isolated points. Otherwise
/// nullopt.
std::optional<IdealFunction> radical_up_to_isolated_patch(const IdealFunction& f);

/// Same idea for bounded-nonnegative witnesses: requires every tail and limit
/// to be constant and >= 0; clamps exceptional isolated values up to >= 0.
std::optional<IdealFunction> bounded_nonneg_up_to_isolated_patch(
    const IdealFunction& f);

}  // namespace invx
