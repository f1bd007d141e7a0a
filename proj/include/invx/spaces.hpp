#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "invx/errors.hpp"

namespace invx {

using i64 = long long;

/// Scattered ordinal space of Cantor–Bendixson rank at most 2.
///   rank 0: a discrete space with `size` points, labelled 0..size-1;
///   rank 1: omega+1 — isolated points 1,2,3,... plus one limit point;
///   rank 2: omega^2+1 — blocks i=1,2,... of isolated points (i,j), each with
///           a block limit l_i, plus one top limit point.
struct OrdinalSpace {
  int rank = 0;
  i64 size = 0;  // point count when rank == 0, ignored otherwise

  friend bool operator==(const OrdinalSpace&, const OrdinalSpace&) = default;
};

/// Finite-precision quotient of the p-adic completion: the p^depth residue
/// classes mod p^depth, discrete at fixed precision.
struct BallSpace {
  i64 p = 2;
  int depth = 0;

  i64 leaf_count() const;
  /// Little-endian base-p digit string of a residue, `depth` digits.
  std::string leaf_label(i64 leaf) const;
  i64 parse_leaf(const std::string& label) const;

  friend bool operator==(const BallSpace&, const BallSpace&) = default;
};

using MaxSpace = std::variant<OrdinalSpace, BallSpace>;

bool same_space(const MaxSpace& a, const MaxSpace& b);
/// Number of points when the space is finite (rank 0 or ball).
std::optional<i64> finite_size(const MaxSpace& s);

/// A point of a maximal-space backend.
struct Point {
  enum class Kind { index, isolated, limit, isolated2, block_limit, top };
  Kind kind = Kind::index;
  i64 a = 0;  // index / j / block i
  i64 b = 0;  // j for isolated2

  static Point index(i64 i) { return {Kind::index, i, 0}; }
  static Point isolated(i64 j) { return {Kind::isolated, j, 0}; }
  static Point limit() { return {Kind::limit, 0, 0}; }
  static Point isolated2(i64 i, i64 j) { return {Kind::isolated2, i, j}; }
  static Point block_limit(i64 i) { return {Kind::block_limit, i, 0}; }
  static Point top() { return {Kind::top, 0, 0}; }

  bool is_limit_kind() const {
    return kind == Kind::limit || kind == Kind::block_limit || kind == Kind::top;
  }

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

void require_point(const MaxSpace& space, const Point& x);
std::string point_label(const MaxSpace& space, const Point& x);
Point parse_point(const MaxSpace& space, const std::string& label);

/// Subset of a rank-0 or ball space: a sorted list of point indices.
struct IndexSet {
  std::vector<i64> points;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
};

/// Subset of omega+1: finitely many isolated points, an optional tail of
/// isolated points [N, infinity), and the limit point. Canonical form keeps
/// `points` sorted and strictly below `tail_start`.
struct Set1 {
  std::vector<i64> points;
  std::optional<i64> tail_start;
  bool has_limit = false;

  bool empty() const { return points.empty() && !tail_start && !has_limit; }
  friend bool operator==(const Set1&, const Set1&) = default;
};

/// Subset of omega^2+1. Explicit blocks override the germ pattern, which
/// applies to every other block; `Set1::has_limit` inside a block refers to
/// the block limit l_i.
struct Set2 {
  std::vector<std::pair<i64, Set1>> blocks;
  Set1 germ;
  bool has_top = false;

  bool empty() const;
  friend bool operator==(const Set2&, const Set2&) = default;
};

using PointSet = std::variant<IndexSet, Set1, Set2>;

PointSet empty_set(const MaxSpace& space);
PointSet whole_set(const MaxSpace& space);
bool set_empty(const PointSet& s);
PointSet canonical(const MaxSpace& space, PointSet s);
bool set_contains(const MaxSpace& space, const PointSet& s, const Point& x);
PointSet set_union(const MaxSpace& space, const PointSet& a, const PointSet& b);
/// Topological closure in the backend topology (inverse = constructible on
/// these maximal spaces).
PointSet closure(const MaxSpace& space, const PointSet& s);
bool is_closed(const MaxSpace& space, const PointSet& s);
bool is_open(const MaxSpace& space, const PointSet& s);
bool is_clopen(const MaxSpace& space, const PointSet& s);
bool set_subset(const MaxSpace& space, const PointSet& a, const PointSet& b);
/// A witness point of a \ b, if one exists.
std::optional<Point> difference_witness(const MaxSpace& space,
                                        const PointSet& a, const PointSet& b);
std::string set_label(const MaxSpace& space, const PointSet& s);

/// Exact membership in a clopen set; rejects descriptors that are not clopen.
bool clopen_membership(const MaxSpace& space, const PointSet& c, const Point& x);

/// Cantor–Bendixson derivative: the subspace of limit points, re-expressed
/// one rank down. Errors with RankZero on a discrete space.
OrdinalSpace cb_derivative(const OrdinalSpace& space);

}  // namespace invx
