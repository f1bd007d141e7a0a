#pragma once

// Standalone slope oracle for the omega+1 and omega^2+1 fixture groups.
//
// The fixture generator takes the value n at the n-th isolated point and 1
// at the limit. Every lattice-group term over it is evaluated here by direct
// recursion on sampled concrete points, with no use of the library's
// descriptor machinery, and the following facts are checked exhaustively:
//
//   * every term is single-slope on the isolated ray: t(n) = a * n, with the
//     slope a measured by differencing consecutive large samples;
//   * the measured slope equals the value at the limit point;
//   * hence no term is, up to a finitely supported adjustment on isolated
//     points, 0/1-valued with value 1 at the limit (no radical witness), and
//     no term is bounded and >= 1 at the limit (no bounded witness).
//
// These are the ground truths behind the fixture criticality expectations.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <vector>

namespace slope_oracle {

using i64 = long long;

struct OracleTerm {
  enum class Op { leaf, meet, join, add };
  Op op = Op::leaf;
  i64 coeff = 0;           // leaf: coeff * generator
  int lhs = -1, rhs = -1;  // indices into the term arena
};

struct TermArena {
  std::vector<OracleTerm> terms;

  i64 eval(int t, i64 leaf_value) const {
    const OracleTerm& n = terms[t];
    switch (n.op) {
      case OracleTerm::Op::leaf:
        return n.coeff * leaf_value;
      case OracleTerm::Op::meet:
        return std::min(eval(n.lhs, leaf_value), eval(n.rhs, leaf_value));
      case OracleTerm::Op::join:
        return std::max(eval(n.lhs, leaf_value), eval(n.rhs, leaf_value));
      case OracleTerm::Op::add:
        return eval(n.lhs, leaf_value) + eval(n.rhs, leaf_value);
    }
    return 0;
  }
};

struct Enumeration {
  TermArena arena;
  std::vector<int> roots;
};

/// All terms over one generator with |coeff| <= bound and nesting depth
/// <= depth, deduplicated by their behavior on the sample points.
inline Enumeration enumerate_terms(
    i64 bound, int depth,
    const std::function<std::vector<i64>(const TermArena&, int)>& signature) {
  Enumeration e;
  std::set<std::vector<i64>> seen;
  std::vector<int> pool;
  for (i64 c = -bound; c <= bound; ++c) {
    OracleTerm t;
    t.coeff = c;
    e.arena.terms.push_back(t);
    int idx = static_cast<int>(e.arena.terms.size()) - 1;
    if (seen.insert(signature(e.arena, idx)).second) {
      e.roots.push_back(idx);
      pool.push_back(idx);
    } else {
      e.arena.terms.pop_back();
    }
  }
  for (int d = 2; d <= depth; ++d) {
    std::vector<int> fresh;
    for (size_t a = 0; a < pool.size(); ++a) {
      for (size_t b = a; b < pool.size(); ++b) {
        for (auto op : {OracleTerm::Op::meet, OracleTerm::Op::join,
                        OracleTerm::Op::add}) {
          OracleTerm t;
          t.op = op;
          t.lhs = pool[a];
          t.rhs = pool[b];
          e.arena.terms.push_back(t);
          int idx = static_cast<int>(e.arena.terms.size()) - 1;
          if (seen.insert(signature(e.arena, idx)).second) {
            e.roots.push_back(idx);
            fresh.push_back(idx);
          } else {
            e.arena.terms.pop_back();
          }
        }
      }
    }
    pool.insert(pool.end(), fresh.begin(), fresh.end());
  }
  return e;
}

struct OracleReport {
  int terms_checked = 0;
  bool single_slope = true;        // t(n) == slope * n on the sampled ray
  bool slope_equals_limit = true;  // t(limit) == measured slope
  bool no_radical_witness = true;  // no patched 0/1 term with 1 at the limit
  bool no_bounded_witness = true;  // no patched bounded term >= 1 at the limit

  bool criticality_confirmed() const {
    return single_slope && slope_equals_limit && no_radical_witness &&
           no_bounded_witness;
  }
};

/// Oracle for the omega+1 fixture group: generator n -> n, limit value 1.
inline OracleReport check_rank1(i64 coeff_bound, int depth) {
  const std::vector<i64> ray{1, 2, 3, 7, 50, 1000, 1001};
  const i64 patch_window = 100;  // samples beyond it witness tail behavior

  auto signature = [&](const TermArena& arena, int t) {
    std::vector<i64> sig;
    for (i64 n : ray) sig.push_back(arena.eval(t, n));
    sig.push_back(arena.eval(t, 1));  // limit: generator value 1
    return sig;
  };
  Enumeration e = enumerate_terms(coeff_bound, depth, signature);

  OracleReport rep;
  for (int t : e.roots) {
    ++rep.terms_checked;
    i64 fitted = e.arena.eval(t, 1001) - e.arena.eval(t, 1000);
    for (i64 n : ray)
      if (e.arena.eval(t, n) != fitted * n) rep.single_slope = false;
    i64 limit_val = e.arena.eval(t, 1);
    if (limit_val != fitted) rep.slope_equals_limit = false;

    bool tail01 = true, tail_bounded = true;
    for (i64 n : ray) {
      if (n <= patch_window) continue;
      i64 v = e.arena.eval(t, n);
      if (v != 0 && v != 1) tail01 = false;
      if (std::llabs(v) > patch_window) tail_bounded = false;
    }
    if (limit_val == 1 && tail01) rep.no_radical_witness = false;
    if (limit_val >= 1 && tail_bounded) rep.no_bounded_witness = false;
  }
  return rep;
}

struct OracleReport2 {
  int terms_checked = 0;
  bool single_block_slope = true;   // t(i, j) == slope * j in every block
  bool limits_follow_slope = true;  // t(l_i) == slope * i and t(top) == slope
  bool no_radical_witness = true;   // at any block limit or at the top

  bool criticality_confirmed() const {
    return single_block_slope && limits_follow_slope && no_radical_witness;
  }
};

/// Oracle for the omega^2+1 fixture group: generator j at (i, j), i at the
/// i-th block limit, 1 at the top. The generator value at a point determines
/// the term value, so sampling the generator value suffices.
inline OracleReport2 check_rank2(i64 coeff_bound, int depth) {
  const std::vector<i64> blocks{1, 2, 7, 60, 1000};
  const std::vector<i64> within{1, 2, 7, 50, 1000, 1001};
  const i64 patch_window = 100;

  auto signature = [&](const TermArena& arena, int t) {
    std::vector<i64> sig;
    for (i64 j : within) sig.push_back(arena.eval(t, j));
    for (i64 i : blocks) sig.push_back(arena.eval(t, i));
    sig.push_back(arena.eval(t, 1));
    return sig;
  };
  Enumeration e = enumerate_terms(coeff_bound, depth, signature);

  OracleReport2 rep;
  for (int t : e.roots) {
    ++rep.terms_checked;
    i64 fitted = e.arena.eval(t, 1001) - e.arena.eval(t, 1000);
    for (i64 j : within)
      if (e.arena.eval(t, j) != fitted * j) rep.single_block_slope = false;
    for (i64 i : blocks)
      if (e.arena.eval(t, i) != fitted * i) rep.limits_follow_slope = false;
    if (e.arena.eval(t, 1) != fitted) rep.limits_follow_slope = false;

    // a radical witness at l_i or at the top needs 0/1 within-block tails
    bool tail01 = true;
    for (i64 j : within) {
      if (j <= patch_window) continue;
      i64 v = e.arena.eval(t, j);
      if (v != 0 && v != 1) tail01 = false;
    }
    if (tail01) {
      for (i64 i : blocks)
        if (e.arena.eval(t, i) == 1) rep.no_radical_witness = false;
      if (e.arena.eval(t, 1) == 1) rep.no_radical_witness = false;
    }
  }
  return rep;
}

}  // namespace slope_oracle
