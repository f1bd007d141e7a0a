#include "invx/ideal_function.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace invx {

namespace {

// Materialization guard for crossover horizons.
constexpr i64 kMaxMaterialize = 100000;

void check_horizon(i64 h) {
  if (h > kMaxMaterialize) throw DescriptorOverflow();
}

enum class PwOp { add, min, max };

i64 apply(PwOp op, i64 x, i64 y) {
  switch (op) {
    case PwOp::add:
      return x + y;
    case PwOp::min:
      return std::min(x, y);
    case PwOp::max:
      return std::max(x, y);
  }
  return 0;
}

i64 last_exception(const Seq1Fn& f) {
  return f.exceptions.empty() ? 0 : f.exceptions.back().first;
}

i64 eval1(const Seq1Fn& f, i64 j) {
  auto it = std::lower_bound(
      f.exceptions.begin(), f.exceptions.end(), j,
      [](const auto& e, i64 idx) { return e.first < idx; });
  if (it != f.exceptions.end() && it->first == j) return it->second;
  return f.tail.at(j);
}

Seq1Fn canonical1(Seq1Fn f) {
  std::sort(f.exceptions.begin(), f.exceptions.end());
  for (size_t k = 1; k < f.exceptions.size(); ++k)
    if (f.exceptions[k].first == f.exceptions[k - 1].first)
      throw MalformedDescriptor("duplicate exception index");
  std::erase_if(f.exceptions,
                [&](const auto& e) { return e.second == f.tail.at(e.first); });
  return f;
}

Seq1Fn binary1(const Seq1Fn& x, const Seq1Fn& y, PwOp op) {
  Seq1Fn out;
  if (op == PwOp::add) {
    out.tail = x.tail + y.tail;
    std::vector<i64> idx;
    for (const auto& [j, v] : x.exceptions) idx.push_back(j);
    for (const auto& [j, v] : y.exceptions) idx.push_back(j);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    for (i64 j : idx) out.exceptions.emplace_back(j, eval1(x, j) + eval1(y, j));
  } else {
    i64 h = std::max(last_exception(x), last_exception(y));
    if (x.tail != y.tail) h = std::max(h, settle_from(x.tail - y.tail, 1) - 1);
    check_horizon(h);
    for (i64 j = 1; j <= h; ++j)
      out.exceptions.emplace_back(j, apply(op, eval1(x, j), eval1(y, j)));
    i64 probe = h + 1;
    bool x_wins = (op == PwOp::min) == (x.tail.at(probe) <= y.tail.at(probe));
    out.tail = x_wins ? x.tail : y.tail;
  }
  out.at_limit = apply(op, x.at_limit, y.at_limit);
  return canonical1(std::move(out));
}

Seq1Fn scale1(const Seq1Fn& f, i64 k) {
  Seq1Fn out;
  if (k == 0) return out;
  for (const auto& [j, v] : f.exceptions) out.exceptions.emplace_back(j, k * v);
  out.tail = k * f.tail;
  out.at_limit = k * f.at_limit;
  return out;
}

Affine germ_value_at(const Seq1Germ& g, i64 j) {
  for (const auto& [ej, v] : g.exceptions)
    if (ej == j) return v;
  return Affine{0, g.tail.at(j)};
}

Seq1Germ canonical_germ(Seq1Germ g) {
  std::sort(g.exceptions.begin(), g.exceptions.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t k = 1; k < g.exceptions.size(); ++k)
    if (g.exceptions[k].first == g.exceptions[k - 1].first)
      throw MalformedDescriptor("duplicate exception index");
  std::erase_if(g.exceptions, [&](const auto& e) {
    return e.second == Affine{0, g.tail.at(e.first)};
  });
  return g;
}

const Seq1Fn* explicit_block(const Seq2Fn& f, i64 i) {
  for (const auto& [bi, fn] : f.blocks)
    if (bi == i) return &fn;
  return nullptr;
}

Seq1Fn block_of(const Seq2Fn& f, i64 i) {
  if (const Seq1Fn* b = explicit_block(f, i)) return *b;
  return instantiate(f.germ, i);
}

i64 last_block(const Seq2Fn& f) {
  return f.blocks.empty() ? 0 : f.blocks.back().first;
}

Seq2Fn canonical2(Seq2Fn f) {
  f.germ = canonical_germ(std::move(f.germ));
  for (auto& [i, b] : f.blocks) b = canonical1(std::move(b));
  std::sort(f.blocks.begin(), f.blocks.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t k = 1; k < f.blocks.size(); ++k)
    if (f.blocks[k].first == f.blocks[k - 1].first)
      throw MalformedDescriptor("duplicate block index");
  std::erase_if(f.blocks, [&](const auto& kv) {
    return kv.second == canonical1(instantiate(f.germ, kv.first));
  });
  return f;
}

Seq2Fn binary2(const Seq2Fn& x, const Seq2Fn& y, PwOp op) {
  Seq2Fn out;
  // j-horizon for the germ exceptions of the result
  i64 jh = 0;
  for (const auto& [j, v] : x.germ.exceptions) jh = std::max(jh, j);
  for (const auto& [j, v] : y.germ.exceptions) jh = std::max(jh, j);
  if (op != PwOp::add && x.germ.tail != y.germ.tail)
    jh = std::max(jh, settle_from(x.germ.tail - y.germ.tail, 1) - 1);
  check_horizon(jh);
  // i-horizon: explicit blocks plus, for min/max, the block indices where the
  // germ comparisons have not settled yet
  i64 ih = std::max(last_block(x), last_block(y));
  if (op != PwOp::add) {
    for (i64 j = 1; j <= jh; ++j) {
      Affine u = germ_value_at(x.germ, j), v = germ_value_at(y.germ, j);
      if (u != v) ih = std::max(ih, settle_from(u - v, 1) - 1);
    }
    if (x.germ.at_limit != y.germ.at_limit)
      ih = std::max(
          ih, settle_from(x.germ.at_limit - y.germ.at_limit, 1) - 1);
  }
  check_horizon(ih);
  for (i64 i = 1; i <= ih; ++i)
    out.blocks.emplace_back(i, binary1(block_of(x, i), block_of(y, i), op));
  i64 probe_i = ih + 1;
  for (i64 j = 1; j <= jh; ++j) {
    Affine u = germ_value_at(x.germ, j), v = germ_value_at(y.germ, j);
    Affine w;
    if (op == PwOp::add) {
      w = u + v;
    } else {
      bool u_wins = (op == PwOp::min) == (u.at(probe_i) <= v.at(probe_i));
      w = u_wins ? u : v;
    }
    out.germ.exceptions.emplace_back(j, w);
  }
  if (op == PwOp::add) {
    out.germ.tail = x.germ.tail + y.germ.tail;
    out.germ.at_limit = x.germ.at_limit + y.germ.at_limit;
  } else {
    i64 probe_j = jh + 1;
    bool x_tail = (op == PwOp::min) ==
                  (x.germ.tail.at(probe_j) <= y.germ.tail.at(probe_j));
    out.germ.tail = x_tail ? x.germ.tail : y.germ.tail;
    bool x_lim = (op == PwOp::min) ==
                 (x.germ.at_limit.at(probe_i) <= y.germ.at_limit.at(probe_i));
    out.germ.at_limit = x_lim ? x.germ.at_limit : y.germ.at_limit;
  }
  out.at_top = apply(op, x.at_top, y.at_top);
  return canonical2(std::move(out));
}

Seq2Fn scale2(const Seq2Fn& f, i64 k) {
  Seq2Fn out;
  if (k == 0) return out;
  for (const auto& [i, b] : f.blocks) out.blocks.emplace_back(i, scale1(b, k));
  for (const auto& [j, v] : f.germ.exceptions)
    out.germ.exceptions.emplace_back(j, k * v);
  out.germ.tail = k * f.germ.tail;
  out.germ.at_limit = k * f.germ.at_limit;
  out.at_top = k * f.at_top;
  return out;
}

// Smallest index >= 1 that is not an exception index of f.
i64 first_tail_index(const Seq1Fn& f) {
  i64 j = 1;
  for (const auto& [ej, v] : f.exceptions) {
    if (ej == j) ++j;
    if (ej > j) break;
  }
  return j;
}

i64 first_germ_exception_free(const Seq1Germ& g) {
  i64 j = 1;
  for (const auto& [ej, v] : g.exceptions) {
    if (ej == j) ++j;
    if (ej > j) break;
  }
  return j;
}

// Smallest block index >= 1 with no explicit block.
i64 first_germ_block(const Seq2Fn& f) {
  i64 i = 1;
  for (const auto& [bi, b] : f.blocks) {
    if (bi == i) ++i;
    if (bi > i) break;
  }
  return i;
}

bool affine_nonneg_on(const Affine& a, i64 from) {
  if (a.slope > 0) return a.at(from) >= 0;
  if (a.slope == 0) return a.intercept >= 0;
  return false;
}

// true iff a.at(i) >= c for every large i
bool affine_eventually_ge(const Affine& a, i64 c) {
  return a.slope > 0 || (a.slope == 0 && a.intercept >= c);
}

// minimum of the germ tail over all non-exception indices, nullopt when
// unbounded below
std::optional<i64> germ_tail_min(const Seq1Germ& g) {
  if (g.tail.slope < 0) return std::nullopt;
  if (g.tail.slope == 0) return g.tail.intercept;
  return g.tail.at(first_germ_exception_free(g));
}

bool lsc1(const Seq1Fn& f) {
  if (f.tail.slope > 0) return true;
  if (f.tail.slope < 0) return false;
  return f.tail.intercept >= f.at_limit;
}

bool continuous1(const Seq1Fn& f) {
  return f.tail.slope == 0 && f.tail.intercept == f.at_limit;
}

bool bounded1(const Seq1Fn& f) { return f.tail.slope == 0; }

// local clone of the Set1 canonicalization from spaces.cpp
Set1 canonical1_set(Set1 s) {
  std::sort(s.points.begin(), s.points.end());
  s.points.erase(std::unique(s.points.begin(), s.points.end()), s.points.end());
  if (s.tail_start) {
    std::erase_if(s.points, [&](i64 j) { return j >= *s.tail_start; });
    while (!s.points.empty() && s.points.back() + 1 == *s.tail_start) {
      s.tail_start = s.points.back();
      s.points.pop_back();
    }
  }
  return s;
}

Set1 level1(const Seq1Fn& f, i64 t) {
  if (f.tail.slope != 0)
    throw InputError("level set requires locally constant tails");
  Set1 out;
  for (const auto& [j, v] : f.exceptions)
    if (v >= t) out.points.push_back(j);
  if (f.tail.intercept >= t) {
    out.tail_start = 1;
    // exceptions below the tail threshold puncture the tail
    std::vector<i64> holes;
    for (const auto& [j, v] : f.exceptions)
      if (v < t) holes.push_back(j);
    if (!holes.empty()) {
      i64 start = holes.back() + 1;
      for (i64 j = 1; j < start; ++j)
        if (eval1(f, j) >= t) out.points.push_back(j);
      std::erase_if(out.points, [&](i64 j) { return j >= start; });
      out.tail_start = start;
    }
  }
  out.has_limit = f.at_limit >= t;
  return canonical1_set(out);
}

}  // namespace

// --- public helpers -------------------------------------------------------

Affine compose(const Affine& outer, const Affine& inner) {
  return {outer.slope * inner.slope, outer.slope * inner.intercept + outer.intercept};
}

i64 settle_from(const Affine& d, i64 lo) {
  if (d.slope == 0) return lo;
  i64 bound = std::llabs(d.intercept) / std::llabs(d.slope) + 2;
  return std::max(lo, bound);
}

Seq1Fn instantiate(const Seq1Germ& germ, i64 block_index) {
  Seq1Fn out;
  for (const auto& [j, v] : germ.exceptions)
    out.exceptions.emplace_back(j, v.at(block_index));
  out.tail = germ.tail;
  out.at_limit = germ.at_limit.at(block_index);
  return canonical1(std::move(out));
}

// --- IdealFunction --------------------------------------------------------

IdealFunction::IdealFunction(MaxSpace space, Payload payload)
    : space_(std::move(space)), payload_(std::move(payload)) {
  // validate payload kind against the space and canonicalize
  if (const auto* b = std::get_if<BallSpace>(&space_)) {
    auto* d = std::get_if<DenseFn>(&payload_);
    if (!d || static_cast<i64>(d->values.size()) != b->leaf_count())
      throw MalformedDescriptor("ball function needs one value per leaf");
    return;
  }
  const auto& o = std::get<OrdinalSpace>(space_);
  if (o.rank == 0) {
    auto* d = std::get_if<DenseFn>(&payload_);
    if (!d || static_cast<i64>(d->values.size()) != o.size)
      throw MalformedDescriptor("discrete function needs one value per point");
  } else if (o.rank == 1) {
    auto* f = std::get_if<Seq1Fn>(&payload_);
    if (!f) throw MalformedDescriptor("rank-1 space needs a tail descriptor");
    for (const auto& [j, v] : f->exceptions)
      if (j < 1) throw MalformedDescriptor("exception index must be >= 1");
    *f = canonical1(std::move(*f));
  } else {
    auto* f = std::get_if<Seq2Fn>(&payload_);
    if (!f) throw MalformedDescriptor("rank-2 space needs a block descriptor");
    for (const auto& [i, b] : f->blocks) {
      if (i < 1) throw MalformedDescriptor("block index must be >= 1");
      for (const auto& [j, v] : b.exceptions)
        if (j < 1) throw MalformedDescriptor("exception index must be >= 1");
    }
    for (const auto& [j, v] : f->germ.exceptions)
      if (j < 1) throw MalformedDescriptor("exception index must be >= 1");
    *f = canonical2(std::move(*f));
  }
}

IdealFunction IdealFunction::zero(const MaxSpace& space) {
  if (const auto* b = std::get_if<BallSpace>(&space))
    return IdealFunction(space, DenseFn{std::vector<i64>(b->leaf_count(), 0)});
  const auto& o = std::get<OrdinalSpace>(space);
  if (o.rank == 0)
    return IdealFunction(space, DenseFn{std::vector<i64>(o.size, 0)});
  if (o.rank == 1) return IdealFunction(space, Seq1Fn{});
  return IdealFunction(space, Seq2Fn{});
}

IdealFunction IdealFunction::dense(const MaxSpace& space, std::vector<i64> values) {
  return IdealFunction(space, DenseFn{std::move(values)});
}

IdealFunction IdealFunction::chi(const MaxSpace& space, const PointSet& clopen) {
  if (!is_clopen(space, clopen))
    throw MalformedDescriptor("characteristic function requires a clopen set");
  PointSet c = canonical(space, clopen);
  if (const auto* v = std::get_if<IndexSet>(&c)) {
    i64 n = finite_size(space).value();
    std::vector<i64> vals(n, 0);
    for (i64 j : v->points) vals[j] = 1;
    return IdealFunction(space, DenseFn{std::move(vals)});
  }
  auto chi1 = [](const Set1& s) {
    Seq1Fn f;
    i64 cut = s.tail_start.value_or(s.points.empty() ? 1 : s.points.back() + 1);
    for (i64 j = 1; j < cut; ++j)
      f.exceptions.emplace_back(
          j, std::binary_search(s.points.begin(), s.points.end(), j) ? 1 : 0);
    f.tail = Affine{0, s.tail_start ? 1 : 0};
    f.at_limit = s.has_limit ? 1 : 0;
    return canonical1(std::move(f));
  };
  if (const auto* v1 = std::get_if<Set1>(&c))
    return IdealFunction(space, chi1(*v1));
  const auto& v2 = std::get<Set2>(c);
  Seq2Fn f;
  for (const auto& [i, bs] : v2.blocks) f.blocks.emplace_back(i, chi1(bs));
  Seq1Fn pattern = chi1(v2.germ);
  for (const auto& [j, v] : pattern.exceptions)
    f.germ.exceptions.emplace_back(j, Affine{0, v});
  f.germ.tail = pattern.tail;
  f.germ.at_limit = Affine{0, pattern.at_limit};
  f.at_top = v2.has_top ? 1 : 0;
  return IdealFunction(space, f);
}

i64 IdealFunction::eval(const Point& x) const {
  require_point(space_, x);
  if (const auto* d = std::get_if<DenseFn>(&payload_)) return d->values[x.a];
  if (const auto* f = std::get_if<Seq1Fn>(&payload_)) {
    if (x.kind == Point::Kind::limit) return f->at_limit;
    return eval1(*f, x.a);
  }
  const auto& f = std::get<Seq2Fn>(payload_);
  switch (x.kind) {
    case Point::Kind::isolated2:
      return eval1(block_of(f, x.a), x.b);
    case Point::Kind::block_limit:
      if (const Seq1Fn* b = explicit_block(f, x.a)) return b->at_limit;
      return f.germ.at_limit.at(x.a);
    default:
      return f.at_top;
  }
}

bool IdealFunction::is_zero() const { return *this == zero(space_); }

bool IdealFunction::is_nonneg() const {
  if (const auto* d = std::get_if<DenseFn>(&payload_))
    return std::all_of(d->values.begin(), d->values.end(),
                       [](i64 v) { return v >= 0; });
  auto nonneg1 = [](const Seq1Fn& f) {
    for (const auto& [j, v] : f.exceptions)
      if (v < 0) return false;
    if (f.at_limit < 0) return false;
    return affine_nonneg_on(f.tail, first_tail_index(f));
  };
  if (const auto* f = std::get_if<Seq1Fn>(&payload_)) return nonneg1(*f);
  const auto& f = std::get<Seq2Fn>(payload_);
  for (const auto& [i, b] : f.blocks)
    if (!nonneg1(b)) return false;
  i64 i0 = first_germ_block(f);
  for (const auto& [j, v] : f.germ.exceptions)
    if (!affine_nonneg_on(v, i0)) return false;
  if (!affine_nonneg_on(f.germ.tail, first_germ_exception_free(f.germ)))
    return false;
  if (!affine_nonneg_on(f.germ.at_limit, i0)) return false;
  return f.at_top >= 0;
}

bool IdealFunction::is_lsc() const {
  if (std::holds_alternative<DenseFn>(payload_)) return true;
  if (const auto* f = std::get_if<Seq1Fn>(&payload_)) return lsc1(*f);
  const auto& f = std::get<Seq2Fn>(payload_);
  for (const auto& [i, b] : f.blocks)
    if (!lsc1(b)) return false;
  // at the block limits of germ blocks
  const Affine& a = f.germ.tail;
  const Affine& lim = f.germ.at_limit;
  if (a.slope < 0) return false;
  if (a.slope == 0) {
    // tail constant: need intercept >= at_limit(i) for every germ block
    i64 i0 = first_germ_block(f);
    if (lim.slope > 0) return false;
    if (a.intercept < lim.at(i0)) return false;
  }
  // at the top point: every germ piece must be eventually >= at_top
  for (const auto& [j, v] : f.germ.exceptions)
    if (!affine_eventually_ge(v, f.at_top)) return false;
  auto m = germ_tail_min(f.germ);
  if (!m || *m < f.at_top) return false;
  if (!affine_eventually_ge(lim, f.at_top)) return false;
  return true;
}

bool IdealFunction::is_continuous() const {
  if (std::holds_alternative<DenseFn>(payload_)) return true;
  if (const auto* f = std::get_if<Seq1Fn>(&payload_)) return continuous1(*f);
  const auto& f = std::get<Seq2Fn>(payload_);
  for (const auto& [i, b] : f.blocks)
    if (!continuous1(b)) return false;
  // canonical germ of a continuous function is the constant at_top
  return f.germ.exceptions.empty() && f.germ.tail == Affine{0, f.at_top} &&
         f.germ.at_limit == Affine{0, f.at_top};
}

bool IdealFunction::is_bounded() const {
  if (std::holds_alternative<DenseFn>(payload_)) return true;
  if (const auto* f = std::get_if<Seq1Fn>(&payload_)) return bounded1(*f);
  const auto& f = std::get<Seq2Fn>(payload_);
  for (const auto& [i, b] : f.blocks)
    if (!bounded1(b)) return false;
  for (const auto& [j, v] : f.germ.exceptions)
    if (v.slope != 0) return false;
  return f.germ.tail.slope == 0 && f.germ.at_limit.slope == 0;
}

namespace {

void collect_values1(const Seq1Fn& f, std::vector<i64>& out) {
  for (const auto& [j, v] : f.exceptions) out.push_back(v);
  out.push_back(f.tail.intercept);
  out.push_back(f.at_limit);
}

}  // namespace

i64 IdealFunction::sup_norm() const {
  if (!is_bounded()) throw InputError("sup_norm of an unbounded function");
  std::vector<i64> vals;
  if (const auto* d = std::get_if<DenseFn>(&payload_)) {
    vals = d->values;
    vals.push_back(0);
  } else if (const auto* f = std::get_if<Seq1Fn>(&payload_)) {
    collect_values1(*f, vals);
  } else {
    const auto& s2 = std::get<Seq2Fn>(payload_);
    for (const auto& [i, b] : s2.blocks) collect_values1(b, vals);
    for (const auto& [j, v] : s2.germ.exceptions) vals.push_back(v.intercept);
    vals.push_back(s2.germ.tail.intercept);
    vals.push_back(s2.germ.at_limit.intercept);
    vals.push_back(s2.at_top);
  }
  i64 m = 0;
  for (i64 v : vals) m = std::max(m, std::llabs(v));
  return m;
}

i64 IdealFunction::max_value() const {
  if (!is_bounded()) throw InputError("max of an unbounded function");
  std::vector<i64> vals;
  if (const auto* d = std::get_if<DenseFn>(&payload_)) {
    vals = d->values;
    if (vals.empty()) vals.push_back(0);
  } else if (const auto* f = std::get_if<Seq1Fn>(&payload_)) {
    collect_values1(*f, vals);
  } else {
    const auto& s2 = std::get<Seq2Fn>(payload_);
    for (const auto& [i, b] : s2.blocks) collect_values1(b, vals);
    for (const auto& [j, v] : s2.germ.exceptions) vals.push_back(v.intercept);
    vals.push_back(s2.germ.tail.intercept);
    vals.push_back(s2.germ.at_limit.intercept);
    vals.push_back(s2.at_top);
  }
  return *std::max_element(vals.begin(), vals.end());
}

namespace {

Set1 support1(const Seq1Fn& f) {
  Set1 out;
  i64 h = last_exception(f);
  if (f.tail.slope != 0)
    h = std::max(h, settle_from(f.tail, 1) - 1);
  for (i64 j = 1; j <= h; ++j)
    if (eval1(f, j) != 0) out.points.push_back(j);
  if (f.tail.slope != 0 || f.tail.intercept != 0) out.tail_start = h + 1;
  out.has_limit = (f.at_limit != 0) || out.tail_start.has_value();
  return canonical1_set(std::move(out));
}

}  // namespace

PointSet IdealFunction::support() const {
  if (const auto* d = std::get_if<DenseFn>(&payload_)) {
    IndexSet out;
    for (i64 j = 0; j < static_cast<i64>(d->values.size()); ++j)
      if (d->values[j] != 0) out.points.push_back(j);
    return out;
  }
  if (const auto* f = std::get_if<Seq1Fn>(&payload_)) return support1(*f);
  // rank 2: materialize the germ blocks where some affine piece crosses zero,
  // so that the remaining germ has a uniform cozero pattern
  Seq2Fn f = std::get<Seq2Fn>(payload_);
  i64 ih = last_block(f);
  for (const auto& [j, v] : f.germ.exceptions)
    if (v.slope != 0) ih = std::max(ih, settle_from(v, 1) - 1);
  if (f.germ.at_limit.slope != 0)
    ih = std::max(ih, settle_from(f.germ.at_limit, 1) - 1);
  check_horizon(ih);
  for (i64 i = 1; i <= ih; ++i)
    if (!explicit_block(f, i)) f.blocks.emplace_back(i, instantiate(f.germ, i));
  std::sort(f.blocks.begin(), f.blocks.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  Set2 out;
  for (const auto& [i, b] : f.blocks) out.blocks.emplace_back(i, support1(b));
  // beyond ih every germ affine has a fixed sign: a nonzero piece is nonzero
  // at every remaining block
  Seq1Fn probe = instantiate(f.germ, ih + 1);
  Set1 pattern = support1(probe);
  // at_limit nonzero-for-large-i keeps the block limit in the pattern
  out.germ = pattern;
  out.has_top = f.at_top != 0 || !pattern.empty();
  MaxSpace sp = space_;
  return closure(sp, canonical(sp, PointSet{std::move(out)}));
}

PointSet IdealFunction::level_set(i64 t) const {
  if (const auto* d = std::get_if<DenseFn>(&payload_)) {
    IndexSet out;
    for (i64 j = 0; j < static_cast<i64>(d->values.size()); ++j)
      if (d->values[j] >= t) out.points.push_back(j);
    return out;
  }
  if (const auto* f = std::get_if<Seq1Fn>(&payload_))
    return level1(*f, t);
  const auto& f = std::get<Seq2Fn>(payload_);
  for (const auto& [j, v] : f.germ.exceptions)
    if (v.slope != 0) throw InputError("level set requires locally constant tails");
  if (f.germ.tail.slope != 0 || f.germ.at_limit.slope != 0)
    throw InputError("level set requires locally constant tails");
  Set2 out;
  for (const auto& [i, b] : f.blocks) out.blocks.emplace_back(i, level1(b, t));
  out.germ = level1(instantiate(f.germ, 1), t);
  out.has_top = f.at_top >= t;
  MaxSpace sp = space_;
  return canonical(sp, PointSet{std::move(out)});
}

bool IdealFunction::is_radical() const {
  auto in01 = [](i64 v) { return v == 0 || v == 1; };
  if (const auto* d = std::get_if<DenseFn>(&payload_))
    return std::all_of(d->values.begin(), d->values.end(), in01);
  auto range1_ok = [&](const Seq1Fn& f) {
    for (const auto& [j, v] : f.exceptions)
      if (!in01(v)) return false;
    return f.tail.slope == 0 && in01(f.tail.intercept) && in01(f.at_limit);
  };
  if (const auto* f = std::get_if<Seq1Fn>(&payload_)) {
    if (!range1_ok(*f)) return false;
  } else {
    const auto& s2 = std::get<Seq2Fn>(payload_);
    for (const auto& [i, b] : s2.blocks)
      if (!range1_ok(b)) return false;
    for (const auto& [j, v] : s2.germ.exceptions)
      if (v.slope != 0 || !in01(v.intercept)) return false;
    if (s2.germ.tail.slope != 0 || !in01(s2.germ.tail.intercept)) return false;
    if (s2.germ.at_limit.slope != 0 || !in01(s2.germ.at_limit.intercept))
      return false;
    if (!in01(s2.at_top)) return false;
  }
  return is_clopen(space_, level_set(1));
}

bool IdealFunction::finitely_supported_on_isolated() const {
  if (std::holds_alternative<DenseFn>(payload_)) return true;
  if (const auto* f = std::get_if<Seq1Fn>(&payload_))
    return f->tail.is_zero() && f->at_limit == 0;
  const auto& f = std::get<Seq2Fn>(payload_);
  if (f.at_top != 0) return false;
  if (!f.germ.exceptions.empty() || !f.germ.tail.is_zero() ||
      !f.germ.at_limit.is_zero())
    return false;
  for (const auto& [i, b] : f.blocks)
    if (!b.tail.is_zero() || b.at_limit != 0) return false;
  return true;
}

std::string IdealFunction::key() const {
  std::ostringstream out;
  auto put_affine = [&](const Affine& a) {
    out << a.slope << "*" << a.intercept << ";";
  };
  if (const auto* b = std::get_if<BallSpace>(&space_))
    out << "B" << b->p << "," << b->depth << "|";
  else {
    const auto& o = std::get<OrdinalSpace>(space_);
    out << "O" << o.rank << "," << o.size << "|";
  }
  if (const auto* d = std::get_if<DenseFn>(&payload_)) {
    for (i64 v : d->values) out << v << ",";
    return out.str();
  }
  auto put1 = [&](const Seq1Fn& f) {
    for (const auto& [j, v] : f.exceptions) out << j << ":" << v << ",";
    out << "t";
    put_affine(f.tail);
    out << "l" << f.at_limit << ";";
  };
  if (const auto* f = std::get_if<Seq1Fn>(&payload_)) {
    put1(*f);
    return out.str();
  }
  const auto& f = std::get<Seq2Fn>(payload_);
  for (const auto& [i, b] : f.blocks) {
    out << "b" << i << "{";
    put1(b);
    out << "}";
  }
  out << "g{";
  for (const auto& [j, v] : f.germ.exceptions) {
    out << j << ":";
    put_affine(v);
  }
  out << "t";
  put_affine(f.germ.tail);
  out << "l";
  put_affine(f.germ.at_limit);
  out << "}T" << f.at_top;
  return out.str();
}

namespace {

IdealFunction lift_binary(const IdealFunction& f, const IdealFunction& g,
                          PwOp op) {
  if (!same_space(f.space(), g.space())) throw BackendMismatch();
  if (const auto* df = std::get_if<DenseFn>(&f.payload())) {
    const auto& dg = std::get<DenseFn>(g.payload());
    DenseFn out;
    out.values.reserve(df->values.size());
    for (size_t k = 0; k < df->values.size(); ++k)
      out.values.push_back(apply(op, df->values[k], dg.values[k]));
    return IdealFunction(f.space(), std::move(out));
  }
  if (const auto* sf = std::get_if<Seq1Fn>(&f.payload()))
    return IdealFunction(f.space(),
                         binary1(*sf, std::get<Seq1Fn>(g.payload()), op));
  return IdealFunction(f.space(), binary2(std::get<Seq2Fn>(f.payload()),
                                          std::get<Seq2Fn>(g.payload()), op));
}

}  // namespace

IdealFunction add(const IdealFunction& f, const IdealFunction& g) {
  return lift_binary(f, g, PwOp::add);
}

IdealFunction meet(const IdealFunction& f, const IdealFunction& g) {
  return lift_binary(f, g, PwOp::min);
}

IdealFunction join(const IdealFunction& f, const IdealFunction& g) {
  return lift_binary(f, g, PwOp::max);
}

IdealFunction scale(i64 k, const IdealFunction& f) {
  if (const auto* d = std::get_if<DenseFn>(&f.payload())) {
    DenseFn out;
    for (i64 v : d->values) out.values.push_back(k * v);
    return IdealFunction(f.space(), std::move(out));
  }
  if (const auto* s = std::get_if<Seq1Fn>(&f.payload()))
    return IdealFunction(f.space(), scale1(*s, k));
  return IdealFunction(f.space(), scale2(std::get<Seq2Fn>(f.payload()), k));
}

IdealFunction negate(const IdealFunction& f) { return scale(-1, f); }

IdealFunction sub(const IdealFunction& f, const IdealFunction& g) {
  return add(f, negate(g));
}

std::optional<IdealFunction> radical_up_to_isolated_patch(
    const IdealFunction& f) {
  auto in01 = [](i64 v) { return v == 0 || v == 1; };
  auto clamp01 = [](i64 v) { return v != 0 ? i64{1} : i64{0}; };
  if (const auto* d = std::get_if<DenseFn>(&f.payload())) {
    DenseFn out;
    for (i64 v : d->values) out.values.push_back(clamp01(v));
    return IdealFunction(f.space(), std::move(out));
  }
  auto patch1 = [&](const Seq1Fn& s) -> std::optional<Seq1Fn> {
    if (s.tail.slope != 0 || !in01(s.tail.intercept)) return std::nullopt;
    if (s.at_limit != s.tail.intercept) return std::nullopt;
    Seq1Fn out = s;
    for (auto& [j, v] : out.exceptions) v = clamp01(v);
    return canonical1(std::move(out));
  };
  if (const auto* s = std::get_if<Seq1Fn>(&f.payload())) {
    auto p = patch1(*s);
    if (!p) return std::nullopt;
    return IdealFunction(f.space(), std::move(*p));
  }
  const auto& s = std::get<Seq2Fn>(f.payload());
  Seq2Fn out;
  for (const auto& [i, b] : s.blocks) {
    auto p = patch1(b);
    if (!p) return std::nullopt;
    out.blocks.emplace_back(i, std::move(*p));
  }
  // Germ pieces repeat in every tail block, so they cannot be patched: the
  // germ must already be the constant 0 or the constant 1 on full blocks.
  const auto& g = s.germ;
  if (g.tail.slope != 0 || g.at_limit.slope != 0) return std::nullopt;
  i64 beta = g.tail.intercept;
  if (!in01(beta) || g.at_limit.intercept != beta) return std::nullopt;
  for (const auto& [j, v] : g.exceptions)
    if (v.slope != 0 || v.intercept != beta) return std::nullopt;
  if (s.at_top != beta) return std::nullopt;
  out.germ.tail = Affine{0, beta};
  out.germ.at_limit = Affine{0, beta};
  out.at_top = beta;
  return IdealFunction(f.space(), std::move(out));
}

std::optional<IdealFunction> bounded_nonneg_up_to_isolated_patch(
    const IdealFunction& f) {
  if (const auto* d = std::get_if<DenseFn>(&f.payload())) {
    DenseFn out;
    for (i64 v : d->values) out.values.push_back(std::max<i64>(v, 0));
    return IdealFunction(f.space(), std::move(out));
  }
  auto patch1 = [](const Seq1Fn& s) -> std::optional<Seq1Fn> {
    if (s.tail.slope != 0 || s.tail.intercept < 0 || s.at_limit < 0)
      return std::nullopt;
    Seq1Fn out = s;
    for (auto& [j, v] : out.exceptions) v = std::max<i64>(v, 0);
    return canonical1(std::move(out));
  };
  if (const auto* s = std::get_if<Seq1Fn>(&f.payload())) {
    auto p = patch1(*s);
    if (!p) return std::nullopt;
    return IdealFunction(f.space(), std::move(*p));
  }
  const auto& s = std::get<Seq2Fn>(f.payload());
  Seq2Fn out;
  for (const auto& [i, b] : s.blocks) {
    auto p = patch1(b);
    if (!p) return std::nullopt;
    out.blocks.emplace_back(i, std::move(*p));
  }
  const auto& g = s.germ;
  if (g.tail.slope != 0 || g.tail.intercept < 0) return std::nullopt;
  if (g.at_limit.slope != 0 || g.at_limit.intercept < 0) return std::nullopt;
  for (const auto& [j, v] : g.exceptions)
    if (v.slope != 0 || v.intercept < 0) return std::nullopt;
  if (s.at_top < 0) return std::nullopt;
  out.germ = g;
  out.at_top = s.at_top;
  return IdealFunction(f.space(), std::move(out));
}

}  // namespace invx
