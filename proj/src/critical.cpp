#include "invx/critical.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace invx {

namespace {

void check_budget(const SearchBudget& b) {
  if (b.max_coefficient < 1 || b.max_term_depth < 1)
    throw InputError("search budget fields must be >= 1");
}

PointSet chi_neighborhood(const MaxSpace& space, const Point& m) {
  switch (m.kind) {
    case Point::Kind::index:
      return IndexSet{{m.a}};
    case Point::Kind::isolated:
      return Set1{{m.a}, std::nullopt, false};
    case Point::Kind::limit:
      return Set1{{}, 1, true};
    case Point::Kind::isolated2: {
      Set2 s;
      s.blocks.emplace_back(m.a, Set1{{m.b}, std::nullopt, false});
      return s;
    }
    case Point::Kind::block_limit: {
      Set2 s;
      s.blocks.emplace_back(m.a, Set1{{}, 1, true});
      return s;
    }
    case Point::Kind::top:
      return whole_set(space);
  }
  return IndexSet{};
}

bool isolated_kind(const Point& m) {
  return m.kind == Point::Kind::index || m.kind == Point::Kind::isolated ||
         m.kind == Point::Kind::isolated2;
}

CritVerdict detect_with_pool(const PresentedGroup& g, const Point& m,
                             const SearchBudget& budget,
                             const CandidatePool& pool, bool bounded,
                             ScanPolicy policy) {
  CritVerdict out;
  out.budget = budget;
  require_point(g.space, m);

  // chi of a clopen neighborhood certifies immediately
  if (g.base == BaseFamily::cc_full ||
      (g.base == BaseFamily::cc_isolated && isolated_kind(m))) {
    IdealFunction witness =
        IdealFunction::chi(g.space, chi_neighborhood(g.space, m));
    out.kind = CritVerdict::Kind::non_critical;
    out.certificate = MemberCertificate{Term::zero(), witness};
    return out;
  }

  auto witness_for = [&](const IdealFunction& t) -> std::optional<IdealFunction> {
    if (g.base == BaseFamily::none) {
      if (bounded) {
        if (t.is_bounded() && t.is_nonneg() && t.eval(m) >= 1) return t;
      } else {
        if (t.is_radical() && t.eval(m) == 1) return t;
      }
      return std::nullopt;
    }
    auto p = bounded ? bounded_nonneg_up_to_isolated_patch(t)
                     : radical_up_to_isolated_patch(t);
    if (!p) return std::nullopt;
    i64 v = p->eval(m);
    if (bounded ? v >= 1 : v == 1) return p;
    return std::nullopt;
  };

  i64 hit = scan_first_match(
      static_cast<i64>(pool.values.size()),
      [&](i64 i) { return witness_for(pool.values[i]).has_value(); }, policy);
  if (hit >= 0) {
    IdealFunction witness = *witness_for(pool.values[hit]);
    out.kind = CritVerdict::Kind::non_critical;
    out.certificate =
        MemberCertificate{pool.terms[hit], sub(witness, pool.values[hit])};
    return out;
  }
  out.kind = pool.truncated ? CritVerdict::Kind::unknown
                            : CritVerdict::Kind::critical_within_budget;
  return out;
}

// Exceptional structure of the candidate values: beyond these indices, every
// candidate is given by its tail or germ, so detection outcomes are uniform.
struct OrbitBoundary {
  std::vector<i64> isolated;      // exceptional isolated indices (rank 1)
  std::vector<i64> blocks;        // exceptional block indices (rank 2)
  std::vector<i64> block_isolated;  // exceptional within-block indices
};

OrbitBoundary boundary_of(const PresentedGroup& g, const CandidatePool& pool) {
  OrbitBoundary b;
  std::set<i64> js, is, bjs;
  auto scan_fn = [&](const IdealFunction& f) {
    if (const auto* s1 = std::get_if<Seq1Fn>(&f.payload())) {
      for (const auto& [j, v] : s1->exceptions) js.insert(j);
    } else if (const auto* s2 = std::get_if<Seq2Fn>(&f.payload())) {
      for (const auto& [i, blk] : s2->blocks) {
        is.insert(i);
        for (const auto& [j, v] : blk.exceptions) bjs.insert(j);
      }
      for (const auto& [j, v] : s2->germ.exceptions) bjs.insert(j);
    }
  };
  for (const auto& v : pool.values) scan_fn(v);
  for (const auto& gen : g.generators) scan_fn(gen);
  b.isolated.assign(js.begin(), js.end());
  b.blocks.assign(is.begin(), is.end());
  b.block_isolated.assign(bjs.begin(), bjs.end());
  return b;
}

}  // namespace

CritVerdict detect_critical(const PresentedGroup& g, const Point& m,
                            const SearchBudget& budget, ScanPolicy policy) {
  check_budget(budget);
  require_point(g.space, m);
  if (g.base == BaseFamily::cc_full ||
      (g.base == BaseFamily::cc_isolated && isolated_kind(m)))
    return detect_with_pool(g, m, budget, CandidatePool{}, false, policy);
  CandidatePool pool = enumerate_terms(g, budget);
  return detect_with_pool(g, m, budget, pool, false, policy);
}

CritVerdict detect_bounded_critical(const PresentedGroup& g, const Point& m,
                                    const SearchBudget& budget,
                                    ScanPolicy policy) {
  check_budget(budget);
  require_point(g.space, m);
  if (g.base == BaseFamily::cc_full ||
      (g.base == BaseFamily::cc_isolated && isolated_kind(m)))
    return detect_with_pool(g, m, budget, CandidatePool{}, true, policy);
  CandidatePool pool = enumerate_terms(g, budget);
  return detect_with_pool(g, m, budget, pool, true, policy);
}

std::vector<Point> orbit_representatives(const PresentedGroup& g) {
  CandidatePool pool;  // generators only; enough for the public overload
  OrbitBoundary b = boundary_of(g, pool);
  std::vector<Point> reps;
  if (auto n = finite_size(g.space)) {
    for (i64 i = 0; i < *n; ++i) reps.push_back(Point::index(i));
    return reps;
  }
  const auto& o = std::get<OrdinalSpace>(g.space);
  if (o.rank == 1) {
    for (i64 j : b.isolated) reps.push_back(Point::isolated(j));
    i64 generic = b.isolated.empty() ? 1 : b.isolated.back() + 1;
    reps.push_back(Point::isolated(generic));
    reps.push_back(Point::limit());
    return reps;
  }
  i64 gj = b.block_isolated.empty() ? 1 : b.block_isolated.back() + 1;
  for (i64 i : b.blocks) {
    for (i64 j : b.block_isolated) reps.push_back(Point::isolated2(i, j));
    reps.push_back(Point::isolated2(i, gj));
    reps.push_back(Point::block_limit(i));
  }
  i64 gi = b.blocks.empty() ? 1 : b.blocks.back() + 1;
  for (i64 j : b.block_isolated) reps.push_back(Point::isolated2(gi, j));
  reps.push_back(Point::isolated2(gi, gj));
  reps.push_back(Point::block_limit(gi));
  reps.push_back(Point::top());
  return reps;
}

CritLocus crit_locus(const PresentedGroup& g, const SearchBudget& budget,
                     ScanPolicy policy) {
  check_budget(budget);
  CritLocus out;
  if (g.base == BaseFamily::cc_full) {
    out.locus = empty_set(g.space);
    return out;
  }
  CandidatePool pool = enumerate_terms(g, budget);
  OrbitBoundary b = boundary_of(g, pool);

  auto verdict_at = [&](const Point& m) {
    CritVerdict v = detect_with_pool(g, m, budget, pool, false, policy);
    if (v.kind == CritVerdict::Kind::unknown) out.unknown = true;
    out.verdicts.emplace_back(m, v);
    return v.kind != CritVerdict::Kind::non_critical;
  };

  if (auto n = finite_size(g.space)) {
    IndexSet locus;
    for (i64 i = 0; i < *n; ++i)
      if (verdict_at(Point::index(i))) locus.points.push_back(i);
    out.locus = locus;
  } else if (std::get<OrdinalSpace>(g.space).rank == 1) {
    Set1 locus;
    i64 generic = b.isolated.empty() ? 1 : b.isolated.back() + 1;
    std::map<i64, bool> exceptional;
    for (i64 j : b.isolated) exceptional[j] = verdict_at(Point::isolated(j));
    bool generic_crit = verdict_at(Point::isolated(generic));
    bool limit_crit = verdict_at(Point::limit());
    for (auto& [j, crit] : exceptional)
      if (crit) locus.points.push_back(j);
    if (generic_crit) {
      for (i64 j = 1; j < generic; ++j)
        if (!exceptional.count(j)) locus.points.push_back(j);
      locus.tail_start = generic;
    }
    locus.has_limit = limit_crit;
    out.locus = locus;
  } else {
    Set2 locus;
    i64 gj = b.block_isolated.empty() ? 1 : b.block_isolated.back() + 1;
    auto block_locus = [&](i64 i) {
      Set1 s;
      std::map<i64, bool> exceptional;
      for (i64 j : b.block_isolated)
        exceptional[j] = verdict_at(Point::isolated2(i, j));
      bool generic_crit = verdict_at(Point::isolated2(i, gj));
      bool limit_crit = verdict_at(Point::block_limit(i));
      for (auto& [j, crit] : exceptional)
        if (crit) s.points.push_back(j);
      if (generic_crit) {
        for (i64 j = 1; j < gj; ++j)
          if (!exceptional.count(j)) s.points.push_back(j);
        s.tail_start = gj;
      }
      s.has_limit = limit_crit;
      return s;
    };
    for (i64 i : b.blocks) locus.blocks.emplace_back(i, block_locus(i));
    i64 gi = b.blocks.empty() ? 1 : b.blocks.back() + 1;
    locus.germ = block_locus(gi);
    locus.has_top = verdict_at(Point::top());
    out.locus = locus;
  }

  out.locus = canonical(g.space, out.locus);
  if (!is_closed(g.space, out.locus))
    throw VerdictError(
        "critical locus is not closed; the model violates the closure "
        "property of critical sets");
  return out;
}

// --- restriction -----------------------------------------------------------

namespace {

// Enumerates a finite set as a point list, or nullopt if it has infinite
// content (tails / germ pieces).
std::optional<std::vector<Point>> enumerate_finite(const PointSet& s) {
  std::vector<Point> pts;
  if (const auto* v = std::get_if<IndexSet>(&s)) {
    for (i64 j : v->points) pts.push_back(Point::index(j));
    return pts;
  }
  if (const auto* v1 = std::get_if<Set1>(&s)) {
    if (v1->tail_start) return std::nullopt;
    for (i64 j : v1->points) pts.push_back(Point::isolated(j));
    if (v1->has_limit) pts.push_back(Point::limit());
    return pts;
  }
  const auto& v2 = std::get<Set2>(s);
  if (!v2.germ.empty()) return std::nullopt;
  for (const auto& [i, bs] : v2.blocks) {
    if (bs.tail_start) return std::nullopt;
    for (i64 j : bs.points) pts.push_back(Point::isolated2(i, j));
    if (bs.has_limit) pts.push_back(Point::block_limit(i));
  }
  if (v2.has_top) pts.push_back(Point::top());
  return pts;
}

Restriction finite_restriction(const MaxSpace& parent,
                               std::vector<Point> pts) {
  Restriction r;
  r.sub_space = OrdinalSpace{0, static_cast<i64>(pts.size())};
  auto points = std::make_shared<std::vector<Point>>(std::move(pts));
  r.embed = [points](const Point& x) {
    if (x.kind != Point::Kind::index || x.a < 0 ||
        x.a >= static_cast<i64>(points->size()))
      throw UnknownPoint("restricted point out of range");
    return (*points)[x.a];
  };
  r.project = [points](const Point& x) {
    auto it = std::find(points->begin(), points->end(), x);
    if (it == points->end()) throw UnknownPoint("point not in the closed set");
    return Point::index(it - points->begin());
  };
  MaxSpace sub = r.sub_space;
  r.restrict_fn = [points, sub, parent](const IdealFunction& f) {
    if (!same_space(f.space(), parent)) throw BackendMismatch();
    std::vector<i64> vals;
    vals.reserve(points->size());
    for (const auto& p : *points) vals.push_back(f.eval(p));
    return IdealFunction::dense(sub, std::move(vals));
  };
  return r;
}

// Set1 with a tail: re-index the surviving isolated points 1,2,3,...
Restriction tail_restriction(const MaxSpace& parent, const Set1& s) {
  Restriction r;
  r.sub_space = OrdinalSpace{1, 0};
  auto prefix = std::make_shared<std::vector<i64>>(s.points);
  i64 t = *s.tail_start;
  i64 m = static_cast<i64>(prefix->size());
  // new isolated k > m corresponds to old isolated t + (k - m - 1)
  Affine reindex{1, t - m - 1};
  r.embed = [prefix, m, reindex](const Point& x) {
    if (x.kind == Point::Kind::limit) return Point::limit();
    if (x.kind != Point::Kind::isolated || x.a < 1)
      throw UnknownPoint("restricted point out of range");
    if (x.a <= m) return Point::isolated((*prefix)[x.a - 1]);
    return Point::isolated(reindex.at(x.a));
  };
  r.project = [prefix, m, t](const Point& x) {
    if (x.kind == Point::Kind::limit) return Point::limit();
    if (x.kind != Point::Kind::isolated)
      throw UnknownPoint("point not in the closed set");
    auto it = std::find(prefix->begin(), prefix->end(), x.a);
    if (it != prefix->end())
      return Point::isolated(it - prefix->begin() + 1);
    if (x.a < t) throw UnknownPoint("point not in the closed set");
    return Point::isolated(m + 1 + (x.a - t));
  };
  MaxSpace sub = r.sub_space;
  r.restrict_fn = [prefix, m, t, reindex, sub, parent](const IdealFunction& f) {
    if (!same_space(f.space(), parent)) throw BackendMismatch();
    const auto& s1 = std::get<Seq1Fn>(f.payload());
    Seq1Fn out;
    for (i64 k = 1; k <= m; ++k)
      out.exceptions.emplace_back(k, f.eval(Point::isolated((*prefix)[k - 1])));
    for (const auto& [j, v] : s1.exceptions)
      if (j >= t) out.exceptions.emplace_back(m + 1 + (j - t), v);
    out.tail = compose(s1.tail, reindex);
    out.at_limit = s1.at_limit;
    return IdealFunction(sub, std::move(out));
  };
  return r;
}

// Block-limit pattern: the set {l_i : i not excluded} + top becomes omega+1.
Restriction block_limit_restriction(const MaxSpace& parent, const Set2& s) {
  Restriction r;
  r.sub_space = OrdinalSpace{1, 0};
  auto excluded = std::make_shared<std::vector<i64>>();
  for (const auto& [i, bs] : s.blocks)
    if (bs.empty()) excluded->push_back(i);
  std::sort(excluded->begin(), excluded->end());
  i64 e = static_cast<i64>(excluded->size());
  i64 maxe = excluded->empty() ? 0 : excluded->back();
  // included block indices in ascending order; beyond maxe the k-th included
  // block is k + e
  auto included_prefix = std::make_shared<std::vector<i64>>();
  for (i64 i = 1; i <= maxe; ++i)
    if (!std::binary_search(excluded->begin(), excluded->end(), i))
      included_prefix->push_back(i);
  i64 m = static_cast<i64>(included_prefix->size());
  Affine reindex{1, e};  // k -> block index k + e for k > m
  r.embed = [included_prefix, m, reindex](const Point& x) {
    if (x.kind == Point::Kind::limit) return Point::top();
    if (x.kind != Point::Kind::isolated || x.a < 1)
      throw UnknownPoint("restricted point out of range");
    if (x.a <= m) return Point::block_limit((*included_prefix)[x.a - 1]);
    return Point::block_limit(reindex.at(x.a));
  };
  r.project = [included_prefix, m, maxe, e](const Point& x) {
    if (x.kind == Point::Kind::top) return Point::limit();
    if (x.kind != Point::Kind::block_limit)
      throw UnknownPoint("point not in the closed set");
    if (x.a <= maxe) {
      auto it = std::find(included_prefix->begin(), included_prefix->end(), x.a);
      if (it == included_prefix->end())
        throw UnknownPoint("point not in the closed set");
      return Point::isolated(it - included_prefix->begin() + 1);
    }
    return Point::isolated(x.a - e);
  };
  MaxSpace sub = r.sub_space;
  r.restrict_fn = [included_prefix, m, maxe, e, reindex, sub,
                   parent](const IdealFunction& f) {
    if (!same_space(f.space(), parent)) throw BackendMismatch();
    const auto& s2 = std::get<Seq2Fn>(f.payload());
    Seq1Fn out;
    for (i64 k = 1; k <= m; ++k)
      out.exceptions.emplace_back(
          k, f.eval(Point::block_limit((*included_prefix)[k - 1])));
    // explicit blocks of f past the excluded prefix become exceptions
    for (const auto& [i, blk] : s2.blocks)
      if (i > maxe) out.exceptions.emplace_back(i - e, blk.at_limit);
    out.tail = compose(s2.germ.at_limit, reindex);
    out.at_limit = s2.at_top;
    return IdealFunction(sub, std::move(out));
  };
  return r;
}

}  // namespace

Restriction make_restriction(const MaxSpace& parent, const PointSet& cs) {
  PointSet s = canonical(parent, cs);
  if (!is_closed(parent, s))
    throw UnsupportedRestriction("set is not closed");
  if (auto pts = enumerate_finite(s))
    return finite_restriction(parent, std::move(*pts));
  if (const auto* v1 = std::get_if<Set1>(&s))
    return tail_restriction(parent, *v1);
  const auto& v2 = std::get<Set2>(s);
  bool limit_pattern = v2.germ == Set1{{}, std::nullopt, true} && v2.has_top;
  if (limit_pattern) {
    for (const auto& [i, bs] : v2.blocks)
      if (!bs.empty())
        limit_pattern = false;  // only fully removed blocks are supported
  }
  if (limit_pattern) return block_limit_restriction(parent, v2);
  throw UnsupportedRestriction(
      "only finite sets, rank-1 tail sets and block-limit patterns are "
      "supported");
}

PresentedGroup restrict_group(const PresentedGroup& g, const Restriction& r) {
  PresentedGroup out;
  out.space = r.sub_space;
  out.base = g.base;
  out.generator_names = g.generator_names;
  for (const auto& gen : g.generators) out.generators.push_back(r.restrict_fn(gen));
  for (const auto& l : g.lifts) out.lifts.push_back(r.restrict_fn(l));
  return out;
}

CritSequenceResult crit_sequence(const PresentedGroup& g,
                                 const SearchBudget& budget,
                                 ScanPolicy policy) {
  check_budget(budget);
  CritSequenceResult out;
  PresentedGroup start = normalize_group(g);
  out.chain.push_back({whole_set(start.space), start});
  if (set_empty(out.chain.front().set)) {
    out.status = CritSequenceResult::Status::completed;
    out.sp_rank = 0;
    return out;
  }
  constexpr int kMaxStages = 12;
  for (int stage = 0; stage < kMaxStages; ++stage) {
    const PresentedGroup& cur = out.chain.back().group;
    CritLocus cl = crit_locus(cur, budget, policy);
    if (cl.unknown) {
      out.status = CritSequenceResult::Status::unknown;
      return out;
    }
    if (cl.locus == whole_set(cur.space)) {
      out.status = CritSequenceResult::Status::fixpoint_violation;
      return out;
    }
    Restriction r = make_restriction(cur.space, cl.locus);
    PresentedGroup next = restrict_group(cur, r);
    out.chain.push_back({cl.locus, std::move(next)});
    out.restrictions.push_back(std::move(r));
    if (set_empty(cl.locus)) {
      out.status = CritSequenceResult::Status::completed;
      out.sp_rank = static_cast<int>(out.chain.size()) - 1;
      return out;
    }
  }
  out.status = CritSequenceResult::Status::unknown;
  return out;
}

std::optional<int> sp_height(const PresentedGroup& g, const Point& m,
                             const SearchBudget& budget, ScanPolicy policy) {
  require_point(g.space, m);
  CritSequenceResult seq = crit_sequence(g, budget, policy);
  if (seq.status != CritSequenceResult::Status::completed) return std::nullopt;
  Point cur = m;
  int height = 0;
  for (size_t a = 1; a < seq.chain.size(); ++a) {
    const PointSet& next_set = seq.chain[a].set;
    const MaxSpace& cur_space = seq.chain[a - 1].group.space;
    if (!set_contains(cur_space, next_set, cur)) break;
    cur = seq.restrictions[a - 1].project(cur);
    height = static_cast<int>(a);
  }
  return height;
}

std::vector<LayerComponent> decompose_inv(const PresentedGroup& g,
                                          const IdealFunction& f,
                                          const SearchBudget& budget,
                                          ScanPolicy policy) {
  PresentedGroup model = normalize_group(g);
  MembershipVerdict mv = group_membership(model, f, budget, policy);
  if (mv.kind != MembershipVerdict::Kind::member) throw MembershipRequired();
  CritSequenceResult seq = crit_sequence(model, budget, policy);
  if (seq.status != CritSequenceResult::Status::completed)
    throw VerdictError("critical sequence did not terminate; no decomposition");
  int rank = *seq.sp_rank;
  std::vector<LayerComponent> out;
  if (rank == 0) return out;

  // restricted copies of the lifts, stage by stage
  std::vector<std::vector<IdealFunction>> lift_stages{model.lifts};
  for (int a = 0; a < rank - 1; ++a) {
    std::vector<IdealFunction> ls;
    for (const auto& l : lift_stages.back())
      ls.push_back(seq.restrictions[a].restrict_fn(l));
    lift_stages.push_back(std::move(ls));
  }

  std::vector<IdealFunction> components(
      rank, IdealFunction::zero(model.space));
  IdealFunction residual = f;
  for (int beta = rank - 1; beta >= 1; --beta) {
    // restriction of the current residual to stage beta
    IdealFunction r_beta = residual;
    for (int a = 0; a < beta; ++a)
      r_beta = seq.restrictions[a].restrict_fn(r_beta);
    if (r_beta.is_zero()) continue;
    const auto& lifts = lift_stages[beta];
    if (lifts.empty()) throw NoSection();
    // small-first search for an integer combination of the restricted lifts
    std::vector<i64> coeff_order{0};
    for (i64 c = 1; c <= budget.max_coefficient; ++c) {
      coeff_order.push_back(c);
      coeff_order.push_back(-c);
    }
    size_t n = lifts.size();
    std::vector<size_t> odo(n, 0);
    std::optional<std::vector<i64>> found;
    while (true) {
      std::vector<i64> coeffs(n);
      for (size_t k = 0; k < n; ++k) coeffs[k] = coeff_order[odo[k]];
      IdealFunction combo = IdealFunction::zero(lifts[0].space());
      for (size_t k = 0; k < n; ++k)
        if (coeffs[k] != 0) combo = add(combo, scale(coeffs[k], lifts[k]));
      if (combo == r_beta) {
        found = coeffs;
        break;
      }
      size_t k = n;
      while (k > 0 && ++odo[k - 1] == coeff_order.size()) odo[--k] = 0;
      if (k == 0) break;
    }
    if (!found) throw NoSection();
    IdealFunction c = IdealFunction::zero(model.space);
    for (size_t k = 0; k < n; ++k)
      if ((*found)[k] != 0) c = add(c, scale((*found)[k], model.lifts[k]));
    components[beta] = c;
    residual = sub(residual, c);
  }
  components[0] = residual;

  // each layer component must vanish one stage further down the chain
  for (int beta = 0; beta + 1 < rank; ++beta) {
    IdealFunction c = components[beta];
    for (int a = 0; a <= beta; ++a) c = seq.restrictions[a].restrict_fn(c);
    if (!c.is_zero())
      throw std::logic_error("layer component does not vanish on the next stage");
  }

  for (int beta = 0; beta < rank; ++beta) {
    out.push_back({beta, components[beta]});
  }
  return out;
}

DensityReport density_check(const PresentedGroup& g, const SearchBudget& budget,
                            const std::vector<PointSet>& samples,
                            ScanPolicy policy) {
  DensityReport out;
  CritLocus cl = crit_locus(g, budget, policy);
  for (const auto& sample : samples) {
    DensitySample entry;
    entry.sample = canonical(g.space, sample);
    if (!is_clopen(g.space, entry.sample))
      throw MalformedDescriptor("density samples must be clopen");
    entry.witness = difference_witness(g.space, entry.sample, cl.locus);
    entry.meets_noncritical = entry.witness.has_value();
    if (!entry.meets_noncritical) out.pass = false;
    out.samples.push_back(std::move(entry));
  }
  return out;
}

}  // namespace invx
