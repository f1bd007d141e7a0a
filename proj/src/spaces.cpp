#include "invx/spaces.hpp"

#include <algorithm>
#include <sstream>

namespace invx {

i64 BallSpace::leaf_count() const {
  i64 n = 1;
  for (int i = 0; i < depth; ++i) n *= p;
  return n;
}

std::string BallSpace::leaf_label(i64 leaf) const {
  if (depth == 0) return "0";
  std::string out;
  i64 r = leaf;
  for (int i = 0; i < depth; ++i) {
    out += static_cast<char>('0' + (r % p));
    r /= p;
  }
  return out;
}

i64 BallSpace::parse_leaf(const std::string& label) const {
  bool all_digits = !label.empty() &&
                    std::all_of(label.begin(), label.end(),
                                [](char c) { return c >= '0' && c <= '9'; });
  if (!all_digits) throw UnknownPoint(label);
  if (static_cast<int>(label.size()) == depth && p <= 10) {
    // little-endian digit string
    i64 r = 0, w = 1;
    for (char c : label) {
      i64 d = c - '0';
      if (d >= p) throw UnknownPoint(label);
      r += d * w;
      w *= p;
    }
    return r;
  }
  i64 r = std::stoll(label);
  if (r < 0 || r >= leaf_count()) throw UnknownPoint(label);
  return r;
}

bool same_space(const MaxSpace& a, const MaxSpace& b) { return a == b; }

std::optional<i64> finite_size(const MaxSpace& s) {
  if (const auto* o = std::get_if<OrdinalSpace>(&s)) {
    if (o->rank == 0) return o->size;
    return std::nullopt;
  }
  return std::get<BallSpace>(s).leaf_count();
}

void require_point(const MaxSpace& space, const Point& x) {
  auto bad = [&] { throw UnknownPoint(point_label(space, x)); };
  if (const auto* b = std::get_if<BallSpace>(&space)) {
    if (x.kind != Point::Kind::index || x.a < 0 || x.a >= b->leaf_count()) bad();
    return;
  }
  const auto& o = std::get<OrdinalSpace>(space);
  switch (o.rank) {
    case 0:
      if (x.kind != Point::Kind::index || x.a < 0 || x.a >= o.size) bad();
      break;
    case 1:
      if (x.kind == Point::Kind::isolated) {
        if (x.a < 1) bad();
      } else if (x.kind != Point::Kind::limit) {
        bad();
      }
      break;
    case 2:
      switch (x.kind) {
        case Point::Kind::isolated2:
          if (x.a < 1 || x.b < 1) bad();
          break;
        case Point::Kind::block_limit:
          if (x.a < 1) bad();
          break;
        case Point::Kind::top:
          break;
        default:
          bad();
      }
      break;
    default:
      bad();
  }
}

std::string point_label(const MaxSpace& space, const Point& x) {
  if (const auto* b = std::get_if<BallSpace>(&space)) {
    if (x.kind == Point::Kind::index && x.a >= 0 && x.a < b->leaf_count())
      return b->leaf_label(x.a);
  }
  switch (x.kind) {
    case Point::Kind::index:
      return std::to_string(x.a);
    case Point::Kind::isolated:
      return std::to_string(x.a);
    case Point::Kind::limit:
      return "inf";
    case Point::Kind::isolated2:
      return std::to_string(x.a) + "." + std::to_string(x.b);
    case Point::Kind::block_limit:
      return "l" + std::to_string(x.a);
    case Point::Kind::top:
      return "top";
  }
  return "?";
}

Point parse_point(const MaxSpace& space, const std::string& label) {
  Point x;
  if (const auto* b = std::get_if<BallSpace>(&space)) {
    x = Point::index(b->parse_leaf(label));
    require_point(space, x);
    return x;
  }
  const auto& o = std::get<OrdinalSpace>(space);
  try {
    if (o.rank == 0) {
      x = Point::index(std::stoll(label));
    } else if (o.rank == 1) {
      if (label == "inf" || label == "limit")
        x = Point::limit();
      else
        x = Point::isolated(std::stoll(label));
    } else {
      if (label == "top") {
        x = Point::top();
      } else if (!label.empty() && label[0] == 'l') {
        x = Point::block_limit(std::stoll(label.substr(1)));
      } else if (auto dot = label.find('.'); dot != std::string::npos) {
        x = Point::isolated2(std::stoll(label.substr(0, dot)),
                             std::stoll(label.substr(dot + 1)));
      } else {
        throw UnknownPoint(label);
      }
    }
  } catch (const std::invalid_argument&) {
    throw UnknownPoint(label);
  } catch (const std::out_of_range&) {
    throw UnknownPoint(label);
  }
  require_point(space, x);
  return x;
}

bool Set2::empty() const {
  if (has_top || !germ.empty()) return false;
  for (const auto& [i, s] : blocks)
    if (!s.empty()) return false;
  return true;
}

namespace {

void sort_unique(std::vector<i64>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Set1 canonical1(Set1 s) {
  sort_unique(s.points);
  if (s.tail_start) {
    // absorb points that touch the tail from below
    std::erase_if(s.points, [&](i64 j) { return j >= *s.tail_start; });
    while (!s.points.empty() && s.points.back() + 1 == *s.tail_start) {
      s.tail_start = s.points.back();
      s.points.pop_back();
    }
  }
  return s;
}

bool contains1(const Set1& s, i64 j) {
  if (s.tail_start && j >= *s.tail_start) return true;
  return std::binary_search(s.points.begin(), s.points.end(), j);
}

Set1 union1(const Set1& a, const Set1& b) {
  Set1 out = a;
  out.points.insert(out.points.end(), b.points.begin(), b.points.end());
  if (b.tail_start)
    out.tail_start = out.tail_start ? std::min(*out.tail_start, *b.tail_start)
                                    : *b.tail_start;
  out.has_limit = out.has_limit || b.has_limit;
  return canonical1(std::move(out));
}

Set1 closure1(Set1 s) {
  if (s.tail_start) s.has_limit = true;
  return s;
}

bool is_closed1(const Set1& s) { return !s.tail_start || s.has_limit; }
bool is_open1(const Set1& s) { return !s.has_limit || s.tail_start.has_value(); }

bool whole1(const Set1& s) {
  return s.tail_start && *s.tail_start == 1 && s.has_limit;
}

// a point of a \ b within one rank-1 layer, if any
std::optional<Point> witness1(const Set1& a, const Set1& b) {
  for (i64 j : a.points)
    if (!contains1(b, j)) return Point::isolated(j);
  if (a.tail_start) {
    i64 from = *a.tail_start;
    i64 cap = b.tail_start ? *b.tail_start
                           : (b.points.empty() ? from : b.points.back() + 1);
    for (i64 j = from; j <= std::max(from, cap); ++j)
      if (!contains1(b, j)) return Point::isolated(j);
    if (!b.tail_start)
      return Point::isolated(std::max(from, cap) + 1);
  }
  if (a.has_limit && !b.has_limit) return Point::limit();
  return std::nullopt;
}

void validate1(const Set1& s) {
  for (i64 j : s.points)
    if (j < 1) throw MalformedDescriptor("isolated index must be >= 1");
  if (s.tail_start && *s.tail_start < 1)
    throw MalformedDescriptor("tail start must be >= 1");
}

const Set1& block_at(const Set2& s, i64 i) {
  for (const auto& [bi, bs] : s.blocks)
    if (bi == i) return bs;
  return s.germ;
}

Set2 canonical2(Set2 s) {
  for (auto& [i, bs] : s.blocks) bs = canonical1(std::move(bs));
  s.germ = canonical1(std::move(s.germ));
  std::sort(s.blocks.begin(), s.blocks.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::erase_if(s.blocks, [&](const auto& kv) { return kv.second == s.germ; });
  return s;
}

i64 max_block_index(const Set2& s) {
  return s.blocks.empty() ? 0 : s.blocks.back().first;
}

void validate2(const Set2& s) {
  for (const auto& [i, bs] : s.blocks) {
    if (i < 1) throw MalformedDescriptor("block index must be >= 1");
    validate1(bs);
  }
  validate1(s.germ);
}

std::string label1(const Set1& s, const char* limit_name) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (i64 j : s.points) {
    if (!first) out << ",";
    out << j;
    first = false;
  }
  if (s.tail_start) {
    if (!first) out << ",";
    out << "[" << *s.tail_start << ",inf)";
    first = false;
  }
  if (s.has_limit) {
    if (!first) out << ",";
    out << limit_name;
  }
  out << "}";
  return out.str();
}

}  // namespace

PointSet empty_set(const MaxSpace& space) {
  if (const auto* o = std::get_if<OrdinalSpace>(&space)) {
    if (o->rank == 1) return Set1{};
    if (o->rank == 2) return Set2{};
  }
  return IndexSet{};
}

PointSet whole_set(const MaxSpace& space) {
  if (const auto* o = std::get_if<OrdinalSpace>(&space)) {
    if (o->rank == 1) return Set1{{}, 1, true};
    if (o->rank == 2) return Set2{{}, Set1{{}, 1, true}, true};
    IndexSet all;
    for (i64 i = 0; i < o->size; ++i) all.points.push_back(i);
    return all;
  }
  IndexSet all;
  for (i64 i = 0; i < std::get<BallSpace>(space).leaf_count(); ++i)
    all.points.push_back(i);
  return all;
}

bool set_empty(const PointSet& s) {
  return std::visit(
      [](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, IndexSet>)
          return v.points.empty();
        else
          return v.empty();
      },
      s);
}

PointSet canonical(const MaxSpace& space, PointSet s) {
  (void)space;
  if (auto* v = std::get_if<IndexSet>(&s)) {
    sort_unique(v->points);
  } else if (auto* v1 = std::get_if<Set1>(&s)) {
    *v1 = canonical1(std::move(*v1));
  } else {
    auto& v2 = std::get<Set2>(s);
    v2 = canonical2(std::move(v2));
  }
  return s;
}

bool set_contains(const MaxSpace& space, const PointSet& s, const Point& x) {
  require_point(space, x);
  if (const auto* v = std::get_if<IndexSet>(&s)) {
    return std::binary_search(v->points.begin(), v->points.end(), x.a);
  }
  if (const auto* v1 = std::get_if<Set1>(&s)) {
    if (x.kind == Point::Kind::limit) return v1->has_limit;
    return contains1(*v1, x.a);
  }
  const auto& v2 = std::get<Set2>(s);
  switch (x.kind) {
    case Point::Kind::isolated2:
      return contains1(block_at(v2, x.a), x.b);
    case Point::Kind::block_limit:
      return block_at(v2, x.a).has_limit;
    case Point::Kind::top:
      return v2.has_top;
    default:
      return false;
  }
}

PointSet set_union(const MaxSpace& space, const PointSet& a, const PointSet& b) {
  if (a.index() != b.index()) throw BackendMismatch();
  if (const auto* va = std::get_if<IndexSet>(&a)) {
    IndexSet out = *va;
    const auto& vb = std::get<IndexSet>(b);
    out.points.insert(out.points.end(), vb.points.begin(), vb.points.end());
    sort_unique(out.points);
    return out;
  }
  if (const auto* va = std::get_if<Set1>(&a))
    return union1(*va, std::get<Set1>(b));
  const auto& va = std::get<Set2>(a);
  const auto& vb = std::get<Set2>(b);
  Set2 out;
  std::vector<i64> idx;
  for (const auto& [i, s] : va.blocks) idx.push_back(i);
  for (const auto& [i, s] : vb.blocks) idx.push_back(i);
  sort_unique(idx);
  for (i64 i : idx)
    out.blocks.emplace_back(i, union1(block_at(va, i), block_at(vb, i)));
  out.germ = union1(va.germ, vb.germ);
  out.has_top = va.has_top || vb.has_top;
  (void)space;
  return canonical2(std::move(out));
}

PointSet closure(const MaxSpace& space, const PointSet& s) {
  if (std::holds_alternative<IndexSet>(s))
    return canonical(space, s);  // discrete
  if (const auto* v1 = std::get_if<Set1>(&s))
    return closure1(canonical1(*v1));
  Set2 out = canonical2(std::get<Set2>(s));
  for (auto& [i, bs] : out.blocks) bs = closure1(std::move(bs));
  out.germ = closure1(std::move(out.germ));
  if (!out.germ.empty()) out.has_top = true;
  return canonical2(std::move(out));
}

bool is_closed(const MaxSpace& space, const PointSet& s) {
  if (std::holds_alternative<IndexSet>(s)) return true;
  if (const auto* v1 = std::get_if<Set1>(&s)) return is_closed1(*v1);
  const auto& v2 = std::get<Set2>(s);
  for (const auto& [i, bs] : v2.blocks)
    if (!is_closed1(bs)) return false;
  if (!is_closed1(v2.germ)) return false;
  if (!v2.germ.empty() && !v2.has_top) return false;
  (void)space;
  return true;
}

bool is_open(const MaxSpace& space, const PointSet& s) {
  if (std::holds_alternative<IndexSet>(s)) return true;
  if (const auto* v1 = std::get_if<Set1>(&s)) return is_open1(*v1);
  const auto& v2 = std::get<Set2>(s);
  for (const auto& [i, bs] : v2.blocks)
    if (!is_open1(bs)) return false;
  if (!is_open1(v2.germ)) return false;
  if (v2.has_top && !whole1(canonical1(v2.germ))) return false;
  (void)space;
  return true;
}

bool is_clopen(const MaxSpace& space, const PointSet& s) {
  return is_closed(space, s) && is_open(space, s);
}

bool set_subset(const MaxSpace& space, const PointSet& a, const PointSet& b) {
  return !difference_witness(space, a, b).has_value();
}

std::optional<Point> difference_witness(const MaxSpace& space,
                                        const PointSet& a, const PointSet& b) {
  if (a.index() != b.index()) throw BackendMismatch();
  (void)space;
  if (const auto* va = std::get_if<IndexSet>(&a)) {
    const auto& vb = std::get<IndexSet>(b);
    for (i64 j : va->points)
      if (!std::binary_search(vb.points.begin(), vb.points.end(), j))
        return Point::index(j);
    return std::nullopt;
  }
  if (const auto* va = std::get_if<Set1>(&a))
    return witness1(*va, std::get<Set1>(b));
  const auto& va = std::get<Set2>(a);
  const auto& vb = std::get<Set2>(b);
  std::vector<i64> idx;
  for (const auto& [i, s] : va.blocks) idx.push_back(i);
  for (const auto& [i, s] : vb.blocks) idx.push_back(i);
  sort_unique(idx);
  auto lift = [](i64 i, const Point& w) {
    if (w.kind == Point::Kind::limit) return Point::block_limit(i);
    return Point::isolated2(i, w.a);
  };
  for (i64 i : idx)
    if (auto w = witness1(block_at(va, i), block_at(vb, i))) return lift(i, *w);
  i64 generic = std::max(max_block_index(va), max_block_index(vb)) + 1;
  if (auto w = witness1(va.germ, vb.germ)) return lift(generic, *w);
  if (va.has_top && !vb.has_top) return Point::top();
  return std::nullopt;
}

std::string set_label(const MaxSpace& space, const PointSet& s) {
  if (const auto* v = std::get_if<IndexSet>(&s)) {
    std::ostringstream out;
    out << "{";
    for (size_t k = 0; k < v->points.size(); ++k) {
      if (k) out << ",";
      out << point_label(space, Point::index(v->points[k]));
    }
    out << "}";
    return out.str();
  }
  if (const auto* v1 = std::get_if<Set1>(&s)) return label1(*v1, "inf");
  const auto& v2 = std::get<Set2>(s);
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [i, bs] : v2.blocks) {
    if (!first) out << ", ";
    out << "block " << i << ": " << label1(bs, ("l" + std::to_string(i)).c_str());
    first = false;
  }
  if (!v2.germ.empty()) {
    if (!first) out << ", ";
    out << "other blocks: " << label1(v2.germ, "l_i");
    first = false;
  }
  if (v2.has_top) {
    if (!first) out << ", ";
    out << "top";
  }
  out << "}";
  return out.str();
}

bool clopen_membership(const MaxSpace& space, const PointSet& c, const Point& x) {
  if (const auto* v1 = std::get_if<Set1>(&c)) validate1(*v1);
  if (const auto* v2 = std::get_if<Set2>(&c)) validate2(*v2);
  if (const auto* v = std::get_if<IndexSet>(&c)) {
    auto n = finite_size(space);
    for (i64 j : v->points)
      if (j < 0 || (n && j >= *n))
        throw MalformedDescriptor("point index out of range");
  }
  if (!is_clopen(space, c))
    throw MalformedDescriptor("set descriptor is not clopen");
  return set_contains(space, canonical(space, c), x);
}

OrdinalSpace cb_derivative(const OrdinalSpace& space) {
  if (space.rank == 0) throw RankZero();
  if (space.rank == 1) return OrdinalSpace{0, 1};
  return OrdinalSpace{1, 0};
}

}  // namespace invx
