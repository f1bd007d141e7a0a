#include "invx/model_io.hpp"

#include <fstream>

namespace invx {

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

namespace {

// affine fields accept an integer, "index" (slope 1 in the own index),
// "block_index" (slope 1 in the block index), or {slope, intercept}
Affine parse_affine(const Json& j) {
  if (j.is_number_integer()) return Affine{0, j.get<i64>()};
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "index" || s == "block_index") return Affine{1, 0};
    throw InputError("unknown affine token: " + s);
  }
  if (j.is_object())
    return Affine{j.value("slope", i64{0}), j.value("intercept", i64{0})};
  throw InputError("affine field must be an integer, a token or an object");
}

Json affine_to_json(const Affine& a, const char* token) {
  if (a.slope == 0) return Json(a.intercept);
  if (a.slope == 1 && a.intercept == 0) return Json(token);
  return Json{{"slope", a.slope}, {"intercept", a.intercept}};
}

i64 parse_int_field(const Json& j, const char* what) {
  if (!j.is_number_integer())
    throw InputError(std::string(what) + " must be an integer");
  return j.get<i64>();
}

Seq1Fn parse_seq1(const Json& j) {
  Seq1Fn f;
  for (const auto& e : j.value("exceptions", Json::array())) {
    if (!e.is_array() || e.size() != 2)
      throw InputError("exception entries are [index, value] pairs");
    f.exceptions.emplace_back(parse_int_field(e[0], "exception index"),
                              parse_int_field(e[1], "exception value"));
  }
  if (j.contains("tail")) {
    Affine t = parse_affine(j["tail"]);
    f.tail = t;
  }
  f.at_limit = j.value("at_limit", i64{0});
  return f;
}

Json seq1_to_json(const Seq1Fn& f) {
  Json out = Json::object();
  Json exc = Json::array();
  for (const auto& [i, v] : f.exceptions) exc.push_back(Json::array({i, v}));
  out["exceptions"] = std::move(exc);
  out["tail"] = affine_to_json(f.tail, "index");
  out["at_limit"] = f.at_limit;
  return out;
}

Seq2Fn parse_seq2(const Json& j) {
  Seq2Fn f;
  for (const auto& b : j.value("blocks", Json::array())) {
    if (!b.is_array() || b.size() != 2)
      throw InputError("block entries are [index, descriptor] pairs");
    f.blocks.emplace_back(parse_int_field(b[0], "block index"),
                          parse_seq1(b[1]));
  }
  if (j.contains("tail_block")) {
    const Json& g = j["tail_block"];
    for (const auto& e : g.value("exceptions", Json::array())) {
      if (!e.is_array() || e.size() != 2)
        throw InputError("germ exception entries are [index, value] pairs");
      f.germ.exceptions.emplace_back(parse_int_field(e[0], "exception index"),
                                     parse_affine(e[1]));
    }
    if (g.contains("tail")) f.germ.tail = parse_affine(g["tail"]);
    if (g.contains("at_limit")) f.germ.at_limit = parse_affine(g["at_limit"]);
  }
  f.at_top = j.value("at_top", i64{0});
  return f;
}

Json seq2_to_json(const Seq2Fn& f) {
  Json out = Json::object();
  Json blocks = Json::array();
  for (const auto& [i, b] : f.blocks)
    blocks.push_back(Json::array({i, seq1_to_json(b)}));
  out["blocks"] = std::move(blocks);
  Json germ = Json::object();
  Json exc = Json::array();
  for (const auto& [i, v] : f.germ.exceptions)
    exc.push_back(Json::array({i, affine_to_json(v, "block_index")}));
  germ["exceptions"] = std::move(exc);
  germ["tail"] = affine_to_json(f.germ.tail, "index");
  germ["at_limit"] = affine_to_json(f.germ.at_limit, "block_index");
  out["tail_block"] = std::move(germ);
  out["at_top"] = f.at_top;
  return out;
}

Set1 parse_set1(const Json& j) {
  Set1 s;
  for (const auto& p : j.value("points", Json::array()))
    s.points.push_back(parse_int_field(p, "point"));
  if (j.contains("tail_from"))
    s.tail_start = parse_int_field(j["tail_from"], "tail_from");
  s.has_limit = j.value("limit", false);
  return s;
}

Json set1_to_json(const Set1& s) {
  Json out = Json::object();
  out["points"] = s.points;
  if (s.tail_start) out["tail_from"] = *s.tail_start;
  out["limit"] = s.has_limit;
  return out;
}

}  // namespace

IdealFunction parse_function(const MaxSpace& space, const Json& j) {
  if (std::holds_alternative<BallSpace>(space) ||
      std::get<OrdinalSpace>(space).rank == 0) {
    if (!j.contains("values") || !j["values"].is_array())
      throw InputError("discrete functions need a values array");
    std::vector<i64> vals;
    for (const auto& v : j["values"])
      vals.push_back(parse_int_field(v, "value"));
    return IdealFunction::dense(space, std::move(vals));
  }
  if (std::get<OrdinalSpace>(space).rank == 1)
    return IdealFunction(space, parse_seq1(j));
  return IdealFunction(space, parse_seq2(j));
}

Json function_to_json(const IdealFunction& f) {
  if (const auto* d = std::get_if<DenseFn>(&f.payload())) {
    Json out = Json::object();
    out["values"] = d->values;
    return out;
  }
  if (const auto* s1 = std::get_if<Seq1Fn>(&f.payload()))
    return seq1_to_json(*s1);
  return seq2_to_json(std::get<Seq2Fn>(f.payload()));
}

PointSet parse_point_set(const MaxSpace& space, const Json& j) {
  if (std::holds_alternative<BallSpace>(space) ||
      std::get<OrdinalSpace>(space).rank == 0) {
    IndexSet s;
    for (const auto& p : j.value("points", Json::array())) {
      if (p.is_string())
        s.points.push_back(parse_point(space, p.get<std::string>()).a);
      else
        s.points.push_back(parse_int_field(p, "point"));
    }
    return canonical(space, PointSet{std::move(s)});
  }
  if (std::get<OrdinalSpace>(space).rank == 1)
    return canonical(space, PointSet{parse_set1(j)});
  Set2 s;
  for (const auto& b : j.value("blocks", Json::array())) {
    if (!b.is_array() || b.size() != 2)
      throw InputError("block entries are [index, set] pairs");
    s.blocks.emplace_back(parse_int_field(b[0], "block index"),
                          parse_set1(b[1]));
  }
  if (j.contains("germ")) s.germ = parse_set1(j["germ"]);
  s.has_top = j.value("top", false);
  return canonical(space, PointSet{std::move(s)});
}

Json point_set_to_json(const MaxSpace& space, const PointSet& s) {
  if (const auto* v = std::get_if<IndexSet>(&s)) {
    Json out = Json::object();
    Json pts = Json::array();
    for (i64 p : v->points) pts.push_back(point_label(space, Point::index(p)));
    out["points"] = std::move(pts);
    return out;
  }
  if (const auto* v1 = std::get_if<Set1>(&s)) return set1_to_json(*v1);
  const auto& v2 = std::get<Set2>(s);
  Json out = Json::object();
  Json blocks = Json::array();
  for (const auto& [i, bs] : v2.blocks)
    blocks.push_back(Json::array({i, set1_to_json(bs)}));
  out["blocks"] = std::move(blocks);
  if (!v2.germ.empty()) out["germ"] = set1_to_json(v2.germ);
  out["top"] = v2.has_top;
  return out;
}

EIdeal parse_eideal(const std::shared_ptr<const FiniteTreeSpectrum>& spec,
                    const Json& j) {
  const Json& coords = j.contains("coords") ? j["coords"] : j;
  if (!coords.is_object())
    throw InputError("an ideal file is a {prime: exponent} object");
  std::map<PrimeId, long long> c;
  for (const auto& [key, val] : coords.items())
    c[key] = parse_int_field(val, "exponent");
  return make_ideal(spec, std::move(c));
}

Json eideal_to_json(const EIdeal& i) {
  Json coords = Json::object();
  for (const auto& [p, c] : i.coords) coords[p] = c;
  Json out = Json::object();
  out["coords"] = std::move(coords);
  return out;
}

Model parse_model(const Json& j) {
  Model m;
  m.kind = j.value("kind", "");
  if (m.kind == "finite_tree") {
    std::vector<PrimeId> nodes;
    for (const auto& n : j.value("nodes", Json::array()))
      nodes.push_back(n.get<std::string>());
    std::map<PrimeId, PrimeId> parents;
    if (j.contains("parents"))
      for (const auto& [k, v] : j["parents"].items())
        parents[k] = v.get<std::string>();
    m.tree = std::make_shared<FiniteTreeSpectrum>(std::move(nodes),
                                                  std::move(parents));
    return m;
  }

  MaxSpace space;
  if (m.kind == "ordinal") {
    int rank = j.value("rank", 0);
    if (rank < 0 || rank > 2)
      throw InputError("ordinal rank must be 0, 1 or 2");
    space = OrdinalSpace{rank, j.value("points", i64{0})};
  } else if (m.kind == "ball") {
    BallSpace b{j.value("p", i64{2}), j.value("depth", 0)};
    if (b.p < 2) throw NotPrime(b.p);
    for (i64 d = 2; d * d <= b.p; ++d)
      if (b.p % d == 0) throw NotPrime(b.p);
    if (b.depth < 0) throw InputError("depth must be >= 0");
    space = b;
  } else {
    throw InputError("model kind must be finite_tree, ordinal or ball");
  }

  PresentedGroup g;
  g.space = space;
  if (j.contains("group")) {
    const Json& gj = j["group"];
    g.base = parse_base_family(gj.value("base", "none"));
    for (const auto& genj : gj.value("generators", Json::array())) {
      if (genj.contains("name"))
        g.generator_names.push_back(genj["name"].get<std::string>());
      else
        g.generator_names.push_back("g" + std::to_string(g.generators.size()));
      g.generators.push_back(parse_function(space, genj));
    }
    for (const auto& lj : gj.value("lifts", Json::array()))
      g.lifts.push_back(parse_function(space, lj));
    for (const auto& sj : gj.value("samples", Json::array()))
      g.samples.push_back(parse_point_set(space, sj));
  }
  m.group = normalize_group(std::move(g));
  return m;
}

Model load_model(const std::string& path) {
  return parse_model(load_json_file(path));
}

}  // namespace invx
