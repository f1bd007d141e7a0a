#include <doctest.h>

#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "invx/cli.hpp"
#include "invx/model_io.hpp"

using namespace invx;

namespace {

std::string run_captured(const std::vector<std::string>& args, int* exit_code) {
  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  *exit_code = run_cli(args);
  std::cout.rdbuf(old);
  return captured.str();
}

std::string strip_timing(std::string text) {
  return std::regex_replace(text, std::regex("\"timing_ms\": \\d+"),
                            "\"timing_ms\": X");
}

}  // namespace

TEST_CASE("the shipped fixtures parse") {
  Model ft1 = load_model("models/FT1.json");
  REQUIRE(ft1.tree);
  CHECK(ft1.tree->nodes().size() == 7);
  CHECK(ft1.tree->dim() == 2);

  Model os1 = load_model("models/OS1.json");
  REQUIRE(os1.group);
  CHECK(os1.group->base == BaseFamily::cc_isolated);
  REQUIRE(os1.group->generators.size() == 1);
  const IdealFunction& f = os1.group->generators[0];
  CHECK(f.eval(Point::isolated(4)) == 4);
  CHECK(f.eval(Point::limit()) == 1);
  CHECK(os1.group->samples.size() == 3);
  CHECK(os1.group->lifts.size() == 1);  // defaulted to the generators

  Model os2 = load_model("models/OS2.json");
  REQUIRE(os2.group);
  const IdealFunction& g = os2.group->generators[0];
  CHECK(g.eval(Point::isolated2(3, 7)) == 7);
  CHECK(g.eval(Point::block_limit(3)) == 3);
  CHECK(g.eval(Point::top()) == 1);

  Model bs1 = load_model("models/BS1.json");
  REQUIRE(bs1.group);
  CHECK(bs1.group->base == BaseFamily::cc_full);
  CHECK(std::get<BallSpace>(bs1.group->space).leaf_count() == 4);

  Model intv = load_model("models/INTV.json");
  REQUIRE(intv.group);
  CHECK(std::get<BallSpace>(intv.group->space).leaf_count() == 8);
}

TEST_CASE("malformed models are rejected") {
  CHECK_THROWS_AS(load_model("models/absent.json"), InputError);
  CHECK_THROWS_AS(parse_model(Json{{"kind", "waffle"}}), InputError);
  CHECK_THROWS_AS(parse_model(Json{{"kind", "ordinal"}, {"rank", 7}}),
                  InputError);
  CHECK_THROWS_AS(parse_model(Json{{"kind", "ball"}, {"p", 6}}), NotPrime);
  Json two_roots{{"kind", "finite_tree"}, {"nodes", {"a", "b"}}};
  CHECK_THROWS_AS(parse_model(two_roots), InputError);
}

TEST_CASE("function descriptors round trip through JSON") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<i64> small(-3, 3);
  const MaxSpace os1 = OrdinalSpace{1, 0};
  const MaxSpace os2 = OrdinalSpace{2, 0};
  for (int round = 0; round < 100; ++round) {
    Seq1Fn f;
    std::set<i64> used;
    for (int k = 0; k < round % 4; ++k) used.insert(1 + (rng() % 9));
    for (i64 j : used) f.exceptions.emplace_back(j, small(rng));
    f.tail = Affine{small(rng), small(rng)};
    f.at_limit = small(rng);
    IdealFunction fn(os1, f);
    IdealFunction back = parse_function(os1, function_to_json(fn));
    CHECK(back == fn);
  }
  // rank 2 with an affine germ
  Seq2Fn g;
  g.blocks.emplace_back(2, Seq1Fn{{{1, 4}}, Affine{0, 2}, 2});
  g.germ.exceptions.emplace_back(3, Affine{1, -1});
  g.germ.tail = Affine{1, 0};
  g.germ.at_limit = Affine{2, 1};
  g.at_top = 5;
  IdealFunction gf(os2, g);
  CHECK(parse_function(os2, function_to_json(gf)) == gf);

  const MaxSpace bs1 = BallSpace{2, 2};
  IdealFunction bf = IdealFunction::dense(bs1, {1, -2, 0, 7});
  CHECK(parse_function(bs1, function_to_json(bf)) == bf);
}

TEST_CASE("point sets round trip through JSON") {
  const MaxSpace os2 = OrdinalSpace{2, 0};
  Set2 s;
  s.blocks.emplace_back(1, Set1{{2, 4}, 7, true});
  s.germ = Set1{{}, std::nullopt, true};
  s.has_top = true;
  PointSet ps = canonical(os2, PointSet{s});
  CHECK(parse_point_set(os2, point_set_to_json(os2, ps)) == ps);

  const MaxSpace bs1 = BallSpace{2, 2};
  PointSet leaves = IndexSet{{0, 3}};
  Json j = point_set_to_json(bs1, leaves);
  CHECK(parse_point_set(bs1, j) == leaves);
}

TEST_CASE("eideals round trip through JSON") {
  Model ft1 = load_model("models/FT1.json");
  EIdeal i = make_ideal(ft1.tree, {{"Q1", 1}, {"M1", -2}});
  CHECK(parse_eideal(ft1.tree, eideal_to_json(i)).coords == i.coords);
  CHECK_THROWS_AS(parse_eideal(ft1.tree, Json{{"coords", {{"zz", 1}}}}),
                  UnknownPrime);
  CHECK_THROWS_AS(parse_eideal(ft1.tree, Json{{"coords", {{"r", 1}}}}),
                  InputError);
}

TEST_CASE("cli json output is deterministic up to the timing field") {
  std::vector<std::string> cmd{"sp-rank", "models/OS1.json", "--budget", "5,3",
                               "--json"};
  int code1 = 0, code2 = 0;
  std::string a = strip_timing(run_captured(cmd, &code1));
  std::string b = strip_timing(run_captured(cmd, &code2));
  CHECK(code1 == 0);
  CHECK(code2 == 0);
  CHECK(a == b);
  CHECK(a.find("\"sp_rank\": 2") != std::string::npos);
}

TEST_CASE("cli exit codes distinguish verdicts from input errors") {
  int code = 0;
  run_captured({"layers", "models/FT1.json"}, &code);
  CHECK(code == 0);
  run_captured({"layers", "models/nope.json"}, &code);
  CHECK(code == 2);
  run_captured({"crit", "models/OS1.json", "--point", "zzz"}, &code);
  CHECK(code == 2);
  run_captured({"nagata", "models/FT1.json", "--set", "Q1"}, &code);
  CHECK(code == 2);  // not a splitting set
  run_captured({"crit", "models/OS1.json", "--point", "inf"}, &code);
  CHECK(code == 0);  // a critical verdict is a result, not a failure
}

TEST_CASE("cli factor pipeline on the ball fixture") {
  // write the example function to a temp file, then factor it
  {
    std::ofstream out("build/tmp_ball_fn.json");
    out << R"({"values": [2, 1, 0, 3]})";
  }
  int code = 0;
  std::string text = run_captured({"factor", "models/BS1.json", "--ideal",
                                   "build/tmp_ball_fn.json", "--json"},
                                  &code);
  CHECK(code == 0);
  CHECK(text.find("\"recursive_agrees\": true") != std::string::npos);
  CHECK(text.find("\"sum_matches\": true") != std::string::npos);

  // the omega+1 generator is not continuous: factoring fails with a verdict
  {
    std::ofstream out("build/tmp_gen.json");
    out << R"({"exceptions": [], "tail": "index", "at_limit": 1})";
  }
  std::string text2 = run_captured({"factor", "models/OS1.json", "--ideal",
                                    "build/tmp_gen.json", "--json"},
                                   &code);
  CHECK(code == 1);
  CHECK(text2.find("NotContinuous") != std::string::npos);
}

TEST_CASE("cli jl decomposition on the finite tree") {
  {
    std::ofstream out("build/tmp_ideal.json");
    out << R"({"coords": {"M1": -2, "M4": 3}})";
  }
  int code = 0;
  std::string text = run_captured(
      {"jl", "models/FT1.json", "--ideal", "build/tmp_ideal.json", "--json"},
      &code);
  CHECK(code == 0);
  CHECK(text.find("\"round_trip\": true") != std::string::npos);
  CHECK(text.find("\"M4\": 3") != std::string::npos);
  CHECK(text.find("\"M1\": 2") != std::string::npos);
}

TEST_CASE("certificates printed by the cli re-validate") {
  Model os1 = load_model("models/OS1.json");
  const PresentedGroup& g = *os1.group;
  IdealFunction f = g.generators[0];
  MembershipVerdict v = group_membership(g, f, {5, 3});
  REQUIRE(v.kind == MembershipVerdict::Kind::member);
  std::string printed = print_term(v.certificate->term, g.generator_names);
  Term parsed = parse_term(printed, g.generator_names);
  MemberCertificate round{parsed, v.certificate->base_part};
  CHECK(revalidate_membership(g, f, round));
}

TEST_CASE("cli covers the remaining commands") {
  int code = 0;
  // validate on both backend families
  std::string v1 = run_captured({"validate", "models/OS1.json", "--json"}, &code);
  CHECK(code == 0);
  CHECK(v1.find("\"pass\": true") != std::string::npos);
  run_captured({"validate", "models/FT1.json"}, &code);
  CHECK(code == 0);
  run_captured({"validate", "models/BS1.json"}, &code);
  CHECK(code == 0);

  // bcrit mirrors crit
  std::string b = run_captured(
      {"bcrit", "models/OS1.json", "--point", "inf", "--budget", "5,3",
       "--json"},
      &code);
  CHECK(code == 0);
  CHECK(b.find("CriticalWithinBudget") != std::string::npos);

  // crit-seq on the rank-2 fixture
  std::string cs = run_captured(
      {"crit-seq", "models/OS2.json", "--budget", "5,3", "--json"}, &code);
  CHECK(code == 0);
  CHECK(cs.find("\"sp_rank\": 3") != std::string::npos);

  // nagata on a genuine splitting set
  std::string ng = run_captured(
      {"nagata", "models/FT1.json", "--set", "M1,M2,M3,M4", "--json"}, &code);
  CHECK(code == 0);
  CHECK(ng.find("\"Q1\"") != std::string::npos);
  CHECK(ng.find("\"M1\"") == std::string::npos);

  // radical via the finite-tree bridge
  {
    std::ofstream out("build/tmp_max_ideal.json");
    out << R"({"coords": {"M1": 2, "M3": 1}})";
  }
  std::string rad = run_captured({"radical", "models/FT1.json", "--ideal",
                                  "build/tmp_max_ideal.json", "--json"},
                                 &code);
  CHECK(code == 0);
  CHECK(rad.find("\"radical\"") != std::string::npos);

  // factor through the bridge as well
  std::string fac = run_captured({"factor", "models/FT1.json", "--ideal",
                                  "build/tmp_max_ideal.json", "--json"},
                                 &code);
  CHECK(code == 0);
  CHECK(fac.find("\"sum_matches\": true") != std::string::npos);

  // a non-maximal support is rejected by the bridge
  {
    std::ofstream out("build/tmp_deep_ideal.json");
    out << R"({"coords": {"Q1": 1}})";
  }
  run_captured({"factor", "models/FT1.json", "--ideal",
                "build/tmp_deep_ideal.json"},
               &code);
  CHECK(code == 2);

  // decompose the omega+1 generator
  {
    std::ofstream out("build/tmp_gen2.json");
    out << R"({"exceptions": [], "tail": "index", "at_limit": 1})";
  }
  std::string dec = run_captured({"decompose", "models/OS1.json", "--ideal",
                                  "build/tmp_gen2.json", "--budget", "5,3",
                                  "--json"},
                                 &code);
  CHECK(code == 0);
  CHECK(dec.find("\"components\"") != std::string::npos);
  CHECK(dec.find("\"layer\": 1") != std::string::npos);
}

TEST_CASE("cli reports a non-realizable model with exit 1") {
  {
    std::ofstream out("build/tmp_empty_model.json");
    out << R"({"kind": "ordinal", "rank": 1,
               "group": {"base": "none", "generators": []}})";
  }
  int code = 0;
  std::string text = run_captured(
      {"crit-seq", "build/tmp_empty_model.json", "--json"}, &code);
  CHECK(code == 1);
  CHECK(text.find("ModelViolatesNonCriticality") != std::string::npos);
}

TEST_CASE("decomposing a mixed member splits base part from generator part") {
  Model os1 = load_model("models/OS1.json");
  const PresentedGroup& g = *os1.group;
  IdealFunction chi3(g.space, Seq1Fn{{{3, 1}}, {}, 0});
  IdealFunction f = add(scale(2, g.generators[0]), chi3);
  auto comps = decompose_inv(g, f, {5, 3});
  REQUIRE(comps.size() == 2);
  CHECK(comps[1].component == scale(2, g.generators[0]));
  CHECK(comps[0].component == chi3);
  // the layer-0 component vanishes at the limit stage
  CHECK(comps[0].component.eval(Point::limit()) == 0);
}
