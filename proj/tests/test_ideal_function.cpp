#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "invx/ideal_function.hpp"

using namespace invx;

namespace {

const MaxSpace os1 = OrdinalSpace{1, 0};
const MaxSpace os2 = OrdinalSpace{2, 0};
const MaxSpace bs1 = BallSpace{2, 2};

IdealFunction os1_generator() {
  return IdealFunction(os1, Seq1Fn{{}, Affine{1, 0}, 1});
}

IdealFunction os2_generator() {
  Seq2Fn g;
  g.germ.tail = Affine{1, 0};
  g.germ.at_limit = Affine{1, 0};
  g.at_top = 1;
  return IdealFunction(os2, g);
}

std::vector<Point> sample_points_rank1() {
  std::vector<Point> pts;
  for (i64 j = 1; j <= 40; ++j) pts.push_back(Point::isolated(j));
  pts.push_back(Point::isolated(97));
  pts.push_back(Point::limit());
  return pts;
}

std::vector<Point> sample_points_rank2() {
  std::vector<Point> pts;
  for (i64 i : {1, 2, 3, 7, 20})
    for (i64 j : {1, 2, 3, 11, 30}) pts.push_back(Point::isolated2(i, j));
  for (i64 i : {1, 2, 3, 7, 20}) pts.push_back(Point::block_limit(i));
  pts.push_back(Point::top());
  return pts;
}

std::vector<i64> distinct_indices(std::mt19937_64& rng, int max_count, i64 lo,
                                  i64 hi) {
  std::uniform_int_distribution<int> count(0, max_count);
  std::uniform_int_distribution<i64> idx(lo, hi);
  std::set<i64> out;
  int n = count(rng);
  for (int k = 0; k < n; ++k) out.insert(idx(rng));
  return {out.begin(), out.end()};
}

IdealFunction random_rank1(std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> small(-3, 3);
  Seq1Fn f;
  for (i64 j : distinct_indices(rng, 3, 1, 8))
    f.exceptions.emplace_back(j, small(rng));
  f.tail = Affine{small(rng), small(rng)};
  f.at_limit = small(rng);
  return IdealFunction(os1, f);
}

IdealFunction random_rank2(std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> small(-3, 3);
  Seq2Fn f;
  for (i64 i : distinct_indices(rng, 2, 1, 5)) {
    Seq1Fn b;
    for (i64 j : distinct_indices(rng, 2, 1, 5))
      b.exceptions.emplace_back(j, small(rng));
    b.tail = Affine{small(rng), small(rng)};
    b.at_limit = small(rng);
    f.blocks.emplace_back(i, b);
  }
  for (i64 j : distinct_indices(rng, 2, 1, 5))
    f.germ.exceptions.emplace_back(j, Affine{small(rng), small(rng)});
  f.germ.tail = Affine{small(rng), small(rng)};
  f.germ.at_limit = Affine{small(rng), small(rng)};
  f.at_top = small(rng);
  return IdealFunction(os2, f);
}

IdealFunction random_lsc_rank1(std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> nonneg(0, 3);
  std::uniform_int_distribution<i64> slope(0, 2);
  Seq1Fn f;
  for (i64 j : distinct_indices(rng, 3, 1, 8))
    f.exceptions.emplace_back(j, nonneg(rng));
  i64 a = slope(rng), b = nonneg(rng);
  f.tail = Affine{a, b};
  // keep the limit below the eventual tail so the result is lsc
  f.at_limit = a > 0 ? nonneg(rng) : std::min(b, nonneg(rng));
  return IdealFunction(os1, f);
}

}  // namespace

TEST_CASE("eval matches the pointwise definition of the generator") {
  IdealFunction f = os1_generator();
  for (i64 n = 1; n <= 30; ++n) CHECK(f.eval(Point::isolated(n)) == n);
  CHECK(f.eval(Point::isolated(4)) == 4);
  CHECK(f.eval(Point::limit()) == 1);
  IdealFunction z = IdealFunction::zero(os1);
  CHECK(z.eval(Point::isolated(5)) == 0);
  CHECK(z.eval(Point::limit()) == 0);
  CHECK_THROWS_AS(f.eval(Point::isolated(0)), UnknownPoint);
  CHECK_THROWS_AS(f.eval(Point::index(1)), UnknownPoint);
}

TEST_CASE("eval matches the pointwise definition on the rank-2 generator") {
  IdealFunction g = os2_generator();
  for (i64 i : {1, 2, 9})
    for (i64 j : {1, 3, 17}) CHECK(g.eval(Point::isolated2(i, j)) == j);
  for (i64 i : {1, 2, 9}) CHECK(g.eval(Point::block_limit(i)) == i);
  CHECK(g.eval(Point::top()) == 1);
}

TEST_CASE("componentwise arithmetic on ball functions") {
  IdealFunction f = IdealFunction::dense(bs1, {2, 1, 0, 3});
  IdealFunction g = IdealFunction::dense(bs1, {0, 1, 1, 1});
  CHECK(add(f, g) == IdealFunction::dense(bs1, {2, 2, 1, 4}));
  CHECK(meet(f, g) == IdealFunction::dense(bs1, {0, 1, 0, 1}));
  CHECK(join(f, g) == IdealFunction::dense(bs1, {2, 1, 1, 3}));
  CHECK_THROWS_AS(add(f, IdealFunction::zero(os1)), BackendMismatch);
}

TEST_CASE("inverse law on the generator") {
  IdealFunction f = os1_generator();
  CHECK(add(f, negate(f)).is_zero());
}

TEST_CASE("meet with a point mass, checked by eval at points 1..10 and inf") {
  IdealFunction f = os1_generator();
  IdealFunction g = IdealFunction(os1, Seq1Fn{{{3, 1}}, Affine{0, 0}, 0});
  IdealFunction m = meet(f, g);
  for (i64 n = 1; n <= 10; ++n)
    CHECK(m.eval(Point::isolated(n)) == (n == 3 ? 1 : 0));
  CHECK(m.eval(Point::limit()) == 0);
}

TEST_CASE("pointwise additivity and lattice laws on random descriptors") {
  std::mt19937_64 rng(611);
  auto pts1 = sample_points_rank1();
  auto pts2 = sample_points_rank2();
  for (int round = 0; round < 200; ++round) {
    bool rank2 = round % 2;
    IdealFunction a = rank2 ? random_rank2(rng) : random_rank1(rng);
    IdealFunction b = rank2 ? random_rank2(rng) : random_rank1(rng);
    IdealFunction c = rank2 ? random_rank2(rng) : random_rank1(rng);
    const auto& pts = rank2 ? pts2 : pts1;
    IdealFunction sum = add(a, b);
    IdealFunction mn = meet(a, b);
    IdealFunction mx = join(a, b);
    for (const auto& x : pts) {
      CHECK(sum.eval(x) == a.eval(x) + b.eval(x));
      CHECK(mn.eval(x) == std::min(a.eval(x), b.eval(x)));
      CHECK(mx.eval(x) == std::max(a.eval(x), b.eval(x)));
    }
    // algebraic laws as canonical identities
    CHECK(add(a, b) == add(b, a));
    CHECK(add(add(a, b), c) == add(a, add(b, c)));
    CHECK(add(a, IdealFunction::zero(a.space())) == a);
    CHECK(add(a, negate(a)).is_zero());
    CHECK(meet(a, b) == meet(b, a));
    CHECK(join(mn, a) == a);  // absorption
    CHECK(meet(mx, a) == a);
    // translation invariance of the lattice order
    CHECK(add(meet(a, b), c) == meet(add(a, c), add(b, c)));
  }
}

TEST_CASE("structural equality decides extensional equality") {
  std::mt19937_64 rng(612);
  auto pts = sample_points_rank1();
  for (int round = 0; round < 300; ++round) {
    IdealFunction a = random_rank1(rng);
    IdealFunction b = random_rank1(rng);
    bool same_everywhere = true;
    for (const auto& x : pts)
      if (a.eval(x) != b.eval(x)) same_everywhere = false;
    if (a == b) {
      CHECK(same_everywhere);
    } else {
      // differing canonical descriptors must differ at some sample point;
      // tails are affine so disagreement shows up within the sample range
      CHECK_FALSE(same_everywhere);
    }
  }
}

TEST_CASE("support of the generator is the whole space") {
  IdealFunction f = os1_generator();
  PointSet s = f.support();
  CHECK(s == whole_set(os1));
  CHECK(IdealFunction::zero(os1).support() == empty_set(os1));
  IdealFunction ball = IdealFunction::dense(bs1, {2, 0, 0, 0});
  CHECK(ball.support() == PointSet{IndexSet{{0}}});
}

TEST_CASE("support subadditivity under products") {
  std::mt19937_64 rng(613);
  for (int round = 0; round < 100; ++round) {
    IdealFunction a = random_rank1(rng);
    IdealFunction b = random_rank1(rng);
    PointSet sa = a.support();
    PointSet sb = b.support();
    PointSet sum_supp = add(a, b).support();
    CHECK(set_subset(os1, sum_supp, set_union(os1, sa, sb)));
  }
}

TEST_CASE("semicontinuity on the fixture functions") {
  IdealFunction f = os1_generator();
  CHECK(f.is_lsc());
  CHECK_FALSE(f.is_continuous());
  CHECK_FALSE(f.is_bounded());

  IdealFunction chi_tail =
      IdealFunction::chi(os1, PointSet{Set1{{}, 5, true}});
  CHECK(chi_tail.is_lsc());
  CHECK(chi_tail.is_continuous());
  CHECK(chi_tail.is_bounded());
  CHECK(chi_tail.sup_norm() == 1);

  IdealFunction bad = IdealFunction(os1, Seq1Fn{{}, Affine{0, 0}, 1});
  CHECK_FALSE(bad.is_lsc());

  CHECK(IdealFunction::zero(os1).is_bounded());
  CHECK(IdealFunction::zero(os1).sup_norm() == 0);
}

TEST_CASE("rank-2 semicontinuity follows the germ") {
  IdealFunction g = os2_generator();
  CHECK(g.is_lsc());
  CHECK_FALSE(g.is_continuous());
  CHECK_FALSE(g.is_bounded());

  // a constant function is continuous
  Seq2Fn c;
  c.germ.tail = Affine{0, 2};
  c.germ.at_limit = Affine{0, 2};
  c.at_top = 2;
  IdealFunction cf(os2, c);
  CHECK(cf.is_continuous());
  CHECK(cf.is_bounded());

  // value 1 on every block limit but 0 inside the blocks: not lsc at l_i
  Seq2Fn d;
  d.germ.at_limit = Affine{0, 1};
  d.at_top = 1;
  IdealFunction df(os2, d);
  CHECK_FALSE(df.is_lsc());
}

TEST_CASE("lsc functions are closed under add, meet and join") {
  std::mt19937_64 rng(614);
  for (int round = 0; round < 150; ++round) {
    IdealFunction a = random_lsc_rank1(rng);
    IdealFunction b = random_lsc_rank1(rng);
    REQUIRE(a.is_lsc());
    REQUIRE(b.is_lsc());
    CHECK(add(a, b).is_lsc());
    CHECK(meet(a, b).is_lsc());
    CHECK(join(a, b).is_lsc());
  }
}

TEST_CASE("radical functions are 0/1 with clopen cozero") {
  IdealFunction chi_tail =
      IdealFunction::chi(os1, PointSet{Set1{{}, 5, true}});
  CHECK(chi_tail.is_radical());

  IdealFunction point_mass = IdealFunction(os1, Seq1Fn{{{3, 1}}, {}, 0});
  CHECK(point_mass.is_radical());

  // 1 exactly at even indices >= 5 and 1 at the limit: not clopen
  Seq1Fn evens;
  evens.at_limit = 1;
  for (i64 j = 1; j < 50; ++j)
    if (j >= 5 && j % 2 == 0) evens.exceptions.emplace_back(j, 1);
  // beyond the materialized window the pattern keeps failing either way:
  // the tail is 0 while the limit is 1, so the cozero set is not open
  IdealFunction ef(os1, evens);
  CHECK_FALSE(ef.is_radical());

  IdealFunction two = IdealFunction::dense(bs1, {2, 0, 0, 0});
  CHECK_FALSE(two.is_radical());
}

TEST_CASE("finitely supported residuals") {
  IdealFunction point_mass = IdealFunction(os1, Seq1Fn{{{3, 2}}, {}, 0});
  CHECK(point_mass.finitely_supported_on_isolated());
  CHECK_FALSE(os1_generator().finitely_supported_on_isolated());
  IdealFunction at_limit = IdealFunction(os1, Seq1Fn{{}, {}, 1});
  CHECK_FALSE(at_limit.finitely_supported_on_isolated());
}

TEST_CASE("archimedean surrogate: multiples escape any bound at a witness") {
  std::mt19937_64 rng(615);
  IdealFunction f = IdealFunction::chi(os1, PointSet{Set1{{}, 3, true}});
  for (int round = 0; round < 50; ++round) {
    IdealFunction g = random_rank1(rng);
    Point witness = Point::isolated(4);
    REQUIRE(f.eval(witness) >= 1);
    i64 k = g.eval(witness) + 1;
    CHECK(scale(k, f).eval(witness) > g.eval(witness));
  }
}

TEST_CASE("chi and level sets at rank 2") {
  Set2 c;
  c.blocks.emplace_back(2, Set1{{}, 3, true});
  PointSet cs{c};
  IdealFunction chi2 = IdealFunction::chi(os2, cs);
  CHECK(chi2.eval(Point::isolated2(2, 5)) == 1);
  CHECK(chi2.eval(Point::isolated2(2, 2)) == 0);
  CHECK(chi2.eval(Point::isolated2(3, 5)) == 0);
  CHECK(chi2.eval(Point::block_limit(2)) == 1);
  CHECK(chi2.eval(Point::top()) == 0);
  CHECK(chi2.is_radical());
  CHECK(chi2.level_set(1) == canonical(os2, cs));
}

TEST_CASE("patching helpers") {
  // the generator has slope 1, so it admits no radical patch
  CHECK_FALSE(radical_up_to_isolated_patch(os1_generator()).has_value());
  // a 0/1 tail with matching limit patches to a characteristic function
  IdealFunction near_chi(os1, Seq1Fn{{{2, 7}, {4, -1}}, Affine{0, 1}, 1});
  auto patched = radical_up_to_isolated_patch(near_chi);
  REQUIRE(patched.has_value());
  CHECK(patched->is_radical());
  CHECK(sub(*patched, near_chi).finitely_supported_on_isolated());

  auto bounded = bounded_nonneg_up_to_isolated_patch(near_chi);
  REQUIRE(bounded.has_value());
  CHECK(bounded->is_bounded());
  CHECK(bounded->is_nonneg());
  // 0/1 tail but limit 0: closed fails, no radical patch
  IdealFunction mismatch(os1, Seq1Fn{{}, Affine{0, 1}, 0});
  CHECK_FALSE(radical_up_to_isolated_patch(mismatch).has_value());
}
