#include <doctest.h>

#include <random>
#include <set>

#include "invx/factorization.hpp"

using namespace invx;

namespace {

const MaxSpace os1 = OrdinalSpace{1, 0};
const MaxSpace os2 = OrdinalSpace{2, 0};
const MaxSpace bs1 = BallSpace{2, 2};

// random continuous nonnegative functions per backend
IdealFunction random_continuous(const MaxSpace& space, std::mt19937_64& rng,
                                i64 hi = 8) {
  std::uniform_int_distribution<i64> val(0, hi);
  if (auto n = finite_size(space)) {
    std::vector<i64> vals;
    for (i64 k = 0; k < *n; ++k) vals.push_back(val(rng));
    return IdealFunction::dense(space, std::move(vals));
  }
  const auto& o = std::get<OrdinalSpace>(space);
  std::uniform_int_distribution<int> count(0, 4);
  std::uniform_int_distribution<i64> idx(1, 9);
  auto random_seq1 = [&](i64 eventual) {
    Seq1Fn f;
    std::set<i64> used;
    int n = count(rng);
    for (int k = 0; k < n; ++k) used.insert(idx(rng));
    for (i64 j : used) f.exceptions.emplace_back(j, val(rng));
    f.tail = Affine{0, eventual};
    f.at_limit = eventual;
    return f;
  };
  if (o.rank == 1) return IdealFunction(space, random_seq1(val(rng)));
  Seq2Fn f;
  i64 top = val(rng);
  std::set<i64> blocks;
  int nb = count(rng);
  for (int k = 0; k < nb; ++k) blocks.insert(idx(rng));
  for (i64 i : blocks) f.blocks.emplace_back(i, random_seq1(val(rng)));
  f.germ.tail = Affine{0, top};
  f.germ.at_limit = Affine{0, top};
  f.at_top = top;
  return IdealFunction(space, f);
}

void check_factorization(const MaxSpace& space, const IdealFunction& f) {
  RadicalFactorization direct = factor_radical(f);
  RadicalFactorization recursive = factor_recursive(f);
  REQUIRE(direct.factors.size() == recursive.factors.size());
  for (size_t k = 0; k < direct.factors.size(); ++k)
    CHECK(direct.factors[k] == recursive.factors[k]);
  // descending clopen chain
  for (const auto& x : direct.factors) CHECK(is_clopen(space, x));
  for (size_t k = 0; k + 1 < direct.factors.size(); ++k)
    CHECK(set_subset(space, direct.factors[k + 1], direct.factors[k]));
  CHECK(static_cast<i64>(direct.factors.size()) ==
        (f.is_zero() ? 0 : f.max_value()));
  // exact pointwise sum
  CHECK(factorization_sum(space, direct) == f);
}

}  // namespace

TEST_CASE("ball fixture factors into the expected descending chain") {
  IdealFunction f = IdealFunction::dense(bs1, {2, 1, 0, 3});
  RadicalFactorization fact = factor_radical(f);
  REQUIRE(fact.factors.size() == 3);
  CHECK(fact.factors[0] == PointSet{IndexSet{{0, 1, 3}}});
  CHECK(fact.factors[1] == PointSet{IndexSet{{0, 3}}});
  CHECK(fact.factors[2] == PointSet{IndexSet{{3}}});
  check_factorization(bs1, f);
}

TEST_CASE("a characteristic function is its own factorization") {
  PointSet tail{Set1{{}, 5, true}};
  IdealFunction chi = IdealFunction::chi(os1, tail);
  RadicalFactorization fact = factor_radical(chi);
  REQUIRE(fact.factors.size() == 1);
  CHECK(fact.factors[0] == canonical(os1, tail));
  RadicalFactorization rec = factor_recursive(chi);
  REQUIRE(rec.factors.size() == 1);
  CHECK(rec.factors[0] == fact.factors[0]);
}

TEST_CASE("zero factors into the empty list") {
  CHECK(factor_recursive(IdealFunction::zero(bs1)).factors.empty());
  CHECK(factor_radical(IdealFunction::zero(os1)).factors.empty());
}

TEST_CASE("the non-continuous generator cannot be factored") {
  IdealFunction f(os1, Seq1Fn{{}, Affine{1, 0}, 1});
  CHECK_THROWS_AS(factor_radical(f), NotContinuous);
  CHECK_THROWS_AS(factor_recursive(f), NotContinuous);
}

TEST_CASE("radical_of on the fixtures") {
  IdealFunction ball = IdealFunction::dense(bs1, {2, 1, 0, 3});
  CHECK(radical_of(ball) == IdealFunction::dense(bs1, {1, 1, 0, 1}));

  // the generator is lsc with clopen cozero closure [1, inf]
  IdealFunction f(os1, Seq1Fn{{}, Affine{1, 0}, 1});
  IdealFunction r = radical_of(f);
  CHECK(r == IdealFunction::chi(os1, PointSet{Set1{{}, 1, true}}));

  // 2 at the first point of every block, 0 elsewhere: the cozero closure
  // picks up the top point but contains no full block tail, so it is closed
  // and not open
  Seq2Fn pattern;
  pattern.germ.exceptions.emplace_back(1, Affine{0, 2});
  IdealFunction g(os2, pattern);
  REQUIRE(g.is_nonneg());
  REQUIRE(g.is_lsc());
  CHECK_THROWS_AS(radical_of(g), RadicalNotFinitelyGenerated);
}

TEST_CASE("factorization soundness on random continuous functions") {
  std::mt19937_64 rng(4242);
  for (const MaxSpace& space :
       {MaxSpace{OrdinalSpace{0, 6}}, os1, os2, bs1}) {
    for (int round = 0; round < 100; ++round) {
      IdealFunction f = random_continuous(space, rng);
      REQUIRE(f.is_continuous());
      check_factorization(space, f);
    }
  }
}

TEST_CASE("equivalence: radical_of and factor_radical succeed together") {
  std::mt19937_64 rng(4243);
  for (int round = 0; round < 50; ++round) {
    IdealFunction f = random_continuous(bs1, rng);
    CHECK(f.is_continuous());
    CHECK_NOTHROW(radical_of(f));
    CHECK_NOTHROW(factor_radical(f));
  }
}
