#include "invx/factorization.hpp"

namespace invx {

IdealFunction radical_of(const IdealFunction& f) {
  if (!f.is_nonneg() || !f.is_lsc())
    throw InputError("radical_of requires a nonnegative lsc function");
  PointSet supp = f.support();
  if (!is_open(f.space(), supp)) throw RadicalNotFinitelyGenerated();
  return IdealFunction::chi(f.space(), supp);
}

RadicalFactorization factor_radical(const IdealFunction& f) {
  if (!f.is_nonneg())
    throw InputError("factor_radical requires a nonnegative function");
  if (!f.is_continuous()) throw NotContinuous();
  RadicalFactorization out;
  i64 s = f.max_value();
  for (i64 t = 1; t <= s; ++t) out.factors.push_back(f.level_set(t));
  return out;
}

RadicalFactorization factor_recursive(const IdealFunction& f) {
  if (!f.is_nonneg())
    throw InputError("factor_recursive requires a nonnegative function");
  if (!f.is_continuous()) throw NotContinuous();
  RadicalFactorization out;
  IdealFunction rest = f;
  while (!rest.is_zero()) {
    IdealFunction r = radical_of(rest);
    out.factors.push_back(rest.support());
    rest = sub(rest, r);
  }
  return out;
}

IdealFunction factorization_sum(const MaxSpace& space,
                                const RadicalFactorization& fact) {
  IdealFunction acc = IdealFunction::zero(space);
  for (const auto& x : fact.factors)
    acc = add(acc, IdealFunction::chi(space, x));
  return acc;
}

}  // namespace invx
