#pragma once

#include "invx/ideal_function.hpp"

namespace invx {

/// A radical factorization of a nonnegative continuous function f: a
/// descending chain of clopen sets X_1 ⊇ ... ⊇ X_s with
/// f = chi_{X_1} + ... + chi_{X_s} pointwise, s = max f.
struct RadicalFactorization {
  std::vector<PointSet> factors;
};

/// chi of the cozero closure of a nonnegative lsc function, when that closure
/// is clopen; errors with RadicalNotFinitelyGenerated otherwise.
IdealFunction radical_of(const IdealFunction& f);

/// Level-set factorization X_t = f^{-1}([t, inf)), t = 1..max f. Requires
/// f >= 0 continuous; errors with NotContinuous otherwise.
RadicalFactorization factor_radical(const IdealFunction& f);

/// Factorization by repeatedly splitting off the radical. Must agree with
/// factor_radical on every input.
RadicalFactorization factor_recursive(const IdealFunction& f);

/// Sum of the chi's of the factors; the factorization soundness check.
IdealFunction factorization_sum(const MaxSpace& space,
                                const RadicalFactorization& fact);

}  // namespace invx
