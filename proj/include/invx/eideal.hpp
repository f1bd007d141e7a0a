#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "invx/finite_tree.hpp"
#include "invx/term_scan.hpp"

namespace invx {

using LexVector = std::vector<long long>;

/// Lexicographic comparison, most significant entry first.
int lex_compare(const LexVector& a, const LexVector& b);

/// An invertible fractional ideal of a strongly discrete Prüfer domain with
/// finite tree spectrum, encoded as one integer exponent per nonzero prime.
/// The localization at a maximal ideal M reads off the exponents along the
/// chain from the root to M, most significant first.
struct EIdeal {
  std::shared_ptr<const FiniteTreeSpectrum> spectrum;
  std::map<PrimeId, long long> coords;  // absent = 0; keys are nonzero primes

  long long coord(const PrimeId& p) const {
    auto it = coords.find(p);
    return it == coords.end() ? 0 : it->second;
  }
};

EIdeal make_ideal(std::shared_ptr<const FiniteTreeSpectrum> spec,
                  std::map<PrimeId, long long> coords);
EIdeal unit_ideal(std::shared_ptr<const FiniteTreeSpectrum> spec);

void require_same_spectrum(const EIdeal& a, const EIdeal& b);

LexVector localize(const EIdeal& i, const PrimeId& m);

/// Closure under specialization of the primes with nonzero exponent; V(I) for
/// integral ideals.
PrimeSet support(const EIdeal& i);
bool is_integral(const EIdeal& i);
/// Minimal primes of the support.
PrimeSet minimal_primes(const EIdeal& i);
/// I contains J as fractional ideals, i.e. J has lex-larger localizations.
bool contains(const EIdeal& i, const EIdeal& j);

EIdeal product(const EIdeal& a, const EIdeal& b);
EIdeal inverse_of(const EIdeal& a);
/// Ideal sum I + J: per-maximal lex-min, re-encoded into coordinates.
EIdeal ideal_sum(const EIdeal& a, const EIdeal& b);
/// Ideal intersection: per-maximal lex-max, re-encoded.
EIdeal ideal_intersect(const EIdeal& a, const EIdeal& b);

/// I = J * L^{-1} with J, L integral and supports inside supp(I).
struct JlDecomposition {
  EIdeal j;
  EIdeal l;
};
JlDecomposition jl_decompose(const EIdeal& i);

/// Deletes a splitting set from the spectrum; the new spectrum carries the
/// surviving primes (the root always survives as the zero ideal).
struct NagataTransform {
  std::shared_ptr<const FiniteTreeSpectrum> spectrum;
  std::map<PrimeId, PrimeId> correspondence;  // surviving prime -> image
};
NagataTransform nagata_transform(
    const std::shared_ptr<const FiniteTreeSpectrum>& spec, const PrimeSet& x);

/// Extension of an ideal along a transform: coordinates restricted to the
/// surviving primes.
EIdeal extend(const EIdeal& i, const NagataTransform& t);

struct QuotientReport {
  bool pass = true;
  long long rank_inv_x = 0;
  long long rank_omega = 0;
  long long total_rank = 0;  // nonzero primes of the original spectrum
  long long enumerated = 0;  // ideals visited by the structure checks
  std::vector<std::string> issues;
};

/// Verifies that the support-in-X ideals form a convex subgroup whose
/// quotient is the invertible-ideal group of the transform: closure under
/// product/inverse, convexity over enumerated small-coordinate ideals, the
/// kernel description of the extension map, and rank additivity.
QuotientReport quotient_check(
    const std::shared_ptr<const FiniteTreeSpectrum>& spec, const PrimeSet& x,
    long long coord_bound = 1, ScanPolicy policy = ScanPolicy::automatic);

struct VOpsReport {
  EIdeal colon;      // (D : I) = I^{-1}
  EIdeal v_closure;  // I^v = I for invertible ideals
  bool v_invertible = true;
  bool support_in_max = false;       // hypothesis of the v-invertibility lemma
  bool div_x_equals_inv_x = true;    // finite spectra are already complete
  EIdeal inv_x_witness;              // some J with supp(J) in X and J inside I
};
VOpsReport v_ops(const EIdeal& i);

/// An integral J with I inside J inside M whose minimal primes avoid Min(I).
EIdeal minimal_jump(const EIdeal& i, const PrimeId& m);

}  // namespace invx
