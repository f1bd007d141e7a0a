#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "invx/ideal_function.hpp"
#include "invx/term_scan.hpp"

namespace invx {

/// Base family of a presented group: nothing, all finitely supported
/// functions on isolated points, or all continuous compactly supported
/// functions.
enum class BaseFamily { none, cc_isolated, cc_full };

std::string base_family_name(BaseFamily b);
BaseFamily parse_base_family(const std::string& s);

/// A presented model of the group of ideal functions with support in the
/// space: an ℓ-group generated by finitely many nonnegative lower
/// semicontinuous generators over a base family.
struct PresentedGroup {
  MaxSpace space;
  BaseFamily base = BaseFamily::none;
  std::vector<IdealFunction> generators;
  std::vector<std::string> generator_names;
  std::vector<IdealFunction> lifts;    // declared section lifts
  std::vector<PointSet> samples;       // sample clopens for density checks
};

/// Fills default generator names and lifts, checks generator spaces.
PresentedGroup normalize_group(PresentedGroup g);

struct SearchBudget {
  i64 max_coefficient = 4;
  int max_term_depth = 3;
};

/// ℓ-group term over the generators: an integer linear combination leaf, or
/// a meet/join/add of two subterms.
struct Term {
  enum class Kind { lincomb, meet, join, add };
  Kind kind = Kind::lincomb;
  std::vector<i64> coeffs;
  std::shared_ptr<const Term> lhs, rhs;

  static Term lincomb(std::vector<i64> coeffs);
  static Term zero();
  static Term node(Kind k, Term a, Term b);
};

/// Prefix syntax over generator labels: ZERO, g1, (SCALE -2 g0),
/// (MEET t t), (JOIN t t), (ADD t t).
std::string print_term(const Term& t, const std::vector<std::string>& names);
Term parse_term(const std::string& text, const std::vector<std::string>& names);
IdealFunction eval_term(const Term& t, const PresentedGroup& g);

/// A membership witness: the queried function equals the term plus the base
/// part, and the base part lies in the group's base family.
struct MemberCertificate {
  Term term;
  IdealFunction base_part;
};

IdealFunction certificate_value(const PresentedGroup& g,
                                const MemberCertificate& cert);
/// Re-checks a certificate against the claim it was issued for.
bool revalidate_membership(const PresentedGroup& g, const IdealFunction& f,
                           const MemberCertificate& cert);

struct MembershipVerdict {
  enum class Kind { member, non_member_within_budget, unknown };
  Kind kind = Kind::unknown;
  std::optional<MemberCertificate> certificate;
  SearchBudget budget;
  bool exact = false;  // verdict does not depend on the budget
};

/// All distinct term values reachable within the budget, in a deterministic
/// order (small coefficients first, then increasing meet/join nesting).
struct CandidatePool {
  std::vector<Term> terms;
  std::vector<IdealFunction> values;
  bool truncated = false;
};

CandidatePool enumerate_terms(const PresentedGroup& g, const SearchBudget& b,
                              std::size_t cap = 50000);

/// Bounded search for f in the presented group. On cc_full bases membership
/// is decided exactly through continuity.
MembershipVerdict group_membership(const PresentedGroup& g,
                                   const IdealFunction& f,
                                   const SearchBudget& budget,
                                   ScanPolicy policy = ScanPolicy::automatic);

struct ModelValidation {
  bool pass = true;
  std::vector<std::string> issues;
  int sampled_terms = 0;
};

/// Checks the model axioms: generators nonnegative, lower semicontinuous,
/// with well-formed compact support; samples term combinations and flags any
/// nonnegative element that fails lower semicontinuity.
ModelValidation validate_model(const PresentedGroup& g,
                               const SearchBudget& budget = SearchBudget{2, 2});

}  // namespace invx
