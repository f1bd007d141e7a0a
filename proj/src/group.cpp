#include "invx/group.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace invx {

std::string base_family_name(BaseFamily b) {
  switch (b) {
    case BaseFamily::none:
      return "none";
    case BaseFamily::cc_isolated:
      return "cc_isolated";
    case BaseFamily::cc_full:
      return "cc_full";
  }
  return "?";
}

BaseFamily parse_base_family(const std::string& s) {
  if (s == "none") return BaseFamily::none;
  if (s == "cc_isolated") return BaseFamily::cc_isolated;
  if (s == "cc_full") return BaseFamily::cc_full;
  throw InputError("unknown base family: " + s);
}

PresentedGroup normalize_group(PresentedGroup g) {
  for (const auto& gen : g.generators)
    if (!same_space(gen.space(), g.space)) throw BackendMismatch();
  for (const auto& l : g.lifts)
    if (!same_space(l.space(), g.space)) throw BackendMismatch();
  while (g.generator_names.size() < g.generators.size())
    g.generator_names.push_back("g" + std::to_string(g.generator_names.size()));
  if (g.lifts.empty()) g.lifts = g.generators;
  return g;
}

Term Term::lincomb(std::vector<i64> coeffs) {
  Term t;
  t.kind = Kind::lincomb;
  t.coeffs = std::move(coeffs);
  return t;
}

Term Term::zero() { return lincomb({}); }

Term Term::node(Kind k, Term a, Term b) {
  Term t;
  t.kind = k;
  t.lhs = std::make_shared<Term>(std::move(a));
  t.rhs = std::make_shared<Term>(std::move(b));
  return t;
}

std::string print_term(const Term& t, const std::vector<std::string>& names) {
  if (t.kind == Term::Kind::lincomb) {
    std::vector<std::string> parts;
    for (size_t k = 0; k < t.coeffs.size(); ++k) {
      i64 c = t.coeffs[k];
      if (c == 0) continue;
      std::string name = k < names.size() ? names[k] : "g" + std::to_string(k);
      parts.push_back(c == 1 ? name
                             : "(SCALE " + std::to_string(c) + " " + name + ")");
    }
    if (parts.empty()) return "ZERO";
    std::string out = parts.back();
    for (size_t k = parts.size() - 1; k-- > 0;)
      out = "(ADD " + parts[k] + " " + out + ")";
    return out;
  }
  const char* op = t.kind == Term::Kind::meet  ? "MEET"
                   : t.kind == Term::Kind::join ? "JOIN"
                                                : "ADD";
  return std::string("(") + op + " " + print_term(*t.lhs, names) + " " +
         print_term(*t.rhs, names) + ")";
}

namespace {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == ')') {
      if (!cur.empty()) out.push_back(std::exchange(cur, {}));
      out.push_back(std::string(1, c));
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::exchange(cur, {}));
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct TermParser {
  const std::vector<std::string>& tokens;
  const std::vector<std::string>& names;
  size_t pos = 0;

  std::string next() {
    if (pos >= tokens.size()) throw InputError("unexpected end of term");
    return tokens[pos++];
  }

  Term atom(const std::string& tok) {
    if (tok == "ZERO") return Term::zero();
    auto it = std::find(names.begin(), names.end(), tok);
    if (it == names.end()) throw InputError("unknown generator: " + tok);
    std::vector<i64> coeffs(names.size(), 0);
    coeffs[it - names.begin()] = 1;
    return Term::lincomb(std::move(coeffs));
  }

  Term parse() {
    std::string tok = next();
    if (tok != "(") return atom(tok);
    std::string op = next();
    Term result;
    if (op == "SCALE") {
      i64 c = std::stoll(next());
      Term inner = parse();
      if (inner.kind != Term::Kind::lincomb)
        throw InputError("SCALE applies to generators only");
      for (auto& v : inner.coeffs) v *= c;
      result = std::move(inner);
    } else {
      Term a = parse();
      Term b = parse();
      Term::Kind k = op == "MEET"   ? Term::Kind::meet
                     : op == "JOIN" ? Term::Kind::join
                     : op == "ADD"  ? Term::Kind::add
                                    : throw InputError("unknown operator: " + op);
      // fold lincomb + lincomb back into a single leaf
      if (k == Term::Kind::add && a.kind == Term::Kind::lincomb &&
          b.kind == Term::Kind::lincomb) {
        std::vector<i64> coeffs(names.size(), 0);
        for (size_t i = 0; i < a.coeffs.size(); ++i) coeffs[i] += a.coeffs[i];
        for (size_t i = 0; i < b.coeffs.size(); ++i) coeffs[i] += b.coeffs[i];
        result = Term::lincomb(std::move(coeffs));
      } else {
        result = Term::node(k, std::move(a), std::move(b));
      }
    }
    if (next() != ")") throw InputError("expected ')' in term");
    return result;
  }
};

}  // namespace

Term parse_term(const std::string& text, const std::vector<std::string>& names) {
  auto tokens = tokenize(text);
  TermParser p{tokens, names};
  Term t = p.parse();
  if (p.pos != tokens.size()) throw InputError("trailing tokens in term");
  return t;
}

IdealFunction eval_term(const Term& t, const PresentedGroup& g) {
  if (t.kind == Term::Kind::lincomb) {
    IdealFunction acc = IdealFunction::zero(g.space);
    for (size_t k = 0; k < t.coeffs.size() && k < g.generators.size(); ++k)
      if (t.coeffs[k] != 0)
        acc = add(acc, scale(t.coeffs[k], g.generators[k]));
    return acc;
  }
  IdealFunction a = eval_term(*t.lhs, g);
  IdealFunction b = eval_term(*t.rhs, g);
  switch (t.kind) {
    case Term::Kind::meet:
      return meet(a, b);
    case Term::Kind::join:
      return join(a, b);
    default:
      return add(a, b);
  }
}

IdealFunction certificate_value(const PresentedGroup& g,
                                const MemberCertificate& cert) {
  return add(eval_term(cert.term, g), cert.base_part);
}

namespace {

bool base_accepts(const PresentedGroup& g, const IdealFunction& residual) {
  switch (g.base) {
    case BaseFamily::none:
      return residual.is_zero();
    case BaseFamily::cc_isolated:
      return residual.finitely_supported_on_isolated();
    case BaseFamily::cc_full:
      return residual.is_continuous();
  }
  return false;
}

}  // namespace

bool revalidate_membership(const PresentedGroup& g, const IdealFunction& f,
                           const MemberCertificate& cert) {
  return base_accepts(g, cert.base_part) && certificate_value(g, cert) == f;
}

CandidatePool enumerate_terms(const PresentedGroup& g, const SearchBudget& b,
                              std::size_t cap) {
  if (b.max_coefficient < 1 || b.max_term_depth < 1)
    throw InputError("search budget fields must be >= 1");
  CandidatePool pool;
  std::unordered_set<std::string> seen;
  auto push = [&](Term t, IdealFunction v) {
    if (pool.values.size() >= cap) {
      pool.truncated = true;
      return false;
    }
    if (!seen.insert(v.key()).second) return true;
    pool.terms.push_back(std::move(t));
    pool.values.push_back(std::move(v));
    return true;
  };

  // coefficient order 0, 1, -1, 2, -2, ...
  std::vector<i64> coeff_order{0};
  for (i64 c = 1; c <= b.max_coefficient; ++c) {
    coeff_order.push_back(c);
    coeff_order.push_back(-c);
  }
  size_t n = g.generators.size();
  std::vector<size_t> odo(n, 0);
  while (true) {
    std::vector<i64> coeffs(n);
    for (size_t k = 0; k < n; ++k) coeffs[k] = coeff_order[odo[k]];
    Term t = Term::lincomb(coeffs);
    IdealFunction v = eval_term(t, g);
    if (!push(std::move(t), std::move(v))) return pool;
    size_t k = n;
    while (k > 0 && ++odo[k - 1] == coeff_order.size()) odo[--k] = 0;
    if (k == 0) break;
  }

  size_t level_begin = 0;
  for (int depth = 2; depth <= b.max_term_depth; ++depth) {
    size_t level_end = pool.values.size();
    if (level_begin == level_end) break;
    for (auto kind : {Term::Kind::meet, Term::Kind::join}) {
      for (size_t i = 0; i < level_end; ++i) {
        // at least one operand from the newest level keeps pairs fresh
        for (size_t j = std::max(i, level_begin); j < level_end; ++j) {
          IdealFunction v = kind == Term::Kind::meet
                                ? meet(pool.values[i], pool.values[j])
                                : join(pool.values[i], pool.values[j]);
          Term t = Term::node(kind, pool.terms[i], pool.terms[j]);
          if (!push(std::move(t), std::move(v))) return pool;
        }
      }
    }
    level_begin = level_end;
  }
  return pool;
}

MembershipVerdict group_membership(const PresentedGroup& g,
                                   const IdealFunction& f,
                                   const SearchBudget& budget,
                                   ScanPolicy policy) {
  if (!same_space(g.space, f.space())) throw BackendMismatch();
  MembershipVerdict out;
  out.budget = budget;

  bool gens_continuous = std::all_of(
      g.generators.begin(), g.generators.end(),
      [](const IdealFunction& gen) { return gen.is_continuous(); });

  if (g.base == BaseFamily::cc_full && f.is_continuous()) {
    out.kind = MembershipVerdict::Kind::member;
    out.certificate = MemberCertificate{Term::zero(), f};
    out.exact = true;
    return out;
  }

  CandidatePool pool = enumerate_terms(g, budget);
  i64 hit = scan_first_match(
      static_cast<i64>(pool.values.size()),
      [&](i64 i) { return base_accepts(g, sub(f, pool.values[i])); }, policy);
  if (hit >= 0) {
    out.kind = MembershipVerdict::Kind::member;
    out.certificate = MemberCertificate{pool.terms[hit], sub(f, pool.values[hit])};
    return out;
  }
  if (pool.truncated) {
    out.kind = MembershipVerdict::Kind::unknown;
    return out;
  }
  out.kind = MembershipVerdict::Kind::non_member_within_budget;
  // with a cc_full base and continuous generators, continuity decides
  out.exact = g.base == BaseFamily::cc_full && gens_continuous;
  return out;
}

ModelValidation validate_model(const PresentedGroup& g,
                               const SearchBudget& budget) {
  ModelValidation out;
  auto flag = [&](const std::string& issue) {
    out.pass = false;
    out.issues.push_back(issue);
  };
  for (size_t k = 0; k < g.generators.size(); ++k) {
    const auto& gen = g.generators[k];
    std::string name =
        k < g.generator_names.size() ? g.generator_names[k] : std::to_string(k);
    if (!same_space(gen.space(), g.space)) {
      flag("generator " + name + " lives on a different space");
      continue;
    }
    if (!gen.is_nonneg()) flag("generator " + name + " is not nonnegative");
    if (!gen.is_lsc())
      flag("generator " + name + " is not lower semicontinuous");
    try {
      (void)gen.support();
    } catch (const std::exception& e) {
      flag("generator " + name + " has no well-formed support: " + e.what());
    }
  }
  // sampled closure evidence: nonnegative combinations must stay lsc
  CandidatePool pool = enumerate_terms(g, budget, 2000);
  out.sampled_terms = static_cast<int>(pool.values.size());
  for (size_t i = 0; i < pool.values.size(); ++i) {
    const auto& v = pool.values[i];
    if (v.is_nonneg() && !v.is_lsc())
      flag("nonnegative element " + print_term(pool.terms[i], g.generator_names) +
           " is not lower semicontinuous");
  }
  return out;
}

}  // namespace invx
