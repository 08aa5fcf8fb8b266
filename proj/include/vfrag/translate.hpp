#pragma once

// Translations from the valued-field language to the ring language with the
// uniformizer w, adding exactly one existential quantifier, and elimination
// of the field inverse from quantifier-free formulas.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vfrag/formula.hpp"
#include "vfrag/normalize.hpp"

namespace vfrag {

/// Exponent used in the membership bundle sum_i y_i^e w^i for N bundled
/// terms: PaperLiteral uses e = N, Corrected uses e = N + 1. Only the
/// latter makes the term valuations e*v(y_i) + i pairwise distinct.
enum class EtaVariant : std::uint8_t { PaperLiteral, Corrected };

inline std::string to_string(EtaVariant v) { return v == EtaVariant::Corrected ? "corrected" : "paper"; }

// Term builders that fold the units 0 and 1.
namespace build {

inline Term add(const Term& a, const Term& b) {
  if (a.is_int(0)) return b;
  if (b.is_int(0)) return a;
  return Term::add(a, b);
}
inline Term sub(const Term& a, const Term& b) {
  if (b.is_int(0)) return a;
  return Term::sub(a, b);
}
inline Term mul(const Term& a, const Term& b) {
  if (a.is_int(0) || b.is_int(0)) return Term::integer(0);
  if (a.is_int(1)) return b;
  if (b.is_int(1)) return a;
  return Term::mul(a, b);
}
inline Term pow(const Term& a, unsigned e) {
  if (e == 0) return Term::integer(1);
  Term r = a;
  for (unsigned i = 1; i < e; ++i) r = Term::mul(r, a);
  return r;
}

}  // namespace build

/// ∃z (z*z + z = w*t*t) with z the least index above those in t. Holds iff
/// t lies in the valuation ring, in henselian fields with uniformizer w.
inline Formula o_def(const Term& t) {
  auto m = max_var_index(t);
  const VarIndex z = m ? *m + 1 : 0;
  Term zt = Term::variable(z);
  Term w = Term::uniformizer();
  return Formula::exists(z, Formula::eq(zt * zt + zt, w * t * t));
}

/// Matrix of the membership bundle over `args` with witness variable z:
/// z*z + z = w*S*S, S = sum_{i=1..N} args[i-1]^e * w^i.
inline Formula bundle_matrix(const std::vector<Term>& args, EtaVariant variant, VarIndex z) {
  const unsigned n = static_cast<unsigned>(args.size());
  const unsigned e = variant == EtaVariant::Corrected ? n + 1 : n;
  Term w = Term::uniformizer();
  std::optional<Term> sum;
  for (unsigned i = 1; i <= n; ++i) {
    Term summand = build::pow(args[i - 1], e);
    for (unsigned k = 0; k < i; ++k) summand = Term::mul(summand, w);
    sum = sum ? Term::add(*sum, summand) : summand;
  }
  Term s = sum ? *sum : Term::integer(0);
  Term zt = Term::variable(z);
  return Formula::eq(zt * zt + zt, w * s * s);
}

/// ∃x_{n+1} bundle(x1..xn): an ∃_1 ring formula in the free variables
/// x1..xn. With Corrected it holds iff every x_i is in O.
inline Formula eta(unsigned n, EtaVariant variant = EtaVariant::Corrected) {
  if (n == 0) throw Error("eta needs n >= 1");
  std::vector<Term> args;
  for (unsigned i = 1; i <= n; ++i) args.push_back(Term::variable(i));
  return Formula::exists(n + 1, bundle_matrix(args, variant, n + 1));
}

/// O((k*w)^{-1}) & k != 0, equivalent to k notin O.
inline Formula rewrite_not_in_o(const Term& k) {
  return Formula::conj(Formula::in_o(Term::inverse(k * Term::uniformizer())), Formula::ne(k, Term::integer(0)));
}

namespace detail {

// First inv(s) in a left-to-right walk whose argument s is inverse-free.
inline std::optional<Term> innermost_inverse_arg(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Int:
    case TermKind::Unif: return std::nullopt;
    case TermKind::Inv:
      if (auto inner = innermost_inverse_arg(t.arg())) return inner;
      return t.arg();
    default:
      if (auto a = innermost_inverse_arg(t.lhs())) return a;
      return innermost_inverse_arg(t.rhs());
  }
}

inline bool has_inverse_of(const Term& t, const Term& s) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Int:
    case TermKind::Unif: return false;
    case TermKind::Inv: return t.arg() == s || has_inverse_of(t.arg(), s);
    default: return has_inverse_of(t.lhs(), s) || has_inverse_of(t.rhs(), s);
  }
}

// t with every inv(s) replaced by 0.
inline Term zero_inverse(const Term& t, const Term& s) {
  if (!has_inverse_of(t, s)) return t;
  switch (t.kind()) {
    case TermKind::Inv:
      if (t.arg() == s) return Term::integer(0);
      return Term::inverse(zero_inverse(t.arg(), s));
    case TermKind::Add: return build::add(zero_inverse(t.lhs(), s), zero_inverse(t.rhs(), s));
    case TermKind::Sub: return build::sub(zero_inverse(t.lhs(), s), zero_inverse(t.rhs(), s));
    case TermKind::Mul: return build::mul(zero_inverse(t.lhs(), s), zero_inverse(t.rhs(), s));
    default: return t;
  }
}

// Writes t = N / s^e with N free of inv(s), valid wherever s != 0.
struct Cleared {
  Term num;
  unsigned exp;
};

inline Cleared clear_inverse(const Term& t, const Term& s) {
  if (!has_inverse_of(t, s)) return {t, 0};
  switch (t.kind()) {
    case TermKind::Inv: {
      if (t.arg() == s) return {Term::integer(1), 1};
      // inv(N / s^e) = s^e * inv(N) for s != 0, also when N = 0.
      Cleared u = clear_inverse(t.arg(), s);
      return {build::mul(build::pow(s, u.exp), Term::inverse(u.num)), 0};
    }
    case TermKind::Add:
    case TermKind::Sub: {
      Cleared a = clear_inverse(t.lhs(), s), b = clear_inverse(t.rhs(), s);
      unsigned e = std::max(a.exp, b.exp);
      Term na = build::mul(a.num, build::pow(s, e - a.exp));
      Term nb = build::mul(b.num, build::pow(s, e - b.exp));
      return {t.kind() == TermKind::Add ? build::add(na, nb) : build::sub(na, nb), e};
    }
    case TermKind::Mul: {
      Cleared a = clear_inverse(t.lhs(), s), b = clear_inverse(t.rhs(), s);
      return {build::mul(a.num, b.num), a.exp + b.exp};
    }
    default: return {t, 0};
  }
}

inline Formula eliminate_atom(const Formula& atom) {
  if (atom.kind() == FormulaKind::InO) {
    if (term_has_inv(atom.term())) throw LanguageError("field_to_ring: inverse inside O(...) cannot be cleared");
    return atom;
  }
  const Term& l = atom.left();
  const Term& r = atom.right();
  auto s = innermost_inverse_arg(l);
  if (!s) s = innermost_inverse_arg(r);
  if (!s) return atom;

  Formula zero_case = eliminate_atom(Formula::eq(zero_inverse(l, *s), zero_inverse(r, *s)));
  Cleared cl = clear_inverse(l, *s), cr = clear_inverse(r, *s);
  const unsigned e = std::max(cl.exp, cr.exp);
  Formula cleared = eliminate_atom(Formula::eq(build::mul(cl.num, build::pow(*s, e - cl.exp)),
                                               build::mul(cr.num, build::pow(*s, e - cr.exp))));
  Formula s_zero = Formula::eq(*s, Term::integer(0));
  return Formula::disj(Formula::conj(s_zero, zero_case), Formula::conj(Formula::negation(s_zero), cleared));
}

inline Formula field_to_ring_impl(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::InO: return eliminate_atom(f);
    case FormulaKind::Not: return Formula::negation(field_to_ring_impl(f.sub()));
    case FormulaKind::And: return Formula::conj(field_to_ring_impl(f.lhs()), field_to_ring_impl(f.rhs()));
    case FormulaKind::Or: return Formula::disj(field_to_ring_impl(f.lhs()), field_to_ring_impl(f.rhs()));
    case FormulaKind::Exists: break;
  }
  throw FragmentError("field_to_ring requires a quantifier-free formula");
}

}  // namespace detail

/// Quantifier-free, inverse-free equivalent of a quantifier-free formula
/// over every field (with inv(0) = 0). Each atom mentioning inv(s) for an
/// inverse-free s splits into s = 0 (inv(s) read as 0) and s != 0 (both
/// sides multiplied by a power of s); repeated until no inverse remains.
inline Formula field_to_ring(const Formula& f) {
  if (!is_quantifier_free(f)) throw FragmentError("field_to_ring requires a quantifier-free formula");
  if (!has_inv(f)) return f;
  return detail::field_to_ring_impl(f);
}

struct TranslateOptions {
  EtaVariant eta = EtaVariant::Corrected;
  std::size_t max_clauses = kDefaultMaxClauses;
};

/// An ∃_n valued-field formula to an equivalent (modulo henselian valued
/// fields with uniformizer w) ∃_{n+1} ring formula with w. Throws
/// FragmentError outside ∃_n and GuardError on DNF overflow.
inline Formula val_to_ring(const Formula& f, TranslateOptions opts = {}) {
  if (!classify_fragment(f).en_index) throw FragmentError("val_to_ring: input is not in any ∃_n fragment");
  Prenex p = prenex_existential(f);
  VarIndex z = fresh_var(f);
  for (auto v : p.vars) z = std::max(z, v + 1);

  std::vector<DnfClause> clauses = to_dnf(p.matrix, opts.max_clauses);
  std::vector<Formula> disjuncts;
  for (const auto& c : clauses) {
    std::vector<Formula> parts;
    std::vector<Term> bundle = c.ins;
    for (const auto& k : c.outs) bundle.push_back(Term::inverse(k * Term::uniformizer()));
    if (!bundle.empty()) parts.push_back(bundle_matrix(bundle, opts.eta, z));
    for (const auto& e : c.eqs) parts.push_back(Formula::eq(e, Term::integer(0)));
    std::optional<Term> prod;
    for (const auto* list : {&c.neqs, &c.outs})
      for (const auto& g : *list) prod = prod ? Term::mul(*prod, g) : g;
    if (prod) parts.push_back(Formula::ne(*prod, Term::integer(0)));
    disjuncts.push_back(conj_all(parts));
  }
  Formula matrix = field_to_ring(disj_all(disjuncts));
  return exists_all(p.vars, Formula::exists(z, matrix));
}

}  // namespace vfrag
