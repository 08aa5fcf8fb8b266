#pragma once

// Negation normal form, disjunctive normal form with the four atom shapes
// f = 0, g != 0, h in O, k notin O, and existential prenexing.

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "vfrag/formula.hpp"

namespace vfrag {

inline constexpr std::size_t kDefaultMaxClauses = 10000;

/// One conjunction: every eqs[i] = 0, neqs[i] != 0, ins[i] in O,
/// outs[i] notin O.
struct DnfClause {
  std::vector<Term> eqs;
  std::vector<Term> neqs;
  std::vector<Term> ins;
  std::vector<Term> outs;

  std::size_t size() const { return eqs.size() + neqs.size() + ins.size() + outs.size(); }
  friend bool operator==(const DnfClause&, const DnfClause&) = default;
};

/// `a = b` as a single term f with f = 0: drops a literal zero side,
/// otherwise a - b.
inline Term difference_term(const Term& a, const Term& b) {
  if (b.is_int(0)) return a;
  if (a.is_int(0)) return b;
  return Term::sub(a, b);
}

namespace detail {

inline void require_qf(const Formula& f, const char* op) {
  if (!is_quantifier_free(f)) throw FragmentError(std::string(op) + " requires a quantifier-free formula");
}

inline Formula nnf(const Formula& f, bool negate) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::InO: return negate ? Formula::negation(f) : f;
    case FormulaKind::Not: return nnf(f.sub(), !negate);
    case FormulaKind::And: {
      Formula a = nnf(f.lhs(), negate), b = nnf(f.rhs(), negate);
      return negate ? Formula::disj(a, b) : Formula::conj(a, b);
    }
    case FormulaKind::Or: {
      Formula a = nnf(f.lhs(), negate), b = nnf(f.rhs(), negate);
      return negate ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    case FormulaKind::Exists: break;
  }
  throw FragmentError("to_nnf requires a quantifier-free formula");
}

inline DnfClause merge(const DnfClause& a, const DnfClause& b) {
  DnfClause r = a;
  r.eqs.insert(r.eqs.end(), b.eqs.begin(), b.eqs.end());
  r.neqs.insert(r.neqs.end(), b.neqs.begin(), b.neqs.end());
  r.ins.insert(r.ins.end(), b.ins.begin(), b.ins.end());
  r.outs.insert(r.outs.end(), b.outs.begin(), b.outs.end());
  return r;
}

inline std::vector<DnfClause> dnf(const Formula& f, std::size_t max_clauses) {
  switch (f.kind()) {
    case FormulaKind::Eq: return {DnfClause{{difference_term(f.left(), f.right())}, {}, {}, {}}};
    case FormulaKind::InO: return {DnfClause{{}, {}, {f.term()}, {}}};
    case FormulaKind::Not: {
      const Formula& a = f.sub();
      if (a.kind() == FormulaKind::Eq) return {DnfClause{{}, {difference_term(a.left(), a.right())}, {}, {}}};
      return {DnfClause{{}, {}, {}, {a.term()}}};
    }
    case FormulaKind::Or: {
      auto a = dnf(f.lhs(), max_clauses);
      auto b = dnf(f.rhs(), max_clauses);
      if (a.size() + b.size() > max_clauses)
        throw GuardError("DNF exceeds " + std::to_string(max_clauses) + " clauses");
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case FormulaKind::And: {
      auto a = dnf(f.lhs(), max_clauses);
      auto b = dnf(f.rhs(), max_clauses);
      if (a.size() * b.size() > max_clauses)
        throw GuardError("DNF exceeds " + std::to_string(max_clauses) + " clauses");
      std::vector<DnfClause> r;
      r.reserve(a.size() * b.size());
      for (const auto& x : a)
        for (const auto& y : b) r.push_back(merge(x, y));
      return r;
    }
    case FormulaKind::Exists: break;
  }
  throw FragmentError("to_dnf requires a quantifier-free formula");
}

}  // namespace detail

/// Pushes negations onto atoms. Throws FragmentError on quantifiers.
inline Formula to_nnf(const Formula& f) {
  detail::require_qf(f, "to_nnf");
  return detail::nnf(f, false);
}

/// Disjunctive normal form. An empty result is the empty disjunction
/// (false). Throws GuardError past `max_clauses`.
inline std::vector<DnfClause> to_dnf(const Formula& f, std::size_t max_clauses = kDefaultMaxClauses) {
  detail::require_qf(f, "to_dnf");
  return detail::dnf(to_nnf(f), max_clauses);
}

inline Formula clause_to_formula(const DnfClause& c) {
  std::vector<Formula> parts;
  for (const auto& t : c.eqs) parts.push_back(Formula::eq(t, Term::integer(0)));
  for (const auto& t : c.neqs) parts.push_back(Formula::ne(t, Term::integer(0)));
  for (const auto& t : c.ins) parts.push_back(Formula::in_o(t));
  for (const auto& t : c.outs) parts.push_back(Formula::negation(Formula::in_o(t)));
  return conj_all(parts);
}

inline Formula clauses_to_formula(const std::vector<DnfClause>& cs) {
  std::vector<Formula> parts;
  for (const auto& c : cs) parts.push_back(clause_to_formula(c));
  return disj_all(parts);
}

/// Existential prefix and matrix.
struct Prenex {
  std::vector<VarIndex> vars;
  Formula matrix;
};

namespace detail {

class Prenexer {
 public:
  explicit Prenexer(const Formula& f) : used_(free_vars(f)), next_(fresh_var(f)) {}

  Prenex run(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Eq:
      case FormulaKind::InO: return {{}, f};
      case FormulaKind::Not:
        if (!is_quantifier_free(f.sub())) throw FragmentError("negation above a quantifier");
        return {{}, f};
      case FormulaKind::Exists: {
        VarIndex v = f.var();
        Formula body = f.sub();
        if (used_.contains(v)) {
          VarIndex fresh = next_++;
          body = substitute(body, v, Term::variable(fresh));
          v = fresh;
        }
        used_.insert(v);
        Prenex inner = run(body);
        inner.vars.insert(inner.vars.begin(), v);
        return inner;
      }
      case FormulaKind::And: {
        Prenex a = run(f.lhs());
        Prenex b = run(f.rhs());
        a.vars.insert(a.vars.end(), b.vars.begin(), b.vars.end());
        return {a.vars, Formula::conj(a.matrix, b.matrix)};
      }
      case FormulaKind::Or: {
        // ∃x A ∨ ∃y B ≡ ∃x (A ∨ B[x/y]): the right block reuses the left
        // block's variables, which are fresh for B.
        Prenex a = run(f.lhs());
        Prenex b = run(f.rhs());
        Formula mb = b.matrix;
        std::vector<VarIndex> vars = a.vars;
        for (std::size_t i = 0; i < b.vars.size(); ++i) {
          if (i < a.vars.size()) {
            mb = substitute(mb, b.vars[i], Term::variable(a.vars[i]));
          } else {
            vars.push_back(b.vars[i]);
          }
        }
        return {vars, Formula::disj(a.matrix, mb)};
      }
    }
    return {{}, f};
  }

 private:
  std::set<VarIndex> used_;
  VarIndex next_;
};

}  // namespace detail

/// Pulls existential quantifiers out of a positive combination. Throws
/// FragmentError when a negation sits above a quantifier.
inline Prenex prenex_existential(const Formula& f) { return detail::Prenexer(f).run(f); }

}  // namespace vfrag
