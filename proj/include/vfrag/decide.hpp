#pragma once

// Desk-scale decision procedures: exhaustive search over F_q, certified
// witness search over F_q((t)), the finite-field embedding criterion, and
// the randomized harness that checks the translations semantically.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vfrag/algebra/newton.hpp"
#include "vfrag/algebra/solvers.hpp"
#include "vfrag/models.hpp"
#include "vfrag/normalize.hpp"
#include "vfrag/translate.hpp"

namespace vfrag {

// ---------------------------------------------------------------------------
// Finite fields

inline constexpr std::uint64_t kDefaultFqSearchBound = std::uint64_t{1} << 22;

namespace detail {

inline unsigned count_exists(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::InO: return 0;
    case FormulaKind::Not:
    case FormulaKind::Exists: return (f.kind() == FormulaKind::Exists ? 1 : 0) + count_exists(f.sub());
    case FormulaKind::And:
    case FormulaKind::Or: return count_exists(f.lhs()) + count_exists(f.rhs());
  }
  return 0;
}

class FqSearch {
 public:
  explicit FqSearch(const FiniteField& f) : f_(f) {}

  bool holds(const Formula& g) {
    switch (g.kind()) {
      case FormulaKind::Eq: return term(g.left()) == term(g.right());
      case FormulaKind::InO: throw LanguageError("predicate O is not interpreted in a finite field model");
      case FormulaKind::Not: return !holds(g.sub());
      case FormulaKind::And: return holds(g.lhs()) && holds(g.rhs());
      case FormulaKind::Or: return holds(g.lhs()) || holds(g.rhs());
      case FormulaKind::Exists: return exists(g, nullptr);
    }
    return false;
  }

  // Like holds, recording values for the leading block of quantifiers.
  bool holds_with_witness(const Formula& g, std::map<VarIndex, WitnessValue>& witness) {
    if (g.kind() != FormulaKind::Exists) return holds(g);
    return exists(g, &witness);
  }

 private:
  bool exists(const Formula& g, std::map<VarIndex, WitnessValue>* witness) {
    const VarIndex v = g.var();
    auto saved = a_.find(v) == a_.end() ? std::nullopt : std::optional<FqElem>(a_[v]);
    bool found = false;
    for (std::uint32_t i = 0; i < f_.order() && !found; ++i) {
      a_[v] = f_.element(i);
      found = witness ? holds_with_witness(g.sub(), *witness) : holds(g.sub());
      if (found && witness) witness->emplace(v, f_.element(i));
    }
    if (saved) {
      a_[v] = *saved;
    } else {
      a_.erase(v);
    }
    return found;
  }

  FqElem term(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var: {
        auto it = a_.find(t.var());
        if (it == a_.end()) throw Error("unassigned variable x" + std::to_string(t.var()));
        return it->second;
      }
      case TermKind::Int: return f_.from_int(static_cast<std::int64_t>(t.value() % f_.characteristic()));
      case TermKind::Unif: throw LanguageError("constant w has no interpretation in a finite field model");
      case TermKind::Inv: throw LanguageError("inv is not interpreted in a finite field model (ring language)");
      case TermKind::Add: return f_.add(term(t.lhs()), term(t.rhs()));
      case TermKind::Sub: return f_.sub(term(t.lhs()), term(t.rhs()));
      case TermKind::Mul: return f_.mul(term(t.lhs()), term(t.rhs()));
    }
    return f_.zero();
  }

  const FiniteField& f_;
  std::map<VarIndex, FqElem> a_;
};

inline void check_fq_bound(const Formula& f, const FiniteField& field, std::uint64_t bound) {
  const unsigned n = count_exists(f);
  long double space = std::pow(static_cast<long double>(field.order()), n);
  if (space > static_cast<long double>(bound))
    throw BudgetError("search space " + field.name() + "^" + std::to_string(n) + " exceeds bound " +
                      std::to_string(bound));
}

}  // namespace detail

/// Truth of a ring-language sentence in F_q by exhaustive enumeration.
/// Throws BudgetError when q^(number of quantifiers) exceeds `bound`.
inline bool decide_exists_fq(const Formula& f, const FiniteField& field,
                             std::uint64_t bound = kDefaultFqSearchBound) {
  if (!is_sentence(f)) throw Error("decide_exists_fq needs a sentence");
  detail::check_fq_bound(f, field, bound);
  return detail::FqSearch(field).holds(f);
}

/// Th_∃1(F_{p^m}, F_p) ⊆ Th_∃1(F_{p^n}, F_p) iff F_{p^m} embeds in F_{p^n},
/// i.e. iff m divides n.
inline bool embedding_exists(std::uint32_t p, unsigned m, unsigned n) {
  if (!detail::is_prime(p)) throw ModelError("embedding_exists: " + std::to_string(p) + " is not prime");
  if (m == 0 || n == 0) throw ModelError("embedding_exists: degrees must be positive");
  return n % m == 0;
}

// ---------------------------------------------------------------------------
// One existential variable over F_q((t))

namespace detail {

struct NotPolynomial {};

// Terms as polynomials in x with coefficients in F_q(t).
struct PolyDomain {
  using Value = RatPoly;
  const FiniteField& f;
  VarIndex x;
  const RatAssignment& a;

  RatFunOps ops() const { return RatFunOps{&f}; }
  Value integer(std::uint64_t n) const {
    return RatPoly::constant(ops(), RatFun::from_int(&f, static_cast<std::int64_t>(n % f.characteristic())));
  }
  Value uniformizer() const { return RatPoly::constant(ops(), RatFun::t(&f)); }
  Value variable(VarIndex v) const {
    if (v == x) return RatPoly::x(ops());
    auto it = a.find(v);
    if (it == a.end()) throw Error("unassigned variable x" + std::to_string(v));
    return RatPoly::constant(ops(), it->second);
  }
  Value add(const Value& p, const Value& q) const { return p + q; }
  Value sub(const Value& p, const Value& q) const { return p - q; }
  Value mul(const Value& p, const Value& q) const { return p * q; }
  Value inverse(const Value& p) const {
    if (p.degree() > 0) throw NotPolynomial{};
    return RatPoly::constant(ops(), p.coeff(0).inv());
  }
};

inline RatFun eval_at(const RatPoly& p, const RatFun& r) { return p.eval(r); }

inline LaurentApprox eval_at(const RatPoly& p, const LaurentApprox& a, std::int64_t prec) {
  LaurentApprox acc = LaurentApprox::zero(a.field());
  for (long i = p.degree(); i >= 0; --i)
    acc = acc * a + LaurentApprox::from_ratfun(p.coeff(static_cast<std::size_t>(i)), prec);
  return acc;
}

struct PolyClause {
  std::vector<RatPoly> eqs, neqs, ins, outs;
};

enum class ClauseState : std::uint8_t { False, Open };

// Evaluates the x-free literals; drops those that hold.
inline ClauseState simplify_constants(PolyClause& c) {
  auto is_const = [](const RatPoly& p) { return p.degree() <= 0; };
  std::vector<RatPoly> keep;
  for (auto& p : c.eqs) {
    if (p.is_zero()) continue;
    if (is_const(p)) return ClauseState::False;
    keep.push_back(p);
  }
  c.eqs = std::move(keep);
  keep.clear();
  for (auto& p : c.neqs) {
    if (p.is_zero()) return ClauseState::False;
    if (!is_const(p)) keep.push_back(p);
  }
  c.neqs = std::move(keep);
  keep.clear();
  for (auto& p : c.ins) {
    if (is_const(p)) {
      if (!p.coeff(0).in_o()) return ClauseState::False;
    } else {
      keep.push_back(p);
    }
  }
  c.ins = std::move(keep);
  keep.clear();
  for (auto& p : c.outs) {
    if (is_const(p)) {
      if (p.coeff(0).in_o()) return ClauseState::False;
    } else {
      keep.push_back(p);
    }
  }
  c.outs = std::move(keep);
  return ClauseState::Open;
}

inline bool clause_holds_at(const PolyClause& c, const RatFun& r) {
  for (const auto& p : c.eqs)
    if (!eval_at(p, r).is_zero()) return false;
  for (const auto& p : c.neqs)
    if (eval_at(p, r).is_zero()) return false;
  for (const auto& p : c.ins)
    if (!eval_at(p, r).in_o()) return false;
  for (const auto& p : c.outs)
    if (eval_at(p, r).in_o()) return false;
  return true;
}

/// Candidate witnesses: Laurent polynomials with exponents in
/// [-neg_exponent, pos_exponent] and at most max_support terms, by
/// increasing support. `visit` returns false to stop.
inline void for_each_candidate(const FiniteField& f, const SearchBudget& b,
                               const std::function<bool(const RatFun&)>& visit) {
  std::vector<std::int64_t> exps;  // 0, 1, -1, 2, -2, ...
  exps.push_back(0);
  for (std::int64_t e = 1; e <= static_cast<std::int64_t>(std::max(b.neg_exponent, b.pos_exponent)); ++e) {
    if (e <= static_cast<std::int64_t>(b.pos_exponent)) exps.push_back(e);
    if (e <= static_cast<std::int64_t>(b.neg_exponent)) exps.push_back(-e);
  }
  const FiniteField* fp = &f;
  if (!visit(RatFun::zero(fp))) return;
  const std::uint32_t q = f.order();
  for (unsigned s = 1; s <= std::min<std::size_t>(b.max_support, exps.size()); ++s) {
    std::vector<std::size_t> pick(s);
    for (unsigned i = 0; i < s; ++i) pick[i] = i;
    while (true) {
      std::vector<std::uint32_t> coef(s, 1);
      while (true) {
        RatFun r = RatFun::zero(fp);
        for (unsigned i = 0; i < s; ++i) r = r + RatFun::monomial(fp, f.element(coef[i]), exps[pick[i]]);
        if (!visit(r)) return;
        unsigned i = 0;
        while (i < s && ++coef[i] == q) coef[i++] = 1;
        if (i == s) break;
      }
      int i = static_cast<int>(s) - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == exps.size() - s + static_cast<std::size_t>(i)) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
}

inline std::vector<RatFun> candidate_list(const FiniteField& f, const SearchBudget& b, std::size_t limit) {
  std::vector<RatFun> out;
  if (limit == 0) return out;
  for_each_candidate(f, b, [&](const RatFun& r) {
    out.push_back(r);
    return out.size() < limit;
  });
  return out;
}

struct ClauseResult {
  Truth truth = Truth::Unknown;
  std::optional<WitnessValue> witness;
  std::string note;
};

// Membership of a + b*alpha for an irrational quadratic root alpha (root
// `index` of the monic X^2 + c1 X + c0), deciding by raising precision.
inline Tri in_o_at_irrational(const RatFun& a, const RatFun& b, const RatFun& c1, const RatFun& c0,
                              std::size_t index, std::int64_t prec) {
  const FiniteField& f = *a.field();
  for (std::int64_t p = std::max<std::int64_t>(prec, 32); p <= 4096; p *= 2) {
    QuadraticRoots rs = monic_quadratic_roots(c1, c0, f, p);
    if (index >= rs.roots.size()) return Tri::Unknown;
    LaurentApprox alpha = rs.roots[index].approx;
    LaurentApprox val = LaurentApprox::from_ratfun(a, alpha.precision() + 8) +
                        LaurentApprox::from_ratfun(b, alpha.precision() + 8) * alpha;
    Tri t = val.in_o();
    if (t != Tri::Unknown) return t;
  }
  return Tri::Unknown;
}

inline ClauseResult decide_clause(PolyClause c, const FiniteField& f, const SearchBudget& budget,
                                  std::int64_t prec) {
  if (simplify_constants(c) == ClauseState::False) return {Truth::False, std::nullopt, "constant literal fails"};

  if (c.eqs.empty()) {
    if (c.ins.empty() && c.outs.empty()) {
      // Finitely many roots to avoid: among 0 and t^j, j <= total degree,
      // some candidate works.
      long total = 0;
      for (const auto& p : c.neqs) total += p.degree();
      for (long j = -1; j <= total; ++j) {
        RatFun r = j < 0 ? RatFun::zero(&f) : RatFun::monomial(&f, f.one(), j);
        if (clause_holds_at(c, r)) return {Truth::True, r, "avoids the roots of the disequalities"};
      }
      return {Truth::Unknown, std::nullopt, "root avoidance failed"};
    }
    std::optional<RatFun> hit;
    std::uint64_t seen = 0;
    for_each_candidate(f, budget, [&](const RatFun& r) {
      if (clause_holds_at(c, r)) {
        hit = r;
        return false;
      }
      return ++seen < budget.max_candidates;
    });
    if (hit) return {Truth::True, *hit, "candidate search"};
    return {Truth::Unknown, std::nullopt, "no candidate within budget"};
  }

  RatPoly g = c.eqs[0];
  for (std::size_t i = 1; i < c.eqs.size(); ++i) g = gcd(g, c.eqs[i]);
  g = g.monic();
  if (g.degree() == 0) return {Truth::False, std::nullopt, "equations have no common root"};

  if (g.degree() == 1) {
    RatFun r = -g.coeff(0);
    if (clause_holds_at(c, r)) return {Truth::True, r, "unique root of a linear equation"};
    return {Truth::False, std::nullopt, "the only root " + r.to_string() + " violates the clause"};
  }

  if (g.degree() == 2) {
    const RatFun c1 = g.coeff(1), c0 = g.coeff(0);
    QuadraticRoots rs = monic_quadratic_roots(c1, c0, f, prec);
    if (!rs.solvable) return {Truth::False, std::nullopt, "quadratic has no root (" + to_string(rs.reason) + ")"};
    bool unknown = false;
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
      const auto& root = rs.roots[i];
      if (root.exact) {
        if (clause_holds_at(c, *root.exact)) return {Truth::True, *root.exact, "rational root of a quadratic"};
        continue;
      }
      // Irrational root: g is irreducible over F_q(t), so p(alpha) = 0 iff
      // g divides p.
      bool ok = true;
      for (const auto& p : c.neqs)
        if ((p % g).is_zero()) ok = false;
      Tri all = Tri::True;
      for (int side = 0; side < 2 && ok; ++side) {
        for (const auto& p : side == 0 ? c.ins : c.outs) {
          RatPoly rem = p % g;
          Tri t = rem.degree() <= 0 ? (rem.coeff(0).in_o() ? Tri::True : Tri::False)
                                    : in_o_at_irrational(rem.coeff(0), rem.coeff(1), c1, c0, i, prec);
          all = tri_and(all, side == 0 ? t : tri_not(t));
        }
      }
      if (!ok || all == Tri::False) continue;
      if (all == Tri::True) return {Truth::True, root.approx, "series root (" + to_string(rs.reason) + ")"};
      unknown = true;
    }
    if (unknown) return {Truth::Unknown, std::nullopt, "membership at a series root undetermined"};
    return {Truth::False, std::nullopt, "no root of the quadratic satisfies the clause"};
  }

  return {Truth::Unknown, std::nullopt, "equation of degree " + std::to_string(g.degree())};
}

inline std::vector<PolyClause> poly_clauses(const Formula& matrix, const FiniteField& f, VarIndex x,
                                            const RatAssignment& others) {
  std::vector<DnfClause> dnf = to_dnf(matrix);
  PolyDomain dom{f, x, others};
  TermEvaluator<PolyDomain> ev(dom);
  std::vector<PolyClause> out;
  for (const auto& c : dnf) {
    PolyClause pc;
    for (const auto& t : c.eqs) pc.eqs.push_back(ev(t));
    for (const auto& t : c.neqs) pc.neqs.push_back(ev(t));
    for (const auto& t : c.ins) pc.ins.push_back(ev(t));
    for (const auto& t : c.outs) pc.outs.push_back(ev(t));
    out.push_back(std::move(pc));
  }
  return out;
}

}  // namespace detail

/// Truth of ∃x matrix in F_q((t)) with the other free variables fixed at
/// points of F_q(t). Exact whenever the equations of each clause have a gcd
/// of degree at most 2 in x; otherwise witness search within `budget`.
inline Verdict decide_univariate(const FiniteField& f, const Formula& matrix, VarIndex x,
                                 const RatAssignment& others, std::int64_t prec = kDefaultPrecision,
                                 const SearchBudget& budget = {}) {
  if (!is_quantifier_free(matrix)) throw FragmentError("decide_univariate needs a quantifier-free matrix");
  std::vector<detail::PolyClause> clauses;
  try {
    try {
      clauses = detail::poly_clauses(matrix, f, x, others);
    } catch (const detail::NotPolynomial&) {
      // An inverse of a term in x: clear it first.
      clauses = detail::poly_clauses(field_to_ring(matrix), f, x, others);
    }
  } catch (const detail::NotPolynomial&) {
    return Verdict::unknown("inverse of a term in x inside O(...)");
  } catch (const LanguageError&) {
    return Verdict::unknown("inverse of a term in x inside O(...)");
  } catch (const GuardError& e) {
    return Verdict::unknown(e.what());
  }

  bool unknown = false;
  std::string why, refutations;
  for (auto& c : clauses) {
    detail::ClauseResult r = detail::decide_clause(std::move(c), f, budget, prec);
    if (r.truth == Truth::True) return Verdict::yes({{x, *r.witness}}, r.note);
    if (r.truth == Truth::Unknown) {
      unknown = true;
      why = r.note;
    } else if (clauses.size() == 1) {
      refutations = r.note;
    }
  }
  if (unknown) return Verdict::unknown(why);
  if (clauses.empty()) return Verdict::no("empty disjunction");
  return Verdict::no(clauses.size() == 1 ? refutations : "all " + std::to_string(clauses.size()) + " clauses refuted");
}

// ---------------------------------------------------------------------------
// Sentences over F_q((t))

namespace detail {

// Three-valued truth of a quantifier-free formula at series values.
// Equalities count as satisfied when the residual vanishes to the tracked
// precision.
inline Tri series_truth(const Formula& g, TermEvaluator<LaurentDomain>& ev) {
  switch (g.kind()) {
    case FormulaKind::Eq: {
      Tri t = compare_equal(ev(g.left()), ev(g.right()));
      return t == Tri::False ? Tri::False : Tri::True;
    }
    case FormulaKind::InO: return ev(g.term()).in_o();
    case FormulaKind::Not:
      if (g.sub().kind() == FormulaKind::Eq) {
        // Disequality needs a determined nonzero difference.
        LaurentApprox d = ev(g.sub().left()) - ev(g.sub().right());
        if (d.known_valuation()) return Tri::True;
        return d.is_exact_zero() ? Tri::False : Tri::Unknown;
      }
      return tri_not(series_truth(g.sub(), ev));
    case FormulaKind::And: return tri_and(series_truth(g.lhs(), ev), series_truth(g.rhs(), ev));
    case FormulaKind::Or: return tri_or(series_truth(g.lhs(), ev), series_truth(g.rhs(), ev));
    case FormulaKind::Exists: break;
  }
  throw FragmentError("series_truth needs a quantifier-free formula");
}

inline Tri witness_satisfies(const FiniteField& f, const Formula& matrix,
                             const std::map<VarIndex, LaurentApprox>& env) {
  LaurentDomain dom{f, env};
  TermEvaluator<LaurentDomain> ev(dom);
  try {
    return series_truth(to_nnf(matrix), ev);
  } catch (const PrecisionError&) {
    return Tri::Unknown;
  }
}

inline Verdict merge_and(Verdict a, Verdict b) {
  if (a.truth == Truth::False) return a;
  if (b.truth == Truth::False) return b;
  if (a.truth == Truth::True && b.truth == Truth::True) {
    for (auto& [k, v] : b.evidence->witness) a.evidence->witness.insert_or_assign(k, v);
    a.evidence->certificate += "; " + b.evidence->certificate;
    return a;
  }
  return a.truth == Truth::Unknown ? a : b;
}

inline Verdict merge_or(Verdict a, Verdict b) {
  if (a.truth == Truth::True) return a;
  if (b.truth == Truth::True) return b;
  if (a.truth == Truth::False && b.truth == Truth::False) {
    a.evidence->certificate += "; " + b.evidence->certificate;
    return a;
  }
  return a.truth == Truth::Unknown ? a : b;
}

class LaurentSearch {
 public:
  LaurentSearch(const FiniteField& f, SearchBudget budget, std::int64_t prec)
      : f_(f), budget_(budget), prec_(prec) {}

  Verdict run(const Formula& g) {
    if (is_quantifier_free(g)) {
      RatAssignment none;
      bool v = eval_qf(f_, g, none);
      return v ? Verdict::yes({}, "quantifier-free, evaluated exactly") : Verdict::no("quantifier-free, evaluated exactly");
    }
    switch (g.kind()) {
      case FormulaKind::And: return merge_and(run(g.lhs()), run(g.rhs()));
      case FormulaKind::Or: return merge_or(run(g.lhs()), run(g.rhs()));
      case FormulaKind::Exists: return block(g);
      default: return Verdict::unknown("negation above a quantifier");
    }
  }

 private:
  Verdict block(const Formula& g) {
    std::optional<Prenex> pre;
    try {
      pre = prenex_existential(g);
    } catch (const FragmentError& e) {
      return Verdict::unknown(e.what());
    }
    const Prenex& p = *pre;
    const std::size_t k = p.vars.size();
    const VarIndex last = p.vars.back();

    std::vector<DnfClause> dnf;
    try {
      dnf = to_dnf(p.matrix);
    } catch (const GuardError& e) {
      return Verdict::unknown(e.what());
    }
    if (all_clauses_refuted(dnf)) return Verdict::no("every clause contains a false variable-free literal");

    Verdict best = Verdict::unknown("no witness within budget");
    if (k == 1) {
      best = decide_univariate(f_, p.matrix, last, {}, prec_, budget_);
      if (best.truth != Truth::Unknown) return best;
    } else {
      // Enumerate the first k-1 coordinates; decide the last exactly.
      const double per = std::pow(static_cast<double>(budget_.max_candidates), 1.0 / static_cast<double>(k - 1));
      auto cands = candidate_list(f_, budget_, std::max<std::size_t>(2, static_cast<std::size_t>(per)));
      std::vector<std::size_t> idx(k - 1, 0);
      std::uint64_t spent = 0;
      while (spent < budget_.max_candidates) {
        RatAssignment a;
        for (std::size_t i = 0; i + 1 < k; ++i) a.emplace(p.vars[i], cands[idx[i]]);
        Verdict v = decide_univariate(f_, p.matrix, last, a, prec_, budget_);
        spent += 1;
        if (v.truth == Truth::True) {
          for (auto& [var, val] : a) v.evidence->witness.emplace(var, val);
          v.evidence->certificate = "enumerated prefix; " + v.evidence->certificate;
          return v;
        }
        std::size_t i = 0;
        while (i + 1 < k && ++idx[i] == cands.size()) idx[i++] = 0;
        if (i + 1 == k) break;
      }
    }
    if (auto v = newton_witness(p, dnf)) return *v;
    return best;
  }

  bool all_clauses_refuted(const std::vector<DnfClause>& dnf) const {
    const RatAssignment none;
    for (const auto& c : dnf) {
      bool refuted = false;
      auto constant = [](const Term& t) { return term_vars(t).empty(); };
      try {
        for (const auto& t : c.eqs)
          if (constant(t) && !eval_term(f_, t, none).is_zero()) refuted = true;
        for (const auto& t : c.neqs)
          if (constant(t) && eval_term(f_, t, none).is_zero()) refuted = true;
        for (const auto& t : c.ins)
          if (constant(t) && !eval_term(f_, t, none).in_o()) refuted = true;
        for (const auto& t : c.outs)
          if (constant(t) && eval_term(f_, t, none).in_o()) refuted = true;
      } catch (const Error&) {
        refuted = false;
      }
      if (!refuted) return false;
    }
    return true;
  }

  // Newton-Hensel from starting points in O for clauses with as many
  // equations as quantified variables.
  std::optional<Verdict> newton_witness(const Prenex& p, const std::vector<DnfClause>& dnf) {
    const std::size_t k = p.vars.size();
    SearchBudget ob = budget_;
    ob.neg_exponent = 0;
    ob.max_support = std::min(ob.max_support, 2u);
    const std::size_t per = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::pow(static_cast<double>(budget_.max_candidates) / 10.0, 1.0 / static_cast<double>(k))));
    auto starts = candidate_list(f_, ob, per);
    for (const auto& c : dnf) {
      if (c.eqs.size() != k) continue;
      bool has_inverse = false;
      for (const auto& t : c.eqs) has_inverse = has_inverse || term_has_inv(t);
      if (has_inverse) continue;
      std::vector<std::size_t> idx(k, 0);
      std::uint64_t spent = 0;
      while (spent++ < budget_.max_candidates / 10) {
        std::vector<LaurentApprox> a0;
        for (std::size_t i = 0; i < k; ++i) a0.push_back(LaurentApprox::expansion(starts[idx[i]], prec_));
        std::optional<std::vector<LaurentApprox>> root;
        try {
          root = newton_lift(c.eqs, p.vars, a0, prec_);
        } catch (const PrecisionError&) {
          root.reset();
        }
        if (root) {
          std::map<VarIndex, LaurentApprox> env;
          for (std::size_t i = 0; i < k; ++i) env.emplace(p.vars[i], (*root)[i]);
          if (witness_satisfies(f_, clause_to_formula(c), env) == Tri::True) {
            std::map<VarIndex, WitnessValue> w;
            for (auto& [v, val] : env) w.emplace(v, val);
            return Verdict::yes(std::move(w), "Newton-Hensel lift to precision " + std::to_string(prec_));
          }
        }
        std::size_t i = 0;
        while (i < k && ++idx[i] == starts.size()) idx[i++] = 0;
        if (i == k) break;
      }
    }
    return std::nullopt;
  }

  const FiniteField& f_;
  SearchBudget budget_;
  std::int64_t prec_;
};

}  // namespace detail

/// Certified verdict for a sentence over F_q((t)) with w = t. True carries a
/// witness for the outermost quantifier block, False an exact refutation;
/// Unknown means the budget ran out.
inline Verdict search_witness_laurent(const Formula& f, const FiniteField& field, const SearchBudget& budget = {},
                                      std::int64_t prec = kDefaultPrecision) {
  if (!is_sentence(f)) throw Error("search_witness_laurent needs a sentence");
  return detail::LaurentSearch(field, budget, prec).run(f);
}

/// Checks a True verdict's witness against the matrix of the sentence's
/// leading quantifier block: exact for rational values, up to the tracked
/// precision for series values.
inline Tri recheck_witness(const Formula& f, const FiniteField& field, const std::map<VarIndex, WitnessValue>& w) {
  Prenex p = prenex_existential(f);
  std::map<VarIndex, LaurentApprox> env;
  bool all_rational = true;
  RatAssignment exact;
  for (auto v : p.vars) {
    auto it = w.find(v);
    if (it == w.end()) return Tri::Unknown;
    if (auto* r = std::get_if<RatFun>(&it->second)) {
      exact.emplace(v, *r);
      env.emplace(v, LaurentApprox::expansion(*r, 4 * kDefaultPrecision));
    } else if (auto* l = std::get_if<LaurentApprox>(&it->second)) {
      all_rational = false;
      env.emplace(v, *l);
    } else {
      return Tri::Unknown;
    }
  }
  if (all_rational) {
    return eval_qf(field, p.matrix, exact) ? Tri::True : Tri::False;
  }
  return detail::witness_satisfies(field, p.matrix, env);
}

/// FqModel: complete decision with a witness for the leading block.
/// LaurentModel: search_witness_laurent at the model's precision.
inline Verdict eval_sentence(const Structure& s, const Formula& f, const SearchBudget& budget = {},
                             std::uint64_t fq_bound = kDefaultFqSearchBound) {
  if (!is_sentence(f)) throw Error("eval_sentence needs a sentence");
  if (auto* m = std::get_if<FqModel>(&s)) {
    detail::check_fq_bound(f, *m->field, fq_bound);
    std::map<VarIndex, WitnessValue> w;
    bool v = detail::FqSearch(*m->field).holds_with_witness(f, w);
    if (v) return Verdict::yes(std::move(w), "exhaustive search over " + m->field->name());
    return Verdict::no("exhaustive search over " + m->field->name());
  }
  const auto& l = std::get<LaurentModel>(s);
  return search_witness_laurent(f, *l.field, budget, l.prec);
}

}  // namespace vfrag
