#pragma once

// Multivariate Newton-Hensel lifting over F_q((t)) for square polynomial
// systems given as terms, with a certified precision for the refined root.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "vfrag/algebra/laurent.hpp"
#include "vfrag/error.hpp"
#include "vfrag/eval.hpp"
#include "vfrag/formula.hpp"

namespace vfrag {

/// Formal partial derivative of a polynomial term. Throws LanguageError on
/// inverses.
inline Term differentiate(const Term& t, VarIndex v) {
  switch (t.kind()) {
    case TermKind::Var: return Term::integer(t.var() == v ? 1 : 0);
    case TermKind::Int:
    case TermKind::Unif: return Term::integer(0);
    case TermKind::Add:
    case TermKind::Sub: {
      Term a = differentiate(t.lhs(), v), b = differentiate(t.rhs(), v);
      if (b.is_int(0)) return a;
      if (a.is_int(0) && t.kind() == TermKind::Add) return b;
      return t.kind() == TermKind::Add ? Term::add(a, b) : Term::sub(a, b);
    }
    case TermKind::Mul: {
      Term da = differentiate(t.lhs(), v), db = differentiate(t.rhs(), v);
      auto prod = [](const Term& x, const Term& y) -> Term {
        if (x.is_int(0) || y.is_int(0)) return Term::integer(0);
        if (x.is_int(1)) return y;
        if (y.is_int(1)) return x;
        return Term::mul(x, y);
      };
      Term a = prod(da, t.rhs()), b = prod(t.lhs(), db);
      if (a.is_int(0)) return b;
      if (b.is_int(0)) return a;
      return Term::add(a, b);
    }
    case TermKind::Inv: break;
  }
  throw LanguageError("differentiate: inverse in a polynomial map");
}

/// Series values for term evaluation; w is t, unassigned variables throw.
struct LaurentDomain {
  using Value = LaurentApprox;
  const FiniteField& f;
  const std::map<VarIndex, LaurentApprox>& a;
  std::int64_t inverse_precision = 256;

  Value integer(std::uint64_t n) const {
    return LaurentApprox::from_int(&f, static_cast<std::int64_t>(n % f.characteristic()));
  }
  Value uniformizer() const { return LaurentApprox::monomial(&f, f.one(), 1); }
  Value variable(VarIndex v) const {
    auto it = a.find(v);
    if (it == a.end()) throw Error("unassigned variable x" + std::to_string(v));
    return it->second;
  }
  Value add(const Value& x, const Value& y) const { return x + y; }
  Value sub(const Value& x, const Value& y) const { return x - y; }
  Value mul(const Value& x, const Value& y) const { return x * y; }
  Value inverse(const Value& x) const {
    auto r = x.inverse(inverse_precision);
    if (!r) throw PrecisionError("inverse of a series with undetermined valuation");
    return *r;
  }
};

namespace detail {

using Matrix = std::vector<std::vector<LaurentApprox>>;

// Laplace expansion; systems here are tiny.
inline LaurentApprox determinant(const Matrix& m, const FiniteField* f) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentApprox::from_int(f, 1);
  if (n == 1) return m[0][0];
  LaurentApprox acc = LaurentApprox::zero(f);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<LaurentApprox> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    LaurentApprox term = m[0][j] * determinant(minor, f);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// Known valuation, or nullopt for +infinity (exact zero). Throws when the
// value is not determined.
inline std::optional<std::int64_t> exact_valuation(const LaurentApprox& a) {
  if (auto v = a.known_valuation()) return v;
  if (a.is_exact_zero()) return std::nullopt;
  throw PrecisionError("valuation not determined");
}

inline LaurentApprox exactify(const LaurentApprox& a) {
  return LaurentApprox(a.field(), a.start(), a.coeffs(), LaurentApprox::kExact);
}

}  // namespace detail

/// Refines `approx` to a root of the square system polys(vars) = 0 when the
/// Newton-Hensel criterion v(F(a)) > 2 v(det J(a)) holds at a point a in
/// O^k (the polynomials must have coefficients in O, which holds for terms
/// built from integers, w and the variables). The returned coordinates are
/// known modulo t^N with N >= prec, or are exact when an exact root is hit.
/// Returns nullopt when the criterion fails. Throws Error on non-square
/// systems.
inline std::optional<std::vector<LaurentApprox>> newton_lift(const std::vector<Term>& polys,
                                                             const std::vector<VarIndex>& vars,
                                                             const std::vector<LaurentApprox>& approx,
                                                             std::int64_t prec) {
  const std::size_t k = vars.size();
  if (polys.size() != k || approx.size() != k) throw Error("newton_lift needs a square system");
  if (k == 0) return std::vector<LaurentApprox>{};
  const FiniteField* f = approx[0].field();
  for (const auto& p : polys)
    if (term_has_inv(p)) throw LanguageError("newton_lift: inverse in a polynomial map");

  std::vector<std::vector<Term>> jac(k, std::vector<Term>(k, Term::integer(0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) jac[i][j] = differentiate(polys[i], vars[j]);

  std::vector<LaurentApprox> a;
  for (const auto& x : approx) {
    if (x.in_o() != Tri::True) return std::nullopt;
    a.push_back(detail::exactify(x));
  }

  bool first = true;
  for (int iter = 0; iter < 64; ++iter) {
    std::map<VarIndex, LaurentApprox> env;
    for (std::size_t j = 0; j < k; ++j) env.emplace(vars[j], a[j]);
    LaurentDomain dom{*f, env};
    TermEvaluator<LaurentDomain> ev(dom);

    std::vector<LaurentApprox> F;
    std::optional<std::int64_t> vF;
    for (const auto& p : polys) {
      F.push_back(ev(p));
      auto v = detail::exact_valuation(F.back());
      if (v && (!vF || *v < *vF)) vF = v;
    }
    if (!vF) return a;  // exact root

    detail::Matrix J(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) J[i].push_back(ev(jac[i][j]));
    LaurentApprox det = detail::determinant(J, f);
    auto vdet = detail::exact_valuation(det);
    if (!vdet) return std::nullopt;
    if (first && !(*vF > 2 * *vdet)) return std::nullopt;
    first = false;

    // The root b satisfies v(b - a) >= v(F(a)) - v(det J(a)).
    const std::int64_t known = *vF - *vdet;
    if (known >= prec) {
      std::vector<LaurentApprox> out;
      for (const auto& x : a) out.push_back(x.truncate(known));
      return out;
    }

    // Cramer step: delta_j = det(J with column j replaced by F) / det J,
    // computed to absolute precision 2*known + margin.
    const std::int64_t target = 2 * known + 2;
    auto dinv = det.inverse(target - *vdet + known + 2);
    for (std::size_t j = 0; j < k; ++j) {
      detail::Matrix Jj = J;
      for (std::size_t i = 0; i < k; ++i) Jj[i][j] = F[i];
      LaurentApprox delta = detail::determinant(Jj, f) * *dinv;
      a[j] = detail::exactify((a[j] - delta).truncate(target));
    }
  }
  return std::nullopt;
}

}  // namespace vfrag
