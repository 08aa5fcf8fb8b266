#pragma once

// Exact solvability of z^2 + z = c (characteristic 2) and y^2 = d (odd
// characteristic) over F_q((t)) for c, d in F_q(t), with series witnesses.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vfrag/algebra/laurent.hpp"

namespace vfrag {

enum class SolveReason : std::uint8_t {
  HenselSimpleRoot,
  ResidueTrace,
  ResidueSquare,
  OddValuation,
  NonResidue,
  ExplicitRoot
};

inline std::string to_string(SolveReason r) {
  switch (r) {
    case SolveReason::HenselSimpleRoot: return "HenselSimpleRoot";
    case SolveReason::ResidueTrace: return "ResidueTrace";
    case SolveReason::ResidueSquare: return "ResidueSquare";
    case SolveReason::OddValuation: return "OddValuation";
    case SolveReason::NonResidue: return "NonResidue";
    case SolveReason::ExplicitRoot: return "ExplicitRoot";
  }
  return "?";
}

struct SolvabilityCertificate {
  bool solvable = false;
  /// Known modulo t^precision; the truncation is the certified root
  /// approximation.
  std::optional<LaurentApprox> witness;
  SolveReason reason = SolveReason::ExplicitRoot;
};

inline constexpr std::int64_t kDefaultPrecision = 64;

/// Drops the O(t^N) tail, giving an exact Laurent polynomial.
inline RatFun truncation_as_ratfun(const LaurentApprox& a) {
  LaurentApprox exact(a.field(), a.start(), a.coeffs(), LaurentApprox::kExact);
  return *exact.to_ratfun();
}

/// z^2 + z = c over F_q((t)), q = 2^m.
inline SolvabilityCertificate solve_artin_schreier(const RatFun& c, const FiniteField& f,
                                                   std::int64_t prec = kDefaultPrecision) {
  if (f.characteristic() != 2) throw ModelError("solve_artin_schreier needs characteristic 2");
  const FiniteField* fp = &f;
  if (c.is_zero()) return {true, LaurentApprox::zero(fp), SolveReason::ExplicitRoot};

  // Strip the polar part: each step removes the leading term of c by
  // substituting z -> z + a with a^2 = leading term.
  RatFun cur = c;
  RatFun zpart = RatFun::zero(fp);
  while (!cur.is_zero() && *cur.valuation() < 0) {
    const std::int64_t v = *cur.valuation();
    if (v % 2 != 0) return {false, std::nullopt, SolveReason::OddValuation};
    FqElem s = *f.sqrt(cur.leading_coefficient());
    RatFun a = RatFun::monomial(fp, s, v / 2);
    cur = cur - a * a - a;
    zpart = zpart + a;
  }

  SolveReason reason = SolveReason::HenselSimpleRoot;
  if (!cur.is_zero() && *cur.valuation() == 0) {
    auto b = f.solve_artin_schreier(cur.residue());
    if (!b) return {false, std::nullopt, SolveReason::ResidueTrace};
    RatFun bb = RatFun::constant(fp, *b);
    cur = cur - bb * bb - bb;
    zpart = zpart + bb;
    reason = SolveReason::ResidueTrace;
  }
  if (cur.is_zero()) {
    return {true, LaurentApprox::from_ratfun(zpart, LaurentApprox::kExact), SolveReason::ExplicitRoot};
  }

  // v(cur) > 0: the root of y^2 + y = cur in tO is the limit of y <- cur + y^2.
  const std::int64_t p = std::max<std::int64_t>(prec, 1);
  LaurentApprox cs = LaurentApprox::from_ratfun(cur, p);
  LaurentApprox y = LaurentApprox::zero(fp, p);
  for (int it = 0; it < 80; ++it) {
    LaurentApprox next = (cs + y * y).truncate(p);
    if (next.start() == y.start() && next.coeffs() == y.coeffs()) break;
    y = next;
  }
  LaurentApprox z = LaurentApprox::from_ratfun(zpart, LaurentApprox::kExact) + y;
  return {true, z, reason};
}

namespace detail {

// Square root of a series u with u = 1 + O(t), first n coefficients.
inline std::vector<FqElem> unit_sqrt(const FiniteField& f, const LaurentApprox& u, std::size_t n) {
  std::vector<FqElem> s(n, f.zero());
  if (n == 0) return s;
  s[0] = f.one();
  const FqElem half = f.inv(f.from_int(2));
  for (std::size_t i = 1; i < n; ++i) {
    FqElem acc = u.coeff(static_cast<std::int64_t>(i));
    for (std::size_t j = 1; j < i; ++j) acc = f.sub(acc, f.mul(s[j], s[i - j]));
    s[i] = f.mul(acc, half);
  }
  return s;
}

}  // namespace detail

/// Is d a square in F_q((t)), q odd? The witness y satisfies
/// v(y^2 - d) >= prec for its truncation.
inline SolvabilityCertificate solve_square(const RatFun& d, const FiniteField& f,
                                           std::int64_t prec = kDefaultPrecision) {
  if (f.characteristic() == 2) throw ModelError("solve_square needs odd characteristic");
  const FiniteField* fp = &f;
  if (d.is_zero()) return {true, LaurentApprox::zero(fp), SolveReason::ExplicitRoot};
  const std::int64_t v = *d.valuation();
  if (v % 2 != 0) return {false, std::nullopt, SolveReason::OddValuation};
  const FqElem lc = d.leading_coefficient();
  auto b = f.sqrt(lc);
  if (!b) return {false, std::nullopt, SolveReason::NonResidue};
  const std::int64_t k = v / 2;
  const std::int64_t abs_prec = std::max(prec - k, k + 1);
  const std::size_t n = static_cast<std::size_t>(abs_prec - k);
  // u = d / (lc t^{2k}) = 1 + O(t)
  LaurentApprox ds = LaurentApprox::from_ratfun(d, 2 * k + static_cast<std::int64_t>(n));
  std::vector<FqElem> uc(n, f.zero());
  const FqElem lcinv = f.inv(lc);
  for (std::size_t i = 0; i < n; ++i) uc[i] = f.mul(ds.coeff(2 * k + static_cast<std::int64_t>(i)), lcinv);
  LaurentApprox u(fp, 0, uc, static_cast<std::int64_t>(n));
  auto s = detail::unit_sqrt(f, u, n);
  for (auto& e : s) e = f.mul(e, *b);
  const bool exact_monomial = d.num().coeffs().size() == 1 + static_cast<std::size_t>(d.num().order()) &&
                              d.den().coeffs().size() == 1 + static_cast<std::size_t>(d.den().order());
  return {true, LaurentApprox(fp, k, std::move(s), exact_monomial ? LaurentApprox::kExact : abs_prec),
          exact_monomial ? SolveReason::ExplicitRoot : SolveReason::ResidueSquare};
}

/// One root of a quadratic over F_q(t) inside F_q((t)).
struct QuadraticRoot {
  std::optional<RatFun> exact;  // set when the root lies in F_q(t)
  LaurentApprox approx;
};

struct QuadraticRoots {
  bool solvable = false;
  SolveReason reason = SolveReason::ExplicitRoot;
  std::vector<QuadraticRoot> roots;  // distinct roots
};

namespace detail {

inline FqPoly lcm_poly(const FqPoly& a, const FqPoly& b) { return (a * b / gcd(a, b)).monic(); }

// If the series root r of x^2 + b x + c lies in F_q(t), return it. Rational
// roots of the scaled equation y^2 + (bL) y + cL^2 (L the common
// denominator) are polynomials of bounded degree, so a long enough
// truncation of L*r must be exactly that polynomial.
inline std::optional<RatFun> recover_rational_root(const RatFun& b, const RatFun& c, const LaurentApprox& r) {
  const FiniteField* f = b.field();
  FqPoly L = lcm_poly(b.den(), c.den());
  RatFun Lr(L);
  RatFun B = b * Lr, C = c * Lr * Lr;
  const long bound = std::max<long>(B.num().degree(), (C.num().degree() + 1) / 2);
  LaurentApprox y = LaurentApprox::from_ratfun(Lr, LaurentApprox::kExact) * r;
  if (y.precision() <= bound) return std::nullopt;  // caller asked for too little precision
  std::vector<FqElem> coeffs;
  for (long e = 0; e <= bound; ++e) coeffs.push_back(y.coeff(e));
  for (std::int64_t e = y.start(); e < 0; ++e)
    if (y.coeff(e).v != 0) return std::nullopt;
  RatFun Y(FqPoly(FqOps{f}, std::move(coeffs)));
  if (!(Y * Y + B * Y + C).is_zero()) return std::nullopt;
  return Y / Lr;
}

inline long rational_recovery_precision(const RatFun& b, const RatFun& c) {
  FqPoly L = lcm_poly(b.den(), c.den());
  RatFun Lr(L);
  RatFun B = b * Lr, C = c * Lr * Lr;
  return std::max<long>(B.num().degree(), (C.num().degree() + 1) / 2) + 2;
}

}  // namespace detail

/// Roots in F_q((t)) of the monic quadratic x^2 + b x + c, each with a
/// series approximation modulo t^prec and, when rational, the exact value.
inline QuadraticRoots monic_quadratic_roots(const RatFun& b, const RatFun& c, const FiniteField& f,
                                            std::int64_t prec = kDefaultPrecision) {
  const FiniteField* fp = &f;
  QuadraticRoots out;
  const std::int64_t need = std::max<std::int64_t>(prec, detail::rational_recovery_precision(b, c));
  auto finish = [&](std::vector<LaurentApprox> series) {
    for (auto& s : series) {
      QuadraticRoot r{detail::recover_rational_root(b, c, s), s.truncate(std::max<std::int64_t>(prec, s.start() + 1))};
      if (r.exact) r.approx = LaurentApprox::expansion(*r.exact, prec);
      out.roots.push_back(std::move(r));
    }
  };

  if (f.characteristic() != 2) {
    const RatFun two = RatFun::from_int(fp, 2), four = RatFun::from_int(fp, 4);
    RatFun disc = b * b - four * c;
    if (disc.is_zero()) {
      out.solvable = true;
      out.reason = SolveReason::ExplicitRoot;
      RatFun r = -b / two;
      out.roots.push_back({r, LaurentApprox::expansion(r, prec)});
      return out;
    }
    // solve_square controls the residual; ask for enough that the root
    // itself is known to `need` digits.
    const std::int64_t k = *disc.valuation() / 2;
    auto cert = solve_square(disc, f, need + 2 + 2 * std::abs(k));
    out.reason = cert.reason;
    if (!cert.solvable) return out;
    out.solvable = true;
    LaurentApprox y = *cert.witness;
    LaurentApprox mb = LaurentApprox::from_ratfun(-b, need + 2);
    LaurentApprox half = LaurentApprox::from_ratfun(two.inv(), LaurentApprox::kExact);
    finish({(mb + y) * half, (mb - y) * half});
    return out;
  }

  if (b.is_zero()) {
    // x^2 = c: c is a square in F_q((t)) iff num*den has no odd-degree terms,
    // and then the root is already rational.
    FqPoly nd = c.num() * c.den();
    for (std::size_t i = 1; i < nd.coeffs().size(); i += 2)
      if (nd.coeffs()[i].v != 0) {
        out.reason = SolveReason::OddValuation;
        return out;
      }
    std::vector<FqElem> half;
    for (std::size_t i = 0; i < nd.coeffs().size(); i += 2) half.push_back(*f.sqrt(nd.coeffs()[i]));
    RatFun r = RatFun(FqPoly(FqOps{fp}, std::move(half))) / RatFun(c.den());
    out.solvable = true;
    out.reason = SolveReason::ExplicitRoot;
    out.roots.push_back({r, LaurentApprox::expansion(r, prec)});
    return out;
  }

  // x = b u with u^2 + u = c / b^2.
  RatFun e = c / (b * b);
  const std::int64_t vb = *b.valuation();
  auto cert = solve_artin_schreier(e, f, need + 2 + std::max<std::int64_t>(0, -vb));
  out.reason = cert.reason;
  if (!cert.solvable) return out;
  out.solvable = true;
  LaurentApprox u = *cert.witness;
  const std::int64_t vu = u.coeffs().empty() ? 0 : u.start();
  LaurentApprox bs = LaurentApprox::from_ratfun(b, need + 2 + std::max<std::int64_t>(0, -vu));
  LaurentApprox one = LaurentApprox::from_int(fp, 1);
  finish({bs * u, bs * (u + one)});
  return out;
}

}  // namespace vfrag
