#pragma once

// Reference implementations for tests. They share only the AST with the
// library: arithmetic, evaluation and search are written independently.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "vfrag/formula.hpp"

namespace oracle {

using vfrag::Formula;
using vfrag::FormulaKind;
using vfrag::Term;
using vfrag::TermKind;
using vfrag::VarIndex;

/// A small finite field given by explicit tables. Elements are 0..q-1 with
/// the library's encoding: base-p digits are the coefficients of a
/// polynomial in the generator, reduced by `modulus` (monic, low degree
/// first).
class TableField {
 public:
  TableField(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), mod_(std::move(modulus)) {
    m_ = static_cast<unsigned>(mod_.size() - 1);
    q_ = 1;
    for (unsigned i = 0; i < m_; ++i) q_ *= p_;
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) {
        add_[a * q_ + b] = slow_add(a, b);
        mul_[a * q_ + b] = slow_mul(a, b);
      }
  }

  /// Prime field F_p.
  static TableField prime(std::uint32_t p) { return TableField(p, {0, 1}); }

  std::uint32_t q() const { return q_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const {
    for (std::uint32_t b = 0; b < q_; ++b)
      if (add(a, b) == 0) return b;
    throw std::logic_error("no negative");
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  /// Total inverse with inv(0) = 0, by search.
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) return 0;
    for (std::uint32_t b = 1; b < q_; ++b)
      if (mul(a, b) == 1) return b;
    throw std::logic_error("no inverse");
  }
  std::uint32_t from_int(std::uint64_t n) const { return static_cast<std::uint32_t>(n % p_); }

 private:
  std::vector<std::uint32_t> digits(std::uint32_t a) const {
    std::vector<std::uint32_t> d(m_, 0);
    for (unsigned i = 0; i < m_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }
  std::uint32_t undigits(const std::vector<std::uint32_t>& d) const {
    std::uint32_t a = 0;
    for (unsigned i = m_; i-- > 0;) a = a * p_ + d[i];
    return a;
  }
  std::uint32_t slow_add(std::uint32_t a, std::uint32_t b) const {
    auto x = digits(a), y = digits(b);
    for (unsigned i = 0; i < m_; ++i) x[i] = (x[i] + y[i]) % p_;
    return undigits(x);
  }
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    auto x = digits(a), y = digits(b);
    std::vector<std::uint32_t> r(2 * m_, 0);
    for (unsigned i = 0; i < m_; ++i)
      for (unsigned j = 0; j < m_; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p_;
    for (unsigned k = 2 * m_ - 1; k >= m_; --k) {
      const std::uint32_t c = r[k];
      if (c == 0) continue;
      // modulus is monic: t^m = -(lower terms)
      for (unsigned i = 0; i < m_; ++i) r[k - m_ + i] = (r[k - m_ + i] + (p_ - c) * mod_[i]) % p_;
      r[k] = 0;
    }
    r.resize(m_);
    return undigits(r);
  }

  std::uint32_t p_;
  std::vector<std::uint32_t> mod_;
  unsigned m_ = 1;
  std::uint32_t q_ = 1;
  std::vector<std::uint32_t> add_, mul_;
};

using Env = std::map<VarIndex, std::uint32_t>;

/// Term value with inv(0) = 0. Throws on w or O.
inline std::uint32_t eval_term(const TableField& F, const Term& t, const Env& a) {
  switch (t.kind()) {
    case TermKind::Var: return a.at(t.var());
    case TermKind::Int: return F.from_int(t.value());
    case TermKind::Unif: throw std::invalid_argument("w in a finite field");
    case TermKind::Add: return F.add(eval_term(F, t.lhs(), a), eval_term(F, t.rhs(), a));
    case TermKind::Sub: return F.sub(eval_term(F, t.lhs(), a), eval_term(F, t.rhs(), a));
    case TermKind::Mul: return F.mul(eval_term(F, t.lhs(), a), eval_term(F, t.rhs(), a));
    case TermKind::Inv: return F.inv(eval_term(F, t.arg(), a));
  }
  return 0;
}

/// Naive truth of a formula (quantifiers by enumeration) under `a`.
inline bool holds(const TableField& F, const Formula& f, Env& a) {
  switch (f.kind()) {
    case FormulaKind::Eq: return eval_term(F, f.left(), a) == eval_term(F, f.right(), a);
    case FormulaKind::InO: throw std::invalid_argument("O in a finite field");
    case FormulaKind::Not: return !holds(F, f.sub(), a);
    case FormulaKind::And: return holds(F, f.lhs(), a) && holds(F, f.rhs(), a);
    case FormulaKind::Or: return holds(F, f.lhs(), a) || holds(F, f.rhs(), a);
    case FormulaKind::Exists: {
      const VarIndex v = f.var();
      auto old = a.find(v) == a.end() ? std::optional<std::uint32_t>() : a[v];
      bool r = false;
      for (std::uint32_t x = 0; x < F.q() && !r; ++x) {
        a[v] = x;
        r = holds(F, f.sub(), a);
      }
      if (old) {
        a[v] = *old;
      } else {
        a.erase(v);
      }
      return r;
    }
  }
  return false;
}

/// Calls `visit` with every assignment of vars into F.
inline void for_each_assignment(const TableField& F, const std::vector<VarIndex>& vars,
                                const std::function<void(const Env&)>& visit) {
  Env a;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) {
      visit(a);
      return;
    }
    for (std::uint32_t x = 0; x < F.q(); ++x) {
      a[vars[i]] = x;
      rec(i + 1);
    }
  };
  rec(0);
}

// ---------------------------------------------------------------------------
// Laurent expansions over a TableField

/// Coefficients of num/den at exponents [lo, hi], where num and den are
/// coefficient vectors (low degree first, den != 0).
inline std::map<long, std::uint32_t> expand(const TableField& F, std::vector<std::uint32_t> num,
                                            std::vector<std::uint32_t> den, long lo, long hi) {
  long shift = 0;
  while (!den.empty() && den.front() == 0) {
    den.erase(den.begin());
    --shift;
  }
  long nz = 0;
  while (!num.empty() && num.front() == 0) {
    num.erase(num.begin());
    ++nz;
  }
  std::map<long, std::uint32_t> out;
  for (long e = lo; e <= hi; ++e) out[e] = 0;
  if (num.empty()) return out;
  const long start = nz + shift;
  const std::uint32_t d0inv = F.inv(den[0]);
  std::vector<std::uint32_t> s;  // s = num/den as a power series
  for (long i = 0; start + i <= hi; ++i) {
    std::uint32_t acc = i < static_cast<long>(num.size()) ? num[static_cast<std::size_t>(i)] : 0;
    for (long j = 1; j <= i && j < static_cast<long>(den.size()); ++j)
      acc = F.sub(acc, F.mul(den[static_cast<std::size_t>(j)], s[static_cast<std::size_t>(i - j)]));
    s.push_back(F.mul(acc, d0inv));
  }
  for (long i = 0; i < static_cast<long>(s.size()); ++i)
    if (start + i >= lo) out[start + i] = s[static_cast<std::size_t>(i)];
  return out;
}

/// z^2 + z = c over F_q((t)), q = 2^m, for c with v(c) >= -12 given by its
/// coefficients at exponents [-12, 12]: exhaustive depth-first search for a
/// Laurent polynomial z with exponents in [-6, 12] and
/// z^2 + z = c mod t^13. Such z exists iff the equation is solvable (the
/// remainder then has positive valuation and lifts).
inline bool artin_schreier_solvable(const TableField& F, const std::map<long, std::uint32_t>& c) {
  constexpr long lo = -6, hi = 12;
  std::map<long, std::uint32_t> z;
  auto coeff = [&](long e) -> std::uint32_t {
    if (e < lo || e > hi) return 0;
    auto it = z.find(e);
    return it == z.end() ? 0 : it->second;
  };
  // The constraint at exponent k reads [z^2]_k + z_k = c_k; it is fully
  // assigned once max(k, k/2) is.
  auto check_upto = [&](long e) {
    for (long k = -12; k <= 12; ++k) {
      const long last = (k % 2 == 0) ? std::max(k, k / 2) : k;
      if (last != e && !(e == lo && last < lo)) continue;
      std::uint32_t lhs = coeff(k);
      if (k % 2 == 0) lhs = F.add(lhs, F.mul(coeff(k / 2), coeff(k / 2)));
      if (lhs != c.at(k)) return false;
    }
    return true;
  };
  std::function<bool(long)> dfs = [&](long e) {
    if (e > hi) return true;
    for (std::uint32_t x = 0; x < F.q(); ++x) {
      z[e] = x;
      if (check_upto(e) && dfs(e + 1)) return true;
    }
    z.erase(e);
    return false;
  };
  return dfs(lo);
}

/// Valuation of num/den from the coefficient vectors.
inline std::optional<long> valuation(const std::vector<std::uint32_t>& num, const std::vector<std::uint32_t>& den) {
  auto ord = [](const std::vector<std::uint32_t>& v) -> std::optional<long> {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) return static_cast<long>(i);
    return std::nullopt;
  };
  auto on = ord(num);
  if (!on) return std::nullopt;
  return *on - *ord(den);
}

/// Some monic irreducible of degree m <= 3 over F_p (no roots suffices),
/// low degree first.
inline std::vector<std::uint32_t> irreducible_modulus(std::uint32_t p, unsigned m) {
  if (m == 1) return {0, 1};
  if (m > 3) throw std::invalid_argument("degree above 3");
  std::uint32_t count = 1;
  for (unsigned i = 0; i < m; ++i) count *= p;
  for (std::uint32_t code = 0; code < count; ++code) {
    std::vector<std::uint32_t> c(m + 1, 0);
    std::uint32_t k = code;
    for (unsigned i = 0; i < m; ++i) {
      c[i] = k % p;
      k /= p;
    }
    c[m] = 1;
    bool root = false;
    for (std::uint32_t x = 0; x < p && !root; ++x) {
      std::uint64_t v = 0;
      for (unsigned i = m + 1; i-- > 0;) v = (v * x + c[i]) % p;
      root = v == 0;
    }
    if (!root) return c;
  }
  throw std::logic_error("no irreducible found");
}

/// Value of the integer polynomial sum c_i x^i at x.
inline std::uint32_t eval_poly(const TableField& F, const std::vector<std::uint32_t>& c, std::uint32_t x) {
  std::uint32_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = F.add(F.mul(v, x), F.from_int(c[i]));
  return v;
}

/// Truth values in F_{p^m} of the sentences E x. P(x) = 0 and
/// E x. P(x) != 0 for every P in F_p[x] of degree <= max_deg, indexed by
/// 2 * code(P) + (0 for "=", 1 for "!=").
inline std::vector<bool> one_atom_theory(std::uint32_t p, unsigned m, unsigned max_deg) {
  const TableField F(p, irreducible_modulus(p, m));
  std::uint64_t count = 1;
  for (unsigned i = 0; i <= max_deg; ++i) count *= p;
  std::vector<bool> out(2 * count, false);
  std::vector<std::uint32_t> c(max_deg + 1, 0);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t k = code;
    for (unsigned i = 0; i <= max_deg; ++i) {
      c[i] = static_cast<std::uint32_t>(k % p);
      k /= p;
    }
    bool root = false, nonroot = false;
    for (std::uint32_t x = 0; x < F.q() && !(root && nonroot); ++x) {
      if (eval_poly(F, c, x) == 0) {
        root = true;
      } else {
        nonroot = true;
      }
    }
    out[2 * code] = root;
    out[2 * code + 1] = nonroot;
  }
  return out;
}

/// Every one-atom sentence true in F_{p^m} is true in F_{p^n}.
inline bool theory_included(const std::vector<bool>& small, const std::vector<bool>& big) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] && !big[i]) return false;
  return true;
}

}  // namespace oracle
