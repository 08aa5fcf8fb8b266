#pragma once

// Truncated Laurent series over F_q with explicit absolute precision: the
// value is sum coeffs[i] t^{start+i} + O(t^precision). Exact Laurent
// polynomials carry precision kExact.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "vfrag/algebra/ratfun.hpp"

namespace vfrag {

enum class Tri : std::uint8_t { False, True, Unknown };

inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::True;
}
inline Tri tri_or(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::False;
}
inline Tri tri_not(Tri a) {
  if (a == Tri::Unknown) return a;
  return a == Tri::True ? Tri::False : Tri::True;
}

class LaurentApprox {
 public:
  static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;

  LaurentApprox() = default;
  LaurentApprox(const FiniteField* f, std::int64_t start, std::vector<FqElem> coeffs, std::int64_t precision)
      : f_(f), start_(start), c_(std::move(coeffs)), prec_(precision) {
    normalize();
  }

  static LaurentApprox zero(const FiniteField* f, std::int64_t precision = kExact) {
    return LaurentApprox(f, 0, {}, precision);
  }
  static LaurentApprox monomial(const FiniteField* f, FqElem c, std::int64_t e) {
    return LaurentApprox(f, e, {c}, kExact);
  }
  static LaurentApprox from_int(const FiniteField* f, std::int64_t n) { return monomial(f, f->from_int(n), 0); }

  /// Expansion of r known modulo t^precision.
  static LaurentApprox from_ratfun(const RatFun& r, std::int64_t precision) {
    const FiniteField* f = r.field();
    if (r.is_zero()) return zero(f, kExact);
    if (r.den().degree() == 0) {
      // Polynomial: exact.
      const auto& c = r.num().coeffs();
      FqElem s = f->inv(r.den().lead());
      std::vector<FqElem> out;
      for (auto e : c) out.push_back(f->mul(e, s));
      return LaurentApprox(f, 0, std::move(out), kExact);
    }
    const long on = r.num().order(), od = r.den().order();
    const std::int64_t v = on - od;
    if (r.den().degree() == od) {
      // Monomial denominator: an exact Laurent polynomial.
      const auto& c = r.num().coeffs();
      FqElem s = f->inv(r.den().lead());
      std::vector<FqElem> out;
      for (auto e : c) out.push_back(f->mul(e, s));
      return LaurentApprox(f, -od, std::move(out), kExact);
    }
    if (precision >= kExact) throw PrecisionError("no finite expansion for " + r.to_string());
    if (precision <= v) return zero(f, precision);
    const std::size_t n = static_cast<std::size_t>(precision - v);
    FqPoly num = r.num().unshift(), den = r.den().unshift();
    auto out = series_divide(*f, num.coeffs(), den.coeffs(), n);
    return LaurentApprox(f, v, std::move(out), precision);
  }

  /// Exact when r is a Laurent polynomial, otherwise known modulo
  /// t^max(precision, v(r)+1).
  static LaurentApprox expansion(const RatFun& r, std::int64_t precision) {
    if (r.is_zero()) return zero(r.field());
    const long od = r.den().order();
    if (r.den().degree() == od) return from_ratfun(r, kExact);
    return from_ratfun(r, std::max<std::int64_t>(precision, *r.valuation() + 1));
  }

  const FiniteField* field() const { return f_; }
  std::int64_t start() const { return start_; }
  std::int64_t precision() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  const std::vector<FqElem>& coeffs() const { return c_; }

  FqElem coeff(std::int64_t e) const {
    if (e < start_ || e >= start_ + static_cast<std::int64_t>(c_.size())) return f_->zero();
    return c_[static_cast<std::size_t>(e - start_)];
  }

  /// No nonzero coefficient below the precision.
  bool is_known_zero_prefix() const { return c_.empty(); }
  bool is_exact_zero() const { return c_.empty() && is_exact(); }

  /// Valuation if determined: a nonzero coefficient below the precision.
  /// Exact zero has valuation +infinity, returned as `infinite = true`.
  std::optional<std::int64_t> known_valuation() const {
    if (c_.empty()) return std::nullopt;
    return start_;
  }

  /// Lower bound on the valuation (the precision when no term is known).
  std::int64_t valuation_lower_bound() const { return c_.empty() ? prec_ : start_; }

  LaurentApprox truncate(std::int64_t precision) const {
    if (precision >= prec_) return *this;
    return LaurentApprox(f_, start_, c_, precision);
  }

  friend LaurentApprox operator+(const LaurentApprox& a, const LaurentApprox& b) {
    return combine(a, b, false);
  }
  friend LaurentApprox operator-(const LaurentApprox& a, const LaurentApprox& b) { return combine(a, b, true); }

  LaurentApprox operator-() const {
    std::vector<FqElem> r(c_);
    for (auto& e : r) e = f_->neg(e);
    return LaurentApprox(f_, start_, std::move(r), prec_);
  }

  friend LaurentApprox operator*(const LaurentApprox& a, const LaurentApprox& b) {
    const FiniteField* f = a.f_ ? a.f_ : b.f_;
    if (a.is_exact_zero() || b.is_exact_zero()) return zero(f);
    const std::int64_t va = a.valuation_lower_bound(), vb = b.valuation_lower_bound();
    std::int64_t prec = kExact;
    if (!a.is_exact()) prec = std::min(prec, a.prec_ + vb);
    if (!b.is_exact()) prec = std::min(prec, b.prec_ + va);
    if (a.c_.empty() || b.c_.empty()) return zero(f, prec);
    const std::int64_t start = a.start_ + b.start_;
    std::size_t len = a.c_.size() + b.c_.size() - 1;
    if (prec < kExact) len = static_cast<std::size_t>(std::clamp<std::int64_t>(prec - start, 0, static_cast<std::int64_t>(len)));
    std::vector<FqElem> r(len, f->zero());
    for (std::size_t i = 0; i < a.c_.size() && i < len; ++i) {
      if (a.c_[i].v == 0) continue;
      for (std::size_t j = 0; j < b.c_.size() && i + j < len; ++j) r[i + j] = f->add(r[i + j], f->mul(a.c_[i], b.c_[j]));
    }
    return LaurentApprox(f, start, std::move(r), prec);
  }

  /// Multiplicative inverse with relative precision `rel_cap` for exact
  /// inputs; inv(0) = 0 when the input is exactly zero. Returns nullopt if the
  /// valuation is not determined.
  std::optional<LaurentApprox> inverse(std::int64_t rel_cap) const {
    if (is_exact_zero()) return *this;
    if (c_.empty()) return std::nullopt;
    const std::int64_t v = start_;
    std::int64_t rel = is_exact() ? rel_cap : prec_ - v;
    if (is_exact() && c_.size() == 1) return LaurentApprox(f_, -v, {f_->inv(c_[0])}, kExact);
    rel = std::max<std::int64_t>(rel, 0);
    auto out = series_divide(*f_, {f_->one()}, c_, static_cast<std::size_t>(rel));
    return LaurentApprox(f_, -v, std::move(out), -v + rel);
  }

  LaurentApprox pow(unsigned e) const {
    LaurentApprox r = from_int(f_, 1), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  /// Three-valued equality: True only if both exact and identical.
  friend Tri compare_equal(const LaurentApprox& a, const LaurentApprox& b) {
    LaurentApprox d = a - b;
    if (!d.c_.empty()) return Tri::False;
    return d.is_exact() ? Tri::True : Tri::Unknown;
  }

  /// Three-valued membership in the valuation ring.
  Tri in_o() const {
    if (!c_.empty()) return start_ >= 0 ? Tri::True : Tri::False;
    return prec_ >= 0 ? Tri::True : Tri::Unknown;
  }

  /// Exact rational function when the series is an exact Laurent polynomial.
  std::optional<RatFun> to_ratfun() const {
    if (!is_exact()) return std::nullopt;
    FqOps k{f_};
    if (c_.empty()) return RatFun::zero(f_);
    if (start_ >= 0) {
      std::vector<FqElem> c(static_cast<std::size_t>(start_), f_->zero());
      c.insert(c.end(), c_.begin(), c_.end());
      return RatFun(FqPoly(k, std::move(c)));
    }
    return RatFun(FqPoly(k, c_), FqPoly::monomial(k, f_->one(), static_cast<std::size_t>(-start_)));
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].v == 0) continue;
      if (!s.empty()) s += " + ";
      std::string cs = f_->to_string(c_[i]);
      std::int64_t e = start_ + static_cast<std::int64_t>(i);
      if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
      if (e == 0) {
        s += cs;
      } else {
        if (cs != "1") s += cs + "*";
        s += "t";
        if (e != 1) s += "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
      }
    }
    if (s.empty()) s = "0";
    if (!is_exact()) s += " + O(t^" + std::to_string(prec_) + ")";
    return s;
  }

 private:
  static LaurentApprox combine(const LaurentApprox& a, const LaurentApprox& b, bool subtract) {
    const FiniteField* f = a.f_ ? a.f_ : b.f_;
    const std::int64_t prec = std::min(a.prec_, b.prec_);
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    for (const auto* x : {&a, &b}) {
      if (x->c_.empty()) continue;
      lo = std::min(lo, x->start_);
      hi = std::max(hi, x->start_ + static_cast<std::int64_t>(x->c_.size()));
    }
    if (lo > hi) return zero(f, prec);
    hi = std::min(hi, prec);
    if (hi <= lo) return zero(f, prec);
    std::vector<FqElem> r(static_cast<std::size_t>(hi - lo), f->zero());
    for (std::int64_t e = lo; e < hi; ++e) {
      FqElem y = b.coeff(e);
      r[static_cast<std::size_t>(e - lo)] = f->add(a.coeff(e), subtract ? f->neg(y) : y);
    }
    return LaurentApprox(f, lo, std::move(r), prec);
  }

  // First n coefficients of num/den as power series; den[0] != 0.
  static std::vector<FqElem> series_divide(const FiniteField& f, const std::vector<FqElem>& num,
                                           const std::vector<FqElem>& den, std::size_t n) {
    std::vector<FqElem> out(n, f.zero());
    const FqElem d0inv = f.inv(den[0]);
    for (std::size_t i = 0; i < n; ++i) {
      FqElem acc = i < num.size() ? num[i] : f.zero();
      const std::size_t jmax = std::min(i, den.size() - 1);
      for (std::size_t j = 1; j <= jmax; ++j) acc = f.sub(acc, f.mul(den[j], out[i - j]));
      out[i] = f.mul(acc, d0inv);
    }
    return out;
  }

  void normalize() {
    if (!f_) return;
    // Drop coefficients at or above the precision, then zeros at both ends.
    if (prec_ < kExact) {
      std::int64_t keep = prec_ - start_;
      if (keep < 0) keep = 0;
      if (static_cast<std::int64_t>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
    }
    while (!c_.empty() && c_.back().v == 0) c_.pop_back();
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].v == 0) ++lead;
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
      start_ += static_cast<std::int64_t>(lead);
    }
    if (c_.empty()) start_ = 0;
  }

  const FiniteField* f_ = nullptr;
  std::int64_t start_ = 0;
  std::vector<FqElem> c_;
  std::int64_t prec_ = kExact;
};

}  // namespace vfrag
