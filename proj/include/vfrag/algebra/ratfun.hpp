#pragma once

// Rational functions over F_q in t with the t-adic valuation.

#include <cstdint>
#include <optional>
#include <string>

#include "vfrag/algebra/poly.hpp"

namespace vfrag {

/// t-adic valuation; nullopt stands for +infinity.
using Valuation = std::optional<std::int64_t>;

/// num/den with den monic and gcd(num, den) = 1. The zero function is 0/1.
class RatFun {
 public:
  RatFun() = default;
  explicit RatFun(const FiniteField* f) : num_(FqOps{f}), den_(FqPoly::constant(FqOps{f}, f->one())) {}
  RatFun(FqPoly num, FqPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  explicit RatFun(FqPoly num) : num_(std::move(num)), den_(FqPoly::constant(num_.ops(), num_.ops().one())) {}

  static RatFun zero(const FiniteField* f) { return RatFun(f); }
  static RatFun constant(const FiniteField* f, FqElem c) { return RatFun(FqPoly::constant(FqOps{f}, c)); }
  static RatFun from_int(const FiniteField* f, std::int64_t n) { return constant(f, f->from_int(n)); }
  static RatFun t(const FiniteField* f) { return RatFun(FqPoly::x(FqOps{f})); }
  /// c * t^e for any integer e.
  static RatFun monomial(const FiniteField* f, FqElem c, std::int64_t e) {
    FqOps k{f};
    if (e >= 0) return RatFun(FqPoly::monomial(k, c, static_cast<std::size_t>(e)));
    return RatFun(FqPoly::constant(k, c), FqPoly::monomial(k, f->one(), static_cast<std::size_t>(-e)));
  }

  const FiniteField* field() const { return num_.ops().f; }
  const FqPoly& num() const { return num_; }
  const FqPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Valuation valuation() const {
    if (is_zero()) return std::nullopt;
    return static_cast<std::int64_t>(num_.order()) - den_.order();
  }

  bool in_o() const {
    auto v = valuation();
    return !v || *v >= 0;
  }

  /// Coefficient of t^{valuation} (zero for the zero function).
  FqElem leading_coefficient() const {
    if (is_zero()) return field()->zero();
    FqElem n = num_.coeff(static_cast<std::size_t>(num_.order()));
    FqElem d = den_.coeff(static_cast<std::size_t>(den_.order()));
    return field()->div(n, d);
  }

  /// Residue class of an element of O (zero if the valuation is positive).
  FqElem residue() const {
    auto v = valuation();
    if (!v || *v > 0) return field()->zero();
    return leading_coefficient();
  }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFun(a.num_ - b.num_, a.den_);
    return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFun operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return a;
    if (b.is_zero()) return b;
    // Cross-cancel first to keep intermediate degrees small.
    FqPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    RatFun r;
    r.num_ = (a.num_ / g1) * (b.num_ / g2);
    r.den_ = (a.den_ / g2) * (b.den_ / g1);
    r.fix_sign();
    return r;
  }
  /// Total inverse: inv(0) = 0.
  RatFun inv() const {
    if (is_zero()) return *this;
    return RatFun(den_, num_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inv(); }

  RatFun pow(unsigned e) const {
    RatFun r = from_int(field(), 1), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  RatFun scale(FqElem c) const { return RatFun(num_.scale(c), den_); }

  friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string to_string() const {
    const FiniteField& f = *field();
    std::string n = vfrag::to_string(num_, f);
    if (den_.degree() == 0) return n;
    if (num_.degree() > 0 && num_.coeffs().size() > 1 && n.find('+') != std::string::npos) n = "(" + n + ")";
    std::string d = vfrag::to_string(den_, f);
    if (d.find('+') != std::string::npos || d.find('*') != std::string::npos) d = "(" + d + ")";
    return n + "/" + d;
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw Error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = FqPoly::constant(num_.ops().f ? num_.ops() : den_.ops(), den_.ops().one());
      num_ = FqPoly(den_.ops());
      return;
    }
    if (den_.degree() > 0) {
      FqPoly g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
      }
    }
    fix_sign();
  }

  void fix_sign() {
    FqElem lc = den_.lead();
    if (lc.v != 1) {
      const FiniteField* f = den_.ops().f;
      FqElem s = f->inv(lc);
      num_ = num_.scale(s);
      den_ = den_.scale(s);
    }
  }

  FqPoly num_;
  FqPoly den_;
};

/// F_q(t) through the CoefficientField interface, for polynomials in a
/// further variable.
struct RatFunOps {
  using Elem = RatFun;
  const FiniteField* f;
  Elem zero() const { return RatFun::zero(f); }
  Elem one() const { return RatFun::from_int(f, 1); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
};

/// Polynomials over F_q(t).
using RatPoly = DensePoly<RatFunOps>;

}  // namespace vfrag
