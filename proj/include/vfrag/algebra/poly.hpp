#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vfrag/algebra/finite_field.hpp"

namespace vfrag {

/// What a coefficient field must provide for DensePoly.
template <class K>
concept CoefficientField = requires(const K& k, typename K::Elem a, typename K::Elem b) {
  { k.zero() } -> std::convertible_to<typename K::Elem>;
  { k.one() } -> std::convertible_to<typename K::Elem>;
  { k.add(a, b) } -> std::convertible_to<typename K::Elem>;
  { k.sub(a, b) } -> std::convertible_to<typename K::Elem>;
  { k.neg(a) } -> std::convertible_to<typename K::Elem>;
  { k.mul(a, b) } -> std::convertible_to<typename K::Elem>;
  { k.div(a, b) } -> std::convertible_to<typename K::Elem>;
  { k.is_zero(a) } -> std::convertible_to<bool>;
};

/// Adapter exposing FiniteField through the CoefficientField interface.
struct FqOps {
  using Elem = FqElem;
  const FiniteField* f;
  Elem zero() const { return f->zero(); }
  Elem one() const { return f->one(); }
  Elem add(Elem a, Elem b) const { return f->add(a, b); }
  Elem sub(Elem a, Elem b) const { return f->sub(a, b); }
  Elem neg(Elem a) const { return f->neg(a); }
  Elem mul(Elem a, Elem b) const { return f->mul(a, b); }
  Elem div(Elem a, Elem b) const { return f->div(a, b); }
  bool is_zero(Elem a) const { return a.v == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }
};

/// Dense univariate polynomial over a field, lowest degree first, with no
/// trailing zero coefficients. The coefficient field must outlive it.
template <CoefficientField K>
class DensePoly {
 public:
  using Elem = typename K::Elem;

  DensePoly() = default;
  explicit DensePoly(K k) : k_(k) {}
  DensePoly(K k, std::vector<Elem> c) : k_(k), c_(std::move(c)) { trim(); }

  static DensePoly constant(K k, Elem a) { return DensePoly(k, {a}); }
  static DensePoly monomial(K k, Elem a, std::size_t deg) {
    std::vector<Elem> c(deg + 1, k.zero());
    c[deg] = a;
    return DensePoly(k, std::move(c));
  }
  static DensePoly x(K k) { return monomial(k, k.one(), 1); }

  const K& ops() const { return k_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : k_.zero(); }
  Elem lead() const { return c_.empty() ? k_.zero() : c_.back(); }

  /// Index of the lowest nonzero coefficient; -1 for zero.
  long order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!k_.is_zero(c_[i])) return static_cast<long>(i);
    return -1;
  }

  friend DensePoly operator+(const DensePoly& a, const DensePoly& b) {
    const K& k = a.pick(b);
    std::vector<Elem> r(std::max(a.c_.size(), b.c_.size()), k.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = k.add(a.coeff(i), b.coeff(i));
    return DensePoly(k, std::move(r));
  }

  friend DensePoly operator-(const DensePoly& a, const DensePoly& b) {
    const K& k = a.pick(b);
    std::vector<Elem> r(std::max(a.c_.size(), b.c_.size()), k.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = k.sub(a.coeff(i), b.coeff(i));
    return DensePoly(k, std::move(r));
  }

  DensePoly operator-() const {
    std::vector<Elem> r(c_);
    for (auto& e : r) e = k_.neg(e);
    return DensePoly(k_, std::move(r));
  }

  friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
    const K& k = a.pick(b);
    if (a.is_zero() || b.is_zero()) return DensePoly(k);
    std::vector<Elem> r(a.c_.size() + b.c_.size() - 1, k.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (k.is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(a.c_[i], b.c_[j]));
    }
    return DensePoly(k, std::move(r));
  }

  DensePoly scale(Elem s) const {
    std::vector<Elem> r(c_);
    for (auto& e : r) e = k_.mul(e, s);
    return DensePoly(k_, std::move(r));
  }

  /// Multiplies by x^n.
  DensePoly shift(std::size_t n) const {
    if (is_zero()) return *this;
    std::vector<Elem> r(n, k_.zero());
    r.insert(r.end(), c_.begin(), c_.end());
    return DensePoly(k_, std::move(r));
  }

  /// Drops the factor x^order().
  DensePoly unshift() const {
    long o = order();
    if (o <= 0) return *this;
    return DensePoly(k_, std::vector<Elem>(c_.begin() + o, c_.end()));
  }

  /// Quotient and remainder; `d` must be nonzero.
  friend std::pair<DensePoly, DensePoly> divmod(const DensePoly& a, const DensePoly& d) {
    const K& k = a.pick(d);
    if (a.degree() < d.degree()) return {DensePoly(k), a};
    std::vector<Elem> rem(a.c_);
    std::vector<Elem> quo(a.c_.size() - d.c_.size() + 1, k.zero());
    const Elem lc = d.c_.back();
    for (long i = static_cast<long>(quo.size()) - 1; i >= 0; --i) {
      const Elem top = rem[i + d.c_.size() - 1];
      if (k.is_zero(top)) continue;
      Elem c = k.div(top, lc);
      quo[i] = c;
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[i + j] = k.sub(rem[i + j], k.mul(c, d.c_[j]));
    }
    return {DensePoly(k, std::move(quo)), DensePoly(k, std::move(rem))};
  }

  friend DensePoly operator%(const DensePoly& a, const DensePoly& d) { return divmod(a, d).second; }
  friend DensePoly operator/(const DensePoly& a, const DensePoly& d) { return divmod(a, d).first; }

  DensePoly monic() const {
    if (is_zero()) return *this;
    return scale(k_.div(k_.one(), lead()));
  }

  /// Monic gcd; gcd(0, 0) = 0.
  friend DensePoly gcd(DensePoly a, DensePoly b) {
    while (!b.is_zero()) {
      DensePoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  Elem eval(Elem x) const {
    Elem r = k_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = k_.add(k_.mul(r, x), *it);
    return r;
  }

  /// Formal derivative.
  DensePoly derivative() const {
    if (c_.size() <= 1) return DensePoly(k_);
    std::vector<Elem> r(c_.size() - 1, k_.zero());
    for (std::size_t i = 1; i < c_.size(); ++i) {
      Elem acc = k_.zero();
      for (std::size_t j = 0; j < i; ++j) acc = k_.add(acc, c_[i]);
      r[i - 1] = acc;
    }
    return DensePoly(k_, std::move(r));
  }

  DensePoly pow(unsigned e) const {
    DensePoly r = constant(k_, k_.one()), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const DensePoly& a, const DensePoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!a.k_.equal(a.c_[i], b.c_[i])) return false;
    return true;
  }

 private:
  // Default-constructed polynomials carry no field; borrow the other's.
  const K& pick(const DensePoly& other) const { return has_ops() ? k_ : other.k_; }
  bool has_ops() const {
    if constexpr (requires { k_.f; }) return k_.f != nullptr;
    return true;
  }

  void trim() {
    while (!c_.empty() && k_.is_zero(c_.back())) c_.pop_back();
  }

  K k_{};
  std::vector<Elem> c_;
};

using FqPoly = DensePoly<FqOps>;

inline std::string to_string(const FqPoly& p, const FiniteField& f, char var = 't') {
  if (p.is_zero()) return "0";
  std::string s;
  for (long i = p.degree(); i >= 0; --i) {
    FqElem c = p.coeff(static_cast<std::size_t>(i));
    if (c.v == 0) continue;
    if (!s.empty()) s += "+";
    std::string cs = f.to_string(c);
    bool compound = cs.find('+') != std::string::npos;
    if (i == 0) {
      s += compound ? "(" + cs + ")" : cs;
      continue;
    }
    if (c.v != 1) s += (compound ? "(" + cs + ")" : cs) + "*";
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

}  // namespace vfrag
