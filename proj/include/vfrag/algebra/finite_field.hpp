#pragma once

// Finite fields F_q = F_p[a]/(modulus). Elements are stored as integers
// whose base-p digits are the coefficients of 1, a, a^2, ... so that the
// prime subfield is exactly {0, ..., p-1}.

#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vfrag/error.hpp"

namespace vfrag {

struct FqElem {
  std::uint32_t v = 0;
  friend bool operator==(FqElem, FqElem) = default;
  friend auto operator<=>(FqElem, FqElem) = default;
};

namespace detail {

// Dense polynomials over F_p, low degree first, no trailing zeros.
using PrimePoly = std::vector<std::uint32_t>;

inline void pp_trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t pp_inv(std::uint32_t a, std::uint32_t p) {
  // Fermat; p is small.
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

inline PrimePoly pp_mul(const PrimePoly& a, const PrimePoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  pp_trim(r);
  return r;
}

inline PrimePoly pp_mod(PrimePoly a, const PrimePoly& m, std::uint32_t p) {
  pp_trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lc_inv = pp_inv(m.back(), p);
  while (a.size() > dm) {
    std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t{a.back()} * lc_inv % p);
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t{p - c} * m[i]) % p);
    pp_trim(a);
  }
  return a;
}

inline PrimePoly pp_sub(PrimePoly a, const PrimePoly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  pp_trim(a);
  return a;
}

inline PrimePoly pp_gcd(PrimePoly a, PrimePoly b, std::uint32_t p) {
  pp_trim(a);
  pp_trim(b);
  while (!b.empty()) {
    a = pp_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// x^(p^k) mod m, by repeated p-th powering.
inline PrimePoly pp_frobenius_power(const PrimePoly& m, std::uint32_t p, unsigned k) {
  PrimePoly x = pp_mod({0, 1}, m, p);
  for (unsigned i = 0; i < k; ++i) {
    PrimePoly r{1}, b = x;
    for (std::uint32_t e = p; e; e >>= 1) {
      if (e & 1) r = pp_mod(pp_mul(r, b, p), m, p);
      b = pp_mod(pp_mul(b, b, p), m, p);
    }
    x = r;
  }
  return x;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

/// Rabin's test: monic f of degree m is irreducible over F_p iff
/// gcd(x^{p^k} - x, f) = 1 for k <= m/2.
inline bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p) {
  const unsigned m = static_cast<unsigned>(monic.size()) - 1;
  if (m == 0) return false;
  if (m == 1) return true;
  for (unsigned k = 1; k <= m / 2; ++k) {
    auto xpk = detail::pp_frobenius_power(monic, p, k);
    auto g = detail::pp_gcd(detail::pp_sub(xpk, {0, 1}, p), monic, p);
    if (g.size() != 1) return false;
  }
  return true;
}

/// F_{p^m}. Immutable after construction; build one with `make` and share it.
class FiniteField {
 public:
  static constexpr std::uint64_t kDefaultMaxOrder = std::uint64_t{1} << 20;

  /// Uses the least monic irreducible of degree m, ordering candidates by
  /// the integer encoding of their lower coefficients.
  static std::shared_ptr<const FiniteField> make(std::uint32_t p, unsigned m,
                                                 std::uint64_t max_order = kDefaultMaxOrder) {
    check_params(p, m, max_order);
    std::uint64_t count = 1;
    for (unsigned i = 0; i < m; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint32_t> f(m + 1, 0);
      std::uint64_t c = code;
      for (unsigned i = 0; i < m; ++i) {
        f[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      f[m] = 1;
      if (is_irreducible_mod_p(f, p)) return std::shared_ptr<const FiniteField>(new FiniteField(p, m, std::move(f)));
    }
    throw ModelError("no irreducible polynomial found");  // unreachable for prime p
  }

  /// Explicit modulus (monic, low degree first). Irreducibility is checked.
  static std::shared_ptr<const FiniteField> make_with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus,
                                                              std::uint64_t max_order = kDefaultMaxOrder) {
    if (modulus.size() < 2 || modulus.back() != 1) throw ModelError("modulus must be monic of degree >= 1");
    unsigned m = static_cast<unsigned>(modulus.size()) - 1;
    check_params(p, m, max_order);
    for (auto& c : modulus) {
      if (c >= p) throw ModelError("modulus coefficient out of range");
    }
    if (!is_irreducible_mod_p(modulus, p)) throw ModelError("modulus is not irreducible");
    return std::shared_ptr<const FiniteField>(new FiniteField(p, m, std::move(modulus)));
  }

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  std::uint32_t order() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FqElem zero() const { return {0}; }
  FqElem one() const { return {1}; }
  FqElem element(std::uint32_t index) const { return {index}; }  // index < order()
  FqElem primitive() const { return {exp_[1]}; }

  FqElem from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r)};
  }

  FqElem add(FqElem a, FqElem b) const {
    if (p_ == 2) return {a.v ^ b.v};
    if (m_ == 1) return {(a.v + b.v) % p_};
    std::uint32_t r = 0, place = 1;
    for (unsigned i = 0; i < m_; ++i) {
      std::uint32_t d = (a.v % p_ + b.v % p_) % p_;
      r += d * place;
      place *= p_;
      a.v /= p_;
      b.v /= p_;
    }
    return {r};
  }

  FqElem neg(FqElem a) const {
    if (p_ == 2) return a;
    if (m_ == 1) return {(p_ - a.v) % p_};
    std::uint32_t r = 0, place = 1;
    for (unsigned i = 0; i < m_; ++i) {
      r += ((p_ - a.v % p_) % p_) * place;
      place *= p_;
      a.v /= p_;
    }
    return {r};
  }

  FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

  FqElem mul(FqElem a, FqElem b) const {
    if (a.v == 0 || b.v == 0) return {0};
    std::uint64_t s = std::uint64_t{log_[a.v]} + log_[b.v];
    if (s >= q_ - 1) s -= q_ - 1;
    return {exp_[s]};
  }

  /// Total inverse: inv(0) = 0.
  FqElem inv(FqElem a) const {
    if (a.v == 0) return {0};
    std::uint32_t l = log_[a.v];
    return {exp_[l == 0 ? 0 : (q_ - 1) - l]};
  }

  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }

  FqElem pow(FqElem a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.v == 0) return zero();
    std::uint64_t l = (std::uint64_t{log_[a.v]} * (e % (q_ - 1))) % (q_ - 1);
    return {exp_[l]};
  }

  /// Square root if one exists (always in characteristic 2).
  std::optional<FqElem> sqrt(FqElem a) const {
    if (a.v == 0) return zero();
    std::uint32_t l = log_[a.v];
    if (p_ == 2) {
      // q-1 is odd, so halving the logarithm is multiplication by 2^{-1}.
      std::uint64_t half = (std::uint64_t{l} * (q_ / 2)) % (q_ - 1);
      return FqElem{exp_[half]};
    }
    if (l % 2 != 0) return std::nullopt;
    return FqElem{exp_[l / 2]};
  }

  bool is_square(FqElem a) const { return sqrt(a).has_value(); }

  /// Absolute trace to F_p, returned as an element of the prime subfield.
  FqElem trace(FqElem a) const {
    FqElem s = zero(), x = a;
    for (unsigned k = 0; k < m_; ++k) {
      s = add(s, x);
      x = pow(x, p_);
    }
    return s;
  }

  /// Solves b^2 + b = c (p = 2) by linear algebra over F_2; none iff
  /// trace(c) = 1.
  std::optional<FqElem> solve_artin_schreier(FqElem c) const {
    if (p_ != 2) throw ModelError("Artin-Schreier residue equation needs characteristic 2");
    // Columns: images of the basis vectors under b -> b^2 + b.
    std::vector<std::uint32_t> cols(m_);
    for (unsigned i = 0; i < m_; ++i) {
      FqElem e{1u << i};
      cols[i] = add(mul(e, e), e).v;
    }
    // Gaussian elimination on the augmented system, rows = bits.
    std::vector<std::uint64_t> rows(m_, 0);  // bit i: column i; bit m_: rhs
    for (unsigned r = 0; r < m_; ++r) {
      for (unsigned i = 0; i < m_; ++i)
        if ((cols[i] >> r) & 1u) rows[r] |= std::uint64_t{1} << i;
      if ((c.v >> r) & 1u) rows[r] |= std::uint64_t{1} << m_;
    }
    std::vector<int> pivot_col_of_row(m_, -1);
    unsigned rank = 0;
    for (unsigned col = 0; col < m_ && rank < m_; ++col) {
      unsigned sel = rank;
      while (sel < m_ && !((rows[sel] >> col) & 1u)) ++sel;
      if (sel == m_) continue;
      std::swap(rows[sel], rows[rank]);
      for (unsigned r = 0; r < m_; ++r)
        if (r != rank && ((rows[r] >> col) & 1u)) rows[r] ^= rows[rank];
      pivot_col_of_row[rank] = static_cast<int>(col);
      ++rank;
    }
    for (unsigned r = rank; r < m_; ++r)
      if ((rows[r] >> m_) & 1u) return std::nullopt;
    std::uint32_t b = 0;
    for (unsigned r = 0; r < rank; ++r)
      if ((rows[r] >> m_) & 1u) b |= 1u << pivot_col_of_row[r];
    return FqElem{b};
  }

  std::string to_string(FqElem a) const {
    if (m_ == 1) return std::to_string(a.v);
    std::ostringstream os;
    bool first = true;
    std::uint32_t v = a.v;
    for (unsigned i = 0; i < m_; ++i, v /= p_) {
      std::uint32_t d = v % p_;
      if (d == 0) continue;
      if (!first) os << '+';
      first = false;
      if (i == 0 || d != 1) os << d;
      if (i >= 1) os << 'a';
      if (i >= 2) os << '^' << i;
    }
    if (first) os << '0';
    return os.str();
  }

  std::string name() const { return "F_" + std::to_string(q_); }

 private:
  FiniteField(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus)
      : p_(p), m_(m), modulus_(std::move(modulus)) {
    q_ = 1;
    for (unsigned i = 0; i < m_; ++i) q_ *= p_;
    build_tables();
  }

  static void check_params(std::uint32_t p, unsigned m, std::uint64_t max_order) {
    if (!detail::is_prime(p)) throw ModelError("characteristic " + std::to_string(p) + " is not prime");
    if (m < 1) throw ModelError("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
      q *= p;
      if (q > max_order) throw ModelError("field order exceeds bound " + std::to_string(max_order));
    }
  }

  detail::PrimePoly to_poly(std::uint32_t v) const {
    detail::PrimePoly r;
    for (unsigned i = 0; i < m_; ++i, v /= p_) r.push_back(v % p_);
    detail::pp_trim(r);
    return r;
  }

  std::uint32_t from_poly(const detail::PrimePoly& a) const {
    std::uint32_t r = 0, place = 1;
    for (std::size_t i = 0; i < a.size() && i < m_; ++i, place *= p_) r += a[i] * place;
    return r;
  }

  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    return from_poly(detail::pp_mod(detail::pp_mul(to_poly(a), to_poly(b), p_), modulus_, p_));
  }

  void build_tables() {
    exp_.assign(q_, 0);
    log_.assign(q_, 0);
    if (q_ == 2) {
      exp_[0] = exp_[1] = 1;
      return;
    }
    // Prime factors of q-1 for the primitivity test.
    std::vector<std::uint32_t> primes;
    std::uint32_t n = q_ - 1;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        primes.push_back(d);
        while (n % d == 0) n /= d;
      }
    }
    if (n > 1) primes.push_back(n);
    auto slow_pow = [&](std::uint32_t a, std::uint64_t e) {
      std::uint32_t r = 1;
      while (e) {
        if (e & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        e >>= 1;
      }
      return r;
    };
    std::uint32_t g = 0;
    for (std::uint32_t cand = 2; cand < q_ && g == 0; ++cand) {
      bool ok = true;
      for (auto r : primes)
        if (slow_pow(cand, (q_ - 1) / r) == 1) ok = false;
      if (ok) g = cand;
    }
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = slow_mul(x, g);
    }
    exp_[q_ - 1] = 1;
  }

  std::uint32_t p_;
  unsigned m_;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

}  // namespace vfrag
