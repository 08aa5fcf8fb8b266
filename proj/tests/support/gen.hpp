#pragma once

// Random ASTs for property tests.

#include <random>

#include "vfrag/formula.hpp"

namespace gen {

using vfrag::Formula;
using vfrag::Term;

struct Shape {
  unsigned vars = 3;
  unsigned depth = 3;
  unsigned atoms = 4;
  bool inv = false;
  bool in_o = false;
  bool unif = false;
  bool quantifiers = false;
};

class Gen {
 public:
  Gen(std::uint64_t seed, Shape s) : rng_(seed), s_(s) {}

  Term term(unsigned depth) {
    const int leaf_kinds = s_.unif ? 3 : 2;
    if (depth == 0 || pick(3) == 0) {
      switch (pick(leaf_kinds)) {
        case 0: return Term::variable(pick(s_.vars));
        case 1: return Term::integer(pick(4));
        default: return Term::uniformizer();
      }
    }
    const int ops = s_.inv ? 4 : 3;
    switch (pick(ops)) {
      case 0: return Term::add(term(depth - 1), term(depth - 1));
      case 1: return Term::sub(term(depth - 1), term(depth - 1));
      case 2: return Term::mul(term(depth - 1), term(depth - 1));
      default: return Term::inverse(term(depth - 1));
    }
  }

  Formula atom() {
    if (s_.in_o && pick(3) == 0) return Formula::in_o(term(s_.depth));
    return Formula::eq(term(s_.depth), term(s_.depth));
  }

  /// Quantifier-free formula with up to `atoms` atoms and arbitrary negation.
  Formula qf(unsigned atoms) {
    if (atoms <= 1) return pick(3) == 0 ? Formula::negation(atom()) : atom();
    const unsigned left = 1 + pick(atoms - 1);
    Formula a = qf(left), b = qf(atoms - left);
    Formula r = pick(2) == 0 ? Formula::conj(a, b) : Formula::disj(a, b);
    return pick(5) == 0 ? Formula::negation(r) : r;
  }

  /// Any formula, quantifiers placed anywhere (if enabled).
  Formula formula(unsigned atoms) {
    if (atoms <= 1) {
      Formula a = pick(3) == 0 ? Formula::negation(atom()) : atom();
      return maybe_quantify(a);
    }
    const unsigned left = 1 + pick(atoms - 1);
    Formula a = formula(left), b = formula(atoms - left);
    Formula r = pick(2) == 0 ? Formula::conj(a, b) : Formula::disj(a, b);
    if (pick(6) == 0) r = Formula::negation(r);
    return maybe_quantify(r);
  }

  /// Positive combination of qf formulas under existential quantifiers.
  Formula positive_existential(unsigned atoms) {
    if (atoms <= 1) return maybe_quantify(qf(1));
    const unsigned left = 1 + pick(atoms - 1);
    Formula a = positive_existential(left), b = positive_existential(atoms - left);
    return maybe_quantify(pick(2) == 0 ? Formula::conj(a, b) : Formula::disj(a, b));
  }

  unsigned pick(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  Formula maybe_quantify(Formula f) {
    if (s_.quantifiers && pick(3) == 0) return Formula::exists(pick(s_.vars), std::move(f));
    return f;
  }

  std::mt19937_64 rng_;
  Shape s_;
};

}  // namespace gen
