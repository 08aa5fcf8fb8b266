#pragma once

// Exhaustive template suite: ring-language sentences with at most two
// quantifiers and at most two atoms, over a fixed pool of small terms.

#include <functional>
#include <vector>

#include "vfrag/formula.hpp"

namespace templates {

using vfrag::Formula;
using vfrag::Term;

inline std::vector<Term> term_pool() {
  Term x0 = Term::variable(0), x1 = Term::variable(1), one = Term::integer(1);
  return {Term::integer(0), one,          x0,          x1,          x0 * x0,     x0 * x1,
          x0 + x1,          x0 + one,     x1 * x1,     x0 * x0 + x0 + one,        x0 * x0 * x0 * x0,
          x0 * x0 - Term::integer(2)};
}

/// Literals t_i = t_j and t_i != t_j for i < j.
inline std::vector<Formula> literal_pool() {
  auto ts = term_pool();
  std::vector<Formula> out;
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      out.push_back(Formula::eq(ts[i], ts[j]));
      out.push_back(Formula::ne(ts[i], ts[j]));
    }
  return out;
}

/// Calls `visit` on every sentence of the suite.
inline void for_each_sentence(const std::function<void(const Formula&)>& visit) {
  const auto lits = literal_pool();
  auto emit = [&](const Formula& f) {
    if (vfrag::is_sentence(f)) visit(f);
  };
  auto ex = [](vfrag::VarIndex v, Formula f) { return Formula::exists(v, std::move(f)); };
  for (const auto& a : lits) {
    emit(ex(0, a));
    emit(ex(0, ex(1, a)));
    emit(Formula::negation(ex(0, a)));
    emit(ex(0, Formula::negation(ex(1, a))));
  }
  for (const auto& a : lits)
    for (const auto& b : lits)
      for (int c = 0; c < 2; ++c) {
        auto join = [c](Formula l, Formula r) { return c ? Formula::disj(std::move(l), std::move(r)) : Formula::conj(std::move(l), std::move(r)); };
        emit(ex(0, join(a, b)));
        emit(ex(0, ex(1, join(a, b))));
        emit(join(ex(0, a), ex(1, b)));
        emit(ex(0, join(a, ex(1, b))));
        emit(ex(0, join(a, Formula::negation(ex(1, b)))));
      }
}

}  // namespace templates
