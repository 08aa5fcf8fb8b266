#pragma once

// Generic term evaluation over a value domain. A domain supplies
//   Value integer(uint64), uniformizer(), variable(VarIndex),
//   add/sub/mul(Value, Value), inverse(Value).
// Shared subterms are evaluated once per call.

#include <concepts>
#include <unordered_map>

#include "vfrag/formula.hpp"

namespace vfrag {

template <class D>
concept TermDomain = requires(const D& d, typename D::Value a, VarIndex v) {
  { d.integer(std::uint64_t{0}) } -> std::convertible_to<typename D::Value>;
  { d.uniformizer() } -> std::convertible_to<typename D::Value>;
  { d.variable(v) } -> std::convertible_to<typename D::Value>;
  { d.add(a, a) } -> std::convertible_to<typename D::Value>;
  { d.sub(a, a) } -> std::convertible_to<typename D::Value>;
  { d.mul(a, a) } -> std::convertible_to<typename D::Value>;
  { d.inverse(a) } -> std::convertible_to<typename D::Value>;
};

template <TermDomain D>
class TermEvaluator {
 public:
  using Value = typename D::Value;
  explicit TermEvaluator(const D& d) : d_(d) {}

  Value operator()(const Term& t) {
    if (t.is_binary() || t.kind() == TermKind::Inv) {
      if (auto it = memo_.find(t.id()); it != memo_.end()) return it->second;
    }
    Value v = compute(t);
    if (t.is_binary() || t.kind() == TermKind::Inv) memo_.emplace(t.id(), v);
    return v;
  }

 private:
  Value compute(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var: return d_.variable(t.var());
      case TermKind::Int: return d_.integer(t.value());
      case TermKind::Unif: return d_.uniformizer();
      case TermKind::Inv: return d_.inverse((*this)(t.arg()));
      case TermKind::Add: return d_.add((*this)(t.lhs()), (*this)(t.rhs()));
      case TermKind::Sub: return d_.sub((*this)(t.lhs()), (*this)(t.rhs()));
      case TermKind::Mul: return d_.mul((*this)(t.lhs()), (*this)(t.rhs()));
    }
    return d_.integer(0);
  }

  const D& d_;
  std::unordered_map<const TermNode*, Value> memo_;
};

template <TermDomain D>
typename D::Value evaluate(const D& d, const Term& t) {
  TermEvaluator<D> ev(d);
  return ev(t);
}

}  // namespace vfrag
