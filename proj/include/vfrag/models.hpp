#pragma once

// Concrete structures: F_q in the ring language, and F_q((t)) with w = t,
// O = {v >= 0} and inv(0) = 0. Quantifier-free evaluation in F_q((t)) is done
// at points of F_q(t), where it is exact.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

#include "vfrag/algebra/laurent.hpp"
#include "vfrag/eval.hpp"
#include "vfrag/formula.hpp"

namespace vfrag {

struct FqModel {
  FieldPtr field;
};

struct LaurentModel {
  FieldPtr field;
  std::int64_t prec = 64;
};

using Structure = std::variant<FqModel, LaurentModel>;

using FqAssignment = std::map<VarIndex, FqElem>;
using RatAssignment = std::map<VarIndex, RatFun>;

inline const FiniteField& field_of(const Structure& s) {
  return std::visit([](const auto& m) -> const FiniteField& { return *m.field; }, s);
}

/// "fq:p=<prime>,m=<nat>" or "laurent:p=<prime>,m=<nat>,prec=<nat>".
/// Throws ModelError on anything else.
inline Structure parse_model_descriptor(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ModelError("bad model descriptor '" + std::string(text) + "'");
  std::string kind(text.substr(0, colon));
  std::map<std::string, std::uint64_t> kv;
  std::string rest(text.substr(colon + 1));
  std::istringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ModelError("bad model parameter '" + item + "'");
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    if (val.empty() || val.find_first_not_of("0123456789") != std::string::npos || val.size() > 9)
      throw ModelError("bad value for parameter '" + key + "'");
    if (kv.contains(key)) throw ModelError("duplicate parameter '" + key + "'");
    kv[key] = std::stoull(val);
  }
  auto need = [&](const char* k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw ModelError(std::string("missing parameter '") + k + "'");
    return it->second;
  };
  if (kind == "fq") {
    for (auto& [k, _] : kv)
      if (k != "p" && k != "m") throw ModelError("unknown parameter '" + k + "'");
    return FqModel{FiniteField::make(static_cast<std::uint32_t>(need("p")), static_cast<unsigned>(need("m")))};
  }
  if (kind == "laurent") {
    for (auto& [k, _] : kv)
      if (k != "p" && k != "m" && k != "prec") throw ModelError("unknown parameter '" + k + "'");
    std::int64_t prec = kv.contains("prec") ? static_cast<std::int64_t>(kv["prec"]) : 64;
    return LaurentModel{FiniteField::make(static_cast<std::uint32_t>(need("p")), static_cast<unsigned>(need("m"))),
                        prec};
  }
  throw ModelError("unknown model kind '" + kind + "'");
}

inline std::string describe(const Structure& s) {
  if (auto* f = std::get_if<FqModel>(&s)) {
    return "fq:p=" + std::to_string(f->field->characteristic()) + ",m=" + std::to_string(f->field->degree());
  }
  const auto& l = std::get<LaurentModel>(s);
  return "laurent:p=" + std::to_string(l.field->characteristic()) + ",m=" + std::to_string(l.field->degree()) +
         ",prec=" + std::to_string(l.prec);
}

// Value domains for TermEvaluator.

struct FqDomain {
  using Value = FqElem;
  const FiniteField& f;
  const FqAssignment& a;
  Value integer(std::uint64_t n) const { return f.from_int(static_cast<std::int64_t>(n % f.characteristic())); }
  Value uniformizer() const { throw LanguageError("constant w has no interpretation in a finite field model"); }
  Value variable(VarIndex v) const {
    auto it = a.find(v);
    if (it == a.end()) throw Error("unassigned variable x" + std::to_string(v));
    return it->second;
  }
  Value add(Value x, Value y) const { return f.add(x, y); }
  Value sub(Value x, Value y) const { return f.sub(x, y); }
  Value mul(Value x, Value y) const { return f.mul(x, y); }
  Value inverse(Value) const { throw LanguageError("inv is not interpreted in a finite field model (ring language)"); }
};

struct RatFunDomain {
  using Value = RatFun;
  const FiniteField& f;
  const RatAssignment& a;
  Value integer(std::uint64_t n) const {
    return RatFun::from_int(&f, static_cast<std::int64_t>(n % f.characteristic()));
  }
  Value uniformizer() const { return RatFun::t(&f); }
  Value variable(VarIndex v) const {
    auto it = a.find(v);
    if (it == a.end()) throw Error("unassigned variable x" + std::to_string(v));
    return it->second;
  }
  Value add(const Value& x, const Value& y) const { return x + y; }
  Value sub(const Value& x, const Value& y) const { return x - y; }
  Value mul(const Value& x, const Value& y) const { return x * y; }
  Value inverse(const Value& x) const { return x.inv(); }
};

inline FqElem eval_term(const FqModel& s, const Term& t, const FqAssignment& a) {
  return evaluate(FqDomain{*s.field, a}, t);
}

inline RatFun eval_term(const FiniteField& f, const Term& t, const RatAssignment& a) {
  return evaluate(RatFunDomain{f, a}, t);
}

inline RatFun eval_term(const LaurentModel& s, const Term& t, const RatAssignment& a) {
  return eval_term(*s.field, t, a);
}

namespace detail {

template <class D, class Pred>
bool eval_qf_with(TermEvaluator<D>& ev, const Formula& f, const Pred& in_o) {
  switch (f.kind()) {
    case FormulaKind::Eq: return ev(f.left()) == ev(f.right());
    case FormulaKind::InO: return in_o(ev(f.term()));
    case FormulaKind::Not: return !eval_qf_with(ev, f.sub(), in_o);
    case FormulaKind::And: return eval_qf_with(ev, f.lhs(), in_o) && eval_qf_with(ev, f.rhs(), in_o);
    case FormulaKind::Or: return eval_qf_with(ev, f.lhs(), in_o) || eval_qf_with(ev, f.rhs(), in_o);
    case FormulaKind::Exists: break;
  }
  throw FragmentError("eval_qf requires a quantifier-free formula");
}

}  // namespace detail

inline bool eval_qf(const FqModel& s, const Formula& f, const FqAssignment& a) {
  FqDomain d{*s.field, a};
  TermEvaluator<FqDomain> ev(d);
  return detail::eval_qf_with(ev, f, [](FqElem) -> bool {
    throw LanguageError("predicate O is not interpreted in a finite field model");
  });
}

/// Quantifier-free truth in F_q((t)) at a point of F_q(t).
inline bool eval_qf(const FiniteField& field, const Formula& f, const RatAssignment& a) {
  RatFunDomain d{field, a};
  TermEvaluator<RatFunDomain> ev(d);
  return detail::eval_qf_with(ev, f, [](const RatFun& x) { return x.in_o(); });
}

inline bool eval_qf(const LaurentModel& s, const Formula& f, const RatAssignment& a) {
  return eval_qf(*s.field, f, a);
}

/// Value syntax for assignments: a constant term in t (or w) with `/` and
/// `^`, e.g. "(t^2+1)/t".
inline RatFun parse_ratfun(std::string_view text, const FiniteField& f) {
  Term t = parse_term(text, Language::field(), ParseOptions{true});
  if (!term_vars(t).empty()) throw ParseError("assignment value must not mention variables", 0);
  RatAssignment none;
  return evaluate(RatFunDomain{f, none}, t);
}

/// Witness values attached to verdicts.
using WitnessValue = std::variant<FqElem, RatFun, LaurentApprox>;

inline std::string to_string(const WitnessValue& w, const FiniteField& f) {
  if (auto* e = std::get_if<FqElem>(&w)) return f.to_string(*e);
  if (auto* r = std::get_if<RatFun>(&w)) return r->to_string();
  return std::get<LaurentApprox>(w).to_string();
}

enum class Truth : std::uint8_t { True, False, Unknown };

inline std::string to_string(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    case Truth::Unknown: return "unknown";
  }
  return "?";
}

struct Evidence {
  std::map<VarIndex, WitnessValue> witness;
  std::string certificate;
};

struct Verdict {
  Truth truth = Truth::Unknown;
  std::optional<Evidence> evidence;

  static Verdict yes(std::map<VarIndex, WitnessValue> w, std::string cert) {
    return {Truth::True, Evidence{std::move(w), std::move(cert)}};
  }
  static Verdict no(std::string cert) { return {Truth::False, Evidence{{}, std::move(cert)}}; }
  static Verdict unknown(std::string why) { return {Truth::Unknown, Evidence{{}, std::move(why)}}; }
};

/// Bounds for witness search in F_q((t)): candidates are Laurent
/// polynomials with exponents in [-neg_exponent, pos_exponent] and at most
/// max_support nonzero terms.
struct SearchBudget {
  unsigned neg_exponent = 2;
  unsigned pos_exponent = 4;
  unsigned max_support = 4;
  std::uint64_t max_candidates = 200000;
};

}  // namespace vfrag
