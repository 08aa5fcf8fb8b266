#pragma once

// Randomized semantic check of val_to_ring: random quantifier-free
// valued-field formulas at random points of F_q(t), comparing the direct
// valuation semantics with the exactly decided truth of the translation.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vfrag/decide.hpp"

namespace vfrag {

struct FieldSpec {
  std::uint32_t p = 2;
  unsigned m = 1;
};

/// A fixed case run after the random ones; values use the assignment syntax.
struct InjectedCase {
  FieldSpec field;
  std::string formula;
  std::vector<std::pair<VarIndex, std::string>> assignment;
};

struct FuzzConfig {
  std::uint64_t seed = 1;
  std::size_t cases = 1000;  // total, distributed round-robin over `fields`
  std::vector<FieldSpec> fields = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}};
  unsigned max_vars = 4;
  unsigned term_depth = 3;
  unsigned max_atoms = 4;
  EtaVariant eta = EtaVariant::Corrected;
  std::int64_t prec = kDefaultPrecision;
  std::size_t max_clauses = kDefaultMaxClauses;
  std::vector<InjectedCase> injected;
};

struct FuzzRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string field;
  std::string formula;
  std::string assignment;
  bool lhs = false;
  Truth rhs = Truth::Unknown;
  std::string status;  // agree | disagree | unknown | error
  std::optional<unsigned> in_n, out_n;
  bool accounting_ok = false;
  std::string detail;
};

struct FuzzReport {
  std::size_t total = 0, agree = 0, disagree = 0, unknown = 0, errors = 0, accounting_ok = 0;
  std::vector<FuzzRecord> records;
  double seconds = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Random formulas and F_q(t) values with the harness's weights: atoms are
/// 40% equalities (half of them commuted identities), 20% disequalities,
/// 20% memberships and 20% non-memberships.
class RandomFormulaGen {
 public:
  RandomFormulaGen(std::uint64_t seed, unsigned nvars, unsigned depth, unsigned max_atoms)
      : rng_(seed), nvars_(nvars), depth_(depth), max_atoms_(max_atoms) {}

  std::uint64_t uniform(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }

  Term term(unsigned depth) {
    if (depth == 0 || uniform(3) == 0) {
      auto r = uniform(10);
      if (r < 6) return Term::variable(static_cast<VarIndex>(uniform(nvars_)));
      if (r < 9) return Term::integer(r - 6);
      return Term::uniformizer();
    }
    Term a = term(depth - 1), b = term(depth - 1);
    switch (uniform(3)) {
      case 0: return Term::add(a, b);
      case 1: return Term::sub(a, b);
      default: return Term::mul(a, b);
    }
  }

  // Same value, different syntax.
  Term commute(const Term& t) {
    switch (t.kind()) {
      case TermKind::Add:
      case TermKind::Mul: {
        Term a = commute(t.lhs()), b = commute(t.rhs());
        if (uniform(2)) std::swap(a, b);
        return t.kind() == TermKind::Add ? Term::add(a, b) : Term::mul(a, b);
      }
      case TermKind::Sub: return Term::sub(commute(t.lhs()), commute(t.rhs()));
      default: return t;
    }
  }

  Formula atom() {
    auto r = uniform(100);
    if (r < 40) {
      Term a = term(depth_);
      if (uniform(2)) return Formula::eq(a, commute(a));
      return Formula::eq(a, term(depth_));
    }
    if (r < 60) return Formula::ne(term(depth_), term(depth_));
    if (r < 80) return Formula::in_o(term(depth_));
    return Formula::negation(Formula::in_o(term(depth_)));
  }

  Formula formula() {
    std::vector<Formula> parts;
    const auto n = 1 + uniform(max_atoms_);
    for (std::uint64_t i = 0; i < n; ++i) parts.push_back(maybe_negate(atom()));
    while (parts.size() > 1) {
      auto i = uniform(parts.size() - 1);
      Formula c = uniform(2) ? Formula::conj(parts[i], parts[i + 1]) : Formula::disj(parts[i], parts[i + 1]);
      parts[i] = maybe_negate(c);
      parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
    return parts[0];
  }

  /// 15% zero, otherwise t^k * num/den with k in [-3, 3] and num, den of
  /// degree <= 2 with nonzero constant terms.
  RatFun value(const FiniteField& f) {
    const FiniteField* fp = &f;
    if (uniform(100) < 15) return RatFun::zero(fp);
    const auto q = f.order();
    auto poly = [&](bool monic) {
      const auto d = uniform(3);
      std::vector<FqElem> c;
      c.push_back(f.element(static_cast<std::uint32_t>(1 + uniform(q - 1))));
      for (std::uint64_t i = 1; i <= d; ++i) c.push_back(f.element(static_cast<std::uint32_t>(uniform(q))));
      if (monic || c.back().v == 0) c.back() = d == 0 ? c.back() : f.one();
      return FqPoly(FqOps{fp}, std::move(c));
    };
    const auto k = static_cast<std::int64_t>(uniform(7)) - 3;
    return RatFun::monomial(fp, f.one(), k) * RatFun(poly(false), poly(true));
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  Formula maybe_negate(Formula f) { return uniform(10) == 0 ? Formula::negation(f) : f; }

  std::mt19937_64 rng_;
  unsigned nvars_, depth_, max_atoms_;
};

namespace detail {

inline std::string assignment_text(const RatAssignment& a) {
  std::string s;
  for (const auto& [v, r] : a) {
    if (!s.empty()) s += ";";
    s += "x" + std::to_string(v) + "=" + r.to_string();
  }
  return s;
}

// Quantifier accounting on f wrapped in existential quantifiers over a
// random subset of its free variables.
inline void check_accounting(const Formula& f, RandomFormulaGen& gen, const TranslateOptions& opts, FuzzRecord& rec) {
  std::vector<VarIndex> vars;
  for (auto v : free_vars(f))
    if (gen.uniform(2)) vars.push_back(v);
  std::shuffle(vars.begin(), vars.end(), gen.rng());
  Formula wrapped = exists_all(vars, f);
  rec.in_n = classify_fragment(wrapped).en_index;
  Formula out = val_to_ring(wrapped, opts);
  rec.out_n = classify_fragment(out).en_index;
  rec.accounting_ok = rec.in_n && rec.out_n && *rec.out_n <= *rec.in_n + 1 && !has_o(out) && !has_inv(out) &&
                      free_vars(out) == free_vars(wrapped);
  check_language(out, Language::ring());
}

inline void run_case(const Formula& f, const RatAssignment& a, const FiniteField& field, const FuzzConfig& cfg,
                     RandomFormulaGen* gen, FuzzRecord& rec) {
  rec.formula = print_formula(f);
  rec.assignment = assignment_text(a);
  try {
    const TranslateOptions opts{cfg.eta, cfg.max_clauses};
    rec.lhs = eval_qf(field, f, a);
    Formula tr = val_to_ring(f, opts);
    Verdict v = decide_univariate(field, tr.sub(), tr.var(), a, cfg.prec);
    rec.rhs = v.truth;
    if (v.truth == Truth::Unknown) {
      rec.status = "unknown";
      rec.detail = v.evidence ? v.evidence->certificate : "";
    } else {
      rec.status = (v.truth == Truth::True) == rec.lhs ? "agree" : "disagree";
    }
    if (gen) {
      check_accounting(f, *gen, opts, rec);
    } else {
      rec.in_n = classify_fragment(f).en_index;
      rec.out_n = classify_fragment(tr).en_index;
      rec.accounting_ok = rec.out_n && *rec.out_n <= *rec.in_n + 1 && !has_o(tr) && !has_inv(tr);
    }
  } catch (const Error& e) {
    rec.status = "error";
    rec.detail = e.what();
  }
}

}  // namespace detail

inline FuzzReport fuzz_translation(const FuzzConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  FuzzReport rep;
  std::map<std::pair<std::uint32_t, unsigned>, FieldPtr> fields;
  auto field_for = [&](FieldSpec s) {
    auto& p = fields[{s.p, s.m}];
    if (!p) p = FiniteField::make(s.p, s.m);
    return p;
  };
  auto tally = [&](FuzzRecord rec) {
    ++rep.total;
    if (rec.status == "agree") ++rep.agree;
    if (rec.status == "disagree") ++rep.disagree;
    if (rec.status == "unknown") ++rep.unknown;
    if (rec.status == "error") ++rep.errors;
    if (rec.accounting_ok) ++rep.accounting_ok;
    rep.records.push_back(std::move(rec));
  };

  for (std::size_t i = 0; i < cfg.cases && !cfg.fields.empty(); ++i) {
    FieldPtr F = field_for(cfg.fields[i % cfg.fields.size()]);
    FuzzRecord rec;
    rec.index = i;
    rec.seed = splitmix64(cfg.seed ^ splitmix64(i));
    rec.field = F->name();
    RandomFormulaGen gen(rec.seed, 1 + static_cast<unsigned>(splitmix64(rec.seed) % cfg.max_vars), cfg.term_depth,
                         cfg.max_atoms);
    Formula f = gen.formula();
    RatAssignment a;
    for (auto v : free_vars(f)) a.emplace(v, gen.value(*F));
    detail::run_case(f, a, *F, cfg, &gen, rec);
    tally(std::move(rec));
  }
  for (std::size_t j = 0; j < cfg.injected.size(); ++j) {
    const auto& inj = cfg.injected[j];
    FieldPtr F = field_for(inj.field);
    FuzzRecord rec;
    rec.index = cfg.cases + j;
    rec.field = F->name();
    try {
      Formula f = parse_formula(inj.formula, Language::val());
      RatAssignment a;
      for (const auto& [v, text] : inj.assignment) a.emplace(v, parse_ratfun(text, *F));
      detail::run_case(f, a, *F, cfg, nullptr, rec);
    } catch (const Error& e) {
      rec.status = "error";
      rec.detail = e.what();
    }
    tally(std::move(rec));
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// The bundle counterexample: both memberships at (0, 1/t) over F_2.
inline InjectedCase bundle_counterexample() { return {{2, 1}, "O(x0) & O(x1)", {{0, "0"}, {1, "1/t"}}}; }

inline std::string format_record(const FuzzRecord& r, bool tsv = false) {
  auto opt = [](const std::optional<unsigned>& n) { return n ? std::to_string(*n) : std::string("-"); };
  std::vector<std::pair<std::string, std::string>> kv = {
      {"case", std::to_string(r.index)},
      {"seed", std::to_string(r.seed)},
      {"q", r.field},
      {"formula", r.formula},
      {"assignment", r.assignment},
      {"lhs", r.lhs ? "true" : "false"},
      {"rhs", to_string(r.rhs)},
      {"status", r.status},
      {"accounting", opt(r.in_n) + "->" + opt(r.out_n) + (r.accounting_ok ? " ok" : " FAIL")},
  };
  if (!r.detail.empty()) kv.emplace_back("detail", r.detail);
  std::string s;
  for (const auto& [k, v] : kv) {
    if (!s.empty()) s += tsv ? "\t" : " ";
    s += tsv ? v : k + "=" + (v.find(' ') != std::string::npos ? "\"" + v + "\"" : v);
  }
  return s;
}

inline std::string format_summary(const FuzzReport& r) {
  std::ostringstream os;
  os << r.agree << "/" << r.total << " agree disagree=" << r.disagree << " unknown=" << r.unknown
     << " errors=" << r.errors << " accounting=" << r.accounting_ok << "/" << r.total;
  return os.str();
}

}  // namespace vfrag
