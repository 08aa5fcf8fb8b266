// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "support/gen.hpp"
#include "support/oracles.hpp"
#include "support/templates.hpp"
#include "vfrag/vfrag.hpp"

using namespace vfrag;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int n, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool in_time = limit_s <= 0 || secs < limit_s;
  if (!in_time) o.detail += " over time limit " + std::to_string(static_cast<int>(limit_s)) + "s";
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("criterion %d: %s %s (%.2fs)\n", n, pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string frac(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

const std::vector<std::pair<std::uint32_t, unsigned>> kFuzzFields = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}};

std::vector<std::uint32_t> values(const FqPoly& p) {
  std::vector<std::uint32_t> out;
  for (auto c : p.coeffs()) out.push_back(c.v);
  return out;
}

RatFun random_ratfun(const FiniteField& F, std::mt19937_64& rng, int deg, int shift_span) {
  auto poly = [&](bool nonzero) {
    std::vector<FqElem> c;
    for (int i = 0; i <= deg; ++i) c.push_back(F.element(static_cast<std::uint32_t>(rng() % F.order())));
    if (nonzero && std::all_of(c.begin(), c.end(), [](FqElem e) { return e.v == 0; })) c[0] = F.one();
    return FqPoly(FqOps{&F}, c);
  };
  RatFun r(poly(false), poly(true));
  const int shift = static_cast<int>(rng() % (2 * shift_span + 1)) - shift_span;
  return r * RatFun::monomial(&F, F.one(), shift);
}

Outcome fuzz_agreement(const FuzzReport& r) {
  const bool ok = r.total == 5000 && r.agree == r.total && r.unknown == 0 && r.errors == 0 && r.disagree == 0;
  return {ok, frac(r.agree, r.total) + " agree, unknown=" + std::to_string(r.unknown) +
                  " error=" + std::to_string(r.errors)};
}

Outcome accounting(const FuzzReport& r) {
  // Recheck independently: close each case existentially and translate again.
  std::size_t ok = 0;
  for (const auto& rec : r.records) {
    Formula f = parse_formula(rec.formula);
    auto fv = free_vars(f);
    Formula closed = exists_all(std::vector<VarIndex>(fv.begin(), fv.end()), f);
    Formula out = val_to_ring(closed);
    auto in = classify_fragment(closed).en_index, got = classify_fragment(out).en_index;
    if (rec.accounting_ok && in && got && *got <= *in + 1 && !has_o(out) && !has_inv(out)) ++ok;
  }
  return {ok == r.total && r.total > 0, frac(ok, r.total) + " within n+1, O-free and inverse-free"};
}

Outcome o_definition() {
  std::mt19937_64 rng(301);
  std::size_t ok = 0, total = 0;
  for (auto [p, m] : kFuzzFields) {
    auto F = FiniteField::make(p, m);
    Formula f = o_def(Term::variable(0));
    for (int i = 0; i < 500; ++i) {
      RatFun r = random_ratfun(*F, rng, 3, 4);
      const auto v = oracle::valuation(values(r.num()), values(r.den()));
      const bool expect = !v || *v >= 0;
      const Truth got = decide_univariate(*F, f.sub(), f.var(), {{0, r}}).truth;
      ++total;
      if (got == (expect ? Truth::True : Truth::False)) ++ok;
    }
  }
  return {ok == total, frac(ok, total) + " agree with v >= 0"};
}

Outcome bundling() {
  auto F2 = FiniteField::make(2, 1);
  auto member = [&](const RatAssignment& a) {
    return eval_qf(*F2, Formula::conj(Formula::in_o(Term::variable(1)), Formula::in_o(Term::variable(2))), a);
  };
  auto eta_truth = [&](EtaVariant v, const RatAssignment& a) {
    Formula e = eta(2, v);
    return decide_univariate(*F2, e.sub(), e.var(), a).truth;
  };
  const RatAssignment boundary{{1, RatFun::zero(F2.get())}, {2, parse_ratfun("1/t", *F2)}};
  const bool paper_true = eta_truth(EtaVariant::PaperLiteral, boundary) == Truth::True;
  const bool conj_false = !member(boundary);
  const bool corrected_false = eta_truth(EtaVariant::Corrected, boundary) == Truth::False;

  std::mt19937_64 rng(401);
  std::size_t ok = 0;
  for (int i = 0; i < 500; ++i) {
    RatAssignment a;
    for (VarIndex j = 1; j <= 2; ++j) {
      const int v = static_cast<int>(rng() % 7) - 3;
      a[j] = RatFun::monomial(F2.get(), F2->one(), v) + RatFun::monomial(F2.get(), F2->element(rng() % 2), v + 1) +
             RatFun::monomial(F2.get(), F2->element(rng() % 2), v + 3);
    }
    const Truth expect = member(a) ? Truth::True : Truth::False;
    if (eta_truth(EtaVariant::Corrected, a) == expect) ++ok;
  }
  const bool pass = paper_true && conj_false && corrected_false && ok == 500;
  return {pass, std::string("paper=") + (paper_true ? "true" : "false") + " conj=" + (conj_false ? "false" : "true") +
                    " corrected=" + (corrected_false ? "false" : "true") + ", random " + frac(ok, 500)};
}

Outcome field_to_ring_agreement() {
  std::vector<Formula> inputs;
  for (const char* s : {"inv(x0) = x1", "inv(x0-x1) = x2", "inv(0) = 0", "x0*inv(x0) = 1", "inv(inv(x0)) = x0",
                        "inv(x0*x1-1)+inv(x2) != x0 | x1 = inv(x2*x2)", "!(inv(x0+1)*x1 = inv(x2-x0))"})
    inputs.push_back(parse_formula(s, Language::field()));
  gen::Gen g(501, {.vars = 3, .depth = 2, .atoms = 3, .inv = true});
  for (int i = 0; i < 300; ++i) inputs.push_back(g.qf(1 + g.pick(3)));

  std::size_t ok = 0, total = 0, shape_ok = 0;
  for (const auto& f : inputs) {
    Formula out = field_to_ring(f);
    if (!has_inv(out) && is_quantifier_free(out)) ++shape_ok;
    for (auto [p, m] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
      const oracle::TableField T(p, oracle::irreducible_modulus(p, m));
      oracle::for_each_assignment(T, {0, 1, 2}, [&](const oracle::Env& a) {
        oracle::Env e1 = a, e2 = a;
        ++total;
        if (oracle::holds(T, f, e1) == oracle::holds(T, out, e2)) ++ok;
      });
    }
  }
  return {ok == total && shape_ok == inputs.size(),
          "shape " + frac(shape_ok, inputs.size()) + ", assignments " + frac(ok, total)};
}

Outcome finite_field_decision() {
  Formula f = parse_formula("E x0. x0*x0+x0+1 = 0", Language::ring());
  const bool f2 = decide_exists_fq(f, *FiniteField::make(2, 1));
  const bool f4 = decide_exists_fq(f, *FiniteField::make(2, 2));
  std::size_t ok = 0, total = 0;
  for (std::uint32_t p : {2u, 3u}) {
    auto F = FiniteField::make(p, 1);
    const auto T = oracle::TableField::prime(p);
    templates::for_each_sentence([&](const Formula& s) {
      oracle::Env env;
      ++total;
      if (decide_exists_fq(s, *F) == oracle::holds(T, s, env)) ++ok;
    });
  }
  return {!f2 && f4 && ok == total,
          std::string("F_2=") + (f2 ? "true" : "false") + " F_4=" + (f4 ? "true" : "false") + ", templates " +
              frac(ok, total)};
}

Outcome artin_schreier() {
  std::mt19937_64 rng(701);
  std::size_t ok = 0, total = 0;
  for (unsigned m : {1u, 2u, 3u}) {
    auto F = FiniteField::make(2, m);
    const oracle::TableField T(2, F->modulus());
    for (int i = 0; i < 500; ++i) {
      RatFun c = random_ratfun(*F, rng, 2, 3);
      ++total;
      auto cert = solve_artin_schreier(c, *F, 32);
      auto ce = oracle::expand(T, values(c.num()), values(c.den()), -12, 40);
      if (cert.solvable != oracle::artin_schreier_solvable(T, ce)) continue;
      if (cert.solvable) {
        const LaurentApprox& z = *cert.witness;
        bool good = z.precision() >= 32;
        for (long e = -12; e < 32 && good; ++e) {
          std::uint32_t lhs = z.coeff(e).v;
          if (e % 2 == 0) lhs = T.add(lhs, T.mul(z.coeff(e / 2).v, z.coeff(e / 2).v));
          good = lhs == ce.at(e);
        }
        if (!good) continue;
      }
      ++ok;
    }
  }
  return {ok == total, frac(ok, total) + " agree, witnesses exact below t^32"};
}

Outcome embedding() {
  std::size_t ok = 0, total = 0;
  for (std::uint32_t p : {2u, 3u}) {
    std::vector<std::vector<bool>> th;
    for (unsigned m = 1; m <= 3; ++m) th.push_back(oracle::one_atom_theory(p, m, 8));
    for (unsigned m = 1; m <= 3; ++m)
      for (unsigned n = 1; n <= 3; ++n) {
        ++total;
        if (embedding_exists(p, m, n) == oracle::theory_included(th[m - 1], th[n - 1])) ++ok;
      }
  }
  return {ok == total, frac(ok, total) + " pairs agree"};
}

Outcome algebra_invariants() {
  std::size_t fields_ok = 0, fields = 0;
  for (std::uint32_t q = 2; q <= 16; ++q) {
    std::uint32_t p = 2;
    while (q % p) ++p;
    unsigned m = 0;
    std::uint32_t r = q;
    while (r % p == 0) r /= p, ++m;
    if (r != 1) continue;
    ++fields;
    auto F = FiniteField::make(p, m);
    const oracle::TableField T(p, F->modulus());
    bool good = F->order() == q && F->inv(F->zero()) == F->zero();
    for (std::uint32_t i = 0; i < q && good; ++i) {
      FqElem a = F->element(i);
      good = F->add(a, F->zero()) == a && F->mul(a, F->one()) == a && F->add(a, F->neg(a)) == F->zero();
      if (i != 0) good = good && F->mul(a, F->inv(a)) == F->one();
      for (std::uint32_t j = 0; j < q && good; ++j) {
        FqElem b = F->element(j);
        good = F->add(a, b) == F->add(b, a) && F->mul(a, b) == F->mul(b, a) && F->add(a, b).v == T.add(i, j) &&
               F->mul(a, b).v == T.mul(i, j);
        for (std::uint32_t k = 0; k < q && good; ++k) {
          FqElem c = F->element(k);
          good = F->add(F->add(a, b), c) == F->add(a, F->add(b, c)) &&
                 F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)) &&
                 F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c));
        }
      }
    }
    if (good) ++fields_ok;
  }

  std::mt19937_64 rng(901);
  std::size_t pairs_ok = 0, pairs = 0;
  while (pairs < 1000) {
    auto [p, m] = kFuzzFields[pairs % kFuzzFields.size()];
    auto F = FiniteField::make(p, m);
    RatFun a = random_ratfun(*F, rng, 3, 3), b = random_ratfun(*F, rng, 3, 3);
    if (a.is_zero() || b.is_zero()) continue;
    ++pairs;
    const auto va = oracle::valuation(values(a.num()), values(a.den()));
    const auto vb = oracle::valuation(values(b.num()), values(b.den()));
    RatFun s = a + b;
    bool good = a.valuation() == va && b.valuation() == vb && (a * b).valuation() == *va + *vb &&
                a.inv().valuation() == -*va;
    if (!s.is_zero()) good = good && *s.valuation() >= std::min(*va, *vb);
    if (*va != *vb) good = good && s.valuation() == std::min(*va, *vb);
    if (good) ++pairs_ok;
  }
  return {fields_ok == fields && pairs_ok == pairs,
          "fields " + frac(fields_ok, fields) + ", valuation pairs " + frac(pairs_ok, pairs)};
}

}  // namespace

int main() {
  FuzzConfig cfg;
  cfg.cases = 5000;  // 1000 per field
  FuzzReport fuzz;
  report(1, 60, [&] {
    fuzz = fuzz_translation(cfg);
    return fuzz_agreement(fuzz);
  });
  report(2, 0, [&] { return accounting(fuzz); });
  report(3, 10, o_definition);
  report(4, 0, bundling);
  report(5, 0, field_to_ring_agreement);
  report(6, 30, finite_field_decision);
  report(7, 0, artin_schreier);
  report(8, 30, embedding);
  report(9, 0, algebra_invariants);
  return failures == 0 ? 0 : 1;
}
