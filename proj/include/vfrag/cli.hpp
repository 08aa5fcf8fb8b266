#pragma once

// Command-line front end: classify, translate, eval, decide, fuzz.
//
// Exit codes: 0 success, 1 fuzz disagreement, 2 parse/language/usage error,
// 3 input outside the required fragment, 4 clause guard, 5 bad model
// descriptor, 6 budget exceeded or unresolved under --complete.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "vfrag/decide.hpp"
#include "vfrag/fuzz.hpp"
#include "vfrag/translate.hpp"

namespace vfrag::cli {

enum ExitCode : int {
  kOk = 0,
  kDisagreement = 1,
  kParse = 2,
  kFragment = 3,
  kGuard = 4,
  kModel = 5,
  kBudget = 6,
};

inline Language language_from_name(const std::string& name) {
  if (name == "ring") return Language::ring();
  if (name == "field") return Language::field();
  if (name == "val") return Language::val();
  throw LanguageError("unknown language '" + name + "' (expected ring, field or val)");
}

/// q = p^m with p prime, as a field spec.
inline FieldSpec field_spec_for_order(std::uint64_t q) {
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (q % p) continue;
    if (!detail::is_prime(p)) break;
    unsigned m = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
      r /= p;
      ++m;
    }
    if (r == 1) return {p, m};
    break;
  }
  throw ModelError(std::to_string(q) + " is not a prime power");
}

inline std::string fragment_text(const std::optional<unsigned>& n) { return n ? std::to_string(*n) : "-"; }

namespace detail {

struct FormulaInput {
  std::string text;
  std::string file;
  std::string positional;

  void attach(CLI::App* app) {
    app->add_option("--formula,-f", text, "formula text");
    app->add_option("--file", file, "read the formula from a file");
    app->add_option("text", positional, "formula text");
  }

  std::string get() const {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw ParseError("cannot read file '" + file + "'", 0);
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }
    if (!text.empty()) return text;
    if (!positional.empty()) return positional;
    throw ParseError("no formula given", 0);
  }
};

inline void print_witness(std::ostream& out, const Verdict& v, const FiniteField& f, bool tsv) {
  if (!v.evidence) return;
  std::string w;
  for (const auto& [var, val] : v.evidence->witness) {
    if (!w.empty()) w += tsv ? ";" : " ";
    w += "x" + std::to_string(var) + "=" + to_string(val, f);
  }
  if (tsv) {
    out << "\t" << v.evidence->certificate << "\t" << w << "\n";
    return;
  }
  out << "\n";
  out << "certificate: " << v.evidence->certificate << "\n";
  if (!w.empty()) out << "witness: " << w << "\n";
}

}  // namespace detail

/// Runs the command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"vfrag: existential formulas over henselian valued fields"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "tsv"}));

  // classify
  auto* classify = app.add_subcommand("classify", "fragment membership with least indices");
  detail::FormulaInput classify_in;
  std::string classify_lang = "val";
  classify_in.attach(classify);
  classify->add_option("--lang", classify_lang, "ring, field or val");

  // translate
  auto* translate = app.add_subcommand("translate", "val2ring or field2ring translation");
  detail::FormulaInput translate_in;
  std::string mode = "val2ring", eta_name = "corrected";
  std::size_t max_clauses = kDefaultMaxClauses;
  translate_in.attach(translate);
  translate->add_option("--mode", mode, "val2ring or field2ring")->check(CLI::IsMember({"val2ring", "field2ring"}));
  translate->add_option("--eta", eta_name, "bundle variant")->check(CLI::IsMember({"paper", "corrected"}));
  translate->add_option("--max-clauses", max_clauses, "DNF clause guard");

  // eval
  auto* eval = app.add_subcommand("eval", "quantifier-free truth at a point");
  detail::FormulaInput eval_in;
  std::string eval_model, eval_lang;
  std::vector<std::string> sets;
  eval_in.attach(eval);
  eval->add_option("--model", eval_model, "fq:p=,m= or laurent:p=,m=,prec=")->required();
  eval->add_option("--set", sets, "assignment x<i>=<value>")->allow_extra_args(false);
  eval->add_option("--lang", eval_lang, "ring, field or val (default: ring for fq, val for laurent)");

  // decide
  auto* decide = app.add_subcommand("decide", "truth of a sentence with a certificate");
  detail::FormulaInput decide_in;
  std::string decide_model, decide_lang;
  std::int64_t decide_prec = -1;
  SearchBudget budget;
  std::uint64_t fq_bound = kDefaultFqSearchBound;
  bool complete = false;
  decide_in.attach(decide);
  decide->add_option("--model", decide_model, "fq:p=,m= or laurent:p=,m=,prec=")->required();
  decide->add_option("--lang", decide_lang, "ring, field or val");
  decide->add_option("--prec", decide_prec, "series precision (overrides the model's)");
  decide->add_option("--budget-neg", budget.neg_exponent, "least candidate exponent, negated");
  decide->add_option("--budget-pos", budget.pos_exponent, "largest candidate exponent");
  decide->add_option("--budget-support", budget.max_support, "most nonzero terms per candidate");
  decide->add_option("--budget-candidates", budget.max_candidates, "most candidates tried");
  decide->add_option("--budget-fq", fq_bound, "largest finite-field search space");
  decide->add_flag("--complete", complete, "exit 6 unless the answer is true or false");

  // fuzz
  auto* fuzz = app.add_subcommand("fuzz", "randomized check of val2ring");
  FuzzConfig cfg;
  std::string fuzz_eta = "corrected";
  std::vector<std::uint64_t> orders = {2, 3, 4, 5, 9};
  bool records = false, inject = false;
  fuzz->add_option("--count", cfg.cases, "total cases, spread over the fields");
  fuzz->add_option("--seed", cfg.seed, "seed");
  fuzz->add_option("--eta", fuzz_eta, "bundle variant")->check(CLI::IsMember({"paper", "corrected"}));
  fuzz->add_option("--fields", orders, "field orders")->delimiter(',')->allow_extra_args(false);
  fuzz->add_option("--prec", cfg.prec, "series precision");
  fuzz->add_option("--max-vars", cfg.max_vars, "variables per formula");
  fuzz->add_option("--max-atoms", cfg.max_atoms, "atoms per formula");
  fuzz->add_option("--depth", cfg.term_depth, "term depth");
  fuzz->add_flag("--records", records, "print one record per case");
  fuzz->add_flag("--inject-counterexample", inject, "append the bundle counterexample case");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }
  const bool tsv = format == "tsv";

  try {
    if (classify->parsed()) {
      Formula f = parse_formula(classify_in.get(), language_from_name(classify_lang));
      FragmentClass c = classify_fragment(f);
      if (tsv) {
        out << fragment_text(c.en_index) << "\t" << fragment_text(c.ene1_index) << "\t" << fragment_text(c.eup_index)
            << "\t" << (c.is_qf ? "true" : "false") << "\n";
      } else {
        out << "en=" << fragment_text(c.en_index) << "\n"
            << "ene1=" << fragment_text(c.ene1_index) << "\n"
            << "eup=" << fragment_text(c.eup_index) << "\n"
            << "qf=" << (c.is_qf ? "true" : "false") << "\n";
      }
      return kOk;
    }

    if (translate->parsed()) {
      const bool val = mode == "val2ring";
      Formula f = parse_formula(translate_in.get(), val ? Language::val() : Language::field());
      Formula g = val ? val_to_ring(f, {eta_name == "paper" ? EtaVariant::PaperLiteral : EtaVariant::Corrected,
                                         max_clauses})
                      : field_to_ring(f);
      const std::string in_n = fragment_text(classify_fragment(f).en_index);
      const std::string out_n = fragment_text(classify_fragment(g).en_index);
      if (tsv) {
        out << print_formula(g) << "\t" << in_n << "\t" << out_n << "\n";
      } else {
        out << print_formula(g) << "\n" << "in=∃_" << in_n << " out=∃_" << out_n << "\n";
      }
      return kOk;
    }

    if (eval->parsed()) {
      Structure s = parse_model_descriptor(eval_model);
      const bool fq = std::holds_alternative<FqModel>(s);
      Language lang = eval_lang.empty() ? (fq ? Language::ring() : Language::val()) : language_from_name(eval_lang);
      Formula f = parse_formula(eval_in.get(), lang);
      const FiniteField& F = field_of(s);
      FqAssignment fa;
      RatAssignment ra;
      for (const auto& item : sets) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq < 2 || item[0] != 'x') throw ParseError("bad assignment '" + item + "'", 0);
        const std::string name = item.substr(1, eq - 1);
        if (name.find_first_not_of("0123456789") != std::string::npos) throw ParseError("bad variable in '" + item + "'", 1);
        const auto v = static_cast<VarIndex>(std::stoul(name));
        const std::string value = item.substr(eq + 1);
        if (fq) {
          // Field elements by index: base-p digits of the coefficients.
          if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos ||
              std::stoull(value) >= F.order())
            throw ParseError("bad " + F.name() + " element '" + value + "'", eq + 1);
          fa[v] = F.element(static_cast<std::uint32_t>(std::stoull(value)));
        } else {
          ra.insert_or_assign(v, parse_ratfun(value, F));
        }
      }
      const bool v = fq ? eval_qf(std::get<FqModel>(s), f, fa) : eval_qf(std::get<LaurentModel>(s), f, ra);
      out << (v ? "true" : "false") << "\n";
      return kOk;
    }

    if (decide->parsed()) {
      Structure s = parse_model_descriptor(decide_model);
      const bool fq = std::holds_alternative<FqModel>(s);
      if (decide_prec >= 0)
        if (auto* l = std::get_if<LaurentModel>(&s)) l->prec = decide_prec;
      Language lang =
          decide_lang.empty() ? (fq ? Language::ring() : Language::val()) : language_from_name(decide_lang);
      Formula f = parse_formula(decide_in.get(), lang);
      Verdict v = eval_sentence(s, f, budget, fq_bound);
      out << to_string(v.truth);
      detail::print_witness(out, v, field_of(s), tsv);
      if (complete && v.truth == Truth::Unknown) {
        err << "error: undecided within the budget\n";
        return kBudget;
      }
      return kOk;
    }

    if (fuzz->parsed()) {
      cfg.eta = fuzz_eta == "paper" ? EtaVariant::PaperLiteral : EtaVariant::Corrected;
      cfg.fields.clear();
      for (auto q : orders) cfg.fields.push_back(field_spec_for_order(q));
      if (inject) cfg.injected.push_back(bundle_counterexample());
      FuzzReport r = fuzz_translation(cfg);
      if (records)
        for (const auto& rec : r.records) out << format_record(rec, tsv) << "\n";
      out << format_summary(r) << "\n";
      const bool clean = r.disagree == 0 && r.unknown == 0 && r.errors == 0 && r.accounting_ok == r.total;
      return cfg.eta == EtaVariant::Corrected && !clean ? kDisagreement : kOk;
    }
  } catch (const ParseError& e) {
    err << "error: parse error: " << e.what() << "\n";
    return kParse;
  } catch (const LanguageError& e) {
    err << "error: language: " << e.what() << "\n";
    return kParse;
  } catch (const FragmentError& e) {
    err << "error: fragment: " << e.what() << "\n";
    return kFragment;
  } catch (const GuardError& e) {
    err << "error: guard: " << e.what() << "\n";
    return kGuard;
  } catch (const ModelError& e) {
    err << "error: model: " << e.what() << "\n";
    return kModel;
  } catch (const BudgetError& e) {
    err << "error: budget: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }
  return kOk;
}

}  // namespace vfrag::cli
