#pragma once

// Abstract syntax for the one-sorted languages of rings, fields (with a total
// inverse) and valued fields (with the valuation-ring predicate O), all
// optionally expanded by the uniformizer constant `w`.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vfrag/error.hpp"

namespace vfrag {

using VarIndex = std::uint32_t;

enum class LanguageKind : std::uint8_t { Ring, Field, Val };
enum class ConstantKind : std::uint8_t { None, Uniformizer, ParamField };

struct Language {
  LanguageKind kind = LanguageKind::Val;
  ConstantKind constants = ConstantKind::Uniformizer;

  bool admits_o() const { return kind == LanguageKind::Val; }
  bool admits_inv() const { return kind == LanguageKind::Field; }
  bool admits_uniformizer() const { return constants != ConstantKind::None; }

  static Language ring() { return {LanguageKind::Ring, ConstantKind::Uniformizer}; }
  static Language field() { return {LanguageKind::Field, ConstantKind::Uniformizer}; }
  static Language val() { return {LanguageKind::Val, ConstantKind::Uniformizer}; }
};

inline std::string to_string(LanguageKind k) {
  switch (k) {
    case LanguageKind::Ring: return "ring";
    case LanguageKind::Field: return "field";
    case LanguageKind::Val: return "val";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Terms

enum class TermKind : std::uint8_t { Var, Int, Unif, Add, Sub, Mul, Inv };

struct TermNode;

/// Immutable, shared term. `Int` literals are non-negative; `-u` is
/// represented as `0 - u`.
class Term {
 public:
  static Term variable(VarIndex i);
  static Term integer(std::uint64_t n);
  static Term uniformizer();
  static Term add(Term a, Term b);
  static Term sub(Term a, Term b);
  static Term mul(Term a, Term b);
  static Term inverse(Term a);

  TermKind kind() const;
  VarIndex var() const;
  std::uint64_t value() const;
  const Term& lhs() const;  // Add/Sub/Mul
  const Term& rhs() const;  // Add/Sub/Mul
  const Term& arg() const;  // Inv

  bool is_binary() const {
    auto k = kind();
    return k == TermKind::Add || k == TermKind::Sub || k == TermKind::Mul;
  }
  bool is_int(std::uint64_t n) const { return kind() == TermKind::Int && value() == n; }
  const TermNode* id() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermKind kind;
  std::uint64_t value = 0;  // variable index or literal
  std::optional<Term> a;
  std::optional<Term> b;
};

inline Term Term::variable(VarIndex i) {
  return Term(std::make_shared<const TermNode>(TermNode{TermKind::Var, i, std::nullopt, std::nullopt}));
}
inline Term Term::integer(std::uint64_t n) {
  return Term(std::make_shared<const TermNode>(TermNode{TermKind::Int, n, std::nullopt, std::nullopt}));
}
inline Term Term::uniformizer() {
  static const Term w(std::make_shared<const TermNode>(TermNode{TermKind::Unif, 0, std::nullopt, std::nullopt}));
  return w;
}
inline Term Term::add(Term a, Term b) {
  return Term(std::make_shared<const TermNode>(TermNode{TermKind::Add, 0, std::move(a), std::move(b)}));
}
inline Term Term::sub(Term a, Term b) {
  return Term(std::make_shared<const TermNode>(TermNode{TermKind::Sub, 0, std::move(a), std::move(b)}));
}
inline Term Term::mul(Term a, Term b) {
  return Term(std::make_shared<const TermNode>(TermNode{TermKind::Mul, 0, std::move(a), std::move(b)}));
}
inline Term Term::inverse(Term a) {
  return Term(std::make_shared<const TermNode>(TermNode{TermKind::Inv, 0, std::move(a), std::nullopt}));
}

inline TermKind Term::kind() const { return node_->kind; }
inline VarIndex Term::var() const { return static_cast<VarIndex>(node_->value); }
inline std::uint64_t Term::value() const { return node_->value; }
inline const Term& Term::lhs() const { return *node_->a; }
inline const Term& Term::rhs() const { return *node_->b; }
inline const Term& Term::arg() const { return *node_->a; }

inline bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Var:
    case TermKind::Int: return a.value() == b.value();
    case TermKind::Unif: return true;
    case TermKind::Inv: return a.arg() == b.arg();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

inline Term operator+(Term a, Term b) { return Term::add(std::move(a), std::move(b)); }
inline Term operator-(Term a, Term b) { return Term::sub(std::move(a), std::move(b)); }
inline Term operator*(Term a, Term b) { return Term::mul(std::move(a), std::move(b)); }

// ---------------------------------------------------------------------------
// Formulas

enum class FormulaKind : std::uint8_t { Eq, InO, Not, And, Or, Exists };

struct FormulaNode;

/// Immutable, shared formula. There is no universal quantifier.
class Formula {
 public:
  static Formula eq(Term a, Term b);
  static Formula ne(Term a, Term b) { return negation(eq(std::move(a), std::move(b))); }
  static Formula in_o(Term t);
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula exists(VarIndex v, Formula body);

  /// `0 = 1` and `0 = 0`; the grammar has no boolean constants.
  static Formula falsum() { return eq(Term::integer(0), Term::integer(1)); }
  static Formula verum() { return eq(Term::integer(0), Term::integer(0)); }

  FormulaKind kind() const;
  const Term& left() const;   // Eq
  const Term& right() const;  // Eq
  const Term& term() const;   // InO
  const Formula& sub() const; // Not, Exists
  const Formula& lhs() const; // And, Or
  const Formula& rhs() const; // And, Or
  VarIndex var() const;       // Exists

  bool is_atom() const { return kind() == FormulaKind::Eq || kind() == FormulaKind::InO; }
  const FormulaNode* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  FormulaKind kind;
  VarIndex var = 0;
  std::optional<Term> l, r;
  std::optional<Formula> a, b;
};

inline Formula Formula::eq(Term a, Term b) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{FormulaKind::Eq, 0, std::move(a), std::move(b), std::nullopt, std::nullopt}));
}
inline Formula Formula::in_o(Term t) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{FormulaKind::InO, 0, std::move(t), std::nullopt, std::nullopt, std::nullopt}));
}
inline Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{FormulaKind::Not, 0, std::nullopt, std::nullopt, std::move(f), std::nullopt}));
}
inline Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{FormulaKind::And, 0, std::nullopt, std::nullopt, std::move(a), std::move(b)}));
}
inline Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{FormulaKind::Or, 0, std::nullopt, std::nullopt, std::move(a), std::move(b)}));
}
inline Formula Formula::exists(VarIndex v, Formula body) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{FormulaKind::Exists, v, std::nullopt, std::nullopt, std::move(body), std::nullopt}));
}

inline FormulaKind Formula::kind() const { return node_->kind; }
inline const Term& Formula::left() const { return *node_->l; }
inline const Term& Formula::right() const { return *node_->r; }
inline const Term& Formula::term() const { return *node_->l; }
inline const Formula& Formula::sub() const { return *node_->a; }
inline const Formula& Formula::lhs() const { return *node_->a; }
inline const Formula& Formula::rhs() const { return *node_->b; }
inline VarIndex Formula::var() const { return node_->var; }

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::Eq: return a.left() == b.left() && a.right() == b.right();
    case FormulaKind::InO: return a.term() == b.term();
    case FormulaKind::Not: return a.sub() == b.sub();
    case FormulaKind::Exists: return a.var() == b.var() && a.sub() == b.sub();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

/// Folds a list with `conj`/`disj`; empty lists give verum/falsum.
inline Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::verum();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(acc, fs[i]);
  return acc;
}
inline Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::falsum();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::disj(acc, fs[i]);
  return acc;
}

/// ∃ v1 ... ∃ vk. body, outermost first.
inline Formula exists_all(const std::vector<VarIndex>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::exists(*it, std::move(body));
  return body;
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

// Precedence levels: 0 sum, 1 product, 2 unary.
inline void print_term(std::ostream& os, const Term& t, int level) {
  switch (t.kind()) {
    case TermKind::Var: os << 'x' << t.var(); return;
    case TermKind::Int: os << t.value(); return;
    case TermKind::Unif: os << 'w'; return;
    case TermKind::Inv:
      os << "inv(";
      print_term(os, t.arg(), 0);
      os << ')';
      return;
    case TermKind::Add:
    case TermKind::Sub: {
      if (level > 0) os << '(';
      print_term(os, t.lhs(), 0);
      os << (t.kind() == TermKind::Add ? '+' : '-');
      print_term(os, t.rhs(), 1);
      if (level > 0) os << ')';
      return;
    }
    case TermKind::Mul: {
      if (level > 1) os << '(';
      print_term(os, t.lhs(), 1);
      os << '*';
      print_term(os, t.rhs(), 2);
      if (level > 1) os << ')';
      return;
    }
  }
}

// Precedence levels: 0 formula, 1 disjunction, 2 conjunction, 3 literal.
inline void print_formula(std::ostream& os, const Formula& f, int level) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      print_term(os, f.left(), 0);
      os << " = ";
      print_term(os, f.right(), 0);
      return;
    case FormulaKind::InO:
      os << "O(";
      print_term(os, f.term(), 0);
      os << ')';
      return;
    case FormulaKind::Not:
      if (f.sub().kind() == FormulaKind::Eq) {
        print_term(os, f.sub().left(), 0);
        os << " != ";
        print_term(os, f.sub().right(), 0);
        return;
      }
      os << '!';
      print_formula(os, f.sub(), 3);
      return;
    case FormulaKind::And:
      if (level > 2) os << '(';
      print_formula(os, f.lhs(), 2);
      os << " & ";
      print_formula(os, f.rhs(), 3);
      if (level > 2) os << ')';
      return;
    case FormulaKind::Or:
      if (level > 1) os << '(';
      print_formula(os, f.lhs(), 1);
      os << " | ";
      print_formula(os, f.rhs(), 2);
      if (level > 1) os << ')';
      return;
    case FormulaKind::Exists:
      if (level > 0) os << '(';
      os << "E x" << f.var() << ". ";
      print_formula(os, f.sub(), 0);
      if (level > 0) os << ')';
      return;
  }
}

}  // namespace detail

inline std::string print_term(const Term& t) {
  std::ostringstream os;
  detail::print_term(os, t, 0);
  return os.str();
}

inline std::string print_formula(const Formula& f) {
  std::ostringstream os;
  detail::print_formula(os, f, 0);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) { return os << print_term(t); }
inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << print_formula(f); }

// ---------------------------------------------------------------------------
// Parsing

/// Extensions used for assignment values: `t` as a synonym of `w`, `a/b`
/// (read as a*inv(b)) and `a^n`.
struct ParseOptions {
  bool value_syntax = false;
};

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, Language lang, ParseOptions opts) : s_(text), lang_(lang), opts_(opts) {}

  Formula parse_formula_text() {
    Formula f = formula();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input '" + std::string(s_.substr(pos_, 1)) + "'");
    return f;
  }

  Term parse_term_text() {
    Term t = term();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input '" + std::string(s_.substr(pos_, 1)) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(std::string_view tok) {
    skip_ws();
    return s_.substr(pos_, tok.size()) == tok;
  }

  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  bool at_word(std::string_view w) {
    skip_ws();
    if (s_.substr(pos_, w.size()) != w) return false;
    std::size_t end = pos_ + w.size();
    return end >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[end]));
  }

  std::uint64_t natural() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a natural number");
    std::uint64_t n = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::uint64_t d = static_cast<std::uint64_t>(s_[pos_] - '0');
      if (n > (UINT64_MAX - d) / 10) fail("integer literal too large");
      n = n * 10 + d;
      ++pos_;
    }
    return n;
  }

  VarIndex variable() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != 'x') fail("expected a variable");
    ++pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected variable index");
    std::uint64_t n = natural();
    if (n > UINT32_MAX) fail("variable index too large");
    return static_cast<VarIndex>(n);
  }

  Formula formula() {
    if (at_word("E")) {
      ++pos_;
      VarIndex v = variable();
      expect(".");
      return Formula::exists(v, formula());
    }
    return disj();
  }

  Formula disj() {
    Formula f = conj();
    while (accept("|")) f = Formula::disj(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = lit();
    while (accept("&")) f = Formula::conj(f, lit());
    return f;
  }

  Formula lit() {
    skip_ws();
    if (peek("!") && !peek("!=")) {
      ++pos_;
      return Formula::negation(lit());
    }
    if (peek("(")) {
      // Either a parenthesised formula or an atom whose left term starts
      // with '('. Try the atom first and fall back.
      std::size_t start = pos_;
      std::optional<ParseError> atom_err;
      try {
        return atom();
      } catch (const ParseError& e) {
        atom_err = e;
      }
      std::size_t atom_reach = pos_;
      pos_ = start;
      try {
        expect("(");
        Formula f = formula();
        expect(")");
        return f;
      } catch (const ParseError& e) {
        if (atom_err && atom_err->position() > e.position()) throw *atom_err;
        (void)atom_reach;
        throw;
      }
    }
    return atom();
  }

  Formula atom() {
    skip_ws();
    if (peek("O(")) {
      std::size_t at = pos_;
      if (!lang_.admits_o())
        throw LanguageError("predicate O not admitted in language " + to_string(lang_.kind) + " at position " +
                            std::to_string(at));
      pos_ += 2;
      Term t = term();
      expect(")");
      return Formula::in_o(t);
    }
    Term a = term();
    if (accept("!=")) return Formula::ne(a, term());
    if (accept("=")) return Formula::eq(a, term());
    fail("expected '=' or '!='");
  }

  Term term() {
    Term t = factor();
    for (;;) {
      if (accept("+")) {
        t = Term::add(t, factor());
      } else if (accept("-")) {
        t = Term::sub(t, factor());
      } else {
        return t;
      }
    }
  }

  Term factor() {
    Term t = unary();
    for (;;) {
      if (accept("*")) {
        t = Term::mul(t, unary());
      } else if (opts_.value_syntax && accept("/")) {
        t = Term::mul(t, Term::inverse(unary()));
      } else {
        return t;
      }
    }
  }

  Term unary() {
    skip_ws();
    if (peek("inv(")) {
      std::size_t at = pos_;
      if (!lang_.admits_inv() && !opts_.value_syntax)
        throw LanguageError("operator inv not admitted in language " + to_string(lang_.kind) + " at position " +
                            std::to_string(at));
      pos_ += 4;
      Term t = term();
      expect(")");
      return Term::inverse(t);
    }
    if (accept("-")) return Term::sub(Term::integer(0), unary());
    Term b = base();
    if (opts_.value_syntax && accept("^")) {
      std::uint64_t n = natural();
      if (n == 0) return Term::integer(1);
      Term r = b;
      for (std::uint64_t i = 1; i < n; ++i) r = Term::mul(r, b);
      return r;
    }
    return b;
  }

  Term base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = term();
      expect(")");
      return t;
    }
    if (c == 'x') return Term::variable(variable());
    if (at_word("w") || (opts_.value_syntax && at_word("t"))) {
      if (!lang_.admits_uniformizer())
        throw LanguageError("constant w not admitted (no constants) at position " + std::to_string(pos_));
      ++pos_;
      return Term::uniformizer();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Term::integer(natural());
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  Language lang_;
  ParseOptions opts_;
};

}  // namespace detail

/// Parses `text` per the formula grammar. Throws ParseError (with byte
/// position) or LanguageError.
inline Formula parse_formula(std::string_view text, Language lang = Language::val(), ParseOptions opts = {}) {
  return detail::Parser(text, lang, opts).parse_formula_text();
}

inline Term parse_term(std::string_view text, Language lang = Language::field(), ParseOptions opts = {}) {
  return detail::Parser(text, lang, opts).parse_term_text();
}

// ---------------------------------------------------------------------------
// Syntactic queries

inline void collect_vars(const Term& t, std::set<VarIndex>& out) {
  switch (t.kind()) {
    case TermKind::Var: out.insert(t.var()); return;
    case TermKind::Int:
    case TermKind::Unif: return;
    case TermKind::Inv: collect_vars(t.arg(), out); return;
    default:
      collect_vars(t.lhs(), out);
      collect_vars(t.rhs(), out);
  }
}

inline std::set<VarIndex> term_vars(const Term& t) {
  std::set<VarIndex> out;
  collect_vars(t, out);
  return out;
}

inline bool term_has_var(const Term& t, VarIndex v) {
  switch (t.kind()) {
    case TermKind::Var: return t.var() == v;
    case TermKind::Int:
    case TermKind::Unif: return false;
    case TermKind::Inv: return term_has_var(t.arg(), v);
    default: return term_has_var(t.lhs(), v) || term_has_var(t.rhs(), v);
  }
}

inline std::set<VarIndex> free_vars(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq: {
      auto s = term_vars(f.left());
      collect_vars(f.right(), s);
      return s;
    }
    case FormulaKind::InO: return term_vars(f.term());
    case FormulaKind::Not: return free_vars(f.sub());
    case FormulaKind::Exists: {
      auto s = free_vars(f.sub());
      s.erase(f.var());
      return s;
    }
    default: {
      auto s = free_vars(f.lhs());
      auto r = free_vars(f.rhs());
      s.insert(r.begin(), r.end());
      return s;
    }
  }
}

inline bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

/// Largest variable index occurring anywhere (free or bound).
inline std::optional<VarIndex> max_var_index(const Term& t) {
  auto s = term_vars(t);
  if (s.empty()) return std::nullopt;
  return *s.rbegin();
}

inline std::optional<VarIndex> max_var_index(const Formula& f) {
  auto merge = [](std::optional<VarIndex> a, std::optional<VarIndex> b) -> std::optional<VarIndex> {
    if (!a) return b;
    if (!b) return a;
    return std::max(*a, *b);
  };
  switch (f.kind()) {
    case FormulaKind::Eq: return merge(max_var_index(f.left()), max_var_index(f.right()));
    case FormulaKind::InO: return max_var_index(f.term());
    case FormulaKind::Not: return max_var_index(f.sub());
    case FormulaKind::Exists: return merge(f.var(), max_var_index(f.sub()));
    default: return merge(max_var_index(f.lhs()), max_var_index(f.rhs()));
  }
}

/// Smallest index above every index occurring in `f`.
inline VarIndex fresh_var(const Formula& f) {
  auto m = max_var_index(f);
  return m ? *m + 1 : 0;
}

inline bool term_has_inv(const Term& t) {
  switch (t.kind()) {
    case TermKind::Inv: return true;
    case TermKind::Var:
    case TermKind::Int:
    case TermKind::Unif: return false;
    default: return term_has_inv(t.lhs()) || term_has_inv(t.rhs());
  }
}

inline bool term_has_uniformizer(const Term& t) {
  switch (t.kind()) {
    case TermKind::Unif: return true;
    case TermKind::Var:
    case TermKind::Int: return false;
    case TermKind::Inv: return term_has_uniformizer(t.arg());
    default: return term_has_uniformizer(t.lhs()) || term_has_uniformizer(t.rhs());
  }
}

/// True if some atom satisfies `pred_atom`.
inline bool any_atom(const Formula& f, const std::function<bool(const Formula&)>& pred_atom) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::InO: return pred_atom(f);
    case FormulaKind::Not:
    case FormulaKind::Exists: return any_atom(f.sub(), pred_atom);
    default: return any_atom(f.lhs(), pred_atom) || any_atom(f.rhs(), pred_atom);
  }
}

inline bool has_inv(const Formula& f) {
  return any_atom(f, [](const Formula& a) {
    return a.kind() == FormulaKind::Eq ? term_has_inv(a.left()) || term_has_inv(a.right()) : term_has_inv(a.term());
  });
}

inline bool has_o(const Formula& f) {
  return any_atom(f, [](const Formula& a) { return a.kind() == FormulaKind::InO; });
}

inline bool has_uniformizer(const Formula& f) {
  return any_atom(f, [](const Formula& a) {
    return a.kind() == FormulaKind::Eq ? term_has_uniformizer(a.left()) || term_has_uniformizer(a.right())
                                       : term_has_uniformizer(a.term());
  });
}

inline bool is_quantifier_free(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::InO: return true;
    case FormulaKind::Not: return is_quantifier_free(f.sub());
    case FormulaKind::Exists: return false;
    default: return is_quantifier_free(f.lhs()) && is_quantifier_free(f.rhs());
  }
}

/// Throws LanguageError if `f` uses a symbol `lang` does not admit.
inline void check_language(const Formula& f, Language lang) {
  if (!lang.admits_o() && has_o(f)) throw LanguageError("predicate O not admitted in language " + to_string(lang.kind));
  if (!lang.admits_inv() && has_inv(f))
    throw LanguageError("operator inv not admitted in language " + to_string(lang.kind));
  if (!lang.admits_uniformizer() && has_uniformizer(f)) throw LanguageError("constant w not admitted");
}

// ---------------------------------------------------------------------------
// Substitution

/// Replaces every occurrence of variable `v` in `t` by `by`.
inline Term substitute_term(const Term& t, VarIndex v, const Term& by) {
  switch (t.kind()) {
    case TermKind::Var: return t.var() == v ? by : t;
    case TermKind::Int:
    case TermKind::Unif: return t;
    case TermKind::Inv: {
      if (!term_has_var(t.arg(), v)) return t;
      return Term::inverse(substitute_term(t.arg(), v, by));
    }
    default: {
      if (!term_has_var(t, v)) return t;
      Term a = substitute_term(t.lhs(), v, by);
      Term b = substitute_term(t.rhs(), v, by);
      switch (t.kind()) {
        case TermKind::Add: return Term::add(a, b);
        case TermKind::Sub: return Term::sub(a, b);
        default: return Term::mul(a, b);
      }
    }
  }
}

namespace detail {

inline Formula substitute_impl(const Formula& f, VarIndex v, const Term& by, const std::set<VarIndex>& by_vars,
                               VarIndex& next_fresh) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      return Formula::eq(substitute_term(f.left(), v, by), substitute_term(f.right(), v, by));
    case FormulaKind::InO: return Formula::in_o(substitute_term(f.term(), v, by));
    case FormulaKind::Not: return Formula::negation(substitute_impl(f.sub(), v, by, by_vars, next_fresh));
    case FormulaKind::And:
      return Formula::conj(substitute_impl(f.lhs(), v, by, by_vars, next_fresh),
                           substitute_impl(f.rhs(), v, by, by_vars, next_fresh));
    case FormulaKind::Or:
      return Formula::disj(substitute_impl(f.lhs(), v, by, by_vars, next_fresh),
                           substitute_impl(f.rhs(), v, by, by_vars, next_fresh));
    case FormulaKind::Exists: {
      VarIndex u = f.var();
      if (u == v) return f;
      auto body_free = free_vars(f.sub());
      if (!body_free.contains(v)) return f;
      Formula body = f.sub();
      if (by_vars.contains(u)) {
        VarIndex fresh = next_fresh++;
        body = substitute_impl(body, u, Term::variable(fresh), {fresh}, next_fresh);
        u = fresh;
      }
      return Formula::exists(u, substitute_impl(body, v, by, by_vars, next_fresh));
    }
  }
  return f;
}

}  // namespace detail

/// Capture-avoiding substitution of `by` for the free occurrences of `v`.
/// Bound variables that would capture a variable of `by` are renamed to
/// fresh indices above everything in `f`, `v` and `by`.
inline Formula substitute(const Formula& f, VarIndex v, const Term& by) {
  if (by.kind() == TermKind::Var && by.var() == v) return f;
  VarIndex next = fresh_var(f);
  next = std::max(next, v + 1);
  if (auto m = max_var_index(by)) next = std::max(next, *m + 1);
  return detail::substitute_impl(f, v, by, term_vars(by), next);
}

// ---------------------------------------------------------------------------
// Fragment classification

/// Syntactic fragment membership with minimal indices. Undefined optional
/// means the formula is in no fragment of that family.
struct FragmentClass {
  bool is_qf = false;
  std::optional<unsigned> en_index;    // ∃_n
  std::optional<unsigned> ene1_index;  // ∃_n∃_1
  std::optional<unsigned> eup_index;   // ∃^n

  friend bool operator==(const FragmentClass&, const FragmentClass&) = default;
};

namespace detail {

// Positive boolean combination of qf formulas and formulas ∃y η, η qf.
inline bool in_exists1_fragment(const Formula& f) {
  if (is_quantifier_free(f)) return true;
  switch (f.kind()) {
    case FormulaKind::Exists: return is_quantifier_free(f.sub());
    case FormulaKind::And:
    case FormulaKind::Or: return in_exists1_fragment(f.lhs()) && in_exists1_fragment(f.rhs());
    default: return false;
  }
}

// rank: least n with f ∈ ∃^n. pos_rank: least n ≥ 1 with f a positive
// boolean combination of ∃^{n-1}-formulas.
inline std::optional<unsigned> upper_rank(const Formula& f);

inline std::optional<unsigned> pos_rank(const Formula& f) {
  if (is_quantifier_free(f)) return 1;
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or: {
      auto a = pos_rank(f.lhs());
      auto b = pos_rank(f.rhs());
      if (!a || !b) return std::nullopt;
      return std::max(*a, *b);
    }
    case FormulaKind::Exists: {
      auto r = upper_rank(f);
      if (!r) return std::nullopt;
      return *r + 1;
    }
    default: return std::nullopt;
  }
}

inline std::optional<unsigned> upper_rank(const Formula& f) {
  if (is_quantifier_free(f)) return 0;
  switch (f.kind()) {
    case FormulaKind::Exists: return pos_rank(f.sub());
    case FormulaKind::And:
    case FormulaKind::Or: return pos_rank(f);
    default: return std::nullopt;
  }
}

}  // namespace detail

inline FragmentClass classify_fragment(const Formula& f) {
  FragmentClass c;
  c.is_qf = is_quantifier_free(f);

  // Peel the leading block of existential quantifiers.
  std::vector<const Formula*> chain;
  const Formula* cur = &f;
  while (cur->kind() == FormulaKind::Exists) {
    chain.push_back(cur);
    cur = &cur->sub();
  }
  const unsigned m = static_cast<unsigned>(chain.size());
  if (is_quantifier_free(*cur)) c.en_index = m;

  for (unsigned k = 0; k <= m; ++k) {
    const Formula& rest = k < m ? *chain[k] : *cur;
    if (detail::in_exists1_fragment(rest)) {
      c.ene1_index = k;
      break;
    }
  }
  c.eup_index = detail::upper_rank(f);
  return c;
}

}  // namespace vfrag
