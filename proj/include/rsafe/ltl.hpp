// ltl.hpp -- LTL abstract syntax over a partitioned signature, concrete
// grammar, printing, and negation normal form.
//
// Grammar (loosest to tightest): U/R right-associative, then ->, then |,
// then &, then unary ! X F G. Atoms are C-style identifiers; `true` and
// `false` are literals. Implication is parsed and eliminated on the fly
// (a -> b becomes !a | b applied at the node level).

#pragma once

#include <cassert>
#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rsafe/signature.hpp"

namespace rsafe {

struct parse_error : std::runtime_error {
  parse_error(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

enum class Op {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Next,
  Eventually,
  Globally,
  Until,
  Release,
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  Op op;
  std::string atom;  // for Op::Atom
  Formula lhs, rhs;  // rhs only for binary ops
};

inline Formula mk(Op op, Formula l = nullptr, Formula r = nullptr) {
  return std::make_shared<FormulaNode>(FormulaNode{op, "", std::move(l), std::move(r)});
}
inline Formula mk_atom(std::string name) {
  return std::make_shared<FormulaNode>(FormulaNode{Op::Atom, std::move(name), nullptr, nullptr});
}
inline Formula mk_true() { return mk(Op::True); }
inline Formula mk_false() { return mk(Op::False); }
inline Formula mk_not(Formula f) { return mk(Op::Not, std::move(f)); }
inline Formula mk_and(Formula l, Formula r) { return mk(Op::And, std::move(l), std::move(r)); }
inline Formula mk_or(Formula l, Formula r) { return mk(Op::Or, std::move(l), std::move(r)); }
inline Formula mk_next(Formula f) { return mk(Op::Next, std::move(f)); }
inline Formula mk_eventually(Formula f) { return mk(Op::Eventually, std::move(f)); }
inline Formula mk_globally(Formula f) { return mk(Op::Globally, std::move(f)); }
inline Formula mk_until(Formula l, Formula r) { return mk(Op::Until, std::move(l), std::move(r)); }
inline Formula mk_release(Formula l, Formula r) { return mk(Op::Release, std::move(l), std::move(r)); }

inline bool is_binary(Op op) {
  return op == Op::And || op == Op::Or || op == Op::Until || op == Op::Release;
}

inline bool structurally_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->atom != b->atom) return false;
  return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

namespace detail {

class LtlParser {
 public:
  LtlParser(const std::string& text, const Signature& sig)
      : text_(text), sig_(sig) {}

  Formula parse() {
    Formula f = parse_until();
    skip_ws();
    if (pos_ != text_.size())
      throw parse_error("unexpected trailing input", pos_);
    return f;
  }

 private:
  // until := impl (('U' | 'R') until)?        (right-associative)
  Formula parse_until() {
    Formula lhs = parse_impl();
    skip_ws();
    if (match_kw("U")) return mk_until(lhs, parse_until());
    if (match_kw("R")) return mk_release(lhs, parse_until());
    return lhs;
  }

  // impl := or ('->' impl)?
  Formula parse_impl() {
    Formula lhs = parse_or();
    skip_ws();
    if (match_sym("->")) return mk_or(mk_not(lhs), parse_impl());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (skip_ws(), match_sym("|")) lhs = mk_or(lhs, parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (skip_ws(), match_sym("&")) lhs = mk_and(lhs, parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    skip_ws();
    if (match_sym("!")) return mk_not(parse_unary());
    if (match_kw("X")) return mk_next(parse_unary());
    if (match_kw("F")) return mk_eventually(parse_unary());
    if (match_kw("G")) return mk_globally(parse_unary());
    if (match_sym("(")) {
      Formula f = parse_until();
      skip_ws();
      if (!match_sym(")")) throw parse_error("expected ')'", pos_);
      return f;
    }
    return parse_atom();
  }

  Formula parse_atom() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() ||
        !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      throw parse_error("expected formula", pos_);
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (name == "true") return mk_true();
    if (name == "false") return mk_false();
    if (!sig_.declares(name))
      throw parse_error("undeclared proposition '" + name + "'", start);
    return mk_atom(name);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Keywords must not be followed by an identifier character.
  bool match_kw(const char* kw) {
    skip_ws();
    std::size_t len = std::char_traits<char>::length(kw);
    if (text_.compare(pos_, len, kw) != 0) return false;
    std::size_t after = pos_ + len;
    if (after < text_.size() &&
        (std::isalnum(static_cast<unsigned char>(text_[after])) || text_[after] == '_'))
      return false;
    pos_ = after;
    return true;
  }

  bool match_sym(const char* sym) {
    skip_ws();
    std::size_t len = std::char_traits<char>::length(sym);
    if (text_.compare(pos_, len, sym) != 0) return false;
    pos_ += len;
    return true;
  }

  const std::string& text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_ltl(const std::string& text, const Signature& sig) {
  return detail::LtlParser(text, sig).parse();
}

inline std::string print_ltl(const Formula& f) {
  switch (f->op) {
    case Op::True:
      return "true";
    case Op::False:
      return "false";
    case Op::Atom:
      return f->atom;
    case Op::Not:
      return "!(" + print_ltl(f->lhs) + ")";
    case Op::Next:
      return "X(" + print_ltl(f->lhs) + ")";
    case Op::Eventually:
      return "F(" + print_ltl(f->lhs) + ")";
    case Op::Globally:
      return "G(" + print_ltl(f->lhs) + ")";
    case Op::And:
      return "(" + print_ltl(f->lhs) + " & " + print_ltl(f->rhs) + ")";
    case Op::Or:
      return "(" + print_ltl(f->lhs) + " | " + print_ltl(f->rhs) + ")";
    case Op::Until:
      return "(" + print_ltl(f->lhs) + " U " + print_ltl(f->rhs) + ")";
    case Op::Release:
      return "(" + print_ltl(f->lhs) + " R " + print_ltl(f->rhs) + ")";
  }
  return "";
}

// Negation normal form. Negation is pushed to the atoms; F and G stay
// primitive, U dualizes to R and vice versa.
inline Formula to_nnf(const Formula& f, bool negated = false) {
  switch (f->op) {
    case Op::True:
      return negated ? mk_false() : mk_true();
    case Op::False:
      return negated ? mk_true() : mk_false();
    case Op::Atom:
      return negated ? mk_not(mk_atom(f->atom)) : mk_atom(f->atom);
    case Op::Not:
      return to_nnf(f->lhs, !negated);
    case Op::And:
      return negated ? mk_or(to_nnf(f->lhs, true), to_nnf(f->rhs, true))
                     : mk_and(to_nnf(f->lhs, false), to_nnf(f->rhs, false));
    case Op::Or:
      return negated ? mk_and(to_nnf(f->lhs, true), to_nnf(f->rhs, true))
                     : mk_or(to_nnf(f->lhs, false), to_nnf(f->rhs, false));
    case Op::Next:
      return mk_next(to_nnf(f->lhs, negated));
    case Op::Eventually:
      return negated ? mk_globally(to_nnf(f->lhs, true))
                     : mk_eventually(to_nnf(f->lhs, false));
    case Op::Globally:
      return negated ? mk_eventually(to_nnf(f->lhs, true))
                     : mk_globally(to_nnf(f->lhs, false));
    case Op::Until:
      return negated ? mk_release(to_nnf(f->lhs, true), to_nnf(f->rhs, true))
                     : mk_until(to_nnf(f->lhs, false), to_nnf(f->rhs, false));
    case Op::Release:
      return negated ? mk_until(to_nnf(f->lhs, true), to_nnf(f->rhs, true))
                     : mk_release(to_nnf(f->lhs, false), to_nnf(f->rhs, false));
  }
  return nullptr;
}

inline bool is_nnf(const Formula& f) {
  if (f->op == Op::Not) return f->lhs->op == Op::Atom;
  if (f->lhs && !is_nnf(f->lhs)) return false;
  if (f->rhs && !is_nnf(f->rhs)) return false;
  return true;
}

inline std::size_t node_count(const Formula& f) {
  std::size_t n = 1;
  if (f->lhs) n += node_count(f->lhs);
  if (f->rhs) n += node_count(f->rhs);
  return n;
}

}  // namespace rsafe
