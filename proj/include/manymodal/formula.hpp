#pragma once

#include "manymodal/errors.hpp"

#include <atomic>
#include <cctype>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace manymodal {

enum class FormulaOp { atom, negation, conjunction, disjunction, implication, box, diamond };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

namespace detail {
inline std::uint32_t next_formula_id() {
  static std::atomic<std::uint32_t> counter{0};
  return counter.fetch_add(1, std::memory_order_relaxed);
}
} // namespace detail

/// Immutable AST node. Subtrees are shared; `id` keys evaluation memo tables.
struct Formula {
  FormulaOp op;
  std::string atom;  // op == atom only
  FormulaPtr left;   // unary operand or left operand
  FormulaPtr right;  // binary right operand
  std::uint32_t id = detail::next_formula_id();
};

inline FormulaPtr make_atom(std::string name) {
  if (name.empty()) fail(errc::validation_error, "atom name must be nonempty");
  auto f = std::make_shared<Formula>();
  f->op = FormulaOp::atom;
  f->atom = std::move(name);
  return f;
}

inline FormulaPtr make_unary(FormulaOp op, FormulaPtr sub) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->left = std::move(sub);
  return f;
}

inline FormulaPtr make_not(FormulaPtr sub) { return make_unary(FormulaOp::negation, std::move(sub)); }
inline FormulaPtr make_box(FormulaPtr sub) { return make_unary(FormulaOp::box, std::move(sub)); }
inline FormulaPtr make_diamond(FormulaPtr sub) { return make_unary(FormulaOp::diamond, std::move(sub)); }

inline FormulaPtr make_binary(FormulaOp op, FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

inline FormulaPtr make_and(FormulaPtr l, FormulaPtr r) {
  return make_binary(FormulaOp::conjunction, std::move(l), std::move(r));
}
inline FormulaPtr make_or(FormulaPtr l, FormulaPtr r) {
  return make_binary(FormulaOp::disjunction, std::move(l), std::move(r));
}
inline FormulaPtr make_implies(FormulaPtr l, FormulaPtr r) {
  return make_binary(FormulaOp::implication, std::move(l), std::move(r));
}

inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->op != b->op) return false;
  switch (a->op) {
    case FormulaOp::atom: return a->atom == b->atom;
    case FormulaOp::negation:
    case FormulaOp::box:
    case FormulaOp::diamond: return formula_equal(a->left, b->left);
    default: return formula_equal(a->left, b->left) && formula_equal(a->right, b->right);
  }
}

inline void collect_atoms(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f) return;
  if (f->op == FormulaOp::atom) {
    out.insert(f->atom);
    return;
  }
  collect_atoms(f->left, out);
  collect_atoms(f->right, out);
}

/// Sorted, duplicate-free atom names of a formula.
inline std::vector<std::string> formula_atoms(const FormulaPtr& f) {
  std::set<std::string> s;
  collect_atoms(f, s);
  return {s.begin(), s.end()};
}

inline int formula_size(const FormulaPtr& f) {
  if (!f) return 0;
  return 1 + formula_size(f->left) + formula_size(f->right);
}

// --- parser -----------------------------------------------------------------
//
// formula := impl
// impl    := or ("->" impl)?
// or      := and ("|" and)*
// and     := unary ("&" unary)*
// unary   := "~" unary | "[]" unary | "<>" unary | atom | "(" formula ")"
// atom    := [A-Za-z_][A-Za-z0-9_']*

namespace detail {

class FormulaParser {
public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  FormulaPtr run() {
    auto f = parse_impl();
    skip_ws();
    if (pos_ != text_.size())
      throw syntax_failure(pos_, "end of input", describe("end of input"));
    return f;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool try_token(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  std::string describe(const std::string& expected) const {
    std::string got = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    return "at offset " + std::to_string(pos_) + ": expected " + expected + ", got " + got;
  }

  FormulaPtr parse_impl() {
    auto lhs = parse_or();
    if (try_token("->")) return make_implies(std::move(lhs), parse_impl()); // right-assoc
    return lhs;
  }

  FormulaPtr parse_or() {
    auto lhs = parse_and();
    for (;;) {
      skip_ws();
      // "|" but not part of a longer token; the grammar has none, so plain match.
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        lhs = make_or(std::move(lhs), parse_and());
      } else {
        return lhs;
      }
    }
  }

  FormulaPtr parse_and() {
    auto lhs = parse_unary();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '&') {
        ++pos_;
        lhs = make_and(std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }

  FormulaPtr parse_unary() {
    skip_ws();
    if (try_token("~")) return make_not(parse_unary());
    if (try_token("[]")) return make_box(parse_unary());
    if (try_token("<>")) return make_diamond(parse_unary());
    if (try_token("(")) {
      auto f = parse_impl();
      skip_ws();
      if (!try_token(")")) throw syntax_failure(pos_, ")", describe("')'"));
      return f;
    }
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    skip_ws();
    size_t start = pos_;
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      throw syntax_failure(pos_, "atom, '~', '[]', '<>' or '('", describe("an atom or a unary operator"));
    ++pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
        ++pos_;
      else
        break;
    }
    return make_atom(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  size_t pos_ = 0;
};

} // namespace detail

inline FormulaPtr parse_formula(std::string_view text) { return detail::FormulaParser(text).run(); }

// --- renderer ----------------------------------------------------------------

namespace detail {

inline int precedence(FormulaOp op) {
  switch (op) {
    case FormulaOp::implication: return 1;
    case FormulaOp::disjunction: return 2;
    case FormulaOp::conjunction: return 3;
    default: return 4; // atoms and unary operators
  }
}

inline void render_into(const FormulaPtr& f, std::string& out) {
  auto child = [&](const FormulaPtr& c, bool needs_parens) {
    if (needs_parens) {
      out += '(';
      render_into(c, out);
      out += ')';
    } else {
      render_into(c, out);
    }
  };
  int p = precedence(f->op);
  switch (f->op) {
    case FormulaOp::atom: out += f->atom; break;
    case FormulaOp::negation:
    case FormulaOp::box:
    case FormulaOp::diamond:
      out += f->op == FormulaOp::negation ? "~" : (f->op == FormulaOp::box ? "[]" : "<>");
      child(f->left, precedence(f->left->op) < p);
      break;
    case FormulaOp::conjunction:
    case FormulaOp::disjunction:
      // Left-associative: equal precedence on the right re-parses differently.
      child(f->left, precedence(f->left->op) < p);
      out += f->op == FormulaOp::conjunction ? " & " : " | ";
      child(f->right, precedence(f->right->op) <= p);
      break;
    case FormulaOp::implication:
      // Right-associative.
      child(f->left, precedence(f->left->op) <= p);
      out += " -> ";
      child(f->right, precedence(f->right->op) < p);
      break;
  }
}

} // namespace detail

/// Minimal-parentheses concrete syntax; parse(render(f)) == f structurally.
inline std::string render_formula(const FormulaPtr& f) {
  std::string out;
  detail::render_into(f, out);
  return out;
}

/// Rewrites every implication a -> b into ~a | b. Box/Diamond are kept; each
/// has its own semantic clause.
inline FormulaPtr desugar(const FormulaPtr& f) {
  switch (f->op) {
    case FormulaOp::atom: return f;
    case FormulaOp::negation:
    case FormulaOp::box:
    case FormulaOp::diamond: {
      auto sub = desugar(f->left);
      if (sub == f->left) return f;
      return make_unary(f->op, std::move(sub));
    }
    case FormulaOp::implication:
      return make_or(make_not(desugar(f->left)), desugar(f->right));
    default: {
      auto l = desugar(f->left);
      auto r = desugar(f->right);
      if (l == f->left && r == f->right) return f;
      return make_binary(f->op, std::move(l), std::move(r));
    }
  }
}

// --- bounded enumeration ------------------------------------------------------

/// Deterministic, duplicate-free stream of all core formulas (no implication)
/// ordered by size, then by constructor: at size k first ~, [], <> over each
/// size-(k-1) formula in stream order, then & and | over every split
/// (left size i, right size k-1-i) with i ascending.
class FormulaEnumerator {
public:
  explicit FormulaEnumerator(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {}

  const std::vector<FormulaPtr>& level(int size) {
    if (size < 1) { static const std::vector<FormulaPtr> empty; return empty; }
    while (static_cast<int>(levels_.size()) < size) grow();
    return levels_[static_cast<size_t>(size - 1)];
  }

  std::vector<FormulaPtr> up_to(int max_size) {
    std::vector<FormulaPtr> out;
    for (int k = 1; k <= max_size; ++k) {
      const auto& lv = level(k);
      out.insert(out.end(), lv.begin(), lv.end());
    }
    return out;
  }

private:
  void grow() {
    int k = static_cast<int>(levels_.size()) + 1;
    std::vector<FormulaPtr> lv;
    if (k == 1) {
      for (const auto& a : atoms_) lv.push_back(make_atom(a));
    } else {
      for (FormulaOp op : {FormulaOp::negation, FormulaOp::box, FormulaOp::diamond})
        for (const auto& sub : levels_[static_cast<size_t>(k - 2)]) lv.push_back(make_unary(op, sub));
      for (FormulaOp op : {FormulaOp::conjunction, FormulaOp::disjunction})
        for (int i = 1; i <= k - 2; ++i)
          for (const auto& l : levels_[static_cast<size_t>(i - 1)])
            for (const auto& r : levels_[static_cast<size_t>(k - 2 - i)]) lv.push_back(make_binary(op, l, r));
    }
    levels_.push_back(std::move(lv));
  }

  std::vector<std::string> atoms_;
  std::vector<std::vector<FormulaPtr>> levels_;
};

} // namespace manymodal
