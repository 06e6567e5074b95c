#pragma once

#include "manymodal/formula.hpp"
#include "manymodal/lattice.hpp"
#include "manymodal/subuniverse.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace manymodal {

struct World {
  std::string id;
  const SubUniverse* universe = nullptr;
};

/// Worlds plus accessibility plus the designated filter; a Structure minus its
/// valuation. The unit of frame-level reasoning.
class Frame {
public:
  Frame() = default;

  Frame(const FiniteLattice& base, std::vector<World> worlds,
        std::vector<std::pair<std::string, std::string>> edges, Filter filter)
      : base_(&base), worlds_(std::move(worlds)), filter_(std::move(filter)) {
    for (int i = 0; i < static_cast<int>(worlds_.size()); ++i) {
      const World& w = worlds_[static_cast<size_t>(i)];
      if (!w.universe)
        fail(errc::validation_error, "world '" + w.id + "' has no sub-universe");
      if (&w.universe->base() != base_)
        fail(errc::base_lattice_mismatch,
             "world '" + w.id + "' carries a sub-universe of a different base lattice");
      if (!index_.emplace(w.id, i).second)
        fail(errc::duplicate_name, "world id '" + w.id + "' declared twice");
    }
    succ_.assign(worlds_.size(), {});
    for (const auto& [from, to] : edges) {
      auto fi = index_.find(from);
      auto ti = index_.find(to);
      if (fi == index_.end() || ti == index_.end())
        fail(errc::unknown_world_in_relation,
             "accessibility pair (" + from + ", " + to + ") references an undeclared world");
      std::pair<int, int> e{fi->second, ti->second};
      if (std::find(edges_.begin(), edges_.end(), e) == edges_.end()) edges_.push_back(e);
    }
    for (auto& [f, t] : edges_) succ_[static_cast<size_t>(f)].push_back(t);
    // Successors iterate in world declaration order.
    for (auto& row : succ_) std::sort(row.begin(), row.end());
  }

  const FiniteLattice& base() const { return *base_; }
  const std::vector<World>& worlds() const { return worlds_; }
  int world_count() const { return static_cast<int>(worlds_.size()); }

  int world_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) fail(errc::unknown_world_in_relation, "no world '" + id + "'");
    return it->second;
  }

  const SubUniverse& universe(int w) const { return *worlds_[static_cast<size_t>(w)].universe; }
  const std::vector<int>& successors(int w) const { return succ_[static_cast<size_t>(w)]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const Filter& filter() const { return filter_; }

  bool has_edge(int a, int b) const {
    for (int u : succ_[static_cast<size_t>(a)])
      if (u == b) return true;
    return false;
  }

  bool transitive() const {
    for (int a = 0; a < world_count(); ++a)
      for (int b : successors(a))
        for (int c : successors(b))
          if (!has_edge(a, c)) return false;
    return true;
  }

  bool serial() const {
    for (int a = 0; a < world_count(); ++a)
      if (successors(a).empty()) return false;
    return true;
  }

private:
  const FiniteLattice* base_ = nullptr;
  std::vector<World> worlds_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::pair<int, int>> edges_;
  Filter filter_;
};

/// A many-logic modal structure: a frame plus an atomic valuation. Atom values
/// must lie in the world's own sub-universe.
class Structure {
public:
  Structure() = default;

  Structure(Frame frame, std::map<std::string, std::vector<int>> valuation)
      : frame_(std::move(frame)), vals_(std::move(valuation)) {
    for (auto& [atom, per_world] : vals_) {
      if (static_cast<int>(per_world.size()) != frame_.world_count())
        fail(errc::validation_error, "valuation for atom '" + atom + "' has wrong arity");
      for (int w = 0; w < frame_.world_count(); ++w) {
        int v = per_world[static_cast<size_t>(w)];
        if (v < 0) continue; // unassigned; an error only if evaluation reaches it
        if (v >= frame_.base().size() || !frame_.universe(w).contains(v))
          fail(errc::value_outside_world_lattice,
               "atom '" + atom + "' at world '" + frame_.worlds()[static_cast<size_t>(w)].id +
                   "' takes a value outside the world's sub-universe");
      }
    }
  }

  const Frame& frame() const { return frame_; }
  const FiniteLattice& base() const { return frame_.base(); }
  const Filter& filter() const { return frame_.filter(); }

  const std::map<std::string, std::vector<int>>& valuation() const { return vals_; }

  int atom_value(int w, const std::string& atom) const {
    auto it = vals_.find(atom);
    if (it == vals_.end()) return -1;
    return it->second[static_cast<size_t>(w)];
  }

  /// (world, atom) pairs with no assigned value, over the declared atoms.
  std::vector<std::pair<std::string, std::string>> unassigned_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [atom, per_world] : vals_)
      for (int w = 0; w < frame_.world_count(); ++w)
        if (per_world[static_cast<size_t>(w)] < 0)
          out.emplace_back(frame_.worlds()[static_cast<size_t>(w)].id, atom);
    return out;
  }

  void set_atom_value(const std::string& atom, int world, int value) {
    auto& row = vals_[atom];
    row.resize(static_cast<size_t>(frame_.world_count()), -1);
    row[static_cast<size_t>(world)] = value;
  }

private:
  Frame frame_;
  std::map<std::string, std::vector<int>> vals_; // atom -> per-world value, -1 unassigned
};

/// Valuation evaluator with a per-instance memo over (subformula, world).
/// Def.-style clauses: atoms from the valuation; negation per the world's
/// negation mode; or/and as base join/meet followed by interpretation into the
/// world's sub-universe; box as the local meet of interpreted successor
/// values (local top when no successor); diamond as negated box of the
/// negated operand.
class Evaluator {
public:
  explicit Evaluator(const Structure& m, Direction dir = Direction::down) : m_(&m), dir_(dir) {}

  int value(int world, const FormulaPtr& f) { return eval(world, f.get()); }

  int value(const std::string& world_id, const FormulaPtr& f) {
    return eval(m_->frame().world_index(world_id), f.get());
  }

  bool satisfies(int world, const FormulaPtr& f) { return m_->filter().contains(value(world, f)); }

  bool model_satisfies(const FormulaPtr& f) {
    for (int w = 0; w < m_->frame().world_count(); ++w)
      if (!satisfies(w, f)) return false;
    return true;
  }

  /// First world (declaration order) where the formula is not satisfied.
  std::optional<int> first_failing_world(const FormulaPtr& f) {
    for (int w = 0; w < m_->frame().world_count(); ++w)
      if (!satisfies(w, f)) return w;
    return std::nullopt;
  }

  /// Memo-free evaluation; used to cross-check the memoized path.
  int value_nomemo(int world, const FormulaPtr& f) const { return eval_raw(world, f.get(), nullptr); }

private:
  int eval(int world, const Formula* f) { return eval_raw(world, f, &memo_); }

  int eval_raw(int world, const Formula* f, std::vector<int>* memo) const {
    const size_t nw = static_cast<size_t>(m_->frame().world_count());
    size_t slot = 0;
    if (memo) {
      slot = static_cast<size_t>(f->id) * nw + static_cast<size_t>(world);
      if (slot >= memo->size()) memo->resize(slot + 1, -1);
      if ((*memo)[slot] >= 0) return (*memo)[slot];
    }
    const SubUniverse& U = m_->frame().universe(world);
    const FiniteLattice& L = m_->base();
    int r = -1;
    switch (f->op) {
      case FormulaOp::atom: {
        r = m_->atom_value(world, f->atom);
        if (r < 0)
          fail(errc::unassigned_atom, "atom '" + f->atom + "' has no value at world '" +
                                          m_->frame().worlds()[static_cast<size_t>(world)].id + "'");
        break;
      }
      case FormulaOp::negation:
        r = U.negate(eval_raw(world, f->left.get(), memo));
        break;
      case FormulaOp::disjunction:
        r = U.interpret(L.join(eval_raw(world, f->left.get(), memo), eval_raw(world, f->right.get(), memo)), dir_);
        break;
      case FormulaOp::conjunction:
        r = U.interpret(L.meet(eval_raw(world, f->left.get(), memo), eval_raw(world, f->right.get(), memo)), dir_);
        break;
      case FormulaOp::implication: {
        // a -> b := ~a | b
        int na = U.negate(eval_raw(world, f->left.get(), memo));
        int b = eval_raw(world, f->right.get(), memo);
        r = U.interpret(L.join(na, b), dir_);
        break;
      }
      case FormulaOp::box: {
        bool any = false;
        int acc = -1;
        for (int u : m_->frame().successors(world)) {
          int iv = U.interpret(eval_raw(u, f->left.get(), memo), dir_);
          acc = any ? U.local_meet(acc, iv) : iv;
          any = true;
        }
        r = any ? acc : U.local_top(); // empty meet inside the world's universe
        break;
      }
      case FormulaOp::diamond: {
        // (- v(box ~phi))^{L_w}, with v_u(~phi) computed in each successor.
        bool any = false;
        int acc = -1;
        for (int u : m_->frame().successors(world)) {
          const SubUniverse& Uu = m_->frame().universe(u);
          int nx = Uu.negate(eval_raw(u, f->left.get(), memo));
          int iv = U.interpret(nx, dir_);
          acc = any ? U.local_meet(acc, iv) : iv;
          any = true;
        }
        int boxed = any ? acc : U.local_top();
        r = U.negate(boxed);
        break;
      }
    }
    if (memo) (*memo)[slot] = r;
    return r;
  }

  const Structure* m_;
  Direction dir_;
  std::vector<int> memo_; // (formula id, world) -> value; -1 empty
};

inline int evaluate(const Structure& m, const std::string& world_id, const FormulaPtr& f,
                    Direction dir = Direction::down) {
  Evaluator ev(m, dir);
  return ev.value(world_id, f);
}

inline bool satisfies(const Structure& m, const std::string& world_id, const FormulaPtr& f,
                      Direction dir = Direction::down) {
  Evaluator ev(m, dir);
  return ev.satisfies(m.frame().world_index(world_id), f);
}

inline bool model_satisfies(const Structure& m, const FormulaPtr& f, Direction dir = Direction::down) {
  Evaluator ev(m, dir);
  return ev.model_satisfies(f);
}

/// Structure-level report: confirms the construction invariants and lists
/// (world, atom) pairs still unassigned.
struct StructureReport {
  bool ok = true;
  std::vector<std::pair<std::string, std::string>> unassigned;
};

inline StructureReport validate_structure(const Structure& m) {
  StructureReport rep;
  rep.unassigned = m.unassigned_pairs();
  return rep;
}

// --- bisimulation -------------------------------------------------------------

/// A relation between same-sub-universe worlds of two structures.
struct Bisim {
  std::vector<std::pair<int, int>> pairs; // (left world index, right world index)

  bool contains(int a, int b) const {
    for (const auto& [x, y] : pairs)
      if (x == a && y == b) return true;
    return false;
  }
};

/// Checks the three bisimulation conditions for a given relation.
inline bool is_bisimulation(const Structure& m1, const Structure& m2, const Bisim& b) {
  for (const auto& [w, w2] : b.pairs) {
    const SubUniverse& u1 = m1.frame().universe(w);
    const SubUniverse& u2 = m2.frame().universe(w2);
    if (!u1.same_members(u2) || u1.negation_mode() != u2.negation_mode()) return false;
    for (const auto& [atom, row] : m1.valuation())
      if (row[static_cast<size_t>(w)] != m2.atom_value(w2, atom)) return false;
    for (const auto& [atom, row] : m2.valuation())
      if (row[static_cast<size_t>(w2)] != m1.atom_value(w, atom)) return false;
    for (int v : m1.frame().successors(w)) { // zig
      bool matched = false;
      for (int v2 : m2.frame().successors(w2))
        if (b.contains(v, v2)) { matched = true; break; }
      if (!matched) return false;
    }
    for (int v2 : m2.frame().successors(w2)) { // zag
      bool matched = false;
      for (int v : m1.frame().successors(w))
        if (b.contains(v, v2)) { matched = true; break; }
      if (!matched) return false;
    }
  }
  return true;
}

/// Largest bisimulation between two structures over one base lattice, by
/// fixpoint refinement from the atom-agreeing same-universe pairs.
inline Bisim greatest_bisimulation(const Structure& m1, const Structure& m2) {
  if (&m1.base() != &m2.base() &&
      (m1.base().elements() != m2.base().elements()))
    fail(errc::base_lattice_mismatch, "bisimulation requires a common base lattice");
  std::vector<std::pair<int, int>> pairs;
  for (int w = 0; w < m1.frame().world_count(); ++w)
    for (int w2 = 0; w2 < m2.frame().world_count(); ++w2) {
      const SubUniverse& u1 = m1.frame().universe(w);
      const SubUniverse& u2 = m2.frame().universe(w2);
      if (!u1.same_members(u2) || u1.negation_mode() != u2.negation_mode()) continue;
      bool agree = true;
      for (const auto& [atom, row] : m1.valuation())
        if (row[static_cast<size_t>(w)] != m2.atom_value(w2, atom)) { agree = false; break; }
      if (agree)
        for (const auto& [atom, row] : m2.valuation())
          if (row[static_cast<size_t>(w2)] != m1.atom_value(w, atom)) { agree = false; break; }
      if (agree) pairs.emplace_back(w, w2);
    }
  Bisim b{std::move(pairs)};
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<int, int>> keep;
    for (const auto& [w, w2] : b.pairs) {
      bool ok = true;
      for (int v : m1.frame().successors(w)) {
        bool matched = false;
        for (int v2 : m2.frame().successors(w2))
          if (b.contains(v, v2)) { matched = true; break; }
        if (!matched) { ok = false; break; }
      }
      if (ok)
        for (int v2 : m2.frame().successors(w2)) {
          bool matched = false;
          for (int v : m1.frame().successors(w))
            if (b.contains(v, v2)) { matched = true; break; }
          if (!matched) { ok = false; break; }
        }
      if (ok)
        keep.emplace_back(w, w2);
      else
        changed = true;
    }
    b.pairs = std::move(keep);
  }
  return b;
}

/// One value disagreement found by the bounded invariance check.
struct BisimViolation {
  int left_world;
  int right_world;
  FormulaPtr formula;
  int left_value;
  int right_value;
};

/// For every pair and every core formula up to max_size, checks
/// v_w(phi) == v_w'(phi). The expected report is empty when `b` really is a
/// bisimulation.
inline std::vector<BisimViolation> bisim_equivalence_check(const Structure& m1, const Structure& m2,
                                                           const Bisim& b, int max_size,
                                                           Direction dir = Direction::down) {
  std::set<std::string> atom_set;
  for (const auto& [atom, row] : m1.valuation()) atom_set.insert(atom);
  for (const auto& [atom, row] : m2.valuation()) atom_set.insert(atom);
  FormulaEnumerator en(std::vector<std::string>(atom_set.begin(), atom_set.end()));
  Evaluator e1(m1, dir), e2(m2, dir);
  std::vector<BisimViolation> out;
  for (int k = 1; k <= max_size; ++k)
    for (const auto& f : en.level(k))
      for (const auto& [w, w2] : b.pairs) {
        int v1 = e1.value(w, f);
        int v2 = e2.value(w2, f);
        if (v1 != v2) out.push_back({w, w2, f, v1, v2});
      }
  return out;
}

} // namespace manymodal
