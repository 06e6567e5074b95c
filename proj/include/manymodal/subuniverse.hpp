#pragma once

#include "manymodal/lattice.hpp"

#include <span>
#include <string>
#include <vector>

namespace manymodal {

enum class NegationMode { rigid, down, up };
enum class Direction { down, up };

inline const char* to_string(NegationMode m) {
  switch (m) {
    case NegationMode::rigid: return "rigid";
    case NegationMode::down: return "down";
    case NegationMode::up: return "up";
  }
  return "?";
}

inline const char* to_string(Direction d) { return d == Direction::down ? "down" : "up"; }

/// A sub-universe of a base lattice: a subset that is a complete lattice under
/// the induced order. It need not be closed under the base join/meet; local
/// bounds are computed inside the member set. Negation is either rigid (base
/// complement, which must stay inside the set) or projected through the
/// down/up interpretation.
class SubUniverse {
public:
  SubUniverse() = default;

  const std::string& name() const { return name_; }
  const FiniteLattice& base() const { return *base_; }
  NegationMode negation_mode() const { return mode_; }

  const std::vector<int>& members() const { return members_; }
  bool contains(int e) const { return mask_[static_cast<size_t>(e)] != 0; }
  int member_count() const { return static_cast<int>(members_.size()); }

  int local_top() const { return local_top_; }
  int local_bottom() const { return local_bottom_; }

  int local_join(int x, int y) const { return local_join_[key(x, y)]; }
  int local_meet(int x, int y) const { return local_meet_[key(x, y)]; }

  int local_join_set(std::span<const int> xs) const {
    int acc = local_bottom_;
    for (int x : xs) acc = local_join(acc, x);
    return acc;
  }

  int local_meet_set(std::span<const int> xs) const {
    int acc = local_top_;
    for (int x : xs) acc = local_meet(acc, x);
    return acc;
  }

  /// Down/up-interpretation of a base value into this sub-universe. Members
  /// interpret to themselves.
  int interpret(int base_elem, Direction d) const {
    if (base_elem < 0 || base_elem >= base_->size())
      fail(errc::unknown_element, "interpretation of an element outside lattice '" + base_->name() + "'");
    return d == Direction::down ? interp_down_[static_cast<size_t>(base_elem)]
                                : interp_up_[static_cast<size_t>(base_elem)];
  }

  /// Negation of a member, per this sub-universe's negation mode.
  int negate(int member_elem) const {
    if (member_elem < 0 || member_elem >= base_->size() || !contains(member_elem))
      fail(errc::unknown_element,
           "negation of a value outside sub-universe '" + name_ + "'");
    int c = base_->complement(member_elem); // throws ComplementUndefined when partial
    switch (mode_) {
      case NegationMode::rigid: return c;   // inside the set by the closure invariant
      case NegationMode::down: return interpret(c, Direction::down);
      case NegationMode::up: return interpret(c, Direction::up);
    }
    return c;
  }

  bool same_members(const SubUniverse& other) const {
    if (base_ != other.base_ && base_->elements() != other.base_->elements()) return false;
    return mask_ == other.mask_;
  }

  friend SubUniverse validate_subuniverse(const FiniteLattice& base, const std::string& name,
                                          std::span<const std::string> member_names, NegationMode mode);

private:
  size_t key(int x, int y) const {
    return static_cast<size_t>(x) * static_cast<size_t>(base_->size()) + static_cast<size_t>(y);
  }

  std::string name_;
  const FiniteLattice* base_ = nullptr;
  std::vector<int> members_; // declaration order
  std::vector<unsigned char> mask_;
  NegationMode mode_ = NegationMode::rigid;
  int local_top_ = -1;
  int local_bottom_ = -1;
  std::vector<int> local_join_; // indexed by base-element pair; valid on members only
  std::vector<int> local_meet_;
  std::vector<int> interp_down_;
  std::vector<int> interp_up_;
};

inline SubUniverse validate_subuniverse(const FiniteLattice& base, const std::string& name,
                                        std::span<const std::string> member_names, NegationMode mode) {
  SubUniverse S;
  S.name_ = name;
  S.base_ = &base;
  S.mode_ = mode;
  if (member_names.empty())
    fail(errc::empty_subuniverse, "sub-universe '" + name + "' has no members");
  const size_t n = static_cast<size_t>(base.size());
  S.mask_.assign(n, 0);
  for (const auto& nm : member_names) {
    int e = base.index_of(nm);
    if (!S.mask_[static_cast<size_t>(e)]) {
      S.mask_[static_cast<size_t>(e)] = 1;
      S.members_.push_back(e);
    }
  }

  // Local pairwise bounds inside the member set.
  S.local_join_.assign(n * n, -1);
  S.local_meet_.assign(n * n, -1);
  auto local_bound = [&](int x, int y, bool upper) -> int {
    std::vector<int> cands;
    for (int m : S.members_) {
      bool ok = upper ? (base.leq(x, m) && base.leq(y, m)) : (base.leq(m, x) && base.leq(m, y));
      if (ok) cands.push_back(m);
    }
    for (int c : cands) {
      bool extremal = true;
      for (int d : cands)
        if (upper ? !base.leq(c, d) : !base.leq(d, c)) { extremal = false; break; }
      if (extremal) return c;
    }
    return -1;
  };
  for (int x : S.members_)
    for (int y : S.members_) {
      int lub = local_bound(x, y, true);
      if (lub < 0)
        fail(errc::not_locally_complete,
             "pair (" + base.element_name(x) + ", " + base.element_name(y) +
                 ") has no least upper bound inside sub-universe '" + name + "'");
      int glb = local_bound(x, y, false);
      if (glb < 0)
        fail(errc::not_locally_complete,
             "pair (" + base.element_name(x) + ", " + base.element_name(y) +
                 ") has no greatest lower bound inside sub-universe '" + name + "'");
      S.local_join_[S.key(x, y)] = lub;
      S.local_meet_[S.key(x, y)] = glb;
    }
  int top = S.members_.front(), bottom = S.members_.front();
  for (int m : S.members_) {
    top = S.local_join_[S.key(top, m)];
    bottom = S.local_meet_[S.key(bottom, m)];
  }
  S.local_top_ = top;
  S.local_bottom_ = bottom;

  // Rigid negation requires complement-closure. The complement map may be
  // partial; totality is enforced lazily, at the first negate() that needs a
  // missing entry.
  if (mode == NegationMode::rigid) {
    for (int m : S.members_) {
      int c = base.complement_or_none(m);
      if (c >= 0 && !S.mask_[static_cast<size_t>(c)])
        fail(errc::not_complement_closed,
             "sub-universe '" + name + "' is not closed under complement at '" + base.element_name(m) +
                 "' (complement '" + base.element_name(c) + "' missing)");
    }
  }

  // Interpretation caches for every base element.
  S.interp_down_.assign(n, -1);
  S.interp_up_.assign(n, -1);
  for (int a = 0; a < base.size(); ++a) {
    if (S.mask_[static_cast<size_t>(a)]) {
      S.interp_down_[static_cast<size_t>(a)] = a;
      S.interp_up_[static_cast<size_t>(a)] = a;
      continue;
    }
    int down = -1;
    bool any_below = false;
    for (int m : S.members_)
      if (base.leq(m, a)) {
        down = any_below ? S.local_join_[S.key(down, m)] : m;
        any_below = true;
      }
    S.interp_down_[static_cast<size_t>(a)] = any_below ? down : S.local_bottom_;
    int up = -1;
    bool any_above = false;
    for (int m : S.members_)
      if (base.leq(a, m)) {
        up = any_above ? S.local_meet_[S.key(up, m)] : m;
        any_above = true;
      }
    S.interp_up_[static_cast<size_t>(a)] = any_above ? up : S.local_top_;
  }
  return S;
}

/// Convenience: the sub-universe holding every element of the base.
inline SubUniverse full_subuniverse(const FiniteLattice& base, const std::string& name,
                                    NegationMode mode = NegationMode::rigid) {
  return validate_subuniverse(base, name, base.elements(), mode);
}

} // namespace manymodal
