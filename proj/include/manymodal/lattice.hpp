#pragma once

#include "manymodal/errors.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace manymodal {

/// Input for build_lattice. `order` accepts cover pairs (Hasse) or arbitrary
/// x <= y pairs; both are closed reflexively and transitively.
struct LatticeSpec {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> order;
  std::vector<std::pair<std::string, std::string>> complements; // (x, -x); may be partial
};

/// A finite lattice with named elements, a (possibly partial) complement map
/// and cached pairwise join/meet tables. Immutable after construction.
class FiniteLattice {
public:
  FiniteLattice() = default;

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& element_name(int i) const { return elements_[static_cast<size_t>(i)]; }

  bool has_element(const std::string& name) const { return index_.count(name) > 0; }

  int index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      fail(errc::unknown_element, "no element '" + name + "' in lattice '" + name_ + "'");
    return it->second;
  }

  bool leq(int x, int y) const { return leq_[static_cast<size_t>(x) * n_ + static_cast<size_t>(y)] != 0; }
  bool leq(const std::string& x, const std::string& y) const { return leq(index_of(x), index_of(y)); }

  int join(int x, int y) const { return join_[static_cast<size_t>(x) * n_ + static_cast<size_t>(y)]; }
  int meet(int x, int y) const { return meet_[static_cast<size_t>(x) * n_ + static_cast<size_t>(y)]; }

  /// Least upper bound of a set; the empty join is bottom.
  int join_set(std::span<const int> xs) const {
    int acc = bottom_;
    for (int x : xs) {
      check_index(x);
      acc = join(acc, x);
    }
    return acc;
  }

  /// Greatest lower bound of a set; the empty meet is top.
  int meet_set(std::span<const int> xs) const {
    int acc = top_;
    for (int x : xs) {
      check_index(x);
      acc = meet(acc, x);
    }
    return acc;
  }

  int top() const { return top_; }
  int bottom() const { return bottom_; }

  bool has_complement(int x) const { return complement_[static_cast<size_t>(x)] >= 0; }
  bool complement_total() const {
    return std::all_of(complement_.begin(), complement_.end(), [](int c) { return c >= 0; });
  }

  int complement(int x) const {
    check_index(x);
    int c = complement_[static_cast<size_t>(x)];
    if (c < 0)
      fail(errc::complement_undefined,
           "complement of '" + element_name(x) + "' is not declared in lattice '" + name_ + "'");
    return c;
  }

  /// Raw complement map entry, -1 when undeclared.
  int complement_or_none(int x) const { return complement_[static_cast<size_t>(x)]; }

  /// Hasse covers (x, y) with x strictly below y and nothing in between.
  std::vector<std::pair<int, int>> covers() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < size(); ++x)
      for (int y = 0; y < size(); ++y) {
        if (x == y || !leq(x, y)) continue;
        bool direct = true;
        for (int z = 0; z < size() && direct; ++z)
          if (z != x && z != y && leq(x, z) && leq(z, y)) direct = false;
        if (direct) out.emplace_back(x, y);
      }
    return out;
  }

  bool distributive() const {
    for (int x = 0; x < size(); ++x)
      for (int y = 0; y < size(); ++y)
        for (int z = 0; z < size(); ++z)
          if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) return false;
    return true;
  }

  /// True when every element has some y with x.y = 0 and x+y = 1 (the declared
  /// complement map is not consulted).
  bool complemented() const {
    for (int x = 0; x < size(); ++x) {
      bool found = false;
      for (int y = 0; y < size() && !found; ++y)
        if (meet(x, y) == bottom_ && join(x, y) == top_) found = true;
      if (!found) return false;
    }
    return true;
  }

  friend FiniteLattice build_lattice(const LatticeSpec& spec);

private:
  void check_index(int x) const {
    if (x < 0 || x >= size())
      fail(errc::unknown_element, "element index out of range in lattice '" + name_ + "'");
  }

  std::string name_;
  std::vector<std::string> elements_;
  std::unordered_map<std::string, int> index_;
  size_t n_ = 0;
  std::vector<unsigned char> leq_;
  std::vector<int> join_;
  std::vector<int> meet_;
  std::vector<int> complement_;
  int top_ = -1;
  int bottom_ = -1;
};

inline FiniteLattice build_lattice(const LatticeSpec& spec) {
  FiniteLattice L;
  L.name_ = spec.name;
  L.elements_ = spec.elements;
  if (L.elements_.empty())
    fail(errc::not_a_lattice, "lattice '" + spec.name + "' declares no elements");
  for (int i = 0; i < static_cast<int>(L.elements_.size()); ++i) {
    auto [it, fresh] = L.index_.emplace(L.elements_[static_cast<size_t>(i)], i);
    if (!fresh)
      fail(errc::duplicate_name,
           "element '" + L.elements_[static_cast<size_t>(i)] + "' declared twice in lattice '" + spec.name + "'");
  }
  const size_t n = L.elements_.size();
  L.n_ = n;
  L.leq_.assign(n * n, 0);
  for (size_t i = 0; i < n; ++i) L.leq_[i * n + i] = 1;
  for (const auto& [lo, hi] : spec.order) {
    auto li = L.index_.find(lo);
    auto hi_it = L.index_.find(hi);
    if (li == L.index_.end() || hi_it == L.index_.end())
      fail(errc::dangling_reference,
           "order pair (" + lo + ", " + hi + ") references an undeclared element in lattice '" + spec.name + "'");
    L.leq_[static_cast<size_t>(li->second) * n + static_cast<size_t>(hi_it->second)] = 1;
  }
  // Transitive closure.
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) {
      if (!L.leq_[i * n + k]) continue;
      for (size_t j = 0; j < n; ++j)
        if (L.leq_[k * n + j]) L.leq_[i * n + j] = 1;
    }
  // Antisymmetry.
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (L.leq_[i * n + j] && L.leq_[j * n + i])
        fail(errc::not_a_poset, "order cycle through '" + L.elements_[i] + "' and '" + L.elements_[j] +
                                    "' in lattice '" + spec.name + "'");
  // Pairwise joins and meets.
  L.join_.assign(n * n, -1);
  L.meet_.assign(n * n, -1);
  auto bound = [&](size_t i, size_t j, bool upper) -> int {
    std::vector<int> cands;
    for (size_t k = 0; k < n; ++k) {
      bool ok = upper ? (L.leq_[i * n + k] && L.leq_[j * n + k]) : (L.leq_[k * n + i] && L.leq_[k * n + j]);
      if (ok) cands.push_back(static_cast<int>(k));
    }
    for (int c : cands) {
      bool extremal = true;
      for (int d : cands) {
        bool rel = upper ? L.leq_[static_cast<size_t>(c) * n + static_cast<size_t>(d)]
                         : L.leq_[static_cast<size_t>(d) * n + static_cast<size_t>(c)];
        if (!rel) { extremal = false; break; }
      }
      if (extremal) return c;
    }
    return -1;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int lub = bound(i, j, true);
      if (lub < 0)
        fail(errc::not_a_lattice, "pair (" + L.elements_[i] + ", " + L.elements_[j] +
                                      ") has no least upper bound in lattice '" + spec.name + "'");
      int glb = bound(i, j, false);
      if (glb < 0)
        fail(errc::not_a_lattice, "pair (" + L.elements_[i] + ", " + L.elements_[j] +
                                      ") has no greatest lower bound in lattice '" + spec.name + "'");
      L.join_[i * n + j] = lub;
      L.meet_[i * n + j] = glb;
    }
  int top = 0, bottom = 0;
  for (size_t i = 1; i < n; ++i) {
    top = L.join_[static_cast<size_t>(top) * n + i];
    bottom = L.meet_[static_cast<size_t>(bottom) * n + i];
  }
  L.top_ = top;
  L.bottom_ = bottom;
  // Complement map (may be partial).
  L.complement_.assign(n, -1);
  for (const auto& [x, cx] : spec.complements) {
    auto xi = L.index_.find(x);
    auto ci = L.index_.find(cx);
    if (xi == L.index_.end() || ci == L.index_.end())
      fail(errc::dangling_reference,
           "complement pair (" + x + ", " + cx + ") references an undeclared element in lattice '" + spec.name + "'");
    if (L.complement_[static_cast<size_t>(xi->second)] >= 0)
      fail(errc::duplicate_name, "complement of '" + x + "' declared twice in lattice '" + spec.name + "'");
    L.complement_[static_cast<size_t>(xi->second)] = ci->second;
  }
  return L;
}

/// The designated-value set used by satisfaction. Any nonempty subset is
/// accepted; upward-closure violations are reported as warnings only.
struct Filter {
  const FiniteLattice* lattice = nullptr;
  std::vector<int> members;              // declaration order
  std::vector<unsigned char> mask;
  std::vector<std::pair<int, int>> upward_violations; // (x in F, y >= x missing from F)

  bool contains(int e) const { return mask[static_cast<size_t>(e)] != 0; }
  bool upward_closed() const { return upward_violations.empty(); }
};

inline Filter validate_filter(const FiniteLattice& L, std::span<const std::string> names) {
  if (names.empty())
    fail(errc::empty_filter, "filter over lattice '" + L.name() + "' is empty");
  Filter F;
  F.lattice = &L;
  F.mask.assign(static_cast<size_t>(L.size()), 0);
  for (const auto& nm : names) {
    int e = L.index_of(nm);
    if (!F.mask[static_cast<size_t>(e)]) {
      F.mask[static_cast<size_t>(e)] = 1;
      F.members.push_back(e);
    }
  }
  for (int x : F.members)
    for (int y = 0; y < L.size(); ++y)
      if (L.leq(x, y) && !F.mask[static_cast<size_t>(y)]) F.upward_violations.emplace_back(x, y);
  return F;
}

inline Filter filter_from_indices(const FiniteLattice& L, std::span<const int> members) {
  std::vector<std::string> names;
  names.reserve(members.size());
  for (int e : members) names.push_back(L.element_name(e));
  return validate_filter(L, names);
}

} // namespace manymodal
