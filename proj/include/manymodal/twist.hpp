#pragma once

#include "manymodal/lattice.hpp"
#include "manymodal/subuniverse.hpp"

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace manymodal {

/// The twist structure over a Boolean algebra B: all pairs (a, b) of B
/// elements, ordered by (a,b) <= (c,d) iff a <= c and d <= b, with pair-swap
/// complement. Carrier elements are named "(a,b)" with B's element names and
/// enumerated row-major in B's declaration order.
struct TwistStructure {
  const FiniteLattice* boolean_base = nullptr;
  FiniteLattice carrier;
  std::vector<std::pair<int, int>> components; // carrier index -> (assert, deny) base indices

  int pair_index(int a, int b) const { return a * boolean_base->size() + b; }
  int swap(int carrier_elem) const {
    auto [a, b] = components[static_cast<size_t>(carrier_elem)];
    return pair_index(b, a);
  }
};

inline std::string pair_name(const FiniteLattice& B, int a, int b) {
  return "(" + B.element_name(a) + "," + B.element_name(b) + ")";
}

inline TwistStructure build_twist(const FiniteLattice& B) {
  if (!B.distributive())
    fail(errc::not_boolean, "lattice '" + B.name() + "' is not distributive");
  if (!B.complemented())
    fail(errc::not_boolean, "lattice '" + B.name() + "' has an element without a complement");
  TwistStructure T;
  T.boolean_base = &B;
  LatticeSpec spec;
  spec.name = B.name() + "^2";
  const int n = B.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      spec.elements.push_back(pair_name(B, a, b));
      T.components.emplace_back(a, b);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          if (B.leq(a, c) && B.leq(d, b))
            spec.order.emplace_back(pair_name(B, a, b), pair_name(B, c, d));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      spec.complements.emplace_back(pair_name(B, a, b), pair_name(B, b, a));
  T.carrier = build_lattice(spec); // validates the carrier lattice laws
  return T;
}

struct TwistSubsetKind {
  enum class Tag { boolean_pairs, paraconsistent, at_least } tag = Tag::boolean_pairs;
  int z = -1; // boolean-base element index, at_least only
};

/// Members (carrier indices, carrier declaration order) of the classical
/// subset C (a+b = 1 and a.b = 0), the paraconsistent subset P (a+b = 1) or
/// T_(z) (a+b >= z).
inline std::vector<int> twist_subset(const TwistStructure& T, const TwistSubsetKind& kind) {
  const FiniteLattice& B = *T.boolean_base;
  std::vector<int> out;
  for (int i = 0; i < T.carrier.size(); ++i) {
    auto [a, b] = T.components[static_cast<size_t>(i)];
    int s = B.join(a, b);
    int m = B.meet(a, b);
    bool in = false;
    switch (kind.tag) {
      case TwistSubsetKind::Tag::boolean_pairs: in = s == B.top() && m == B.bottom(); break;
      case TwistSubsetKind::Tag::paraconsistent: in = s == B.top(); break;
      case TwistSubsetKind::Tag::at_least:
        if (kind.z < 0 || kind.z >= B.size())
          fail(errc::unknown_element, "at_least threshold outside the boolean base");
        in = B.leq(kind.z, s);
        break;
    }
    if (in) out.push_back(i);
  }
  return out;
}

inline SubUniverse twist_subuniverse(const TwistStructure& T, const TwistSubsetKind& kind,
                                     const std::string& name) {
  std::vector<std::string> names;
  for (int i : twist_subset(T, kind)) names.push_back(T.carrier.element_name(i));
  // Pair-swap preserves all three subset kinds, so rigid negation is safe.
  return validate_subuniverse(T.carrier, name, names, NegationMode::rigid);
}

/// Which inequality realises "has more non-contradiction": the printed a.b <=
/// c+d, or the meet-to-meet variant a.b <= c.d.
enum class NonCVariant { sum, product };

struct ClassicalityPair {
  bool exm = false;
  bool nonc = false;
};

/// (a,b) >=ExM (c,d) iff a+b >= c+d; >=NonC per the chosen variant.
inline ClassicalityPair classicality_pair(const TwistStructure& T, int p, int q,
                                          NonCVariant variant = NonCVariant::sum) {
  const FiniteLattice& B = *T.boolean_base;
  auto [a, b] = T.components[static_cast<size_t>(p)];
  auto [c, d] = T.components[static_cast<size_t>(q)];
  ClassicalityPair out;
  out.exm = B.leq(B.join(c, d), B.join(a, b));
  out.nonc = variant == NonCVariant::sum ? B.leq(B.meet(a, b), B.join(c, d))
                                         : B.leq(B.meet(a, b), B.meet(c, d));
  return out;
}

/// S1 >=Cl S2: every pair of S1 dominates some pair of S2 in both excluded
/// middle and non-contradiction. Exhaustive.
inline bool geq_cl(const TwistStructure& T, std::span<const int> s1, std::span<const int> s2,
                   NonCVariant variant = NonCVariant::sum) {
  for (int p : s1) {
    bool found = false;
    for (int q : s2) {
      auto c = classicality_pair(T, p, q, variant);
      if (c.exm && c.nonc) { found = true; break; }
    }
    if (!found) return false;
  }
  return true;
}

inline bool geq_cl(const TwistStructure& T, const SubUniverse& s1, const SubUniverse& s2,
                   NonCVariant variant = NonCVariant::sum) {
  return geq_cl(T, std::span<const int>(s1.members()), std::span<const int>(s2.members()), variant);
}

} // namespace manymodal
