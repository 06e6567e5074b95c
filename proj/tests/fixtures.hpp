#pragma once

// Shared lattice/model builders for the test suites. These mirror the corpus
// documents but are constructed directly against the library, so document
// loading stays out of the semantic tests.

#include "manymodal/frames.hpp"
#include "manymodal/structure.hpp"
#include "manymodal/subuniverse.hpp"
#include "manymodal/twist.hpp"

#include <cstdlib>
#include <string>
#include <vector>

namespace fx {

using namespace manymodal;

inline std::string corpus_path() {
  const char* p = std::getenv("MANYMODAL_CORPUS");
  return p ? std::string(p) : std::string("examples/paper");
}

inline std::string corpus_file(const std::string& name) { return corpus_path() + "/" + name; }

// 0 < a, b < 1 with -a = b; the four-valued base lattice.
inline FiniteLattice diamond() {
  return build_lattice({"diamond",
                        {"0", "a", "b", "1"},
                        {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}},
                        {{"a", "b"}, {"b", "a"}, {"0", "1"}, {"1", "0"}}});
}

// 0 < 1' < 1 with -1 = -1' = 0 and -0 = 1.
inline FiniteLattice three_chain() {
  return build_lattice({"three_chain",
                        {"0", "1'", "1"},
                        {{"0", "1'"}, {"1'", "1"}},
                        {{"1", "0"}, {"1'", "0"}, {"0", "1"}}});
}

// 0 < x < a, b < 1; the lattice both modal-structure figures share.
inline FiniteLattice pentagon() {
  return build_lattice({"L5",
                        {"0", "x", "a", "b", "1"},
                        {{"0", "x"}, {"x", "a"}, {"x", "b"}, {"a", "1"}, {"b", "1"}},
                        {}});
}

inline FiniteLattice pentagon_with_neg() {
  return build_lattice({"L5",
                        {"0", "x", "a", "b", "1"},
                        {{"0", "x"}, {"x", "a"}, {"x", "b"}, {"a", "1"}, {"b", "1"}},
                        {{"0", "1"}, {"1", "0"}, {"x", "x"}, {"a", "a"}, {"b", "b"}}});
}

// 0 < e, f < c < a, b < 1; hosts the necessary-though-false sub-universes.
inline FiniteLattice seven() {
  return build_lattice({"L7",
                        {"0", "e", "f", "c", "a", "b", "1"},
                        {{"0", "e"},
                         {"0", "f"},
                         {"e", "c"},
                         {"f", "c"},
                         {"c", "a"},
                         {"c", "b"},
                         {"a", "1"},
                         {"b", "1"}},
                        {}});
}

// Diamond plus a1 between a and 1, with -a1 = 1 (not an involution).
inline FiniteLattice k_lattice() {
  return build_lattice({"Lk",
                        {"0", "a", "b", "a1", "1"},
                        {{"0", "a"}, {"0", "b"}, {"a", "a1"}, {"a1", "1"}, {"b", "1"}},
                        {{"a", "b"}, {"b", "a"}, {"a1", "1"}, {"1", "0"}, {"0", "1"}}});
}

// The gap/glut lattice: {F} < {V,F}, {} < {V}.
inline FiniteLattice lp_lattice() {
  return build_lattice({"LP",
                        {"{F}", "{V,F}", "{}", "{V}"},
                        {{"{F}", "{V,F}"}, {"{F}", "{}"}, {"{V,F}", "{V}"}, {"{}", "{V}"}},
                        {{"{V}", "{F}"}, {"{F}", "{V}"}, {"{}", "{}"}, {"{V,F}", "{V,F}"}}});
}

// 0 < 1/2 < 1. The printed figure has -(1/2) = 1/2; the Heyting reading has
// -(1/2) = 0.
inline FiniteLattice il_lattice(bool heyting_negation = false) {
  std::vector<std::pair<std::string, std::string>> neg{{"1", "0"}, {"0", "1"}};
  neg.emplace_back("1/2", heyting_negation ? "0" : "1/2");
  return build_lattice({"IL", {"0", "1/2", "1"}, {{"0", "1/2"}, {"1/2", "1"}}, neg});
}

inline FiniteLattice bool2() {
  return build_lattice({"2", {"0", "1"}, {{"0", "1"}}, {{"0", "1"}, {"1", "0"}}});
}

// The 3x3 pair grid of the extended logic of paradox, built directly.
inline FiniteLattice exlp_lattice() {
  const std::vector<std::string> v{"0", "0.5", "1"};
  LatticeSpec spec;
  spec.name = "ExLP";
  auto nm = [&](int i, int j) { return "(" + v[(size_t)i] + "," + v[(size_t)j] + ")"; };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) spec.elements.push_back(nm(i, j));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          if (i <= k && l <= j) spec.order.emplace_back(nm(i, j), nm(k, l));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) spec.complements.emplace_back(nm(i, j), nm(j, i));
  return build_lattice(spec);
}

inline std::vector<std::string> names(const FiniteLattice& L, std::initializer_list<const char*> xs) {
  std::vector<std::string> out;
  for (auto* x : xs) out.emplace_back(x);
  (void)L;
  return out;
}

// --- full model fixtures -------------------------------------------------------

struct Fig2Fixture {
  FiniteLattice L = pentagon();
  SubUniverse L1 = validate_subuniverse(L, "L1", names(L, {"0", "x", "1"}), NegationMode::rigid);
  SubUniverse L2 = validate_subuniverse(L, "L2", names(L, {"0", "a", "1"}), NegationMode::rigid);
  SubUniverse L3 = validate_subuniverse(L, "L3", names(L, {"0", "b"}), NegationMode::rigid);
  Filter F = validate_filter(L, names(L, {"1"}));
  Structure M = Structure(Frame(L, {{"w1", &L1}, {"w2", &L2}, {"w3", &L3}},
                                {{"w1", "w2"}, {"w1", "w3"}}, F),
                          {{"p", {L.index_of("0"), L.index_of("a"), L.index_of("b")}}});
  Fig2Fixture() = default;
  Fig2Fixture(const Fig2Fixture&) = delete;
};

struct NawFixture {
  FiniteLattice L = three_chain();
  SubUniverse A = validate_subuniverse(L, "A", names(L, {"0", "1"}), NegationMode::rigid);
  SubUniverse full = full_subuniverse(L, "full");
  Filter F = validate_filter(L, names(L, {"1", "1'"}));
  Structure M = Structure(Frame(L, {{"w", &A}, {"w'", &full}}, {{"w", "w'"}, {"w", "w"}}, F),
                          {{"a", {L.index_of("1"), L.index_of("1'")}}});
  NawFixture() = default;
  NawFixture(const NawFixture&) = delete;
};

struct NecThoughFalseFixture {
  FiniteLattice L = seven();
  SubUniverse A1 = validate_subuniverse(L, "A1", names(L, {"0", "e", "f", "a", "1"}), NegationMode::rigid);
  SubUniverse A2 = validate_subuniverse(L, "A2", names(L, {"0", "e", "f", "b", "1"}), NegationMode::rigid);
  Filter F = validate_filter(L, names(L, {"1", "a"}));
  Structure M = Structure(Frame(L, {{"w", &A1}, {"w'", &A2}}, {{"w", "w"}, {"w", "w'"}}, F),
                          {{"a", {L.index_of("1"), L.index_of("b")}}});
  NecThoughFalseFixture() = default;
  NecThoughFalseFixture(const NecThoughFalseFixture&) = delete;
};

struct KFailureFixture {
  FiniteLattice L = k_lattice();
  SubUniverse L1 = validate_subuniverse(L, "L1", names(L, {"0", "a", "b", "1"}), NegationMode::rigid);
  SubUniverse L2 = full_subuniverse(L, "L2");
  Filter F = validate_filter(L, names(L, {"1"}));
  Structure M = Structure(Frame(L, {{"w", &L1}, {"w'", &L2}}, {{"w", "w'"}}, F),
                          {{"p", {L.index_of("a"), L.index_of("a1")}},
                           {"q", {L.index_of("b"), L.index_of("b")}}});
  KFailureFixture() = default;
  KFailureFixture(const KFailureFixture&) = delete;
};

struct IlClFixture {
  FiniteLattice L;
  SubUniverse CL;
  SubUniverse full;
  Filter F;
  Structure M;
  explicit IlClFixture(bool heyting_negation = false)
      : L(il_lattice(heyting_negation)),
        CL(validate_subuniverse(L, "CL", names(L, {"0", "1"}), NegationMode::rigid)),
        full(full_subuniverse(L, "IL")),
        F(validate_filter(L, names(L, {"1"}))),
        M(Frame(L, {{"w", &CL}, {"w'", &full}}, {{"w", "w"}, {"w", "w'"}}, F),
          {{"a", {L.index_of("0"), L.index_of("1/2")}}}) {}
  IlClFixture(const IlClFixture&) = delete;
};

struct LpClFixture {
  FiniteLattice L = lp_lattice();
  SubUniverse CL = validate_subuniverse(L, "CL", names(L, {"{F}", "{V}"}), NegationMode::rigid);
  SubUniverse CLp = validate_subuniverse(L, "CL'", names(L, {"{F}", "{V,F}"}), NegationMode::down);
  SubUniverse full = full_subuniverse(L, "LP");
  Filter F = validate_filter(L, names(L, {"{V}", "{V,F}"}));
  Structure M_cl = Structure(Frame(L, {{"w", &CL}, {"w'", &full}}, {{"w", "w'"}}, F),
                             {{"a", {L.index_of("{F}"), L.index_of("{V,F}")}}});
  Structure M_clprime = Structure(Frame(L, {{"w", &CLp}, {"w'", &full}}, {{"w", "w'"}}, F),
                                  {{"a", {L.index_of("{F}"), L.index_of("{V,F}")}}});
  LpClFixture() = default;
  LpClFixture(const LpClFixture&) = delete;
};

struct BisimFixture {
  FiniteLattice L = pentagon_with_neg();
  SubUniverse L1 = validate_subuniverse(L, "L1", names(L, {"0", "x", "1"}), NegationMode::rigid);
  SubUniverse L2 = validate_subuniverse(L, "L2", names(L, {"0", "a", "1"}), NegationMode::rigid);
  Filter F = validate_filter(L, names(L, {"1"}));
  Structure M1 = Structure(Frame(L, {{"w", &L1}, {"v", &L2}}, {{"w", "v"}, {"v", "v"}}, F),
                           {{"p", {L.index_of("x"), L.index_of("a")}}});
  Structure M2 = Structure(Frame(L, {{"w'", &L1}, {"v1'", &L2}, {"v2'", &L2}},
                                 {{"w'", "v1'"}, {"w'", "v2'"}, {"v1'", "v2'"}, {"v2'", "v1'"}}, F),
                           {{"p", {L.index_of("x"), L.index_of("a"), L.index_of("a")}}});
  BisimFixture() = default;
  BisimFixture(const BisimFixture&) = delete;
};

// Twist machinery over the four-valued Boolean base, elements declared
// top-first as in the frame-class discussion.
struct TwistFixture {
  FiniteLattice B = build_lattice({"B",
                                   {"1", "a", "b", "0"},
                                   {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}},
                                   {{"a", "b"}, {"b", "a"}, {"0", "1"}, {"1", "0"}}});
  TwistStructure T = build_twist(B);
  SubUniverse TB = twist_subuniverse(T, {TwistSubsetKind::Tag::boolean_pairs, -1}, "TB");
  SubUniverse T1 = twist_subuniverse(T, {TwistSubsetKind::Tag::at_least, B.index_of("1")}, "T1");
  SubUniverse Ta = twist_subuniverse(T, {TwistSubsetKind::Tag::at_least, B.index_of("a")}, "Ta");
  SubUniverse Tb = twist_subuniverse(T, {TwistSubsetKind::Tag::at_least, B.index_of("b")}, "Tb");
  SubUniverse T0 = twist_subuniverse(T, {TwistSubsetKind::Tag::at_least, B.index_of("0")}, "T0");
  Filter Tr = validate_filter(
      T.carrier, names(T.carrier, {"(1,0)", "(1,a)", "(1,b)", "(a,0)", "(b,0)", "(a,a)", "(1,1)", "(b,b)", "(0,0)"}));
  TwistFixture() = default;
  TwistFixture(const TwistFixture&) = delete;
};

} // namespace fx
