#include "fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace manymodal;

namespace {

// Independent down/up-interpretation: collect the minorants (majorants) by
// scanning the member list, then find the local bound by another scan.
int interp_oracle(const FiniteLattice& L, const SubUniverse& S, int a, Direction d) {
  std::vector<int> side;
  for (int m : S.members())
    if (d == Direction::down ? L.leq(m, a) : L.leq(a, m)) side.push_back(m);
  if (side.empty()) return d == Direction::down ? S.local_bottom() : S.local_top();
  std::vector<int> cands;
  for (int c : S.members()) {
    bool ok = true;
    for (int x : side)
      if (d == Direction::down ? !L.leq(x, c) : !L.leq(c, x)) ok = false;
    if (ok) cands.push_back(c);
  }
  for (int c : cands) {
    bool extremal = true;
    for (int e : cands)
      if (d == Direction::down ? !L.leq(c, e) : !L.leq(e, c)) extremal = false;
    if (extremal) return c;
  }
  return -1;
}

struct UniverseCase {
  const FiniteLattice* L;
  const SubUniverse* S;
};

} // namespace

TEST_CASE("sub-universe validation: A1 over the seven-element lattice") {
  FiniteLattice L = fx::seven();
  SubUniverse A1 = validate_subuniverse(L, "A1", fx::names(L, {"0", "e", "f", "a", "1"}), NegationMode::rigid);
  // join(e, f) inside A1 is a, even though the base join is c (not a member).
  CHECK(A1.local_join(L.index_of("e"), L.index_of("f")) == L.index_of("a"));
  CHECK(L.join(L.index_of("e"), L.index_of("f")) == L.index_of("c"));
  CHECK(A1.local_top() == L.index_of("1"));
  CHECK(A1.local_bottom() == L.index_of("0"));
}

TEST_CASE("full sub-universe has the base tables") {
  FiniteLattice L = fx::diamond();
  SubUniverse S = full_subuniverse(L, "full");
  for (int x = 0; x < L.size(); ++x)
    for (int y = 0; y < L.size(); ++y) {
      CHECK(S.local_join(x, y) == L.join(x, y));
      CHECK(S.local_meet(x, y) == L.meet(x, y));
    }
  CHECK(S.local_top() == L.top());
  CHECK(S.local_bottom() == L.bottom());
}

TEST_CASE("rigid closure check on the ExLP chain") {
  FiniteLattice L = fx::exlp_lattice();
  auto members = fx::names(L, {"(0,1)", "(0.5,0)", "(1,0)"});
  try {
    validate_subuniverse(L, "S", members, NegationMode::rigid);
    FAIL("expected NotComplementClosed");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_complement_closed);
    CHECK(std::string(e.what()).find("(0.5,0)") != std::string::npos);
  }
  SubUniverse S = validate_subuniverse(L, "S", members, NegationMode::down);
  CHECK(S.member_count() == 3);
}

TEST_CASE("sub-universe validation failures") {
  FiniteLattice D = fx::diamond();
  try {
    validate_subuniverse(D, "e", std::vector<std::string>{}, NegationMode::rigid);
    FAIL("expected EmptySubUniverse");
  } catch (const error& e) {
    CHECK(e.code() == errc::empty_subuniverse);
  }
  try {
    validate_subuniverse(D, "ab", fx::names(D, {"a", "b"}), NegationMode::down);
    FAIL("expected NotLocallyComplete");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_locally_complete);
  }
}

TEST_CASE("interpretation of the worked examples") {
  FiniteLattice P = fx::pentagon();
  SubUniverse L1 = validate_subuniverse(P, "L1", fx::names(P, {"0", "x", "1"}), NegationMode::rigid);
  CHECK(L1.interpret(P.index_of("a"), Direction::down) == P.index_of("x"));

  FiniteLattice C = fx::three_chain();
  SubUniverse A = validate_subuniverse(C, "A", fx::names(C, {"0", "1"}), NegationMode::rigid);
  CHECK(A.interpret(C.index_of("1'"), Direction::down) == C.index_of("0"));
  CHECK(A.interpret(C.index_of("1'"), Direction::up) == C.index_of("1"));

  FiniteLattice S7 = fx::seven();
  SubUniverse A1 = validate_subuniverse(S7, "A1", fx::names(S7, {"0", "e", "f", "a", "1"}), NegationMode::rigid);
  CHECK(A1.interpret(S7.index_of("b"), Direction::down) ==
        interp_oracle(S7, A1, S7.index_of("b"), Direction::down));
  CHECK(A1.interpret(S7.index_of("b"), Direction::down) == S7.index_of("a"));
}

TEST_CASE("members interpret to themselves") {
  FiniteLattice L = fx::seven();
  SubUniverse A2 = validate_subuniverse(L, "A2", fx::names(L, {"0", "e", "f", "b", "1"}), NegationMode::rigid);
  for (int m : A2.members()) {
    CHECK(A2.interpret(m, Direction::down) == m);
    CHECK(A2.interpret(m, Direction::up) == m);
  }
}

TEST_CASE("interpretation agrees with the scan oracle, is idempotent and monotone") {
  FiniteLattice P = fx::pentagon();
  FiniteLattice S7 = fx::seven();
  FiniteLattice X = fx::exlp_lattice();
  SubUniverse u1 = validate_subuniverse(P, "L1", fx::names(P, {"0", "x", "1"}), NegationMode::rigid);
  SubUniverse u2 = validate_subuniverse(P, "L3", fx::names(P, {"0", "b"}), NegationMode::rigid);
  SubUniverse u3 = validate_subuniverse(S7, "A1", fx::names(S7, {"0", "e", "f", "a", "1"}), NegationMode::rigid);
  SubUniverse u4 = validate_subuniverse(X, "S", fx::names(X, {"(0,1)", "(0.5,0)", "(1,0)"}), NegationMode::down);
  std::vector<UniverseCase> cases{{&P, &u1}, {&P, &u2}, {&S7, &u3}, {&X, &u4}};

  for (const auto& [L, S] : cases)
    for (Direction d : {Direction::down, Direction::up}) {
      for (int a = 0; a < L->size(); ++a) {
        int v = S->interpret(a, d);
        CHECK(v == interp_oracle(*L, *S, a, d));
        CHECK(S->contains(v));
        CHECK(S->interpret(v, d) == v); // idempotent
      }
      for (int a = 0; a < L->size(); ++a)
        for (int b = 0; b < L->size(); ++b)
          if (L->leq(a, b)) CHECK(L->leq(S->interpret(a, d), S->interpret(b, d))); // monotone
    }
}

TEST_CASE("down-interpretation shrinks when the local join agrees with the base join") {
  // interp_down(a) need not sit below a in general (b over A1 projects to the
  // incomparable a); it does whenever the minorants' local join coincides with
  // their base join.
  FiniteLattice S7 = fx::seven();
  FiniteLattice C = fx::three_chain();
  SubUniverse A1 = validate_subuniverse(S7, "A1", fx::names(S7, {"0", "e", "f", "a", "1"}), NegationMode::rigid);
  SubUniverse A = validate_subuniverse(C, "A", fx::names(C, {"0", "1"}), NegationMode::rigid);
  std::vector<UniverseCase> cases{{&S7, &A1}, {&C, &A}};
  for (const auto& [L, S] : cases)
    for (int a = 0; a < L->size(); ++a) {
      std::vector<int> minorants, majorants;
      for (int m : S->members()) {
        if (L->leq(m, a)) minorants.push_back(m);
        if (L->leq(a, m)) majorants.push_back(m);
      }
      if (!minorants.empty() && S->local_join_set(minorants) == L->join_set(minorants))
        CHECK(L->leq(S->interpret(a, Direction::down), a));
      if (!majorants.empty() && S->local_meet_set(majorants) == L->meet_set(majorants))
        CHECK(L->leq(a, S->interpret(a, Direction::up)));
    }
  // The A1 counterexample itself: b projects down to a, which is incomparable.
  int b = S7.index_of("b");
  CHECK_FALSE(S7.leq(A1.interpret(b, Direction::down), b));
}

TEST_CASE("negation in sub-universes") {
  // ExLP chain, down mode: swap of (0.5,0) is (0,0.5); only (0,1) lies below.
  FiniteLattice X = fx::exlp_lattice();
  SubUniverse S = validate_subuniverse(X, "S", fx::names(X, {"(0,1)", "(0.5,0)", "(1,0)"}), NegationMode::down);
  CHECK(S.negate(X.index_of("(0.5,0)")) == X.index_of("(0,1)"));
  CHECK(S.negate(X.index_of("(1,0)")) == X.index_of("(0,1)"));
  CHECK(S.negate(X.index_of("(0,1)")) == X.index_of("(1,0)"));

  // LP's CL' = {{F},{V,F}} with down-interpreted negation. The complement of
  // {F} is {V}; both members lie below {V}, so the projection is their local
  // join {V,F}.
  FiniteLattice LP = fx::lp_lattice();
  SubUniverse CLp = validate_subuniverse(LP, "CL'", fx::names(LP, {"{F}", "{V,F}"}), NegationMode::down);
  int neg_F = LP.complement(LP.index_of("{F}"));
  REQUIRE(neg_F == LP.index_of("{V}"));
  std::vector<int> minorants;
  for (int m : CLp.members())
    if (LP.leq(m, neg_F)) minorants.push_back(m);
  REQUIRE(minorants.size() == 2);
  CHECK(CLp.negate(LP.index_of("{F}")) == CLp.local_join_set(minorants));
  CHECK(CLp.negate(LP.index_of("{F}")) == LP.index_of("{V,F}"));

  // Rigid negation on the whole diamond.
  FiniteLattice D = fx::diamond();
  SubUniverse full = full_subuniverse(D, "full");
  CHECK(full.negate(D.index_of("a")) == D.index_of("b"));
}

TEST_CASE("rigid double negation is the identity exactly when the complement is an involution") {
  FiniteLattice D = fx::diamond();
  SubUniverse full = full_subuniverse(D, "full");
  for (int m : full.members()) CHECK(full.negate(full.negate(m)) == m);

  // The K-failure lattice has -a1 = 1 and -1 = 0, so involution fails there.
  FiniteLattice K = fx::k_lattice();
  SubUniverse kfull = full_subuniverse(K, "full");
  int a1 = K.index_of("a1");
  CHECK(kfull.negate(kfull.negate(a1)) == K.index_of("0"));
  CHECK(kfull.negate(kfull.negate(a1)) != a1);
}

TEST_CASE("base join/meet then interpretation equals the local bound on members") {
  FiniteLattice S7 = fx::seven();
  FiniteLattice X = fx::exlp_lattice();
  SubUniverse a1 = validate_subuniverse(S7, "A1", fx::names(S7, {"0", "e", "f", "a", "1"}), NegationMode::rigid);
  SubUniverse a2 = validate_subuniverse(S7, "A2", fx::names(S7, {"0", "e", "f", "b", "1"}), NegationMode::rigid);
  SubUniverse s = validate_subuniverse(X, "S", fx::names(X, {"(0,1)", "(0.5,0)", "(1,0)"}), NegationMode::down);
  std::vector<UniverseCase> cases{{&S7, &a1}, {&S7, &a2}, {&X, &s}};
  for (const auto& [L, S] : cases)
    for (int x : S->members())
      for (int y : S->members())
        for (Direction d : {Direction::down, Direction::up}) {
          CHECK(S->interpret(L->join(x, y), d) == S->local_join(x, y));
          CHECK(S->interpret(L->meet(x, y), d) == S->local_meet(x, y));
        }
}
