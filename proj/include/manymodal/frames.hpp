#pragma once

#include "manymodal/structure.hpp"
#include "manymodal/twist.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace manymodal {

enum class ClassKind { uniform, increasing, decreasing, dialectic };

inline const char* to_string(ClassKind k) {
  switch (k) {
    case ClassKind::uniform: return "uniform";
    case ClassKind::increasing: return "increasing";
    case ClassKind::decreasing: return "decreasing";
    case ClassKind::dialectic: return "dialectic";
  }
  return "?";
}

/// A frame class: a family of admissible sub-universes with the classicality
/// comparator precomputed over it, a class kind, and the structural flags.
struct FrameClassSpec {
  const FiniteLattice* base = nullptr;
  Filter filter;
  std::vector<const SubUniverse*> family; // declaration order
  ClassKind kind = ClassKind::uniform;
  const SubUniverse* uniform_universe = nullptr;
  bool require_transitive = true;
  bool require_serial = false;
  std::vector<unsigned char> geq; // geq[i * family.size() + j] = family[i] >=Cl family[j]

  bool geq_cl_members(int i, int j) const {
    return geq[static_cast<size_t>(i) * family.size() + static_cast<size_t>(j)] != 0;
  }

  int family_index(const SubUniverse& u) const {
    for (int i = 0; i < static_cast<int>(family.size()); ++i)
      if (family[static_cast<size_t>(i)]->same_members(u) &&
          family[static_cast<size_t>(i)]->negation_mode() == u.negation_mode())
        return i;
    return -1;
  }
};

/// Builds a class spec over twist sub-universes; validates that >=Cl is a
/// preorder on the family.
inline FrameClassSpec make_class_spec(const TwistStructure& T, Filter filter,
                                      std::vector<const SubUniverse*> family, ClassKind kind,
                                      NonCVariant variant = NonCVariant::sum,
                                      bool require_transitive = true, bool require_serial = false) {
  FrameClassSpec spec;
  spec.base = &T.carrier;
  spec.filter = std::move(filter);
  spec.family = std::move(family);
  spec.kind = kind;
  spec.require_transitive = require_transitive;
  spec.require_serial = require_serial;
  const size_t k = spec.family.size();
  spec.geq.assign(k * k, 0);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      spec.geq[i * k + j] = geq_cl(T, *spec.family[i], *spec.family[j], variant) ? 1 : 0;
  for (size_t i = 0; i < k; ++i)
    if (!spec.geq[i * k + i])
      fail(errc::validation_error, "classicality comparator is not reflexive on the family");
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      for (size_t l = 0; l < k; ++l)
        if (spec.geq[i * k + j] && spec.geq[j * k + l] && !spec.geq[i * k + l])
          fail(errc::validation_error, "classicality comparator is not transitive on the family");
  if (kind == ClassKind::uniform && !spec.uniform_universe && spec.family.size() == 1)
    spec.uniform_universe = spec.family.front();
  return spec;
}

/// Uniform class over arbitrary sub-universes (no comparator needed).
inline FrameClassSpec make_uniform_spec(const FiniteLattice& base, Filter filter,
                                        const SubUniverse& star, bool require_transitive = false,
                                        bool require_serial = false) {
  FrameClassSpec spec;
  spec.base = &base;
  spec.filter = std::move(filter);
  spec.family = {&star};
  spec.kind = ClassKind::uniform;
  spec.uniform_universe = &star;
  spec.require_transitive = require_transitive;
  spec.require_serial = require_serial;
  spec.geq = {1};
  return spec;
}

struct ClassifyReport {
  bool member = true;
  std::vector<std::string> violations;
};

inline ClassifyReport classify_frame(const Frame& F, const FrameClassSpec& spec) {
  ClassifyReport rep;
  auto violate = [&](const std::string& msg) {
    rep.member = false;
    rep.violations.push_back(msg);
  };
  const int n = F.world_count();
  std::vector<int> fam(static_cast<size_t>(n), -1);
  for (int w = 0; w < n; ++w) {
    fam[static_cast<size_t>(w)] = spec.family_index(F.universe(w));
    if (fam[static_cast<size_t>(w)] < 0)
      fail(errc::universe_outside_family,
           "world '" + F.worlds()[static_cast<size_t>(w)].id + "' carries a sub-universe outside the family");
  }
  if (spec.require_transitive) {
    for (int a = 0; a < n; ++a)
      for (int b : F.successors(a))
        for (int c : F.successors(b))
          if (!F.has_edge(a, c))
            violate("not transitive: " + F.worlds()[static_cast<size_t>(a)].id + " R " +
                    F.worlds()[static_cast<size_t>(b)].id + " R " + F.worlds()[static_cast<size_t>(c)].id);
  }
  if (spec.require_serial) {
    for (int a = 0; a < n; ++a)
      if (F.successors(a).empty())
        violate("not serial: " + F.worlds()[static_cast<size_t>(a)].id + " accesses no world");
  }
  switch (spec.kind) {
    case ClassKind::uniform: {
      const SubUniverse* star = spec.uniform_universe;
      if (!star) fail(errc::usage_error, "uniform class requires a designated sub-universe");
      for (int w = 0; w < n; ++w)
        if (!F.universe(w).same_members(*star))
          violate("world " + F.worlds()[static_cast<size_t>(w)].id + " differs from the uniform universe");
      break;
    }
    case ClassKind::increasing:
      for (const auto& [a, b] : F.edges())
        if (!spec.geq_cl_members(fam[static_cast<size_t>(b)], fam[static_cast<size_t>(a)]))
          violate("edge " + F.worlds()[static_cast<size_t>(a)].id + " R " +
                  F.worlds()[static_cast<size_t>(b)].id + " does not increase classicality");
      break;
    case ClassKind::decreasing:
      for (const auto& [a, b] : F.edges())
        if (!spec.geq_cl_members(fam[static_cast<size_t>(a)], fam[static_cast<size_t>(b)]))
          violate("edge " + F.worlds()[static_cast<size_t>(a)].id + " R " +
                  F.worlds()[static_cast<size_t>(b)].id + " does not decrease classicality");
      break;
    case ClassKind::dialectic:
      for (int w = 0; w < n; ++w)
        for (int w1 : F.successors(w))
          for (int w2 : F.successors(w)) {
            if (!spec.geq_cl_members(fam[static_cast<size_t>(w)], fam[static_cast<size_t>(w1)]) ||
                !spec.geq_cl_members(fam[static_cast<size_t>(w)], fam[static_cast<size_t>(w2)]))
              continue;
            bool found = false;
            for (int ws = 0; ws < n && !found; ++ws)
              if (spec.geq_cl_members(fam[static_cast<size_t>(ws)], fam[static_cast<size_t>(w1)]) &&
                  spec.geq_cl_members(fam[static_cast<size_t>(ws)], fam[static_cast<size_t>(w2)]) &&
                  F.has_edge(w1, ws) && F.has_edge(w2, ws))
                found = true;
            if (!found)
              violate("no dialectic reconvergence for " + F.worlds()[static_cast<size_t>(w)].id + " R (" +
                      F.worlds()[static_cast<size_t>(w1)].id + ", " + F.worlds()[static_cast<size_t>(w2)].id +
                      ")");
          }
      break;
  }
  return rep;
}

// --- frame validity -------------------------------------------------------------

struct CounterValuation {
  Structure model;
  int world = -1;
  int value = -1;
};

struct FrameVerdict {
  bool valid = true;
  std::optional<CounterValuation> counter;
  unsigned long long checked = 0;
};

struct SatisfyOptions {
  bool exhaustive = true;
  unsigned long long samples = 0; // sample mode only
  std::uint64_t seed = 0;
  unsigned long long budget = 50'000'000ULL;
  Direction dir = Direction::down;
};

namespace detail {

struct ValuationSlots {
  std::vector<std::string> atoms; // lexicographic
  // slot order: worlds in declaration order, atoms lexicographic inside each world
  std::vector<std::pair<int, std::string>> slots;
  std::vector<const std::vector<int>*> choices; // member list per slot

  ValuationSlots(const Frame& F, const FormulaPtr& f) {
    atoms = formula_atoms(f);
    for (int w = 0; w < F.world_count(); ++w)
      for (const auto& a : atoms) {
        slots.emplace_back(w, a);
        choices.push_back(&F.universe(w).members());
      }
  }

  unsigned long long space() const {
    unsigned long long total = 1;
    for (const auto* c : choices) {
      unsigned long long m = c->size();
      if (m == 0) return 0;
      if (total > ~0ULL / m) return ~0ULL; // saturate
      total *= m;
    }
    return total;
  }
};

} // namespace detail

/// Exhaustive (or sampled) quantification over atomic valuations of a frame.
/// The reported countervaluation is the first failing one in the documented
/// order: slots sorted by (world declaration order, atom name), the last slot
/// varying fastest, each slot running through the world's members in
/// declaration order. The failing world is the first in declaration order.
inline FrameVerdict frame_satisfies(const Frame& F, const FormulaPtr& f,
                                    const SatisfyOptions& opts = {}) {
  detail::ValuationSlots vs(F, f);
  FrameVerdict verdict;
  Structure m(F, {});
  for (const auto& a : vs.atoms)
    for (int w = 0; w < F.world_count(); ++w) m.set_atom_value(a, w, -1);

  auto run_one = [&](const std::vector<size_t>& pick) -> bool {
    for (size_t s = 0; s < vs.slots.size(); ++s)
      m.set_atom_value(vs.slots[s].second, vs.slots[s].first, (*vs.choices[s])[pick[s]]);
    Evaluator ev(m, opts.dir);
    auto bad = ev.first_failing_world(f);
    ++verdict.checked;
    if (bad) {
      verdict.valid = false;
      verdict.counter = CounterValuation{m, *bad, ev.value(*bad, f)};
      return false;
    }
    return true;
  };

  if (opts.exhaustive) {
    unsigned long long required = vs.space();
    if (required > opts.budget) throw budget_exceeded(required, opts.budget);
    std::vector<size_t> pick(vs.slots.size(), 0);
    for (;;) {
      if (!run_one(pick)) return verdict;
      size_t s = vs.slots.size();
      while (s > 0) {
        --s;
        if (++pick[s] < vs.choices[s]->size()) break;
        pick[s] = 0;
        if (s == 0) return verdict;
      }
      if (vs.slots.empty()) return verdict; // formula with no atoms: a single valuation
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    for (unsigned long long i = 0; i < opts.samples; ++i) {
      std::vector<size_t> pick(vs.slots.size());
      for (size_t s = 0; s < vs.slots.size(); ++s)
        pick[s] = static_cast<size_t>(rng() % vs.choices[s]->size());
      if (!run_one(pick)) return verdict;
    }
  }
  return verdict;
}

// --- frame enumeration ------------------------------------------------------------

/// Visits every frame of the class with at most max_worlds worlds, in a fixed
/// deterministic order: world count ascending; universe assignments
/// lexicographic in family declaration order (last world fastest);
/// accessibility relations by ascending bitmask over world pairs in row-major
/// order. Frames failing the class constraints are skipped. The visitor
/// returns false to stop early.
inline void enumerate_frames(const FrameClassSpec& spec, int max_worlds,
                             const std::function<bool(const Frame&)>& visit) {
  if (max_worlds < 1) fail(errc::usage_error, "max_worlds must be at least 1");
  const int k = static_cast<int>(spec.family.size());
  for (int n = 1; n <= max_worlds; ++n) {
    std::vector<int> assign(static_cast<size_t>(n), 0);
    if (spec.kind == ClassKind::uniform) {
      if (!spec.uniform_universe) fail(errc::usage_error, "uniform class requires a designated sub-universe");
      int star = spec.family_index(*spec.uniform_universe);
      if (star < 0) fail(errc::universe_outside_family, "uniform universe is not in the family");
      std::fill(assign.begin(), assign.end(), star);
    }
    for (;;) {
      const unsigned long long relation_count = 1ULL << (n * n);
      for (unsigned long long mask = 0; mask < relation_count; ++mask) {
        // Structural constraints checked on the raw relation first.
        auto edge = [&](int a, int b) { return (mask >> (a * n + b)) & 1ULL; };
        bool ok = true;
        if (spec.require_transitive) {
          for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b)
              if (edge(a, b))
                for (int c = 0; c < n && ok; ++c)
                  if (edge(b, c) && !edge(a, c)) ok = false;
        }
        if (ok && spec.require_serial) {
          for (int a = 0; a < n && ok; ++a) {
            bool any = false;
            for (int b = 0; b < n && !any; ++b)
              if (edge(a, b)) any = true;
            if (!any) ok = false;
          }
        }
        if (ok) {
          switch (spec.kind) {
            case ClassKind::uniform: break;
            case ClassKind::increasing:
              for (int a = 0; a < n && ok; ++a)
                for (int b = 0; b < n && ok; ++b)
                  if (edge(a, b) &&
                      !spec.geq_cl_members(assign[static_cast<size_t>(b)], assign[static_cast<size_t>(a)]))
                    ok = false;
              break;
            case ClassKind::decreasing:
              for (int a = 0; a < n && ok; ++a)
                for (int b = 0; b < n && ok; ++b)
                  if (edge(a, b) &&
                      !spec.geq_cl_members(assign[static_cast<size_t>(a)], assign[static_cast<size_t>(b)]))
                    ok = false;
              break;
            case ClassKind::dialectic:
              for (int w = 0; w < n && ok; ++w)
                for (int w1 = 0; w1 < n && ok; ++w1)
                  for (int w2 = 0; w2 < n && ok; ++w2) {
                    if (!edge(w, w1) || !edge(w, w2)) continue;
                    if (!spec.geq_cl_members(assign[static_cast<size_t>(w)], assign[static_cast<size_t>(w1)]) ||
                        !spec.geq_cl_members(assign[static_cast<size_t>(w)], assign[static_cast<size_t>(w2)]))
                      continue;
                    bool found = false;
                    for (int ws = 0; ws < n && !found; ++ws)
                      if (spec.geq_cl_members(assign[static_cast<size_t>(ws)], assign[static_cast<size_t>(w1)]) &&
                          spec.geq_cl_members(assign[static_cast<size_t>(ws)], assign[static_cast<size_t>(w2)]) &&
                          edge(w1, ws) && edge(w2, ws))
                        found = true;
                    if (!found) ok = false;
                  }
              break;
          }
        }
        if (!ok) continue;
        std::vector<World> worlds;
        for (int w = 0; w < n; ++w)
          worlds.push_back(World{"w" + std::to_string(w + 1), spec.family[static_cast<size_t>(assign[static_cast<size_t>(w)])]});
        std::vector<std::pair<std::string, std::string>> edges;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if (edge(a, b)) edges.emplace_back(worlds[static_cast<size_t>(a)].id, worlds[static_cast<size_t>(b)].id);
        Frame F(*spec.base, std::move(worlds), std::move(edges), spec.filter);
        if (!visit(F)) return;
      }
      if (spec.kind == ClassKind::uniform) break;
      // next assignment, last world fastest
      int s = n;
      bool done = false;
      while (s > 0) {
        --s;
        if (++assign[static_cast<size_t>(s)] < k) break;
        assign[static_cast<size_t>(s)] = 0;
        if (s == 0) done = true;
      }
      if (done) break;
    }
  }
}

inline std::vector<Frame> enumerate_frames(const FrameClassSpec& spec, int max_worlds) {
  std::vector<Frame> out;
  enumerate_frames(spec, max_worlds, [&](const Frame& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

// --- class-level check ------------------------------------------------------------

struct ClassCheckReport {
  std::optional<CounterValuation> counter; // absent: no countermodel at the bound
  int bound = 0;
  unsigned long long frames_checked = 0;
  unsigned long long valuations_checked = 0;
};

namespace detail {

// Saturating count of candidate (assignment, relation) pairs the enumeration
// would walk through, class constraints not yet applied.
inline unsigned long long enumeration_work(size_t family_size, int max_worlds, bool uniform) {
  unsigned long long total = 0;
  for (int n = 1; n <= max_worlds; ++n) {
    if (n * n >= 63) return ~0ULL;
    unsigned long long assignments = 1;
    if (!uniform)
      for (int i = 0; i < n; ++i) {
        if (assignments > ~0ULL / family_size) return ~0ULL;
        assignments *= family_size;
      }
    unsigned long long relations = 1ULL << (n * n);
    if (assignments > ~0ULL / relations) return ~0ULL;
    unsigned long long here = assignments * relations;
    if (total > ~0ULL - here) return ~0ULL;
    total += here;
  }
  return total;
}

} // namespace detail

/// Bounded class validity: runs frame_satisfies over every enumerated frame
/// and reports the first countermodel in the deterministic order, or a
/// bound-stamped pass.
inline ClassCheckReport class_check(const FrameClassSpec& spec, const FormulaPtr& f, int max_worlds,
                                    unsigned long long budget = 50'000'000ULL,
                                    Direction dir = Direction::down) {
  ClassCheckReport rep;
  rep.bound = max_worlds;
  unsigned long long work =
      detail::enumeration_work(spec.family.size(), max_worlds, spec.kind == ClassKind::uniform);
  if (work > budget) throw budget_exceeded(work, budget);
  enumerate_frames(spec, max_worlds, [&](const Frame& F) {
    SatisfyOptions opts;
    opts.dir = dir;
    if (rep.valuations_checked >= budget) throw budget_exceeded(rep.valuations_checked + 1, budget);
    opts.budget = budget - rep.valuations_checked;
    FrameVerdict v = frame_satisfies(F, f, opts);
    ++rep.frames_checked;
    rep.valuations_checked += v.checked;
    if (!v.valid) {
      rep.counter = std::move(v.counter);
      return false;
    }
    return true;
  });
  return rep;
}

// --- countermodel search ------------------------------------------------------------

enum class SearchTarget { fail_at_some_world, hold_at_some_world };

struct SearchSideCondition {
  FormulaPtr formula;   // checked at every successor of the designated world
  bool must_hold = true;
};

struct SearchHit {
  Structure model;
  int world = -1;
};

/// First structure, in deterministic enumeration order, with a world meeting
/// the target (and the optional successor-side condition). Enumeration:
/// world count ascending, universes lexicographic over the given list,
/// relations by bitmask, valuations as in frame_satisfies.
inline std::optional<SearchHit> countermodel_search(
    const FiniteLattice& base, const std::vector<const SubUniverse*>& universes, const Filter& filter,
    const FormulaPtr& f, SearchTarget target, const std::optional<SearchSideCondition>& side,
    int max_worlds, unsigned long long budget = 50'000'000ULL, Direction dir = Direction::down) {
  if (universes.empty()) fail(errc::usage_error, "countermodel search needs at least one sub-universe");
  unsigned long long work = detail::enumeration_work(universes.size(), max_worlds, false);
  if (work > budget) throw budget_exceeded(work, budget);
  unsigned long long used = 0;
  std::optional<SearchHit> hit;
  const int k = static_cast<int>(universes.size());
  for (int n = 1; n <= max_worlds && !hit; ++n) {
    std::vector<int> assign(static_cast<size_t>(n), 0);
    for (;;) {
      const unsigned long long relation_count = 1ULL << (n * n);
      for (unsigned long long mask = 0; mask < relation_count && !hit; ++mask) {
        std::vector<World> worlds;
        for (int w = 0; w < n; ++w)
          worlds.push_back(World{"w" + std::to_string(w + 1), universes[static_cast<size_t>(assign[static_cast<size_t>(w)])]});
        std::vector<std::pair<std::string, std::string>> edges;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if ((mask >> (a * n + b)) & 1ULL)
              edges.emplace_back(worlds[static_cast<size_t>(a)].id, worlds[static_cast<size_t>(b)].id);
        Frame F(base, std::move(worlds), std::move(edges), filter);

        detail::ValuationSlots vs(F, side ? make_and(f, side->formula) : f);
        Structure m(F, {});
        for (const auto& a : vs.atoms)
          for (int w = 0; w < F.world_count(); ++w) m.set_atom_value(a, w, -1);
        std::vector<size_t> pick(vs.slots.size(), 0);
        for (;;) {
          if (++used > budget) throw budget_exceeded(used, budget);
          for (size_t s = 0; s < vs.slots.size(); ++s)
            m.set_atom_value(vs.slots[s].second, vs.slots[s].first, (*vs.choices[s])[pick[s]]);
          Evaluator ev(m, dir);
          for (int w = 0; w < F.world_count() && !hit; ++w) {
            bool sat = ev.satisfies(w, f);
            bool meets = target == SearchTarget::hold_at_some_world ? sat : !sat;
            if (meets && side) {
              for (int u : F.successors(w))
                if (ev.satisfies(u, side->formula) != side->must_hold) { meets = false; break; }
            }
            if (meets) hit = SearchHit{m, w};
          }
          if (hit || vs.slots.empty()) break;
          size_t s = vs.slots.size();
          bool rolled = false;
          while (s > 0) {
            --s;
            if (++pick[s] < vs.choices[s]->size()) break;
            pick[s] = 0;
            if (s == 0) rolled = true;
          }
          if (rolled) break;
        }
      }
      if (hit) break;
      int s = n;
      bool done = false;
      while (s > 0) {
        --s;
        if (++assign[static_cast<size_t>(s)] < k) break;
        assign[static_cast<size_t>(s)] = 0;
        if (s == 0) done = true;
      }
      if (done) break;
    }
  }
  return hit;
}

} // namespace manymodal
