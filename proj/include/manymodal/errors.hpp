#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace manymodal {

enum class errc {
  duplicate_name,
  dangling_reference,
  not_a_poset,
  not_a_lattice,
  unknown_element,
  complement_undefined,
  empty_filter,
  empty_subuniverse,
  not_locally_complete,
  not_complement_closed,
  syntax_error,
  value_outside_world_lattice,
  unknown_world_in_relation,
  unassigned_atom,
  base_lattice_mismatch,
  not_boolean,
  universe_outside_family,
  budget_exceeded,
  parse_error,
  unresolved_reference,
  validation_error,
  usage_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::duplicate_name: return "DuplicateName";
    case errc::dangling_reference: return "DanglingReference";
    case errc::not_a_poset: return "NotAPoset";
    case errc::not_a_lattice: return "NotALattice";
    case errc::unknown_element: return "UnknownElement";
    case errc::complement_undefined: return "ComplementUndefined";
    case errc::empty_filter: return "EmptyFilter";
    case errc::empty_subuniverse: return "EmptySubUniverse";
    case errc::not_locally_complete: return "NotLocallyComplete";
    case errc::not_complement_closed: return "NotComplementClosed";
    case errc::syntax_error: return "SyntaxError";
    case errc::value_outside_world_lattice: return "ValueOutsideWorldLattice";
    case errc::unknown_world_in_relation: return "UnknownWorldInRelation";
    case errc::unassigned_atom: return "UnassignedAtom";
    case errc::base_lattice_mismatch: return "BaseLatticeMismatch";
    case errc::not_boolean: return "NotBoolean";
    case errc::universe_outside_family: return "UniverseOutsideFamily";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::parse_error: return "ParseError";
    case errc::unresolved_reference: return "UnresolvedReference";
    case errc::validation_error: return "ValidationError";
    case errc::usage_error: return "UsageError";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

class syntax_failure : public error {
public:
  syntax_failure(std::size_t offset, std::string expected, const std::string& message)
      : error(errc::syntax_error, message), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::string expected_;
};

class budget_exceeded : public error {
public:
  budget_exceeded(unsigned long long required, unsigned long long budget)
      : error(errc::budget_exceeded,
              "required " + std::to_string(required) + " steps, budget " + std::to_string(budget)),
        required_(required) {}

  unsigned long long required() const noexcept { return required_; }

private:
  unsigned long long required_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) { throw error(code, message); }

} // namespace manymodal
