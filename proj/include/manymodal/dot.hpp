#pragma once

#include "manymodal/lattice.hpp"
#include "manymodal/structure.hpp"

#include <sstream>
#include <string>

namespace manymodal {

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}
} // namespace detail

/// Hasse diagram: cover edges drawn upward, complement entries as dashed red
/// edges (one double-headed edge per mutual pair). Node order follows the
/// element declaration order.
inline std::string export_dot(const FiniteLattice& L) {
  std::ostringstream os;
  os << "digraph " << detail::dot_quote(L.name().empty() ? "lattice" : L.name()) << " {\n";
  os << "  rankdir=BT;\n  node [shape=circle];\n";
  for (const auto& e : L.elements()) os << "  " << detail::dot_quote(e) << ";\n";
  for (const auto& [lo, hi] : L.covers())
    os << "  " << detail::dot_quote(L.element_name(lo)) << " -> " << detail::dot_quote(L.element_name(hi))
       << " [arrowhead=none];\n";
  for (int x = 0; x < L.size(); ++x) {
    int c = L.complement_or_none(x);
    if (c < 0) continue;
    if (c == x) {
      os << "  " << detail::dot_quote(L.element_name(x)) << " -> " << detail::dot_quote(L.element_name(x))
         << " [style=dashed, color=red, constraint=false];\n";
    } else if (L.complement_or_none(c) == x) {
      if (x < c)
        os << "  " << detail::dot_quote(L.element_name(x)) << " -> " << detail::dot_quote(L.element_name(c))
           << " [style=dashed, color=red, dir=both, constraint=false];\n";
    } else {
      os << "  " << detail::dot_quote(L.element_name(x)) << " -> " << detail::dot_quote(L.element_name(c))
         << " [style=dashed, color=red, constraint=false];\n";
    }
  }
  os << "}\n";
  return os.str();
}

/// Worlds labelled "id : universe", accessibility edges in declaration order.
inline std::string export_dot(const Frame& F, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << detail::dot_quote(name) << " {\n  node [shape=box];\n";
  for (const auto& w : F.worlds())
    os << "  " << detail::dot_quote(w.id) << " [label=" << detail::dot_quote(w.id + " : " + w.universe->name())
       << "];\n";
  for (const auto& [a, b] : F.edges())
    os << "  " << detail::dot_quote(F.worlds()[static_cast<size_t>(a)].id) << " -> "
       << detail::dot_quote(F.worlds()[static_cast<size_t>(b)].id) << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string export_dot(const Structure& M, const std::string& name) { return export_dot(M.frame(), name); }

} // namespace manymodal
