#include "fixtures.hpp"
#include "manymodal/document.hpp"
#include "manymodal/dot.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace manymodal;

namespace {

const std::vector<std::string>& corpus_files() {
  static const std::vector<std::string> files{
      "fig2.json",    "k_failure.json", "naw.json",  "nec_though_false.json", "il_cl.json",
      "lp_cl.json",   "exlp.json",      "twist_frames.json", "bisim.json"};
  return files;
}

bool same_lattice(const FiniteLattice& a, const FiniteLattice& b) {
  if (a.elements() != b.elements()) return false;
  for (int i = 0; i < a.size(); ++i) {
    if (a.complement_or_none(i) != b.complement_or_none(i)) return false;
    for (int j = 0; j < a.size(); ++j)
      if (a.leq(i, j) != b.leq(i, j)) return false;
  }
  return true;
}

bool same_frame(const Frame& a, const Frame& b) {
  if (a.world_count() != b.world_count()) return false;
  for (int w = 0; w < a.world_count(); ++w) {
    if (a.worlds()[(size_t)w].id != b.worlds()[(size_t)w].id) return false;
    if (a.universe(w).members() != b.universe(w).members()) return false;
    if (a.universe(w).negation_mode() != b.universe(w).negation_mode()) return false;
    if (a.successors(w) != b.successors(w)) return false;
  }
  return a.filter().members == b.filter().members;
}

bool semantically_equal(const Registry& a, const Registry& b) {
  if (a.lattices.size() != b.lattices.size() || a.twists.size() != b.twists.size()) return false;
  for (const auto& [name, L] : a.lattices) {
    auto it = b.lattices.find(name);
    if (it == b.lattices.end() || !same_lattice(L, it->second)) return false;
  }
  for (const auto& [name, T] : a.twists) {
    auto it = b.twists.find(name);
    if (it == b.twists.end() || !same_lattice(T.carrier, it->second.carrier)) return false;
  }
  for (const auto& [name, F] : a.filters) {
    auto it = b.filters.find(name);
    if (it == b.filters.end() || F.members != it->second.members) return false;
  }
  if (a.subuniverses.size() != b.subuniverses.size()) return false;
  for (const auto& [name, S] : a.subuniverses) {
    auto it = b.subuniverses.find(name);
    if (it == b.subuniverses.end() || S.members() != it->second.members() ||
        S.negation_mode() != it->second.negation_mode())
      return false;
  }
  if (a.models.size() != b.models.size() || a.frames.size() != b.frames.size()) return false;
  for (const auto& [name, M] : a.models) {
    auto it = b.models.find(name);
    if (it == b.models.end() || !same_frame(M.frame(), it->second.frame()) ||
        M.valuation() != it->second.valuation())
      return false;
  }
  for (const auto& [name, F] : a.frames) {
    auto it = b.frames.find(name);
    if (it == b.frames.end() || !same_frame(F, it->second)) return false;
  }
  if (a.families.size() != b.families.size()) return false;
  for (const auto& [name, fam] : a.families) {
    auto it = b.families.find(name);
    if (it == b.families.end() || fam.member_names != it->second.member_names) return false;
  }
  return true;
}

int count_lines_with(const std::string& text, const std::string& needle) {
  int n = 0;
  std::string line;
  std::istringstream is(text);
  while (std::getline(is, line))
    if (line.find(needle) != std::string::npos) ++n;
  return n;
}

} // namespace

TEST_CASE("every corpus file loads and validates") {
  for (const auto& file : corpus_files()) {
    INFO(file);
    Registry reg = load_document(fx::corpus_file(file));
    CHECK(reg.lattices.size() + reg.twists.size() >= 1);
  }
}

TEST_CASE("the first figure's document resolves to the expected registry") {
  Registry reg = load_document(fx::corpus_file("fig2.json"));
  REQUIRE(reg.lattices.count("L") == 1);
  CHECK(reg.lattices.at("L").size() == 5);
  CHECK(reg.subuniverses.size() == 3);
  REQUIRE(reg.models.count("M") == 1);
  CHECK(reg.models.at("M").frame().world_count() == 3);
  CHECK(reg.queries.size() == 1);
}

TEST_CASE("the twist document resolves carriers, subsets and families") {
  Registry reg = load_document(fx::corpus_file("twist_frames.json"));
  REQUIRE(reg.twists.count("T") == 1);
  CHECK(reg.twists.at("T").carrier.size() == 16);
  CHECK(reg.subuniverses.at("TB").member_count() == 4);
  CHECK(reg.subuniverses.at("T1").member_count() == 9);
  CHECK(reg.lattice_filter("T").members.size() == 9);
  REQUIRE(reg.families.count("tz") == 1);
  CHECK(reg.families.at("tz").member_names == std::vector<std::string>{"T1", "Ta", "Tb", "T0"});
  CHECK(reg.frames.count("F_dec_fig") == 1);
}

TEST_CASE("unresolved references are reported") {
  json doc = json::parse(R"({
    "subuniverses": {"S": {"lattice": "nope", "members": ["x"]}}
  })");
  try {
    load_document_json(doc);
    FAIL("expected UnresolvedReference");
  } catch (const error& e) {
    CHECK(e.code() == errc::unresolved_reference);
  }

  json doc2 = json::parse(R"({
    "lattices": {"L": {"elements": ["0","1"], "covers": [["0","1"]], "filter": ["1"]}},
    "models": {"M": {"lattice": "L", "worlds": [{"id": "w", "universe": "missing"}], "edges": []}}
  })");
  REQUIRE_THROWS_AS(load_document_json(doc2), error);
}

TEST_CASE("malformed documents are parse errors") {
  REQUIRE_THROWS_AS(load_document("/no/such/file.json"), error);
  try {
    load_document_json(json::parse(R"({"lattices": {"L": {"covers": []}}})"));
    FAIL("expected ParseError");
  } catch (const error& e) {
    CHECK(e.code() == errc::parse_error);
  }
}

TEST_CASE("load after save is semantically equal for the whole corpus") {
  for (const auto& file : corpus_files()) {
    INFO(file);
    Registry reg = load_document(fx::corpus_file(file));
    json saved = save_document(reg);
    Registry back = load_document_json(saved);
    CHECK(semantically_equal(reg, back));
  }
}

TEST_CASE("dot export of lattices counts nodes and edges") {
  FiniteLattice D = fx::diamond();
  std::string dot = export_dot(D);
  CHECK(count_lines_with(dot, "\";") == 4); // node lines
  CHECK(count_lines_with(dot, "arrowhead=none") == 4);
  CHECK(count_lines_with(dot, "style=dashed") == 2); // a<->b and 0<->1 collapse

  FiniteLattice one = build_lattice({"one", {"0"}, {}, {}});
  std::string dot1 = export_dot(one);
  CHECK(count_lines_with(dot1, "\";") == 1);
  CHECK(count_lines_with(dot1, "->") == 0);
}

TEST_CASE("dot export of the self-loop model") {
  Registry reg = load_document(fx::corpus_file("nec_though_false.json"));
  std::string dot = export_dot(reg.model("M"), "M");
  CHECK(count_lines_with(dot, "label=") == 2);
  CHECK(count_lines_with(dot, "\"w\" -> \"w\"") == 1);
  CHECK(count_lines_with(dot, "\"w\" -> \"w'\"") == 1);
}

TEST_CASE("k_failure document reproduces the expected values through the loader") {
  Registry reg = load_document(fx::corpus_file("k_failure.json"));
  const Structure& M = reg.model("M");
  CHECK(M.base().element_name(evaluate(M, "w", parse_formula("[](p -> q)"))) == "1");
  CHECK(M.base().element_name(evaluate(M, "w", parse_formula("[]p -> []q"))) == "b");
  CHECK_FALSE(satisfies(M, "w", parse_formula("[](p -> q) -> ([]p -> []q)")));
}
