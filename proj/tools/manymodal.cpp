// manymodal: command-line workbench for many-logic modal structures over
// finite lattices. Exit codes: 0 = query answered (even "false" or
// "countermodel found"), 1 = validation/usage error or --expect mismatch,
// 2 = budget exceeded.

#include "manymodal/document.hpp"
#include "manymodal/dot.hpp"
#include "manymodal/frames.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace manymodal;

namespace {

struct GlobalOpts {
  bool as_json = false;
  unsigned long long budget = 50'000'000ULL;
  std::uint64_t seed = 0;
  std::optional<std::string> expect;
  NonCVariant nonc = NonCVariant::sum;
  Direction dir = Direction::down;
};

int finish(const GlobalOpts& g, const std::string& command, const std::string& result_value,
           const std::string& human_text, json extra = json::object()) {
  if (g.as_json) {
    json out = extra;
    out["command"] = command;
    out["result"] = result_value;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << human_text;
    if (!human_text.empty() && human_text.back() != '\n') std::cout << "\n";
  }
  if (g.expect && *g.expect != result_value) {
    std::cerr << "expect failed: wanted '" << *g.expect << "', got '" << result_value << "'\n";
    return 1;
  }
  return 0;
}

std::string valuation_table(const Structure& m) {
  std::ostringstream os;
  for (int w = 0; w < m.frame().world_count(); ++w) {
    os << "  " << m.frame().worlds()[static_cast<size_t>(w)].id << " ["
       << m.frame().universe(w).name() << "]:";
    for (const auto& [atom, row] : m.valuation())
      if (row[static_cast<size_t>(w)] >= 0)
        os << " " << atom << "=" << m.base().element_name(row[static_cast<size_t>(w)]);
    os << "\n";
  }
  return os.str();
}

std::string model_summary(const Structure& m) {
  std::ostringstream os;
  os << "worlds:";
  for (const auto& w : m.frame().worlds()) os << " " << w.id << ":" << w.universe->name();
  os << "\nedges:";
  for (const auto& [a, b] : m.frame().edges())
    os << " " << m.frame().worlds()[static_cast<size_t>(a)].id << "->"
       << m.frame().worlds()[static_cast<size_t>(b)].id;
  os << "\nvaluation:\n" << valuation_table(m);
  return os.str();
}

json model_json(const Structure& m) {
  json out;
  json worlds = json::array();
  for (const auto& w : m.frame().worlds())
    worlds.push_back(json{{"id", w.id}, {"universe", w.universe->name()}});
  out["worlds"] = worlds;
  json edges = json::array();
  for (const auto& [a, b] : m.frame().edges())
    edges.push_back(json::array(
        {m.frame().worlds()[static_cast<size_t>(a)].id, m.frame().worlds()[static_cast<size_t>(b)].id}));
  out["edges"] = edges;
  json val = json::object();
  for (int w = 0; w < m.frame().world_count(); ++w) {
    json atoms = json::object();
    for (const auto& [atom, row] : m.valuation())
      if (row[static_cast<size_t>(w)] >= 0)
        atoms[atom] = m.base().element_name(row[static_cast<size_t>(w)]);
    val[m.frame().worlds()[static_cast<size_t>(w)].id] = atoms;
  }
  out["valuation"] = val;
  return out;
}

FrameClassSpec build_spec(const Registry& reg, const Family& fam, ClassKind kind,
                          const std::string& uniform_name, bool serial, bool transitive,
                          NonCVariant nonc) {
  const TwistStructure& T = *fam.twist;
  std::string carrier_name;
  for (const auto& [n, t] : reg.twists)
    if (&t == fam.twist) carrier_name = n;
  Filter filt = reg.lattice_filter(carrier_name);
  FrameClassSpec spec = make_class_spec(T, std::move(filt), fam.members, kind, nonc, transitive, serial);
  if (kind == ClassKind::uniform) {
    if (!uniform_name.empty())
      spec.uniform_universe = &reg.subuniverse(uniform_name);
    if (!spec.uniform_universe)
      fail(errc::usage_error, "uniform class needs --universe (or a one-member family)");
  }
  return spec;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for many-logic modal structures over finite lattices"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  std::string nonc_str = "sum", interp_str = "down";
  app.add_flag("--json", g.as_json, "machine-readable output");
  app.add_option("--budget", g.budget, "enumeration budget (valuations)");
  app.add_option("--seed", g.seed, "seed for sampled modes");
  std::string expect_str;
  auto* expect_opt = app.add_option("--expect", expect_str, "assert the result and fail on mismatch");
  app.add_option("--neg-variant", nonc_str, "non-contradiction comparison: sum (printed) or product")
      ->check(CLI::IsMember({"sum", "product"}));
  app.add_option("--interp", interp_str, "interpretation direction: down (default) or up")
      ->check(CLI::IsMember({"down", "up"}));

  std::string path, model_name, world_id, formula_text, left_name, right_name, frame_name;
  std::string class_str, family_name, uniform_name, base_name, subset_str, universes_csv, object_name;
  std::string target_str = "fail", succ_formula_text, succ_target_str = "hold";
  int max_size = 5, max_worlds = 2;
  unsigned long long samples = 0;
  bool run_queries = false, serial = false, no_transitive = false;

  auto* validate_cmd = app.add_subcommand("validate", "load a document and validate every declaration");
  validate_cmd->fallthrough();
  validate_cmd->add_option("file", path)->required();
  validate_cmd->add_flag("--run-queries", run_queries, "also run the document's embedded queries");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula at a world");
  eval_cmd->fallthrough();
  eval_cmd->add_option("file", path)->required();
  eval_cmd->add_option("--model", model_name)->required();
  eval_cmd->add_option("--world", world_id)->required();
  eval_cmd->add_option("--formula", formula_text)->required();

  auto* check_cmd = app.add_subcommand("check", "model-level satisfaction");
  check_cmd->fallthrough();
  check_cmd->add_option("file", path)->required();
  check_cmd->add_option("--model", model_name)->required();
  check_cmd->add_option("--formula", formula_text)->required();

  auto* bisim_cmd = app.add_subcommand("bisim", "greatest bisimulation between two models");
  bisim_cmd->fallthrough();
  bisim_cmd->add_option("file", path)->required();
  bisim_cmd->add_option("--left", left_name)->required();
  bisim_cmd->add_option("--right", right_name)->required();

  auto* bv_cmd = app.add_subcommand("bisim-verify", "check value invariance over bounded formulas");
  bv_cmd->fallthrough();
  bv_cmd->add_option("file", path)->required();
  bv_cmd->add_option("--left", left_name)->required();
  bv_cmd->add_option("--right", right_name)->required();
  bv_cmd->add_option("--max-size", max_size)->required();

  auto* fv_cmd = app.add_subcommand("frame-valid", "frame validity by valuation enumeration");
  fv_cmd->fallthrough();
  fv_cmd->add_option("file", path)->required();
  fv_cmd->add_option("--frame", frame_name)->required();
  fv_cmd->add_option("--formula", formula_text)->required();
  fv_cmd->add_option("--sample", samples, "sample N random valuations instead of exhausting");

  auto* cc_cmd = app.add_subcommand("class-check", "bounded validity over a frame class");
  cc_cmd->fallthrough();
  cc_cmd->add_option("file", path)->required();
  cc_cmd->add_option("--class", class_str)->required()->check(CLI::IsMember({"uniform", "inc", "dec", "dial"}));
  cc_cmd->add_option("--family", family_name, "family name (default: the document's only family)");
  cc_cmd->add_option("--universe", uniform_name, "designated universe for --class uniform");
  cc_cmd->add_flag("--serial", serial, "require every world to access at least one world");
  cc_cmd->add_flag("--no-transitive", no_transitive, "drop the transitivity requirement");
  cc_cmd->add_option("--max-worlds", max_worlds)->required();
  cc_cmd->add_option("--formula", formula_text)->required();

  auto* twist_cmd = app.add_subcommand("twist", "build a twist structure over a Boolean lattice");
  twist_cmd->fallthrough();
  twist_cmd->add_option("file", path)->required();
  twist_cmd->add_option("--base", base_name)->required();
  twist_cmd->add_option("--subset", subset_str, "boolean | para | atleast:Z");

  auto* search_cmd = app.add_subcommand("search", "bounded countermodel/witness search");
  search_cmd->fallthrough();
  search_cmd->add_option("file", path)->required();
  search_cmd->add_option("--base", base_name)->required();
  search_cmd->add_option("--universes", universes_csv, "comma-separated sub-universe names")->required();
  search_cmd->add_option("--formula", formula_text)->required();
  search_cmd->add_option("--target", target_str)->check(CLI::IsMember({"fail", "hold"}));
  search_cmd->add_option("--succ-formula", succ_formula_text, "side condition at every successor");
  search_cmd->add_option("--succ-target", succ_target_str)->check(CLI::IsMember({"fail", "hold"}));
  search_cmd->add_option("--max-worlds", max_worlds)->required();

  auto* dot_cmd = app.add_subcommand("export-dot", "emit a DOT rendering of a lattice, model or frame");
  dot_cmd->fallthrough();
  dot_cmd->add_option("file", path)->required();
  dot_cmd->add_option("--object", object_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e); // prints the message or the requested help text
    return rc == 0 ? 0 : 1;
  }
  if (*expect_opt) g.expect = expect_str;
  g.nonc = nonc_str == "sum" ? NonCVariant::sum : NonCVariant::product;
  g.dir = interp_str == "down" ? Direction::down : Direction::up;

  try {
    Registry reg = load_document(path);

    if (*validate_cmd) {
      std::ostringstream os;
      os << "ok: " << reg.lattices.size() + reg.twists.size() << " lattices, " << reg.subuniverses.size()
         << " subuniverses, " << reg.models.size() << " models, " << reg.frames.size() << " frames, "
         << reg.families.size() << " families, " << reg.queries.size() << " queries\n";
      for (const auto& [name, M] : reg.models) {
        auto rep = validate_structure(M);
        for (const auto& [wid, atom] : rep.unassigned)
          os << "note: model " << name << " leaves atom '" << atom << "' unassigned at world '" << wid << "'\n";
      }
      int failures = 0;
      if (run_queries) {
        for (const auto& q : reg.queries) {
          std::string cmd = q.body.at("command").get<std::string>();
          const Structure& M = reg.model(q.body.at("model").get<std::string>());
          FormulaPtr f = parse_formula(q.body.at("formula").get<std::string>());
          std::string got;
          if (cmd == "eval")
            got = M.base().element_name(evaluate(M, q.body.at("world").get<std::string>(), f, g.dir));
          else
            got = model_satisfies(M, f, g.dir) ? "true" : "false";
          std::string label = cmd + " " + q.body.at("formula").get<std::string>();
          if (q.body.contains("expect")) {
            std::string want = q.body.at("expect").get<std::string>();
            bool ok = want == got;
            os << (ok ? "query ok: " : "query FAILED: ") << label << " -> " << got;
            if (!ok) os << " (expected " << want << ")";
            os << "\n";
            if (!ok) ++failures;
          } else {
            os << "query: " << label << " -> " << got << "\n";
          }
        }
      }
      int rc = finish(g, "validate", failures == 0 ? "ok" : "failed", os.str());
      return rc != 0 ? rc : (failures == 0 ? 0 : 1);
    }

    if (*eval_cmd) {
      const Structure& M = reg.model(model_name);
      FormulaPtr f = parse_formula(formula_text);
      int v = evaluate(M, world_id, f, g.dir);
      std::string name = M.base().element_name(v);
      return finish(g, "eval", name, name, json{{"world", world_id}});
    }

    if (*check_cmd) {
      const Structure& M = reg.model(model_name);
      FormulaPtr f = parse_formula(formula_text);
      Evaluator ev(M, g.dir);
      json worlds = json::object();
      std::ostringstream os;
      bool all = true;
      for (int w = 0; w < M.frame().world_count(); ++w) {
        bool sat = ev.satisfies(w, f);
        all = all && sat;
        const std::string& wid = M.frame().worlds()[static_cast<size_t>(w)].id;
        worlds[wid] = json{{"value", M.base().element_name(ev.value(w, f))}, {"satisfied", sat}};
        os << wid << ": " << M.base().element_name(ev.value(w, f)) << (sat ? " (satisfied)" : " (not satisfied)")
           << "\n";
      }
      os << (all ? "true" : "false") << "\n";
      return finish(g, "check", all ? "true" : "false", os.str(), json{{"worlds", worlds}});
    }

    if (*bisim_cmd) {
      const Structure& m1 = reg.model(left_name);
      const Structure& m2 = reg.model(right_name);
      Bisim b = greatest_bisimulation(m1, m2);
      std::ostringstream os;
      json pairs = json::array();
      for (const auto& [w, w2] : b.pairs) {
        const std::string& a = m1.frame().worlds()[static_cast<size_t>(w)].id;
        const std::string& c = m2.frame().worlds()[static_cast<size_t>(w2)].id;
        os << a << " " << c << "\n";
        pairs.push_back(json::array({a, c}));
      }
      std::string result;
      for (const auto& [w, w2] : b.pairs) {
        if (!result.empty()) result += ",";
        result += m1.frame().worlds()[static_cast<size_t>(w)].id + ":" +
                  m2.frame().worlds()[static_cast<size_t>(w2)].id;
      }
      return finish(g, "bisim", result, os.str(), json{{"pairs", pairs}});
    }

    if (*bv_cmd) {
      const Structure& m1 = reg.model(left_name);
      const Structure& m2 = reg.model(right_name);
      Bisim b = greatest_bisimulation(m1, m2);
      if (!is_bisimulation(m1, m2, b)) fail(errc::validation_error, "computed relation is not a bisimulation");
      auto violations = bisim_equivalence_check(m1, m2, b, max_size, g.dir);
      std::ostringstream os;
      for (const auto& v : violations)
        os << "violation: " << render_formula(v.formula) << " at ("
           << m1.frame().worlds()[static_cast<size_t>(v.left_world)].id << ", "
           << m2.frame().worlds()[static_cast<size_t>(v.right_world)].id << "): "
           << m1.base().element_name(v.left_value) << " vs " << m1.base().element_name(v.right_value) << "\n";
      os << violations.size() << " violations up to size " << max_size << "\n";
      return finish(g, "bisim-verify", std::to_string(violations.size()), os.str(),
                    json{{"max_size", max_size}});
    }

    if (*fv_cmd) {
      const Frame& F = reg.frame(frame_name);
      FormulaPtr f = parse_formula(formula_text);
      SatisfyOptions opts;
      opts.budget = g.budget;
      opts.dir = g.dir;
      if (samples > 0) {
        opts.exhaustive = false;
        opts.samples = samples;
        opts.seed = g.seed;
      }
      FrameVerdict v = frame_satisfies(F, f, opts);
      if (v.valid)
        return finish(g, "frame-valid", "valid", "valid (" + std::to_string(v.checked) + " valuations)\n",
                      json{{"checked", v.checked}});
      const auto& c = *v.counter;
      std::string value = F.base().element_name(c.value);
      std::ostringstream os;
      os << "countervaluation at world " << F.worlds()[static_cast<size_t>(c.world)].id << ", value " << value
         << "\n"
         << model_summary(c.model);
      return finish(g, "frame-valid", value, os.str(),
                    json{{"world", F.worlds()[static_cast<size_t>(c.world)].id}, {"model", model_json(c.model)}});
    }

    if (*cc_cmd) {
      if (family_name.empty()) {
        if (reg.families.size() != 1)
          fail(errc::usage_error, "--family required when the document declares several families");
        family_name = reg.families.begin()->first;
      }
      const Family& fam = reg.family(family_name);
      ClassKind kind = class_str == "uniform" ? ClassKind::uniform
                       : class_str == "inc"   ? ClassKind::increasing
                       : class_str == "dec"   ? ClassKind::decreasing
                                              : ClassKind::dialectic;
      FrameClassSpec spec = build_spec(reg, fam, kind, uniform_name, serial, !no_transitive, g.nonc);
      FormulaPtr f = parse_formula(formula_text);
      ClassCheckReport rep = class_check(spec, f, max_worlds, g.budget, g.dir);
      if (!rep.counter)
        return finish(g, "class-check", "none",
                      "no countermodel at bound " + std::to_string(max_worlds) + " (" +
                          std::to_string(rep.frames_checked) + " frames, " +
                          std::to_string(rep.valuations_checked) + " valuations)\n",
                      json{{"bound", max_worlds},
                           {"frames_checked", rep.frames_checked},
                           {"valuations_checked", rep.valuations_checked}});
      const auto& c = *rep.counter;
      std::string value = spec.base->element_name(c.value);
      std::ostringstream os;
      os << "countermodel: formula value " << value << " at world "
         << c.model.frame().worlds()[static_cast<size_t>(c.world)].id << "\n"
         << model_summary(c.model);
      return finish(g, "class-check", value, os.str(),
                    json{{"world", c.model.frame().worlds()[static_cast<size_t>(c.world)].id},
                         {"model", model_json(c.model)}});
    }

    if (*twist_cmd) {
      const FiniteLattice& B = reg.lattice(base_name);
      TwistStructure T = build_twist(B);
      std::vector<int> members;
      if (subset_str.empty()) {
        members.resize(static_cast<size_t>(T.carrier.size()));
        for (int i = 0; i < T.carrier.size(); ++i) members[static_cast<size_t>(i)] = i;
      } else {
        TwistSubsetKind kind;
        if (subset_str == "boolean")
          kind.tag = TwistSubsetKind::Tag::boolean_pairs;
        else if (subset_str == "para")
          kind.tag = TwistSubsetKind::Tag::paraconsistent;
        else if (subset_str.rfind("atleast:", 0) == 0) {
          kind.tag = TwistSubsetKind::Tag::at_least;
          kind.z = B.index_of(subset_str.substr(8));
        } else
          fail(errc::usage_error, "--subset must be boolean, para or atleast:Z");
        members = twist_subset(T, kind);
      }
      std::ostringstream os;
      json names = json::array();
      for (int i : members) {
        os << T.carrier.element_name(i) << "\n";
        names.push_back(T.carrier.element_name(i));
      }
      return finish(g, "twist", std::to_string(members.size()), os.str(), json{{"members", names}});
    }

    if (*search_cmd) {
      const FiniteLattice& L = reg.lattice(base_name);
      std::vector<const SubUniverse*> universes;
      std::stringstream ss(universes_csv);
      std::string item;
      while (std::getline(ss, item, ',')) universes.push_back(&reg.subuniverse(item));
      FormulaPtr f = parse_formula(formula_text);
      std::optional<SearchSideCondition> side;
      if (!succ_formula_text.empty())
        side = SearchSideCondition{parse_formula(succ_formula_text), succ_target_str == "hold"};
      SearchTarget target =
          target_str == "fail" ? SearchTarget::fail_at_some_world : SearchTarget::hold_at_some_world;
      auto hit = countermodel_search(L, universes, reg.lattice_filter(base_name), f, target, side, max_worlds,
                                     g.budget, g.dir);
      if (!hit) return finish(g, "search", "none", "none\n");
      std::ostringstream os;
      os << "found at world " << hit->model.frame().worlds()[static_cast<size_t>(hit->world)].id << "\n"
         << model_summary(hit->model);
      return finish(g, "search", "found", os.str(),
                    json{{"world", hit->model.frame().worlds()[static_cast<size_t>(hit->world)].id},
                         {"model", model_json(hit->model)}});
    }

    if (*dot_cmd) {
      std::string dot;
      if (reg.has_lattice(object_name))
        dot = export_dot(reg.lattice(object_name));
      else if (reg.models.count(object_name))
        dot = export_dot(reg.model(object_name), object_name);
      else if (reg.frames.count(object_name))
        dot = export_dot(reg.frame(object_name), object_name);
      else
        fail(errc::unresolved_reference, "no lattice, model or frame named '" + object_name + "'");
      std::cout << dot;
      return 0;
    }
  } catch (const budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
