#pragma once

#include "manymodal/frames.hpp"
#include "manymodal/structure.hpp"
#include "manymodal/twist.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace manymodal {

using json = nlohmann::ordered_json;

/// A named list of admissible sub-universes for frame-class reasoning. All
/// members must live over one twist carrier.
struct Family {
  std::vector<std::string> member_names;
  std::vector<const SubUniverse*> members;
  const TwistStructure* twist = nullptr;
};

struct Query {
  json body;
};

/// Every named object of one document, validated on load. Movable but not
/// copyable: loaded objects point into the registry's own maps.
struct Registry {
  Registry() = default;
  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;
  Registry(Registry&&) = default;
  Registry& operator=(Registry&&) = default;

  std::map<std::string, FiniteLattice> lattices;
  std::map<std::string, TwistStructure> twists; // keyed by carrier lattice name
  std::map<std::string, Filter> filters;        // lattice name -> declared filter
  std::map<std::string, SubUniverse> subuniverses;
  std::map<std::string, Structure> models;
  std::map<std::string, Frame> frames;
  std::map<std::string, Family> families;
  std::vector<Query> queries;

  bool has_lattice(const std::string& name) const {
    return lattices.count(name) > 0 || twists.count(name) > 0;
  }

  const FiniteLattice& lattice(const std::string& name) const {
    if (auto it = lattices.find(name); it != lattices.end()) return it->second;
    if (auto it = twists.find(name); it != twists.end()) return it->second.carrier;
    fail(errc::unresolved_reference, "no lattice '" + name + "'");
  }

  const SubUniverse& subuniverse(const std::string& name) const {
    auto it = subuniverses.find(name);
    if (it == subuniverses.end()) fail(errc::unresolved_reference, "no sub-universe '" + name + "'");
    return it->second;
  }

  const Structure& model(const std::string& name) const {
    auto it = models.find(name);
    if (it == models.end()) fail(errc::unresolved_reference, "no model '" + name + "'");
    return it->second;
  }

  const Frame& frame(const std::string& name) const {
    auto it = frames.find(name);
    if (it == frames.end()) fail(errc::unresolved_reference, "no frame '" + name + "'");
    return it->second;
  }

  const Family& family(const std::string& name) const {
    auto it = families.find(name);
    if (it == families.end()) fail(errc::unresolved_reference, "no family '" + name + "'");
    return it->second;
  }

  const TwistStructure& twist_of_carrier(const FiniteLattice& carrier) const {
    for (const auto& [name, t] : twists)
      if (&t.carrier == &carrier) return t;
    fail(errc::unresolved_reference, "lattice '" + carrier.name() + "' is not a twist carrier");
  }

  const Filter& lattice_filter(const std::string& name) const {
    auto it = filters.find(name);
    if (it == filters.end()) fail(errc::unresolved_reference, "lattice '" + name + "' declares no filter");
    return it->second;
  }
};

namespace detail {

inline std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(errc::parse_error, where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) fail(errc::parse_error, where + " must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline std::vector<std::pair<std::string, std::string>> pair_list(const json& j, const std::string& where) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!j.is_array()) fail(errc::parse_error, where + " must be an array of two-element arrays");
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      fail(errc::parse_error, where + " must contain [\"x\", \"y\"] pairs");
    out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return out;
}

inline NegationMode negation_mode_from(const std::string& s, const std::string& where) {
  if (s == "rigid") return NegationMode::rigid;
  if (s == "down") return NegationMode::down;
  if (s == "up") return NegationMode::up;
  fail(errc::parse_error, where + ": unknown negation mode '" + s + "'");
}

inline Filter resolve_model_filter(const Registry& reg, const json& body, const std::string& lattice_name,
                                   const std::string& where) {
  const FiniteLattice& L = reg.lattice(lattice_name);
  if (body.contains("filter")) {
    auto names = string_list(body.at("filter"), where + ".filter");
    return validate_filter(L, names);
  }
  auto it = reg.filters.find(lattice_name);
  if (it == reg.filters.end())
    fail(errc::unresolved_reference,
         where + ": no filter given and lattice '" + lattice_name + "' declares none");
  return it->second;
}

struct FrameParts {
  std::vector<World> worlds;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string lattice_name;
  Filter filter;
};

inline FrameParts frame_parts(const Registry& reg, const json& body, const std::string& where) {
  FrameParts parts;
  if (!body.contains("lattice") || !body.at("lattice").is_string())
    fail(errc::parse_error, where + " needs a \"lattice\" name");
  parts.lattice_name = body.at("lattice").get<std::string>();
  const FiniteLattice& L = reg.lattice(parts.lattice_name);
  if (!body.contains("worlds") || !body.at("worlds").is_array())
    fail(errc::parse_error, where + " needs a \"worlds\" array");
  for (const auto& w : body.at("worlds")) {
    if (!w.is_object() || !w.contains("id") || !w.contains("universe"))
      fail(errc::parse_error, where + ".worlds entries need \"id\" and \"universe\"");
    const SubUniverse& u = reg.subuniverse(w.at("universe").get<std::string>());
    if (&u.base() != &L)
      fail(errc::base_lattice_mismatch,
           where + ": sub-universe '" + u.name() + "' lives over a different lattice");
    parts.worlds.push_back(World{w.at("id").get<std::string>(), &u});
  }
  if (body.contains("edges")) parts.edges = pair_list(body.at("edges"), where + ".edges");
  parts.filter = resolve_model_filter(reg, body, parts.lattice_name, where);
  return parts;
}

} // namespace detail

inline Registry load_document_json(const json& doc) {
  if (!doc.is_object()) fail(errc::parse_error, "document root must be an object");
  Registry reg;

  // Lattices: plain ones first, then twist carriers (which may reference them).
  if (doc.contains("lattices")) {
    const auto& lats = doc.at("lattices");
    if (!lats.is_object()) fail(errc::parse_error, "\"lattices\" must be an object");
    std::vector<std::pair<std::string, json>> twist_entries;
    for (const auto& [name, body] : lats.items()) {
      const std::string where = "lattices." + name;
      if (body.contains("twist_of")) {
        twist_entries.emplace_back(name, body);
        continue;
      }
      LatticeSpec spec;
      spec.name = name;
      if (!body.contains("elements"))
        fail(errc::parse_error, where + " needs \"elements\"");
      spec.elements = detail::string_list(body.at("elements"), where + ".elements");
      if (body.contains("covers")) spec.order = detail::pair_list(body.at("covers"), where + ".covers");
      if (body.contains("leq")) {
        auto more = detail::pair_list(body.at("leq"), where + ".leq");
        spec.order.insert(spec.order.end(), more.begin(), more.end());
      }
      if (body.contains("neg")) spec.complements = detail::pair_list(body.at("neg"), where + ".neg");
      reg.lattices.emplace(name, build_lattice(spec));
      if (body.contains("filter")) {
        auto names = detail::string_list(body.at("filter"), where + ".filter");
        reg.filters.emplace(name, validate_filter(reg.lattices.at(name), names));
      }
    }
    for (const auto& [name, body] : twist_entries) {
      const std::string where = "lattices." + name;
      std::string base_name = body.at("twist_of").get<std::string>();
      auto it = reg.lattices.find(base_name);
      if (it == reg.lattices.end())
        fail(errc::unresolved_reference, where + ": twist base '" + base_name + "' not declared");
      TwistStructure T = build_twist(it->second);
      auto [tit, fresh] = reg.twists.emplace(name, std::move(T));
      if (!fresh || reg.lattices.count(name))
        fail(errc::duplicate_name, where + " declared twice");
      if (body.contains("filter")) {
        auto names = detail::string_list(body.at("filter"), where + ".filter");
        reg.filters.emplace(name, validate_filter(tit->second.carrier, names));
      }
    }
  }

  if (doc.contains("subuniverses")) {
    const auto& subs = doc.at("subuniverses");
    if (!subs.is_object()) fail(errc::parse_error, "\"subuniverses\" must be an object");
    for (const auto& [name, body] : subs.items()) {
      const std::string where = "subuniverses." + name;
      if (!body.contains("lattice") || !body.at("lattice").is_string())
        fail(errc::parse_error, where + " needs a \"lattice\" name");
      std::string lat = body.at("lattice").get<std::string>();
      const FiniteLattice& L = reg.lattice(lat);
      NegationMode mode = NegationMode::rigid;
      if (body.contains("negation"))
        mode = detail::negation_mode_from(body.at("negation").get<std::string>(), where);
      std::vector<std::string> members;
      if (body.contains("twist_subset")) {
        auto tw = reg.twists.find(lat);
        if (tw == reg.twists.end())
          fail(errc::unresolved_reference, where + ": \"twist_subset\" needs a twist carrier lattice");
        TwistSubsetKind kind;
        const auto& ts = body.at("twist_subset");
        if (ts.is_string()) {
          std::string s = ts.get<std::string>();
          if (s == "boolean")
            kind.tag = TwistSubsetKind::Tag::boolean_pairs;
          else if (s == "para")
            kind.tag = TwistSubsetKind::Tag::paraconsistent;
          else
            fail(errc::parse_error, where + ": unknown twist subset '" + s + "'");
        } else if (ts.is_object() && ts.contains("atleast")) {
          kind.tag = TwistSubsetKind::Tag::at_least;
          kind.z = tw->second.boolean_base->index_of(ts.at("atleast").get<std::string>());
        } else {
          fail(errc::parse_error, where + ": twist_subset must be \"boolean\", \"para\" or {\"atleast\": z}");
        }
        for (int i : twist_subset(tw->second, kind)) members.push_back(L.element_name(i));
      } else if (body.contains("members")) {
        if (body.at("members").is_string() && body.at("members").get<std::string>() == "all")
          members = L.elements();
        else
          members = detail::string_list(body.at("members"), where + ".members");
      } else {
        fail(errc::parse_error, where + " needs \"members\" or \"twist_subset\"");
      }
      reg.subuniverses.emplace(name, validate_subuniverse(L, name, members, mode));
    }
  }

  if (doc.contains("models")) {
    const auto& models = doc.at("models");
    if (!models.is_object()) fail(errc::parse_error, "\"models\" must be an object");
    for (const auto& [name, body] : models.items()) {
      const std::string where = "models." + name;
      auto parts = detail::frame_parts(reg, body, where);
      Frame F(reg.lattice(parts.lattice_name), std::move(parts.worlds), std::move(parts.edges),
              std::move(parts.filter));
      std::map<std::string, std::vector<int>> vals;
      if (body.contains("valuation")) {
        const auto& valj = body.at("valuation");
        if (!valj.is_object()) fail(errc::parse_error, where + ".valuation must be an object");
        const FiniteLattice& L = reg.lattice(parts.lattice_name);
        for (const auto& [wid, atoms] : valj.items()) {
          int w = F.world_index(wid);
          if (!atoms.is_object()) fail(errc::parse_error, where + ".valuation." + wid + " must be an object");
          for (const auto& [atom, val] : atoms.items()) {
            auto& row = vals[atom];
            row.resize(static_cast<size_t>(F.world_count()), -1);
            row[static_cast<size_t>(w)] = L.index_of(val.get<std::string>());
          }
        }
        for (auto& [atom, row] : vals) row.resize(static_cast<size_t>(F.world_count()), -1);
      }
      reg.models.emplace(name, Structure(std::move(F), std::move(vals)));
    }
  }

  if (doc.contains("frames")) {
    const auto& frames = doc.at("frames");
    if (!frames.is_object()) fail(errc::parse_error, "\"frames\" must be an object");
    for (const auto& [name, body] : frames.items()) {
      const std::string where = "frames." + name;
      auto parts = detail::frame_parts(reg, body, where);
      reg.frames.emplace(name, Frame(reg.lattice(parts.lattice_name), std::move(parts.worlds),
                                     std::move(parts.edges), std::move(parts.filter)));
    }
  }

  if (doc.contains("families")) {
    const auto& fams = doc.at("families");
    if (!fams.is_object()) fail(errc::parse_error, "\"families\" must be an object");
    for (const auto& [name, body] : fams.items()) {
      const std::string where = "families." + name;
      Family fam;
      if (!body.contains("members"))
        fail(errc::parse_error, where + " needs a \"members\" array of sub-universe names");
      fam.member_names = detail::string_list(body.at("members"), where + ".members");
      if (fam.member_names.empty()) fail(errc::parse_error, where + ".members must be nonempty");
      for (const auto& mn : fam.member_names) {
        const SubUniverse& u = reg.subuniverse(mn);
        fam.members.push_back(&u);
        const TwistStructure& t = reg.twist_of_carrier(u.base());
        if (fam.twist && fam.twist != &t)
          fail(errc::base_lattice_mismatch, where + ": family members span different twist carriers");
        fam.twist = &t;
      }
      reg.families.emplace(name, std::move(fam));
    }
  }

  if (doc.contains("queries")) {
    const auto& qs = doc.at("queries");
    if (!qs.is_array()) fail(errc::parse_error, "\"queries\" must be an array");
    for (const auto& q : qs) {
      if (!q.is_object() || !q.contains("command") || !q.at("command").is_string())
        fail(errc::parse_error, "each query needs a \"command\"");
      std::string cmd = q.at("command").get<std::string>();
      if (cmd == "eval" || cmd == "check") {
        const Structure& M = reg.model(q.at("model").get<std::string>());
        parse_formula(q.at("formula").get<std::string>());
        if (cmd == "eval") {
          if (!q.contains("world")) fail(errc::parse_error, "eval queries need a \"world\"");
          M.frame().world_index(q.at("world").get<std::string>());
        }
      } else {
        fail(errc::parse_error, "unknown query command '" + cmd + "'");
      }
      reg.queries.push_back(Query{q});
    }
  }

  return reg;
}

inline Registry load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(errc::parse_error, std::string(e.what()) + " in '" + path + "'");
  }
  try {
    return load_document_json(doc);
  } catch (error&) {
    throw;
  } catch (const std::exception& e) {
    fail(errc::parse_error, std::string(e.what()) + " in '" + path + "'");
  }
}

/// Serialises a registry back to the document schema. Covers are recomputed
/// from the stored order; twist carriers round-trip as twist_of references.
inline json save_document(const Registry& reg) {
  json doc = json::object();
  json lats = json::object();
  for (const auto& [name, L] : reg.lattices) {
    json body = json::object();
    body["elements"] = L.elements();
    json covers = json::array();
    for (const auto& [lo, hi] : L.covers())
      covers.push_back(json::array({L.element_name(lo), L.element_name(hi)}));
    body["covers"] = covers;
    json neg = json::array();
    for (int x = 0; x < L.size(); ++x)
      if (L.complement_or_none(x) >= 0)
        neg.push_back(json::array({L.element_name(x), L.element_name(L.complement_or_none(x))}));
    if (!neg.empty()) body["neg"] = neg;
    if (auto it = reg.filters.find(name); it != reg.filters.end()) {
      json f = json::array();
      for (int e : it->second.members) f.push_back(L.element_name(e));
      body["filter"] = f;
    }
    lats[name] = body;
  }
  for (const auto& [name, T] : reg.twists) {
    json body = json::object();
    body["twist_of"] = T.boolean_base->name();
    if (auto it = reg.filters.find(name); it != reg.filters.end()) {
      json f = json::array();
      for (int e : it->second.members) f.push_back(T.carrier.element_name(e));
      body["filter"] = f;
    }
    lats[name] = body;
  }
  if (!lats.empty()) doc["lattices"] = lats;

  json subs = json::object();
  for (const auto& [name, S] : reg.subuniverses) {
    json body = json::object();
    std::string lattice_name;
    for (const auto& [ln, L] : reg.lattices)
      if (&L == &S.base()) lattice_name = ln;
    for (const auto& [tn, T] : reg.twists)
      if (&T.carrier == &S.base()) lattice_name = tn;
    body["lattice"] = lattice_name;
    json members = json::array();
    for (int m : S.members()) members.push_back(S.base().element_name(m));
    body["members"] = members;
    body["negation"] = to_string(S.negation_mode());
    subs[name] = body;
  }
  if (!subs.empty()) doc["subuniverses"] = subs;

  auto frame_body = [&](const Frame& F) {
    json body = json::object();
    std::string lattice_name;
    for (const auto& [ln, L] : reg.lattices)
      if (&L == &F.base()) lattice_name = ln;
    for (const auto& [tn, T] : reg.twists)
      if (&T.carrier == &F.base()) lattice_name = tn;
    body["lattice"] = lattice_name;
    json worlds = json::array();
    for (const auto& w : F.worlds()) {
      std::string uname = w.universe->name();
      worlds.push_back(json{{"id", w.id}, {"universe", uname}});
    }
    body["worlds"] = worlds;
    json edges = json::array();
    for (const auto& [a, b] : F.edges())
      edges.push_back(json::array(
          {F.worlds()[static_cast<size_t>(a)].id, F.worlds()[static_cast<size_t>(b)].id}));
    body["edges"] = edges;
    json filt = json::array();
    for (int e : F.filter().members)
      filt.push_back(F.base().element_name(e));
    body["filter"] = filt;
    return body;
  };

  json models = json::object();
  for (const auto& [name, M] : reg.models) {
    json body = frame_body(M.frame());
    json val = json::object();
    for (int w = 0; w < M.frame().world_count(); ++w) {
      json atoms = json::object();
      for (const auto& [atom, row] : M.valuation())
        if (row[static_cast<size_t>(w)] >= 0)
          atoms[atom] = M.base().element_name(row[static_cast<size_t>(w)]);
      if (!atoms.empty()) val[M.frame().worlds()[static_cast<size_t>(w)].id] = atoms;
    }
    body["valuation"] = val;
    models[name] = body;
  }
  if (!models.empty()) doc["models"] = models;

  json frames = json::object();
  for (const auto& [name, F] : reg.frames) frames[name] = frame_body(F);
  if (!frames.empty()) doc["frames"] = frames;

  json fams = json::object();
  for (const auto& [name, fam] : reg.families) fams[name] = json{{"members", fam.member_names}};
  if (!fams.empty()) doc["families"] = fams;

  if (!reg.queries.empty()) {
    json qs = json::array();
    for (const auto& q : reg.queries) qs.push_back(q.body);
    doc["queries"] = qs;
  }
  return doc;
}

} // namespace manymodal
