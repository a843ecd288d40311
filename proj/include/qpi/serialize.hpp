#pragma once

// JSON forms of the library types (nlohmann/json).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qpi/error.hpp"
#include "qpi/geometry.hpp"
#include "qpi/isotropy.hpp"
#include "qpi/qplane.hpp"
#include "qpi/scalar.hpp"
#include "qpi/text.hpp"
#include "qpi/torus.hpp"

namespace qpi {

using Json = nlohmann::ordered_json;

// --- QSpec ------------------------------------------------------------------

inline Json to_json(const QSpec& spec) {
  if (spec.is_root_of_unity()) return {{"type", "root_of_unity"}, {"order", spec.order()}};
  return {{"type", "transcendental"}};
}

inline QSpec qspec_from_json(const Json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "transcendental") return QSpec::transcendental();
    if (type == "root_of_unity") return QSpec::root_of_unity(j.at("order").get<std::int64_t>());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad q specification: ") + e.what());
  }
  throw ParseError("q type must be \"transcendental\" or \"root_of_unity\"");
}

// --- Scalars and polynomials ------------------------------------------------

inline Scalar scalar_from_json(const Json& j, const QSpec& spec, std::int64_t conductor = 1) {
  if (j.is_number_integer()) return Scalar(j.get<std::int64_t>()).lifted(conductor);
  if (j.is_string()) return parse_scalar(j.get<std::string>(), spec, conductor);
  throw ParseError("scalar must be an integer or a string, got " + j.dump());
}

/// List of {i, j, coeff}; coeff carries its own conductor declaration.
inline Json to_json(const QPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back({{"i", m.i}, {"j", m.j}, {"coeff", c.to_string()}});
  }
  return terms;
}

/// Accepts the term list or a string in the polynomial text grammar.
inline QPoly qpoly_from_json(const Json& j, const QSpec& spec, std::int64_t conductor = 1) {
  if (j.is_string()) return parse_qpoly(j.get<std::string>(), spec, conductor);
  if (!j.is_array()) throw ParseError("polynomial must be a term list or a string");
  QPoly p;
  try {
    for (const Json& t : j) {
      const auto i = t.at("i").get<std::int64_t>();
      const auto jj = t.at("j").get<std::int64_t>();
      if (i < 0 || jj < 0) throw ParseError("negative monomial exponent");
      p.add_term({checked_exponent(i), checked_exponent(jj)},
                 scalar_from_json(t.at("coeff"), spec, conductor));
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad polynomial term: ") + e.what());
  }
  return p;
}

// --- Torus ------------------------------------------------------------------

inline Json to_json(const Character& c) { return Json::array({c.m, c.n}); }

inline Json to_json(const TorsionPoint& p) {
  return {{"num1", p.num1()}, {"num2", p.num2()}, {"den", p.den()}};
}

inline TorsionPoint torsion_point_from_json(const Json& j) {
  try {
    return TorsionPoint(j.at("num1").get<std::int64_t>(), j.at("num2").get<std::int64_t>(),
                        j.at("den").get<std::int64_t>());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad torsion point: ") + e.what());
  }
}

inline std::vector<Character> characters_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("constraint system must be a JSON list of [m, n]");
  std::vector<Character> chars;
  try {
    for (const Json& c : j) {
      if (!c.is_array() || c.size() != 2) throw ParseError("character must be [m, n]");
      chars.push_back({c[0].get<std::int64_t>(), c[1].get<std::int64_t>()});
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad character: ") + e.what());
  }
  return chars;
}

inline Json to_json(const std::vector<Character>& chars) {
  Json out = Json::array();
  for (const Character& c : chars) out.push_back(to_json(c));
  return out;
}

inline Json to_json(const GroupReport& r) {
  Json gens = Json::array();
  for (const TorsionPoint& p : r.generators) gens.push_back(to_json(p));
  return {{"classification", to_string(r.classification)},
          {"torus_rank", r.torus_rank},
          {"invariants", {r.torsion_invariants[0], r.torsion_invariants[1]}},
          {"order", r.order ? Json(*r.order) : Json(nullptr)},
          {"generators", gens},
          {"primitive_character",
           r.primitive_character ? to_json(*r.primitive_character) : Json(nullptr)}};
}

inline GroupReport group_report_from_json(const Json& j) {
  GroupReport r;
  try {
    const std::string cls = j.at("classification").get<std::string>();
    if (cls == "FullTorus") r.classification = Classification::full_torus;
    else if (cls == "Infinite") r.classification = Classification::infinite;
    else if (cls == "Finite") r.classification = Classification::finite;
    else throw ParseError("unknown classification " + cls);
    r.torus_rank = j.at("torus_rank").get<int>();
    r.torsion_invariants = {j.at("invariants").at(0).get<std::int64_t>(),
                            j.at("invariants").at(1).get<std::int64_t>()};
    if (!j.at("order").is_null()) r.order = j.at("order").get<std::int64_t>();
    for (const Json& g : j.at("generators")) r.generators.push_back(torsion_point_from_json(g));
    if (!j.at("primitive_character").is_null()) {
      const auto c = characters_from_json(Json::array({j.at("primitive_character")}));
      r.primitive_character = c.front();
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad group report: ") + e.what());
  }
  return r;
}

inline Json to_json(const TwoEquationStructure& t) {
  return {{"k", t.k},
          {"r", t.r},
          {"s", t.s},
          {"p", t.p},
          {"bezout", {t.bezout_m, t.bezout_n}},
          {"closed_form", {t.closed_form[0], t.closed_form[1]}},
          {"canonical", {t.canonical[0], t.canonical[1]}},
          {"order", t.order},
          {"generators", {to_json(t.z1), to_json(t.z2)}},
          {"generated_order", t.generated_order},
          {"smith_invariants", {t.smith_invariants[0], t.smith_invariants[1]}},
          {"agrees_with_smith_form", t.agrees_with_smith_form}};
}

// --- Isotropy ---------------------------------------------------------------

inline Json to_json(const IsotropyResult& r) {
  return {{"report", to_json(r.report)},
          {"constraints", to_json(r.constraints)},
          {"path", to_string(r.path)}};
}

inline Json to_json(const RealizabilityVerdict& v) {
  return {{"status", to_string(v.status)},
          {"witness", v.witness ? Json(v.witness->to_string()) : Json(nullptr)},
          {"reason", v.reason},
          {"verified_group", v.verified_group ? to_json(*v.verified_group) : Json(nullptr)}};
}

/// Input document: {"q": ..., "w": ..., "a": ..., "b": ...} or
/// {"q": ..., "dx": ..., "dy": ...}; optional integer "conductor" applies
/// to every scalar in the document.
struct IsotropyInput {
  QSpec spec = QSpec::transcendental();
  Derivation derivation;
};

inline IsotropyInput isotropy_input_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("input document must be a JSON object");
  const QSpec spec = doc.contains("q") ? qspec_from_json(doc.at("q")) : QSpec::transcendental();
  std::int64_t conductor = 1;
  if (doc.contains("conductor")) {
    if (!doc.at("conductor").is_number_integer()) throw ParseError("conductor must be an integer");
    conductor = doc.at("conductor").get<std::int64_t>();
    if (conductor < 1) throw ParseError("conductor must be positive");
    check_conductor(conductor);
  }
  const bool inner = doc.contains("w");
  const bool images = doc.contains("dx") || doc.contains("dy");
  if (inner == images) throw ParseError("input needs exactly one of \"w\" or \"dx\"/\"dy\"");
  if (inner) {
    const QPoly w = qpoly_from_json(doc.at("w"), spec, conductor);
    const Scalar a = doc.contains("a") ? scalar_from_json(doc.at("a"), spec, conductor) : Scalar(0);
    const Scalar b = doc.contains("b") ? scalar_from_json(doc.at("b"), spec, conductor) : Scalar(0);
    return {spec, make_derivation(w, a, b, spec)};
  }
  const QPoly dx = doc.contains("dx") ? qpoly_from_json(doc.at("dx"), spec, conductor) : QPoly();
  const QPoly dy = doc.contains("dy") ? qpoly_from_json(doc.at("dy"), spec, conductor) : QPoly();
  return {spec, make_derivation_from_images(dx, dy, spec)};
}

// --- Geometry ---------------------------------------------------------------

inline Json to_json(const BezoutLedger& l) {
  return {{"total", l.total}, {"affine", l.affine_count}, {"at010", l.mult_at_010},
          {"at100", l.mult_at_100}};
}

inline Json to_json(const IntersectionReport& r) {
  Json points = Json::array();
  for (const TorsionPoint& p : r.points) points.push_back(to_json(p));
  return {{"degrees", {r.degrees[0], r.degrees[1]}},
          {"ledger", to_json(r.ledger)},
          {"points", points},
          {"branch_decomposition",
           {{"d1", r.branches.d1},
            {"d2", r.branches.d2},
            {"primed",
             {r.branches.primed[0], r.branches.primed[1], r.branches.primed[2],
              r.branches.primed[3]}}}}};
}

} // namespace qpi
