#pragma once

// JSON interchange: cyclotomic values, character tables, lattice maps, and
// extension problems/results. Field order is fixed (ordered_json) so that
// serialized output is byte-stable.

#include <json.hpp>

#include "localsystem.hpp"

namespace iso {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// cyclotomic values: {conductor, coeffs: [[num, den], ...]} over the power
// basis of the stored conductor

inline Json cyclotomic_to_json(const Cyclotomic& v) {
  Json j;
  j["conductor"] = v.conductor();
  Json cs = Json::array();
  for (const Rational& c : v.coefficients())
    cs.push_back({c.get_num().get_si(), c.get_den().get_si()});
  j["coeffs"] = std::move(cs);
  return j;
}

inline Cyclotomic cyclotomic_from_json(const Json& j) {
  long m = j.at("conductor").get<long>();
  Cyclotomic out;
  long k = 0;
  for (const Json& pair : j.at("coeffs")) {
    Rational c(pair.at(0).get<long>(), pair.at(1).get<long>());
    if (c != 0)
      out += Cyclotomic(c) * (k == 0 ? Cyclotomic(1L)
                                     : Cyclotomic::root_of_unity(m, k));
    ++k;
  }
  return out;
}

// ---------------------------------------------------------------------------
// conjugacy classes of the model group (brute force over the whole group)

struct ConjClass {
  NElem rep;
  long size = 0;
};

inline std::vector<ConjClass> conjugacy_classes(const LocalBlockModel& mod) {
  std::vector<char> seen(mod.order(), 0);
  std::vector<ConjClass> out;
  for (long code = 0; code < mod.order(); ++code) {
    if (seen[code]) continue;
    NElem g = mod.decode(code);
    std::set<long> orbit;
    for (long h = 0; h < mod.order(); ++h)
      orbit.insert(mod.encode(mod.conj(g, mod.decode(h))));
    for (long c : orbit) seen[c] = 1;
    out.push_back({g, static_cast<long>(orbit.size())});
  }
  return out;
}

inline std::string elem_word(const NElem& g) {
  return "x^" + std::to_string(g.x) + " y^" + std::to_string(g.y) + " e1^" +
         std::to_string(g.i) + " e2^" + std::to_string(g.j) + " z^" +
         std::to_string(g.k);
}

inline Json character_table_json(const LocalBlockModel& mod) {
  Json j;
  j["model"] = {{"p", mod.p}, {"n", mod.n}, {"m", mod.m}, {"l", mod.l},
                {"a1", mod.a1}, {"a2", mod.a2}};
  std::vector<ConjClass> classes = conjugacy_classes(mod);
  Json cl = Json::array();
  for (const ConjClass& c : classes)
    cl.push_back({{"rep", elem_word(c.rep)}, {"size", c.size}});
  j["classes"] = std::move(cl);
  Json chars = Json::array();
  for (const IrrLabel& lb : mod.irr_labels()) {
    Json ch;
    ch["label"] = mod.label_name(lb);
    ch["degree"] = mod.degree(lb);
    Json vals = Json::array();
    for (const ConjClass& c : classes)
      vals.push_back(cyclotomic_to_json(mod.value(lb, c.rep)));
    ch["values"] = std::move(vals);
    chars.push_back(std::move(ch));
  }
  j["characters"] = std::move(chars);
  return j;
}

// ---------------------------------------------------------------------------
// lattice maps: {domain_labels, codomain_labels, matrix} with matrix rows
// listing the image of each domain basis vector

inline Json isometry_to_json(const LatticeIsometry& iso) {
  Json j;
  j["domain_labels"] = iso.domain_labels;
  j["codomain_labels"] = iso.codomain_labels;
  Json m = Json::array();
  for (const ZVec& col : iso.cols) {
    Json row = Json::array();
    for (const mpz_class& v : col) row.push_back(v.get_si());
    m.push_back(std::move(row));
  }
  j["matrix"] = std::move(m);
  if (!iso.domain_gram.empty()) {
    Json g = Json::array();
    for (const ZVec& row : iso.domain_gram) {
      Json r = Json::array();
      for (const mpz_class& v : row) r.push_back(v.get_si());
      g.push_back(std::move(r));
    }
    j["domain_gram"] = std::move(g);
  }
  return j;
}

inline LatticeIsometry isometry_from_json(const Json& j) {
  LatticeIsometry iso;
  if (j.contains("domain_labels"))
    iso.domain_labels = j["domain_labels"].get<std::vector<std::string>>();
  if (j.contains("codomain_labels"))
    iso.codomain_labels = j["codomain_labels"].get<std::vector<std::string>>();
  for (const Json& row : j.at("matrix")) {
    ZVec col;
    for (const Json& v : row) col.push_back(mpz_class(v.get<long>()));
    iso.cols.push_back(std::move(col));
  }
  if (j.contains("domain_gram"))
    for (const Json& row : j["domain_gram"]) {
      ZVec r;
      for (const Json& v : row) r.push_back(mpz_class(v.get<long>()));
      iso.domain_gram.push_back(std::move(r));
    }
  return iso;
}

// ---------------------------------------------------------------------------
// extension problems and results

inline Json extension_problem_to_json(const ExtensionProblem& pr) {
  Json j;
  j["model"] = {{"p", pr.qm.model.p}, {"n", pr.qm.model.n},
                {"m", pr.qm.model.m}, {"l", pr.qm.model.l}};
  Json qg = Json::array();
  for (PElem v : pr.qm.q.gens) qg.push_back({v.x, v.y});
  j["q_gens"] = std::move(qg);
  Json gs;
  gs["labels"] = pr.gside.names;
  gs["degrees"] = pr.gside.degrees;
  gs["e_action"] = pr.gside.e_action;
  if (!pr.gside.star_action.empty()) gs["star_action"] = pr.gside.star_action;
  gs["flags"] = {{"regular_orbit", pr.gside.regular_orbit},
                 {"free_star", pr.gside.free_star}};
  j["gside"] = std::move(gs);
  Json m = Json::array();
  for (const ZVec& col : pr.delta0) {
    Json row = Json::array();
    for (const mpz_class& v : col) row.push_back(v.get_si());
    m.push_back(std::move(row));
  }
  j["delta_zero_matrix"] = std::move(m);
  return j;
}

inline ExtensionProblem extension_problem_from_json(const Json& j) {
  const Json& mj = j.at("model");
  LocalBlockModel mod =
      LocalBlockModel::build(mj.at("p").get<long>(), mj.at("n").get<int>(),
                             mj.at("m").get<int>(), mj.at("l").get<long>());
  std::vector<PElem> gens;
  for (const Json& g : j.at("q_gens"))
    gens.push_back({g.at(0).get<long>(), g.at(1).get<long>()});
  ExtensionProblem pr;
  pr.qm = quotient_model(mod, span(mod.pgroup(), std::move(gens)));
  const Json& gs = j.at("gside");
  if (gs.contains("labels"))
    pr.gside.names = gs["labels"].get<std::vector<std::string>>();
  if (gs.contains("degrees"))
    pr.gside.degrees = gs["degrees"].get<std::vector<long>>();
  pr.gside.e_action =
      gs.at("e_action").get<std::vector<std::vector<long>>>();
  if (gs.contains("star_action"))
    pr.gside.star_action = gs["star_action"].get<std::vector<long>>();
  if (gs.contains("flags")) {
    pr.gside.regular_orbit = gs["flags"].value("regular_orbit", false);
    pr.gside.free_star = gs["flags"].value("free_star", false);
  }
  pr.gside.count = static_cast<long>(
      pr.gside.names.empty() ? (pr.gside.degrees.empty()
                                    ? pr.qm.label_count()
                                    : pr.gside.degrees.size())
                             : pr.gside.names.size());
  for (const Json& row : j.at("delta_zero_matrix")) {
    ZVec col;
    for (const Json& v : row) col.push_back(mpz_class(v.get<long>()));
    pr.delta0.push_back(std::move(col));
  }
  return pr;
}

inline Json extension_result_to_json(const QuotientModel& qm,
                                     const ExtensionResult& r) {
  Json j;
  j["status"] = r.ok ? "ok" : "error";
  j["case"] = case_name(qm.tag);
  if (!r.ok) {
    j["error"] = r.error;
    j["detail"] = r.detail;
    return j;
  }
  Json m = Json::array();
  for (const ZVec& col : r.ext.cols) {
    Json row = Json::array();
    for (const mpz_class& v : col) row.push_back(v.get_si());
    m.push_back(std::move(row));
  }
  j["extension_matrix"] = std::move(m);
  j["signs"] = r.bij.sign;
  j["image_labels"] = r.bij.perm;
  j["delta"] = r.delta;
  if (qm.tag == CaseTag::Case2)
    j["report"] = {{"a_before_strictness", r.a_before},
                   {"a_after_strictness", r.a_after}};
  return j;
}

}  // namespace iso
