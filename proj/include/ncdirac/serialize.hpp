#pragma once

#include <json.hpp>

#include "ncdirac/heisenberg.hpp"
#include "ncdirac/matrix_rep.hpp"

namespace ncdirac {

inline nlohmann::json expr_terms_json(const OperatorExpr& e) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [factors, coeff] : e.terms()) {
    nlohmann::json t;
    t["coefficient"] = render(coeff);
    nlohmann::json fs = nlohmann::json::array();
    for (const Atom& a : factors) fs.push_back(a.name());
    t["factors"] = fs;
    out.push_back(t);
  }
  return out;
}

inline nlohmann::json bundle_to_json(const HamiltonianBundle& b) {
  nlohmann::json out;
  auto part_entry = [](const OperatorExpr& e, const std::string& provenance,
                       const std::string& origin) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [factors, coeff] : e.terms()) {
      nlohmann::json t;
      t["coefficient"] = render(coeff);
      nlohmann::json fs = nlohmann::json::array();
      for (const Atom& a : factors) fs.push_back(a.name());
      t["factors"] = fs;
      t["provenance"] = provenance;
      t["paper_eq"] = origin;
      terms.push_back(t);
    }
    return terms;
  };
  nlohmann::json terms = nlohmann::json::array();
  const std::array<std::pair<std::string, std::string>, 6> origin = {{
      {"c*alpha.p", "dirac-hamiltonian"},
      {"-e*alpha.A", "dirac-hamiltonian"},
      {"e*Phi", "dirac-hamiltonian"},
      {"m*c^2*beta", "dirac-hamiltonian"},
      {"eta-term", "momentum-shift-deformation"},
      {"theta-term", "star-product-deformation"},
  }};
  auto parts = b.parts();
  for (std::size_t k = 0; k < parts.size(); ++k)
    for (auto& t : part_entry(parts[k].second, parts[k].first, origin[k].second))
      terms.push_back(t);
  out["terms"] = terms;
  out["commutative"] = render(b.h_commutative);
  out["space_deformed"] = render(b.h_space_deformed);
  out["deformed"] = render(b.h_nc);
  nlohmann::json notes = nlohmann::json::array();
  for (const auto& n : b.notes)
    notes.push_back({{"term", n.term}, {"derived", n.derived}, {"note", n.note}});
  out["notes"] = notes;
  return out;
}

inline nlohmann::json rate_to_json(const RateResult& r) {
  nlohmann::json out;
  out["observable"] = r.observable;
  nlohmann::json comps = nlohmann::json::array();
  for (int j = 1; j <= 3; ++j) {
    nlohmann::json c;
    c["axis"] = j;
    c["total"] = render(r.total(j));
    c["total_latex"] = render(r.total(j), RenderFormat::Latex);
    nlohmann::json groups;
    for (const auto& [g, e] : r.comp[j - 1].groups) groups[term_group_name(g)] = render(e);
    c["groups"] = groups;
    comps.push_back(c);
  }
  out["components"] = comps;
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : r.trace) trace.push_back({{"label", t.label}, {"value", render(t.value)}});
  out["trace"] = trace;
  return out;
}

inline nlohmann::json discrepancy_to_json(const DiscrepancyReport& rep) {
  nlohmann::json out;
  out["name"] = rep.name;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"term", r.term},
                    {"derived", r.derived},
                    {"paper", r.paper},
                    {"ratio", r.ratio},
                    {"match", r.match},
                    {"note", r.note}});
  out["rows"] = rows;
  out["all_match"] = rep.all_match();
  return out;
}

inline nlohmann::json consistency_to_json(const ConsistencyReport& rep) {
  nlohmann::json out;
  out["header"] = rep.header;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"relation", r.relation},
                    {"derived", render(r.derived)},
                    {"paper", render(r.paper)},
                    {"match", r.match}});
  out["rows"] = rows;
  return out;
}

inline nlohmann::json residual_entry_json(const std::string& identity, double residual,
                                          double tolerance) {
  return {{"identity", identity},
          {"residual", residual},
          {"tolerance", tolerance},
          {"pass", residual <= tolerance}};
}

}  // namespace ncdirac
