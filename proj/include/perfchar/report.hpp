#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "perfchar/classify.hpp"
#include "perfchar/hilbert_kunz.hpp"
#include "perfchar/homology.hpp"
#include "perfchar/io.hpp"
#include "perfchar/valuation.hpp"
#include "perfchar/vanish.hpp"
#include "perfchar/witt.hpp"

namespace perfchar {

// All reports share an envelope; exact numbers travel as strings so nothing
// is rounded on the way out.
inline Json report_envelope(const std::string& kind) {
  Json j;
  j["schema"] = "perfchar/1";
  j["kind"] = kind;
  return j;
}

inline Json strings_of(const std::vector<PerfPoly>& v) {
  Json a = Json::array();
  for (const auto& f : v) a.push_back(f.str());
  return a;
}

inline Json strings_of(const std::vector<Rat>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(r.str());
  return a;
}

inline Json hk_to_json(const HKRecord& rec,
                       const std::optional<EHKEstimate>& est = {},
                       const std::optional<SeibertFit>& fit = {}) {
  Json j = report_envelope("hilbert-kunz");
  j["ring"] = ring_to_json(rec.ring.base);
  j["ideal"] = strings_of(rec.ideal);
  j["dim"] = rec.d;
  Json rows = Json::array();
  for (const auto& r : rec.rows) {
    Json row;
    row["n"] = r.n;
    row["q"] = r.q.str();
    row["length"] = r.length.str();
    row["ratio"] = r.ratio.str();
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  if (est) {
    Json e;
    e["conclusive"] = est->conclusive;
    e["candidate"] = est->candidate ? Json(est->candidate->str()) : Json();
    e["coefficients"] = strings_of(est->coefficients);
    e["residuals"] = strings_of(est->residuals);
    // The fit is exact on the computed rows only; nothing here certifies the
    // limit, so every emitted estimate carries the disclaimer.
    e["note"] = "exact fit over the computed rows; the limit value is not "
                "certified by this computation";
    j["e_hk"] = std::move(e);
  }
  if (fit) {
    Json f;
    f["b"] = strings_of(fit->b);
    f["residuals"] = strings_of(fit->residuals);
    f["exact"] = fit->exact;
    f["next_prediction"] = fit->next_prediction.str();
    j["seibert"] = std::move(f);
  }
  return j;
}

inline Json grade_to_json(const GradeResult& g) {
  Json j;
  j["value"] = g.value ? Json(*g.value) : Json();
  j["infinite"] = g.infinite;
  j["window"] = g.window;
  j["method"] = g.method;
  return j;
}

inline Json presented_module_to_json(const PresentedModule& m) {
  Json j;
  j["rank"] = m.rank;
  Json rels = Json::array();
  for (const auto& row : m.relations) {
    Json r = Json::array();
    for (const auto& f : row) r.push_back(f.str());
    rels.push_back(std::move(r));
  }
  j["relations"] = std::move(rels);
  return j;
}

inline Json tor_to_json(const TorResult& t) {
  Json j = report_envelope("tor");
  j["index"] = t.index;
  j["level"] = t.level;
  j["dimension"] = t.dimension ? Json(t.dimension->str()) : Json();
  j["presentation"] = presented_module_to_json(t.presentation);
  return j;
}

inline Json ext_to_json(const ExtResult& t) {
  Json j = report_envelope("ext");
  j["index"] = t.index;
  j["level"] = t.level;
  j["dimension"] = t.dimension ? Json(t.dimension->str()) : Json();
  j["presentation"] = presented_module_to_json(t.presentation);
  return j;
}

inline Json membership_to_json(const MembershipCertificate& c) {
  Json j;
  j["member"] = c.member;
  j["gen_coeffs"] = strings_of(c.gen_coeffs);
  j["rel_coeffs"] = strings_of(c.rel_coeffs);
  j["normal_form"] = c.normal_form.str();
  return j;
}

inline Json colimit_to_json(const PerfPoly& element,
                            const ColimitMembership& m) {
  Json j = report_envelope("colimit-membership");
  j["element"] = element.str();
  j["found"] = m.found;
  j["window_end"] = m.window_end;
  if (m.found) {
    j["level"] = m.level;
    j["generators"] = strings_of(m.ideal.gens);
    j["certificate"] = membership_to_json(m.cert);
  }
  return j;
}

inline Json vanish_to_json(const VanishReport& r) {
  Json j = report_envelope("vanish-check");
  j["samples"] = r.samples;
  j["found"] = r.found;
  j["all_found"] = r.found == r.samples;
  j["max_slack"] = r.max_slack;
  j["window"] = r.window;
  Json ds = Json::array();
  for (const auto& s : r.details) {
    Json d;
    d["element"] = s.element.str();
    d["source_level"] = s.source_level;
    d["found"] = s.found;
    d["found_level"] = s.found_level;
    d["slack"] = s.slack;
    ds.push_back(std::move(d));
  }
  j["details"] = std::move(ds);
  return j;
}

inline Json witt_table_to_json(const WittTableReport& r) {
  Json j = report_envelope("witt-table");
  j["p"] = r.p;
  j["length"] = r.n;
  j["modulus"] = r.modulus.str();
  j["bijective"] = r.bijective;
  j["additive"] = r.additive;
  j["multiplicative"] = r.multiplicative;
  j["ok"] = r.ok();
  return j;
}

inline Json witt_mod_p_to_json(const WittModPReport& r) {
  Json j = report_envelope("witt-mod-p");
  j["samples"] = r.samples;
  j["additive"] = r.additive;
  j["multiplicative"] = r.multiplicative;
  j["kernel_forward"] = r.kernel_forward;
  j["kernel_backward"] = r.kernel_backward;
  j["vf_identity"] = r.vf_identity;
  j["ok"] = r.ok();
  return j;
}

inline Json valuation_to_json(const ValuationValue& v, const PrimeChar& ch) {
  Json j;
  j["infinite"] = v.infinite;
  j["saturated"] = v.saturated;
  j["value"] = v.infinite ? Json() : Json(pexp_str(v.value, ch));
  return j;
}

inline Json ext1_to_json(const Ext1Report& r, const PrimeChar& ch) {
  Json j = report_envelope("ext1-chain");
  j["n"] = r.n;
  j["bound"] = pexp_str(r.bound, ch);
  j["head_value"] = valuation_to_json(r.head_value, ch);
  j["bound_ok"] = r.bound_ok;
  j["tight"] = r.tight;
  j["recovered"] = r.recovered ? Json(r.recovered->str()) : Json();
  j["alpha_ok"] = r.alpha_ok;
  return j;
}

inline Json rows_to_json(const std::vector<ReportRow>& rows) {
  Json a = Json::array();
  for (const auto& row : rows) {
    if (!citation_known(row.tag))
      throw Error("unregistered citation tag: " + row.tag);
    Json r;
    r["name"] = row.name;
    r["value"] = row.value;
    r["kind"] = row.kind;
    r["tag"] = row.tag;
    for (const auto& c : citation_registry())
      if (c.tag == row.tag) r["statement"] = c.statement;
    a.push_back(std::move(r));
  }
  return a;
}

inline Json classification_to_json(const ClassificationReport& rep) {
  Json j = report_envelope("classification");
  j["ring"] = rep.ring_id;
  j["normalization"] = rep.normalization_id;
  Json v;
  switch (rep.verdict.kind) {
    case CoherenceVerdict::Kind::Coherent:
      v["kind"] = "coherent";
      v["level"] = rep.verdict.level;
      j["coherent"] = true;
      break;
    case CoherenceVerdict::Kind::NotCoherent:
      v["kind"] = "not-coherent";
      v["witness"] = rep.verdict.witness;
      j["coherent"] = false;
      break;
    case CoherenceVerdict::Kind::Inconclusive:
      v["kind"] = "inconclusive";
      break;
  }
  v["max_level"] = rep.verdict.max_level;
  j["verdict"] = std::move(v);
  if (rep.gl_dim) j["gl_dim"] = *rep.gl_dim;
  if (rep.w_dim) j["w_dim"] = *rep.w_dim;
  j["rows"] = rows_to_json(rep.rows);
  j["classification"] = rep.classification;
  j["footnote"] = rep.footnote;
  return j;
}

inline Json invariants_to_json(const InvariantTable& tab) {
  Json j = report_envelope("invariants");
  j["ring"] = tab.ring_id;
  j["dim"] = tab.dim;
  j["gl_dim_bound"] = tab.bound;
  if (tab.gl_dim) j["gl_dim"] = *tab.gl_dim;
  if (tab.w_dim) j["w_dim"] = *tab.w_dim;
  j["pattern"] = tab.pattern;
  j["rows"] = rows_to_json(tab.rows);
  if (!tab.footnote.empty()) j["footnote"] = tab.footnote;
  return j;
}

// --- markdown rendering ----------------------------------------------------
//
// One deterministic renderer for every report: scalars inline, objects as
// bullet lists, arrays of objects as numbered items.  Key order follows the
// JSON, which follows emission order, so output is byte-stable.

namespace detail {

inline bool md_scalar(const Json& j) {
  return j.is_primitive() ||
         (j.is_array() &&
          std::all_of(j.begin(), j.end(),
                      [](const Json& e) { return e.is_primitive(); }));
}

inline std::string md_inline(const Json& j) {
  if (j.is_null()) return "-";
  if (j.is_string()) return "`" + j.get<std::string>() + "`";
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) s += ", ";
      s += md_inline(j[i]);
    }
    return s + "]";
  }
  return j.dump();
}

inline void md_emit(const Json& j, std::ostream& os, int depth) {
  std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    for (const auto& [key, val] : j.items()) {
      if (md_scalar(val)) {
        os << pad << "- **" << key << "**: " << md_inline(val) << "\n";
      } else {
        os << pad << "- **" << key << "**:\n";
        md_emit(val, os, depth + 1);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (md_scalar(j[i])) {
        os << pad << "- " << md_inline(j[i]) << "\n";
      } else {
        os << pad << "- (" << (i + 1) << ")\n";
        md_emit(j[i], os, depth + 1);
      }
    }
  } else {
    os << pad << md_inline(j) << "\n";
  }
}

}  // namespace detail

inline std::string to_markdown(const Json& j) {
  std::ostringstream os;
  std::string title = j.is_object() && j.contains("kind")
                          ? j.at("kind").get<std::string>()
                          : std::string("report");
  os << "# " << title << "\n\n";
  detail::md_emit(j, os, 0);
  return os.str();
}

}  // namespace perfchar
