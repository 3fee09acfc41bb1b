#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "perfchar/report.hpp"
#include "perfchar/tilt.hpp"

namespace perfchar {

namespace detail {

inline void emit(const Json& j, const std::string& format, std::ostream& out) {
  if (format == "md")
    out << to_markdown(j);
  else
    out << j.dump(2) << "\n";
}

inline std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      std::string piece = text.substr(start, i - start);
      try {
        out.push_back(std::stoll(piece));
      } catch (const std::exception&) {
        throw Error("not an integer: '" + piece + "'");
      }
      start = i + 1;
    }
  }
  return out;
}

inline Json witt_coords_json(const std::vector<std::int64_t>& v) {
  Json a = Json::array();
  for (auto c : v) a.push_back(c);
  return a;
}

}  // namespace detail

// All subcommands print one JSON (or markdown) report to `out`; anything
// addressed to a human goes to `err`.  Exit codes: 0 done, 1 bad input,
// 2 resource limit hit or no verdict where one was asked for.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"exact computations in prime-characteristic perfect algebras",
               "perfchar"};
  app.require_subcommand(1);
  int rc = 0;

  auto add_format = [](CLI::App* cmd, std::string& fmt) {
    cmd->add_option("--format", fmt, "json or md")
        ->check(CLI::IsMember({"json", "md"}))
        ->capture_default_str();
  };

  // hk: Hilbert-Kunz length table, optionally with multiplicity estimate
  // and a polynomial fit over q = p^n.
  struct {
    std::string ring, ideal, format = "json";
    unsigned max_level = 3;
    int dim = -1;
    bool fit = false;
  } hk_o;
  auto* hk_c = app.add_subcommand(
      "hk", "lengths of Frobenius bracket powers and the leading coefficient");
  hk_c->add_option("--ring", hk_o.ring, "ring presentation file")->required();
  hk_c->add_option("--ideal", hk_o.ideal, "comma-separated generators")
      ->required();
  hk_c->add_option("--max-level", hk_o.max_level, "largest Frobenius twist");
  hk_c->add_option("--dim", hk_o.dim, "override the computed dimension");
  hk_c->add_flag("--fit-seibert", hk_o.fit,
                 "fit lengths by a polynomial in q with held-out rows");
  add_format(hk_c, hk_o.format);
  hk_c->callback([&]() {
    auto pres = load_ring_file(hk_o.ring);
    LevelRing lr{pres, 0};
    auto I = make_ideal(lr, parse_poly_list(hk_o.ideal, pres.ring));
    std::optional<int> dim;
    if (hk_o.dim >= 0) dim = hk_o.dim;
    auto rec = hk_sequence(I, hk_o.max_level, dim);
    std::optional<EHKEstimate> est;
    if (rec.rows.size() >= 3) est = e_hk_estimate(rec);
    std::optional<SeibertFit> fit;
    if (hk_o.fit) {
      std::vector<Rat> lengths;
      for (const auto& r : rec.rows) lengths.emplace_back(r.length);
      fit = seibert_fit(lengths, rec.d, pres.ring->ch.p);
    }
    detail::emit(hk_to_json(rec, est, fit), hk_o.format, out);
  });

  // grade: the three depth computations side by side.
  struct {
    std::string ring, ideal, module, format = "json";
    unsigned level = 0;
  } gr_o;
  auto* gr_c = app.add_subcommand(
      "grade", "Koszul, Cech-style and Ext-style grade of a sequence");
  gr_c->add_option("--ring", gr_o.ring)->required();
  gr_c->add_option("--ideal", gr_o.ideal, "comma-separated sequence")
      ->required();
  gr_c->add_option("--module", gr_o.module,
                   "cyclic module modulus, comma-separated");
  gr_c->add_option("--level", gr_o.level, "truncation level");
  add_format(gr_c, gr_o.format);
  gr_c->callback([&]() {
    auto pres = load_ring_file(gr_o.ring);
    LevelRing lr{pres, gr_o.level};
    auto seq = parse_poly_list(gr_o.ideal, pres.ring);
    std::vector<PerfPoly> mod;
    if (!gr_o.module.empty()) mod = parse_poly_list(gr_o.module, pres.ring);
    CyclicModule M{lr, mod};
    auto kos = koszul_grade(seq, M);
    auto cech = cech_grade(seq, M);
    auto ext = ext_grade(make_ideal(lr, seq), M);
    Json j = report_envelope("grade");
    j["ring"] = ring_to_json(pres);
    j["level"] = gr_o.level;
    j["sequence"] = strings_of(seq);
    j["module"] = strings_of(mod);
    j["koszul"] = grade_to_json(kos);
    j["cech"] = grade_to_json(cech);
    j["ext"] = grade_to_json(ext);
    j["agree"] = kos.value == cech.value && cech.value == ext.value &&
                 kos.infinite == cech.infinite && cech.infinite == ext.infinite;
    detail::emit(j, gr_o.format, out);
  });

  // resolve-colimit: search an element through the root filtration of an
  // ideal (or of a product of two).
  struct {
    std::string ring, roots, roots2, element, format = "json";
    unsigned window = 6;
  } rc_o;
  auto* rc_c = app.add_subcommand(
      "resolve-colimit", "membership in a root-closure ideal, level by level");
  rc_c->add_option("--ring", rc_o.ring)->required();
  rc_c->add_option("--roots", rc_o.roots, "root generators")->required();
  rc_c->add_option("--product-roots", rc_o.roots2,
                   "second ideal; search the product instead");
  rc_c->add_option("--element", rc_o.element)->required();
  rc_c->add_option("--window", rc_o.window, "levels to probe past the element");
  add_format(rc_c, rc_o.format);
  rc_c->callback([&]() {
    auto pres = load_ring_file(rc_o.ring);
    ColimitIdeal C{pres, parse_poly_list(rc_o.roots, pres.ring)};
    std::optional<ColimitIdeal> C2;
    if (!rc_o.roots2.empty())
      C2 = ColimitIdeal{pres, parse_poly_list(rc_o.roots2, pres.ring)};
    PerfPoly f = parse_poly(rc_o.element, pres.ring);
    auto m = colimit_membership(f, C, C2, f.level() + rc_o.window);
    detail::emit(colimit_to_json(f, m), rc_o.format, out);
    if (!m.found) rc = 2;
  });

  // tor / ext of cyclic modules at a fixed level.
  struct {
    std::string ring, left, right, format = "json";
    int index = 1;
    unsigned level = 0;
  } tor_o;
  auto* tor_c =
      app.add_subcommand("tor", "Tor of two cyclic modules over a level ring");
  tor_c->add_option("--ring", tor_o.ring)->required();
  tor_c->add_option("--left", tor_o.left, "modulus of the left module")
      ->required();
  tor_c->add_option("--right", tor_o.right, "modulus of the right module")
      ->required();
  tor_c->add_option("--index", tor_o.index)->required();
  tor_c->add_option("--level", tor_o.level);
  add_format(tor_c, tor_o.format);
  tor_c->callback([&]() {
    auto pres = load_ring_file(tor_o.ring);
    LevelRing lr{pres, tor_o.level};
    CyclicModule M{lr, parse_poly_list(tor_o.left, pres.ring)};
    CyclicModule N{lr, parse_poly_list(tor_o.right, pres.ring)};
    detail::emit(tor_to_json(tor(M, N, tor_o.index)), tor_o.format, out);
  });

  // vanish-check: sampled intersection-vs-product comparison.
  struct {
    std::string ring, left, right, format = "json";
    int samples = 20;
    unsigned window = 6;
  } va_o;
  auto* va_c = app.add_subcommand(
      "vanish-check", "do sampled intersection elements land in the product");
  va_c->add_option("--ring", va_o.ring)->required();
  va_c->add_option("--left-roots", va_o.left)->required();
  va_c->add_option("--right-roots", va_o.right)->required();
  va_c->add_option("--samples", va_o.samples);
  va_c->add_option("--window", va_o.window);
  add_format(va_c, va_o.format);
  va_c->callback([&]() {
    auto pres = load_ring_file(va_o.ring);
    ColimitIdeal I{pres, parse_poly_list(va_o.left, pres.ring)};
    ColimitIdeal J{pres, parse_poly_list(va_o.right, pres.ring)};
    detail::emit(vanish_to_json(vanish_check(I, J, va_o.samples, va_o.window)),
                 va_o.format, out);
  });

  // witt: ring tables and arithmetic over the prime field.
  struct {
    std::string format = "json";
    std::int64_t p = 2;
    int length = 2;
    bool table = false;
    std::vector<std::string> add, mul;
  } wi_o;
  auto* wi_c = app.add_subcommand(
      "witt", "truncated Witt vectors over the prime field");
  wi_c->add_option("--char", wi_o.p, "prime characteristic")->required();
  wi_c->add_option("--length", wi_o.length, "number of coordinates")
      ->required();
  wi_c->add_flag("--table", wi_o.table,
                 "check the isomorphism with integers mod p^length");
  wi_c->add_option("--add", wi_o.add, "two comma-separated coordinate lists")
      ->expected(2);
  wi_c->add_option("--mul", wi_o.mul, "two comma-separated coordinate lists")
      ->expected(2);
  add_format(wi_c, wi_o.format);
  wi_c->callback([&]() {
    int picked = (wi_o.table ? 1 : 0) + (wi_o.add.empty() ? 0 : 1) +
                 (wi_o.mul.empty() ? 0 : 1);
    if (picked != 1)
      throw Error("pick exactly one of --table, --add, --mul");
    if (wi_o.table) {
      detail::emit(witt_table_to_json(
                       witt_isomorphism_table(wi_o.p, wi_o.length)),
                   wi_o.format, out);
      return;
    }
    const auto& pair = wi_o.add.empty() ? wi_o.mul : wi_o.add;
    bool adding = !wi_o.add.empty();
    (void)PrimeChar(wi_o.p);  // reject composite characteristics early
    FpCoeffRing R{wi_o.p};
    auto lift = [&](const std::string& text) {
      std::vector<std::int64_t> raw = detail::parse_int_list(text);
      std::vector<FpCoeffRing::Elem> coords;
      for (auto c : raw) coords.push_back(R.from_int(c));
      return witt_make(R, wi_o.p, wi_o.length, coords);
    };
    auto a = lift(pair[0]), b = lift(pair[1]);
    auto c = adding ? witt_add(R, a, b) : witt_mul(R, a, b);
    Json j = report_envelope("witt-op");
    j["p"] = wi_o.p;
    j["length"] = wi_o.length;
    j["op"] = adding ? "add" : "mul";
    j["a"] = detail::witt_coords_json(a.coords);
    j["b"] = detail::witt_coords_json(b.coords);
    j["result"] = detail::witt_coords_json(c.coords);
    detail::emit(j, wi_o.format, out);
  });

  // tilt: inverse limit along Frobenius of a (possibly quotiented)
  // truncation, probed at one witness element.
  struct {
    std::string ring, witness, modulus, format = "json";
    int length = 3;
    int level = -1;
  } ti_o;
  auto* ti_c = app.add_subcommand(
      "tilt", "Frobenius inverse limit of a truncation, probed at a witness");
  ti_c->add_option("--ring", ti_o.ring)->required();
  ti_c->add_option("--length", ti_o.length, "coordinates in the limit")
      ->required();
  ti_c->add_option("--witness", ti_o.witness, "head coordinate to lift")
      ->required();
  ti_c->add_option("--level", ti_o.level, "truncation level (default: fit)");
  ti_c->add_option("--modulus", ti_o.modulus,
                   "quotient the truncation by these elements");
  add_format(ti_c, ti_o.format);
  ti_c->callback([&]() {
    auto pres = load_ring_file(ti_o.ring);
    if (ti_o.length < 1) throw Error("length must be positive");
    PerfPoly w = parse_poly(ti_o.witness, pres.ring);
    unsigned level = ti_o.level >= 0
                         ? static_cast<unsigned>(ti_o.level)
                         : w.level() + static_cast<unsigned>(ti_o.length) - 1;
    std::vector<PerfPoly> mod;
    if (!ti_o.modulus.empty()) mod = parse_poly_list(ti_o.modulus, pres.ring);
    TiltRing T = tilt(pres, level, ti_o.length, mod);
    FontaineElement a = fontaine_lift(T, w);
    Json j = report_envelope("tilt");
    j["ring"] = ring_to_json(pres);
    j["level"] = level;
    j["length"] = ti_o.length;
    j["perfect"] = T.perfect;
    j["modulus"] = strings_of(mod);
    j["witness"] = w.str();
    j["coords"] = strings_of(a.coords);
    j["is_zero"] = tilt_is_zero(T, a);
    // least p^k annihilating the witness, within the printable range
    Json nil = Json();
    FontaineElement v = a;
    Int q = 1;
    for (int k = 0; k <= ti_o.length; ++k) {
      if (tilt_is_zero(T, v)) {
        nil = q.str();
        break;
      }
      v = tilt_pow(T, v, Int(T.p));
      q *= T.p;
    }
    j["vanishing_power"] = nil;
    detail::emit(j, ti_o.format, out);
  });

  // valuation: min-exponent valuation on one-variable elements.
  struct {
    std::string element, format = "json";
    std::int64_t p = 2;
  } vl_o;
  auto* vl_c = app.add_subcommand(
      "valuation", "exponent valuation of a one-variable element");
  vl_c->add_option("--char", vl_o.p)->required();
  vl_c->add_option("--element", vl_o.element, "expression in x")->required();
  add_format(vl_c, vl_o.format);
  vl_c->callback([&]() {
    auto pres = make_presentation(PrimeChar(vl_o.p), {"x"}, {});
    PerfPoly f = parse_poly(vl_o.element, pres.ring);
    Json j = report_envelope("valuation");
    j["p"] = vl_o.p;
    j["element"] = f.str();
    j["valuation"] = valuation_to_json(perfect_valuation(f), pres.ring->ch);
    detail::emit(j, vl_o.format, out);
  });

  // ext1-check: build the compatibility chain from a seed and test the
  // head-valuation bound and the division recovery.
  struct {
    std::string seed, format = "json";
    std::int64_t p = 2;
    int length = 4;
  } e1_o;
  auto* e1_c = app.add_subcommand(
      "ext1-check", "head-valuation bound for a root-compatibility chain");
  e1_c->add_option("--char", e1_o.p)->required();
  e1_c->add_option("--length", e1_o.length, "chain length")->required();
  e1_c->add_option("--seed", e1_o.seed, "bottom element, expression in x")
      ->required();
  add_format(e1_c, e1_o.format);
  e1_c->callback([&]() {
    auto pres = make_presentation(PrimeChar(e1_o.p), {"x"}, {});
    PerfPoly x = PerfPoly::variable(pres.ring, 0);
    PerfPoly seed = parse_poly(e1_o.seed, pres.ring);
    auto chain = ext1_chain_from_seed(x, e1_o.length, seed);
    auto rep = ext1_chain_recovery(chain, x);
    detail::emit(ext1_to_json(rep, pres.ring->ch), e1_o.format, out);
  });

  // classify: the one-dimensional coherence verdict.
  struct {
    std::string ring, norm, emb, format = "json";
    int max_level = 3;
  } cl_o;
  auto* cl_c = app.add_subcommand(
      "classify", "coherence of the perfect closure of a curve");
  cl_c->add_option("--ring", cl_o.ring)->required();
  cl_c->add_option("--normalization", cl_o.norm,
                   "presentation of the normalization")
      ->required();
  cl_c->add_option("--embedding", cl_o.emb,
                   "file mapping ring generators into the normalization")
      ->required();
  cl_c->add_option("--max-level", cl_o.max_level, "largest Frobenius twist");
  add_format(cl_c, cl_o.format);
  cl_c->callback([&]() {
    auto rep = classify_curve(load_ring_file(cl_o.ring),
                              load_ring_file(cl_o.norm),
                              load_embedding_file(cl_o.emb), cl_o.max_level);
    detail::emit(classification_to_json(rep), cl_o.format, out);
    if (rep.verdict.kind == CoherenceVerdict::Kind::Inconclusive) rc = 2;
  });

  // invariants: dimension plus cited dimension bounds for a presentation.
  struct {
    std::string ring, format = "json";
  } in_o;
  auto* in_c = app.add_subcommand(
      "invariants", "dimension and cited homological bounds");
  in_c->add_option("--ring", in_o.ring)->required();
  add_format(in_c, in_o.format);
  in_c->callback([&]() {
    detail::emit(invariants_to_json(invariant_table(load_ring_file(in_o.ring))),
                 in_o.format, out);
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const ResourceExceeded& e) {
    err << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

}  // namespace perfchar
