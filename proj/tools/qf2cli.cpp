// Command-line front end: form arithmetic, invariants, construction and
// verification suites.  All structured output is JSON on stdout.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qf2/harness.hpp"
#include "qf2/parse.hpp"

using nlohmann::json;
using namespace qf2;

namespace {

json diag_json(const FieldTower& T, const std::vector<Fe>& diag) {
  json a = json::array();
  for (const Fe& e : diag) a.push_back(T.str(e));
  return a;
}

json bform_json(const BForm& b) {
  return {{"diag", diag_json(*b.F, b.diag)}, {"h_planes", b.h_planes}, {"dim", b.dim()}};
}

json qform_json(const QForm& q) {
  return {{"diag", diag_json(*q.F, q.diag)}, {"dim", q.dim()}};
}

// "x1*pf(a,b); pf(c,d); ..." -> PfisterTerm list over T
std::vector<PfisterTerm> parse_terms(const FieldTower& T, const std::string& s) {
  std::vector<PfisterTerm> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t end = s.find(';', pos);
    if (end == std::string::npos) end = s.size();
    std::string piece = s.substr(pos, end - pos);
    pos = end + 1;
    size_t pf = piece.find("pf(");
    if (pf == std::string::npos) throw ParseError("term without pf(...): " + piece);
    size_t close = piece.rfind(')');
    if (close == std::string::npos || close < pf) throw ParseError("unbalanced pf(...)");
    PfisterTerm t;
    std::string head = piece.substr(0, pf);
    size_t star = head.rfind('*');
    std::string scalar = star == std::string::npos ? head : head.substr(0, star);
    while (!scalar.empty() && isspace((unsigned char)scalar.back())) scalar.pop_back();
    t.scalar = scalar.empty() ? Fe::one() : parse_elem(T, scalar);
    t.gens = parse_elem_list(T, piece.substr(pf + 3, close - pf - 3));
    if (t.gens.empty()) throw ParseError("empty pf()");
    out.push_back(std::move(t));
  }
  if (out.empty()) throw ParseError("no terms");
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact quadratic/bilinear form calculator over char-2 function fields"};
  app.require_subcommand(1);

  std::string field = "F2(x,y,z)", form, form2, gens, cert, terms, suite, out_path;
  std::string kind;
  int n = 0, i = 0, a = 0, b = 0, dim = 0, max_steps = 6, kn = 0;
  uint64_t seed = 0;
  int budget = 0;
  bool exact = false, trace = false, want_i1 = false;

  auto add_common = [&](CLI::App* c, bool needs_form = true) {
    c->add_option("--field", field, "tower descriptor, e.g. \"F2(x,y); sqrt:x\"");
    if (needs_form) c->add_option("--form", form, "form expression")->required();
    c->add_flag("--exact", exact, "disable the Monte Carlo rank pre-pass");
  };

  auto* bf = app.add_subcommand("bf", "bilinear form operations");
  bf->require_subcommand(1);
  auto* bf_reduce = bf->add_subcommand("reduce", "Witt reduction");
  add_common(bf_reduce);
  bf_reduce->add_flag("--trace", trace, "include the reduction trace");
  auto* bf_det = bf->add_subcommand("det", "determinant and triviality");
  add_common(bf_det);
  auto* bf_iso = bf->add_subcommand("isometric", "isometry of anisotropic forms");
  add_common(bf_iso);
  bf_iso->add_option("--form2", form2, "second form")->required();
  auto* bf_fact = bf->add_subcommand("factorize", "quasi-Pfister factorization");
  add_common(bf_fact);
  bf_fact->add_option("--pfister", gens, "comma-separated generators")->required();

  auto* kato = app.add_subcommand("kato", "differential-form invariants");
  auto* kato_en = kato->add_subcommand("en", "e_n of a sum of scaled Pfister classes");
  kato_en->add_option("--field", field, "tower descriptor");
  kato_en->add_option("--n", kn, "expected fold (checked against the terms)");
  kato_en->add_option("--terms", terms, "\"x*pf(a,b); pf(c,d)\"")->required();

  auto* qf = app.add_subcommand("qf", "quasilinear form invariants");
  qf->require_subcommand(1);
  auto* qf_i1 = qf->add_subcommand("i1", "first Witt jump over the own function field");
  add_common(qf_i1);
  auto* qf_split = qf->add_subcommand("split-seq", "full splitting sequence");
  add_common(qf_split);
  qf_split->add_option("--max-steps", max_steps, "step budget");
  auto* qf_comp = qf->add_subcommand("comp-split", "complementary form inside pf(eta)");
  add_common(qf_comp);
  qf_comp->add_option("--eta", gens, "comma-separated eta generators")->required();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite id, or 'all'")->required();
  verify->add_option("--seed", seed, "rng seed");
  verify->add_option("--budget", budget, "time budget in seconds (scales case counts)");
  verify->add_flag("--exact", exact, "exact ranks only");
  verify->add_option("--out", out_path, "also write the JSON report to this file");

  auto* construct = app.add_subcommand("construct", "explicit I^n constructions");
  construct->add_option("kind", kind, "gap | optimality | witness")->required();
  construct->add_option("--n", n)->required();
  construct->add_option("--i", i);
  construct->add_option("--a", a);
  construct->add_option("--b", b);
  construct->add_option("--dim", dim);
  construct->add_flag("--i1", want_i1, "also compute i1 (optimality, n <= 3)");

  auto* decomp = app.add_subcommand("decompose", "structure recovery");
  auto* dec_alb = decomp->add_subcommand("albert", "c tensor d with d an Albert form");
  add_common(dec_alb);
  dec_alb->add_option("--n", n, "2 or 3")->required();
  dec_alb->add_option("--cert", cert, "I^n certificate, \"x*pf(..); ...\" (n = 3)");

  CLI11_PARSE(app, argc, argv);
  RankOptions opt;
  opt.use_mc = !exact;

  try {
    if (bf_reduce->parsed()) {
      auto T = parse_tower(field);
      WittB w = witt_reduce(parse_bform(T, form), opt, trace);
      json j = {{"anis", bform_json(w.anis)}, {"i_W", w.i_W},  {"i_M", w.i_M},
                {"i_H", w.i_H},               {"i0", w.i0},
                {"m_scalars", diag_json(*T, w.m_scalars)}};
      if (trace) j["trace"] = w.trace;
      emit(j);
    } else if (bf_det->parsed()) {
      auto T = parse_tower(field);
      Fe d = determinant_b(parse_bform(T, form));
      emit({{"det", T->str(d)}, {"trivial", det_trivial(*T, d)}});
    } else if (bf_iso->parsed()) {
      auto T = parse_tower(field);
      emit({{"isometric", isometric(parse_bform(T, form), parse_bform(T, form2), opt)}});
    } else if (bf_fact->parsed()) {
      auto T = parse_tower(field);
      PfisterFactorization f =
          pfister_factorize(parse_bform(T, form), parse_elem_list(*T, gens), opt);
      json tj = json::array();
      for (auto& [s, lift] : f.terms)
        tj.push_back({{"scalar", T->str(s)}, {"lift", bform_json(lift)}});
      emit({{"complete", f.complete}, {"terms", tj}, {"residual", bform_json(f.residual)}});
    } else if (kato_en->parsed()) {
      auto T = parse_tower(field);
      auto ts = parse_terms(*T, terms);
      if (kn && (int)ts[0].gens.size() != kn)
        throw ParseError("--n disagrees with the term fold");
      DiffForm f = e_n(*T, ts);
      emit({{"n", ts[0].gens.size()}, {"zero", f.is_zero()}, {"form", str(*T, f)}});
    } else if (qf_i1->parsed()) {
      auto T = parse_tower(field);
      FirstJump j = i1_and_phi1(parse_qform(T, form), opt);
      emit({{"i1", j.i1},
            {"phi1", qform_json(j.phi1)},
            {"function_field", j.ff.L->descriptor()}});
    } else if (qf_split->parsed()) {
      auto T = parse_tower(field);
      SplittingRecord r = splitting_sequence(parse_qform(T, form), max_steps, opt);
      json st = json::array();
      for (auto& s : r.steps)
        st.push_back({{"anis_dim", s.anis_dim}, {"jump", s.jump}, {"lndeg", s.lndeg},
                      {"field", s.field->descriptor()}});
      emit({{"complete", r.complete}, {"steps", st}});
    } else if (qf_comp->parsed()) {
      auto T = parse_tower(field);
      CompSplit cs = complementary_split(parse_elem_list(*T, gens), parse_qform(T, form), opt);
      emit({{"psi", qform_json(cs.psi)}, {"check", cs.check},
            {"function_field", cs.ff.L->descriptor()}});
    } else if (verify->parsed()) {
      std::vector<std::string> ids =
          suite == "all" ? suite_names() : std::vector<std::string>{suite};
      json all = json::array();
      bool ok = true;
      for (const std::string& id : ids) {
        SuiteReport r = run_suite(id, seed, budget, exact);
        std::cout << id << ": " << r.passed << " passed, " << r.failed << " failed, "
                  << r.unverified << " unverified\n";
        ok = ok && r.ok();
        all.push_back(std::move(r.doc));
      }
      json doc = all.size() == 1 ? std::move(all[0]) : json{{"suites", std::move(all)}};
      if (!out_path.empty()) std::ofstream(out_path) << doc.dump(2) << "\n";
      else emit(doc);
      return ok ? 0 : 1;
    } else if (construct->parsed()) {
      if (kind == "gap") {
        GapInstance g = build_gap_form(n, i);
        emit({{"field", g.field->descriptor()}, {"form", bform_json(g.form)},
              {"dim", g.form.dim()}});
      } else if (kind == "optimality") {
        OptimalityInstance oi = build_optimality_form(n, i, a, b, want_i1, opt);
        json j = {{"field", oi.w.field->descriptor()}, {"form", bform_json(oi.w.form)},
                  {"dim", oi.w.dim},       {"predicted_dim", oi.predicted_dim},
                  {"lndeg", oi.lndeg},     {"predicted_lndeg", oi.predicted_lndeg},
                  {"fully_verified", oi.w.fully_verified}, {"notes", oi.w.notes}};
        if (oi.i1) j["i1"] = *oi.i1;
        emit(j);
      } else if (kind == "witness") {
        DimWitness w = dim_witness(n, dim);
        json j = {{"n", w.n}, {"dim", w.dim}, {"reachable", w.reachable},
                  {"fully_verified", w.fully_verified}, {"notes", w.notes}};
        if (w.reachable) {
          j["field"] = w.field->descriptor();
          j["form"] = bform_json(w.form);
        }
        emit(j);
      } else {
        std::cerr << "unknown construction '" << kind << "'\n";
        return 2;
      }
    } else if (dec_alb->parsed()) {
      auto T = parse_tower(field);
      BForm bform = parse_bform(T, form);
      PfisterCombination pc;
      if (!cert.empty()) pc.terms = parse_terms(*T, cert);
      AlbertDecomposition d =
          albert_decompose(bform, n, cert.empty() ? nullptr : &pc, opt);
      emit({{"verified", d.verified}, {"c_gens", diag_json(*T, d.c_gens)},
            {"d", diag_json(*T, d.d_entries)}, {"notes", d.notes}});
      return d.verified ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
