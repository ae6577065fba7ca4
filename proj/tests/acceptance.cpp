// Acceptance gate: one line per criterion, PASS/FAIL, exact checks only.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "qf2/harness.hpp"
#include "qf2/quadric.hpp"

using namespace qf2;

namespace {

int failures = 0;

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void report(int num, const std::string& what, bool ok, double secs, double budget_s,
            const std::string& extra = "") {
  bool in_budget = budget_s <= 0 || secs <= budget_s;
  bool pass = ok && in_budget;
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  [%s, %.1fs%s]%s%s\n", num, pass ? "PASS" : "FAIL",
              what.c_str(), secs,
              budget_s > 0 ? (" / budget " + std::to_string((int)budget_s) + "s").c_str()
                           : "",
              extra.empty() ? "" : " -- ", extra.c_str());
  if (ok && !in_budget) std::printf("              (checks passed but budget exceeded)\n");
}

struct SuiteRun {
  SuiteReport r;
  double secs;
};

SuiteRun timed_suite(const std::string& id, uint64_t seed = 1, bool exact = true) {
  double t0 = now_s();
  SuiteReport r = run_suite(id, seed, 0, exact);
  return {std::move(r), now_s() - t0};
}

// all square-free monomials in x, y, z
std::vector<Fe> monomial_pool(const FieldTower& T) {
  std::vector<Fe> out;
  for (uint64_t mask = 0; mask < 8; ++mask) {
    Monomial m = Monomial::one();
    for (int v = 0; v < 3; ++v)
      if (mask >> v & 1) m = m * Monomial::var(v);
    out.push_back(Fe::of(Gf2RatFn::poly(Gf2Poly::from(m))));
  }
  return out;
}

}  // namespace

int main() {
  RankOptions exact_opt;
  exact_opt.use_mc = false;

  {  // 1. Hauptsatz suite
    SuiteRun s = timed_suite("hauptsatz");
    report(1, "hauptsatz: dim 0 or >= 2^n; equality cases are Pfister lifts",
           s.r.ok() && (int)s.r.doc["cases"].size() == 200, s.secs, 120);
  }
  {  // 2. Gap suite
    SuiteRun s = timed_suite("gap");
    report(2, "gap: anisotropic dims below 2^{n+1} avoid the forbidden interval",
           s.r.ok(), s.secs, 300);
  }
  {  // 3. Construction fidelity
    SuiteRun s = timed_suite("construction");
    report(3, "gap-form constructions: exact dimension 2^{n+1} - 2^i, det checks",
           s.r.ok() && s.r.passed == 6, s.secs, 60);
  }
  {  // 4. Optimality formulas
    SuiteRun s = timed_suite("optimality");
    report(4, "optimality forms: displayed dimension and lndeg = 2n+2-(a+b)", s.r.ok(),
           s.secs, 300);
  }
  {  // 5. i1 laws on the exhaustive dim <= 6 catalog
    double t0 = now_s();
    auto T = std::make_shared<FieldTower>();
    T->add_var("x");
    T->add_var("y");
    T->add_var("z");
    TowerPtr F = T;
    std::vector<Fe> mons = monomial_pool(*T);
    bool ok = true;
    int n_forms = 0;
    // subsets of the 8 square-free monomials, sizes 2..6: automatically anisotropic
    for (uint64_t mask = 0; mask < 256 && ok; ++mask) {
      int dim = __builtin_popcount((unsigned)mask);
      if (dim < 2 || dim > 6) continue;
      QForm phi{F, {}};
      for (int k = 0; k < 8; ++k)
        if (mask >> k & 1) phi.diag.push_back(mons[k]);
      ++n_forms;
      int i1 = i1_and_phi1(phi, exact_opt).i1;
      int r = 1;
      while ((1 << r) < i1) ++r;  // minimal r with i1 <= 2^r
      ok = ok && (dim - i1) % (1 << r) == 0;
      if (dim == 6) ok = ok && i1 == 2;
      NeighbourInfo nb = neighbour_test(phi, exact_opt);
      if (nb.is_neighbour) ok = ok && i1 == dim - (1 << nb.s);
    }
    report(5, "i1 congruence on the exhaustive dim<=6 catalog (" +
                  std::to_string(n_forms) + " forms)",
           ok, now_s() - t0, 600);
  }
  {  // 6. quarter-i1 theorem, with the per-case budget on dim-8 forms
    SuiteRun s = timed_suite("quarter_i1");
    bool per_case = true;
    for (auto& c : s.r.doc["cases"])
      if (c["name"].get<std::string>().find("dim8") != std::string::npos)
        per_case = per_case && c["ms"].get<double>() <= 60000.0;
    report(6, "i1 = 2^{n-2} iff lndeg = n+1 and an (n-2)-fold divisor exists",
           s.r.ok() && per_case, s.secs, 0,
           per_case ? "" : "a dim-8 case exceeded 60s");
  }
  {  // 7. separation + norm-degree drop (corollary suite covers both)
    double t0 = now_s();
    SuiteReport r = run_suite("corollary", 1, 0, true);
    // explicit separation catalog: dim phi <= 2^s < dim psi forces anisotropy
    auto T = std::make_shared<FieldTower>();
    T->add_var("x");
    T->add_var("y");
    T->add_var("z");
    TowerPtr F = T;
    Fe x = T->var(0), y = T->var(1), z = T->var(2);
    bool sep = true;
    std::vector<QForm> big = {pfister_qf(F, {x, y}), QForm{F, {Fe::one(), x, y, z, T->mul(x, y)}},
                              QForm{F, {x, y, z}}};
    std::vector<QForm> small = {QForm{F, {Fe::one(), x}}, QForm{F, {y, z}},
                                QForm{F, {Fe::one(), T->mul(y, z)}}};
    for (const QForm& psi : big) {
      QuadricFF ff = function_field(psi, exact_opt);
      for (const QForm& phi : small) {
        int s = 0;
        while ((1 << (s + 1)) < psi.dim()) ++s;
        if (phi.dim() <= (1 << s)) sep = sep && i0_over(phi, ff.L, exact_opt) == 0;
      }
    }
    report(7, "separation theorem and lndeg drop by exactly 1 on isotropy",
           r.ok() && sep, now_s() - t0, 0);
  }
  {  // 8. Kato suite
    SuiteRun s = timed_suite("kato");
    report(8, "e_n: dlog values, I^{n+1} certificates, det criterion (100 random)",
           s.r.ok(), s.secs, 60);
  }
  {  // 9. Albert decomposition
    SuiteRun s = timed_suite("albert");
    report(9, "albert_decompose verified on gap(2,1) and >= 5 dim-12 variants",
           s.r.ok() && (int)s.r.doc["cases"].size() >= 7, s.secs, 300);
  }
  {  // 10. Cross-checks
    SuiteRun s = timed_suite("crosschecks");
    report(10, "quadratic-extension identity, divisibility descent, isotropy lemma",
           s.r.ok(), s.secs, 0);
  }
  {  // 11. Desk-scale limits reported honestly
    SuiteRun s = timed_suite("unverified");
    bool flagged = s.r.failed == 0 && s.r.unverified == (int)s.r.doc["cases"].size();
    for (auto& c : s.r.doc["cases"]) {
      std::string status = c["data"].value("status", "");
      flagged = flagged && status.rfind("constructed, partially verified", 0) == 0;
      std::printf("              %s: %s\n", c["name"].get<std::string>().c_str(),
                  status.c_str());
    }
    report(11, "n in {4,5} witnesses and the n>=5 i1=1 claim flagged as unverified",
           flagged, s.secs, 0);
  }

  std::printf("%s (%d criteria failed)\n", failures ? "ACCEPTANCE: FAIL" : "ACCEPTANCE: PASS",
              failures);
  return failures ? 1 : 0;
}
