// Microbenchmark: exact echelon rank selection vs. the Monte Carlo-assisted
// hybrid, on random sparse vectors with polynomial coefficients.
#include <chrono>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "qf2/linalg.hpp"
#include "qf2/tower.hpp"

using namespace qf2;

namespace {

Fe rand_poly(std::mt19937_64& rng, int nvars, int terms, int deg) {
  Gf2Poly p = Gf2Poly::zero();
  for (int t = 0, k = 1 + (int)(rng() % (uint64_t)terms); t < k; ++t) {
    Monomial m = Monomial::one();
    for (int d = (int)(rng() % (uint64_t)(deg + 1)); d > 0; --d)
      m = m * Monomial::var((int)(rng() % (uint64_t)nvars));
    p = p + Gf2Poly::from(m);
  }
  if (p.is_zero()) p = Gf2Poly::one();
  return Fe::of(Gf2RatFn::poly(p));
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank kernel benchmark: exact vs Monte Carlo hybrid"};
  int rows = 120, width = 24, density = 4, reps = 3;
  uint64_t seed = 1;
  app.add_option("--rows", rows, "number of vectors");
  app.add_option("--width", width, "ambient mask width (log2 of dimension)");
  app.add_option("--density", density, "nonzeros per vector");
  app.add_option("--reps", reps, "repetitions");
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  auto T = std::make_shared<FieldTower>();
  T->add_var("x");
  T->add_var("y");
  T->add_var("z");
  std::mt19937_64 rng(seed);

  for (int r = 0; r < reps; ++r) {
    std::vector<SparseVec> vecs(rows);
    for (auto& v : vecs) {
      // a few shared pivots make dependent rows likely
      for (int k = 0; k < density; ++k)
        v[rng() % (uint64_t)width] = rand_poly(rng, 3, 2, 2);
    }
    auto t0 = std::chrono::steady_clock::now();
    SelectResult ex = select_independent_exact(*T, vecs);
    double t_exact = ms_since(t0);

    RankOptions opt;
    opt.use_mc = true;
    t0 = std::chrono::steady_clock::now();
    SelectResult mc = select_independent(*T, vecs, opt);
    double t_mc = ms_since(t0);

    bool agree = ex.independent == mc.independent;
    std::cout << "rep " << r << ": rank " << ex.independent.size() << " exact " << t_exact
              << " ms, hybrid " << t_mc << " ms, agree " << (agree ? "yes" : "NO") << "\n";
    if (!agree) return 1;
  }
  return 0;
}
