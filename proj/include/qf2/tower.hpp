// Finitely generated fields of characteristic 2, presented as towers
//
//   GF(2)(x_1,...,x_m)  ->  K_1 = K_0(sqrt(a_1))  ->  ...  ->  K_d
//
// (transcendentals at the bottom, then quadratic steps K -> K[r]/(r^2+a)).
// Such a field K has [K : K^2] = 2^m, and everything downstream — value
// sets of quasilinear forms, norm fields, Witt indices — reduces to linear
// algebra over K applied to coefficients of the square expansion
//
//   x = sum_e  c_e^2 * m_e,   m_e square-free monomials in a 2-basis,
//
// because the Frobenius is additive: sum lambda_i^2 x_i has expansion
// coefficients sum lambda_i c_{i,e}.
//
// Each quadratic step keeps the 2-basis size constant: r displaces the
// lexicographically first basis member that occurs in the expansion of a
// (lowest index j such that some coefficient c_e with e containing j is
// nonzero).  Basis positions are therefore stable indices 0..m-1 at every
// level, and expansion supports are bitmasks over those indices.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qf2/gf2k.hpp"
#include "qf2/gf2poly.hpp"

namespace qf2 {

// A tower element.  depth 0: a rational function of the bottom variables.
// depth d > 0: u + v*r_d with u, v of depth < d.  Elements are kept at
// minimal depth (a pair with v = 0 is stored as just u), so is_zero and
// equality are structural.
struct Fe {
  int depth = 0;
  Gf2RatFn rat;                                  // depth == 0
  std::shared_ptr<const std::pair<Fe, Fe>> sub;  // depth > 0: (u, v)

  Fe() = default;
  static Fe of(Gf2RatFn r) {
    Fe x;
    x.rat = std::move(r);
    return x;
  }
  static Fe zero() { return of(Gf2RatFn::zero()); }
  static Fe one() { return of(Gf2RatFn::one()); }
  static Fe var(int v) { return of(Gf2RatFn::var(v)); }

  // u + v*r at depth max(u,v)+1; compresses v == 0.
  static Fe pair(Fe u, Fe v, int depth) {
    if (v.is_zero() && u.depth < depth) return u;
    Fe x;
    x.depth = depth;
    x.sub = std::make_shared<const std::pair<Fe, Fe>>(std::move(u), std::move(v));
    return x;
  }

  bool is_zero() const {
    if (depth == 0) return rat.is_zero();
    return sub->first.is_zero() && sub->second.is_zero();
  }
  bool is_one() const { return depth == 0 && rat.is_one(); }

  // View as (u, v) at a given depth > this->depth is (this, 0).
  const Fe& u_at(int d) const { return depth == d ? sub->first : *this; }
  Fe v_at(int d) const { return depth == d ? sub->second : Fe::zero(); }
};

// Square expansion: mask over 2-basis indices -> coefficient (nonzero).
using Expansion = std::map<uint64_t, Fe>;

class FieldTower {
 public:
  FieldTower() = default;

  // --- construction -------------------------------------------------------
  int add_var(const std::string& name);
  // Adjoin sqrt(a).  a must be a non-square; throws std::domain_error
  // otherwise.  Throws std::length_error past the depth limit.
  int add_sqrt(const Fe& a, std::string name = "");
  void set_depth_limit(int n) { depth_limit_ = n; }

  // --- shape ---------------------------------------------------------------
  int num_vars() const { return (int)vars_.size(); }
  int depth() const { return (int)quads_.size(); }
  int basis_size() const { return num_vars(); }
  const std::string& var_name(int v) const { return vars_[v]; }
  int var_id(const std::string& name) const;  // -1 if absent
  const std::string& sqrt_name(int step) const { return quads_[step].name; }
  const Fe& sqrt_arg(int step) const { return quads_[step].a; }
  int displaced_index(int step) const { return quads_[step].displaced; }

  Fe var(int v) const { return Fe::var(v); }
  Fe r_elem(int step) const;                    // the adjoined sqrt, depth step+1
  Fe basis_elem(int level, int i) const;        // B_level[i]
  Fe basis_elem(int i) const { return basis_elem(depth(), i); }
  std::vector<Fe> two_basis() const;            // B_top
  std::string basis_label(int i) const;         // name of B_top[i]
  Fe basis_monomial(int level, uint64_t mask) const;

  // True if this tower extends `base`: same leading vars and quadratic steps.
  bool extends(const FieldTower& base) const;

  // --- arithmetic ----------------------------------------------------------
  Fe add(const Fe& x, const Fe& y) const;
  Fe mul(const Fe& x, const Fe& y) const;
  Fe square(const Fe& x) const;
  Fe inv(const Fe& x) const;
  Fe div(const Fe& x, const Fe& y) const { return mul(x, inv(y)); }
  bool equal(const Fe& x, const Fe& y) const { return add(x, y).is_zero(); }

  // --- square expansions ---------------------------------------------------
  Expansion expand(const Fe& x) const { return expand(x, depth()); }
  Expansion expand(const Fe& x, int level) const;
  Fe recombine(const Expansion& e, int level) const;
  Fe recombine(const Expansion& e) const { return recombine(e, depth()); }

  // Exact square root in the top field, or nullopt.
  std::optional<Fe> sqrt(const Fe& x) const;
  bool is_square(const Fe& x) const { return sqrt(x).has_value(); }

  // --- randomized specialization ------------------------------------------
  struct Spec {
    Gf2kField F;
    std::vector<uint64_t> var_vals;
    std::vector<uint64_t> quad_vals;
  };
  // Random point with all sqrt-arguments evaluable (denominators nonzero);
  // nullopt if `tries` resamples all fail.
  std::optional<Spec> specialize(int k, std::mt19937_64& rng, int tries = 64) const;
  // nullopt on division by zero at the point.
  std::optional<uint64_t> eval(const Fe& x, const Spec& s) const;

  // --- text ----------------------------------------------------------------
  std::string str(const Fe& x) const;
  std::string str_poly(const Gf2Poly& p) const;
  std::string descriptor() const;  // "F2(x,y); t:trans; sqrt:x*t^2"

 private:
  struct QuadStep {
    Fe a;            // depth step (element of the level below)
    int displaced;   // basis index replaced by r
    std::string name;
    Expansion a_exp;  // expansion of a over the basis below
  };

  // Convert an expansion over B_{level-1} of an element of K_{level-1} to an
  // expansion over B_level (coefficients of depth `level`).  Masks keep
  // bit j = displaced index free; the caller reassigns bit j for the r-part.
  Expansion convert_up(const Expansion& e, int level) const;

  std::vector<std::string> vars_;
  std::vector<int> var_level_;  // #quad steps present when the var was added
  std::vector<QuadStep> quads_;
  int depth_limit_ = 4;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

}  // namespace qf2
