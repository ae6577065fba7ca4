// Function fields of quasilinear quadrics, built as explicit towers: for
// anisotropic phi = <a_1,...,a_n>, F(phi) is a purely inseparable quadratic
// extension of a purely transcendental one,
//
//   F(phi) = F(t_2,...,t_n)( sqrt(c) ),  c = a_1^{-1} (a_2 t_2^2 + ... + a_n t_n^2),
//
// so isotropy indices over F(phi) (and over any explicit tower) reduce to the
// same expansion-rank machinery as everything else.
#pragma once

#include "qf2/qform.hpp"

namespace qf2 {

// The function field of the quadric {phi = 0}, together with provenance.
// phi is replaced by its anisotropic part first (the purely transcendental
// difference is invisible to every invariant computed downstream).
struct QuadricFF {
  TowerPtr L;              // the new tower; extends phi.F
  QForm src;               // the anisotropic part the tower was built on
  Fe pivot;                // a_1, the entry that was solved for
  std::vector<int> t_vars; // ids of the fresh transcendentals t_2..t_n in L
  Fe c;                    // the adjoined square root's argument
};

// Throws std::domain_error("quadric not integral") when dim anis(phi) < 2.
QuadricFF function_field(const QForm& phi, const RankOptions& opt = {});

// i0 of phi after scalar extension to L (L must extend phi's tower).
int i0_over(const QForm& phi, const TowerPtr& L, const RankOptions& opt = {});

// The first Witt jump: i1(phi) = i0(phi over F(phi)) - i0(phi), and the
// first anisotropic kernel phi_1 = anis(phi over F(phi)).
struct FirstJump {
  int i1 = 0;
  QForm phi1;    // over ff.L
  QuadricFF ff;
};
FirstJump i1_and_phi1(const QForm& phi, const RankOptions& opt = {});

// Iterated splitting tower phi = phi_0, phi_1, ... down to dimension 1.
struct SplitStep {
  TowerPtr field;
  int anis_dim;
  int jump;    // i0 gained at this step (0 for step 0)
  int lndeg;
};
struct SplittingRecord {
  std::vector<SplitStep> steps;
  bool complete = false;  // reached dim 1 within the step budget
};
SplittingRecord splitting_sequence(const QForm& phi, int max_steps = 6,
                                   const RankOptions& opt = {});

// Complementary form of a subform of an anisotropic quasi-Pfister form:
// for eta = pf(eta_gens) of dimension 2^{n+1} and phi a subform of eta with
// dim eta - dim phi >= 2, produces psi with eta ~= phi perp psi (the
// complement of the first lift of phi into the Pfister bilinear lift of
// eta) and the verified identity value
//
//   check = i0(phi over F(psi)) - i1(psi) - dim phi + 2^n   (must be 0).
struct CompSplit {
  QForm psi;
  int check = 0;
  QuadricFF ff;  // F(psi)
};
CompSplit complementary_split(const std::vector<Fe>& eta_gens, const QForm& phi,
                              const RankOptions& opt = {});

}  // namespace qf2
