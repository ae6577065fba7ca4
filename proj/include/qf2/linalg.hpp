// Linear algebra over tower fields, in the coordinates given by square
// expansions (sparse vectors indexed by 2-basis bitmasks).
//
// The hybrid rank routine specializes coefficients into GF(2^k) at random
// points (Schwartz–Zippel).  Specialization is a ring homomorphism wherever
// denominators survive, so a vector that stays independent at the point is
// certainly independent; claimed dependencies are always re-verified exactly
// (the witness is needed downstream anyway).  On the rare false positive the
// whole computation falls back to the exact path.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qf2/tower.hpp"

namespace qf2 {

using SparseVec = std::map<uint64_t, Fe>;  // mask -> nonzero coefficient

// w += c * v
void axpy(const FieldTower& T, SparseVec& w, const Fe& c, const SparseVec& v);
SparseVec scale(const FieldTower& T, const Fe& c, const SparseVec& v);

// Exact row echelon with combination tracking.
class Echelon {
 public:
  explicit Echelon(const FieldTower& T) : T_(&T) {}

  // Inserts if independent of the current rows; returns true then.  If
  // dependent and witness is non-null, fills it with coefficients over the
  // previously inserted vectors (in insertion order) expressing v.
  bool insert(const SparseVec& v, std::vector<Fe>* witness = nullptr);
  // Like insert but never modifies the echelon; nullopt if independent.
  std::optional<std::vector<Fe>> reduce(const SparseVec& v) const;
  // Residual of v after elimination (empty iff dependent).
  SparseVec residual(const SparseVec& v) const;

  int rank() const { return (int)rows_.size(); }
  int inserted() const { return n_inserted_; }

 private:
  struct Row {
    SparseVec v;            // pivot coefficient normalized to 1
    std::vector<Fe> combo;  // expression over inserted originals
    uint64_t pivot;
  };
  void eliminate(SparseVec& v, std::vector<Fe>& combo) const;

  const FieldTower* T_;
  std::vector<Row> rows_;
  int n_inserted_ = 0;
};

struct RankOptions {
  bool use_mc = true;
  int k = 64;
  int trials = 2;
  uint64_t seed = 0x9e3779b97f4a7c15ull;
};

struct SelectResult {
  std::vector<int> independent;  // increasing; the greedy earliest maximal set
  // (row index, witness over the independent rows preceding it)
  std::vector<std::pair<int, std::vector<Fe>>> dependent;
  bool mc_used = false;
};

// Greedy earliest maximal independent subsequence, with exact witnesses for
// every dependent row.
SelectResult select_independent(const FieldTower& T, const std::vector<SparseVec>& rows,
                                const RankOptions& opt = {});

// Serial exact reference (used by tests and the benchmark).
SelectResult select_independent_exact(const FieldTower& T,
                                      const std::vector<SparseVec>& rows);

// Basis of span(U) ∩ span(V).
std::vector<SparseVec> intersect_subspaces(const FieldTower& T,
                                           const std::vector<SparseVec>& U,
                                           const std::vector<SparseVec>& V);

// 2-independence of x_1..x_n over T: [T^2(x_1..x_n) : T^2] = 2^n, i.e. all
// 2^n square-free products of the x_i are linearly independent over T^2.
bool two_independent(const FieldTower& T, const std::vector<Fe>& elems,
                     const RankOptions& opt = {});

// F^2-linear span tester: membership of new elements in the F^2-span of a
// growing generating set (the workhorse behind value sets and norm fields).
class SquareSpan {
 public:
  SquareSpan(const FieldTower& T, RankOptions opt = {}) : T_(&T), ech_(T), opt_(opt) {}
  // Returns witness lambda (over previously added generators) if
  // x = sum lambda_i^2 g_i, else adds x as a new generator and returns nullopt.
  std::optional<std::vector<Fe>> add(const Fe& x);
  bool contains(const Fe& x) const;
  int rank() const { return ech_.rank(); }

 private:
  const FieldTower* T_;
  Echelon ech_;
  RankOptions opt_;
};

}  // namespace qf2
