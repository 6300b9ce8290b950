#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lri/integral.hpp"
#include "lri/measure.hpp"
#include "lri/step_profile.hpp"

namespace lri {

// An element of the Stonean lattice: a nonnegative finite-valued step
// profile. The Y1 operations and the Y2 truncation stay inside the class.
class StepLatticeElem {
 public:
  StepLatticeElem() = default;
  explicit StepLatticeElem(StepProfile p);  // validates nonneg finite
  static StepLatticeElem indicator(const Interval& on, Rat height = Rat(1));

  const StepProfile& profile() const { return profile_; }
  bool is_zero() const { return profile_.is_zero(); }

  friend bool operator==(const StepLatticeElem& a, const StepLatticeElem& b) {
    return a.profile_ == b.profile_;
  }

 private:
  StepProfile profile_;
};

enum class LatticeOp { Plus, Join, Meet, Monus, Cap };

StepLatticeElem lattice_combine(const StepLatticeElem& f,
                                const StepLatticeElem& g, LatticeOp kind);
StepLatticeElem lattice_cap(const StepLatticeElem& f, const Rat& d);

// A sigma-additive lattice functional given by integration against a backing
// measure; locally bounded variation is automatic for this class.
class DaniellFunctional {
 public:
  explicit DaniellFunctional(RealMeasure backing)
      : backing_(std::move(backing)) {}
  const RealMeasure& backing() const { return backing_; }

 private:
  RealMeasure backing_;
};

Rat functional_eval(const DaniellFunctional& F, const StepLatticeElem& f);

// (|mu~|+(f), |mu~|-(f)) via the Jordan split of the backing measure; the
// sup/inf over 0 <= g <= f is attained at g = f restricted to a sign set.
std::pair<Rat, Rat> functional_jordan(const DaniellFunctional& F,
                                      const StepLatticeElem& f);

// The pieces s_{n+1} - s_n of s_n = (sum_{k<n} (n-k) f_k) ∧ d; they sum to
// d * indicator(union of positivity sets).
std::vector<StepLatticeElem> level_decompose(
    const std::vector<StepLatticeElem>& fs, const Rat& d);

// mu({f > 1} \ {g > 1}) through the telescoping series of functional
// evaluations, never by thresholding the backing measure directly.
Rat measure_of_level_set(const DaniellFunctional& F, const StepLatticeElem& f,
                         const StepLatticeElem& g);

// One row of the representation table: a set of the level-set interval
// system (a finite disjoint union of intervals) with its measure.
struct RepresentationEntry {
  std::vector<Interval> set;  // normalized union of {f>1} \ {g>1}
  Rat value;
};

struct RepresentationTable {
  std::vector<RepresentationEntry> entries;
  // nullopt-free lookup: returns whether the set occurs and its value.
  bool lookup(const std::vector<Interval>& normalized_set, Rat* value) const;
};

// Tabulates the represented measure on every {f>1} \ {g>1} over the
// sublattice generated from the generators to the given closure depth
// (depth 0: the generators themselves, plus 0).
RepresentationTable represent(const DaniellFunctional& F,
                              const std::vector<StepLatticeElem>& generators,
                              std::size_t closure_depth = 0,
                              std::size_t max_lattice_size = 64);

// ---- Procedure 2 --------------------------------------------------------

struct LatticePiece {
  StepLatticeElem value;
  std::size_t color;
  StepLatticeElem lift_lo, lift_hi;  // lift_hi - lift_lo = value
  std::size_t input_index, term_index;
};

struct LatticePieces {
  std::vector<LatticePiece> pieces;
  std::size_t input_count = 0;
  StepProfile color_total(std::size_t color) const;
  StepProfile input_total(std::size_t input, std::size_t term) const;
};

enum class Listing2 { Diagonal, RowMajor };

// The lattice analogue of Procedure 1: each listed element is decomposed
// along clamped historical stage-totals; color-n pieces accumulate to the
// (n+1)-th greatest running total of the inputs.
LatticePieces procedure2(const std::vector<std::vector<StepLatticeElem>>& inputs,
                         Listing2 listing = Listing2::Diagonal);

}  // namespace lri
