#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lri/interval.hpp"
#include "lri/step_profile.hpp"
#include "lri/xreal.hpp"

namespace lri {

// Terms carry an explicit sign side so a sum is always presented as
// C = -C^- ∪̇ C^+ with nonnegative magnitudes (possibly +inf) on both sides.
enum class Side { Pos, Neg };

struct Term {
  Side side;
  XNonneg magnitude;
  Interval set;

  XReal coeff() const {
    if (side == Side::Pos) return magnitude.to_xreal();
    return magnitude.is_inf() ? XReal::neg_inf() : XReal(Rat(-magnitude.value()));
  }
};

// A finite indexed family of (coefficient, interval) pairs — the engine's
// truncation of a countable step-function representation. Zero-coefficient
// and empty-set terms are dropped on construction.
class FormalSum {
 public:
  FormalSum() = default;
  explicit FormalSum(std::vector<Term> terms);

  // Sign side inferred from the coefficient; ~inf coefficients are rejected.
  static FormalSum from_signed(
      const std::vector<std::pair<XReal, Interval>>& pairs);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool nonnegative() const;
  bool finite_coeffs() const;

  FormalSum opposite() const;
  FormalSum positive_part() const;  // C^+ as a nonnegative sum
  FormalSum negative_part() const;  // C^- as a nonnegative sum

 private:
  std::vector<Term> terms_;
};

FormalSum disjoint_union(const FormalSum& a, const FormalSum& b);

// Pointwise value C^Σ: the extended sum of coefficients of covering terms.
StepProfile evaluate(const FormalSum& c);
XReal eval_at(const FormalSum& c, const Rat& x);

// Canonical representation of a step function: one term per profile part.
FormalSum fsum_from_profile(const StepProfile& f);

// Maps each child term to the parent term it came from.
struct DecompositionWitness {
  std::vector<std::size_t> parent_of;
};

// Decides whether child arises from parent by finitely many sign-respecting
// coefficient splits and exact set splits, grouped by the witness.
bool verify_decomposition(const FormalSum& parent, const FormalSum& child,
                          const DecompositionWitness& witness);

// ---- Procedure 1 ------------------------------------------------------

enum class Listing { Diagonal, RowMajor };

struct ColoredPiece {
  Rat coeff;  // > 0
  Interval set;
  std::size_t color;
  Rat lift_lo, lift_hi;  // lift [lift_lo, lift_hi) x set, hi - lo = coeff
  std::size_t input_index, term_index;  // progenitor
};

struct ColoredPieces {
  std::vector<ColoredPiece> pieces;
  std::size_t input_count = 0;

  // The nonnegative formal sum of one color class.
  FormalSum color_class(std::size_t color) const;
  // The decomposition of one input induced by the pieces, with its witness
  // into that input's term list.
  std::pair<FormalSum, DecompositionWitness> input_decomposition(
      std::size_t input) const;
};

// Sweeps the listed terms, set-decomposing onto the joint atom partition and
// cutting each coefficient at every previously attained partial-sum level of
// any input over that atom. The piece covering levels [u,v) gets color equal
// to the number of *other* inputs whose running total on the atom exceeds u.
// Requires finite nonnegative coefficients.
ColoredPieces procedure1(const std::vector<FormalSum>& inputs, Listing listing);

// ---- Decomposition calculus (finite realizations) ----------------------

// e_min/e_max with profiles min/max of the inputs; the two color classes of
// Procedure 1 on {c, d}.
struct MinMaxResult {
  FormalSum e_min, e_max;
};
MinMaxResult minmax(const FormalSum& c, const FormalSum& d);

// Requires c^Σ <= d^Σ atomwise. c decomposes into c_prime and d into
// c_prime ∪̇ e.
struct SubdecompositionResult {
  FormalSum c_prime, e;
  DecompositionWitness c_to_cprime;       // child c_prime, parent c
  DecompositionWitness d_to_cprime_e;     // child c_prime ∪̇ e, parent d
};
SubdecompositionResult subdecompose_dominated(const FormalSum& c,
                                              const FormalSum& d);

// Requires c1^Σ == c2^Σ atomwise (values in [0,+inf]). Both inputs decompose
// into the result.
struct CommonRefinement {
  FormalSum refined;
  DecompositionWitness from_c1, from_c2;
};
CommonRefinement common_refine(const FormalSum& c1, const FormalSum& c2);

// Requires primed equality of the profiles. The four nonnegative sums with
// c^+ -> e_c ∪̇ e_plus, c^- -> e_c ∪̇ e_minus, d^+ -> e_d ∪̇ e_plus,
// d^- -> e_d ∪̇ e_minus; witnesses pair with children concatenated in the
// order written here.
struct FourCornerResult {
  FormalSum c_plus, c_minus, d_plus, d_minus;
  FormalSum e_c, e_minus, e_plus, e_d;
  DecompositionWitness w_c_plus, w_c_minus, w_d_plus, w_d_minus;
};
FourCornerResult four_corner(const FormalSum& c, const FormalSum& d);

}  // namespace lri
