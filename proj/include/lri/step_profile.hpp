#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "lri/interval.hpp"
#include "lri/xreal.hpp"

namespace lri {

// A function that is constant on finitely many disjoint rational intervals
// and 0 elsewhere. Kept in canonical form (sorted, zero parts dropped,
// touching equal-valued parts merged), so semantic equality is structural.
class StepProfile {
 public:
  StepProfile() = default;

  // Parts must be pairwise disjoint; canonicalizes.
  static StepProfile from_parts(std::vector<std::pair<Interval, XReal>> parts);
  static StepProfile constant(const Interval& on, XReal value);

  XReal at(const Rat& x) const;
  const std::vector<std::pair<Interval, XReal>>& parts() const {
    return parts_;
  }
  bool is_zero() const { return parts_.empty(); }
  bool finite_valued() const;
  bool nonneg() const;  // requires finite or +inf values, all >= 0

  std::vector<Interval> support() const;

  friend bool operator==(const StepProfile& a, const StepProfile& b) {
    return a.parts_ == b.parts_;
  }
  friend bool operator!=(const StepProfile& a, const StepProfile& b) {
    return !(a == b);
  }

 private:
  std::vector<std::pair<Interval, XReal>> parts_;
};

// Common-refinement view: disjoint atoms covering both supports, with both
// values spelled out (0 off-support). The workhorse for every exact
// "for all x" check.
struct AlignedAtom {
  Interval atom;
  XReal a, b;
};
std::vector<AlignedAtom> sp_align(const StepProfile& a, const StepProfile& b);

StepProfile sp_add(const StepProfile& a, const StepProfile& b);
StepProfile sp_scale(const StepProfile& a, const Rat& c);

// Lattice operations; finite-valued operands required.
StepProfile sp_min(const StepProfile& a, const StepProfile& b);
StepProfile sp_max(const StepProfile& a, const StepProfile& b);
StepProfile sp_monus(const StepProfile& a, const StepProfile& b);  // (a-b) ∨ 0
StepProfile sp_cap(const StepProfile& a, const Rat& d);            // a ∧ d

// Pointwise a <= b over finite values; returns a violating atom, else none.
std::optional<Interval> sp_leq_witness(const StepProfile& a,
                                       const StepProfile& b);
// Pointwise primed equality; returns a violating atom, else none.
std::optional<Interval> sp_primed_eq_witness(const StepProfile& a,
                                             const StepProfile& b);

}  // namespace lri
