#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lri/formal_sum.hpp"
#include "lri/measure.hpp"
#include "lri/step_profile.hpp"
#include "lri/xreal.hpp"

namespace lri {

// The four integrals of a representation: term-wise sums of
// |c|+ |mu|+(C) + |c|- |mu|-(C) and its mirror, with 0 * inf = 0.
struct VariationReport {
  XNonneg pos, neg, total;
  XReal overall;
};

VariationReport variations(const RealMeasure& m, const FormalSum& c);

// The overall sum when it is not ~inf; throws IndefiniteIntegral otherwise.
XReal riesz_integrate(const RealMeasure& m, const FormalSum& c);

// The representation-infima of the variations for a finite-valued step
// function, in closed form through the Jordan split of the measure.
struct BestVariations {
  XNonneg int_plus, int_minus, int_total;
};
BestVariations best_variations(const RealMeasure& m, const StepProfile& f);

// A function with certified step brackets at every dyadic refinement depth:
// piecewise-monotone rational polynomials.
class RefinableFunction {
 public:
  struct Piece {
    std::vector<Rat> poly;  // coefficients, constant term first
    Interval domain;
    bool increasing;
  };

  explicit RefinableFunction(std::vector<Piece> pieces);
  static RefinableFunction monomial(const Interval& domain, unsigned degree,
                                    bool increasing = true);

  Rat value_at(const Rat& x) const;
  const std::vector<Piece>& pieces() const { return pieces_; }

  // Minorant and majorant step profiles at 2^depth cells per piece.
  std::pair<StepProfile, StepProfile> bracket(std::size_t depth) const;

 private:
  std::vector<Piece> pieces_;
};

Rat poly_eval(const std::vector<Rat>& coeffs, const Rat& x);

// Lower/upper Darboux sums of the depth-k bracket; m must be nonnegative.
std::pair<Rat, Rat> darboux_bounds(const RealMeasure& m,
                                   const RefinableFunction& f,
                                   std::size_t depth);

struct SeriesResult {
  XReal value;
  XNonneg certified_tail;
  std::size_t truncation;
};

// Sum of term integrals under the truncated Beppo-Levi hypothesis (the
// negative variations of the supplied terms must stay finite); the caller
// certifies the tail bound.
SeriesResult series_integrate(const RealMeasure& m,
                              const std::vector<FormalSum>& terms,
                              const XNonneg& tail_total_var_bound);

struct NegligibilityCert {
  std::vector<Interval> intervals;
  std::size_t depth;
  Rat epsilon;
};

// Covers each point `depth` times by intervals whose |mu|-widths sum below
// epsilon; requires the measure to be atomless at the listed points.
NegligibilityCert negligible_certificate(const std::vector<Rat>& points,
                                         std::size_t depth, const Rat& epsilon,
                                         const RealMeasure& m);

// Independent recount of a certificate.
bool check_certificate(const NegligibilityCert& cert,
                       const std::vector<Rat>& points, const RealMeasure& m);

// c * indicator(f > d) computed by the telescoping series
// sum_n ((n+1)(f - f∧d))∧c - (n(f - f∧d))∧c, then cross-checked against
// direct thresholding. Requires d >= 0; stabilization must occur within cap.
StepProfile indicator_above(const StepProfile& f, const Rat& d, const Rat& c,
                            std::size_t cap);

}  // namespace lri
