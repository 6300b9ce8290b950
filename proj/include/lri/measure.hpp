#pragma once

#include <utility>
#include <vector>

#include "lri/interval.hpp"
#include "lri/rat.hpp"

namespace lri {

struct WeightedPiece {
  Rat weight;
  Interval support;
};

struct PointMass {
  Rat mass;
  Rat point;
};

// A signed measure on rational intervals: a finite mix of weighted Lebesgue
// pieces (piecewise-constant density) and Dirac atoms. Evaluation is exact
// and sigma-additive; local finiteness of the semivariation is automatic for
// this representation.
class RealMeasure {
 public:
  RealMeasure() = default;
  RealMeasure(std::vector<WeightedPiece> pieces, std::vector<PointMass> atoms);

  static RealMeasure lebesgue(const Interval& support, Rat weight = Rat(1));
  static RealMeasure dirac(Rat point, Rat mass = Rat(1));

  // weight * length(support ∩ i) summed over pieces, plus atom masses inside
  // i; length ignores end-type, membership does not.
  Rat eval(const Interval& i) const;

  const std::vector<WeightedPiece>& pieces() const { return pieces_; }
  const std::vector<PointMass>& atoms() const { return atoms_; }
  bool nonnegative() const;
  bool is_zero() const { return pieces_.empty() && atoms_.empty(); }

  RealMeasure scaled(const Rat& c) const;
  friend RealMeasure operator+(const RealMeasure& a, const RealMeasure& b);
  friend RealMeasure operator-(const RealMeasure& a, const RealMeasure& b);

  friend bool operator==(const RealMeasure& a, const RealMeasure& b) {
    return a.pieces_equal(b) && a.atoms_equal(b);
  }

 private:
  bool pieces_equal(const RealMeasure& b) const;
  bool atoms_equal(const RealMeasure& b) const;
  // Normal form: supports pairwise disjoint and sorted, weights nonzero,
  // atom points strictly increasing, masses nonzero.
  std::vector<WeightedPiece> pieces_;
  std::vector<PointMass> atoms_;
};

// |mu|+, |mu|-, |mu| computed from the representation's sign structure; for
// this measure class the variational suprema are attained at the partition
// splitting at density sign changes and isolating atom points.
struct JordanTriple {
  RealMeasure plus, minus, total;
};

JordanTriple jordan(const RealMeasure& m);

// The closed interval [-|mu|-(A), |mu|+(A)] for A the union of the region;
// region members must be pairwise disjoint.
std::pair<Rat, Rat> semivariation(const RealMeasure& m,
                                  const std::vector<Interval>& region);

struct RectMeasure {
  RealMeasure factor_x, factor_y;
};

inline RectMeasure product(RealMeasure mx, RealMeasure my) {
  return RectMeasure{std::move(mx), std::move(my)};
}

inline Rat eval_rect(const RectMeasure& p, const Interval& ix,
                     const Interval& iy) {
  return p.factor_x.eval(ix) * p.factor_y.eval(iy);
}

}  // namespace lri
