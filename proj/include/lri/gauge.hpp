#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lri/interval.hpp"
#include "lri/measure.hpp"
#include "lri/step_profile.hpp"

namespace lri {

// A maximal filter of the finite-interval system: the point filter [a] and
// the one-sided limit filters [a+], [a-].
enum class StoneSide { At, RightLimit, LeftLimit };

struct StonePoint {
  Rat base;
  StoneSide side = StoneSide::At;
};

bool stone_member(const Interval& i, const StonePoint& p);
inline Rat stone_lim(const StonePoint& p) { return p.base; }

// A piecewise-constant positive radius over a partition of the domain.
class Gauge {
 public:
  struct Cell {
    Interval where;
    Rat delta;
  };
  explicit Gauge(std::vector<Cell> cells);
  static Gauge constant(const Interval& domain, Rat delta);
  const std::vector<Cell>& cells() const { return cells_; }
  Rat delta_at(const Rat& x) const;  // DomainError off the partition

 private:
  std::vector<Cell> cells_;
};

// A tag system (D, h) with h factoring through a finite partition of the
// support: every partition cell carries one assigned interval containing it.
class TagSystem {
 public:
  struct Cell {
    Interval cell;
    Interval assigned;  // h on this cell; cell ⊆ assigned
  };

  TagSystem(Interval support, std::vector<Cell> cells);
  const Interval& support() const { return support_; }
  const std::vector<Cell>& cells() const { return cells_; }
  // h(x): the assigned interval of the partition cell containing x.
  const Interval& h_at(const Rat& x) const;

 private:
  Interval support_;
  std::vector<Cell> cells_;
};

// h(x) = (x - delta(x), x + delta(x)) ∩ closure(domain), realized on a
// bisection refinement of the gauge partition (cells no longer than half
// the local radius).
TagSystem gauge_to_tag_system(const Interval& domain, const Gauge& g);

// A tag system finer than both inputs: common partition refinement with
// intersected assignments. Supports must agree.
TagSystem refine_tags(const TagSystem& t1, const TagSystem& t2);

struct TaggedDivision {
  std::vector<Interval> cells;
  std::vector<StonePoint> tags;  // one per cell
};

// Greedy left-to-right sweep: runs of partition cells are merged while they
// stay inside the first cell's assignment. Satisfies DT1 + DT2.
TaggedDivision mcshane_division(const TagSystem& t);

// Bisection with in-cell tags; satisfies DT1 + DT2' (tag ∈ cell ⊆ h(tag)).
TaggedDivision kh_division(const TagSystem& t);

// Independent recheck of DT1 + DT2 (and DT2' when kh is set).
bool check_division(const TagSystem& t, const TaggedDivision& d, bool kh,
                    std::string* why = nullptr);

// Σ f(lim tag) * m(cell); exact for step profiles.
Rat riemann_sum(const StepProfile& f, const RealMeasure& m,
                const TaggedDivision& d);
double riemann_sum(const std::function<double(double)>& f,
                   const RealMeasure& m, const TaggedDivision& d);

enum class DivisionKind { McShane, KurzweilHenstock };

struct ConvergenceRow {
  Rat mesh;  // largest division cell length
  Rat sum;
  Rat abs_error;
};

std::vector<ConvergenceRow> convergence_table(const StepProfile& f,
                                              const RealMeasure& m,
                                              const Interval& domain,
                                              const std::vector<Gauge>& gauges,
                                              DivisionKind kind,
                                              const Rat& exact);

struct ConvergenceRowF {
  Rat mesh;
  double sum;
  double abs_error;
};

std::vector<ConvergenceRowF> convergence_table(
    const std::function<double(double)>& f, const RealMeasure& m,
    const Interval& domain, const std::vector<Gauge>& gauges,
    DivisionKind kind, double exact);

}  // namespace lri
