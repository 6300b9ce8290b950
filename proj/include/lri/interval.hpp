#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lri/rat.hpp"

namespace lri {

// A finite rational interval of any end-type. Degenerate singletons are
// first-class; anything below a singleton normalizes to the empty sentinel.
class Interval {
 public:
  Interval() : empty_(true), lo_closed_(false), hi_closed_(false) {}
  Interval(Rat lo, bool lo_closed, Rat hi, bool hi_closed);

  static Interval empty() { return Interval(); }
  static Interval closed(Rat lo, Rat hi) {
    return Interval(std::move(lo), true, std::move(hi), true);
  }
  static Interval half_open(Rat lo, Rat hi) {  // [lo, hi)
    return Interval(std::move(lo), true, std::move(hi), false);
  }
  static Interval open(Rat lo, Rat hi) {
    return Interval(std::move(lo), false, std::move(hi), false);
  }
  static Interval singleton(Rat p) {
    Rat q = p;
    return Interval(std::move(p), true, std::move(q), true);
  }

  bool is_empty() const { return empty_; }
  bool is_singleton() const { return !empty_ && lo_ == hi_; }
  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  bool lo_closed() const { return lo_closed_; }
  bool hi_closed() const { return hi_closed_; }

  Rat length() const { return empty_ ? Rat(0) : Rat(hi_ - lo_); }
  bool contains(const Rat& x) const;
  std::string str() const;

  friend bool operator==(const Interval& a, const Interval& b) {
    if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.lo_closed_ == b.lo_closed_ &&
           a.hi_closed_ == b.hi_closed_;
  }
  friend bool operator!=(const Interval& a, const Interval& b) {
    return !(a == b);
  }
  // Lexicographic order for deterministic sorting; empty sorts first.
  friend bool operator<(const Interval& a, const Interval& b);

 private:
  bool empty_;
  Rat lo_, hi_;
  bool lo_closed_, hi_closed_;
};

Interval intersect(const Interval& a, const Interval& b);

// i \ j as at most two disjoint intervals in left-to-right order.
std::vector<Interval> subtract(const Interval& i, const Interval& j);

inline bool disjoint(const Interval& a, const Interval& b) {
  return intersect(a, b).is_empty();
}
inline bool interval_subset(const Interval& inner, const Interval& outer) {
  return intersect(inner, outer) == inner;
}

// The flat refinement of a finite family: pairwise-disjoint intervals, sorted
// by left endpoint, dividing every member (and hence every constructible
// combination of members). origin_map[k] lists the atoms composing family[k].
struct AtomPartition {
  std::vector<Interval> atoms;
  std::vector<std::vector<std::size_t>> origin_map;
};

AtomPartition exact_decompose(const std::vector<Interval>& family);

// The unmerged elementary cells of a family: the line split at every
// endpoint into alternating singletons and open intervals, contiguous left
// to right, with per-cell membership. exact_decompose merges runs of these.
struct CellScan {
  std::vector<Interval> cells;
  std::vector<std::vector<bool>> membership;  // cell x input
};
CellScan scan_cells(const std::vector<Interval>& family);

// Minimal sorted disjoint list with the same union; equal unions have
// identical normal forms.
std::vector<Interval> normalize_union(const std::vector<Interval>& family);

inline bool member(const Rat& q, const Interval& i) { return i.contains(q); }

// Any rational inside the interval (midpoint); requires non-empty.
Rat interval_sample(const Interval& i);

}  // namespace lri
