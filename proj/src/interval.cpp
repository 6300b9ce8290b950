#include "lri/interval.hpp"

#include <algorithm>

#include "lri/error.hpp"

namespace lri {

Interval::Interval(Rat lo, bool lo_closed, Rat hi, bool hi_closed)
    : empty_(false),
      lo_(std::move(lo)),
      hi_(std::move(hi)),
      lo_closed_(lo_closed),
      hi_closed_(hi_closed) {
  if (lo_ > hi_ || (lo_ == hi_ && !(lo_closed_ && hi_closed_))) {
    empty_ = true;
    lo_ = hi_ = Rat(0);
    lo_closed_ = hi_closed_ = false;
  }
}

bool Interval::contains(const Rat& x) const {
  if (empty_) return false;
  if (x < lo_ || (x == lo_ && !lo_closed_)) return false;
  if (x > hi_ || (x == hi_ && !hi_closed_)) return false;
  return true;
}

std::string Interval::str() const {
  if (empty_) return "{}";
  if (is_singleton()) return "{" + rat_to_string(lo_) + "}";
  std::string s;
  s += lo_closed_ ? '[' : '(';
  s += rat_to_string(lo_) + "," + rat_to_string(hi_);
  s += hi_closed_ ? ']' : ')';
  return s;
}

bool operator<(const Interval& a, const Interval& b) {
  if (a.empty_ != b.empty_) return a.empty_;
  if (a.empty_) return false;
  if (a.lo_ != b.lo_) return a.lo_ < b.lo_;
  if (a.lo_closed_ != b.lo_closed_) return a.lo_closed_;
  if (a.hi_ != b.hi_) return a.hi_ < b.hi_;
  return a.hi_closed_ < b.hi_closed_;
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  Rat lo;
  bool lo_closed;
  if (a.lo() > b.lo()) {
    lo = a.lo();
    lo_closed = a.lo_closed();
  } else if (b.lo() > a.lo()) {
    lo = b.lo();
    lo_closed = b.lo_closed();
  } else {
    lo = a.lo();
    lo_closed = a.lo_closed() && b.lo_closed();
  }
  Rat hi;
  bool hi_closed;
  if (a.hi() < b.hi()) {
    hi = a.hi();
    hi_closed = a.hi_closed();
  } else if (b.hi() < a.hi()) {
    hi = b.hi();
    hi_closed = b.hi_closed();
  } else {
    hi = a.hi();
    hi_closed = a.hi_closed() && b.hi_closed();
  }
  return Interval(std::move(lo), lo_closed, std::move(hi), hi_closed);
}

CellScan scan_cells(const std::vector<Interval>& family) {
  CellScan out;
  std::vector<Rat> pts;
  for (const Interval& i : family) {
    if (i.is_empty()) continue;
    pts.push_back(i.lo());
    pts.push_back(i.hi());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return out;

  auto add_cell = [&](Interval cell, const Rat& probe) {
    std::vector<bool> sig(family.size());
    for (std::size_t k = 0; k < family.size(); ++k)
      sig[k] = family[k].contains(probe);
    out.cells.push_back(std::move(cell));
    out.membership.push_back(std::move(sig));
  };

  for (std::size_t k = 0; k < pts.size(); ++k) {
    add_cell(Interval::singleton(pts[k]), pts[k]);
    if (k + 1 < pts.size()) {
      Rat mid = (pts[k] + pts[k + 1]) / 2;
      add_cell(Interval::open(pts[k], pts[k + 1]), mid);
    }
  }
  return out;
}

namespace {

// Union of the contiguous cell run [first, last].
Interval merge_run(const CellScan& s, std::size_t first, std::size_t last) {
  const Interval& a = s.cells[first];
  const Interval& b = s.cells[last];
  return Interval(a.lo(), a.lo_closed() || a.is_singleton(), b.hi(),
                  b.hi_closed() || b.is_singleton());
}

}  // namespace

AtomPartition exact_decompose(const std::vector<Interval>& family) {
  AtomPartition out;
  out.origin_map.resize(family.size());
  CellScan s = scan_cells(family);
  std::size_t i = 0;
  while (i < s.cells.size()) {
    const auto& sig = s.membership[i];
    bool any = std::find(sig.begin(), sig.end(), true) != sig.end();
    std::size_t j = i;
    while (j + 1 < s.cells.size() && s.membership[j + 1] == sig) ++j;
    if (any) {
      std::size_t atom_idx = out.atoms.size();
      out.atoms.push_back(merge_run(s, i, j));
      for (std::size_t k = 0; k < family.size(); ++k)
        if (sig[k]) out.origin_map[k].push_back(atom_idx);
    }
    i = j + 1;
  }
  return out;
}

std::vector<Interval> normalize_union(const std::vector<Interval>& family) {
  CellScan s = scan_cells(family);
  std::vector<Interval> out;
  std::size_t i = 0;
  while (i < s.cells.size()) {
    auto any = [&](std::size_t c) {
      const auto& sig = s.membership[c];
      return std::find(sig.begin(), sig.end(), true) != sig.end();
    };
    if (!any(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < s.cells.size() && any(j + 1)) ++j;
    out.push_back(merge_run(s, i, j));
    i = j + 1;
  }
  return out;
}

std::vector<Interval> subtract(const Interval& i, const Interval& j) {
  if (i.is_empty()) return {};
  if (j.is_empty()) return {i};
  AtomPartition p = exact_decompose({i, j});
  std::vector<bool> in_j(p.atoms.size(), false);
  for (std::size_t a : p.origin_map[1]) in_j[a] = true;
  std::vector<Interval> kept;
  for (std::size_t a : p.origin_map[0])
    if (!in_j[a]) kept.push_back(p.atoms[a]);
  // Atoms abutting inside i \ j must be re-merged (j may only touch i's
  // boundary), so normalize.
  return normalize_union(kept);
}

Rat interval_sample(const Interval& i) {
  if (i.is_empty()) throw DomainError("sample of empty interval");
  if (i.is_singleton()) return i.lo();
  return (i.lo() + i.hi()) / 2;
}

}  // namespace lri
