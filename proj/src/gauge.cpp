#include "lri/gauge.hpp"

#include <algorithm>

#include "lri/error.hpp"

namespace lri {

bool stone_member(const Interval& i, const StonePoint& p) {
  if (i.is_empty()) return false;
  switch (p.side) {
    case StoneSide::At:
      return i.contains(p.base);
    case StoneSide::RightLimit:
      // base ∈ closure(i ∩ (base, +inf)): i reaches into (base, base + eps).
      return i.lo() <= p.base && p.base < i.hi();
    case StoneSide::LeftLimit:
      return i.lo() < p.base && p.base <= i.hi();
  }
  return false;
}

Gauge::Gauge(std::vector<Cell> cells) : cells_(std::move(cells)) {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].delta <= 0)
      throw DomainError("gauge radius must be positive");
    if (cells_[i].where.is_empty())
      throw DomainError("gauge cell with empty interval");
    for (std::size_t j = i + 1; j < cells_.size(); ++j)
      if (!disjoint(cells_[i].where, cells_[j].where))
        throw DomainError("gauge cells overlap");
  }
  std::sort(cells_.begin(), cells_.end(),
            [](const Cell& a, const Cell& b) { return a.where < b.where; });
}

Gauge Gauge::constant(const Interval& domain, Rat delta) {
  return Gauge({{domain, std::move(delta)}});
}

Rat Gauge::delta_at(const Rat& x) const {
  for (const Cell& c : cells_)
    if (c.where.contains(x)) return c.delta;
  throw DomainError("gauge undefined at " + rat_to_string(x));
}

TagSystem::TagSystem(Interval support, std::vector<Cell> cells)
    : support_(std::move(support)), cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end(),
            [](const Cell& a, const Cell& b) { return a.cell < b.cell; });
  std::vector<Interval> cover;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!interval_subset(cells_[i].cell, cells_[i].assigned))
      throw DomainError("tag system violates H2 on cell " +
                        cells_[i].cell.str());
    for (std::size_t j = i + 1; j < cells_.size(); ++j)
      if (!disjoint(cells_[i].cell, cells_[j].cell))
        throw DomainError("tag system partition cells overlap");
    cover.push_back(cells_[i].cell);
  }
  if (normalize_union(cover) != normalize_union({support_}))
    throw DomainError("tag system cells do not partition the support");
}

const Interval& TagSystem::h_at(const Rat& x) const {
  for (const Cell& c : cells_)
    if (c.cell.contains(x)) return c.assigned;
  throw DomainError("tag system assignment undefined at " + rat_to_string(x));
}

namespace {

// Halve until no longer than bound; keeps the outer end-types.
void bisect_into(const Interval& piece, const Rat& bound,
                 std::vector<Interval>& out) {
  if (piece.is_singleton() || piece.length() <= bound) {
    out.push_back(piece);
    return;
  }
  Rat mid = (piece.lo() + piece.hi()) / 2;
  bisect_into(Interval(piece.lo(), piece.lo_closed(), mid, false), bound, out);
  bisect_into(Interval(mid, true, piece.hi(), piece.hi_closed()), bound, out);
}

StonePoint in_cell_tag(const Interval& cell) {
  // Deterministic representative: the left endpoint when available.
  return {cell.lo_closed() ? cell.lo() : interval_sample(cell), StoneSide::At};
}

}  // namespace

TagSystem gauge_to_tag_system(const Interval& domain, const Gauge& g) {
  if (domain.is_empty()) throw DomainError("empty gauge domain");
  std::vector<Interval> family{domain};
  for (const auto& c : g.cells()) family.push_back(c.where);
  AtomPartition part = exact_decompose(family);

  Interval closure = Interval::closed(domain.lo(), domain.hi());
  std::vector<TagSystem::Cell> cells;
  for (std::size_t a : part.origin_map[0]) {
    const Interval& atom = part.atoms[a];
    Rat delta = g.delta_at(interval_sample(atom));  // throws off the gauge
    std::vector<Interval> split;
    bisect_into(atom, delta / 2, split);
    for (const Interval& cell : split) {
      Interval assigned = intersect(
          Interval(cell.lo() - delta / 2, false, cell.hi() + delta / 2, false),
          closure);
      cells.push_back({cell, assigned});
    }
  }
  return TagSystem(domain, std::move(cells));
}

TagSystem refine_tags(const TagSystem& t1, const TagSystem& t2) {
  if (!(t1.support() == t2.support()))
    throw DomainError("refine_tags: supports differ");
  std::vector<Interval> family;
  for (const auto& c : t1.cells()) family.push_back(c.cell);
  for (const auto& c : t2.cells()) family.push_back(c.cell);
  AtomPartition part = exact_decompose(family);

  std::vector<TagSystem::Cell> cells;
  for (const Interval& atom : part.atoms) {
    Rat probe = interval_sample(atom);
    cells.push_back({atom, intersect(t1.h_at(probe), t2.h_at(probe))});
  }
  return TagSystem(t1.support(), std::move(cells));
}

TaggedDivision mcshane_division(const TagSystem& t) {
  TaggedDivision d;
  const auto& cells = t.cells();
  std::size_t i = 0;
  while (i < cells.size()) {
    Interval run = cells[i].cell;
    const Interval& host = cells[i].assigned;
    std::size_t j = i;
    while (j + 1 < cells.size()) {
      const Interval& next = cells[j + 1].cell;
      if (!(run.hi() == next.lo() && (run.hi_closed() || next.lo_closed())))
        break;  // not adjacent
      Interval merged(run.lo(), run.lo_closed(), next.hi(), next.hi_closed());
      if (!interval_subset(merged, host)) break;
      run = merged;
      ++j;
    }
    d.cells.push_back(run);
    d.tags.push_back(in_cell_tag(cells[i].cell));
    i = j + 1;
  }
  return d;
}

TaggedDivision kh_division(const TagSystem& t) {
  TaggedDivision d;
  for (const auto& c : t.cells()) {
    d.cells.push_back(c.cell);
    d.tags.push_back(in_cell_tag(c.cell));
  }
  return d;
}

bool check_division(const TagSystem& t, const TaggedDivision& d, bool kh,
                    std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (d.cells.size() != d.tags.size()) return fail("cell/tag count mismatch");
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    if (d.cells[i].is_empty()) return fail("empty division cell");
    for (std::size_t j = i + 1; j < d.cells.size(); ++j)
      if (!disjoint(d.cells[i], d.cells[j]))
        return fail("division cells overlap: " + d.cells[i].str() + " and " +
                    d.cells[j].str());
  }
  if (normalize_union(d.cells) != normalize_union({t.support()}))
    return fail("division does not cover the support exactly");
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    Rat tag = stone_lim(d.tags[i]);
    const Interval* h = nullptr;
    try {
      h = &t.h_at(tag);
    } catch (const DomainError&) {
      return fail("tag outside the tag system's support");
    }
    if (!interval_subset(d.cells[i], *h))
      return fail("cell " + d.cells[i].str() + " escapes h(tag)");
    if (kh && !d.cells[i].contains(tag))
      return fail("KH tag not inside its cell " + d.cells[i].str());
  }
  return true;
}

Rat riemann_sum(const StepProfile& f, const RealMeasure& m,
                const TaggedDivision& d) {
  Rat total(0);
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    XReal v = f.at(stone_lim(d.tags[i]));
    if (!v.is_finite())
      throw DomainError("riemann_sum: profile infinite at a tag");
    total += v.value() * m.eval(d.cells[i]);
  }
  return total;
}

double riemann_sum(const std::function<double(double)>& f,
                   const RealMeasure& m, const TaggedDivision& d) {
  double total = 0;
  for (std::size_t i = 0; i < d.cells.size(); ++i)
    total += f(rat_to_double(stone_lim(d.tags[i]))) *
             rat_to_double(m.eval(d.cells[i]));
  return total;
}

namespace {

Rat division_mesh(const TaggedDivision& d) {
  Rat mesh(0);
  for (const Interval& c : d.cells) mesh = std::max(mesh, c.length());
  return mesh;
}

TaggedDivision divide(const Interval& domain, const Gauge& g,
                      DivisionKind kind) {
  TagSystem t = gauge_to_tag_system(domain, g);
  return kind == DivisionKind::McShane ? mcshane_division(t) : kh_division(t);
}

}  // namespace

std::vector<ConvergenceRow> convergence_table(const StepProfile& f,
                                              const RealMeasure& m,
                                              const Interval& domain,
                                              const std::vector<Gauge>& gauges,
                                              DivisionKind kind,
                                              const Rat& exact) {
  std::vector<ConvergenceRow> rows;
  for (const Gauge& g : gauges) {
    TaggedDivision d = divide(domain, g, kind);
    Rat sum = riemann_sum(f, m, d);
    rows.push_back({division_mesh(d), sum, rat_abs(Rat(sum - exact))});
  }
  return rows;
}

std::vector<ConvergenceRowF> convergence_table(
    const std::function<double(double)>& f, const RealMeasure& m,
    const Interval& domain, const std::vector<Gauge>& gauges,
    DivisionKind kind, double exact) {
  std::vector<ConvergenceRowF> rows;
  for (const Gauge& g : gauges) {
    TaggedDivision d = divide(domain, g, kind);
    double sum = riemann_sum(f, m, d);
    rows.push_back({division_mesh(d), sum, std::abs(sum - exact)});
  }
  return rows;
}

}  // namespace lri
