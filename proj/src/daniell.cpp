#include "lri/daniell.hpp"

#include <algorithm>
#include <map>

#include "lri/error.hpp"
#include "lri/formal_sum.hpp"

namespace lri {

StepLatticeElem::StepLatticeElem(StepProfile p) : profile_(std::move(p)) {
  if (!profile_.finite_valued() || !profile_.nonneg())
    throw DomainError("lattice element must be nonnegative and finite");
}

StepLatticeElem StepLatticeElem::indicator(const Interval& on, Rat height) {
  return StepLatticeElem(StepProfile::constant(on, XReal(std::move(height))));
}

StepLatticeElem lattice_combine(const StepLatticeElem& f,
                                const StepLatticeElem& g, LatticeOp kind) {
  switch (kind) {
    case LatticeOp::Plus:
      return StepLatticeElem(sp_add(f.profile(), g.profile()));
    case LatticeOp::Join:
      return StepLatticeElem(sp_max(f.profile(), g.profile()));
    case LatticeOp::Meet:
      return StepLatticeElem(sp_min(f.profile(), g.profile()));
    case LatticeOp::Monus:
      return StepLatticeElem(sp_monus(f.profile(), g.profile()));
    case LatticeOp::Cap:
      throw DomainError("Cap needs a rational bound; use lattice_cap");
  }
  throw DomainError("unknown lattice operation");
}

StepLatticeElem lattice_cap(const StepLatticeElem& f, const Rat& d) {
  if (d < 0) throw DomainError("lattice_cap: bound must be >= 0");
  return StepLatticeElem(sp_cap(f.profile(), d));
}

Rat functional_eval(const DaniellFunctional& F, const StepLatticeElem& f) {
  XReal v = riesz_integrate(F.backing(), fsum_from_profile(f.profile()));
  return v.value();  // finite: finite profile against a finite measure
}

std::pair<Rat, Rat> functional_jordan(const DaniellFunctional& F,
                                      const StepLatticeElem& f) {
  BestVariations bv = best_variations(F.backing(), f.profile());
  return {bv.int_plus.value(), bv.int_minus.value()};
}

std::vector<StepLatticeElem> level_decompose(
    const std::vector<StepLatticeElem>& fs, const Rat& d) {
  if (d <= 0) throw DomainError("level_decompose: d must be > 0");
  auto s_at = [&](std::size_t n) {
    StepProfile acc;
    for (std::size_t k = 0; k < fs.size() && k < n; ++k)
      acc = sp_add(acc, sp_scale(fs[k].profile(), Rat(n - k)));
    return sp_cap(acc, d);
  };
  std::vector<StepLatticeElem> pieces;
  StepProfile prev;  // s_0 = 0
  for (std::size_t n = 1;; ++n) {
    StepProfile cur = s_at(n);
    if (cur == prev) break;  // reached d * indicator(W)
    pieces.push_back(StepLatticeElem(sp_monus(cur, prev)));
    prev = std::move(cur);
  }
  return pieces;
}

namespace {

// Telescoping series for mu({f > 1}) * b with b = 1: terms
// ((n+1)e) ∧ 1 - (n e) ∧ 1 for e = f - f∧1, evaluated through the
// functional. Stabilizes once n * (smallest positive excess) >= 1.
Rat level_series(const DaniellFunctional& F, const StepLatticeElem& f) {
  StepProfile e = sp_monus(f.profile(), sp_cap(f.profile(), Rat(1)));
  if (e.is_zero()) return Rat(0);
  Rat min_excess;
  bool first = true;
  for (const auto& [atom, v] : e.parts()) {
    if (first || v.value() < min_excess) min_excess = v.value();
    first = false;
  }
  Int steps = rat_ceil(Rat(1) / min_excess);
  Rat total(0);
  StepProfile prev;  // (0 * e) ∧ 1
  for (Int n = 1; n <= steps; ++n) {
    StepProfile cur = sp_cap(sp_scale(e, Rat(n)), Rat(1));
    total += functional_eval(F, StepLatticeElem(sp_monus(cur, prev)));
    if (cur == prev) break;
    prev = std::move(cur);
  }
  return total;
}

}  // namespace

Rat measure_of_level_set(const DaniellFunctional& F, const StepLatticeElem& f,
                         const StepLatticeElem& g) {
  // {f>1} \ {g>1} splits {f>1} against {f∧g > 1} = {f>1} ∩ {g>1}.
  StepLatticeElem meet = lattice_combine(f, g, LatticeOp::Meet);
  return level_series(F, f) - level_series(F, meet);
}

bool RepresentationTable::lookup(const std::vector<Interval>& normalized_set,
                                 Rat* value) const {
  for (const auto& e : entries)
    if (e.set == normalized_set) {
      if (value) *value = e.value;
      return true;
    }
  return false;
}

namespace {

std::vector<Interval> level_set(const StepLatticeElem& f) {
  std::vector<Interval> above;
  for (const auto& [atom, v] : f.profile().parts())
    if (v.value() > 1) above.push_back(atom);
  return normalize_union(above);
}

}  // namespace

RepresentationTable represent(const DaniellFunctional& F,
                              const std::vector<StepLatticeElem>& generators,
                              std::size_t closure_depth,
                              std::size_t max_lattice_size) {
  std::vector<StepLatticeElem> lattice{StepLatticeElem()};
  auto push_unique = [&](const StepLatticeElem& e) {
    if (std::find(lattice.begin(), lattice.end(), e) == lattice.end() &&
        lattice.size() < max_lattice_size)
      lattice.push_back(e);
  };
  for (const auto& g : generators) push_unique(g);
  for (std::size_t round = 0; round < closure_depth; ++round) {
    std::vector<StepLatticeElem> snapshot = lattice;
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i; j < snapshot.size(); ++j)
        for (LatticeOp op : {LatticeOp::Plus, LatticeOp::Join, LatticeOp::Meet,
                             LatticeOp::Monus})
          push_unique(lattice_combine(snapshot[i], snapshot[j], op));
  }

  RepresentationTable table;
  std::map<std::vector<Interval>, Rat> rows;
  for (const auto& f : lattice)
    for (const auto& g : lattice) {
      std::vector<Interval> set_f = level_set(f);
      if (set_f.empty() && !level_set(g).empty()) continue;
      // {f>1} \ {g>1} as a normalized union.
      std::vector<Interval> pieces;
      for (const Interval& part : set_f) {
        std::vector<Interval> rest{part};
        for (const Interval& cut : level_set(g)) {
          std::vector<Interval> next;
          for (const Interval& r : rest)
            for (const Interval& piece : subtract(r, cut)) next.push_back(piece);
          rest = std::move(next);
        }
        pieces.insert(pieces.end(), rest.begin(), rest.end());
      }
      std::vector<Interval> key = normalize_union(pieces);
      if (rows.count(key)) continue;
      rows.emplace(key, measure_of_level_set(F, f, g));
    }
  for (auto& [set, value] : rows) table.entries.push_back({set, value});
  return table;
}

// ---- Procedure 2 --------------------------------------------------------

namespace {

StepProfile clamp(const StepProfile& v, const StepProfile& lo,
                  const StepProfile& hi) {
  return sp_min(sp_max(v, lo), hi);
}

// The (k+1)-th greatest value function of the family, atomwise.
StepProfile kth_greatest(const std::vector<const StepProfile*>& fs,
                         std::size_t k) {
  std::vector<Interval> family;
  for (const StepProfile* f : fs)
    for (const auto& part : f->parts()) family.push_back(part.first);
  AtomPartition part = exact_decompose(family);
  std::vector<std::pair<Interval, XReal>> parts;
  for (const Interval& atom : part.atoms) {
    Rat probe = interval_sample(atom);
    std::vector<XReal> vals;
    vals.reserve(fs.size());
    for (const StepProfile* f : fs) vals.push_back(f->at(probe));
    parts.emplace_back(atom, trimmed_extremum(vals, k, ExtremumKind::Sup, false));
  }
  return StepProfile::from_parts(std::move(parts));
}

std::vector<std::pair<std::size_t, std::size_t>> listing2_order(
    const std::vector<std::vector<StepLatticeElem>>& inputs, Listing2 listing) {
  std::vector<std::pair<std::size_t, std::size_t>> order;
  if (listing == Listing2::RowMajor) {
    for (std::size_t n = 0; n < inputs.size(); ++n)
      for (std::size_t m = 0; m < inputs[n].size(); ++m) order.emplace_back(n, m);
    return order;
  }
  std::size_t max_len = 0;
  for (const auto& in : inputs) max_len = std::max(max_len, in.size());
  if (inputs.empty() || max_len == 0) return order;
  for (std::size_t s = 0; s <= inputs.size() + max_len - 2; ++s)
    for (std::size_t n = 0; n <= s && n < inputs.size(); ++n) {
      std::size_t m = s - n;
      if (m < inputs[n].size()) order.emplace_back(n, m);
    }
  return order;
}

}  // namespace

LatticePieces procedure2(const std::vector<std::vector<StepLatticeElem>>& inputs,
                         Listing2 listing) {
  LatticePieces out;
  out.input_count = inputs.size();
  auto order = listing2_order(inputs, listing);

  // Running totals per input and the stage-total history b_0, b_1, ...
  std::vector<StepProfile> running(inputs.size());
  std::vector<bool> seen(inputs.size(), false);
  std::vector<StepProfile> history;

  for (const auto& [n, m] : order) {
    const StepProfile& f = inputs[n][m].profile();
    StepProfile lo = running[n];     // c_j
    StepProfile hi = sp_add(lo, f);  // b_j
    running[n] = hi;
    seen[n] = true;
    history.push_back(hi);

    std::vector<const StepProfile*> totals;
    for (std::size_t p = 0; p < inputs.size(); ++p)
      if (seen[p]) totals.push_back(&running[p]);
    const std::size_t live = totals.size();

    // r_n: the (n+1)-th greatest running total clamped into [c_j, b_j];
    // a decreasing chain from r_0 = b_j down to r_live = c_j.
    std::vector<StepProfile> r(live + 1);
    r[live] = lo;
    for (std::size_t k = 0; k < live; ++k)
      r[k] = clamp(kth_greatest(totals, k), lo, hi);

    // Order statistics of the stage-total history, decreasing in k.
    std::vector<const StepProfile*> hist_ptrs;
    hist_ptrs.reserve(history.size());
    for (const StepProfile& h : history) hist_ptrs.push_back(&h);
    std::vector<StepProfile> bprime(history.size());
    for (std::size_t k = 0; k < history.size(); ++k)
      bprime[k] = kth_greatest(hist_ptrs, k);

    // For each color band [r_{nn+1}, r_nn], cut at the clamped historical
    // levels and close the telescope at r_{nn+1}.
    for (std::size_t nn = 0; nn < live; ++nn) {
      StepProfile upper = r[nn];
      for (std::size_t k = 0; k <= history.size(); ++k) {
        StepProfile cut = k < history.size()
                              ? clamp(bprime[k], r[nn + 1], r[nn])
                              : r[nn + 1];
        StepProfile piece = sp_monus(upper, cut);
        if (!piece.is_zero())
          out.pieces.push_back({StepLatticeElem(piece), nn,
                                StepLatticeElem(cut), StepLatticeElem(upper),
                                n, m});
        upper = std::move(cut);
      }
    }
  }
  return out;
}

StepProfile LatticePieces::color_total(std::size_t color) const {
  StepProfile acc;
  for (const LatticePiece& p : pieces)
    if (p.color == color) acc = sp_add(acc, p.value.profile());
  return acc;
}

StepProfile LatticePieces::input_total(std::size_t input,
                                       std::size_t term) const {
  StepProfile acc;
  for (const LatticePiece& p : pieces)
    if (p.input_index == input && p.term_index == term)
      acc = sp_add(acc, p.value.profile());
  return acc;
}

}  // namespace lri
