#include "lri/formal_sum.hpp"

#include <algorithm>
#include <map>

#include "lri/error.hpp"

namespace lri {

FormalSum::FormalSum(std::vector<Term> terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const Term& t) {
    return t.set.is_empty() || (!t.magnitude.is_inf() && t.magnitude.value() == 0);
  });
}

FormalSum FormalSum::from_signed(
    const std::vector<std::pair<XReal, Interval>>& pairs) {
  std::vector<Term> terms;
  terms.reserve(pairs.size());
  for (const auto& [c, set] : pairs) {
    switch (c.kind()) {
      case XKind::BothInf:
        throw DomainError("formal sum coefficient cannot be ~inf");
      case XKind::PosInf:
        terms.push_back({Side::Pos, XNonneg::inf(), set});
        break;
      case XKind::NegInf:
        terms.push_back({Side::Neg, XNonneg::inf(), set});
        break;
      case XKind::Finite:
        if (c.value() >= 0)
          terms.push_back({Side::Pos, XNonneg(c.value()), set});
        else
          terms.push_back({Side::Neg, XNonneg(Rat(-c.value())), set});
        break;
    }
  }
  return FormalSum(std::move(terms));
}

bool FormalSum::nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.side == Side::Pos; });
}

bool FormalSum::finite_coeffs() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return !t.magnitude.is_inf(); });
}

FormalSum FormalSum::opposite() const {
  std::vector<Term> terms = terms_;
  for (Term& t : terms) t.side = t.side == Side::Pos ? Side::Neg : Side::Pos;
  return FormalSum(std::move(terms));
}

FormalSum FormalSum::positive_part() const {
  std::vector<Term> terms;
  for (const Term& t : terms_)
    if (t.side == Side::Pos) terms.push_back(t);
  return FormalSum(std::move(terms));
}

FormalSum FormalSum::negative_part() const {
  std::vector<Term> terms;
  for (const Term& t : terms_)
    if (t.side == Side::Neg) terms.push_back({Side::Pos, t.magnitude, t.set});
  return FormalSum(std::move(terms));
}

FormalSum disjoint_union(const FormalSum& a, const FormalSum& b) {
  std::vector<Term> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return FormalSum(std::move(terms));
}

StepProfile evaluate(const FormalSum& c) {
  std::vector<Interval> sets;
  sets.reserve(c.size());
  for (const Term& t : c.terms()) sets.push_back(t.set);
  AtomPartition part = exact_decompose(sets);

  std::vector<std::vector<XReal>> covering(part.atoms.size());
  for (std::size_t k = 0; k < sets.size(); ++k)
    for (std::size_t a : part.origin_map[k])
      covering[a].push_back(c.terms()[k].coeff());

  std::vector<std::pair<Interval, XReal>> parts;
  parts.reserve(part.atoms.size());
  for (std::size_t a = 0; a < part.atoms.size(); ++a)
    parts.emplace_back(part.atoms[a], ext_sum(covering[a]));
  return StepProfile::from_parts(std::move(parts));
}

XReal eval_at(const FormalSum& c, const Rat& x) {
  std::vector<XReal> covering;
  for (const Term& t : c.terms())
    if (t.set.contains(x)) covering.push_back(t.coeff());
  return ext_sum(covering);
}

FormalSum fsum_from_profile(const StepProfile& f) {
  std::vector<std::pair<XReal, Interval>> pairs;
  for (const auto& p : f.parts()) pairs.emplace_back(p.second, p.first);
  return FormalSum::from_signed(pairs);
}

// ---- verify_decomposition ----------------------------------------------

namespace {

struct Kid {
  XNonneg mag;
  Interval set;
};

// Can (c, S) be transformed into exactly the kid family by a finite tree of
// coefficient splits and exact set splits? Precondition: kid sets lie in S
// and kid magnitudes sum to c pointwise on S. Strategy: apply every set cut
// not crossed by any kid first (any realizing tree survives projection onto
// the parts), then search coefficient bipartitions with constant pointwise
// value. The pointwise precondition alone is not sufficient — non-guillotine
// packings (pinwheels) satisfy it without being realizable.
bool reachable(const XNonneg& c, const Interval& s, std::vector<Kid> kids,
               long& fuel) {
  if (--fuel < 0)
    throw DomainError("verify_decomposition: search budget exhausted");
  if (kids.size() <= 1) return true;  // pointwise precondition settles it
  if (std::all_of(kids.begin(), kids.end(),
                  [&](const Kid& k) { return k.set == s; }))
    return true;  // pure coefficient split

  std::vector<Interval> family;
  family.reserve(kids.size() + 1);
  family.push_back(s);
  for (const Kid& k : kids) family.push_back(k.set);
  CellScan scan = scan_cells(family);

  std::vector<std::size_t> in_s;  // contiguous: s is an interval
  for (std::size_t cidx = 0; cidx < scan.cells.size(); ++cidx)
    if (scan.membership[cidx][0]) in_s.push_back(cidx);

  // Valid cuts: between adjacent cells of s that no kid spans.
  std::vector<std::size_t> part_start{0};
  for (std::size_t i = 0; i + 1 < in_s.size(); ++i) {
    bool crossed = false;
    for (std::size_t k = 1; k <= kids.size() && !crossed; ++k)
      crossed = scan.membership[in_s[i]][k] && scan.membership[in_s[i + 1]][k];
    if (!crossed) part_start.push_back(i + 1);
  }

  if (part_start.size() > 1) {
    for (std::size_t p = 0; p < part_start.size(); ++p) {
      std::size_t first = part_start[p];
      std::size_t last =
          (p + 1 < part_start.size() ? part_start[p + 1] : in_s.size()) - 1;
      const Interval& a = scan.cells[in_s[first]];
      const Interval& b = scan.cells[in_s[last]];
      Interval part(a.lo(), a.lo_closed() || a.is_singleton(), b.hi(),
                    b.hi_closed() || b.is_singleton());
      std::vector<Kid> sub;
      for (const Kid& k : kids)
        if (!disjoint(k.set, part)) sub.push_back(k);
      if (!reachable(c, part, std::move(sub), fuel)) return false;
    }
    return true;
  }

  // Set-irreducible: search binary coefficient splits. Each side must have a
  // constant pointwise sum over the cells of s.
  if (kids.size() > 22)
    throw DomainError("verify_decomposition: too many pieces per parent term");
  std::vector<std::vector<bool>> covers(kids.size());
  for (std::size_t k = 0; k < kids.size(); ++k) {
    covers[k].resize(in_s.size());
    for (std::size_t i = 0; i < in_s.size(); ++i)
      covers[k][i] = scan.membership[in_s[i]][k + 1];
  }
  auto constant_value = [&](unsigned long mask) -> std::pair<bool, XNonneg> {
    XNonneg first;
    for (std::size_t i = 0; i < in_s.size(); ++i) {
      XNonneg v;
      for (std::size_t k = 0; k < kids.size(); ++k)
        if (((mask >> k) & 1u) && covers[k][i]) v = v + kids[k].mag;
      if (i == 0)
        first = v;
      else if (v != first)
        return {false, XNonneg()};
    }
    return {true, first};
  };

  const unsigned long full = (1ul << kids.size()) - 1;
  for (unsigned long mask = 1; mask < full; mask += 2) {  // kid 0 on side A
    auto [ok_a, ta] = constant_value(mask);
    if (!ok_a || ta.is_zero()) continue;
    auto [ok_b, tb] = constant_value(full & ~mask);
    if (!ok_b || tb.is_zero()) continue;
    std::vector<Kid> side_a, side_b;
    for (std::size_t k = 0; k < kids.size(); ++k)
      ((mask >> k) & 1u ? side_a : side_b).push_back(kids[k]);
    if (reachable(ta, s, std::move(side_a), fuel) &&
        reachable(tb, s, std::move(side_b), fuel))
      return true;
  }
  return false;
}

}  // namespace

bool verify_decomposition(const FormalSum& parent, const FormalSum& child,
                          const DecompositionWitness& witness) {
  if (witness.parent_of.size() != child.size()) return false;
  std::vector<std::vector<std::size_t>> groups(parent.size());
  for (std::size_t i = 0; i < child.size(); ++i) {
    if (witness.parent_of[i] >= parent.size()) return false;
    groups[witness.parent_of[i]].push_back(i);
  }

  for (std::size_t p = 0; p < parent.size(); ++p) {
    const Term& pt = parent.terms()[p];
    if (groups[p].empty()) return false;  // nonzero term cannot vanish
    std::vector<Kid> kids;
    kids.reserve(groups[p].size());
    for (std::size_t i : groups[p]) {
      const Term& ct = child.terms()[i];
      if (ct.side != pt.side) return false;
      if (!interval_subset(ct.set, pt.set)) return false;
      kids.push_back({ct.magnitude, ct.set});
    }
    // Pointwise invariant on every cell of the parent set.
    std::vector<Interval> family{pt.set};
    for (const Kid& k : kids) family.push_back(k.set);
    CellScan scan = scan_cells(family);
    for (std::size_t cidx = 0; cidx < scan.cells.size(); ++cidx) {
      if (!scan.membership[cidx][0]) continue;
      XNonneg sum;
      for (std::size_t k = 0; k < kids.size(); ++k)
        if (scan.membership[cidx][k + 1]) sum = sum + kids[k].mag;
      if (sum != pt.magnitude) return false;
    }
    long fuel = 1000000;
    if (!reachable(pt.magnitude, pt.set, std::move(kids), fuel)) return false;
  }
  return true;
}

// ---- Procedure 1 --------------------------------------------------------

namespace {

std::vector<std::pair<std::size_t, std::size_t>> listing_order(
    const std::vector<FormalSum>& inputs, Listing listing) {
  std::vector<std::pair<std::size_t, std::size_t>> order;
  if (listing == Listing::RowMajor) {
    for (std::size_t n = 0; n < inputs.size(); ++n)
      for (std::size_t m = 0; m < inputs[n].size(); ++m) order.emplace_back(n, m);
    return order;
  }
  std::size_t max_len = 0;
  for (const FormalSum& c : inputs) max_len = std::max(max_len, c.size());
  if (inputs.empty() || max_len == 0) return order;
  for (std::size_t s = 0; s <= inputs.size() + max_len - 2; ++s)
    for (std::size_t n = 0; n <= s && n < inputs.size(); ++n) {
      std::size_t m = s - n;
      if (m < inputs[n].size()) order.emplace_back(n, m);
    }
  return order;
}

}  // namespace

ColoredPieces procedure1(const std::vector<FormalSum>& inputs,
                         Listing listing) {
  for (const FormalSum& c : inputs) {
    if (!c.nonnegative())
      throw DomainError("procedure1: inputs must be nonnegative");
    if (!c.finite_coeffs())
      throw DomainError("procedure1: inputs must have finite coefficients");
  }
  auto order = listing_order(inputs, listing);

  std::vector<Interval> sets;
  std::vector<std::size_t> flat_of_term;  // (n,m) -> flattened index
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> flat;
  for (std::size_t n = 0; n < inputs.size(); ++n)
    for (std::size_t m = 0; m < inputs[n].size(); ++m) {
      flat[{n, m}] = sets.size();
      sets.push_back(inputs[n].terms()[m].set);
    }
  AtomPartition part = exact_decompose(sets);

  const std::size_t natoms = part.atoms.size();
  // running[p][a]: input p's partial sum over atom a so far
  std::vector<std::vector<Rat>> running(inputs.size(),
                                        std::vector<Rat>(natoms, Rat(0)));
  // levels[a]: every partial-sum value attained over atom a, sorted
  std::vector<std::vector<Rat>> levels(natoms);

  ColoredPieces out;
  out.input_count = inputs.size();
  for (const auto& [n, m] : order) {
    const Rat mag = inputs[n].terms()[m].magnitude.value();
    for (std::size_t a : part.origin_map[flat[{n, m}]]) {
      const Rat lo = running[n][a];
      const Rat hi = lo + mag;
      std::vector<Rat> cuts{lo};
      const auto& lv = levels[a];
      for (auto it = std::upper_bound(lv.begin(), lv.end(), lo);
           it != lv.end() && *it < hi; ++it)
        cuts.push_back(*it);
      cuts.push_back(hi);
      for (std::size_t l = 0; l + 1 < cuts.size(); ++l) {
        std::size_t color = 0;
        for (std::size_t p = 0; p < inputs.size(); ++p)
          if (p != n && running[p][a] > cuts[l]) ++color;
        out.pieces.push_back({Rat(cuts[l + 1] - cuts[l]), part.atoms[a], color,
                              cuts[l], cuts[l + 1], n, m});
      }
      running[n][a] = hi;
      auto it = std::lower_bound(levels[a].begin(), levels[a].end(), hi);
      if (it == levels[a].end() || *it != hi) levels[a].insert(it, hi);
    }
  }
  return out;
}

FormalSum ColoredPieces::color_class(std::size_t color) const {
  std::vector<Term> terms;
  for (const ColoredPiece& p : pieces)
    if (p.color == color) terms.push_back({Side::Pos, XNonneg(p.coeff), p.set});
  return FormalSum(std::move(terms));
}

std::pair<FormalSum, DecompositionWitness> ColoredPieces::input_decomposition(
    std::size_t input) const {
  std::vector<Term> terms;
  DecompositionWitness w;
  for (const ColoredPiece& p : pieces)
    if (p.input_index == input) {
      terms.push_back({Side::Pos, XNonneg(p.coeff), p.set});
      w.parent_of.push_back(p.term_index);
    }
  return {FormalSum(std::move(terms)), std::move(w)};
}

// ---- minmax / subdecompose / common refinement / four corner ------------

MinMaxResult minmax(const FormalSum& c, const FormalSum& d) {
  ColoredPieces pieces = procedure1({c, d}, Listing::Diagonal);
  return {pieces.color_class(1), pieces.color_class(0)};
}

namespace {

struct AtomPiece {
  Rat mag;          // finite part; unused when inf
  bool inf = false;
  std::size_t parent;
};

// Atomize a nonnegative sum onto the given partition of its term sets;
// by_atom[a] lists the pieces over atom a.
std::vector<std::vector<AtomPiece>> atomize(const FormalSum& c,
                                            const AtomPartition& part,
                                            std::size_t set_offset) {
  std::vector<std::vector<AtomPiece>> by_atom(part.atoms.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Term& t = c.terms()[k];
    for (std::size_t a : part.origin_map[set_offset + k]) {
      if (t.magnitude.is_inf())
        by_atom[a].push_back({Rat(0), true, k});
      else
        by_atom[a].push_back({t.magnitude.value(), false, k});
    }
  }
  return by_atom;
}

AtomPartition joint_partition(const FormalSum& c, const FormalSum& d) {
  std::vector<Interval> sets;
  for (const Term& t : c.terms()) sets.push_back(t.set);
  for (const Term& t : d.terms()) sets.push_back(t.set);
  return exact_decompose(sets);
}

}  // namespace

SubdecompositionResult subdecompose_dominated(const FormalSum& c,
                                              const FormalSum& d) {
  if (!c.nonnegative() || !d.nonnegative())
    throw DomainError("subdecompose_dominated: inputs must be nonnegative");
  if (!c.finite_coeffs() || !d.finite_coeffs())
    throw DomainError("subdecompose_dominated: coefficients must be finite");

  AtomPartition part = joint_partition(c, d);
  auto c_by_atom = atomize(c, part, 0);
  auto d_by_atom = atomize(d, part, c.size());

  for (std::size_t a = 0; a < part.atoms.size(); ++a) {
    Rat cs(0), ds(0);
    for (const AtomPiece& p : c_by_atom[a]) cs += p.mag;
    for (const AtomPiece& p : d_by_atom[a]) ds += p.mag;
    if (cs > ds)
      throw DominationError("domination fails on atom " + part.atoms[a].str() +
                            ": " + rat_to_string(cs) + " > " +
                            rat_to_string(ds));
  }

  SubdecompositionResult out;
  std::vector<Term> cp_terms, e_terms;
  std::vector<std::size_t> cp_from_c, cp_from_d, e_from_d;
  for (std::size_t a = 0; a < part.atoms.size(); ++a) {
    const Interval& atom = part.atoms[a];
    auto& qs = c_by_atom[a];
    auto& ws = d_by_atom[a];
    std::size_t qi = 0, wi = 0;
    Rat q_rem = qs.empty() ? Rat(0) : qs[0].mag;
    Rat w_rem = ws.empty() ? Rat(0) : ws[0].mag;
    while (qi < qs.size()) {
      Rat t = std::min(q_rem, w_rem);
      cp_terms.push_back({Side::Pos, XNonneg(t), atom});
      cp_from_c.push_back(qs[qi].parent);
      cp_from_d.push_back(ws[wi].parent);
      q_rem -= t;
      w_rem -= t;
      if (q_rem == 0 && ++qi < qs.size()) q_rem = qs[qi].mag;
      if (w_rem == 0 && ++wi < ws.size()) w_rem = ws[wi].mag;
    }
    while (wi < ws.size()) {
      if (w_rem > 0) {
        e_terms.push_back({Side::Pos, XNonneg(w_rem), atom});
        e_from_d.push_back(ws[wi].parent);
      }
      if (++wi < ws.size()) w_rem = ws[wi].mag;
    }
  }
  out.c_prime = FormalSum(std::move(cp_terms));
  out.e = FormalSum(std::move(e_terms));
  out.c_to_cprime.parent_of = std::move(cp_from_c);
  out.d_to_cprime_e.parent_of = std::move(cp_from_d);
  out.d_to_cprime_e.parent_of.insert(out.d_to_cprime_e.parent_of.end(),
                                     e_from_d.begin(), e_from_d.end());
  return out;
}

CommonRefinement common_refine(const FormalSum& c1, const FormalSum& c2) {
  if (!c1.nonnegative() || !c2.nonnegative())
    throw DomainError("common_refine: inputs must be nonnegative");

  AtomPartition part = joint_partition(c1, c2);
  auto a_by_atom = atomize(c1, part, 0);
  auto b_by_atom = atomize(c2, part, c1.size());

  std::vector<Term> terms;
  std::vector<std::size_t> from1, from2;
  for (std::size_t a = 0; a < part.atoms.size(); ++a) {
    const Interval& atom = part.atoms[a];
    auto& as = a_by_atom[a];
    auto& bs = b_by_atom[a];
    std::vector<AtomPiece> fin1, inf1, fin2, inf2;
    for (const AtomPiece& p : as) (p.inf ? inf1 : fin1).push_back(p);
    for (const AtomPiece& p : bs) (p.inf ? inf2 : fin2).push_back(p);

    if (inf1.empty() != inf2.empty()) {
      throw ProfileMismatch("profiles differ on atom " + atom.str() +
                            " (one side infinite)");
    }
    if (!inf1.empty()) {
      // Both sides infinite here: match finite pieces verbatim, pair the
      // infinite terms surjectively.
      for (const AtomPiece& p : fin1) {
        terms.push_back({Side::Pos, XNonneg(p.mag), atom});
        from1.push_back(p.parent);
        from2.push_back(inf2[0].parent);
      }
      for (const AtomPiece& p : fin2) {
        terms.push_back({Side::Pos, XNonneg(p.mag), atom});
        from1.push_back(inf1[0].parent);
        from2.push_back(p.parent);
      }
      for (std::size_t k = 0; k < std::max(inf1.size(), inf2.size()); ++k) {
        terms.push_back({Side::Pos, XNonneg::inf(), atom});
        from1.push_back(inf1[std::min(k, inf1.size() - 1)].parent);
        from2.push_back(inf2[std::min(k, inf2.size() - 1)].parent);
      }
      continue;
    }

    Rat s1(0), s2(0);
    for (const AtomPiece& p : fin1) s1 += p.mag;
    for (const AtomPiece& p : fin2) s2 += p.mag;
    if (s1 != s2)
      throw ProfileMismatch("profiles differ on atom " + atom.str() + ": " +
                            rat_to_string(s1) + " vs " + rat_to_string(s2));

    std::size_t i = 0, j = 0;
    Rat ri = fin1.empty() ? Rat(0) : fin1[0].mag;
    Rat rj = fin2.empty() ? Rat(0) : fin2[0].mag;
    while (i < fin1.size() && j < fin2.size()) {
      Rat t = std::min(ri, rj);
      terms.push_back({Side::Pos, XNonneg(t), atom});
      from1.push_back(fin1[i].parent);
      from2.push_back(fin2[j].parent);
      ri -= t;
      rj -= t;
      if (ri == 0 && ++i < fin1.size()) ri = fin1[i].mag;
      if (rj == 0 && ++j < fin2.size()) rj = fin2[j].mag;
    }
  }

  CommonRefinement out;
  out.refined = FormalSum(std::move(terms));
  out.from_c1.parent_of = std::move(from1);
  out.from_c2.parent_of = std::move(from2);
  return out;
}

FourCornerResult four_corner(const FormalSum& c, const FormalSum& d) {
  FourCornerResult out;
  out.c_plus = c.positive_part();
  out.c_minus = c.negative_part();
  out.d_plus = d.positive_part();
  out.d_minus = d.negative_part();

  // primed_eq(c^Σ, d^Σ) atomwise is equivalent to exact equality of the two
  // nonnegative unions below, including at infinite atoms.
  FormalSum u1 = disjoint_union(out.c_minus, out.d_plus);
  FormalSum u2 = disjoint_union(out.c_plus, out.d_minus);
  CommonRefinement common = common_refine(u1, u2);

  const std::size_t ncm = out.c_minus.size();
  const std::size_t ncp = out.c_plus.size();
  std::vector<Term> ec, em, ep, ed;
  std::vector<std::size_t> ec_cp, ec_cm, ep_cp, ep_dp, em_cm, em_dm, ed_dp,
      ed_dm;
  for (std::size_t i = 0; i < common.refined.size(); ++i) {
    const Term& t = common.refined.terms()[i];
    std::size_t p1 = common.from_c1.parent_of[i];  // into c_minus ∪̇ d_plus
    std::size_t p2 = common.from_c2.parent_of[i];  // into c_plus ∪̇ d_minus
    bool from_cm = p1 < ncm;
    bool from_cp = p2 < ncp;
    if (from_cm && from_cp) {
      ec.push_back(t);
      ec_cm.push_back(p1);
      ec_cp.push_back(p2);
    } else if (!from_cm && from_cp) {
      ep.push_back(t);
      ep_dp.push_back(p1 - ncm);
      ep_cp.push_back(p2);
    } else if (from_cm && !from_cp) {
      em.push_back(t);
      em_cm.push_back(p1);
      em_dm.push_back(p2 - ncp);
    } else {
      ed.push_back(t);
      ed_dp.push_back(p1 - ncm);
      ed_dm.push_back(p2 - ncp);
    }
  }
  out.e_c = FormalSum(std::move(ec));
  out.e_minus = FormalSum(std::move(em));
  out.e_plus = FormalSum(std::move(ep));
  out.e_d = FormalSum(std::move(ed));

  auto concat = [](std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  out.w_c_plus.parent_of = concat(ec_cp, ep_cp);    // e_c ∪̇ e_plus
  out.w_c_minus.parent_of = concat(ec_cm, em_cm);   // e_c ∪̇ e_minus
  out.w_d_plus.parent_of = concat(ed_dp, ep_dp);    // e_d ∪̇ e_plus
  out.w_d_minus.parent_of = concat(ed_dm, em_dm);   // e_d ∪̇ e_minus
  return out;
}

}  // namespace lri
