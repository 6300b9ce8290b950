#include "lri/selfcheck.hpp"

#include <algorithm>
#include <map>

#include "lri/error.hpp"

namespace lri::selfcheck {

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

int pick_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool flip(Rng& rng) { return pick_int(rng, 0, 1) == 1; }

std::string fail(SuiteResult& r, const std::string& detail) {
  r.pass = false;
  if (r.detail.empty()) r.detail = detail;
  return detail;
}

}  // namespace

Rat rand_rat(Rng& rng, int num_lo, int num_hi, int den_hi) {
  return Rat(pick_int(rng, num_lo, num_hi), pick_int(rng, 1, den_hi));
}

Rat rand_coeff(Rng& rng) {
  Rat r = rand_rat(rng, 1, 80, 8);
  return r > 10 ? Rat(10) : r;
}

Interval rand_interval(Rng& rng, int lo, int hi, int den) {
  int a = pick_int(rng, lo * den, hi * den);
  int b = pick_int(rng, lo * den, hi * den);
  if (a > b) std::swap(a, b);
  if (a == b && flip(rng)) return Interval::singleton(Rat(a, den));
  if (a == b) b += 1;
  return Interval(Rat(a, den), flip(rng), Rat(b, den), flip(rng));
}

RealMeasure rand_measure(Rng& rng) {
  std::vector<WeightedPiece> pieces;
  std::size_t npieces = pick(rng, 0, 4);
  for (std::size_t i = 0; i < npieces; ++i)
    pieces.push_back({rand_rat(rng, -6, 6, 4), rand_interval(rng)});
  std::vector<PointMass> atoms;
  std::size_t natoms = pick(rng, 0, 3);
  for (std::size_t i = 0; i < natoms; ++i) {
    Rat mass = rand_rat(rng, -4, 4, 4);
    if (mass == 0) mass = 1;
    atoms.push_back({mass, rand_rat(rng, -32, 32, 4)});
  }
  return RealMeasure(std::move(pieces), std::move(atoms));
}

StepProfile rand_step_profile(Rng& rng, bool nonneg) {
  std::vector<std::pair<Interval, XReal>> parts;
  std::size_t n = pick(rng, 1, 5);
  int cursor = pick_int(rng, -16, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int width = pick_int(rng, 1, 6);
    Interval cell(Rat(cursor, 4), true, Rat(cursor + width, 4), false);
    cursor += width + pick_int(rng, 0, 3);
    Rat v = nonneg ? rand_rat(rng, 0, 8, 4) : rand_rat(rng, -8, 8, 4);
    parts.emplace_back(cell, XReal(v));
  }
  return StepProfile::from_parts(std::move(parts));
}

FormalSum rand_nonneg_fsum(Rng& rng, std::size_t max_terms) {
  std::vector<Term> terms;
  std::size_t n = pick(rng, 0, max_terms);
  for (std::size_t i = 0; i < n; ++i)
    terms.push_back({Side::Pos, XNonneg(rand_coeff(rng)), rand_interval(rng)});
  return FormalSum(std::move(terms));
}

FormalSum rand_signed_fsum(Rng& rng, std::size_t max_terms) {
  std::vector<Term> terms;
  std::size_t n = pick(rng, 0, max_terms);
  for (std::size_t i = 0; i < n; ++i)
    terms.push_back({flip(rng) ? Side::Pos : Side::Neg,
                     XNonneg(rand_coeff(rng)), rand_interval(rng)});
  return FormalSum(std::move(terms));
}

TrackedDecomposition rand_decomposition(Rng& rng, const FormalSum& c,
                                        std::size_t stages) {
  std::vector<Term> terms = c.terms();
  std::vector<std::size_t> origin(terms.size());
  for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;

  for (std::size_t s = 0; s < stages && !terms.empty(); ++s) {
    std::size_t at = pick(rng, 0, terms.size() - 1);
    Term t = terms[at];
    std::size_t parent = origin[at];
    terms.erase(terms.begin() + static_cast<long>(at));
    origin.erase(origin.begin() + static_cast<long>(at));
    if (flip(rng) && !t.magnitude.is_inf() && !t.set.is_singleton()) {
      // set split at an interior grid point
      Rat cut = t.set.lo() + (t.set.hi() - t.set.lo()) *
                                 Rat(pick_int(rng, 1, 7), 8);
      terms.push_back({t.side, t.magnitude,
                       Interval(t.set.lo(), t.set.lo_closed(), cut, false)});
      origin.push_back(parent);
      terms.push_back({t.side, t.magnitude,
                       Interval(cut, true, t.set.hi(), t.set.hi_closed())});
      origin.push_back(parent);
    } else if (!t.magnitude.is_inf()) {
      // coefficient split
      Rat part = t.magnitude.value() * Rat(pick_int(rng, 1, 7), 8);
      terms.push_back({t.side, XNonneg(part), t.set});
      origin.push_back(parent);
      terms.push_back({t.side, XNonneg(Rat(t.magnitude.value() - part)), t.set});
      origin.push_back(parent);
    } else {
      // infinite coefficient: peel a finite chunk
      terms.push_back({t.side, XNonneg(rand_coeff(rng)), t.set});
      origin.push_back(parent);
      terms.push_back({t.side, XNonneg::inf(), t.set});
      origin.push_back(parent);
    }
  }
  TrackedDecomposition out;
  out.sum = FormalSum(terms);  // no zero terms were created; indices align
  out.to_origin.parent_of = std::move(origin);
  return out;
}

// ---- suites --------------------------------------------------------------

SuiteResult suite_procedure1_colors(Rng& rng, std::size_t cases) {
  SuiteResult r{"procedure1-color-law", cases, true, ""};
  for (std::size_t it = 0; it < cases && r.pass; ++it) {
    std::size_t k = pick(rng, 1, 5);
    std::vector<FormalSum> inputs;
    for (std::size_t i = 0; i < k; ++i)
      inputs.push_back(rand_nonneg_fsum(rng, 6));
    Listing listing = flip(rng) ? Listing::Diagonal : Listing::RowMajor;
    ColoredPieces pieces = procedure1(inputs, listing);

    std::vector<StepProfile> in_profiles;
    for (const FormalSum& c : inputs) in_profiles.push_back(evaluate(c));
    std::vector<Interval> family;
    for (const StepProfile& p : in_profiles)
      for (const auto& part : p.parts()) family.push_back(part.first);
    AtomPartition part = exact_decompose(family);

    for (std::size_t n = 0; n < k; ++n) {
      StepProfile color_profile = evaluate(pieces.color_class(n));
      for (const Interval& atom : part.atoms) {
        Rat x = interval_sample(atom);
        std::vector<XReal> values;
        for (const StepProfile& p : in_profiles) values.push_back(p.at(x));
        XReal want = trimmed_extremum(values, n, ExtremumKind::Sup, false);
        if (color_profile.at(x) != want) {
          fail(r, "color " + std::to_string(n) + " off at " + atom.str());
          break;
        }
      }
      // No pieces of impossible colors.
      if (!pieces.color_class(k).terms().empty()) fail(r, "color >= #inputs");
    }
  }
  return r;
}

SuiteResult suite_procedure1_lifts(Rng& rng, std::size_t cases) {
  SuiteResult r{"procedure1-lift-laws", cases, true, ""};
  for (std::size_t it = 0; it < cases && r.pass; ++it) {
    std::size_t k = pick(rng, 1, 4);
    std::vector<FormalSum> inputs;
    for (std::size_t i = 0; i < k; ++i)
      inputs.push_back(rand_nonneg_fsum(rng, 4));
    ColoredPieces pieces = procedure1(inputs, Listing::Diagonal);

    // Conservation per input: the induced decomposition verifies.
    for (std::size_t n = 0; n < k; ++n) {
      auto [child, witness] = pieces.input_decomposition(n);
      if (!verify_decomposition(inputs[n], child, witness)) {
        fail(r, "input " + std::to_string(n) + " pieces fail decomposition");
        break;
      }
    }

    // Per atom and color, lifts tile [0, color profile value) contiguously
    // from zero; per atom and input, they tile [0, running total).
    std::map<Interval, std::map<std::size_t, std::vector<std::pair<Rat, Rat>>>>
        by_color, by_input;
    for (const ColoredPiece& p : pieces.pieces) {
      by_color[p.set][p.color].push_back({p.lift_lo, p.lift_hi});
      by_input[p.set][p.input_index].push_back({p.lift_lo, p.lift_hi});
    }
    auto tiles = [&](std::vector<std::pair<Rat, Rat>> v, const Rat& top) {
      std::sort(v.begin(), v.end());
      Rat at(0);
      for (auto& [lo, hi] : v) {
        if (lo != at) return false;
        at = hi;
      }
      return at == top;
    };
    for (auto& [atom, colors] : by_color) {
      Rat x = interval_sample(atom);
      for (auto& [color, lifts] : colors) {
        std::vector<XReal> values;
        for (const FormalSum& c : inputs) values.push_back(eval_at(c, x));
        XReal want = trimmed_extremum(values, color, ExtremumKind::Sup, false);
        if (!tiles(lifts, want.value()))
          fail(r, "color lifts do not tile at " + atom.str());
      }
    }
    for (auto& [atom, ins] : by_input) {
      Rat x = interval_sample(atom);
      for (auto& [input, lifts] : ins)
        if (!tiles(lifts, eval_at(inputs[input], x).value()))
          fail(r, "input lifts do not tile at " + atom.str());
    }

    // Nesting: a color-n lift lies inside exactly one color-m lift, m < n.
    for (const ColoredPiece& p : pieces.pieces) {
      for (std::size_t m = 0; m < p.color && r.pass; ++m) {
        std::size_t hits = 0;
        for (const ColoredPiece& q : pieces.pieces)
          if (q.color == m && interval_subset(p.set, q.set) &&
              q.lift_lo <= p.lift_lo && p.lift_hi <= q.lift_hi)
            ++hits;
        if (hits != 1)
          fail(r, "nesting violated: " + std::to_string(hits) + " hosts");
      }
      if (!r.pass) break;
    }
  }
  return r;
}

SuiteResult suite_decomposition_invariance(Rng& rng, std::size_t cases) {
  SuiteResult r{"variation-decomposition-invariance", cases, true, ""};
  for (std::size_t it = 0; it < cases && r.pass; ++it) {
    RealMeasure m = rand_measure(rng);
    FormalSum c = rand_signed_fsum(rng, 5);
    TrackedDecomposition d = rand_decomposition(rng, c, 3);
    if (!verify_decomposition(c, d.sum, d.to_origin)) {
      fail(r, "generated decomposition failed to verify");
      break;
    }
    VariationReport a = variations(m, c);
    VariationReport b = variations(m, d.sum);
    if (a.pos != b.pos || a.neg != b.neg || a.total != b.total ||
        a.overall != b.overall)
      fail(r, "variation report changed under decomposition");
  }
  return r;
}

SuiteResult suite_comparison(Rng& rng, std::size_t cases) {
  SuiteResult r{"comparison-lemma", cases, true, ""};
  for (std::size_t it = 0; it < cases && r.pass; ++it) {
    RealMeasure m = rand_measure(rng);
    FormalSum base = rand_signed_fsum(rng, 4);
    FormalSum noise = rand_signed_fsum(rng, 2);
    // Same profile, different presentation: decompose, pad with a
    // cancelling pair.
    FormalSum c = rand_decomposition(rng, base, 2).sum;
    FormalSum d = rand_decomposition(
                      rng, disjoint_union(disjoint_union(base, noise),
                                          noise.opposite()),
                      2)
                      .sum;
    if (sp_primed_eq_witness(evaluate(c), evaluate(d))) {
      fail(r, "profiles should match by construction");
      break;
    }
    XReal ic = variations(m, c).overall;
    XReal id = variations(m, d).overall;
    if (ic.is_finite() && id.is_finite()) {
      if (ic != id) fail(r, "finite overall sums differ");
    } else if (!primed_eq(ic, id)) {
      fail(r, "overall sums not primed-equal");
    }
  }
  return r;
}

SuiteResult suite_jordan(Rng& rng, std::size_t cases) {
  SuiteResult r{"jordan-decomposition", cases, true, ""};
  for (std::size_t it = 0; it < cases && r.pass; ++it) {
    RealMeasure m = rand_measure(rng);
    JordanTriple jt = jordan(m);
    for (int k = 0; k < 6 && r.pass; ++k) {
      Interval probe = rand_interval(rng);
      Rat ev = m.eval(probe);
      if (jt.plus.eval(probe) - jt.minus.eval(probe) != ev)
        fail(r, "mu != plus - minus on " + probe.str());
      if (jt.plus.eval(probe) + jt.minus.eval(probe) != jt.total.eval(probe))
        fail(r, "|mu| != plus + minus on " + probe.str());
      if (jt.plus.eval(probe) < 0 || jt.minus.eval(probe) < 0)
        fail(r, "negative Jordan part");
    }

    // Refinement oracle from below on a fixed window.
    Interval window = Interval::half_open(Rat(-8), Rat(8));
    Rat exact = jt.plus.eval(window);
    Rat prev(0);
    for (int depth = 0; depth <= 6 && r.pass; ++depth) {
      long cells = 1l << depth;
      Rat width = window.length() / cells;
      Rat sum(0);
      for (long i = 0; i < cells; ++i) {
        Rat lo = window.lo() + width * i;
        Rat v = m.eval(Interval(lo, true, lo + width, false));
        if (v > 0) sum += v;
      }
      if (sum > exact) fail(r, "oracle exceeded closed form");
      if (sum < prev) fail(r, "oracle not monotone under refinement");
      prev = sum;
    }
    // Equality at the sign-breakpoint partition: split at every support
    // boundary and isolate every atom point.
    std::vector<Interval> family{window};
    for (const auto& p : m.pieces()) family.push_back(p.support);
    for (const auto& a : m.atoms())
      family.push_back(Interval::singleton(a.point));
    AtomPartition part = exact_decompose(family);
    Rat attained(0);
    for (std::size_t idx : part.origin_map[0]) {
      Rat v = m.eval(part.atoms[idx]);
      if (v > 0) attained += v;
    }
    if (attained != exact) fail(r, "sign-breakpoint refinement missed |mu|+");
  }
  return r;
}

SuiteResult suite_semivariation(Rng& rng, std::size_t cases) {
  SuiteResult r{"semivariation-bruteforce", cases, true, ""};
  for (std::size_t it = 0; it < cases && r.pass; ++it) {
    // Measure with sign structure aligned to the mesh-1/8 grid of [0,2).
    std::vector<WeightedPiece> pieces;
    std::vector<PointMass> atoms;
    for (int cell = 0; cell < 16; ++cell) {
      Rat lo(cell, 8), hi(cell + 1, 8);
      int w = pick_int(rng, -3, 3);
      if (w != 0) pieces.push_back({Rat(w), Interval::half_open(lo, hi)});
      if (pick_int(rng, 0, 4) == 0) {
        Rat p = lo + Rat(pick_int(rng, 1, 7), 64);
        Rat mass = Rat(pick_int(rng, 1, 3), 2);
        if (w < 0) mass = -mass;
        atoms.push_back({mass, p});
      }
    }
    RealMeasure m(std::move(pieces), std::move(atoms));
    auto [lo, hi] = semivariation(m, {Interval::half_open(Rat(0), Rat(2))});

    // All 2^16 subfamilies of the mesh partition, with incremental sums.
    std::vector<Rat> cell_value(16);
    for (int cell = 0; cell < 16; ++cell)
      cell_value[cell] =
          m.eval(Interval::half_open(Rat(cell, 8), Rat(cell + 1, 8)));
    Rat best_hi(0), best_lo(0), current(0);
    auto recurse = [&](auto&& self, int cell) -> void {
      if (cell == 16) {
        best_hi = std::max(best_hi, current);
        best_lo = std::min(best_lo, current);
        return;
      }
      self(self, cell + 1);
      current += cell_value[cell];
      self(self, cell + 1);
      current -= cell_value[cell];
    };
    recurse(recurse, 0);
    if (best_hi != hi || best_lo != lo)
      fail(r, "brute-force semivariation mismatch: got [" +
                  rat_to_string(best_lo) + "," + rat_to_string(best_hi) +
                  "], want [" + rat_to_string(lo) + "," + rat_to_string(hi) +
                  "]");
  }
  return r;
}

SuiteResult suite_gauge_exactness(Rng& rng, std::size_t cases) {
  SuiteResult r{"gauge-exactness", cases, true, ""};
  for (std::size_t it = 0; it < cases && r.pass; ++it) {
    StepProfile f = rand_step_profile(rng, false);
    RealMeasure m = rand_measure(rng);
    if (f.is_zero()) continue;
    Rat dlo = f.parts().front().first.lo() - 1;
    Rat dhi = f.parts().back().first.hi() + 1;
    Interval domain = Interval::half_open(dlo, dhi);

    Gauge g = Gauge::constant(domain, Rat(pick_int(rng, 1, 4), 4));
    TagSystem coarse = gauge_to_tag_system(domain, g);
    // Refine below the profile's own atoms so every cell sees one value.
    std::vector<Interval> family{domain};
    for (const auto& part : f.parts()) family.push_back(part.first);
    AtomPartition atoms = exact_decompose(family);
    std::vector<TagSystem::Cell> cells;
    for (std::size_t idx : atoms.origin_map[0])
      cells.push_back({atoms.atoms[idx], atoms.atoms[idx]});
    TagSystem aligned(domain, std::move(cells));
    TagSystem fine = refine_tags(coarse, aligned);

    XReal want = riesz_integrate(m, fsum_from_profile(f));
    for (bool kh : {false, true}) {
      TaggedDivision d = kh ? kh_division(fine) : mcshane_division(fine);
      std::string why;
      if (!check_division(fine, d, kh, &why)) {
        fail(r, "division invalid: " + why);
        break;
      }
      // Divisions of the finer system remain valid for both parents.
      if (!check_division(coarse, d, false, &why) ||
          !check_division(aligned, d, false, &why)) {
        fail(r, "refined division not valid for a parent: " + why);
        break;
      }
      if (kh && !check_division(fine, d, false, &why)) {
        fail(r, "KH division fails the McShane check: " + why);
        break;
      }
      if (XReal(riemann_sum(f, m, d)) != want) {
        fail(r, "riemann sum not exact");
        break;
      }
    }
  }
  return r;
}

SuiteResult suite_minmax(Rng& rng, std::size_t cases) {
  SuiteResult r{"minmax-lattice", cases, true, ""};
  for (std::size_t it = 0; it < cases && r.pass; ++it) {
    FormalSum c = rand_nonneg_fsum(rng, 4);
    FormalSum d = rand_nonneg_fsum(rng, 4);
    MinMaxResult mm = minmax(c, d);
    StepProfile pc = evaluate(c), pd = evaluate(d);
    StepProfile want_min = sp_min(pc, pd), want_max = sp_max(pc, pd);
    if (evaluate(mm.e_min) != want_min) fail(r, "min profile off");
    if (evaluate(mm.e_max) != want_max) fail(r, "max profile off");
    if (sp_add(want_min, want_max) != sp_add(pc, pd))
      fail(r, "min + max != c + d");
    // The pieces realize a decomposition of c ∪̇ d.
    ColoredPieces pieces = procedure1({c, d}, Listing::Diagonal);
    FormalSum parent = disjoint_union(c, d);
    std::vector<Term> child_terms;
    DecompositionWitness w;
    for (const ColoredPiece& p : pieces.pieces) {
      child_terms.push_back({Side::Pos, XNonneg(p.coeff), p.set});
      w.parent_of.push_back(p.input_index == 0 ? p.term_index
                                               : c.size() + p.term_index);
    }
    if (!verify_decomposition(parent, FormalSum(std::move(child_terms)), w))
      fail(r, "minmax pieces fail decomposition of c ∪̇ d");
  }
  return r;
}

SuiteResult suite_procedure2(Rng& rng, std::size_t cases) {
  SuiteResult r{"procedure2-color-law", cases, true, ""};
  for (std::size_t it = 0; it < cases && r.pass; ++it) {
    std::size_t k = pick(rng, 1, 3);
    std::vector<std::vector<StepLatticeElem>> inputs(k);
    for (auto& in : inputs) {
      std::size_t n = pick(rng, 1, 3);
      for (std::size_t i = 0; i < n; ++i)
        in.push_back(StepLatticeElem(rand_step_profile(rng, true)));
    }
    LatticePieces pieces = procedure2(inputs);

    std::vector<StepProfile> sums(k);
    for (std::size_t n = 0; n < k; ++n)
      for (const auto& f : inputs[n]) sums[n] = sp_add(sums[n], f.profile());

    // Conservation per input element.
    for (std::size_t n = 0; n < k && r.pass; ++n)
      for (std::size_t m = 0; m < inputs[n].size(); ++m)
        if (pieces.input_total(n, m) != inputs[n][m].profile())
          fail(r, "pieces do not reassemble an input element");

    // Color law on the joint atoms.
    std::vector<Interval> family;
    for (const StepProfile& s : sums)
      for (const auto& part : s.parts()) family.push_back(part.first);
    AtomPartition part = exact_decompose(family);
    for (std::size_t color = 0; color < k && r.pass; ++color) {
      StepProfile total = pieces.color_total(color);
      for (const Interval& atom : part.atoms) {
        Rat x = interval_sample(atom);
        std::vector<XReal> values;
        for (const StepProfile& s : sums) values.push_back(s.at(x));
        if (total.at(x) !=
            trimmed_extremum(values, color, ExtremumKind::Sup, false)) {
          fail(r, "color total off at " + atom.str());
          break;
        }
      }
    }

    // Lifts are consistent: hi - lo = piece, nonnegative.
    for (const LatticePiece& p : pieces.pieces)
      if (sp_monus(p.lift_hi.profile(), p.lift_lo.profile()) !=
          p.value.profile())
        fail(r, "lift gap does not equal the piece");
  }
  return r;
}

std::vector<SuiteResult> run_all(std::uint64_t seed, std::size_t cases) {
  Rng rng(seed);
  std::vector<SuiteResult> out;
  out.push_back(suite_procedure1_colors(rng, cases));
  out.push_back(suite_procedure1_lifts(rng, std::max<std::size_t>(cases / 4, 1)));
  out.push_back(suite_decomposition_invariance(rng, cases));
  out.push_back(suite_comparison(rng, cases));
  out.push_back(suite_jordan(rng, std::max<std::size_t>(cases / 3, 1)));
  out.push_back(suite_semivariation(rng, std::max<std::size_t>(cases / 6, 1)));
  out.push_back(suite_gauge_exactness(rng, std::max<std::size_t>(cases / 3, 1)));
  out.push_back(suite_minmax(rng, cases));
  out.push_back(suite_procedure2(rng, std::max<std::size_t>(cases / 6, 1)));
  return out;
}

}  // namespace lri::selfcheck
