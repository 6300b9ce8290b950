#include "lri/integral.hpp"

#include <algorithm>

#include "lri/error.hpp"

namespace lri {

VariationReport variations(const RealMeasure& m, const FormalSum& c) {
  JordanTriple jt = jordan(m);
  XNonneg pos, neg;
  for (const Term& t : c.terms()) {
    XNonneg mp(jt.plus.eval(t.set));
    XNonneg mn(jt.minus.eval(t.set));
    if (t.side == Side::Pos) {
      pos = pos + t.magnitude * mp;
      neg = neg + t.magnitude * mn;
    } else {
      pos = pos + t.magnitude * mn;
      neg = neg + t.magnitude * mp;
    }
  }
  return VariationReport{pos, neg, pos + neg, xn_diff(pos, neg)};
}

XReal riesz_integrate(const RealMeasure& m, const FormalSum& c) {
  VariationReport r = variations(m, c);
  if (r.overall.is_both_inf())
    throw IndefiniteIntegral(
        "overall sum is ~inf; no Lebesgue-Riesz integral value");
  return r.overall;
}

BestVariations best_variations(const RealMeasure& m, const StepProfile& f) {
  if (!f.finite_valued())
    throw DomainError("best_variations: profile must be finite-valued");
  JordanTriple jt = jordan(m);
  XNonneg plus, minus;
  for (const auto& [atom, v] : f.parts()) {
    Rat vp = v.value() > 0 ? v.value() : Rat(0);
    Rat vn = v.value() < 0 ? Rat(-v.value()) : Rat(0);
    plus = plus + XNonneg(vp * jt.plus.eval(atom)) +
           XNonneg(vn * jt.minus.eval(atom));
    minus = minus + XNonneg(vn * jt.plus.eval(atom)) +
            XNonneg(vp * jt.minus.eval(atom));
  }
  return BestVariations{plus, minus, plus + minus};
}

// ---- Darboux brackets ---------------------------------------------------

Rat poly_eval(const std::vector<Rat>& coeffs, const Rat& x) {
  Rat acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RefinableFunction::RefinableFunction(std::vector<Piece> pieces)
    : pieces_(std::move(pieces)) {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    if (p.domain.is_empty())
      throw DomainError("refinable function piece with empty domain");
    for (std::size_t j = i + 1; j < pieces_.size(); ++j)
      if (!disjoint(p.domain, pieces_[j].domain))
        throw DomainError("refinable function pieces overlap");
    // Cheap sanity check for the declared direction.
    Rat at_lo = poly_eval(p.poly, p.domain.lo());
    Rat at_hi = poly_eval(p.poly, p.domain.hi());
    if (p.increasing ? at_lo > at_hi : at_lo < at_hi)
      throw DomainError("refinable function piece contradicts its direction");
  }
}

RefinableFunction RefinableFunction::monomial(const Interval& domain,
                                              unsigned degree,
                                              bool increasing) {
  std::vector<Rat> coeffs(degree + 1, Rat(0));
  coeffs[degree] = 1;
  return RefinableFunction({{std::move(coeffs), domain, increasing}});
}

Rat RefinableFunction::value_at(const Rat& x) const {
  for (const Piece& p : pieces_)
    if (p.domain.contains(x)) return poly_eval(p.poly, x);
  return Rat(0);
}

std::pair<StepProfile, StepProfile> RefinableFunction::bracket(
    std::size_t depth) const {
  std::vector<std::pair<Interval, XReal>> lo_parts, hi_parts;
  Int cells = Int(1) << depth;
  for (const Piece& p : pieces_) {
    if (p.domain.is_singleton()) {
      XReal v(poly_eval(p.poly, p.domain.lo()));
      lo_parts.emplace_back(p.domain, v);
      hi_parts.emplace_back(p.domain, v);
      continue;
    }
    Rat width = p.domain.length() / Rat(cells);
    for (Int k = 0; k < cells; ++k) {
      Rat a = p.domain.lo() + width * Rat(k);
      Rat b = p.domain.lo() + width * Rat(k + 1);
      bool first = k == 0, last = k == cells - 1;
      Interval cell(a, first ? p.domain.lo_closed() : true, b,
                    last ? p.domain.hi_closed() : false);
      Rat va = poly_eval(p.poly, a), vb = poly_eval(p.poly, b);
      lo_parts.emplace_back(cell, XReal(p.increasing ? va : vb));
      hi_parts.emplace_back(cell, XReal(p.increasing ? vb : va));
    }
  }
  return {StepProfile::from_parts(std::move(lo_parts)),
          StepProfile::from_parts(std::move(hi_parts))};
}

std::pair<Rat, Rat> darboux_bounds(const RealMeasure& m,
                                   const RefinableFunction& f,
                                   std::size_t depth) {
  if (!m.nonnegative())
    throw DomainError("darboux_bounds requires a nonnegative measure");
  auto [minorant, majorant] = f.bracket(depth);
  auto integrate_step = [&m](const StepProfile& s) {
    Rat total(0);
    for (const auto& [atom, v] : s.parts()) total += v.value() * m.eval(atom);
    return total;
  };
  return {integrate_step(minorant), integrate_step(majorant)};
}

// ---- series and certificates -------------------------------------------

SeriesResult series_integrate(const RealMeasure& m,
                              const std::vector<FormalSum>& terms,
                              const XNonneg& tail_total_var_bound) {
  XNonneg neg_sum;
  for (const FormalSum& t : terms) {
    StepProfile prof = evaluate(t);
    neg_sum = neg_sum + (prof.finite_valued()
                             ? best_variations(m, prof).int_minus
                             : variations(m, t).neg);
  }
  if (neg_sum.is_inf())
    throw DomainError(
        "series_integrate: negative variations of the truncation diverge");

  std::vector<XReal> values;
  values.reserve(terms.size());
  for (const FormalSum& t : terms) values.push_back(riesz_integrate(m, t));
  return SeriesResult{ext_sum(values), tail_total_var_bound, terms.size()};
}

NegligibilityCert negligible_certificate(const std::vector<Rat>& points,
                                         std::size_t depth, const Rat& epsilon,
                                         const RealMeasure& m) {
  if (epsilon <= 0) throw DomainError("negligible_certificate: epsilon <= 0");
  NegligibilityCert cert;
  cert.depth = depth;
  cert.epsilon = epsilon;
  if (points.empty() || depth == 0) return cert;

  for (const Rat& p : points)
    for (const auto& a : m.atoms())
      if (a.point == p)
        throw CannotCertify("point " + rat_to_string(p) +
                            " carries an atom of mass " + rat_to_string(a.mass));

  // Radius small enough that the total |mu|-width stays under epsilon: the
  // density contributes at most 2r * W per interval and shrinking also keeps
  // foreign atoms out.
  Rat weight_bound(1);
  for (const auto& p : m.pieces()) weight_bound += rat_abs(p.weight);
  Rat r = epsilon / (weight_bound * 4 * Rat(depth) * Rat(points.size()));
  for (const Rat& p : points)
    for (const auto& a : m.atoms()) {
      Rat dist = rat_abs(Rat(a.point - p));
      if (dist / 2 < r) r = dist / 2;
    }

  JordanTriple jt = jordan(m);
  Rat total_width(0);
  for (const Rat& p : points) {
    Rat rk = r;
    for (std::size_t k = 0; k < depth; ++k) {
      Interval cover(p - rk, true, p + rk, true);
      cert.intervals.push_back(cover);
      total_width += std::max(jt.plus.eval(cover), jt.minus.eval(cover));
      rk /= 2;
    }
  }
  if (total_width >= epsilon)
    throw CannotCertify("width bound missed; measure too concentrated");
  return cert;
}

bool check_certificate(const NegligibilityCert& cert,
                       const std::vector<Rat>& points, const RealMeasure& m) {
  JordanTriple jt = jordan(m);
  Rat total(0);
  for (const Interval& i : cert.intervals)
    total += std::max(jt.plus.eval(i), jt.minus.eval(i));
  if (!points.empty() && total >= cert.epsilon) return false;
  for (const Rat& p : points) {
    std::size_t covered = 0;
    for (const Interval& i : cert.intervals)
      if (i.contains(p)) ++covered;
    if (covered < cert.depth) return false;
  }
  return true;
}

StepProfile indicator_above(const StepProfile& f, const Rat& d, const Rat& c,
                            std::size_t cap) {
  if (d < 0) throw DomainError("indicator_above: level d must be >= 0");
  if (!f.finite_valued())
    throw DomainError("indicator_above: profile must be finite-valued");
  if (c < 0) {
    // The series only has nonnegative terms; run it on |c| and flip.
    return sp_scale(indicator_above(f, d, Rat(-c), cap), Rat(-1));
  }

  // Stabilization index: the series at an atom with excess e freezes once
  // n*e >= c.
  Int required(0);
  for (const auto& [atom, v] : f.parts()) {
    Rat e = v.value() - std::min(v.value(), d);
    if (e > 0) required = std::max(required, rat_ceil(c / e));
  }
  if (required > Int(cap))
    throw StabilizationError(
        "series not stabilized within cap; required " + required.str(),
        required.convert_to<unsigned long>());

  std::vector<std::pair<Interval, XReal>> parts;
  for (const auto& [atom, v] : f.parts()) {
    Rat e = v.value() - std::min(v.value(), d);
    if (e == 0) {
      parts.emplace_back(atom, XReal(Rat(0)));
      continue;
    }
    Rat acc(0);
    Rat prev(0);
    for (std::size_t n = 1; n <= cap; ++n) {
      Rat cur = std::min(Rat(e * n), c);
      acc += cur - prev;
      if (cur == c) break;
      prev = cur;
    }
    parts.emplace_back(atom, XReal(acc));
  }
  StepProfile by_series = StepProfile::from_parts(std::move(parts));

  // The paper route must agree with direct thresholding.
  std::vector<std::pair<Interval, XReal>> direct;
  for (const auto& [atom, v] : f.parts())
    if (v.value() > d) direct.emplace_back(atom, XReal(c));
  if (by_series != StepProfile::from_parts(std::move(direct)))
    throw Error("InternalError", "indicator series disagrees with threshold");
  return by_series;
}

}  // namespace lri
