#include "lri/measure.hpp"

#include <algorithm>
#include <map>

#include "lri/error.hpp"

namespace lri {

RealMeasure::RealMeasure(std::vector<WeightedPiece> pieces,
                         std::vector<PointMass> atoms) {
  std::vector<Interval> supports;
  supports.reserve(pieces.size());
  for (const auto& p : pieces) supports.push_back(p.support);
  AtomPartition part = exact_decompose(supports);

  std::vector<Rat> weight(part.atoms.size(), Rat(0));
  for (std::size_t k = 0; k < pieces.size(); ++k)
    for (std::size_t a : part.origin_map[k]) weight[a] += pieces[k].weight;

  // Keep nonzero weights over nondegenerate atoms, merging adjacent
  // equal-weight atoms whose closures touch; evaluation only sees lengths,
  // so a single missing endpoint between them does not matter.
  for (std::size_t a = 0; a < part.atoms.size(); ++a) {
    if (weight[a] == 0 || part.atoms[a].is_singleton()) continue;
    const Interval& cur = part.atoms[a];
    if (!pieces_.empty() && pieces_.back().weight == weight[a] &&
        pieces_.back().support.hi() == cur.lo()) {
      WeightedPiece& prev = pieces_.back();
      prev.support = Interval(prev.support.lo(), prev.support.lo_closed(),
                              cur.hi(), cur.hi_closed());
    } else {
      pieces_.push_back({weight[a], cur});
    }
  }

  std::map<Rat, Rat> mass;
  for (const auto& a : atoms) mass[a.point] += a.mass;
  for (auto& [pt, m] : mass)
    if (m != 0) atoms_.push_back({m, pt});
}

RealMeasure RealMeasure::lebesgue(const Interval& support, Rat weight) {
  return RealMeasure({{std::move(weight), support}}, {});
}

RealMeasure RealMeasure::dirac(Rat point, Rat mass) {
  return RealMeasure({}, {{std::move(mass), std::move(point)}});
}

Rat RealMeasure::eval(const Interval& i) const {
  Rat total(0);
  for (const auto& p : pieces_) total += p.weight * intersect(p.support, i).length();
  for (const auto& a : atoms_)
    if (i.contains(a.point)) total += a.mass;
  return total;
}

bool RealMeasure::nonnegative() const {
  for (const auto& p : pieces_)
    if (p.weight < 0) return false;
  for (const auto& a : atoms_)
    if (a.mass < 0) return false;
  return true;
}

RealMeasure RealMeasure::scaled(const Rat& c) const {
  std::vector<WeightedPiece> ps = pieces_;
  std::vector<PointMass> as = atoms_;
  for (auto& p : ps) p.weight *= c;
  for (auto& a : as) a.mass *= c;
  return RealMeasure(std::move(ps), std::move(as));
}

RealMeasure operator+(const RealMeasure& a, const RealMeasure& b) {
  std::vector<WeightedPiece> ps = a.pieces_;
  ps.insert(ps.end(), b.pieces_.begin(), b.pieces_.end());
  std::vector<PointMass> as = a.atoms_;
  as.insert(as.end(), b.atoms_.begin(), b.atoms_.end());
  return RealMeasure(std::move(ps), std::move(as));
}

RealMeasure operator-(const RealMeasure& a, const RealMeasure& b) {
  return a + b.scaled(Rat(-1));
}

bool RealMeasure::pieces_equal(const RealMeasure& b) const {
  if (pieces_.size() != b.pieces_.size()) return false;
  for (std::size_t k = 0; k < pieces_.size(); ++k)
    if (pieces_[k].weight != b.pieces_[k].weight ||
        !(pieces_[k].support == b.pieces_[k].support))
      return false;
  return true;
}

bool RealMeasure::atoms_equal(const RealMeasure& b) const {
  if (atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t k = 0; k < atoms_.size(); ++k)
    if (atoms_[k].mass != b.atoms_[k].mass || atoms_[k].point != b.atoms_[k].point)
      return false;
  return true;
}

JordanTriple jordan(const RealMeasure& m) {
  std::vector<WeightedPiece> plus_p, minus_p, total_p;
  for (const auto& p : m.pieces()) {
    total_p.push_back({rat_abs(p.weight), p.support});
    if (p.weight > 0)
      plus_p.push_back(p);
    else
      minus_p.push_back({Rat(-p.weight), p.support});
  }
  std::vector<PointMass> plus_a, minus_a, total_a;
  for (const auto& a : m.atoms()) {
    total_a.push_back({rat_abs(a.mass), a.point});
    if (a.mass > 0)
      plus_a.push_back(a);
    else
      minus_a.push_back({Rat(-a.mass), a.point});
  }
  return JordanTriple{RealMeasure(std::move(plus_p), std::move(plus_a)),
                      RealMeasure(std::move(minus_p), std::move(minus_a)),
                      RealMeasure(std::move(total_p), std::move(total_a))};
}

std::pair<Rat, Rat> semivariation(const RealMeasure& m,
                                  const std::vector<Interval>& region) {
  for (std::size_t i = 0; i < region.size(); ++i)
    for (std::size_t j = i + 1; j < region.size(); ++j)
      if (!disjoint(region[i], region[j]))
        throw DomainError("semivariation: region members overlap: " +
                          region[i].str() + " and " + region[j].str());
  JordanTriple jt = jordan(m);
  Rat hi(0), lo(0);
  for (const Interval& r : region) {
    hi += jt.plus.eval(r);
    lo -= jt.minus.eval(r);
  }
  return {lo, hi};
}

}  // namespace lri
