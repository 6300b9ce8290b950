#include "lri/step_profile.hpp"

#include <algorithm>

#include "lri/error.hpp"

namespace lri {

namespace {

bool touching(const Interval& a, const Interval& b) {
  // Disjoint by precondition, so at most one closed side at the junction;
  // the union is an interval iff they share the boundary point with exactly
  // one side claiming it.
  return a.hi() == b.lo() && (a.hi_closed() || b.lo_closed());
}

}  // namespace

StepProfile StepProfile::from_parts(
    std::vector<std::pair<Interval, XReal>> parts) {
  std::erase_if(parts, [](const auto& p) {
    return p.first.is_empty() || p.second == XReal(Rat(0));
  });
  std::sort(parts.begin(), parts.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  StepProfile out;
  for (auto& p : parts) {
    if (!out.parts_.empty()) {
      auto& last = out.parts_.back();
      if (last.second == p.second && touching(last.first, p.first)) {
        last.first = Interval(last.first.lo(), last.first.lo_closed(),
                              p.first.hi(), p.first.hi_closed());
        continue;
      }
    }
    out.parts_.push_back(std::move(p));
  }
  return out;
}

StepProfile StepProfile::constant(const Interval& on, XReal value) {
  return from_parts({{on, std::move(value)}});
}

XReal StepProfile::at(const Rat& x) const {
  for (const auto& p : parts_) {
    if (p.first.contains(x)) return p.second;
    if (!p.first.is_empty() && p.first.lo() > x) break;
  }
  return XReal(Rat(0));
}

bool StepProfile::finite_valued() const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](const auto& p) { return p.second.is_finite(); });
}

bool StepProfile::nonneg() const {
  for (const auto& p : parts_) {
    if (p.second.kind() == XKind::NegInf || p.second.is_both_inf())
      return false;
    if (p.second.is_finite() && p.second.value() < 0) return false;
  }
  return true;
}

std::vector<Interval> StepProfile::support() const {
  std::vector<Interval> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.push_back(p.first);
  return out;
}

std::vector<AlignedAtom> sp_align(const StepProfile& a, const StepProfile& b) {
  std::vector<Interval> family;
  for (const auto& p : a.parts()) family.push_back(p.first);
  for (const auto& p : b.parts()) family.push_back(p.first);
  AtomPartition part = exact_decompose(family);

  std::vector<XReal> va(part.atoms.size(), XReal(Rat(0)));
  std::vector<XReal> vb(part.atoms.size(), XReal(Rat(0)));
  std::size_t na = a.parts().size();
  for (std::size_t k = 0; k < family.size(); ++k)
    for (std::size_t idx : part.origin_map[k]) {
      if (k < na)
        va[idx] = a.parts()[k].second;
      else
        vb[idx] = b.parts()[k - na].second;
    }

  std::vector<AlignedAtom> out;
  out.reserve(part.atoms.size());
  for (std::size_t idx = 0; idx < part.atoms.size(); ++idx)
    out.push_back({part.atoms[idx], va[idx], vb[idx]});
  return out;
}

namespace {

StepProfile combine(const StepProfile& a, const StepProfile& b,
                    XReal (*op)(const XReal&, const XReal&)) {
  std::vector<std::pair<Interval, XReal>> parts;
  for (const AlignedAtom& t : sp_align(a, b))
    parts.emplace_back(t.atom, op(t.a, t.b));
  return StepProfile::from_parts(std::move(parts));
}

const Rat& finite_or_throw(const XReal& v) {
  if (!v.is_finite())
    throw DomainError("step profile operation requires finite values");
  return v.value();
}

}  // namespace

StepProfile sp_add(const StepProfile& a, const StepProfile& b) {
  return combine(a, b, [](const XReal& x, const XReal& y) {
    return ext_sum({x, y});
  });
}

StepProfile sp_scale(const StepProfile& a, const Rat& c) {
  std::vector<std::pair<Interval, XReal>> parts;
  for (const auto& p : a.parts()) {
    XReal v = p.second;
    if (v.is_finite()) {
      v = XReal(Rat(v.value() * c));
    } else if (c == 0) {
      v = XReal(Rat(0));
    } else if (c < 0) {
      if (v.kind() == XKind::PosInf)
        v = XReal::neg_inf();
      else if (v.kind() == XKind::NegInf)
        v = XReal::pos_inf();
    }
    parts.emplace_back(p.first, v);
  }
  return StepProfile::from_parts(std::move(parts));
}

StepProfile sp_min(const StepProfile& a, const StepProfile& b) {
  return combine(a, b, [](const XReal& x, const XReal& y) {
    return XReal(std::min(finite_or_throw(x), finite_or_throw(y)));
  });
}

StepProfile sp_max(const StepProfile& a, const StepProfile& b) {
  return combine(a, b, [](const XReal& x, const XReal& y) {
    return XReal(std::max(finite_or_throw(x), finite_or_throw(y)));
  });
}

StepProfile sp_monus(const StepProfile& a, const StepProfile& b) {
  return combine(a, b, [](const XReal& x, const XReal& y) {
    Rat d = finite_or_throw(x) - finite_or_throw(y);
    return XReal(d > 0 ? d : Rat(0));
  });
}

StepProfile sp_cap(const StepProfile& a, const Rat& d) {
  std::vector<std::pair<Interval, XReal>> parts;
  for (const auto& p : a.parts())
    parts.emplace_back(p.first, XReal(std::min(finite_or_throw(p.second), d)));
  return StepProfile::from_parts(std::move(parts));
}

std::optional<Interval> sp_leq_witness(const StepProfile& a,
                                       const StepProfile& b) {
  for (const AlignedAtom& t : sp_align(a, b))
    if (finite_or_throw(t.a) > finite_or_throw(t.b)) return t.atom;
  return std::nullopt;
}

std::optional<Interval> sp_primed_eq_witness(const StepProfile& a,
                                             const StepProfile& b) {
  for (const AlignedAtom& t : sp_align(a, b))
    if (!primed_eq(t.a, t.b)) return t.atom;
  return std::nullopt;
}

}  // namespace lri
