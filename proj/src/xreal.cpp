#include "lri/xreal.hpp"

#include <algorithm>

#include "lri/error.hpp"

namespace lri {

XNonneg::XNonneg(Rat v) : inf_(false), value_(std::move(v)) {
  if (value_ < 0) throw DomainError("XNonneg from negative rational");
}

XReal xn_diff(const XNonneg& pos, const XNonneg& neg) {
  if (pos.is_inf() && neg.is_inf()) return XReal::both_inf();
  if (pos.is_inf()) return XReal::pos_inf();
  if (neg.is_inf()) return XReal::neg_inf();
  return XReal(pos.value() - neg.value());
}

std::pair<XNonneg, XNonneg> pos_neg_parts(const XReal& a) {
  switch (a.kind()) {
    case XKind::PosInf:
      return {XNonneg::inf(), XNonneg()};
    case XKind::NegInf:
      return {XNonneg(), XNonneg::inf()};
    case XKind::BothInf:
      return {XNonneg::inf(), XNonneg::inf()};
    case XKind::Finite:
      break;
  }
  const Rat& v = a.value();
  if (v >= 0) return {XNonneg(v), XNonneg()};
  return {XNonneg(), XNonneg(Rat(-v))};
}

XReal ext_sum(std::span<const XReal> terms) {
  XNonneg pos, neg;
  for (const XReal& t : terms) {
    auto [p, n] = pos_neg_parts(t);
    pos = pos + p;
    neg = neg + n;
  }
  return xn_diff(pos, neg);
}

XReal ext_sum(std::initializer_list<XReal> terms) {
  return ext_sum(std::span<const XReal>(terms.begin(), terms.size()));
}

bool primed_eq(const XReal& a, const XReal& b) {
  return a == b || a.is_both_inf() || b.is_both_inf();
}

Trool leq3(const XReal& a, const XReal& b) {
  if (!a.is_both_inf() && !b.is_both_inf()) {
    // Total order on [-inf, +inf].
    if (a.kind() == XKind::NegInf || b.kind() == XKind::PosInf)
      return Trool::True;
    if (a.kind() == XKind::PosInf || b.kind() == XKind::NegInf)
      return a.kind() == b.kind() ? Trool::True : Trool::False;
    return a.value() <= b.value() ? Trool::True : Trool::False;
  }
  if (b.is_both_inf() &&
      (a.kind() == XKind::NegInf || a.kind() == XKind::BothInf))
    return Trool::True;
  if (a.is_both_inf() && b.kind() == XKind::PosInf) return Trool::True;
  return Trool::Indefinite;
}

bool leq_primed_right(const XReal& a, const XReal& b) {
  return b.is_both_inf() || leq3(a, b) == Trool::True;
}

namespace {

// Collapse ~inf to a definite infinity per the requested convention, giving
// values in the totally ordered [-inf, +inf].
XReal collapse_both(const XReal& v, ExtremumKind kind, bool primed) {
  if (!v.is_both_inf()) return v;
  const bool to_pos = (kind == ExtremumKind::Sup) != primed;
  return to_pos ? XReal::pos_inf() : XReal::neg_inf();
}

bool total_less(const XReal& a, const XReal& b) {
  auto rank = [](const XReal& v) {
    switch (v.kind()) {
      case XKind::NegInf:
        return -1;
      case XKind::Finite:
        return 0;
      default:
        return 1;  // PosInf; BothInf collapsed before use
    }
  };
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb;
  return ra == 0 && a.value() < b.value();
}

}  // namespace

XReal trimmed_extremum(std::span<const XReal> values, std::size_t n,
                       ExtremumKind kind, bool primed) {
  if (n >= values.size())
    throw DomainError("trimmed_extremum: n must be < number of values");
  std::vector<XReal> mapped;
  mapped.reserve(values.size());
  for (const XReal& v : values) mapped.push_back(collapse_both(v, kind, primed));
  // Discarding the n most extreme elements minimizes (resp. maximizes) the
  // remaining extremum, so the answer is the (n+1)-th greatest or least.
  if (kind == ExtremumKind::Sup) {
    std::nth_element(mapped.begin(), mapped.begin() + static_cast<long>(n),
                     mapped.end(),
                     [](const XReal& a, const XReal& b) { return total_less(b, a); });
  } else {
    std::nth_element(mapped.begin(), mapped.begin() + static_cast<long>(n),
                     mapped.end(), total_less);
  }
  return mapped[n];
}

}  // namespace lri
