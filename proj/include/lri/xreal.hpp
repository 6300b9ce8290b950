#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lri/rat.hpp"

namespace lri {

// The extended reals R* = R ∪ {+inf, -inf, ~inf}, where ~inf ("both
// infinities at once") is the value of inf - inf under extended summation.
enum class XKind { Finite, PosInf, NegInf, BothInf };

class XReal {
 public:
  XReal() : kind_(XKind::Finite) {}
  XReal(Rat v) : kind_(XKind::Finite), value_(std::move(v)) {}  // NOLINT
  XReal(int v) : XReal(Rat(v)) {}                               // NOLINT

  static XReal pos_inf() { return XReal(XKind::PosInf); }
  static XReal neg_inf() { return XReal(XKind::NegInf); }
  static XReal both_inf() { return XReal(XKind::BothInf); }

  XKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == XKind::Finite; }
  bool is_both_inf() const { return kind_ == XKind::BothInf; }
  const Rat& value() const { return value_; }  // valid only when finite

  friend bool operator==(const XReal& a, const XReal& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != XKind::Finite || a.value_ == b.value_;
  }
  friend bool operator!=(const XReal& a, const XReal& b) { return !(a == b); }

 private:
  explicit XReal(XKind k) : kind_(k) {}
  XKind kind_;
  Rat value_;
};

// Nonnegative extended values [0, +inf]; the coefficient domain of
// nonnegative formal sums and the result domain of variations.
class XNonneg {
 public:
  XNonneg() : inf_(false) {}
  XNonneg(Rat v);  // NOLINT  throws DomainError when v < 0
  XNonneg(int v) : XNonneg(Rat(v)) {}  // NOLINT
  static XNonneg inf() {
    XNonneg x;
    x.inf_ = true;
    return x;
  }

  bool is_inf() const { return inf_; }
  bool is_zero() const { return !inf_ && value_ == 0; }
  const Rat& value() const { return value_; }  // valid only when finite

  friend bool operator==(const XNonneg& a, const XNonneg& b) {
    if (a.inf_ != b.inf_) return false;
    return a.inf_ || a.value_ == b.value_;
  }
  friend bool operator!=(const XNonneg& a, const XNonneg& b) {
    return !(a == b);
  }
  friend bool operator<(const XNonneg& a, const XNonneg& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const XNonneg& a, const XNonneg& b) {
    return a < b || a == b;
  }

  friend XNonneg operator+(const XNonneg& a, const XNonneg& b) {
    if (a.inf_ || b.inf_) return inf();
    return XNonneg(a.value_ + b.value_);
  }
  // 0 * inf = 0: an infinite coefficient over a null set contributes nothing.
  friend XNonneg operator*(const XNonneg& a, const XNonneg& b) {
    if (a.is_zero() || b.is_zero()) return XNonneg();
    if (a.inf_ || b.inf_) return inf();
    return XNonneg(a.value_ * b.value_);
  }

  XReal to_xreal() const {
    return inf_ ? XReal::pos_inf() : XReal(value_);
  }

 private:
  bool inf_;
  Rat value_;
};

// pos - neg with the rule inf - inf = ~inf.
XReal xn_diff(const XNonneg& pos, const XNonneg& neg);

// |a|+ and |a|- in [0, +inf]; both parts of ~inf are +inf.
std::pair<XNonneg, XNonneg> pos_neg_parts(const XReal& a);

// Order-independent extended sum: (sum of positive parts) - (sum of
// negative parts).
XReal ext_sum(std::span<const XReal> terms);
XReal ext_sum(std::initializer_list<XReal> terms);

// a '=' b: equal, or either side is ~inf.
bool primed_eq(const XReal& a, const XReal& b);

// Three-valued order. The only comparisons involving ~inf that hold are
// -inf <= ~inf, ~inf <= ~inf, ~inf <= +inf; everything else with a ~inf
// operand is indefinite.
enum class Trool { True, False, Indefinite };
Trool leq3(const XReal& a, const XReal& b);

// a <= ' b: the order holds, or b = ~inf.
bool leq_primed_right(const XReal& a, const XReal& b);

enum class ExtremumKind { Sup, Inf };

// sup_{-n} / inf_{-n}: the extremum after discarding the n most extreme
// elements. ~inf maps to +inf/-inf per the ordinary conventions, and to the
// opposite ends under the primed ones. Requires n < values.size().
XReal trimmed_extremum(std::span<const XReal> values, std::size_t n,
                       ExtremumKind kind, bool primed);

}  // namespace lri
