#include "lri/rat.hpp"

#include <charconv>

#include "lri/error.hpp"

namespace lri {

std::string rat_to_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_from_string(std::string_view s) {
  if (s.empty()) throw ParseError("empty rational literal");
  auto is_digits = [](std::string_view t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  bool neg = false;
  if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
    neg = num.front() == '-';
    num.remove_prefix(1);
  }
  if (!is_digits(num) || !is_digits(den))
    throw ParseError("malformed rational literal: " + std::string(s));
  Int p{std::string(num)};
  Int q{std::string(den)};
  if (q == 0) throw ParseError("zero denominator: " + std::string(s));
  Rat r(p, q);
  return neg ? Rat(-r) : r;
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

Int rat_ceil(const Rat& r) {
  Int q = numerator(r) / denominator(r);  // truncates toward zero
  if (q * denominator(r) != numerator(r) && r > 0) ++q;
  return q;
}

}  // namespace lri
