#include "linalg/exponent.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "linalg/format.hpp"
#include "runtime/error.hpp"

namespace sw {

Exponent::Exponent(double p) : kind_(Kind::Finite), value_(p) {
  if (std::isinf(p) && p > 0) {
    kind_ = Kind::Infinite;
    value_ = 0.0;
    return;
  }
  if (!(p > 0.0) || !std::isfinite(p))
    throw UsageError("exponent must lie in (0, inf], got " + std::to_string(p));
}

double Exponent::value() const {
  if (is_infinite()) throw UsageError("finite value requested from an infinite exponent");
  return value_;
}

double Exponent::as_double() const noexcept {
  return is_infinite() ? std::numeric_limits<double>::infinity() : value_;
}

Exponent Exponent::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF" || text == "oo")
    return infinity();

  auto parse_number = [&](std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw UsageError("cannot parse exponent '" + std::string(text) + "'");
    return v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const double num = parse_number(text.substr(0, slash));
    const double den = parse_number(text.substr(slash + 1));
    if (den == 0.0) throw UsageError("zero denominator in exponent '" + std::string(text) + "'");
    return Exponent(num / den);
  }
  return Exponent(parse_number(text));
}

std::string Exponent::to_string() const {
  return is_infinite() ? "inf" : format_double(value_);
}

Exponent conjugate_exponent(const Exponent& p) {
  if (p.is_infinite()) return Exponent(1.0);
  const double v = p.value();
  if (v < 1.0)
    throw UsageError("quasi-norm exponent " + p.to_string() + " has no Hölder conjugate");
  if (v == 1.0) return Exponent::infinity();
  return Exponent(1.0 / (1.0 - 1.0 / v));
}

}  // namespace sw
