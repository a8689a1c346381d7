#pragma once

#include <string>
#include <string_view>

namespace sw {

/// A Schatten or sequence-space exponent p in (0, inf]. Infinity is a
/// distinct state, never a large finite value.
class Exponent {
 public:
  /// p must be a positive finite number or +infinity (mapped to the infinite
  /// state). Anything else throws UsageError.
  explicit Exponent(double p);

  static Exponent infinity() { return Exponent(Kind::Infinite, 0.0); }

  bool is_infinite() const noexcept { return kind_ == Kind::Infinite; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }

  /// The finite value; throws UsageError for infinity.
  double value() const;
  /// 1/p, with 1/inf = 0 exactly.
  double reciprocal() const noexcept { return is_infinite() ? 0.0 : 1.0 / value_; }
  /// +infinity for the infinite state; for interop at API boundaries only.
  double as_double() const noexcept;

  /// Parses "2", "0.5", "4/3", "inf", "infinity".
  static Exponent parse(std::string_view text);
  /// "inf" or the shortest round-trip decimal.
  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) noexcept {
    return a.kind_ == b.kind_ && (a.is_infinite() || a.value_ == b.value_);
  }
  /// Total order with infinity as the largest element.
  friend bool operator<(const Exponent& a, const Exponent& b) noexcept {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Exponent& a, const Exponent& b) noexcept { return !(b < a); }
  friend bool operator>(const Exponent& a, const Exponent& b) noexcept { return b < a; }
  friend bool operator>=(const Exponent& a, const Exponent& b) noexcept { return !(a < b); }

 private:
  enum class Kind { Finite, Infinite };
  Exponent(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_;
  double value_;
};

/// Hölder conjugate p* with 1/p + 1/p* = 1; defined for p >= 1 only.
Exponent conjugate_exponent(const Exponent& p);

}  // namespace sw
