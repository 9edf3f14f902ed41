#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "pictex/error.hpp"

namespace pictex {

/// A length as a signed count of scaled points (65536 sp = 1 pt).
///
/// Arithmetic is checked against the 2^30 sp ceiling; exceeding it throws
/// ErrorKind::overflow instead of wrapping. Division truncates toward zero.
class Dimen {
 public:
  static constexpr std::int32_t kUnity = 65536;
  static constexpr std::int32_t kMaxSp = 0x3FFFFFFF;  // 16383.99998pt

  constexpr Dimen() = default;

  static Dimen from_sp(std::int64_t sp) {
    if (sp > kMaxSp || sp < -kMaxSp) {
      throw Error(ErrorKind::overflow, "dimension too large");
    }
    return Dimen(static_cast<std::int32_t>(sp));
  }
  static Dimen from_pt(std::int64_t pt) { return from_sp(pt * kUnity); }
  static constexpr Dimen max() { return Dimen(kMaxSp); }
  static constexpr Dimen zero() { return Dimen(0); }

  constexpr std::int32_t sp() const { return sp_; }
  double to_pt() const { return static_cast<double>(sp_) / kUnity; }

  Dimen operator+(Dimen o) const { return from_sp(std::int64_t{sp_} + o.sp_); }
  Dimen operator-(Dimen o) const { return from_sp(std::int64_t{sp_} - o.sp_); }
  Dimen operator-() const { return Dimen(-sp_); }
  Dimen& operator+=(Dimen o) { return *this = *this + o; }
  Dimen& operator-=(Dimen o) { return *this = *this - o; }

  /// Integer multiple (`\multiply`, or an integer coefficient).
  Dimen times(std::int64_t n) const { return from_sp(std::int64_t{sp_} * n); }
  /// Integer division truncating toward zero (`\divide`).
  Dimen over(std::int64_t n) const {
    if (n == 0) throw Error(ErrorKind::division_by_zero, "division by zero");
    return from_sp(std::int64_t{sp_} / n);
  }

  Dimen abs() const { return sp_ < 0 ? Dimen(-sp_) : *this; }

  constexpr auto operator<=>(const Dimen&) const = default;

 private:
  constexpr explicit Dimen(std::int32_t sp) : sp_(sp) {}
  std::int32_t sp_ = 0;
};

/// A decimal numeral read the way the host engine reads a coefficient:
/// sign, integer part, and a fraction rounded to 1/65536.
class Decimal {
 public:
  constexpr Decimal() = default;

  /// Parses "[signs]digits[.digits]". Throws ErrorKind::parse on anything else.
  static Decimal parse(std::string_view text);
  /// Strips the unit from a dimension: the numeral a dimen prints as.
  static Decimal from_dimen(Dimen d);
  static Decimal from_int(std::int64_t n);
  /// Exact value in 1/65536 units.
  static Decimal from_scaled(std::int64_t scaled);

  bool negative() const { return negative_ && (whole_ != 0 || frac_ != 0); }
  std::int64_t whole() const { return whole_; }
  std::int32_t frac() const { return frac_; }
  std::int64_t scaled() const {
    const std::int64_t m = whole_ * Dimen::kUnity + frac_;
    return negative_ ? -m : m;
  }
  double to_double() const { return static_cast<double>(scaled()) / Dimen::kUnity; }

  Decimal negated() const {
    Decimal d = *this;
    d.negative_ = !negative_;
    return d;
  }

  /// Reads the numeral with a `pt` unit attached.
  Dimen to_dimen() const;
  /// Coefficient times a dimension (`0.5\dimen`), truncating toward zero.
  Dimen operator*(Dimen d) const;

  /// Shortest decimal that reads back to the same value, with at least one
  /// fractional digit ("20.0", "0.33333", "-1.25").
  std::string str() const;

  bool operator==(const Decimal& o) const { return scaled() == o.scaled(); }

 private:
  bool negative_ = false;
  std::int64_t whole_ = 0;
  std::int32_t frac_ = 0;
};

/// Converts a numeral plus unit keyword (pt, pc, in, bp, cm, mm, dd, cc, sp,
/// em) to a Dimen using the host engine's exact conversion. `em` supplies
/// the font-relative unit.
Dimen to_dimen(const Decimal& value, std::string_view unit, Dimen em);

/// Parses "3pt", "-.5in", "24in" and similar.
Dimen parse_dimen(std::string_view text, Dimen em = Dimen::from_pt(10));

bool is_unit(std::string_view unit);

/// Formats with exactly five decimals of pt, rounding half away from zero.
std::string format_pt5(Dimen d);

inline Dimen operator""_pt(unsigned long long pt) {
  return Dimen::from_pt(static_cast<std::int64_t>(pt));
}
inline Dimen operator""_sp(unsigned long long sp) {
  return Dimen::from_sp(static_cast<std::int64_t>(sp));
}

}  // namespace pictex
