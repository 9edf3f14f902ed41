#include "pictex/dimen.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace pictex {

namespace {

constexpr std::int64_t kMaxInt = 2147483647;

// Fraction digits -> 1/65536 units, rounding; at most 17 digits count.
std::int32_t round_decimals(std::string_view digits) {
  const std::size_t k = std::min<std::size_t>(digits.size(), 17);
  std::int64_t a = 0;
  for (std::size_t i = k; i-- > 0;) {
    a = (a + (digits[i] - '0') * std::int64_t{131072}) / 10;
  }
  return static_cast<std::int32_t>((a + 1) / 2);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

struct UnitRatio {
  std::string_view name;
  std::int64_t num;
  std::int64_t den;
};

constexpr std::array<UnitRatio, 8> kUnits{{
    {"pt", 1, 1},
    {"in", 7227, 100},
    {"pc", 12, 1},
    {"cm", 7227, 254},
    {"mm", 7227, 2540},
    {"bp", 7227, 7200},
    {"dd", 1238, 1157},
    {"cc", 14856, 1157},
}};

}  // namespace

Decimal Decimal::parse(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') negative = !negative;
    ++i;
  }
  const std::size_t int_begin = i;
  std::int64_t whole = 0;
  while (i < text.size() && is_digit(text[i])) {
    whole = whole * 10 + (text[i] - '0');
    if (whole > kMaxInt) {
      throw Error(ErrorKind::overflow, "number too big: " + std::string(text));
    }
    ++i;
  }
  const bool had_int = i > int_begin;
  std::string_view frac_digits;
  if (i < text.size() && text[i] == '.') {
    ++i;
    const std::size_t frac_begin = i;
    while (i < text.size() && is_digit(text[i])) ++i;
    frac_digits = text.substr(frac_begin, i - frac_begin);
  }
  if (i != text.size() || (!had_int && frac_digits.empty())) {
    throw Error(ErrorKind::parse, "malformed numeral '" + std::string(text) + "'");
  }
  Decimal d;
  d.negative_ = negative;
  d.whole_ = whole;
  d.frac_ = round_decimals(frac_digits);
  if (d.frac_ == Dimen::kUnity) {  // .999999... rounds up
    d.frac_ = 0;
    ++d.whole_;
  }
  return d;
}

Decimal Decimal::from_dimen(Dimen dim) {
  return from_scaled(dim.sp());
}

Decimal Decimal::from_int(std::int64_t n) {
  Decimal d;
  d.negative_ = n < 0;
  d.whole_ = n < 0 ? -n : n;
  return d;
}

Decimal Decimal::from_scaled(std::int64_t scaled) {
  Decimal d;
  d.negative_ = scaled < 0;
  const std::int64_t m = scaled < 0 ? -scaled : scaled;
  d.whole_ = m / Dimen::kUnity;
  d.frac_ = static_cast<std::int32_t>(m % Dimen::kUnity);
  return d;
}

Dimen Decimal::to_dimen() const {
  if (whole_ >= 16384) {
    throw Error(ErrorKind::overflow, "dimension too large: " + str() + "pt");
  }
  const std::int64_t m = whole_ * Dimen::kUnity + frac_;
  return Dimen::from_sp(negative_ ? -m : m);
}

Dimen Decimal::operator*(Dimen v) const {
  // whole*v + trunc(v*frac/65536), then the collected sign.
  const std::int64_t x = v.sp();
  const std::int64_t part = (x * frac_) / Dimen::kUnity;
  const std::int64_t m = whole_ * x + part;
  if (m > Dimen::kMaxSp || m < -Dimen::kMaxSp) {
    throw Error(ErrorKind::overflow, "dimension too large");
  }
  return Dimen::from_sp(negative_ ? -m : m);
}

std::string Decimal::str() const {
  std::string out;
  if (negative()) out += '-';
  out += std::to_string(whole_);
  out += '.';
  std::int64_t s = 10 * std::int64_t{frac_} + 5;
  std::int64_t delta = 10;
  do {
    if (delta > Dimen::kUnity) s += 0x8000 - 50000;  // round the last digit
    out += static_cast<char>('0' + s / Dimen::kUnity);
    s = 10 * (s % Dimen::kUnity);
    delta *= 10;
  } while (s > delta);
  return out;
}

bool is_unit(std::string_view unit) {
  if (unit == "sp" || unit == "em") return true;
  for (const auto& u : kUnits) {
    if (u.name == unit) return true;
  }
  return false;
}

Dimen to_dimen(const Decimal& value, std::string_view unit, Dimen em) {
  if (unit == "em") return value * em;
  if (unit == "sp") {
    // Fractions of a scaled point are dropped.
    const std::int64_t w = value.whole();
    if (w > Dimen::kMaxSp) throw Error(ErrorKind::overflow, "dimension too large");
    return Dimen::from_sp(value.negative() ? -w : w);
  }
  for (const auto& u : kUnits) {
    if (u.name != unit) continue;
    std::int64_t whole = value.whole();
    std::int64_t f = value.frac();
    if (u.num != 1 || u.den != 1) {
      const std::int64_t prod = whole * u.num;
      const std::int64_t remainder = prod % u.den;
      whole = prod / u.den;
      f = (u.num * f + std::int64_t{Dimen::kUnity} * remainder) / u.den;
      whole += f / Dimen::kUnity;
      f %= Dimen::kUnity;
    }
    if (whole >= 16384) {
      throw Error(ErrorKind::overflow, "dimension too large: " + value.str() + std::string(unit));
    }
    const std::int64_t m = whole * Dimen::kUnity + f;
    return Dimen::from_sp(value.negative() ? -m : m);
  }
  throw Error(ErrorKind::parse, "unknown unit '" + std::string(unit) + "'");
}

Dimen parse_dimen(std::string_view text, Dimen em) {
  std::size_t i = text.size();
  while (i > 0 && ((text[i - 1] >= 'a' && text[i - 1] <= 'z'))) --i;
  if (i == text.size()) {
    throw Error(ErrorKind::parse, "missing unit in '" + std::string(text) + "'");
  }
  return to_dimen(Decimal::parse(text.substr(0, i)), text.substr(i), em);
}

std::string format_pt5(Dimen d) {
  const std::int64_t v = std::int64_t{d.sp()} * 100000;
  const std::int64_t mag = ((v < 0 ? -v : v) + Dimen::kUnity / 2) / Dimen::kUnity;
  std::string frac = std::to_string(mag % 100000);
  frac.insert(0, 5 - frac.size(), '0');
  std::string out = (v < 0 && mag != 0) ? "-" : "";
  out += std::to_string(mag / 100000);
  out += '.';
  out += frac;
  return out;
}

}  // namespace pictex
