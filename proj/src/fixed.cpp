#include "pictex/fixed.hpp"

#include <algorithm>

namespace pictex::fixed {

namespace {

struct DivState {
  Dimen remainder;  // dimenB
  Dimen divisor;    // dimenC
  Dimen quotient;   // dimenA
};

void divstep(DivState& s, std::int64_t factor) {
  s.remainder = s.remainder.times(factor);
  const std::int64_t digit = s.remainder.sp() / s.divisor.sp();
  s.quotient = s.quotient.times(factor) + Dimen::from_sp(digit);
  s.remainder -= Dimen::from_sp(digit * s.divisor.sp());
}

const Dimen kRootTen = Decimal::parse("3.162278").to_dimen();
const Dimen kTenAa = Decimal::parse("8.690286").to_dimen();
const Dimen kTenAc = Decimal::parse("2.773839").to_dimen();
const Dimen kTenAe = Decimal::parse("2.543275").to_dimen();

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Characteristic/mantissa split of an unsigned numeral already known to
// start with a digit, followed by the polynomial correction.
Decimal log10_digits(std::string_view text) {
  const char lead = text[0];
  const std::size_t first_dot = text.find('.', 1);
  const std::string_view int_rest =
      text.substr(1, first_dot == std::string_view::npos ? std::string_view::npos : first_dot - 1);
  std::string_view frac;
  if (first_dot != std::string_view::npos) {
    frac = text.substr(first_dot + 1);
    const std::size_t second = frac.find('.');
    if (second != std::string_view::npos) frac = frac.substr(0, second);
  }

  Dimen characteristic = 1_pt;
  Dimen mantissa;
  if (lead == '0') {
    // Count leading zeros of the fraction; the first nonzero digit becomes
    // the mantissa's integer digit.
    std::size_t i = 0;
    for (;; ++i) {
      characteristic -= 1_pt;
      if (i == frac.size()) {
        characteristic = 1_pt;
        mantissa = 1_pt;
        break;
      }
      if (frac[i] != '0') {
        std::string m(1, frac[i]);
        m += '.';
        m += frac.substr(i + 1);
        mantissa = Decimal::parse(m).to_dimen();
        break;
      }
    }
  } else {
    characteristic += Dimen::from_pt(static_cast<std::int64_t>(int_rest.size()));
    std::string m(1, lead);
    m += '.';
    m += int_rest;
    m += frac;
    mantissa = Decimal::parse(m).to_dimen();
  }

  if (mantissa < kRootTen) {
    mantissa = mantissa.times(10);
    characteristic -= 1_pt;
  }
  const Dimen denom = mantissa + 10_pt;
  const Dimen num = (mantissa - 10_pt).times(10);
  const Dimen t_dimen = divide(num, denom);
  const Decimal t = Decimal::from_dimen(t_dimen);
  const Decimal tt = Decimal::from_dimen(t * t_dimen);
  Dimen h = (tt * kTenAe).over(100);
  h += kTenAc;
  h = (tt * h).over(100);
  h += kTenAa;
  h = (t * h).over(100);
  return Decimal::from_dimen(characteristic + h);
}

struct SplitNumeral {
  bool negative = false;
  std::string int_digits;
  std::string frac_digits;
};

SplitNumeral split_numeral(std::string_view text) {
  Decimal::parse(text);  // validates
  SplitNumeral out;
  std::size_t i = 0;
  while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') out.negative = !out.negative;
    ++i;
  }
  const std::size_t dot = text.find('.', i);
  out.int_digits = std::string(text.substr(i, dot == std::string_view::npos ? std::string_view::npos : dot - i));
  if (dot != std::string_view::npos) out.frac_digits = std::string(text.substr(dot + 1));
  return out;
}

}  // namespace

Dimen divide(Dimen a, Dimen b) {
  if (b.sp() == 0) throw Error(ErrorKind::division_by_zero, "divide: zero divisor");
  DivState s{a, b, Dimen{}};
  const std::int64_t q = std::int64_t{a.sp()} / b.sp();
  s.quotient = Dimen::from_sp(q);
  s.remainder = a - Dimen::from_sp(q * b.sp());
  const Dimen mag = b.abs();
  if (mag < 64_pt) {
    divstep(s, 256);
    divstep(s, 256);
  } else if (mag < 256_pt) {
    divstep(s, 64);
    divstep(s, 32);
    divstep(s, 32);
  } else {
    for (int i = 0; i < 5; ++i) divstep(s, 8);
    s.quotient = s.quotient.times(2);
  }
  return s.quotient;
}

Dimen pythag(Dimen a, Dimen b) {
  const Dimen e = a.abs();
  const Dimen f = b.abs() + e;
  if (f.sp() == 0) return Dimen{};
  // 8|a|/(|a|+|b|) - 4, doubled: t in [-8, 8]; radicand (t^2 + 64)/2.
  Dimen r = divide(e.times(8), f) - 4_pt;
  r = r.times(2);
  r = Decimal::from_dimen(r) * r;
  r = (r + 64_pt).over(2);
  Dimen h = 7_pt;
  for (int i = 0; i < 3; ++i) {
    h = (h + divide(r, h)).over(2);
  }
  return (Decimal::from_dimen(h) * f).over(8);
}

SinCos sincos(Dimen d) {
  Dimen s = d;
  Dimen c = 32_pt;
  const Decimal value = Decimal::from_dimen(d);
  Dimen term = (value * d).over(64);
  c -= term;
  term = (value * term).over(96);
  s -= term;
  term = (value * term).over(128);
  c += term;
  return {Decimal::from_dimen(s), Decimal::from_dimen(c)};
}

Decimal log10_of(std::string_view numeral) {
  Decimal::parse(numeral);  // malformed input -> parse error
  std::string text(numeral);
  for (;;) {
    if (text.empty()) throw Error(ErrorKind::parse, "log10: empty numeral");
    const char c = text[0];
    if (c == '-') return Decimal{};
    if (c == '+') {
      text.erase(0, 1);
    } else if (c == '.') {
      text.insert(0, "0");
    } else if (is_digit(c)) {
      return log10_digits(text);
    } else {
      throw Error(ErrorKind::parse, "log10: malformed numeral '" + std::string(numeral) + "'");
    }
  }
}

LatticeResult lattice(Dimen anchor, Dimen span, Dimen low) {
  if (span.sp() <= 0) throw Error(ErrorKind::invalid_argument, "lattice: span must be positive");
  const Dimen gap = low - anchor;
  std::int64_t k = std::int64_t{gap.sp()} / span.sp();
  if (gap.sp() > 0 && span.times(k) < gap) ++k;
  return {k, span.times(k) + anchor};
}

int fraction_digits(std::string_view numeral) {
  return static_cast<int>(split_numeral(numeral).frac_digits.size());
}

ScaledRange scale_to_integers(std::string_view from, std::string_view to, std::string_view by) {
  const SplitNumeral parts[3] = {split_numeral(from), split_numeral(to), split_numeral(by)};
  std::size_t k = 1;
  for (const auto& p : parts) k = std::max(k, p.frac_digits.size());
  if (k > 9) throw Error(ErrorKind::overflow, "scale_to_integers: too many fraction digits");
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < k; ++i) scale *= 10;

  std::int64_t values[3];
  for (int i = 0; i < 3; ++i) {
    std::string digits = parts[i].int_digits + parts[i].frac_digits;
    digits.append(k - parts[i].frac_digits.size(), '0');
    if (digits.size() > 18) throw Error(ErrorKind::overflow, "scale_to_integers: numeral too long");
    std::int64_t v = 0;
    for (char c : digits) v = v * 10 + (c - '0');
    values[i] = parts[i].negative ? -v : v;
  }
  if (values[2] == 0) throw Error(ErrorKind::invalid_argument, "tick increment must be nonzero");
  return {values[0], values[1], values[2], scale};
}

std::string scale_down(std::int64_t n, std::int64_t scale) {
  std::string out = n < 0 ? "-" : "";
  std::int64_t a = n < 0 ? -n : n;
  const std::int64_t q = a / scale;
  a -= q * scale;
  out += std::to_string(q);
  out += '.';
  std::int64_t c = a == 0 ? 1 : a;
  c *= 10;
  while (scale > c) {
    out += '0';
    c *= 10;
  }
  out += std::to_string(a);
  return out;
}

}  // namespace pictex::fixed
