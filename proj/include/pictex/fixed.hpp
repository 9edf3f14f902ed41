#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "pictex/dimen.hpp"

/// Scaled-integer numeric kernels. Each routine repeats the host engine's
/// register arithmetic step for step, so results agree to the scaled point.
namespace pictex::fixed {

/// a/b as a Dimen in pt units, i.e. sp ~ 65536*a/b. The remainder is
/// refined in two, three or five digit steps depending on |b|.
Dimen divide(Dimen a, Dimen b);

/// sqrt(a^2 + b^2) by three Newton steps on a normalized radicand.
Dimen pythag(Dimen a, Dimen b);

struct SinCos {
  Decimal sin;  // ~ 32 sin(d/32)
  Decimal cos;  // ~ 32 cos(d/32)
};

/// Truncated series for small arcs, |d| <= 4.2pt.
SinCos sincos(Dimen d);

/// log10 of a decimal numeral; negative input yields 0.
Decimal log10_of(std::string_view numeral);

struct LatticeResult {
  std::int64_t index = 0;
  Dimen position;
};

/// Smallest k with anchor + k*span >= low.
LatticeResult lattice(Dimen anchor, Dimen span, Dimen low);

struct ScaledRange {
  std::int64_t from = 0;
  std::int64_t to = 0;
  std::int64_t by = 0;
  std::int64_t scale = 1;
};

/// Brings three numerals to a common power-of-ten scale (at least 10) so a
/// from/to/by range can be stepped with exact integers.
ScaledRange scale_to_integers(std::string_view from, std::string_view to,
                              std::string_view by);

/// n/scale as a decimal string zero padded to the scale's digit count.
std::string scale_down(std::int64_t n, std::int64_t scale);

/// Number of digits after the decimal point in a numeral.
int fraction_digits(std::string_view numeral);

}  // namespace pictex::fixed
