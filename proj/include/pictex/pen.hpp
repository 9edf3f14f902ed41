#pragma once

#include <cstddef>
#include <vector>

#include "pictex/geom.hpp"

namespace pictex {

/// A plot or shade symbol: a box plus the anchor shifts computed when it
/// was registered.
struct Symbol {
  Box box;
  Point shift;

  static Symbol make(Box box, std::string_view markers = {}, Point offset = {},
                     Diagnostics* diag = nullptr);
  /// Disk of diameter 1pt in a period-sized box, anchored at its center.
  static Symbol default_dot();
};

/// One stretch of a rule pattern.
struct DashSpan {
  bool down = true;
  Dimen length;
  bool operator==(const DashSpan&) const = default;
};

/// Cyclic pen-down/pen-up pattern.
///
/// `entries` is consumed alternately as down and up lengths by the curve
/// sampler; `forward` is the list rules are built from (odd positions pen
/// down). They differ only for the solid pen and the invisible fallback.
struct DashPattern {
  std::vector<Dimen> entries;
  std::vector<DashSpan> forward;
  Dimen leader;
  bool dashed = false;

  static DashPattern solid();
  /// Pattern from a list of lengths; a non-positive total gives the
  /// invisible fallback. Negative entries are rejected.
  static DashPattern from_entries(const std::vector<Dimen>& entries);
  static DashPattern dots(Dimen gap, Dimen spacing);
  static DashPattern dashes(Dimen length);
  static DashPattern dots_near(Dimen gap, Dimen span, Dimen spacing);
  static DashPattern dashes_near(Dimen length, Dimen span);

  /// Reversed rule list, read from the far end.
  std::vector<DashSpan> backward() const;
};

/// 24in, the length of the solid and invisible patterns.
Dimen long_leader();

/// Pen state carried along a curve.
struct PenState {
  Symbol symbol = Symbol::default_dot();
  Dimen spacing = Dimen::from_sp(26214);  // .4pt
  DashPattern pattern = DashPattern::solid();

  Dimen distacross;
  Dimen downlength;
  Dimen uplength;
  std::size_t cursor = 0;

  /// Restarts the up/down list and takes the first down length.
  void reset_phase();
  Dimen next_value();
  /// One symbol's worth of pen-down consumed; skips pen-up stretches.
  void advance_dashing();
};

/// The in-bounds gate. Comparisons are strict, so the boundary is inside.
struct ClipRect {
  bool on = false;
  Dimen left;
  Dimen right;
  Dimen bot;
  Dimen top;

  bool admits(Point p) const {
    if (!on) return true;
    return !(p.x < left || p.x > right || p.y < bot || p.y > top);
  }
};

}  // namespace pictex
