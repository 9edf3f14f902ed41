#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pictex/dimen.hpp"

namespace pictex {

/// Non-fatal messages gathered while rendering (the engine's log stream).
struct Diagnostics {
  std::vector<std::string> messages;
  void note(std::string message) { messages.push_back(std::move(message)); }
};

struct Point {
  Dimen x;
  Dimen y;
  bool operator==(const Point&) const = default;
};

enum class CoordMode { coordinate, dimension };

/// One coordinate as written: a bare numeral (scaled by the axis unit in
/// coordinate mode) or an explicit dimension.
class Measure {
 public:
  Measure() : value_(Decimal{}) {}
  Measure(Decimal d) : value_(d) {}  // NOLINT(google-explicit-constructor)
  Measure(Dimen d) : value_(d) {}    // NOLINT(google-explicit-constructor)
  static Measure parse(std::string_view text, Dimen em = Dimen::from_pt(10));

  bool is_numeral() const { return std::holds_alternative<Decimal>(value_); }
  const Decimal& numeral() const { return std::get<Decimal>(value_); }
  const Dimen& dimen() const { return std::get<Dimen>(value_); }
  std::string str() const;

 private:
  std::variant<Decimal, Dimen> value_;
};

Dimen resolve(const Measure& m, Dimen unit, CoordMode mode);

struct CoordSystem {
  Dimen xunit = Dimen::from_pt(1);
  Dimen yunit = Dimen::from_pt(1);
  Dimen xorigin;
  Dimen yorigin;
  Decimal xref;
  Decimal yref;
  CoordMode mode = CoordMode::coordinate;

  Dimen xdistance(const Measure& m) const { return resolve(m, xunit, mode); }
  Dimen ydistance(const Measure& m) const { return resolve(m, yunit, mode); }
  Point resolve_point(const Measure& x, const Measure& y) const {
    return {xdistance(x), ydistance(y)};
  }
};

struct RotationState {
  bool active = false;
  Decimal cos = Decimal::from_int(1);
  Decimal sin;
  Dimen xpivot;
  Dimen ypivot;
  Measure xpivot_coord;
  Measure ypivot_coord;

  Point rotate_about_pivot(Point p) const;
  Point rotate_only(Point v) const;
  /// Inverse rotation without the pivot translation.
  Point reverse_rotate(Point v) const;
};

struct Extents {
  Dimen width;
  Dimen height;
  Dimen depth;
  bool operator==(const Extents&) const = default;
};

/// Reference-point shifts for an object of the given extents. Markers are
/// l, r, b, B, t; the offset is subtracted afterwards.
Point orient_shifts(const Extents& e, std::string_view markers, Point offset = {},
                    Diagnostics* diag = nullptr);

enum class ItemKind { dot, rule, text, symbol };

struct Shape {
  enum class Kind { none, disk, rect, glyph };
  Kind kind = Kind::none;
  std::string glyph;

  static Shape disk() { return {Kind::disk, {}}; }
  static Shape rect() { return {Kind::rect, {}}; }
  static Shape text(std::string g) { return {Kind::glyph, std::move(g)}; }
  bool operator==(const Shape&) const = default;
};

/// Something placed on the canvas. `pos` is the item's reference point
/// (left end of its baseline); the ink spans x..x+w, y-d..y+h.
struct PlacedItem {
  ItemKind kind = ItemKind::rule;
  Point pos;
  Extents ext;
  Shape shape;        // dot and symbol items
  std::string text;   // text items
  char align = 'l';   // text items: l, c or r within `ext.width`

  PlacedItem translated(Point by) const {
    PlacedItem out = *this;
    out.pos = {pos.x + by.x, pos.y + by.y};
    return out;
  }
};

/// A typeset object: extents about a reference point plus the items drawn
/// relative to that point.
struct Box {
  Extents ext;
  std::vector<PlacedItem> items;
};

struct BoundingBox {
  Dimen xleft;
  Dimen xright;
  Dimen ybot;
  Dimen ytop;
  bool operator==(const BoundingBox&) const = default;
};

class Canvas {
 public:
  const std::vector<PlacedItem>& items() const { return items_; }
  void add(PlacedItem item) { items_.push_back(std::move(item)); }
  void add_box(const Box& box, Point ref);
  void set_accounting(bool on) { accounting_ = on; }
  bool accounting() const { return accounting_; }
  /// Grows the bounding box by an object at `pos`, when accounting is on.
  void account(Point pos, const Extents& e);
  /// Empty until something has been accounted.
  const std::optional<BoundingBox>& bounds() const { return bounds_; }

 private:
  std::vector<PlacedItem> items_;
  std::optional<BoundingBox> bounds_;
  bool accounting_ = true;
};

/// Pure bounding-box fold step.
BoundingBox account(const std::optional<BoundingBox>& box, Point pos, const Extents& e);

/// The finished picture as a box. `shift` is how far the content is lowered
/// relative to the box baseline; (xleft, shift) are what a saving finalize
/// reports.
struct PictureBox {
  Dimen width;
  Dimen height;  // ytop
  Dimen depth;   // -ybot
  Dimen xleft;
  Dimen ybot;
  Dimen shift;

  /// Extents of the enclosing box once the shift is applied.
  Extents box_extents() const;
};

PictureBox finalize(const Canvas& canvas);

/// Turns a finished sub-picture into a Box whose reference point is the
/// enclosing box's baseline origin.
Box to_box(const Canvas& canvas);

/// Synthetic text metrics: every character advances 0.5em; lines have a
/// 0.7em ascender and 0.3em descender.
struct TextMetrics {
  Dimen em = Dimen::from_pt(10);
  Dimen baselineskip = Dimen::from_pt(12);
  Dimen lineskip = Dimen::from_pt(1);

  Extents line(std::string_view text) const;
};

enum class BlockKind {
  stack,  // fixed gap between line boxes, anchored on the last baseline
  lines,  // baseline spacing, anchored on the last baseline
  Lines,  // baseline spacing, anchored on the first baseline
};

/// Lays out lines aligned l, c or r. For `stack`, `leading` is the gap
/// between boxes; for the other kinds it is ignored in favor of the
/// metrics' baselineskip.
Box layout_text_block(const std::vector<std::string>& lines, char align, Dimen leading,
                      BlockKind kind, const TextMetrics& metrics);

/// Position of an object put at (x, y): resolved, rotated about the pivot,
/// moved to the origin and shifted to the reference point.
Point put_position(const CoordSystem& cs, const RotationState& rot, const Measure& x,
                   const Measure& y, Point shifts);

/// Places `box` at (x, y) with the given orientation markers and offset.
void put(Canvas& canvas, const CoordSystem& cs, const RotationState& rot, const Box& box,
         std::string_view markers, Point offset, const Measure& x, const Measure& y,
         Diagnostics* diag = nullptr);

/// One entry of a multiput list: a position, or "*n dx dy" repetitions.
struct MultiputEntry {
  bool repeat = false;
  Measure x;
  Measure y;
  long count = 0;
};

void multiput(Canvas& canvas, const CoordSystem& cs, const RotationState& rot, const Box& box,
              std::string_view markers, Point offset, const std::vector<MultiputEntry>& entries,
              Diagnostics* diag = nullptr);

}  // namespace pictex
