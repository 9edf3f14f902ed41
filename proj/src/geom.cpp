#include "pictex/geom.hpp"

#include <algorithm>

namespace pictex {

namespace {

const Decimal kHalf = Decimal::parse(".5");

std::size_t count_code_points(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

}  // namespace

Measure Measure::parse(std::string_view text, Dimen em) {
  std::size_t i = text.size();
  while (i > 0 && text[i - 1] >= 'a' && text[i - 1] <= 'z') --i;
  if (i == text.size()) return Measure(Decimal::parse(text));
  return Measure(to_dimen(Decimal::parse(text.substr(0, i)), text.substr(i), em));
}

std::string Measure::str() const {
  if (is_numeral()) return numeral().str();
  return Decimal::from_dimen(dimen()).str() + "pt";
}

Dimen resolve(const Measure& m, Dimen unit, CoordMode mode) {
  if (mode == CoordMode::coordinate) {
    if (!m.is_numeral()) {
      throw Error(ErrorKind::parse,
                  "expected a coordinate, got the dimension " + m.str() + " in coordinate mode");
    }
    return m.numeral() * unit;
  }
  if (m.is_numeral()) {
    throw Error(ErrorKind::parse, "missing unit on " + m.str() + " in dimension mode");
  }
  return m.dimen();
}

Point RotationState::rotate_about_pivot(Point p) const {
  if (!active) return p;
  const Dimen a = p.x - xpivot;
  const Dimen b = p.y - ypivot;
  Dimen c = cos * a;
  c -= sin * b;
  Dimen d = cos * b;
  d += sin * a;
  return {c + xpivot, d + ypivot};
}

Point RotationState::rotate_only(Point v) const {
  if (!active) return v;
  Dimen c = cos * v.x;
  c -= sin * v.y;
  Dimen d = cos * v.y;
  d += sin * v.x;
  return {c, d};
}

Point RotationState::reverse_rotate(Point v) const {
  if (!active) return v;
  const Decimal flipped = sin.negated();
  Dimen c = cos * v.x;
  c -= flipped * v.y;
  Dimen d = cos * v.y;
  d += flipped * v.x;
  return {c, d};
}

Point orient_shifts(const Extents& e, std::string_view markers, Point offset, Diagnostics* diag) {
  Dimen xshift = kHalf * e.width;
  Dimen yshift = kHalf * e.height;
  yshift -= kHalf * e.depth;
  for (char m : markers) {
    switch (m) {
      case 'l': xshift = Dimen{}; break;
      case 'r': xshift = e.width; break;
      case 'b': yshift = -e.depth; break;
      case 'B': yshift = Dimen{}; break;
      case 't': yshift = e.height; break;
      case ' ': break;
      default:
        if (diag) diag->note(std::string("unknown orientation marker '") + m + "' ignored");
        break;
    }
  }
  return {xshift - offset.x, yshift - offset.y};
}

void Canvas::add_box(const Box& box, Point ref) {
  for (const auto& item : box.items) items_.push_back(item.translated(ref));
}

BoundingBox account(const std::optional<BoundingBox>& box, Point pos, const Extents& e) {
  BoundingBox b = box.value_or(BoundingBox{Dimen::max(), -Dimen::max(), Dimen::max(), -Dimen::max()});
  Dimen t = pos.x;
  if (t < b.xleft) b.xleft = t;
  t += e.width;
  if (b.xright < t) b.xright = t;
  Dimen u = pos.y - e.depth;
  if (u < b.ybot) b.ybot = u;
  u += e.depth;
  u += e.height;
  if (u > b.ytop) b.ytop = u;
  return b;
}

void Canvas::account(Point pos, const Extents& e) {
  if (!accounting_) return;
  bounds_ = pictex::account(bounds_, pos, e);
}

Extents PictureBox::box_extents() const {
  const Dimen h = height - shift;
  const Dimen d = depth + shift;
  return {width, std::max(h, Dimen{}), std::max(d, Dimen{})};
}

PictureBox finalize(const Canvas& canvas) {
  PictureBox pb;
  if (!canvas.bounds()) return pb;
  const BoundingBox& b = *canvas.bounds();
  pb.width = b.xright - b.xleft;
  pb.height = b.ytop;
  pb.depth = -b.ybot;
  pb.xleft = b.xleft;
  if (b.ybot > Dimen{}) {
    pb.shift = b.ybot;
  } else if (b.ytop < Dimen{}) {
    pb.shift = b.ytop;
  } else {
    pb.shift = Dimen{};
  }
  pb.ybot = pb.shift;
  return pb;
}

Box to_box(const Canvas& canvas) {
  const PictureBox pb = finalize(canvas);
  Box box;
  box.ext = pb.box_extents();
  const Point by{-pb.xleft, -pb.shift};
  box.items.reserve(canvas.items().size());
  for (const auto& item : canvas.items()) box.items.push_back(item.translated(by));
  return box;
}

Extents TextMetrics::line(std::string_view text) const {
  const auto n = static_cast<std::int64_t>(count_code_points(text));
  if (n == 0) return {};
  return {em.times(n).over(2), em.times(7).over(10), em.times(3).over(10)};
}

Box layout_text_block(const std::vector<std::string>& lines, char align, Dimen leading,
                      BlockKind kind, const TextMetrics& metrics) {
  Box box;
  if (lines.empty()) return box;
  std::vector<Extents> ext;
  ext.reserve(lines.size());
  Dimen width;
  for (const auto& l : lines) {
    ext.push_back(metrics.line(l));
    width = std::max(width, ext.back().width);
  }
  // Baselines measured downward from the first one.
  std::vector<Dimen> drop(lines.size());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    Dimen step;
    if (kind == BlockKind::stack) {
      step = ext[i - 1].depth + leading + ext[i].height;
    } else {
      const Dimen glue = metrics.baselineskip - ext[i - 1].depth - ext[i].height;
      step = glue < Dimen{} ? ext[i - 1].depth + metrics.lineskip + ext[i].height
                            : metrics.baselineskip;
    }
    drop[i] = drop[i - 1] + step;
  }
  const Dimen total = ext.front().height + drop.back() + ext.back().depth;
  const Dimen anchor = kind == BlockKind::Lines ? Dimen{} : drop.back();
  if (kind == BlockKind::Lines) {
    box.ext = {width, ext.front().height, total - ext.front().height};
  } else {
    box.ext = {width, total - ext.back().depth, ext.back().depth};
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (ext[i].width == Dimen{}) continue;
    Dimen x;
    if (align == 'c') x = (width - ext[i].width).over(2);
    if (align == 'r') x = width - ext[i].width;
    PlacedItem item;
    item.kind = ItemKind::text;
    item.pos = {x, anchor - drop[i]};
    item.ext = ext[i];
    item.text = lines[i];
    box.items.push_back(std::move(item));
  }
  return box;
}

Point put_position(const CoordSystem& cs, const RotationState& rot, const Measure& x,
                   const Measure& y, Point shifts) {
  Point p = rot.rotate_about_pivot(cs.resolve_point(x, y));
  return {p.x - cs.xorigin - shifts.x, p.y - cs.yorigin - shifts.y};
}

void put(Canvas& canvas, const CoordSystem& cs, const RotationState& rot, const Box& box,
         std::string_view markers, Point offset, const Measure& x, const Measure& y,
         Diagnostics* diag) {
  const Point shifts = orient_shifts(box.ext, markers, offset, diag);
  const Point pos = put_position(cs, rot, x, y, shifts);
  canvas.add_box(box, pos);
  canvas.account(pos, box.ext);
}

void multiput(Canvas& canvas, const CoordSystem& cs, const RotationState& rot, const Box& box,
              std::string_view markers, Point offset, const std::vector<MultiputEntry>& entries,
              Diagnostics* diag) {
  const Point shifts = orient_shifts(box.ext, markers, offset, diag);
  Point pos{};
  bool placed = false;
  for (const auto& e : entries) {
    if (!e.repeat) {
      pos = put_position(cs, rot, e.x, e.y, shifts);
      canvas.add_box(box, pos);
      canvas.account(pos, box.ext);
      placed = true;
      continue;
    }
    if (e.count < 0) throw Error(ErrorKind::invalid_argument, "multiput: negative repeat count");
    if (!placed && diag) diag->note("multiput: repetition before any position starts at the origin");
    const Point step = rot.rotate_only(cs.resolve_point(e.x, e.y));
    for (long n = 0; n < e.count; ++n) {
      pos = {pos.x + step.x, pos.y + step.y};
      canvas.add_box(box, pos);
    }
    // Only the last copy of a run is accounted.
    canvas.account(pos, box.ext);
    placed = true;
  }
}

}  // namespace pictex
