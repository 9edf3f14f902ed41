#include <algorithm>

#include "pictex/engine.hpp"

namespace pictex {

namespace {

using fixed::divide;
using fixed::pythag;

const Decimal kHalf = Decimal::parse(".5");
const Dimen kWmin = Decimal::parse("2.7").to_dimen();
const Dimen kWmax = Decimal::parse("5.3").to_dimen();

// Pen-down stretches of a dashed rule as (offset from the box start, length).
std::vector<std::pair<Dimen, Dimen>> rule_spans(const std::vector<DashSpan>& list, Dimen len,
                                                Dimen leader, bool leaders_first) {
  const std::int64_t count = len.sp() / leader.sp();
  const Dimen total = leader.times(count);
  const Dimen rres = len - total;
  const Dimen lres = leader - rres;
  std::vector<std::pair<Dimen, Dimen>> out;
  Dimen x;
  auto leaders = [&] {
    for (std::int64_t k = 0; k < count; ++k) {
      for (const auto& s : list) {
        if (s.down && s.length > Dimen{}) out.emplace_back(x, s.length);
        x += s.length;
      }
    }
  };
  auto partial = [&](bool right) {
    Dimen a;
    Dimen b;
    for (const auto& s : list) {
      a = b;
      b += s.length;
      Dimen d = b;
      Dimen c = a;
      if (right) {
        d = std::min(d, rres);
        c = std::min(c, rres);
      } else {
        d = std::max(d, lres);
        c = std::max(c, lres);
      }
      const Dimen w = d - c;
      if (s.down && w > Dimen{}) out.emplace_back(x, w);
      x += w;
    }
  };
  if (leaders_first) {
    leaders();
    partial(true);
  } else {
    partial(false);
    leaders();
  }
  return out;
}

PlacedItem rule_item(Point pos, Dimen w, Dimen h) {
  PlacedItem r;
  r.kind = ItemKind::rule;
  r.pos = pos;
  r.ext = {w, h, Dimen{}};
  r.shape = Shape::rect();
  return r;
}

Point rotate32(Point v, const Decimal& c, const Decimal& s) {
  Dimen a = c * v.x;
  a -= s * v.y;
  Dimen b = c * v.y;
  b += s * v.x;
  return {a.over(32), b.over(32)};
}

// Extents covering every item, for a box of the given width.
Extents fit(const std::vector<PlacedItem>& items, Dimen width) {
  Extents e{width, Dimen{}, Dimen{}};
  for (const auto& it : items) {
    e.height = std::max(e.height, it.pos.y + it.ext.height);
    e.depth = std::max(e.depth, it.ext.depth - it.pos.y);
  }
  return e;
}

}  // namespace

void Engine::start(const Measure& x, const Measure& y) { start_d(st_.cs.resolve_point(x, y)); }

void Engine::ljoin(const Measure& x, const Measure& y) { ljoin_d(st_.cs.resolve_point(x, y)); }

void Engine::qjoin(const Measure& mx, const Measure& my, const Measure& ex, const Measure& ey) {
  qjoin_d(st_.cs.resolve_point(mx, my), st_.cs.resolve_point(ex, ey),
          "(" + mx.str() + "," + my.str() + ")");
}

void Engine::start_d(Point p) {
  Cursor& c = st_.cursor;
  c.plotorigin = {st_.cs.xorigin + st_.pen.symbol.shift.x,
                  st_.cs.yorigin + st_.pen.symbol.shift.y};
  c.S = st_.rot.rotate_about_pivot(p);
  st_.pen.reset_phase();
  c.intervalno = 0;
  total_ = Dimen{};
}

void Engine::ljoin_d(Point p) {
  Cursor& c = st_.cursor;
  PenState& pen = st_.pen;
  ++c.intervalno;
  const Point e = st_.rot.rotate_about_pivot(p);
  Point diff{e.x - c.S.x, e.y - c.S.y};
  const Dimen arclength = pythag(diff.x, diff.y);
  total_ += arclength;
  if (!pen.pattern.dashed) {
    if (pen.spacing <= Dimen{}) {
      throw Error(ErrorKind::division_by_zero, "plotsymbolspacing must be positive");
    }
    std::int64_t n = arclength.sp() / pen.spacing.sp();
    if (n < 1) n = 1;
    diff = {diff.x.over(n), diff.y.over(n)};
    Point pos = c.S;
    for (std::int64_t k = 0; k <= n; ++k) {
      emit_dot(pos);
      if (k < n) pos = {pos.x + diff.x, pos.y + diff.y};
    }
  } else if (pen.distacross > arclength) {
    pen.distacross -= arclength;
  } else {
    while (pen.distacross < arclength) {
      const Decimal t = Decimal::from_dimen(divide(pen.distacross, arclength));
      emit_dot({t * diff.x + c.S.x, t * diff.y + c.S.y});
      pen.distacross += pen.spacing;
      pen.advance_dashing();
    }
    pen.distacross -= arclength;
  }
  c.S = e;
}

void Engine::qjoin_d(Point m, Point e, const std::string& midtext) {
  Cursor& c = st_.cursor;
  PenState& pen = st_.pen;
  ++c.intervalno;
  const Point M = st_.rot.rotate_about_pivot(m);
  const Point E = st_.rot.rotate_about_pivot(e);
  const Point a{M.x - c.S.x, M.y - c.S.y};
  const Point d{E.x - M.x, E.y - M.y};
  const Point B{a.x.times(3) - d.x, a.y.times(3) - d.y};
  const Point C{d.x.times(2) - a.x.times(2), d.y.times(2) - a.y.times(2)};
  Point prime = B;
  const Point dprime{kHalf * C.x, kHalf * C.y};
  auto getf = [&] {
    const Dimen f = pythag(prime.x, prime.y);
    prime = {prime.x + dprime.x, prime.y + dprime.y};
    return f;
  };
  Dimen mid = getf();
  mid += getf().times(4);
  Dimen f = getf();
  mid += f;
  mid = mid.over(12);
  Dimen arclength = f;
  arclength += getf().times(4);
  arclength += getf();
  arclength = arclength.over(12);
  arclength += mid;
  total_ += arclength;
  if (pen.distacross > arclength) {
    pen.distacross -= arclength;
  } else {
    init_inverse_interp(mid, arclength, midtext);
    while (pen.distacross < arclength) {
      const Decimal t = inverse_interp(arclength);
      const Point pos{t * (t * C.x + B.x) + c.S.x, t * (t * C.y + B.y) + c.S.y};
      emit_dot(pos);
      pen.distacross += pen.spacing;
      pen.advance_dashing();
    }
    pen.distacross -= arclength;
  }
  c.S = E;
}

InterpCoeffs interp_coeffs(Dimen w) {
  const Decimal ew = Decimal::from_dimen(w);
  Dimen f = -(ew * w);
  f += 32_pt;
  Dimen g = 8_pt - w;
  g = ew * g;
  const Dimen beta = divide(f, g);
  return {beta, 1_pt - beta};
}

Decimal interp_at(const Decimal& v, const InterpCoeffs& k) {
  Dimen g = v * k.gamma;
  g += k.beta;
  g = v * g;
  return Decimal::from_dimen(g);
}

void Engine::init_inverse_interp(Dimen mid, Dimen arclength, const std::string& midtext) {
  if (arclength <= Dimen{}) return;
  Cursor& c = st_.cursor;
  const Dimen e = divide(mid.times(8), arclength);
  if (e < kWmin || e > kWmax) {
    c.inverse_quadratic = false;
    const Decimal t = Decimal::from_dimen(e.over(8));
    const long pc = 2 * c.intervalno;
    const long pb = pc - 1;
    const long pa = pb - 1;
    diag_.note(std::to_string(pb) + "th point " + midtext +
               " being plotted doesn't lie in the middle third of the arc between the " +
               std::to_string(pa) + "th and " + std::to_string(pc) + "th points: [arc length " +
               std::to_string(pa) + " to " + std::to_string(pb) + "]/[arc length " +
               std::to_string(pa) + " to " + std::to_string(pc) + "]=" + t.str() + ".");
    return;
  }
  c.inverse_quadratic = true;
  const InterpCoeffs k = interp_coeffs(e);
  c.beta = k.beta;
  c.gamma = k.gamma;
}

Decimal Engine::inverse_interp(Dimen arclength) const {
  const Cursor& c = st_.cursor;
  const Decimal v = Decimal::from_dimen(divide(st_.pen.distacross, arclength));
  if (!c.inverse_quadratic) return v;
  return interp_at(v, {c.beta, c.gamma});
}

void Engine::elliptical_arc(const Decimal& a, const Decimal& b, const Decimal& degrees,
                            const Measure& sx, const Measure& sy, const Measure& cx,
                            const Measure& cy) {
  Dimen angle = degrees.to_dimen();
  bool negative = false;
  if (!(angle > Dimen{})) {
    negative = true;
    angle = -angle;
  }
  const Point center = st_.cs.resolve_point(cx, cy);
  const Point startp = st_.cs.resolve_point(sx, sy);
  Point v{startp.x - center.x, startp.y - center.y};
  if (v.x == Dimen{} && v.y == Dimen{}) {
    throw Error(ErrorKind::degenerate, "arc start point coincides with its center");
  }
  if (a.scaled() == 0 || b.scaled() == 0) {
    throw Error(ErrorKind::degenerate, "arc axes ratio must be nonzero");
  }
  v = {divide(v.x, a.to_dimen()), divide(v.y, b.to_dimen())};
  auto scale = [&](Point u) { return Point{a * u.x + center.x, b * u.y + center.y}; };
  auto step = [&](const Decimal& cosv, const Decimal& sinv) {
    const Decimal s = negative ? sinv.negated() : sinv;
    const Point m = rotate32(v, cosv, s);
    const Point e = rotate32(m, cosv, s);
    const Point mp = scale(m);
    qjoin_d(mp, scale(e), "(" + Measure(mp.x).str() + "," + Measure(mp.y).str() + ")");
    v = e;
  };
  start_d(scale(v));
  static const Decimal kCos = Decimal::parse("31.72624");
  static const Decimal kSin = Decimal::parse("4.17684");
  static const Dimen kAlmost15 = Decimal::parse("14.9999").to_dimen();
  while (angle > kAlmost15) {
    step(kCos, kSin);
    angle -= 15_pt;
  }
  if (angle > Dimen{}) {
    angle = Decimal::parse("100.53096") * angle;
    angle = angle.over(360);
    const auto sc = fixed::sincos(angle);
    step(sc.cos, sc.sin);
  }
}

void Engine::arrow(Dimen headlength, const Decimal& t1, const Decimal& t2, Point tipoffset,
                   const Measure& fx, const Measure& fy, const Measure& tx, const Measure& ty) {
  const Point to = st_.cs.resolve_point(tx, ty);
  const Point from = st_.cs.resolve_point(fx, fy);
  const Point d{to.x - from.x, to.y - from.y};
  if (d.x == Dimen{} && d.y == Dimen{}) {
    throw Error(ErrorKind::degenerate, "arrow endpoints coincide");
  }
  Point tip = st_.rot.reverse_rotate(tipoffset);
  tip = {tip.x + to.x, tip.y + to.y};
  start_d({tip.x - d.x, tip.y - d.y});
  ljoin_d(tip);
  const Dimen len = pythag(d.x, d.y);
  const Decimal cosv = Decimal::from_dimen(divide(d.x, len).times(32));
  const Decimal sinv = Decimal::from_dimen(divide(d.y, len).times(32));
  auto halfhead = [&](const Decimal& a, const Decimal& b) {
    Dimen c = (-headlength).over(2);
    Point m = rotate32({c, a * c}, cosv, sinv);
    c = -headlength;
    Point e = rotate32({c, kHalf * (b * c)}, cosv, sinv);
    start_d(tip);
    m = {m.x + tip.x, m.y + tip.y};
    e = {e.x + tip.x, e.y + tip.y};
    qjoin_d(m, e, "(" + Measure(m.x).str() + "," + Measure(m.y).str() + ")");
  };
  halfhead(t1, t2);
  halfhead(t1.negated(), t2.negated());
}

void Engine::put_d(const Box& box, const Orientation& o, Point p) {
  CoordSystem cs = st_.cs;
  cs.mode = CoordMode::dimension;
  pictex::put(canvas_, cs, st_.rot, box, o.markers, o.offset, Measure(p.x), Measure(p.y), &diag_);
}

void Engine::betweenarrows(const Box& label, const Orientation& o, const Measure& fx,
                           const Measure& fy, const Measure& tx, const Measure& ty) {
  Point from = st_.cs.resolve_point(fx, fy);
  const Point to = st_.cs.resolve_point(tx, ty);
  Point d{to.x - from.x, to.y - from.y};
  from = {from.x + kHalf * d.x, from.y + kHalf * d.y};
  const Dimen lt = st_.style.linethickness;
  const Dimen em = st_.metrics.em;
  const Dimen margin = Decimal::parse(".4") * em;
  const Extents head = st_.metrics.line("x");
  Box box;
  auto glyph = [&](const char* g, Point pos) {
    PlacedItem it;
    it.kind = ItemKind::text;
    it.pos = pos;
    it.ext = head;
    it.text = g;
    box.items.push_back(it);
  };
  if (d.y == Dimen{}) {
    const Dimen span = d.x.abs();
    const Dimen lw = label.ext.width;
    const Dimen m = lw > Dimen{} ? margin : Dimen{};
    Dimen half = (span - lw - m.times(2)).over(2);
    if (half < Dimen{}) half = Dimen{};
    const Dimen rise = -(head.height - head.depth).over(2);
    const Dimen lower = lt - lt.over(2);
    auto shaft = [&](Dimen x0) {
      PlacedItem r = rule_item({x0, Dimen{}}, half, lt.over(2));
      r.ext.depth = lower;
      box.items.push_back(r);
    };
    shaft(Dimen{});
    glyph("←", {Dimen{}, rise});
    const Point lpos{half + m, -(label.ext.height - label.ext.depth).over(2)};
    for (const auto& it : label.items) box.items.push_back(it.translated(lpos));
    shaft(span - half);
    glyph("→", {span - head.width, rise});
    box.ext = fit(box.items, span);
  } else if (d.x == Dimen{}) {
    const Dimen span = d.y.abs();
    const Dimen lw = label.ext.width;
    const Dimen lh = label.ext.height + label.ext.depth;
    const Dimen m = lh > Dimen{} ? margin : Dimen{};
    Dimen half = (span - lh - m.times(2)).over(2);
    if (half < Dimen{}) half = Dimen{};
    const Dimen cx = lw.over(2);
    const Dimen gx = cx - head.width.over(2);
    box.items.push_back(rule_item({cx - lt.over(2), span - half}, lt, half));
    glyph("↑", {gx, span - head.height});
    const Point lpos{Dimen{}, half + m + label.ext.depth};
    for (const auto& it : label.items) box.items.push_back(it.translated(lpos));
    box.items.push_back(rule_item({cx - lt.over(2), Dimen{}}, lt, half));
    glyph("↓", {gx, head.depth});
    box.ext = {lw, span, Dimen{}};
  } else {
    diag_.note("betweenarrows: endpoints differ in both coordinates; nothing drawn");
    return;
  }
  put_d(box, o, from);
}

void Engine::putrule(Point offset, const Measure& fx, const Measure& fy, const Measure& tx,
                     const Measure& ty) {
  putrule_d(offset, st_.cs.resolve_point(fx, fy), st_.cs.resolve_point(tx, ty));
}

void Engine::putrule_d(Point offset, Point from, Point to) {
  const Dimen dx = to.x - from.x;
  const Dimen dy = to.y - from.y;
  const Dimen lt = st_.style.linethickness;
  const bool dashed = st_.pen.pattern.dashed;
  if (dy == Dimen{}) {
    if (dashed) {
      dashed_hline(offset, from, dx);
      return;
    }
    const Dimen w = dx.abs();
    Box box;
    box.ext = {w, lt, Dimen{}};
    box.items.push_back(rule_item({}, w, lt));
    put_d(box, {"l", offset}, dx > Dimen{} ? from : to);
  } else if (dx == Dimen{}) {
    if (dashed) {
      dashed_vline(offset, from, dy);
      return;
    }
    const Dimen h = dy.abs();
    Box box;
    box.ext = {lt, h, Dimen{}};
    box.items.push_back(rule_item({}, lt, h));
    put_d(box, {"b", offset}, dy > Dimen{} ? from : to);
  } else {
    diag_.note("putrule: endpoints differ in both coordinates; nothing drawn");
  }
}

void Engine::dashed_hline(Point offset, Point from, Dimen dx) {
  const DashPattern& p = st_.pen.pattern;
  const Dimen lt = st_.style.linethickness;
  const bool forward = dx > Dimen{};
  const Dimen len = dx.abs();
  Box box;
  box.ext = {len, lt, Dimen{}};
  for (const auto& [x, w] :
       rule_spans(forward ? p.forward : p.backward(), len, p.leader, forward)) {
    box.items.push_back(rule_item({x, Dimen{}}, w, lt));
  }
  put_d(box, {forward ? "l" : "r", offset}, from);
}

void Engine::dashed_vline(Point offset, Point from, Dimen dy) {
  const DashPattern& p = st_.pen.pattern;
  const Dimen lt = st_.style.linethickness;
  const bool down = dy < Dimen{};
  const Dimen len = dy.abs();
  Box box;
  box.ext = {lt, len, Dimen{}};
  for (const auto& [y, h] : rule_spans(down ? p.forward : p.backward(), len, p.leader, down)) {
    box.items.push_back(rule_item({Dimen{}, len - y - h}, lt, h));
  }
  put_d(box, {down ? "t" : "b", offset}, from);
}

void Engine::putbar(Point offset, Dimen breadth, const Measure& fx, const Measure& fy,
                    const Measure& tx, const Measure& ty) {
  if (breadth == Dimen{}) {
    putrule(offset, fx, fy, tx, ty);
    return;
  }
  putbar_d(offset, breadth, fx, fy, tx, ty);
}

void Engine::putbar_d(Point offset, Dimen breadth, const Measure& fx, const Measure& fy,
                      const Measure& tx, const Measure& ty) {
  Point a = st_.cs.resolve_point(fx, fy);
  Point b = st_.cs.resolve_point(tx, ty);
  const Dimen i = breadth.over(2);
  if (b.y == a.y) {
    a.y -= i;
    b.y += i;
  } else if (b.x == a.x) {
    a.x -= i;
    b.x += i;
  } else {
    diag_.note("putbar: endpoints differ in both coordinates; nothing drawn");
    return;
  }
  putrectangle_d(offset, a, b);
}

void Engine::set_bars(BarsConfig config) {
  st_.bars = std::move(config);
  st_.mode = CurveMode::bars;
}

void Engine::putrectangle(Point offset, const Measure& x1, const Measure& y1, const Measure& x2,
                          const Measure& y2) {
  putrectangle_d(offset, st_.cs.resolve_point(x1, y1), st_.cs.resolve_point(x2, y2));
}

void Engine::putrectangle_d(Point offset, Point c1, Point c2) {
  Dimen x1 = std::min(c1.x, c2.x) + offset.x;
  Dimen x2 = std::max(c1.x, c2.x) + offset.x;
  Dimen y1 = std::min(c1.y, c2.y) + offset.y;
  Dimen y2 = std::max(c1.y, c2.y) + offset.y;
  if (st_.shade.rectangles) shaderectangle({x1, y1}, {x2, y2});
  const Dimen i = kHalf * st_.style.linethickness;
  x1 -= i;
  x2 += i;
  putrule_d({}, {x1, y1}, {x2, y1});
  putrule_d({}, {x1, y2}, {x2, y2});
  x1 += i;
  x2 -= i;
  y1 -= i;
  y2 += i;
  putrule_d({}, {x1, y1}, {x1, y2});
  putrule_d({}, {x2, y1}, {x2, y2});
}

Box Engine::frame(Dimen margin, const Box& content) {
  begin_picture();
  st_.cs = CoordSystem{};
  st_.cs.xunit = 1_pt;
  st_.cs.yunit = 1_pt;
  init_inbounds_check();
  put(content, {"Bl", {}}, Measure(Decimal{}), Measure(Decimal{}));
  const Dimen b = content.ext.width + margin;
  const Dimen c = content.ext.height + margin;
  const Dimen d = content.ext.depth + margin;
  putrectangle_d({}, {-margin, -d}, {b, c});
  return end_picture();
}

Box Engine::rectangle(Dimen width, Dimen height) {
  Box empty;
  empty.ext = {width, height, Dimen{}};
  return frame(Dimen{}, empty);
}

void Engine::plot(const std::vector<PlotPoint>& points) {
  if (points.empty()) return;
  switch (st_.mode) {
    case CurveMode::linear:
      start(points[0].x, points[0].y);
      for (std::size_t i = 1; i < points.size(); ++i) ljoin(points[i].x, points[i].y);
      break;
    case CurveMode::quadratic:
      if (points.size() % 2 == 0) {
        throw Error(ErrorKind::parse,
                    "quadratic plot needs an odd number of points, got " +
                        std::to_string(points.size()));
      }
      start(points[0].x, points[0].y);
      for (std::size_t i = 1; i + 1 < points.size(); i += 2) {
        qjoin(points[i].x, points[i].y, points[i + 1].x, points[i + 1].y);
      }
      break;
    case CurveMode::histogram: {
      Measure hx = points[0].x;
      const Measure hy = points[0].y;
      for (std::size_t i = 1; i < points.size(); ++i) {
        putrectangle({}, hx, hy, points[i].x, points[i].y);
        hx = points[i].x;
      }
      break;
    }
    case CurveMode::bars: {
      const BarsConfig& bc = st_.bars;
      for (const auto& p : points) {
        const Measure bx = bc.orientation == 'y' ? p.x : bc.baseline;
        const Measure by = bc.orientation == 'y' ? bc.baseline : p.y;
        putbar(bc.offset, bc.breadth, bx, by, p.x, p.y);
        std::size_t next = 0;
        if (bc.base_labels) {
          if (next >= p.labels.size()) throw Error(ErrorKind::parse, "bar is missing its base label");
          put(p.labels[next++], *bc.base_labels, bx, by);
        }
        if (bc.end_labels) {
          if (next >= p.labels.size()) throw Error(ErrorKind::parse, "bar is missing its end label");
          put(p.labels[next++], *bc.end_labels, p.x, p.y);
        }
      }
      break;
    }
  }
}

void Engine::plot_file(const std::string& file) {
  std::optional<std::string> text = resolver_ ? resolver_(file) : std::nullopt;
  if (!text) throw Error(ErrorKind::io, "cannot read plot file '" + file + "'");
  const auto tokens = read_stream_tokens(*text);
  if (tokens.size() % 2 != 0) {
    throw Error(ErrorKind::parse, "plot file '" + file + "': odd number of coordinates");
  }
  std::vector<PlotPoint> pts;
  for (std::size_t i = 0; i < tokens.size(); i += 2) {
    pts.push_back({Measure::parse(tokens[i], st_.metrics.em),
                   Measure::parse(tokens[i + 1], st_.metrics.em), {}});
  }
  plot(pts);
}

}  // namespace pictex
