#include "pictex/engine.hpp"

namespace pictex {

namespace {

using fixed::divide;

const Dimen kSmidge = -Dimen::from_sp(13107);  // -.2pt

Dimen pick(const std::optional<Dimen>& o, Dimen fallback) { return o ? *o : fallback; }

}  // namespace

QuadCoeffs divided_differences(Dimen x1, Dimen y1, Dimen x2, Dimen y2, Dimen x3, Dimen y3) {
  const Dimen e = x2 - x1;
  const Dimen f = divide(y2 - y1, e);
  Dimen h = x3 - x2;
  Dimen g = divide(y3 - y2, h);
  g -= f;
  h += e;
  QuadCoeffs out;
  out.c = divide(g, h);
  out.b = -(Decimal::from_dimen(out.c) * e);
  out.b += f;
  return out;
}

void Engine::set_shade_grid(std::optional<Dimen> span,
                            std::optional<std::pair<Measure, Measure>> anchor) {
  ShadeState& sh = st_.shade;
  if (span) {
    if (*span <= Dimen{}) throw Error(ErrorKind::invalid_argument, "shade grid span must be positive");
    sh.span = *span;
  }
  if (st_.cs.mode == CoordMode::coordinate) {
    if (anchor) {
      sh.xanchor_coord = anchor->first;
      sh.yanchor_coord = anchor->second;
    }
    sh.xanchor = resolve(sh.xanchor_coord, st_.cs.xunit, CoordMode::coordinate);
    sh.yanchor = resolve(sh.yanchor_coord, st_.cs.yunit, CoordMode::coordinate);
  } else if (anchor) {
    sh.xanchor = resolve(anchor->first, st_.cs.xunit, CoordMode::dimension);
    sh.yanchor = resolve(anchor->second, st_.cs.yunit, CoordMode::dimension);
  }
}

void Engine::set_shade_symbol(const ShrinkOverrides& overrides, Box box, const Orientation& o) {
  ShadeState& sh = st_.shade;
  sh.symbol = Symbol::make(std::move(box), o.markers, o.offset, &diag_);
  const Extents& e = sh.symbol.box.ext;
  const Point s = sh.symbol.shift;
  sh.lshrink = pick(overrides[0], s.x + kSmidge);
  sh.rshrink = pick(overrides[1], e.width - s.x + kSmidge);
  sh.bshrink = pick(overrides[2], e.depth + s.y + kSmidge);
  sh.tshrink = pick(overrides[3], e.height - s.y + kSmidge);
}

void Engine::start_shade(bool horizontal, Dimen a, Dimen lo, Dimen hi) {
  ShadeState& sh = st_.shade;
  sh.horizontal = horizontal;
  sh.xS = a;
  sh.ybS = lo;
  sh.ytS = hi;
  sh.origin = {st_.cs.xorigin + sh.symbol.shift.x, st_.cs.yorigin + sh.symbol.shift.y};
}

void Engine::vshade(const Measure& a, const Measure& lo, const Measure& hi) {
  const CoordSystem& cs = st_.cs;
  start_shade(false, cs.xdistance(a), cs.ydistance(lo), cs.ydistance(hi));
}

void Engine::hshade(const Measure& a, const Measure& lo, const Measure& hi) {
  const CoordSystem& cs = st_.cs;
  start_shade(true, cs.ydistance(a), cs.xdistance(lo), cs.xdistance(hi));
}

void Engine::lshade(const ShrinkOverrides& o, const Measure& a, const Measure& lo,
                    const Measure& hi) {
  const CoordSystem& cs = st_.cs;
  const bool h = st_.shade.horizontal;
  const Dimen au = h ? cs.yunit : cs.xunit;
  const Dimen bu = h ? cs.xunit : cs.yunit;
  lshade_d(o, resolve(a, au, cs.mode), resolve(lo, bu, cs.mode), resolve(hi, bu, cs.mode));
}

void Engine::lshade_d(const ShrinkOverrides& o, Dimen xE, Dimen ybE, Dimen ytE) {
  const ShadeState& sh = st_.shade;
  const Dimen e = xE - sh.xS;
  const Dimen ytB = divide(ytE - sh.ytS, e);
  const Dimen ybB = divide(ybE - sh.ybS, e);
  const Dimen ytS = sh.ytS;
  const Dimen ybS = sh.ybS;
  run_shade(o, xE, ybE, ytE, [=](Dimen dxpos, Dimen& yt, Dimen& yb) {
    const Decimal dx = Decimal::from_dimen(dxpos);
    yt = dx * ytB + ytS;
    yb = dx * ybB + ybS;
  });
}

void Engine::qshade(const ShrinkOverrides& o, const std::array<Measure, 3>& mid,
                    const std::array<Measure, 3>& end) {
  const CoordSystem& cs = st_.cs;
  const ShadeState& sh = st_.shade;
  const Dimen au = sh.horizontal ? cs.yunit : cs.xunit;
  const Dimen bu = sh.horizontal ? cs.xunit : cs.yunit;
  const Dimen xM = resolve(mid[0], au, cs.mode);
  const Dimen ybM = resolve(mid[1], bu, cs.mode);
  const Dimen ytM = resolve(mid[2], bu, cs.mode);
  const Dimen xE = resolve(end[0], au, cs.mode);
  const Dimen ybE = resolve(end[1], bu, cs.mode);
  const Dimen ytE = resolve(end[2], bu, cs.mode);
  const QuadCoeffs bot = divided_differences(sh.xS, sh.ybS, xM, ybM, xE, ybE);
  const QuadCoeffs top = divided_differences(sh.xS, sh.ytS, xM, ytM, xE, ytE);
  const Dimen ytS = sh.ytS;
  const Dimen ybS = sh.ybS;
  run_shade(o, xE, ybE, ytE, [=](Dimen dxpos, Dimen& yt, Dimen& yb) {
    const Decimal dx = Decimal::from_dimen(dxpos);
    yt = dx * (dx * top.c + top.b) + ytS;
    yb = dx * (dx * bot.c + bot.b) + ybS;
  });
}

void Engine::run_shade(const ShrinkOverrides& o, Dimen xE, Dimen ybE, Dimen ytE,
                       const std::function<void(Dimen, Dimen&, Dimen&)>& limits) {
  ShadeState& sh = st_.shade;
  stations_.clear();
  const bool h = sh.horizontal;
  const Dimen l = pick(o[0], sh.lshrink);
  const Dimen r = pick(o[1], sh.rshrink);
  const Dimen b = pick(o[2], sh.bshrink);
  const Dimen t = pick(o[3], sh.tshrink);
  Dimen e = h ? b : l;
  Dimen f = h ? t : r;
  const Dimen g = h ? l : b;
  const Dimen hh = h ? r : t;
  const Dimen xanchor = h ? sh.yanchor : sh.xanchor;
  const Dimen yanchor = h ? sh.xanchor : sh.yanchor;
  const Dimen span = sh.span;
  const Dimen span2 = span.times(2);

  e += sh.xS;
  const auto start = fixed::lattice(xanchor, span, e);
  std::int64_t parity = start.index;
  Dimen xpos = start.position;
  f = xE - f;
  while (!(xpos > f)) {
    Dimen yt;
    Dimen yb;
    limits(xpos - sh.xS, yt, yb);
    yt -= hh;
    yb += g;
    Dimen yloc = yanchor;
    if (parity % 2 != 0) yloc += span;
    Dimen ypos = fixed::lattice(yloc, span2, yb).position;
    while (!(ypos > yt)) {
      const Point loc = h ? Point{ypos, xpos} : Point{xpos, ypos};
      const Point p = st_.rot.rotate_about_pivot(loc);
      if (!suppress_output_) canvas_.add_box(sh.symbol.box, {p.x - sh.origin.x, p.y - sh.origin.y});
      stations_.push_back({loc, static_cast<long>(parity)});
      ypos += span2;
    }
    xpos += span;
    ++parity;
  }
  sh.xS = xE;
  sh.ybS = ybE;
  sh.ytS = ytE;
}

void Engine::shaderectangle(Point c1, Point c2) {
  const Dimen a = c2.x - c1.x;
  const Dimen b = c2.y - c1.y;
  if (a < b) {
    start_shade(false, c1.x, c1.y, c2.y);
    lshade_d({}, c2.x, c1.y, c2.y);
  } else {
    start_shade(true, c1.y, c1.x, c2.x);
    lshade_d({}, c2.y, c1.x, c2.x);
  }
}

}  // namespace pictex
