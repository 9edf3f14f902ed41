// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pictex/dsl.hpp"

using namespace pictex;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Collects failed checks for one criterion.
struct Report {
  std::vector<std::string> failures;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 8) failures.push_back(what);
    if (!ok && failures.size() == 8) failures.push_back("...");
  }
  bool ok() const { return failures.empty(); }

  std::vector<std::string> measured;
  void note(const std::string& what) { measured.push_back(what); }
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream ss;
  ss.precision(prec);
  ss << v;
  return ss.str();
}

Measure m(const char* s) { return Measure::parse(s); }
Measure dm(Dimen v) { return Measure(v); }

std::vector<Point> dots(const Engine& e) {
  std::vector<Point> out;
  const Point shift = e.state().pen.symbol.shift;
  for (const auto& it : e.canvas().items()) {
    if (it.kind == ItemKind::dot) out.push_back({it.pos.x + shift.x, it.pos.y + shift.y});
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. numeric kernels --------------------------------------------------------

void kernels(Report& r) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);

  // divide: three divisor ranges, 10^5 pairs in all
  const std::int64_t ranges[][2] = {{6554, 64 * 65536 - 1},
                                    {64 * 65536, 256 * 65536 - 1},
                                    {256 * 65536, 2000LL * 65536}};
  double worst_div = 0;
  for (int n = 0; n < 100000; ++n) {
    const auto& lim = ranges[n % 3];
    const std::int64_t b =
        std::uniform_int_distribution<std::int64_t>(lim[0], lim[1])(rng) * (rng() % 2 ? 1 : -1);
    const std::int64_t amax = std::min<std::int64_t>(Dimen::kMaxSp, std::llabs(b) * 1000);
    const std::int64_t a = std::uniform_int_distribution<std::int64_t>(-amax, amax)(rng);
    const double want = 65536.0 * static_cast<double>(a) / static_cast<double>(b);
    const double err =
        std::abs(static_cast<double>(fixed::divide(Dimen::from_sp(a), Dimen::from_sp(b)).sp()) - want);
    worst_div = std::max(worst_div, err);
  }
  r.note("divide worst " + fmt(worst_div) + "sp");
  r.expect(worst_div <= 16, "divide worst error " + fmt(worst_div) + "sp > 16sp");

  // pythag
  std::uniform_int_distribution<std::int64_t> leg(-1000LL * 65536, 1000LL * 65536);
  int bad_py = 0;
  for (int n = 0; n < 10000; ++n) {
    const Dimen a = Dimen::from_sp(leg(rng)), b = Dimen::from_sp(leg(rng));
    const double want = std::hypot(a.to_pt(), b.to_pt());
    if (std::abs(fixed::pythag(a, b).to_pt() - want) > std::max(0.01, 0.002 * want)) ++bad_py;
  }
  r.expect(bad_py == 0, "pythag: " + std::to_string(bad_py) + " of 10000 pairs out of tolerance");

  // sincos constants at 4pi/3 pt
  const fixed::SinCos sc = fixed::sincos(Decimal::parse("4.18879").to_dimen());
  r.expect(sc.sin.str() == "4.17684", "sincos(4.18879pt).sin = " + sc.sin.str() + ", want 4.17684");
  r.expect(sc.cos.str() == "31.72624", "sincos(4.18879pt).cos = " + sc.cos.str() + ", want 31.72624");
  double worst_sc = 0;
  for (std::int64_t s = -(4 * 65536 + 13107); s <= 4 * 65536 + 13107; s += 37) {
    const fixed::SinCos v = fixed::sincos(Dimen::from_sp(s));
    const double d = static_cast<double>(s) / 65536;
    worst_sc = std::max({worst_sc, std::abs(v.sin.to_double() - 32 * std::sin(d / 32)),
                         std::abs(v.cos.to_double() - 32 * std::cos(d / 32))});
  }
  r.note("sincos worst " + fmt(worst_sc) + "pt");
  r.expect(worst_sc <= 0.001, "sincos worst error " + fmt(worst_sc) + "pt over |d| <= 4.2pt");

  // log10 on the mantissa grid
  double worst_log = 0;
  for (int k = 10; k <= 99; ++k) {
    const std::string numeral = std::to_string(k / 10) + "." + std::to_string(k % 10);
    worst_log = std::max(worst_log, std::abs(fixed::log10_of(numeral).to_double() - std::log10(k / 10.0)));
  }
  r.note("log10 worst " + fmt(worst_log));
  r.expect(worst_log <= 5e-4, "log10 worst error " + fmt(worst_log));

  const double secs = seconds_since(t0);
  r.expect(secs < 10, "kernel checks took " + fmt(secs) + "s");
}

// 2. curves -----------------------------------------------------------------

double curve_distance(const oracle::Quad& q, double x, double y) {
  // coarse scan, then refine around the best sample
  const int n = 400;
  int best = 0;
  double bd = 1e300;
  for (int k = 0; k <= n; ++k) {
    const auto [px, py] = q.at(static_cast<double>(k) / n);
    const double d = std::hypot(x - px, y - py);
    if (d < bd) {
      bd = d;
      best = k;
    }
  }
  double lo = std::max(0.0, (best - 1.0) / n), hi = std::min(1.0, (best + 1.0) / n);
  for (int it = 0; it < 60; ++it) {
    const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    const auto [ax, ay] = q.at(a);
    const auto [bx, by] = q.at(b);
    if (std::hypot(x - ax, y - ay) < std::hypot(x - bx, y - by)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  const auto [px, py] = q.at((lo + hi) / 2);
  return std::min(bd, std::hypot(x - px, y - py));
}

void curves(Report& r) {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> coord(-100, 100);
  std::uniform_real_distribution<double> unit(-1, 1);
  double worst_len = 0, worst_dot = 0;
  for (int n = 0; n < 50; ++n) {
    // well-conditioned: the middle point stays near the chord's perpendicular
    // bisector, at most 0.3 chord lengths off the chord
    double p[6];
    p[0] = coord(rng), p[1] = coord(rng), p[4] = coord(rng), p[5] = coord(rng);
    const double cx = p[4] - p[0], cy = p[5] - p[1];
    if (std::hypot(cx, cy) < 10) {
      --n;
      continue;
    }
    const double along = 0.15 * unit(rng), across = 0.3 * unit(rng);
    p[2] = p[0] + cx * (0.5 + along) - cy * across;
    p[3] = p[1] + cy * (0.5 + along) + cx * across;
    for (double& v : p) v = std::round(v * 64) / 64;
    Engine e;
    e.set_dimension_mode();
    e.start(dm(oracle::sp_of(p[0])), dm(oracle::sp_of(p[1])));
    e.qjoin(dm(oracle::sp_of(p[2])), dm(oracle::sp_of(p[3])), dm(oracle::sp_of(p[4])),
            dm(oracle::sp_of(p[5])));
    const oracle::Quad q = oracle::Quad::through(p[0], p[1], p[2], p[3], p[4], p[5]);
    const double truth = q.length();
    worst_len = std::max(worst_len, std::abs(e.total_arc_length().to_pt() - truth) / truth);
    for (const Point& d : dots(e)) {
      worst_dot = std::max(worst_dot, curve_distance(q, d.x.to_pt(), d.y.to_pt()));
    }
  }
  r.note("arc length worst " + fmt(100 * worst_len, 3) + "%, dot distance worst " + fmt(worst_dot, 3) + "pt");
  r.expect(worst_len <= 0.005, "quadratic arc length worst relative error " + fmt(worst_len));
  r.expect(worst_dot <= 0.1, "dot farthest from its curve by " + fmt(worst_dot) + "pt");

  Engine arcs;
  const char* starts[][2] = {{"100", "0"}, {"0", "100"}, {"-100", "0"}, {"0", "-100"}};
  for (const auto& s : starts) arcs.circular_arc(Decimal::parse("90"), m(s[0]), m(s[1]), m("0"), m("0"));
  const Point end = arcs.state().cursor.S;
  const double gap = std::hypot(end.x.to_pt() - 100, end.y.to_pt());
  r.note("arc closure gap " + fmt(gap, 3) + "pt");
  r.expect(gap <= 1.0, "four quarter arcs miss closure by " + fmt(gap) + "pt");

  Engine qe, le;
  qe.start(m("0"), m("0"));
  qe.qjoin(m("20"), m("10"), m("40"), m("20"));
  le.start(m("0"), m("0"));
  le.ljoin(m("40"), m("20"));
  const auto qd = dots(qe), ld = dots(le);
  const double spacing = qe.state().pen.spacing.to_pt();
  std::size_t far = 0;
  for (const auto& p : qd) {
    const bool near = std::any_of(ld.begin(), ld.end(), [&](const Point& o) {
      return std::hypot((p.x - o.x).to_pt(), (p.y - o.y).to_pt()) <= spacing;
    });
    if (!near) ++far;
  }
  r.expect(far == 0 && !qd.empty(), "collinear qjoin: " + std::to_string(far) + " dots off the ljoin");
}

// 3. dashes -----------------------------------------------------------------

void dashes(Report& r) {
  auto run = [](bool split) {
    Engine e;
    e.set_dash_pattern({3_pt, 2_pt});
    e.start(m("0"), m("0"));
    if (split) e.ljoin(m("50"), m("0"));
    e.ljoin(m("100"), m("0"));
    return dots(e).size();
  };
  const long one = static_cast<long>(run(false)), two = static_cast<long>(run(true));
  r.expect(std::abs(one - two) <= 1,
           "phase carry: " + std::to_string(one) + " dots vs " + std::to_string(two));

  std::mt19937_64 rng(303);
  for (int n = 0; n < 20; ++n) {
    const std::size_t count = n % 2 == 0 ? 2 : 4;
    std::vector<std::int64_t> entries;
    std::vector<Dimen> dims;
    for (std::size_t k = 0; k < count; ++k) {
      const std::int64_t v = std::uniform_int_distribution<std::int64_t>(32768, 8 * 65536)(rng);
      entries.push_back(v);
      dims.push_back(Dimen::from_sp(v));
    }
    const std::int64_t len = std::uniform_int_distribution<std::int64_t>(10 * 65536, 200 * 65536)(rng);
    const Dimen x0 = oracle::sp_of(std::uniform_int_distribution<int>(-50, 50)(rng));
    const Dimen y0 = oracle::sp_of(std::uniform_int_distribution<int>(-50, 50)(rng));
    const bool vertical = n % 4 >= 2;

    Engine e;
    e.set_dimension_mode();
    e.set_dash_pattern(dims);
    const Dimen l = Dimen::from_sp(len);
    if (vertical) {
      e.putrule({}, dm(x0), dm(y0), dm(x0), dm(y0 + l));
    } else {
      e.putrule({}, dm(x0), dm(y0), dm(x0 + l), dm(y0));
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> got;
    for (const auto& it : e.canvas().items()) {
      if (it.kind != ItemKind::rule) continue;
      if (vertical) {
        const std::int64_t a = (it.pos.y - it.ext.depth - y0).sp();
        got.emplace_back(a, a + (it.ext.height + it.ext.depth).sp());
      } else {
        const std::int64_t a = (it.pos.x - x0).sp();
        got.emplace_back(a, a + it.ext.width.sp());
      }
    }
    const auto want = oracle::dash_coverage(entries, len);
    r.expect(oracle::merge(got) == want, "putrule coverage differs for pattern " + std::to_string(n) +
                                             (vertical ? " (vertical)" : " (horizontal)"));
  }
}

// 4. shading ----------------------------------------------------------------

oracle::StationSet stations(const Engine& e) {
  oracle::StationSet out;
  for (const auto& s : e.last_shade_stations()) out.insert({s.location.x.sp(), s.location.y.sp()});
  return out;
}

Engine shading_engine(Dimen span, Point anchor, const ShrinkOverrides& shrink) {
  Engine e;
  e.set_dimension_mode();
  e.set_shade_grid(span, std::make_pair(dm(anchor.x), dm(anchor.y)));
  e.set_shade_symbol(shrink, Box{}, {});
  return e;
}

void shading(Report& r) {
  std::mt19937_64 rng(404);
  using oracle::sp_of;
  for (int n = 0; n < 25; ++n) {
    const oracle::Band B = oracle::Band::random(rng, n % 2 == 1, n % 3 == 2);
    Engine e = shading_engine(sp_of(B.span), {sp_of(B.ax), sp_of(B.ay)},
                              {sp_of(B.l), sp_of(B.r), sp_of(B.b), sp_of(B.t)});
    if (B.horizontal) {
      e.hshade(dm(sp_of(B.x0)), dm(sp_of(B.lo[0])), dm(sp_of(B.hi[0])));
    } else {
      e.vshade(dm(sp_of(B.x0)), dm(sp_of(B.lo[0])), dm(sp_of(B.hi[0])));
    }
    if (B.quadratic) {
      e.qshade({}, {dm(sp_of(B.xm)), dm(sp_of(B.lo[1])), dm(sp_of(B.hi[1]))},
               {dm(sp_of(B.x1)), dm(sp_of(B.lo[2])), dm(sp_of(B.hi[2]))});
    } else {
      e.lshade({}, dm(sp_of(B.x1)), dm(sp_of(B.lo[2])), dm(sp_of(B.hi[2])));
    }
    const oracle::StationSet got = stations(e);
    oracle::StationSet exact, none;
    oracle::enumerate(B, oracle::fixed_limit(B, B.lo), oracle::fixed_limit(B, B.hi), 0, exact, none);
    const std::string tag = "band " + std::to_string(n) + (B.quadratic ? " quadratic" : " linear") +
                            (B.horizontal ? " horizontal" : " vertical");
    r.expect(got == exact && got.size() == e.last_shade_stations().size(),
             tag + ": stations differ from lattice enumeration");
  }

  const ShrinkOverrides zero{Dimen{}, Dimen{}, Dimen{}, Dimen{}};
  Engine sq = shading_engine(5_pt, {}, zero);
  sq.vshade(dm(Dimen{}), dm(Dimen{}), dm(10_pt));
  sq.lshade({}, dm(10_pt), dm(Dimen{}), dm(10_pt));
  const oracle::StationSet board = {{0, 0}, {0, (10_pt).sp()}, {(5_pt).sp(), (5_pt).sp()},
                                    {(10_pt).sp(), 0}, {(10_pt).sp(), (10_pt).sp()}};
  r.expect(stations(sq) == board, "square band is not a checkerboard");

  auto anchored = [&](Point anchor) {
    Engine e = shading_engine(4_pt, anchor, zero);
    e.vshade(dm(Dimen{}), dm(-(7_pt)), dm(13_pt));
    e.lshade({}, dm(30_pt), dm(-(2_pt)), dm(20_pt));
    return stations(e);
  };
  const auto base = anchored({1_pt, 2_pt});
  r.expect(anchored({9_pt, 2_pt}) == base, "anchor moved two spans across changes the stations");
  r.expect(anchored({1_pt, 10_pt}) == base, "anchor moved two spans up changes the stations");
  r.expect(anchored({5_pt, 6_pt}) == base, "anchor moved one span diagonally changes the stations");
}

// 5. axes -------------------------------------------------------------------

dsl::RenderResult draw(const std::string& body) {
  const dsl::Program p = dsl::parse(
      "beginpicture\nsetcoordinatesystem units <10pt,10pt>\n"
      "setplotarea x from 0 to 10 , y from 0 to 5\n" + body + "\nendpicture\n");
  return dsl::render(p.pictures.at(0), {});
}

std::vector<std::int64_t> xticks(const dsl::RenderResult& r) {
  std::vector<std::int64_t> out;
  for (const auto& it : r.canvas.items()) {
    if (it.kind != ItemKind::rule) continue;
    if (it.ext.width > 1_pt || it.ext.height < 1_pt || it.ext.height > 10_pt) continue;
    out.push_back(it.pos.x.sp() + it.ext.width.sp() / 2);
  }
  return out;
}

std::vector<std::string> labels(const dsl::RenderResult& r) {
  std::vector<std::string> out;
  for (const auto& it : r.canvas.items()) {
    if (it.kind == ItemKind::text) out.push_back(it.text);
  }
  return out;
}

// Tick centers sit on the thickness grid: within a few sp of the oracle.
bool same_positions(const std::vector<std::int64_t>& got, const std::vector<std::int64_t>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (std::llabs(got[i] - want[i]) > 16) return false;
  }
  return true;
}

void axes(Report& r) {
  const std::int64_t unit = 10 * 65536;  // sp per coordinate unit
  for (int n : {2, 3, 5, 9}) {
    std::vector<std::int64_t> want;
    const std::int64_t step = 100 * 65536 / (n - 1);
    for (int k = 0; k < n; ++k) want.push_back(k == n - 1 ? 100 * 65536 : step * k);
    r.expect(same_positions(xticks(draw("axis bottom invisible ticks quantity " + std::to_string(n) + " /")), want),
             "quantity " + std::to_string(n) + " tick positions");
  }
  r.expect(same_positions(xticks(draw("axis bottom invisible ticks at 2 5 8 / /")),
                          {2 * unit, 5 * unit, 8 * unit}),
           "ticks at 2 5 8");
  r.expect(labels(draw("axis bottom ticks numbered at -3 0 7 / /")) ==
               std::vector<std::string>{"\xE2\x88\x92" "3", "0", "7"},
           "numbered at -3 0 7 labels");

  struct Case {
    const char* from;
    const char* to;
    const char* by;
    std::int64_t f, t, b, scale;
    int digits;
  };
  const Case cases[] = {
      {"0", "10", "2", 0, 10, 2, 1, 0},         {"0", "2", "0.5", 0, 20, 5, 10, 1},
      {"-1", "1", "1", -1, 1, 1, 1, 0},         {"-1.25", "1.25", "0.25", -125, 125, 25, 100, 2},
      {"0.1", "0.9", "0.2", 1, 9, 2, 10, 1},   {"-10", "-2", "4", -10, -2, 4, 1, 0},
  };
  for (const auto& c : cases) {
    const auto res = draw(std::string("axis bottom invisible ticks numbered from ") + c.from + " to " +
                          c.to + " by " + c.by + " /");
    std::vector<std::int64_t> pos;
    std::vector<std::string> want;
    for (std::int64_t v = c.f; v <= c.t; v += c.b) {
      pos.push_back(unit * v / c.scale);
      want.push_back(oracle::axis_label(v, c.scale, c.digits));
    }
    const std::string tag = std::string("from ") + c.from + " to " + c.to + " by " + c.by;
    r.expect(same_positions(xticks(res), pos), tag + ": tick positions");
    r.expect(labels(res) == want, tag + ": labels");
  }
  const auto half = labels(draw("axis bottom ticks numbered from 0 to 2 by 0.5 /"));
  r.expect(half == std::vector<std::string>{"0.0", "0.5", "1.0", "1.5", "2.0"}, "from 0 to 2 by 0.5 labels");
}

// 6. golden determinism -----------------------------------------------------

FileResolver resolver_for(const fs::path& pic) {
  const fs::path base = pic.parent_path();
  return [base](const std::string& name) -> std::optional<std::string> {
    std::ifstream in(base / name, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
}

void golden(Report& r) {
  std::vector<fs::path> pics;
  for (const auto& e : fs::directory_iterator(PICTEX_FIXTURES)) {
    if (e.path().extension() == ".pic") pics.push_back(e.path());
  }
  std::sort(pics.begin(), pics.end());
  r.expect(pics.size() >= 12, "only " + std::to_string(pics.size()) + " fixture pictures");

  const fs::path tmp = fs::temp_directory_path() / "pictex_acceptance";
  fs::create_directories(tmp);
  for (const auto& pic : pics) {
    const std::string name = pic.filename().string();
    const dsl::Program prog = dsl::parse(slurp(pic));
    const auto a = dsl::render(prog.pictures.at(0), {}, resolver_for(pic));
    const auto b = dsl::render(prog.pictures.at(0), {}, resolver_for(pic));
    const std::string svg = dsl::emit_svg(a);
    fs::path golden_svg = pic;
    golden_svg.replace_extension(".svg");
    r.expect(svg == dsl::emit_svg(b), name + ": SVG differs between renders");
    r.expect(svg == slurp(golden_svg), name + ": SVG differs from golden file");

    std::string cli[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path out = tmp / ("run" + std::to_string(k) + ".svg");
      const std::string cmd = std::string(PICTEX_CLI) + " render " + pic.string() + " -o " + out.string() +
                              " 2>/dev/null";
      r.expect(std::system(cmd.c_str()) == 0, name + ": CLI render failed");
      cli[k] = slurp(out);
    }
    r.expect(cli[0] == cli[1] && cli[0] == svg, name + ": CLI output not byte-identical");

    if (a.replot_files.empty()) continue;
    const std::string text = a.replot_files.begin()->second;
    fs::path golden_rp = pic;
    golden_rp.replace_extension(".replot");
    r.expect(text == b.replot_files.begin()->second, name + ": replot differs between renders");
    r.expect(text == slurp(golden_rp), name + ": replot differs from golden file");

    // round trip: records re-read as the exact sp they were written from
    Engine e;
    e.replot_text(text);
    const Box& sym = e.state().pen.symbol.box;
    std::ostringstream again;
    for (std::size_t i = 0; i < e.canvas().items().size(); i += std::max<std::size_t>(1, sym.items.size())) {
      const Point p = e.canvas().items()[i].pos;
      again << (p.x - sym.items[0].pos.x).sp() << ',' << (p.y - sym.items[0].pos.y).sp() << ".\n";
    }
    std::string records;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      if (!line.empty() && line[0] != '%' && line != "/") records += line + "\n";
    }
    r.expect(again.str() == records, name + ": replot round trip is not exact");
  }
}

// 7. runtime ----------------------------------------------------------------

void runtime(Report& r, Clock::time_point start) {
  std::string bins = PICTEX_UNIT_TESTS;
  std::istringstream in(bins);
  const auto t0 = Clock::now();
  for (std::string bin; std::getline(in, bin, '|');) {
    const std::string cmd = bin + " >/dev/null 2>&1";
    r.expect(std::system(cmd.c_str()) == 0, fs::path(bin).filename().string() + " failed");
  }
  const double units = seconds_since(t0);
  const double mine = std::chrono::duration<double>(t0 - start).count();
  r.expect(units + mine < 120, "suite took " + fmt(units + mine) + "s");
  r.note("unit tests " + fmt(units, 3) + "s, acceptance checks " + fmt(mine, 3) + "s");
}

}  // namespace

int main() {
  const auto start = Clock::now();
  struct Criterion {
    const char* name;
    void (*run)(Report&);
  };
  const Criterion list[] = {{"kernel accuracy", kernels}, {"curve suite", curves},
                            {"dash suite", dashes},       {"shade suite", shading},
                            {"axes suite", axes},         {"golden determinism", golden}};
  int failed = 0;
  auto finish = [&](const char* name, Report& r, double secs) {
    std::cout << (r.ok() ? "PASS " : "FAIL ") << name << " (" << r.checks << " checks, " << fmt(secs, 3)
              << "s)\n";
    for (const auto& f : r.failures) std::cout << "  " << f << '\n';
    for (const auto& n : r.measured) std::cout << "  measured: " << n << '\n';
    if (!r.ok()) ++failed;
  };
  for (const auto& c : list) {
    Report r;
    const auto t0 = Clock::now();
    try {
      c.run(r);
    } catch (const std::exception& e) {
      r.expect(false, std::string("exception: ") + e.what());
    }
    finish(c.name, r, seconds_since(t0));
  }
  Report r;
  const auto t0 = Clock::now();
  runtime(r, start);
  finish("runtime", r, seconds_since(t0));
  return failed == 0 ? 0 : 1;
}
