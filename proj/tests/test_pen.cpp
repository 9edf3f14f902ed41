#include <cmath>
#include <numbers>
#include <random>

#include "catch_amalgamated.hpp"
#include "pictex/engine.hpp"

using namespace pictex;

namespace {

Measure m(const char* s) { return Measure::parse(s); }
Dimen sp(std::int64_t v) { return Dimen::from_sp(v); }

std::vector<Point> dot_centers(const Engine& e) {
  std::vector<Point> out;
  const Point shift = e.state().pen.symbol.shift;
  for (const auto& it : e.canvas().items()) {
    if (it.kind == ItemKind::dot) out.push_back({it.pos.x + shift.x, it.pos.y + shift.y});
  }
  return out;
}

}  // namespace

TEST_CASE("dash patterns") {
  const DashPattern p = DashPattern::from_entries({2_pt, 3_pt});
  CHECK(p.leader == 5_pt);
  CHECK(p.forward == std::vector<DashSpan>{{true, 2_pt}, {false, 3_pt}});

  for (const auto& entries : {std::vector<Dimen>{}, std::vector<Dimen>{Dimen{}, Dimen{}}}) {
    const DashPattern inv = DashPattern::from_entries(entries);
    CHECK(inv.leader == parse_dimen("24in"));
    CHECK(inv.forward == std::vector<DashSpan>{{false, parse_dimen("24in")}});
  }
  CHECK(DashPattern::from_entries({1_pt, 2_pt, 3_pt, 4_pt}).leader == 10_pt);
  CHECK_THROWS_AS(DashPattern::from_entries({1_pt, -(1_pt)}), Error);

  const Dimen spacing = sp(26214);
  CHECK(DashPattern::dots(5_pt, spacing).entries == std::vector<Dimen>{spacing, 5_pt - spacing});
  CHECK(DashPattern::dots(spacing, spacing).entries == std::vector<Dimen>{spacing, Dimen{}});
  CHECK(DashPattern::dashes(5_pt).entries == std::vector<Dimen>{5_pt, 5_pt});

  const DashPattern near7 = DashPattern::dashes_near(5_pt, 30_pt);
  CHECK(near7.entries[0] == (30_pt).over(7));
  CHECK(DashPattern::dashes_near(10_pt, 30_pt).entries[0] == 10_pt);
  // n clamps to one: the whole span (less .05pt) becomes the gap
  const DashPattern one = DashPattern::dots_near(5_pt, 1_pt, spacing);
  CHECK(one.entries[1] == 1_pt - sp(3277) - spacing);
}

TEST_CASE("advance_dashing") {
  PenState pen;
  pen.spacing = sp(26214);

  pen.pattern = DashPattern::from_entries({1_pt, 2_pt});
  pen.reset_phase();
  pen.advance_dashing();
  CHECK(pen.downlength == 1_pt - sp(26214));
  CHECK(pen.distacross == Dimen{});

  pen.pattern = DashPattern::from_entries({sp(26214), 4_pt + sp(39322)});
  pen.reset_phase();
  pen.advance_dashing();
  CHECK(pen.distacross == 4_pt + sp(39322));
  CHECK(pen.downlength == sp(26214));

  pen.pattern = DashPattern::from_entries({sp(19661), 2_pt});  // .3pt down
  pen.reset_phase();
  pen.advance_dashing();
  CHECK(pen.distacross == 2_pt - sp(26214 - 19661));
}

TEST_CASE("clipping gate is inclusive") {
  ClipRect c{true, Dimen{}, 10_pt, Dimen{}, 10_pt};
  CHECK_FALSE(c.admits({11_pt, 5_pt}));
  CHECK(c.admits({10_pt, 5_pt}));
  CHECK(c.admits({Dimen{}, Dimen{}}));
  CHECK(ClipRect{}.admits({100_pt, 100_pt}));
}

TEST_CASE("dots: clipping, anchor, no accounting") {
  Engine e;
  e.start(m("0"), m("0"));
  e.ljoin(m("0"), m("0"));
  const auto dots = dot_centers(e);
  REQUIRE(dots.size() == 2);
  CHECK(dots[0] == Point{});
  CHECK(e.canvas().items()[0].pos == Point{-e.state().pen.symbol.shift.x, -e.state().pen.symbol.shift.y});
  CHECK_FALSE(e.canvas().bounds().has_value());

  Engine clip;
  clip.set_plot_area(m("0"), m("10"), m("0"), m("10"));
  const std::size_t before = clip.canvas().items().size();
  clip.set_inbounds_check(true);
  clip.start(m("0"), m("5"));
  clip.ljoin(m("20"), m("5"));
  std::size_t kept = 0;
  const Point shift = clip.state().pen.symbol.shift;
  for (std::size_t i = before; i < clip.canvas().items().size(); ++i) {
    const auto& it = clip.canvas().items()[i];
    if (it.kind != ItemKind::dot) continue;
    const Point p{it.pos.x + shift.x, it.pos.y + shift.y};
    CHECK((p.x >= Dimen{} && p.x <= 10_pt && p.y >= Dimen{} && p.y <= 10_pt));
    ++kept;
  }
  CHECK(kept == 26);  // 0, .4, ..., 10pt of the 51 stations
}

TEST_CASE("findlength") {
  Engine e;
  const Dimen straight = e.findlength([&] {
    e.start(m("0"), m("0"));
    e.ljoin(m("30"), m("0"));
  });
  CHECK(std::abs(straight.to_pt() - 30) <= 0.1);
  CHECK(e.canvas().items().empty());
  CHECK(e.findlength([] {}) == Dimen{});

  const Dimen arc = e.findlength([&] { e.circular_arc(Decimal::parse("90"), m("50"), m("0"), m("0"), m("0")); });
  CHECK(std::abs(arc.to_pt() - 25 * std::numbers::pi) <= 0.005 * 25 * std::numbers::pi);
  CHECK(e.canvas().items().empty());
}

TEST_CASE("dash phase carries across segments") {
  auto run = [](bool split) {
    Engine e;
    e.set_dash_pattern({3_pt, 2_pt});
    e.start(m("0"), m("0"));
    if (split) e.ljoin(m("50"), m("0"));
    e.ljoin(m("100"), m("0"));
    return dot_centers(e);
  };
  const auto one = run(false);
  const auto two = run(true);
  CHECK(std::abs(static_cast<long>(one.size()) - static_cast<long>(two.size())) <= 1);
  std::size_t same = 0;
  for (std::size_t i = 0; i < std::min(one.size(), two.size()); ++i) {
    if (std::abs((one[i].x - two[i].x).to_pt()) < 0.01) ++same;
  }
  CHECK(same + 1 >= std::min(one.size(), two.size()));
}

TEST_CASE("dots per leader period") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const double spacing = std::uniform_real_distribution<double>(0.2, 1.0)(rng);
    const double a = std::uniform_real_distribution<double>(spacing, 6.0)(rng);
    const double b = std::uniform_real_distribution<double>(0.5, 6.0)(rng);
    Engine e;
    e.set_plot_symbol_spacing(Dimen::from_sp(std::llround(spacing * 65536)));
    const Dimen da = Dimen::from_sp(std::llround(a * 65536));
    const Dimen db = Dimen::from_sp(std::llround(b * 65536));
    e.set_dash_pattern({da, db});
    const std::int64_t periods = 10;
    const Dimen len = (da + db).times(periods);
    e.set_dimension_mode();
    e.start(Measure(Dimen{}), Measure(Dimen{}));
    e.ljoin(Measure(len), Measure(Dimen{}));
    const auto dots = dot_centers(e);
    const double per = static_cast<double>(dots.size()) / periods;
    const double want = std::ceil(da.to_pt() / e.state().pen.spacing.to_pt());
    CHECK(std::abs(per - want) <= 1.0);
  }
}
