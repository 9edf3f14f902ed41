#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "pictex/dsl.hpp"

using namespace pictex;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

dsl::RenderResult draw(const std::string& src) {
  const dsl::Program p = dsl::parse(src);
  REQUIRE(p.pictures.size() == 1);
  return dsl::render(p.pictures[0], {});
}

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

Run cli(const std::string& args) {
  const fs::path dir = fs::temp_directory_path() / "pictex_dsl_test";
  fs::create_directories(dir);
  const fs::path out = dir / "out.txt", err = dir / "err.txt";
  const std::string cmd = std::string(PICTEX_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  Run r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

const std::string kData = PICTEX_TESTDATA;

}  // namespace

TEST_CASE("lexer") {
  const auto toks = dsl::lex("put \"a\\\"b\" [lB] <1pt,-2pt> at 3 4 % comment\nplot /");
  std::vector<std::string> text;
  for (const auto& t : toks) text.push_back(t.text);
  CHECK(text == std::vector<std::string>{"put", "a\"b", "[", "lB", "]", "<", "1pt", ",", "-2pt", ">",
                                         "at", "3", "4", "plot", "/", ""});
  CHECK(toks[1].kind == dsl::TokenKind::string);
  CHECK(toks[13].line == 2);
  CHECK(toks[13].column == 1);
  CHECK_THROWS_AS(dsl::lex("put \"open"), Error);
}

TEST_CASE("parse") {
  const auto empty = dsl::parse("beginpicture endpicture");
  REQUIRE(empty.pictures.size() == 1);
  CHECK(empty.pictures[0].statements.empty());

  const auto plot = dsl::parse("beginpicture plot 0 0 10 0 / endpicture");
  REQUIRE(plot.pictures[0].statements.size() == 1);
  CHECK(plot.pictures[0].statements[0].name == "plot");

  const auto ax = dsl::parse("beginpicture axis bottom ticks numbered from 0 to 10 by 5 / / endpicture");
  REQUIRE(ax.pictures[0].statements.size() == 1);
  CHECK(ax.pictures[0].statements[0].name == "axis");

  const auto two = dsl::parse("beginpicture endpicture\nbeginpicture put \"a\" at 0 0 endpicture");
  CHECK(two.pictures.size() == 2);
  CHECK(two.pictures[1].line == 2);

  try {
    dsl::parse("beginpicture\n  frobnicate 1 2\nendpicture");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(dsl::parse("beginpicture beginpicture endpicture endpicture"), Error);
  CHECK_THROWS_AS(dsl::parse("beginpicture plot 0 0 10"), Error);
  CHECK_THROWS_AS(dsl::parse("beginpicture put at 0 0 endpicture"), Error);
}

TEST_CASE("every statement form parses and renders") {
  const std::string src = slurp(kData + "/all_statements.pic");
  const auto p = dsl::parse(src);
  REQUIRE(p.pictures.size() == 1);
  CHECK(p.pictures[0].statements.size() > 80);
  const auto r = dsl::render(p.pictures[0], {});
  CHECK(r.replot_files.count("curves.rp") == 1);
  CHECK_FALSE(r.canvas.items().empty());
}

TEST_CASE("render defaults and empty output") {
  const auto r = draw("beginpicture endpicture");
  CHECK(r.canvas.items().empty());
  CHECK_FALSE(dsl::view_bounds(r).has_value());
  const std::string svg = dsl::emit_svg(r);
  CHECK(svg.find("viewBox=\"0.00000 0.00000 0.00000 0.00000\"") != std::string::npos);
  CHECK(svg.find("<rect") == std::string::npos);
  CHECK(svg.find("<circle") == std::string::npos);
  CHECK(dsl::emit_bbox(r) == "0.00000 0.00000 0.00000 0.00000\n");

  Engine e;
  CHECK_FALSE(e.state().pen.pattern.dashed);
  CHECK(e.state().pen.spacing == Dimen::from_sp(26214));
  CHECK(e.state().style.ticks_out);

  const auto rule = draw("beginpicture putrule from 0 0 to 10 0 endpicture");
  const std::string rs = dsl::emit_svg(rule);
  CHECK(rs.find("width=\"10.00000\" height=\"0.39999\"") != std::string::npos);
}

TEST_CASE("runtime errors carry the statement position") {
  try {
    draw("beginpicture\nsetplotarea x from 0 to 1 , y from 0 to 1\n  axis bottom ticks from 0 to 1 by 0 /\nendpicture");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("replot records") {
  Engine e;
  e.set_plot_symbol(Box{}, {});
  e.save_lines_and_curves("f");
  e.write_save_file("generated by test");
  e.start(Measure::parse("1"), Measure::parse("0"));
  e.ljoin(Measure::parse("1"), Measure::parse("0"));
  const std::string text = e.replot_files().at("f");
  CHECK(text == "%generated by test\n65536,0.\n65536,0.\n/\n");

  Engine bad;
  try {
    bad.replot_text("1,2.\n3;4.\n/");
    FAIL("expected a parse error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::parse);
    CHECK(std::string(err.what()).find("byte 6") != std::string::npos);
  }
}

TEST_CASE("replot round trip") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::int64_t> d(-500LL * 65536, 500LL * 65536);
  std::string text;
  std::vector<Point> want;
  for (int i = 0; i < 1000; ++i) {
    const Point p{Dimen::from_sp(d(rng)), Dimen::from_sp(d(rng))};
    want.push_back(p);
    text += std::to_string(p.x.sp()) + "," + std::to_string(p.y.sp()) + ".\n";
  }
  text += "/\n";
  Engine e;
  e.set_plot_symbol(Box{{}, {PlacedItem{ItemKind::dot, {}, {1_pt, 1_pt, Dimen{}}, Shape::disk(), {}, 'l'}}}, {});
  e.replot_text(text);
  REQUIRE(e.canvas().items().size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(e.canvas().items()[i].pos == want[i]);

  // curve dots written then replotted land on the same positions
  Engine w;
  w.save_lines_and_curves("c");
  w.circular_arc(Decimal::parse("200"), Measure::parse("30"), Measure::parse("0"), Measure::parse("0"),
                 Measure::parse("0"));
  Engine r;
  r.replot_text(w.replot_files().at("c"));
  REQUIRE(r.canvas().items().size() == w.canvas().items().size());
  for (std::size_t i = 0; i < r.canvas().items().size(); ++i) {
    CHECK(r.canvas().items()[i].pos == w.canvas().items()[i].pos);
  }
}

TEST_CASE("cli") {
  const std::string all = kData + "/all_statements.pic";
  const Run check = cli("check " + all);
  CHECK(check.status == 0);
  CHECK(check.out.empty());

  const Run bbox = cli("render --format bbox " + all);
  CHECK(bbox.status == 0);
  std::istringstream in(bbox.out);
  double v[4];
  CHECK(static_cast<bool>(in >> v[0] >> v[1] >> v[2] >> v[3]));
  CHECK(v[0] < v[2]);

  const Run bad = cli("render " + kData + "/bad_axis.pic");
  CHECK(bad.status == 1);
  CHECK(bad.err.find("unrecognized axis keyword 'sideways'") != std::string::npos);
  CHECK(bad.err.find("bad_axis.pic:4:") != std::string::npos);

  const Run missing = cli("render " + kData + "/no_such_file.pic");
  CHECK(missing.status == 2);

  const Run replot = cli("render --format replot " + all);
  CHECK(replot.status == 0);
  CHECK(replot.out.rfind("%generated by test\n", 0) == 0);

  const Run trace = cli("render --trace -o /dev/null " + all);
  CHECK(trace.status == 0);
  CHECK(trace.err.find("findlength") != std::string::npos);

  const fs::path cfg = fs::temp_directory_path() / "pictex_dsl_test" / "cfg.json";
  std::ofstream(cfg) << R"({"em": "20pt"})";
  const Run big = cli("render --format bbox --config " + cfg.string() + " " + all);
  CHECK(big.status == 0);
  CHECK(big.out != bbox.out);
}
