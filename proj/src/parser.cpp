#include <set>

#include "pictex/dsl.hpp"

namespace pictex::dsl {

namespace {

using BoxFn = std::function<Box(Engine&)>;

Dimen em_of(const Engine& e) { return e.state().metrics.em; }

// Coordinates and dimensions keep their source text and are converted when
// the statement runs, so `em` follows the render configuration.
struct MeasureText {
  std::string text;
  Measure get(const Engine& e) const { return Measure::parse(text, em_of(e)); }
};

struct DimenText {
  std::string text;
  Dimen get(const Engine& e) const { return parse_dimen(text, em_of(e)); }
};

struct OffsetText {
  std::optional<DimenText> dx;
  std::optional<DimenText> dy;
  Point get(const Engine& e) const {
    if (!dx) return {};
    return {dx->get(e), dy->get(e)};
  }
};

struct OrientText {
  std::string markers;
  OffsetText offset;
  Orientation get(const Engine& e) const { return {markers, offset.get(e)}; }
};

struct PairText {
  MeasureText x;
  MeasureText y;
};

using OverrideText = std::array<std::optional<std::string>, 4>;

ShrinkOverrides overrides_of(const OverrideText& o, const Engine& e) {
  ShrinkOverrides out;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!o[i]) continue;
    out[i] = *o[i] == "z" ? Dimen{} : parse_dimen(*o[i], em_of(e));
  }
  return out;
}

const std::set<std::string> kParameters = {
    "linethickness",        "plotsymbolspacing",    "longticklength",
    "shortticklength",      "tickstovaluesleading", "valuestolabelleading",
    "stackleading",         "headingtoplotskip",    "baselineskip",
};

const std::set<std::string> kObjectWords = {"stack", "lines", "Lines", "frame",
                                            "rectangle", "disk", "rule"};

class Parser {
 public:
  explicit Parser(std::string_view source) : toks_(lex(source)) {}

  Program program() {
    Program p;
    while (!at_end()) {
      const Token& t = peek();
      if (!is_word("beginpicture")) {
        fail(t, "expected 'beginpicture', found '" + t.text + "'");
      }
      next();
      Picture pic;
      pic.line = t.line;
      while (!is_word("endpicture")) {
        if (at_end()) fail(peek(), "missing 'endpicture'");
        pic.statements.push_back(statement());
      }
      next();
      p.pictures.push_back(std::move(pic));
    }
    return p;
  }

 private:
  // Token access.
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == TokenKind::end; }
  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::word && t.text == w;
  }
  bool is_punct(char c, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::punct && t.text[0] == c;
  }
  [[noreturn]] static void fail(const Token& t, const std::string& what) {
    throw Error(ErrorKind::parse, what, t.line, t.column);
  }
  static std::string shown(const Token& t) {
    return t.kind == TokenKind::end ? "end of input" : "'" + t.text + "'";
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) fail(peek(), "expected '" + std::string(w) + "', found " + shown(peek()));
    next();
  }
  void expect_punct(char c) {
    if (!is_punct(c)) fail(peek(), std::string("expected '") + c + "', found " + shown(peek()));
    next();
  }
  std::string word(const char* what) {
    if (peek().kind != TokenKind::word) fail(peek(), std::string("expected ") + what + ", found " + shown(peek()));
    return next().text;
  }
  std::string string_arg(const char* what) {
    if (peek().kind != TokenKind::string) {
      fail(peek(), std::string("expected quoted ") + what + ", found " + shown(peek()));
    }
    return next().text;
  }

  // Values, checked now and converted again when run.
  MeasureText measure() {
    const Token& t = peek();
    const std::string w = word("a coordinate");
    try {
      Measure::parse(w);
    } catch (const Error& e) {
      fail(t, e.what());
    }
    return {w};
  }
  PairText pair() {
    PairText p;
    p.x = measure();
    p.y = measure();
    return p;
  }
  DimenText dimen_word() {
    const Token& t = peek();
    const std::string w = word("a dimension");
    try {
      parse_dimen(w);
    } catch (const Error& e) {
      fail(t, e.what());
    }
    return {w};
  }
  DimenText dimen() {
    expect_punct('<');
    DimenText d = dimen_word();
    expect_punct('>');
    return d;
  }
  Decimal number() {
    const Token& t = peek();
    const std::string w = word("a number");
    try {
      return Decimal::parse(w);
    } catch (const Error& e) {
      fail(t, e.what());
    }
  }
  long integer() {
    const Token& t = peek();
    const Decimal d = number();
    if (d.frac() != 0) fail(t, "expected a whole number");
    return static_cast<long>(d.whole()) * (d.negative() ? -1 : 1);
  }
  OffsetText offset() {
    expect_punct('<');
    OffsetText o;
    o.dx = dimen_word();
    expect_punct(',');
    o.dy = dimen_word();
    expect_punct('>');
    return o;
  }
  std::optional<OffsetText> maybe_offset() {
    if (!is_punct('<')) return std::nullopt;
    return offset();
  }
  std::string markers() {
    expect_punct('[');
    std::string m;
    while (!is_punct(']')) m += word("orientation markers");
    next();
    return m;
  }
  /// `[markers]` and `<dx,dy>` in either order, both optional.
  OrientText orientation() {
    OrientText o;
    bool seen_markers = false;
    bool seen_offset = false;
    for (;;) {
      if (!seen_markers && is_punct('[')) {
        o.markers = markers();
        seen_markers = true;
      } else if (!seen_offset && is_punct('<')) {
        o.offset = offset();
        seen_offset = true;
      } else {
        return o;
      }
    }
  }
  OverrideText overrides() {
    expect_punct('<');
    OverrideText o;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i > 0) expect_punct(',');
      if (peek().kind == TokenKind::word) {
        const Token& t = peek();
        std::string w = next().text;
        if (w != "z") {
          try {
            parse_dimen(w);
          } catch (const Error& e) {
            fail(t, e.what());
          }
        }
        o[i] = w;
      }
    }
    expect_punct('>');
    return o;
  }

  // Objects.
  bool starts_object() const {
    if (peek().kind == TokenKind::string) return true;
    return peek().kind == TokenKind::word && kObjectWords.count(peek().text) != 0;
  }
  std::vector<std::string> string_list() {
    expect_punct('{');
    std::vector<std::string> lines;
    while (!is_punct('}')) {
      if (at_end()) fail(peek(), "unterminated text block");
      if (peek().kind == TokenKind::punct) fail(peek(), "expected text, found " + shown(peek()));
      lines.push_back(next().text);
    }
    next();
    return lines;
  }
  BoxFn object() {
    const Token t = peek();
    if (t.kind == TokenKind::string) {
      next();
      return [s = t.text](Engine& e) { return e.text_box(s); };
    }
    if (t.kind != TokenKind::word) fail(t, "expected an object, found " + shown(t));
    const std::string k = t.text;
    next();
    if (k == "stack" || k == "lines" || k == "Lines") {
      char align = 'c';
      if (is_punct('[')) {
        const Token& mt = peek();
        const std::string m = markers();
        if (m != "l" && m != "c" && m != "r") fail(mt, "alignment must be l, c or r");
        align = m[0];
      }
      std::optional<DimenText> leading;
      if (k == "stack" && is_punct('<')) leading = dimen();
      const auto lines = string_list();
      const BlockKind kind =
          k == "stack" ? BlockKind::stack : k == "lines" ? BlockKind::lines : BlockKind::Lines;
      return [=](Engine& e) {
        std::optional<Dimen> lead;
        if (leading) lead = leading->get(e);
        return e.text_block(lines, align, kind, lead);
      };
    }
    if (k == "frame") {
      std::optional<DimenText> margin;
      if (is_punct('<')) margin = dimen();
      BoxFn inner = object();
      return [=](Engine& e) {
        return e.frame(margin ? margin->get(e) : Dimen{}, inner(e));
      };
    }
    if (k == "rectangle") {
      const DimenText w = dimen();
      const DimenText h = dimen();
      return [=](Engine& e) { return e.rectangle(w.get(e), h.get(e)); };
    }
    if (k == "disk") {
      const DimenText r = dimen();
      return [=](Engine& e) {
        const Dimen rad = r.get(e);
        Box b;
        b.ext = {rad.times(2), rad, rad};
        PlacedItem d;
        d.kind = ItemKind::dot;
        d.ext = b.ext;
        d.shape = Shape::disk();
        b.items.push_back(d);
        return b;
      };
    }
    if (k == "rule") {
      const DimenText w = dimen();
      const DimenText h = dimen();
      return [=](Engine& e) {
        Box b;
        b.ext = {w.get(e), h.get(e), Dimen{}};
        PlacedItem r;
        r.kind = ItemKind::rule;
        r.ext = b.ext;
        r.shape = Shape::rect();
        b.items.push_back(r);
        return b;
      };
    }
    fail(t, "expected an object, found '" + k + "'");
  }
  /// `( object [o] <dx,dy> )` with the parentheses optional.
  std::pair<BoxFn, OrientText> symbol_spec() {
    const bool paren = is_punct('(');
    if (paren) next();
    BoxFn obj = object();
    OrientText o = orientation();
    if (paren) expect_punct(')');
    return {obj, o};
  }

  // Statements.
  Statement statement() {
    const Token t = peek();
    if (t.kind != TokenKind::word) fail(t, "expected a command, found " + shown(t));
    const std::string name = t.text;
    next();
    Statement s;
    s.name = name;
    s.line = t.line;
    s.column = t.column;
    s.run = command(name, t);
    return s;
  }

  std::function<void(Engine&)> command(const std::string& k, const Token& t) {
    if (kParameters.count(k) != 0) {
      expect_punct('=');
      const DimenText d = dimen_word();
      return [k, d](Engine& e) { set_parameter(e, k, d.get(e)); };
    }
    if (auto simple = simple_command(k)) return *simple;
    if (k == "setcoordinatesystem") return set_coordinate_system();
    if (k == "startrotation") return start_rotation();
    if (k == "put") return put();
    if (k == "multiput") return multiput();
    if (k == "setplotsymbol") {
      auto [obj, o] = symbol_spec();
      return [obj, o](Engine& e) { e.set_plot_symbol(obj(e), o.get(e)); };
    }
    if (k == "setdashpattern") return set_dash_pattern();
    if (k == "setdots" || k == "setdashes") {
      std::optional<DimenText> d;
      if (is_punct('<')) d = dimen();
      const bool dots = k == "setdots";
      return [=](Engine& e) {
        std::optional<Dimen> v;
        if (d) v = d->get(e);
        if (dots) {
          e.set_dots(v);
        } else {
          e.set_dashes(v);
        }
      };
    }
    if (k == "setdotsnear" || k == "setdashesnear") {
      const DimenText d = dimen();
      expect_word("for");
      const DimenText span = dimen_word();
      const bool dots = k == "setdotsnear";
      return [=](Engine& e) {
        if (dots) {
          e.set_dots_near(d.get(e), span.get(e));
        } else {
          e.set_dashes_near(d.get(e), span.get(e));
        }
      };
    }
    if (k == "savelinesandcurves") {
      expect_word("on");
      const std::string f = string_arg("file name");
      return [f](Engine& e) { e.save_lines_and_curves(f); };
    }
    if (k == "writesavefile") {
      const std::string c = string_arg("comment");
      return [c](Engine& e) { e.write_save_file(c); };
    }
    if (k == "replot") {
      const std::string f = string_arg("file name");
      return [f](Engine& e) { e.replot(f); };
    }
    if (k == "findlength") return findlength();
    if (k == "plot") return plot();
    if (k == "setbars") return set_bars();
    if (k == "circulararc" || k == "ellipticalarc") return arc(k == "ellipticalarc");
    if (k == "arrow") return arrow();
    if (k == "betweenarrows") return betweenarrows();
    if (k == "putrule" || k == "putbar") return putrule(k == "putbar");
    if (k == "putrectangle") return putrectangle();
    if (k == "setshadegrid") return set_shade_grid();
    if (k == "setshadesymbol") {
      OverrideText ov;
      if (is_punct('<')) ov = overrides();
      auto [obj, o] = symbol_spec();
      return [ov, obj, o](Engine& e) { e.set_shade_symbol(overrides_of(ov, e), obj(e), o.get(e)); };
    }
    if (k == "vshade" || k == "hshade") return shade(k == "hshade");
    if (k == "setplotarea") return set_plot_area();
    if (k == "axis") return axis(t);
    if (k == "grid") {
      const long p = integer();
      const long q = integer();
      return [p, q](Engine& e) { e.grid(p, q); };
    }
    if (k == "plotheading") {
      BoxFn obj = object();
      return [obj](Engine& e) { e.plot_heading(obj(e)); };
    }
    if (k == "beginpicture") fail(t, "pictures do not nest");
    fail(t, "unknown command '" + k + "'");
  }

  static void set_parameter(Engine& e, const std::string& k, Dimen d) {
    Style& s = e.state().style;
    if (k == "linethickness") s.linethickness = d;
    if (k == "plotsymbolspacing") e.set_plot_symbol_spacing(d);
    if (k == "longticklength") s.longticklength = d;
    if (k == "shortticklength") s.shortticklength = d;
    if (k == "tickstovaluesleading") s.tickstovaluesleading = d;
    if (k == "valuestolabelleading") s.valuestolabelleading = d;
    if (k == "stackleading") s.stackleading = d;
    if (k == "headingtoplotskip") s.headingtoplotskip = d;
    if (k == "baselineskip") {
      s.baselineskip = d;
      e.state().metrics.baselineskip = d;
    }
  }

  std::optional<std::function<void(Engine&)>> simple_command(const std::string& k) {
    using F = std::function<void(Engine&)>;
    static const std::map<std::string, F> table = {
        {"setdimensionmode", [](Engine& e) { e.set_dimension_mode(); }},
        {"setcoordinatemode", [](Engine& e) { e.set_coordinate_mode(); }},
        {"stoprotation", [](Engine& e) { e.stop_rotation(); }},
        {"setsolid", [](Engine& e) { e.set_solid(); }},
        {"setlinear", [](Engine& e) { e.set_linear(); }},
        {"setquadratic", [](Engine& e) { e.set_quadratic(); }},
        {"sethistograms", [](Engine& e) { e.set_histograms(); }},
        {"shaderectangleson", [](Engine& e) { e.set_shade_rectangles(true); }},
        {"shaderectanglesoff", [](Engine& e) { e.set_shade_rectangles(false); }},
        {"inboundscheckon", [](Engine& e) { e.set_inbounds_check(true); }},
        {"inboundscheckoff", [](Engine& e) { e.set_inbounds_check(false); }},
        {"dontsavelinesandcurves", [](Engine& e) { e.dont_save_lines_and_curves(); }},
        {"normalgraphs", [](Engine& e) { e.normalgraphs(); }},
        {"visibleaxes", [](Engine& e) { e.state().style.axes_visible = true; }},
        {"invisibleaxes", [](Engine& e) { e.state().style.axes_visible = false; }},
        {"ticksout", [](Engine& e) { e.state().style.ticks_out = true; }},
        {"ticksin", [](Engine& e) { e.state().style.ticks_out = false; }},
        {"gridlines", [](Engine& e) { e.state().style.gridlines = true; }},
        {"nogridlines", [](Engine& e) { e.state().style.gridlines = false; }},
        {"loggedticks", [](Engine& e) { e.state().style.logged = true; }},
        {"unloggedticks", [](Engine& e) { e.state().style.logged = false; }},
    };
    const auto it = table.find(k);
    if (it == table.end()) return std::nullopt;
    return it->second;
  }

  std::function<void(Engine&)> set_coordinate_system() {
    std::optional<std::pair<DimenText, DimenText>> units;
    std::optional<PairText> ref;
    if (is_word("units")) {
      next();
      expect_punct('<');
      DimenText x = dimen_word();
      expect_punct(',');
      DimenText y = dimen_word();
      expect_punct('>');
      units.emplace(x, y);
    }
    if (is_word("point")) {
      next();
      expect_word("at");
      ref = pair();
    }
    return [=](Engine& e) {
      std::optional<std::pair<Dimen, Dimen>> u;
      if (units) u.emplace(units->first.get(e), units->second.get(e));
      std::optional<std::pair<Measure, Measure>> r;
      if (ref) r.emplace(ref->x.get(e), ref->y.get(e));
      e.set_coordinate_system(u, r);
    };
  }

  std::function<void(Engine&)> start_rotation() {
    std::optional<std::pair<Decimal, Decimal>> by;
    std::optional<PairText> about;
    if (is_word("by")) {
      next();
      const Decimal c = number();
      const Decimal s = number();
      by.emplace(c, s);
    }
    if (is_word("about")) {
      next();
      about = pair();
    }
    return [=](Engine& e) {
      std::optional<std::pair<Measure, Measure>> p;
      if (about) p.emplace(about->x.get(e), about->y.get(e));
      e.start_rotation(by, p);
    };
  }

  std::function<void(Engine&)> put() {
    BoxFn obj = object();
    const OrientText o = orientation();
    expect_word("at");
    const PairText p = pair();
    return [=](Engine& e) { e.put(obj(e), o.get(e), p.x.get(e), p.y.get(e)); };
  }

  std::function<void(Engine&)> multiput() {
    BoxFn obj = object();
    const OrientText o = orientation();
    expect_word("at");
    if (peek().kind == TokenKind::string) {
      const std::string f = next().text;
      return [=](Engine& e) { e.multiput_file(obj(e), o.get(e), f); };
    }
    struct EntryText {
      bool repeat = false;
      long count = 0;
      PairText p;
    };
    std::vector<EntryText> entries;
    while (!is_punct('/')) {
      if (at_end()) fail(peek(), "multiput list needs a closing '/'");
      EntryText en;
      if (peek().kind == TokenKind::word && peek().text[0] == '*') {
        const Token& st = peek();
        std::string count = next().text.substr(1);
        if (count.empty()) count = word("a repetition count");
        Decimal n;
        try {
          n = Decimal::parse(count);
        } catch (const Error& err) {
          fail(st, err.what());
        }
        if (n.frac() != 0) fail(st, "repetition count must be a whole number");
        en.repeat = true;
        en.count = static_cast<long>(n.whole()) * (n.negative() ? -1 : 1);
      }
      en.p = pair();
      entries.push_back(en);
    }
    next();
    return [=](Engine& e) {
      std::vector<MultiputEntry> list;
      for (const auto& en : entries) {
        list.push_back({en.repeat, en.p.x.get(e), en.p.y.get(e), en.count});
      }
      e.multiput(obj(e), o.get(e), list);
    };
  }

  std::function<void(Engine&)> set_dash_pattern() {
    expect_punct('<');
    std::vector<DimenText> list;
    if (!is_punct('>')) {
      list.push_back(dimen_word());
      while (is_punct(',')) {
        next();
        list.push_back(dimen_word());
      }
    }
    expect_punct('>');
    return [list](Engine& e) {
      std::vector<Dimen> v;
      for (const auto& d : list) v.push_back(d.get(e));
      e.set_dash_pattern(v);
    };
  }

  std::vector<Statement> block() {
    expect_punct('{');
    std::vector<Statement> body;
    while (!is_punct('}')) {
      if (at_end()) fail(peek(), "unterminated block");
      body.push_back(statement());
    }
    next();
    return body;
  }

  std::function<void(Engine&)> findlength() {
    const auto body = block();
    return [body](Engine& e) {
      const Dimen len = e.findlength([&] {
        for (const auto& s : body) {
          try {
            s.run(e);
          } catch (const Error& err) {
            throw err.located(s.line, s.column);
          }
        }
      });
      e.diagnostics().note("findlength: " + format_pt5(len) + "pt");
    };
  }

  std::function<void(Engine&)> plot() {
    if (peek().kind == TokenKind::string) {
      const std::string f = next().text;
      return [f](Engine& e) { e.plot_file(f); };
    }
    struct PointText {
      PairText p;
      std::vector<BoxFn> labels;
    };
    std::vector<PointText> pts;
    while (!is_punct('/')) {
      if (at_end()) fail(peek(), "plot list needs a closing '/'");
      PointText pt;
      pt.p = pair();
      while (starts_object()) pt.labels.push_back(object());
      pts.push_back(std::move(pt));
    }
    next();
    return [pts](Engine& e) {
      std::vector<Engine::PlotPoint> list;
      for (const auto& pt : pts) {
        Engine::PlotPoint p{pt.p.x.get(e), pt.p.y.get(e), {}};
        for (const auto& l : pt.labels) p.labels.push_back(l(e));
        list.push_back(std::move(p));
      }
      e.plot(list);
    };
  }

  std::function<void(Engine&)> set_bars() {
    const std::optional<OffsetText> off = maybe_offset();
    expect_word("breadth");
    const DimenText breadth = dimen();
    expect_word("baseline");
    expect_word("at");
    const Token& ot = peek();
    const std::string axis = word("'x' or 'y'");
    if (axis != "x" && axis != "y") fail(ot, "baseline axis must be x or y");
    expect_punct('=');
    const MeasureText base = measure();
    std::optional<OrientText> base_labels;
    std::optional<OrientText> end_labels;
    for (;;) {
      if (is_word("baselabels") || is_word("endlabels")) {
        const bool is_base = peek().text == "baselabels";
        next();
        expect_punct('(');
        OrientText o = orientation();
        expect_punct(')');
        (is_base ? base_labels : end_labels) = o;
      } else {
        break;
      }
    }
    return [=](Engine& e) {
      BarsConfig c;
      if (off) c.offset = off->get(e);
      c.breadth = breadth.get(e);
      c.orientation = axis[0];
      c.baseline = base.get(e);
      if (base_labels) c.base_labels = base_labels->get(e);
      if (end_labels) c.end_labels = end_labels->get(e);
      e.set_bars(c);
    };
  }

  std::function<void(Engine&)> arc(bool elliptical) {
    Decimal a = Decimal::from_int(1);
    Decimal b = Decimal::from_int(1);
    if (elliptical) {
      expect_word("axes");
      expect_word("ratio");
      const Token& rt = peek();
      const std::string r = word("an axes ratio a:b");
      const auto colon = r.find(':');
      if (colon == std::string::npos) fail(rt, "axes ratio must be written a:b");
      try {
        a = Decimal::parse(r.substr(0, colon));
        b = Decimal::parse(r.substr(colon + 1));
      } catch (const Error& err) {
        fail(rt, err.what());
      }
    }
    const Decimal deg = number();
    expect_word("degrees");
    expect_word("from");
    const PairText from = pair();
    expect_word("center");
    expect_word("at");
    const PairText c = pair();
    return [=](Engine& e) {
      e.elliptical_arc(a, b, deg, from.x.get(e), from.y.get(e), c.x.get(e), c.y.get(e));
    };
  }

  std::function<void(Engine&)> arrow() {
    const DimenText len = dimen();
    expect_punct('[');
    const Decimal t1 = number();
    expect_punct(',');
    const Decimal t2 = number();
    expect_punct(']');
    const std::optional<OffsetText> off = maybe_offset();
    expect_word("from");
    const PairText from = pair();
    expect_word("to");
    const PairText to = pair();
    return [=](Engine& e) {
      e.arrow(len.get(e), t1, t2, off ? off->get(e) : Point{}, from.x.get(e), from.y.get(e),
              to.x.get(e), to.y.get(e));
    };
  }

  std::function<void(Engine&)> betweenarrows() {
    BoxFn obj = object();
    const OrientText o = orientation();
    expect_word("from");
    const PairText from = pair();
    expect_word("to");
    const PairText to = pair();
    return [=](Engine& e) {
      e.betweenarrows(obj(e), o.get(e), from.x.get(e), from.y.get(e), to.x.get(e), to.y.get(e));
    };
  }

  std::function<void(Engine&)> putrule(bool bar) {
    const std::optional<OffsetText> off = maybe_offset();
    std::optional<DimenText> breadth;
    if (bar) {
      expect_word("breadth");
      breadth = dimen();
    }
    expect_word("from");
    const PairText from = pair();
    expect_word("to");
    const PairText to = pair();
    return [=](Engine& e) {
      const Point o = off ? off->get(e) : Point{};
      if (breadth) {
        e.putbar(o, breadth->get(e), from.x.get(e), from.y.get(e), to.x.get(e), to.y.get(e));
      } else {
        e.putrule(o, from.x.get(e), from.y.get(e), to.x.get(e), to.y.get(e));
      }
    };
  }

  std::function<void(Engine&)> putrectangle() {
    const std::optional<OffsetText> off = maybe_offset();
    expect_word("corners");
    expect_word("at");
    const PairText a = pair();
    expect_word("and");
    const PairText b = pair();
    return [=](Engine& e) {
      e.putrectangle(off ? off->get(e) : Point{}, a.x.get(e), a.y.get(e), b.x.get(e), b.y.get(e));
    };
  }

  std::function<void(Engine&)> set_shade_grid() {
    std::optional<DimenText> span;
    std::optional<PairText> anchor;
    if (is_word("span")) {
      next();
      span = dimen();
    }
    if (is_word("point")) {
      next();
      expect_word("at");
      anchor = pair();
    }
    return [=](Engine& e) {
      std::optional<Dimen> s;
      if (span) s = span->get(e);
      std::optional<std::pair<Measure, Measure>> a;
      if (anchor) a.emplace(anchor->x.get(e), anchor->y.get(e));
      e.set_shade_grid(s, a);
    };
  }

  std::function<void(Engine&)> shade(bool horizontal) {
    struct Segment {
      OverrideText ov;
      bool has_ov = false;
      std::array<MeasureText, 3> triple;
      int line = 0;
      int column = 0;
    };
    auto triple = [&] {
      std::array<MeasureText, 3> t;
      for (auto& m : t) m = measure();
      return t;
    };
    const auto first = triple();
    std::vector<Segment> segs;
    while (!is_punct('/')) {
      if (at_end()) fail(peek(), "shade list needs a closing '/'");
      Segment s;
      s.line = peek().line;
      s.column = peek().column;
      if (is_punct('<')) {
        s.ov = overrides();
        s.has_ov = true;
      }
      s.triple = triple();
      segs.push_back(s);
    }
    next();
    return [=](Engine& e) {
      auto m = [&](const std::array<MeasureText, 3>& t) {
        return std::array<Measure, 3>{t[0].get(e), t[1].get(e), t[2].get(e)};
      };
      const auto f = m(first);
      if (horizontal) {
        e.hshade(f[0], f[1], f[2]);
      } else {
        e.vshade(f[0], f[1], f[2]);
      }
      const bool quadratic = e.state().shade.quadratic;
      for (std::size_t i = 0; i < segs.size(); ++i) {
        const Segment& s = segs[i];
        if (!quadratic) {
          const auto t = m(s.triple);
          e.lshade(overrides_of(s.ov, e), t[0], t[1], t[2]);
          continue;
        }
        if (i + 1 >= segs.size()) {
          throw Error(ErrorKind::parse, "quadratic shading needs triples in pairs", s.line,
                      s.column);
        }
        const Segment& s2 = segs[++i];
        if (s2.has_ov) {
          throw Error(ErrorKind::parse, "shrinkage overrides go before a pair of triples",
                      s2.line, s2.column);
        }
        e.qshade(overrides_of(s.ov, e), m(s.triple), m(s2.triple));
      }
    };
  }

  std::function<void(Engine&)> set_plot_area() {
    expect_word("x");
    expect_word("from");
    const MeasureText x1 = measure();
    expect_word("to");
    const MeasureText x2 = measure();
    expect_punct(',');
    expect_word("y");
    expect_word("from");
    const MeasureText y1 = measure();
    expect_word("to");
    const MeasureText y2 = measure();
    return [=](Engine& e) { e.set_plot_area(x1.get(e), x2.get(e), y1.get(e), y2.get(e)); };
  }

  // Axis items stay textual; labels and values become boxes at run time.
  struct AxisItemText {
    AxisItem item;
    std::vector<BoxFn> boxes;
    std::optional<DimenText> dimen;
  };

  std::function<void(Engine&)> axis(const Token& at) {
    std::vector<AxisItemText> items;
    bool in_ticks = false;
    for (;;) {
      const Token kt = peek();
      if (at_end()) fail(at, "axis needs a closing '/'");
      AxisItemText it;
      it.item.line = kt.line;
      it.item.column = kt.column;
      if (is_punct('/')) {
        next();
        it.item.keyword = "/";
        items.push_back(std::move(it));
        break;
      }
      const std::string k = word("an axis keyword");
      it.item.keyword = k;
      if (!in_ticks) {
        if (k == "shiftedto") {
          const Token& xt = peek();
          const std::string which = word("'x' or 'y'");
          if (which != "x" && which != "y") fail(xt, "shiftedto needs x= or y=");
          expect_punct('=');
          it.item.args.push_back(measure().text);
        } else if (k == "label") {
          it.boxes.push_back(object());
        } else if (k == "ticks") {
          in_ticks = true;
        }
      } else if (k == "length" || k == "width") {
        it.dimen = dimen();
      } else if (k == "withvalues" || k == "at") {
        while (!is_punct('/')) {
          if (at_end()) fail(kt, "'" + k + "' list needs a closing '/'");
          if (k == "withvalues") {
            if (starts_object()) {
              it.boxes.push_back(object());
            } else {
              const std::string v = word("a tick value");
              it.boxes.push_back([v](Engine& e) { return e.text_box(v); });
            }
          } else {
            const Token& vt = peek();
            const std::string v = word("a tick coordinate");
            try {
              Decimal::parse(v);
            } catch (const Error& err) {
              fail(vt, err.what());
            }
            it.item.args.push_back(v);
          }
        }
        next();
      } else if (k == "quantity") {
        it.item.args.push_back(word("a tick count"));
      } else if (k == "from") {
        for (const char* sep : {"to", "by", ""}) {
          const Token& vt = peek();
          const std::string v = word("a number");
          try {
            Decimal::parse(v);
          } catch (const Error& err) {
            fail(vt, err.what());
          }
          it.item.args.push_back(v);
          if (*sep) expect_word(sep);
        }
      }
      items.push_back(std::move(it));
    }
    if (is_punct('/')) next();
    return [items](Engine& e) {
      std::vector<AxisItem> list;
      for (const auto& it : items) {
        AxisItem a = it.item;
        for (const auto& b : it.boxes) a.boxes.push_back(b(e));
        if (it.dimen) a.dimen = it.dimen->get(e);
        list.push_back(std::move(a));
      }
      e.axis(list);
    };
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse(std::string_view source) { return Parser(source).program(); }

}  // namespace pictex::dsl
