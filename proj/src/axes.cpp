#include <algorithm>

#include "pictex/engine.hpp"

namespace pictex {

namespace {

const Decimal kHalf = Decimal::parse(".5");

Dimen signed_dimen(int sign, Dimen d) { return sign > 0 ? d : sign < 0 ? -d : Dimen{}; }

bool is_integer_numeral(const std::string& s) {
  return s.find('.') == std::string::npos;
}

}  // namespace

void Engine::normalgraphs() { st_.style = Style::normalgraphs(st_.metrics.baselineskip); }

void Engine::set_plot_area(const Measure& x1, const Measure& x2, const Measure& y1,
                           const Measure& y2) {
  PlotArea& a = st_.area;
  const CoordSystem& cs = st_.cs;
  const Dimen left = cs.xdistance(x1) - cs.xorigin;
  const Dimen bottom = cs.ydistance(y1) - cs.yorigin;
  const Dimen right = cs.xdistance(x2) - cs.xorigin;
  const Dimen top = cs.ydistance(y2) - cs.yorigin;
  if (right < left || top < bottom) {
    throw Error(ErrorKind::invalid_argument, "setplotarea: inverted range");
  }
  a.set = true;
  a.left = left;
  a.bottom = bottom;
  a.right = right;
  a.top = top;
  init_inbounds_check();
  a.xlength = right - left;
  a.ylength = top - bottom;
  st_.headingoffset = Dimen{};
  Box sizer;
  sizer.ext = {a.xlength, a.ylength, Dimen{}};
  dimenput(sizer, {"bl", {}}, {left, bottom});
}

void Engine::plot_heading(const Box& heading) {
  st_.headingoffset += st_.style.headingtoplotskip;
  const Point offset{kHalf * st_.area.xlength, st_.headingoffset};
  dimenput(heading, {"B", offset}, {st_.area.left, st_.area.top});
}

void Engine::grid(long p, long q) {
  auto axis_items = [](const char* side, long n) {
    std::vector<AxisItem> items;
    for (const char* k : {side, "invisible", "ticks"}) items.push_back({k, {}, {}, {}, 0, 0});
    AxisItem len{"length", {}, {}, Dimen{}, 0, 0};
    items.push_back(len);
    items.push_back({"andacross", {}, {}, {}, 0, 0});
    items.push_back({"quantity", {std::to_string(n + 1)}, {}, {}, 0, 0});
    items.push_back({"/", {}, {}, {}, 0, 0});
    return items;
  };
  axis(axis_items("bottom", p));
  axis(axis_items("left", q));
}

/// One `axis ... /` command, run keyword by keyword.
class AxisBuilder {
 public:
  explicit AxisBuilder(Engine& e) : e_(e), st_(e.st_) {
    visible_ = st_.style.axes_visible;
    xlevel_ = st_.area.left;
    ylevel_ = st_.area.bottom;
  }

  void run(const std::vector<AxisItem>& items) {
    for (const auto& it : items) {
      if (finished_) break;
      if (in_ticks_) {
        tick_keyword(it);
      } else {
        axis_keyword(it);
      }
    }
    if (!finished_) finish_axis();
  }

 private:
  [[noreturn]] void unknown(const AxisItem& it) const {
    throw Error(ErrorKind::parse, "unrecognized axis keyword '" + it.keyword + "'", it.line,
                it.column);
  }

  void need_args(const AxisItem& it, std::size_t n) const {
    if (it.args.size() < n) {
      throw Error(ErrorKind::parse, "axis keyword '" + it.keyword + "' is missing arguments",
                  it.line, it.column);
    }
  }

  void axis_keyword(const AxisItem& it) {
    const std::string& k = it.keyword;
    if (k == "bottom" || k == "top") {
      ylevel_ = k == "bottom" ? st_.area.bottom : st_.area.top;
      xsign_ = 0;
      ysign_ = k == "bottom" ? -1 : 1;
      xswitch_ = true;
      tbrl_ = k == "bottom" ? "t" : "b";
      has_side_ = true;
      setup_done_ = false;
    } else if (k == "left" || k == "right") {
      xlevel_ = k == "left" ? st_.area.left : st_.area.right;
      xsign_ = k == "left" ? -1 : 1;
      ysign_ = 0;
      xswitch_ = false;
      tbrl_ = k == "left" ? "r" : "l";
      has_side_ = true;
      setup_done_ = false;
    } else if (k == "shiftedto") {
      need_args(it, 1);
      const Measure m = Measure::parse(it.args[0], st_.metrics.em);
      if (ysign_ == 0 && xsign_ != 0) {
        xlevel_ = st_.cs.xdistance(m) - st_.cs.xorigin;
      } else {
        ylevel_ = st_.cs.ydistance(m) - st_.cs.yorigin;
      }
    } else if (k == "visible") {
      visible_ = true;
    } else if (k == "invisible") {
      visible_ = false;
    } else if (k == "label") {
      if (it.boxes.empty()) {
        throw Error(ErrorKind::parse, "axis label needs text", it.line, it.column);
      }
      label_ = it.boxes[0];
      place_label_ = true;
    } else if (k == "ticks") {
      start_ticks(it);
    } else if (k == "/") {
      finish_axis();
    } else {
      unknown(it);
    }
  }

  void setup(const AxisItem* where) {
    if (setup_done_) return;
    if (!has_side_) {
      throw Error(ErrorKind::parse, "axis needs a side (bottom, top, left or right)",
                  where ? where->line : 0, where ? where->column : 0);
    }
    setup_done_ = true;
    const PlotArea& a = st_.area;
    if (xswitch_) {
      xlevel_ = a.left;
      start_ = a.left;
      end_ = a.right;
      length_ = a.xlength;
      origin_ = st_.cs.xorigin;
      unit_ = st_.cs.xunit;
    } else {
      ylevel_ = a.bottom;
      start_ = a.bottom;
      end_ = a.top;
      length_ = a.ylength;
      origin_ = st_.cs.yorigin;
      unit_ = st_.cs.yunit;
    }
    if (visible_) {
      const Point to = xswitch_ ? Point{length_, Dimen{}} : Point{Dimen{}, length_};
      const auto items = sub_items([&] { e_.putrule_d({}, {}, to); });
      place(items, start_);
    }
  }

  template <class F>
  std::vector<PlacedItem> sub_items(F draw) {
    e_.begin_picture();
    st_.cs.mode = CoordMode::dimension;
    st_.cs.xorigin = Dimen{};
    st_.cs.yorigin = Dimen{};
    draw();
    std::vector<PlacedItem> items = e_.canvas_.items();
    e_.end_picture();
    return items;
  }

  void place(const std::vector<PlacedItem>& items, Dimen loc) {
    if (e_.suppress_output_) return;
    const Point at = xswitch_ ? Point{loc, ylevel_} : Point{xlevel_, loc};
    for (const auto& it : items) e_.canvas_.add(it.translated(at));
  }

  void make_tick() {
    tick_ = sub_items([&] {
      st_.style.linethickness = tickwidth_;
      if (ticklength_ > Dimen{}) {
        e_.putrule_d({}, {}, {signed_dimen(inout_ * xsign_, ticklength_),
                             signed_dimen(inout_ * ysign_, ticklength_)});
      }
      if (gridlines_) {
        e_.putrule_d({}, {}, {signed_dimen(-xsign_, st_.area.xlength),
                             signed_dimen(-ysign_, st_.area.ylength)});
      }
    });
  }

  void start_ticks(const AxisItem& it) {
    setup(&it);
    in_ticks_ = true;
    inout_ = st_.style.ticks_out ? 1 : -1;
    ticklength_ = st_.style.longticklength;
    tickwidth_ = st_.style.linethickness;
    gridlines_ = st_.style.gridlines;
    logged_ = st_.style.logged;
    make_tick();
    tickcase_ = 0;
    lt_.clear();
  }

  void update_offset() {
    const Dimen a = signed_dimen(inout_, ticklength_);
    if (a > offset_) offset_ = a;
  }

  void take_value(Dimen loc) {
    lt_.emplace_back(loc, values_[next_value_++]);
    if (next_value_ >= values_.size()) tickcase_ = 0;
  }

  void common(const std::string& text) {
    const Decimal t = logged_ ? fixed::log10_of(text) : Decimal::parse(text);
    const Dimen scaled = t * unit_;
    const Dimen loc = scaled - origin_;
    place(tick_, loc);
    if (tickcase_ == 1) {
      std::string label = text;
      if (scaled < Dimen{} && !label.empty() && label[0] == '-') {
        label = "−" + label.substr(1);
      }
      lt_.emplace_back(loc, e_.text_box(label));
    } else if (tickcase_ == 2) {
      take_value(loc);
    }
  }

  void tick_keyword(const AxisItem& it) {
    const std::string& k = it.keyword;
    if (k == "in" || k == "out") {
      inout_ = k == "out" ? 1 : -1;
      make_tick();
    } else if (k == "length") {
      ticklength_ = it.dimen;
      make_tick();
    } else if (k == "long" || k == "short") {
      ticklength_ = k == "long" ? st_.style.longticklength : st_.style.shortticklength;
      make_tick();
    } else if (k == "width") {
      tickwidth_ = it.dimen;
      make_tick();
    } else if (k == "andacross" || k == "butnotacross") {
      gridlines_ = k == "andacross";
      make_tick();
    } else if (k == "logged" || k == "unlogged") {
      logged_ = k == "logged";
    } else if (k == "unlabeled") {
      tickcase_ = 0;
    } else if (k == "numbered") {
      tickcase_ = 1;
    } else if (k == "withvalues") {
      values_ = it.boxes;
      next_value_ = 0;
      tickcase_ = values_.empty() ? 0 : 2;
    } else if (k == "quantity") {
      need_args(it, 1);
      const Decimal n = Decimal::parse(it.args[0]);
      if (n.frac() != 0 || n.negative()) {
        throw Error(ErrorKind::parse, "quantity needs a whole number", it.line, it.column);
      }
      quantity(static_cast<std::int64_t>(n.whole()));
    } else if (k == "at") {
      update_offset();
      for (const auto& a : it.args) common(a);
    } else if (k == "from") {
      need_args(it, 3);
      update_offset();
      from_to_by(it);
    } else if (k == "/") {
      if (!lt_.empty()) place_tick_values();
      values_.clear();
      lt_.clear();
      finish_axis();
    } else {
      unknown(it);
    }
  }

  void quantity(std::int64_t n) {
    if (n <= 1) return;
    update_offset();
    const Dimen incr = length_.over(n - 1);
    for (Dimen loc = start_; !(loc > end_); loc += incr) {
      place(tick_, loc);
      if (tickcase_ == 2) take_value(loc);
      if (incr <= Dimen{}) break;
    }
  }

  void from_to_by(const AxisItem& it) {
    const auto& a = it.args;
    const fixed::ScaledRange r = fixed::scale_to_integers(a[0], a[1], a[2]);
    if (r.by < 0) {
      e_.diag_.note("ticks from " + a[0] + " to " + a[1] + " by " + a[2] +
                    ": negative increment, no ticks placed");
      return;
    }
    const bool integral = is_integer_numeral(a[0]) && is_integer_numeral(a[1]) &&
                          is_integer_numeral(a[2]);
    for (std::int64_t v = r.from; v <= r.to; v += r.by) {
      const std::string loc =
          integral ? std::to_string(v / r.scale) : fixed::scale_down(v, r.scale);
      common(loc);
    }
  }

  void place_tick_values() {
    offset_ += st_.style.tickstovaluesleading;
    PictureBox info;
    e_.begin_picture();
    for (const auto& [loc, box] : lt_) {
      if (xswitch_) {
        e_.dimenput(box, {"B", {}}, {loc, ylevel_});
      } else {
        e_.dimenput(box, {"r", {}}, {xlevel_, loc});
      }
    }
    const Box values = e_.end_picture(&info);
    const Point save{info.xleft, info.ybot};
    if (xswitch_) {
      Dimen a = ylevel_ - save.y + signed_dimen(ysign_, offset_);
      if (ysign_ < 0) {
        a -= values.ext.height;
      } else {
        a += values.ext.depth;
      }
      offset_ += values.ext.height;
      offset_ += values.ext.depth;
      e_.dimenput(values, {"Bl", save}, {Dimen{}, a});
    } else {
      Dimen a = xlevel_ - save.x + signed_dimen(xsign_, offset_);
      if (xsign_ < 0) a -= values.ext.width;
      offset_ += values.ext.width;
      e_.dimenput(values, {"Bl", save}, {a, Dimen{}});
    }
  }

  void place_axis_label() {
    offset_ += st_.style.valuestolabelleading;
    const Point at{xlevel_, ylevel_};
    if (xswitch_) {
      e_.dimenput(label_, {tbrl_, {kHalf * length_, signed_dimen(ysign_, offset_)}}, at);
      offset_ += label_.ext.depth;
      offset_ += label_.ext.height;
    } else {
      e_.dimenput(label_, {tbrl_, {signed_dimen(xsign_, offset_), kHalf * length_}}, at);
    }
  }

  void finish_axis() {
    finished_ = true;
    setup(nullptr);
    if (place_label_) place_axis_label();
    if (ysign_ > 0) {
      const Dimen a = ylevel_ + offset_ - st_.area.top;
      if (a > st_.headingoffset) st_.headingoffset = a;
    }
  }

  Engine& e_;
  State& st_;
  bool finished_ = false;
  bool in_ticks_ = false;
  bool has_side_ = false;
  bool setup_done_ = false;
  bool visible_ = true;
  bool place_label_ = false;
  Box label_;
  Dimen offset_;
  Dimen xlevel_;
  Dimen ylevel_;
  int xsign_ = 0;
  int ysign_ = 0;
  bool xswitch_ = true;
  std::string tbrl_;
  Dimen start_;
  Dimen end_;
  Dimen length_;
  Dimen origin_;
  Dimen unit_;

  int inout_ = 1;
  Dimen ticklength_;
  Dimen tickwidth_;
  bool gridlines_ = false;
  bool logged_ = false;
  int tickcase_ = 0;
  std::vector<Box> values_;
  std::size_t next_value_ = 0;
  std::vector<PlacedItem> tick_;
  std::vector<std::pair<Dimen, Box>> lt_;
};

void Engine::axis(const std::vector<AxisItem>& items) { AxisBuilder(*this).run(items); }

}  // namespace pictex
