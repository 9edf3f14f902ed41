#include "pictex/engine.hpp"

#include <cctype>

namespace pictex {

namespace {

Dimen coef(std::string_view d, Dimen v) { return Decimal::parse(d) * v; }

}  // namespace

Style Style::normalgraphs(Dimen bs) {
  Style s;
  s.baselineskip = bs;
  s.longticklength = coef(".4", bs);
  s.shortticklength = coef(".25", bs);
  s.tickstovaluesleading = coef(".25", bs);
  s.valuestolabelleading = coef(".8", bs);
  s.linethickness = Dimen::from_sp(26214);
  s.stackleading = coef(".17", bs);
  s.headingtoplotskip = coef("1.5", bs);
  s.axes_visible = true;
  s.ticks_out = true;
  s.gridlines = false;
  s.logged = false;
  return s;
}

Engine::Engine() : Engine(TextMetrics{}) {}

Engine::Engine(TextMetrics metrics) {
  st_.metrics = metrics;
  st_.style = Style::normalgraphs(metrics.baselineskip);
  set_shade_symbol({}, Symbol::default_dot().box, {});
}

std::map<std::string, std::string> Engine::replot_files() const {
  std::map<std::string, std::string> out;
  for (const auto& [name, body] : replot_) out[name] = body + "/\n";
  return out;
}

void Engine::begin_picture() {
  stack_.emplace_back(st_, std::move(canvas_));
  canvas_ = Canvas{};
}

Box Engine::end_picture(PictureBox* info) {
  if (stack_.empty()) throw Error(ErrorKind::parse, "endpicture without beginpicture");
  Box box = to_box(canvas_);
  if (info) *info = finalize(canvas_);
  auto [saved, outer] = std::move(stack_.back());
  stack_.pop_back();
  st_ = std::move(saved);
  canvas_ = std::move(outer);
  return box;
}

Box Engine::text_box(const std::string& text) const {
  return layout_text_block({text}, 'l', Dimen{}, BlockKind::lines, st_.metrics);
}

Box Engine::text_block(const std::vector<std::string>& lines, char align, BlockKind kind,
                       std::optional<Dimen> leading) const {
  TextMetrics m = st_.metrics;
  m.baselineskip = st_.style.baselineskip;
  return layout_text_block(lines, align, leading.value_or(st_.style.stackleading), kind, m);
}

void Engine::init_inbounds_check() {
  if (!st_.inbounds_check) return;
  st_.clip.on = true;
  st_.clip.left = st_.area.left + st_.cs.xorigin;
  st_.clip.right = st_.area.right + st_.cs.xorigin;
  st_.clip.bot = st_.area.bottom + st_.cs.yorigin;
  st_.clip.top = st_.area.top + st_.cs.yorigin;
}

void Engine::set_inbounds_check(bool on) {
  st_.inbounds_check = on;
  st_.clip.on = on;
  init_inbounds_check();
}

void Engine::set_coordinate_system(std::optional<std::pair<Dimen, Dimen>> units,
                                   std::optional<std::pair<Measure, Measure>> reference) {
  CoordSystem& cs = st_.cs;
  if (units) {
    cs.xunit = units->first;
    cs.yunit = units->second;
  }
  if (cs.mode == CoordMode::coordinate) {
    if (reference) {
      if (!reference->first.is_numeral() || !reference->second.is_numeral()) {
        throw Error(ErrorKind::parse, "reference point needs coordinates in coordinate mode");
      }
      cs.xref = reference->first.numeral();
      cs.yref = reference->second.numeral();
    }
    cs.xorigin = cs.xref * cs.xunit;
    cs.yorigin = cs.yref * cs.yunit;
    init_inbounds_check();
  } else if (reference) {
    cs.xorigin = resolve(reference->first, cs.xunit, CoordMode::dimension);
    cs.yorigin = resolve(reference->second, cs.yunit, CoordMode::dimension);
  }
}

void Engine::start_rotation(std::optional<std::pair<Decimal, Decimal>> by,
                            std::optional<std::pair<Measure, Measure>> pivot) {
  RotationState& r = st_.rot;
  r.active = true;
  if (by) {
    r.cos = by->first;
    r.sin = by->second;
  }
  if (st_.cs.mode == CoordMode::coordinate) {
    if (pivot) {
      r.xpivot_coord = pivot->first;
      r.ypivot_coord = pivot->second;
    }
    r.xpivot = resolve(r.xpivot_coord, st_.cs.xunit, CoordMode::coordinate);
    r.ypivot = resolve(r.ypivot_coord, st_.cs.yunit, CoordMode::coordinate);
  } else if (pivot) {
    r.xpivot = resolve(pivot->first, st_.cs.xunit, CoordMode::dimension);
    r.ypivot = resolve(pivot->second, st_.cs.yunit, CoordMode::dimension);
  }
}

void Engine::put(const Box& box, const Orientation& o, const Measure& x, const Measure& y) {
  pictex::put(canvas_, st_.cs, st_.rot, box, o.markers, o.offset, x, y, &diag_);
}

void Engine::multiput(const Box& box, const Orientation& o,
                      const std::vector<MultiputEntry>& entries) {
  pictex::multiput(canvas_, st_.cs, st_.rot, box, o.markers, o.offset, entries, &diag_);
}

void Engine::multiput_file(const Box& box, const Orientation& o, const std::string& file) {
  std::optional<std::string> text = resolver_ ? resolver_(file) : std::nullopt;
  if (!text) throw Error(ErrorKind::io, "cannot read multiput file '" + file + "'");
  const auto tokens = read_stream_tokens(*text);
  std::vector<MultiputEntry> entries;
  for (std::size_t i = 0; i < tokens.size();) {
    MultiputEntry e;
    if (tokens[i][0] == '*') {
      std::string count = tokens[i].substr(1);
      ++i;
      if (count.empty() && i < tokens.size()) count = tokens[i++];
      if (i + 2 > tokens.size()) {
        throw Error(ErrorKind::parse, "multiput file '" + file + "': incomplete repetition");
      }
      e.repeat = true;
      const Decimal n = Decimal::parse(count);
      if (n.frac() != 0) throw Error(ErrorKind::parse, "multiput: repetition count must be an integer");
      e.count = static_cast<long>(n.whole()) * (n.negative() ? -1 : 1);
    } else if (i + 2 > tokens.size()) {
      throw Error(ErrorKind::parse, "multiput file '" + file + "': odd number of coordinates");
    }
    e.x = Measure::parse(tokens[i++], st_.metrics.em);
    e.y = Measure::parse(tokens[i++], st_.metrics.em);
    entries.push_back(std::move(e));
  }
  multiput(box, o, entries);
}

void Engine::dimenput(const Box& box, const Orientation& o, Point at) {
  const Point shifts = orient_shifts(box.ext, o.markers, o.offset, &diag_);
  const Point pos{at.x - shifts.x, at.y - shifts.y};
  canvas_.add_box(box, pos);
  canvas_.account(pos, box.ext);
}

void Engine::set_plot_symbol(Box box, const Orientation& o) {
  st_.pen.symbol = Symbol::make(std::move(box), o.markers, o.offset, &diag_);
}

void Engine::set_dash_pattern(const std::vector<Dimen>& entries) {
  st_.pen.pattern = DashPattern::from_entries(entries);
}

void Engine::set_dots(std::optional<Dimen> gap) {
  st_.pen.pattern = DashPattern::dots(gap.value_or(5_pt), st_.pen.spacing);
}

void Engine::set_dashes(std::optional<Dimen> length) {
  st_.pen.pattern = DashPattern::dashes(length.value_or(5_pt));
}

void Engine::set_dots_near(Dimen gap, Dimen span) {
  st_.pen.pattern = DashPattern::dots_near(gap, span, st_.pen.spacing);
}

void Engine::set_dashes_near(Dimen length, Dimen span) {
  st_.pen.pattern = DashPattern::dashes_near(length, span);
}

void Engine::save_lines_and_curves(const std::string& file) {
  st_.saving = true;
  st_.save_file = file;
  replot_[file].clear();
}

void Engine::write_save_file(const std::string& comment) {
  if (st_.save_file.empty()) {
    diag_.note("writesavefile: no save file is open; comment dropped");
    return;
  }
  replot_[st_.save_file] += "%" + comment + "\n";
}

void Engine::plot_dot(Point p) {
  const Point pos{p.x - st_.cursor.plotorigin.x, p.y - st_.cursor.plotorigin.y};
  if (!suppress_output_) canvas_.add_box(st_.pen.symbol.box, pos);
  if (st_.saving && !suppress_output_) {
    replot_[st_.save_file] +=
        std::to_string(pos.x.sp()) + "," + std::to_string(pos.y.sp()) + ".\n";
  }
}

void Engine::emit_dot(Point p) {
  if (st_.clip.on && !st_.clip.admits(p)) return;
  plot_dot(p);
}

void Engine::replot(const std::string& file) {
  std::optional<std::string> text = resolver_ ? resolver_(file) : std::nullopt;
  if (!text) {
    const auto it = replot_.find(file);
    if (it == replot_.end()) throw Error(ErrorKind::io, "cannot read replot file '" + file + "'");
    text = it->second;
  }
  replot_text(*text);
}

void Engine::replot_text(std::string_view s) {
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::parse, "replot: " + what + " at byte " + std::to_string(i));
  };
  auto read_int = [&](char terminator) {
    const std::size_t begin = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == begin || i >= s.size() || s[i] != terminator) fail("malformed record");
    const std::string digits(s.substr(begin, i - begin));
    ++i;
    const long long v = std::stoll(digits);
    return Dimen::from_sp(v);
  };
  for (;;) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size() || s[i] == '/') return;
    if (s[i] == '%') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    const Dimen x = read_int(',');
    const Dimen y = read_int('.');
    if (!suppress_output_) canvas_.add_box(st_.pen.symbol.box, {x, y});
  }
}

Dimen Engine::findlength(const std::function<void()>& draw) {
  const State saved = st_;
  const Canvas saved_canvas = canvas_;
  const bool saved_suppress = suppress_output_;
  st_.pen.pattern = DashPattern::from_entries({Dimen{}, Dimen::max()});
  st_.pen.symbol = Symbol::make(Box{});
  st_.saving = false;
  suppress_output_ = true;
  total_ = Dimen{};
  try {
    draw();
  } catch (...) {
    st_ = saved;
    canvas_ = saved_canvas;
    suppress_output_ = saved_suppress;
    throw;
  }
  st_ = saved;
  canvas_ = saved_canvas;
  suppress_output_ = saved_suppress;
  return total_;
}

std::vector<std::string> read_stream_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '/') break;
    const std::size_t begin = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '%' && text[i] != '/') {
      ++i;
    }
    out.emplace_back(text.substr(begin, i - begin));
  }
  return out;
}

}  // namespace pictex
