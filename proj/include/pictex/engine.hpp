#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pictex/fixed.hpp"
#include "pictex/geom.hpp"
#include "pictex/pen.hpp"

namespace pictex {

/// Orientation markers plus the `<dx,dy>` offset of a placement.
struct Orientation {
  std::string markers;
  Point offset;
};

/// Lengths and switches reset by normalgraphs.
struct Style {
  Dimen baselineskip = 12_pt;
  Dimen linethickness;
  Dimen longticklength;
  Dimen shortticklength;
  Dimen tickstovaluesleading;
  Dimen valuestolabelleading;
  Dimen stackleading;
  Dimen headingtoplotskip;
  bool axes_visible = true;
  bool ticks_out = true;
  bool gridlines = false;
  bool logged = false;

  static Style normalgraphs(Dimen baselineskip);
};

enum class CurveMode { linear, quadratic, histogram, bars };

struct BarsConfig {
  Point offset;
  Dimen breadth;
  char orientation = 'y';
  Measure baseline;
  std::optional<Orientation> base_labels;
  std::optional<Orientation> end_labels;
};

struct PlotArea {
  bool set = false;
  Dimen left;
  Dimen bottom;
  Dimen right;
  Dimen top;
  Dimen xlength;
  Dimen ylength;
};

/// Per-side shrinkage override: nullopt keeps the symbol's default, a
/// value (0 for "z") replaces it.
using ShrinkOverrides = std::array<std::optional<Dimen>, 4>;

struct ShadeState {
  Dimen span = 5_pt;
  Measure xanchor_coord;
  Measure yanchor_coord;
  Dimen xanchor;
  Dimen yanchor;
  Symbol symbol;
  Dimen lshrink;
  Dimen rshrink;
  Dimen bshrink;
  Dimen tshrink;
  bool rectangles = false;
  bool quadratic = false;

  // Band under construction, in swapped axes for hshade.
  bool horizontal = false;
  Dimen xS;
  Dimen ybS;
  Dimen ytS;
  Point origin;
};

struct Cursor {
  Point S;
  Point plotorigin;
  long intervalno = 0;
  bool inverse_quadratic = false;
  Dimen beta;
  Dimen gamma;
};

/// Everything that reverts when a (sub-)picture ends.
struct State {
  CoordSystem cs;
  RotationState rot;
  PenState pen;
  ClipRect clip;
  bool inbounds_check = false;
  PlotArea area;
  Dimen headingoffset;
  Style style;
  ShadeState shade;
  CurveMode mode = CurveMode::linear;
  BarsConfig bars;
  Cursor cursor;
  TextMetrics metrics;
  bool saving = false;
  std::string save_file;
};

/// One keyword of an axis command, with its arguments.
struct AxisItem {
  std::string keyword;
  std::vector<std::string> args;
  std::vector<Box> boxes;  // label, or withvalues entries
  Dimen dimen;             // length/width
  int line = 0;
  int column = 0;
};

/// Where a shade band's samples are stamped; exposed for tests.
struct ShadeStation {
  Point location;  // before rotation, internal coordinates
  long parity = 0;
};

using FileResolver = std::function<std::optional<std::string>(const std::string&)>;

class Engine {
 public:
  Engine();
  explicit Engine(TextMetrics metrics);

  State& state() { return st_; }
  const State& state() const { return st_; }
  Canvas& canvas() { return canvas_; }
  const Canvas& canvas() const { return canvas_; }
  Diagnostics& diagnostics() { return diag_; }
  Dimen total_arc_length() const { return total_; }
  void set_file_resolver(FileResolver r) { resolver_ = std::move(r); }
  /// Replot files written so far, by name.
  std::map<std::string, std::string> replot_files() const;

  // Pictures. Sub-pictures run in a saved copy of the state.
  void begin_picture();
  Box end_picture(PictureBox* info = nullptr);
  int depth() const { return static_cast<int>(stack_.size()); }

  // Text objects built with the current metrics.
  Box text_box(const std::string& text) const;
  Box text_block(const std::vector<std::string>& lines, char align, BlockKind kind,
                 std::optional<Dimen> leading = std::nullopt) const;

  // Coordinates.
  void set_coordinate_system(std::optional<std::pair<Dimen, Dimen>> units,
                             std::optional<std::pair<Measure, Measure>> reference);
  void set_dimension_mode() { st_.cs.mode = CoordMode::dimension; }
  void set_coordinate_mode() { st_.cs.mode = CoordMode::coordinate; }
  void start_rotation(std::optional<std::pair<Decimal, Decimal>> by,
                      std::optional<std::pair<Measure, Measure>> pivot);
  void stop_rotation() { st_.rot.active = false; }

  // Placement.
  void put(const Box& box, const Orientation& o, const Measure& x, const Measure& y);
  void multiput(const Box& box, const Orientation& o, const std::vector<MultiputEntry>& entries);
  void multiput_file(const Box& box, const Orientation& o, const std::string& file);
  /// Places at an internal position, without rotation or origin.
  void dimenput(const Box& box, const Orientation& o, Point at);

  // Pen.
  void set_plot_symbol(Box box, const Orientation& o);
  void set_plot_symbol_spacing(Dimen spacing) { st_.pen.spacing = spacing; }
  void set_dash_pattern(const std::vector<Dimen>& entries);
  void set_dots(std::optional<Dimen> gap = std::nullopt);
  void set_dashes(std::optional<Dimen> length = std::nullopt);
  void set_dots_near(Dimen gap, Dimen span);
  void set_dashes_near(Dimen length, Dimen span);
  void set_solid() { st_.pen.pattern = DashPattern::solid(); }
  void set_inbounds_check(bool on);
  void set_linethickness(Dimen t) { st_.style.linethickness = t; }

  // Persistence.
  void save_lines_and_curves(const std::string& file);
  void dont_save_lines_and_curves() { st_.saving = false; }
  void write_save_file(const std::string& comment);
  void replot(const std::string& file);
  /// Places the dots of a replot file's text.
  void replot_text(std::string_view contents);

  /// Runs `draw` with an invisible pen and no output; returns the total
  /// arc length it accumulated.
  Dimen findlength(const std::function<void()>& draw);

  // Curves.
  void start(const Measure& x, const Measure& y);
  void ljoin(const Measure& x, const Measure& y);
  void qjoin(const Measure& mx, const Measure& my, const Measure& ex, const Measure& ey);
  void set_linear() { st_.mode = CurveMode::linear; st_.shade.quadratic = false; }
  void set_quadratic() { st_.mode = CurveMode::quadratic; st_.shade.quadratic = true; }
  void set_histograms() { st_.mode = CurveMode::histogram; }
  void set_bars(BarsConfig config);

  struct PlotPoint {
    Measure x;
    Measure y;
    std::vector<Box> labels;
  };
  void plot(const std::vector<PlotPoint>& points);
  void plot_file(const std::string& file);

  void elliptical_arc(const Decimal& a, const Decimal& b, const Decimal& degrees,
                      const Measure& sx, const Measure& sy, const Measure& cx, const Measure& cy);
  void circular_arc(const Decimal& degrees, const Measure& sx, const Measure& sy,
                    const Measure& cx, const Measure& cy) {
    elliptical_arc(Decimal::from_int(1), Decimal::from_int(1), degrees, sx, sy, cx, cy);
  }
  void arrow(Dimen headlength, const Decimal& t1, const Decimal& t2, Point tipoffset,
             const Measure& fx, const Measure& fy, const Measure& tx, const Measure& ty);
  void betweenarrows(const Box& label, const Orientation& o, const Measure& fx,
                     const Measure& fy, const Measure& tx, const Measure& ty);

  // Rules and rectangles.
  void putrule(Point offset, const Measure& fx, const Measure& fy, const Measure& tx,
               const Measure& ty);
  void putbar(Point offset, Dimen breadth, const Measure& fx, const Measure& fy,
              const Measure& tx, const Measure& ty);
  void putrectangle(Point offset, const Measure& x1, const Measure& y1, const Measure& x2,
                    const Measure& y2);
  Box frame(Dimen margin, const Box& content);
  Box rectangle(Dimen width, Dimen height);

  // Shading.
  void set_shade_grid(std::optional<Dimen> span, std::optional<std::pair<Measure, Measure>> anchor);
  void set_shade_symbol(const ShrinkOverrides& overrides, Box box, const Orientation& o);
  void set_shade_rectangles(bool on) { st_.shade.rectangles = on; }
  void vshade(const Measure& a, const Measure& lo, const Measure& hi);
  void hshade(const Measure& a, const Measure& lo, const Measure& hi);
  void lshade(const ShrinkOverrides& o, const Measure& a, const Measure& lo, const Measure& hi);
  void qshade(const ShrinkOverrides& o, const std::array<Measure, 3>& mid,
              const std::array<Measure, 3>& end);
  /// Stations stamped by the most recent shade step.
  const std::vector<ShadeStation>& last_shade_stations() const { return stations_; }

  // Axes.
  void normalgraphs();
  void set_plot_area(const Measure& x1, const Measure& x2, const Measure& y1, const Measure& y2);
  void axis(const std::vector<AxisItem>& items);
  void grid(long p, long q);
  void plot_heading(const Box& heading);

 private:
  // Curve core on internal (unrotated) dimensions.
  void start_d(Point p);
  void ljoin_d(Point p);
  void qjoin_d(Point m, Point e, const std::string& midtext);
  void plot_dot(Point p);
  void emit_dot(Point p);
  void init_inverse_interp(Dimen mid, Dimen arclength, const std::string& midtext);
  Decimal inverse_interp(Dimen arclength) const;

  /// `put` of a point already in dimensions.
  void put_d(const Box& box, const Orientation& o, Point p);
  void putrule_d(Point offset, Point from, Point to);
  void dashed_hline(Point offset, Point from, Dimen dx);
  void dashed_vline(Point offset, Point from, Dimen dy);
  void lshade_d(const ShrinkOverrides& o, Dimen xE, Dimen ybE, Dimen ytE);
  void putrectangle_d(Point offset, Point c1, Point c2);
  void putbar_d(Point offset, Dimen breadth, const Measure& fx, const Measure& fy,
                const Measure& tx, const Measure& ty);
  void shaderectangle(Point c1, Point c2);
  void init_inbounds_check();

  void start_shade(bool horizontal, Dimen a, Dimen lo, Dimen hi);
  void run_shade(const ShrinkOverrides& o, Dimen xE, Dimen ybE, Dimen ytE,
                 const std::function<void(Dimen, Dimen&, Dimen&)>& limits);

  State st_;
  Canvas canvas_;
  Diagnostics diag_;
  Dimen total_;
  std::vector<std::pair<State, Canvas>> stack_;
  std::vector<ShadeStation> stations_;
  std::map<std::string, std::string> replot_;
  FileResolver resolver_;
  bool suppress_output_ = false;

  friend class AxisBuilder;
};

/// Coefficients of t = v(beta + gamma v), from w = 8 * (arc length to the
/// middle point) / (total arc length).
struct InterpCoeffs {
  Dimen beta;
  Dimen gamma;
};
InterpCoeffs interp_coeffs(Dimen w);
Decimal interp_at(const Decimal& v, const InterpCoeffs& k);

/// y = y1 + b*dx + c*dx^2 through three points, dx measured from x1.
/// Coefficients are in pt per pt (and per pt^2).
struct QuadCoeffs {
  Dimen b;
  Dimen c;
};
QuadCoeffs divided_differences(Dimen x1, Dimen y1, Dimen x2, Dimen y2, Dimen x3, Dimen y3);

/// Parses a whitespace-separated coordinate stream, ending at "/" or the
/// end of input; "%" starts a comment.
std::vector<std::string> read_stream_tokens(std::string_view text);

}  // namespace pictex
