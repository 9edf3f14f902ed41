#include <algorithm>

#include "pictex/dsl.hpp"

namespace pictex::dsl {

RenderResult render(const Picture& picture, const RenderConfig& config,
                    const FileResolver& resolver, const TraceSink& trace) {
  Engine e(config.metrics());
  if (resolver) e.set_file_resolver(resolver);
  for (const auto& s : picture.statements) {
    const std::size_t before = e.diagnostics().messages.size();
    try {
      s.run(e);
    } catch (const Error& err) {
      throw err.located(s.line, s.column);
    }
    if (trace) {
      const auto& all = e.diagnostics().messages;
      trace(s, {all.begin() + static_cast<std::ptrdiff_t>(before), all.end()});
    }
  }
  RenderResult r;
  r.canvas = e.canvas();
  r.em = config.em;
  if (e.state().area.set) r.area = e.state().area;
  r.replot_files = e.replot_files();
  r.diagnostics = e.diagnostics().messages;
  return r;
}

std::optional<BoundingBox> view_bounds(const RenderResult& r) {
  std::optional<BoundingBox> b = r.canvas.bounds();
  if (r.area) {
    const PlotArea& a = *r.area;
    b = account(b, {a.left, a.bottom}, {a.xlength, a.ylength, Dimen{}});
  }
  return b;
}

namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string pt(Dimen d) { return format_pt5(d); }

}  // namespace

std::string emit_svg(const RenderResult& r) {
  const BoundingBox b = view_bounds(r).value_or(BoundingBox{});
  const Dimen w = b.xright - b.xleft;
  const Dimen h = b.ytop - b.ybot;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + pt(b.xleft) +
         " " + pt(-b.ytop) + " " + pt(w) + " " + pt(h) + "\" width=\"" + pt(w) +
         "pt\" height=\"" + pt(h) + "pt\">\n";
  out += "<g fill=\"black\" stroke=\"none\">\n";
  for (const auto& it : r.canvas.items()) {
    const Extents& e = it.ext;
    switch (it.kind) {
      case ItemKind::rule:
        out += "<rect x=\"" + pt(it.pos.x) + "\" y=\"" + pt(-(it.pos.y + e.height)) +
               "\" width=\"" + pt(e.width) + "\" height=\"" + pt(e.height + e.depth) + "\"/>\n";
        break;
      case ItemKind::dot:
      case ItemKind::symbol: {
        if (it.shape.kind == Shape::Kind::glyph) {
          out += "<text x=\"" + pt(it.pos.x) + "\" y=\"" + pt(-it.pos.y) + "\" font-size=\"" +
                 pt(r.em) + "\">" + escape(it.shape.glyph) + "</text>\n";
          break;
        }
        if (it.shape.kind == Shape::Kind::none) break;
        if (it.shape.kind == Shape::Kind::rect) {
          out += "<rect x=\"" + pt(it.pos.x) + "\" y=\"" + pt(-(it.pos.y + e.height)) +
                 "\" width=\"" + pt(e.width) + "\" height=\"" + pt(e.height + e.depth) +
                 "\"/>\n";
          break;
        }
        const Dimen cx = it.pos.x + e.width.over(2);
        const Dimen cy = it.pos.y + (e.height - e.depth).over(2);
        const Dimen rad = std::min(e.width, e.height + e.depth).over(2);
        out += "<circle cx=\"" + pt(cx) + "\" cy=\"" + pt(-cy) + "\" r=\"" + pt(rad) + "\"/>\n";
        break;
      }
      case ItemKind::text:
        out += "<text x=\"" + pt(it.pos.x) + "\" y=\"" + pt(-it.pos.y) + "\" font-size=\"" +
               pt(r.em) + "\">" + escape(it.text) + "</text>\n";
        break;
    }
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string emit_bbox(const RenderResult& r) {
  const BoundingBox b = view_bounds(r).value_or(BoundingBox{});
  return pt(b.xleft) + " " + pt(b.ybot) + " " + pt(b.xright) + " " + pt(b.ytop) + "\n";
}

}  // namespace pictex::dsl
