#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pictex/engine.hpp"

namespace pictex::dsl {

enum class TokenKind { word, string, punct, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  int line = 1;
  int column = 1;
};

/// Splits source text into words, quoted strings and the punctuation
/// [ ] < > { } ( ) / , = ; "%" starts a comment.
std::vector<Token> lex(std::string_view source);

/// One parsed command. `run` replays it against an engine.
struct Statement {
  std::string name;
  int line = 0;
  int column = 0;
  std::function<void(Engine&)> run;
};

struct Picture {
  int line = 0;
  std::vector<Statement> statements;
};

struct Program {
  std::vector<Picture> pictures;
};

Program parse(std::string_view source);

struct RenderConfig {
  Dimen em = Dimen::from_pt(10);
  Dimen baselineskip = Dimen::from_pt(12);
  Dimen lineskip = Dimen::from_pt(1);

  TextMetrics metrics() const { return {em, baselineskip, lineskip}; }
};

struct RenderResult {
  Canvas canvas;
  Dimen em = Dimen::from_pt(10);
  std::optional<PlotArea> area;
  std::map<std::string, std::string> replot_files;
  std::vector<std::string> diagnostics;
};

/// Called after each statement with the notes it produced.
using TraceSink = std::function<void(const Statement&, const std::vector<std::string>&)>;

/// Renders one picture. Errors are rethrown with the statement's position.
RenderResult render(const Picture& picture, const RenderConfig& config,
                    const FileResolver& resolver = {}, const TraceSink& trace = {});

/// viewBox source: the canvas bounds united with the plot area.
std::optional<BoundingBox> view_bounds(const RenderResult& r);

std::string emit_svg(const RenderResult& r);
/// "xleft ybot xright ytop" in pt.
std::string emit_bbox(const RenderResult& r);

}  // namespace pictex::dsl
