#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pictex/dsl.hpp"

namespace fs = std::filesystem;
using namespace pictex;

namespace {

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kIo = 2;

struct IoError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError{"cannot write '" + path + "'"};
  out << text;
  if (!out) throw IoError{"cannot write '" + path + "'"};
}

dsl::RenderConfig load_config(const std::string& flag) {
  dsl::RenderConfig cfg;
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv("PICTEX_CONFIG")) path = env;
  }
  if (path.empty()) return cfg;
  const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorKind::parse, "config '" + path + "' is not a JSON object");
  }
  auto dim = [&](const char* key, Dimen& slot) {
    if (!j.contains(key)) return;
    if (!j[key].is_string()) throw Error(ErrorKind::parse, std::string("config: ") + key + " must be a dimension string");
    const Dimen d = parse_dimen(j[key].get<std::string>());
    if (d <= Dimen{}) throw Error(ErrorKind::invalid_argument, std::string("config: ") + key + " must be positive");
    slot = d;
  };
  dim("em", cfg.em);
  dim("baselineskip", cfg.baselineskip);
  dim("lineskip", cfg.lineskip);
  return cfg;
}

void report(const std::string& file, const Error& e) {
  std::cerr << file;
  if (e.line() != 0) std::cerr << ':' << e.line() << ':' << e.column();
  std::cerr << ": error: " << e.what() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Render picture descriptions to SVG"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string format = "svg";
  std::string config_path;
  std::string replot_name;
  int picture = 1;
  bool trace = false;

  auto* render = app.add_subcommand("render", "Render a picture");
  render->add_option("input", input, "Picture source")->required();
  render->add_option("-o,--output", output, "Output file (default stdout)");
  render->add_option("--format", format, "svg, replot or bbox")
      ->check(CLI::IsMember({"svg", "replot", "bbox"}));
  render->add_option("--picture", picture, "Which picture of the file, from 1")
      ->check(CLI::PositiveNumber);
  render->add_option("--replot-file", replot_name, "Saved file to write with --format replot");
  render->add_option("--config", config_path, "JSON render configuration");
  render->add_flag("--trace", trace, "Print each statement and its notes");

  auto* replot = app.add_subcommand("replot", "Draw the dots of a replot file as SVG");
  replot->add_option("input", input, "Replot file")->required();
  replot->add_option("-o,--output", output, "Output file (default stdout)");
  replot->add_option("--config", config_path, "JSON render configuration");

  auto* check = app.add_subcommand("check", "Parse only");
  check->add_option("input", input, "Picture source")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const dsl::RenderConfig cfg = load_config(config_path);

    if (*replot) {
      const std::string text = read_file(input);
      Engine e(cfg.metrics());
      e.replot_text(text);
      dsl::RenderResult r;
      r.canvas = e.canvas();
      r.em = cfg.em;
      write_output(output, dsl::emit_svg(r));
      return kOk;
    }

    const std::string source = read_file(input);
    const dsl::Program program = dsl::parse(source);
    if (*check) return kOk;

    if (program.pictures.empty()) throw Error(ErrorKind::parse, "no pictures in input");
    if (static_cast<std::size_t>(picture) > program.pictures.size()) {
      throw Error(ErrorKind::invalid_argument,
                  "picture " + std::to_string(picture) + " requested, file has " +
                      std::to_string(program.pictures.size()));
    }
    const fs::path base = fs::path(input).parent_path();
    FileResolver resolver = [base](const std::string& name) -> std::optional<std::string> {
      std::ifstream in(base / name, std::ios::binary);
      if (!in) return std::nullopt;
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    dsl::TraceSink sink;
    if (trace) {
      sink = [&](const dsl::Statement& s, const std::vector<std::string>& notes) {
        std::cerr << input << ':' << s.line << ':' << s.column << ": " << s.name << '\n';
        for (const auto& n : notes) std::cerr << "  note: " << n << '\n';
      };
    }
    const dsl::RenderResult r =
        dsl::render(program.pictures[static_cast<std::size_t>(picture - 1)], cfg, resolver, sink);
    if (!trace) {
      for (const auto& n : r.diagnostics) std::cerr << input << ": note: " << n << '\n';
    }

    if (format == "svg") {
      write_output(output, dsl::emit_svg(r));
    } else if (format == "bbox") {
      write_output(output, dsl::emit_bbox(r));
    } else {
      if (r.replot_files.empty()) throw Error(ErrorKind::invalid_argument, "picture saves no lines or curves");
      if (replot_name.empty()) {
        if (r.replot_files.size() > 1) {
          throw Error(ErrorKind::invalid_argument, "picture saves several files; pick one with --replot-file");
        }
        write_output(output, r.replot_files.begin()->second);
      } else {
        const auto it = r.replot_files.find(replot_name);
        if (it == r.replot_files.end()) {
          throw Error(ErrorKind::invalid_argument, "picture saves no file named '" + replot_name + "'");
        }
        write_output(output, it->second);
      }
    }
    return kOk;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kIo;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::io) {
      report(input, e);
      return kIo;
    }
    report(input, e);
    return kDiagnostics;
  }
}
