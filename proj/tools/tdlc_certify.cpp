#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tdlc/cli/jobs.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tdlc::InputError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// "file:line:column: message" for an offset into text
std::string locate(const std::string& file, const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(offset, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return file + ":" + std::to_string(line) + ":" + std::to_string(column);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Certifies coset complexes and checks the related RAAG, amalgam and tree constructions.\n"
      "Permutations act on the right: (a*b)(x) = b(a(x)), so \"(1 2)(2 3)\" is \"(1 3 2)\".\n"
      "Cycle notation is 1-based. Exit status: 0 all checks pass, 1 a check fails, 2 bad input."};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  bool print_json = false;
  bool quiet = false;

  for (const auto& name : tdlc::cli::commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config,-c", config_path, "job file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out,-o", out_dir, "directory for the JSON artifact and the text report");
    sub->add_flag("--json", print_json, "print the JSON artifact instead of the report");
    sub->add_flag("--quiet,-q", quiet, "print nothing on success");
  }
  app.get_subcommand("build")->description("build the complex and write it as JSON");
  app.get_subcommand("certify")->description("check every premise and derive the conclusions");
  app.get_subcommand("homology")->description("integral homology of the complex");
  app.get_subcommand("links")->description("girth of every vertex link");
  app.get_subcommand("raag-check")->description("word normal forms, kernel rewriting and edge-generator identities");
  app.get_subcommand("tree-check")->description("legal labeling and universal maps on a biregular ball");
  app.get_subcommand("search-subgroups")->description("conjugacy classes of subgroups of a given order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  std::string text;
  tdlc::cli::RunResult result;
  try {
    text = read_file(config_path);
    const auto cfg = tdlc::cli::parse_config(text);
    tdlc::cli::RunOptions opt;
    opt.base_dir = std::filesystem::path(config_path).parent_path();
    if (opt.base_dir.empty()) opt.base_dir = ".";
    if (!quiet) opt.log = [](const std::string& s) { std::cerr << s << "\n"; };
    result = tdlc::cli::run(cmd, cfg, opt);
    std::filesystem::create_directories(out_dir);
    for (const auto& a : tdlc::cli::artifacts(cmd, cfg, result)) tdlc::cli::write_atomic(std::filesystem::path(out_dir) / a.name, a.content);
  } catch (const tdlc::ParseError& e) {
    std::cerr << locate(config_path, text, e.position()) << ": " << e.message() << "\n";
    return kExitInput;
  } catch (const tdlc::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const tdlc::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  if (print_json) {
    std::cout << tdlc::cli::dump(result.json);
  } else if (!quiet || result.exit_code != 0) {
    std::cout << result.report;
  }
  return result.exit_code == 0 ? 0 : kExitFail;
}
