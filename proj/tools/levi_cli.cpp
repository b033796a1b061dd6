#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "levi/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Levi components of parabolic subalgebras of gl, sl, so and sp over countable bases"};
  std::string model_path, format = "text";
  app.add_option("model", model_path, "model file in the levi language")->required();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.allow_extras();
  app.footer(
      "commands: perp NAME | closure NAME | dim NAME [mod NAME] | flag-from-chain NAMES... |\n"
      "  taut-check F [G] | levi-check --couple C --levi L | validate --levi L |\n"
      "  minimal-couple --levi L --order O | finiteness --levi L | enumerate --levi L [--order O] |\n"
      "  count --levi L | self-taut-search --levi L | trace-count --couple C | socle --levi L |\n"
      "  oracle --verify all [--cutoffs 10,20,40]");
  CLI11_PARSE(app, argc, argv);

  std::vector<std::string> words = app.remaining();
  if (words.empty()) {
    std::cerr << "error: no command given\n" << app.help();
    return 2;
  }
  try {
    std::ifstream in(model_path);
    if (!in) levi::fail(levi::ErrorCode::parse, "cannot open model file " + model_path);
    std::stringstream text;
    text << in.rdbuf();
    auto model = levi::dsl::parse_model(text.str());
    auto report = levi::run_command(model, words);
    std::cout << levi::format_report(report, format == "json" ? levi::Format::json : levi::Format::text);
  } catch (const levi::Error& e) {
    std::cerr << "error [" << levi::error_name(e.code()) << "]: " << e.what() << "\n";
    return e.code() == levi::ErrorCode::parse ? 2 : 1;
  }
  return 0;
}
