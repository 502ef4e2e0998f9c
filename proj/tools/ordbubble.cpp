// ordbubble: analyses of finite preorders and bubble systems, JSON reports.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "ordbubble/cli.hpp"

namespace cli = ordbubble::cli;

int main(int argc, char** argv) {
  CLI::App app{"Finite preorders, bubble decompositions, utilities and interval topologies"};
  app.set_help_flag("-h,--help", "Show usage");

  std::string verb;
  std::string input, output, format = "auto", mutate;
  std::size_t n = 3;
  std::uint64_t seed = cli::kDefaultSeed;
  app.add_option("verb", verb, "analyze | decompose | bubble | extend | utility | topology | sweep")
      ->required();
  app.add_option("--in", input, "Input file");
  app.add_option("--out", output, "Write the report here instead of stdout");
  app.add_option("--n", n, "Carrier size for sweep (1..4)");
  app.add_option("--seed", seed, "Seed for randomized parts of sweep");
  app.add_option("--format", format, "auto | relation_json | matrix | bubble_json");
  app.add_option("--mutate", mutate)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    cli::Command cmd;
    cmd.verb = cli::parse_verb(verb);
    if (!input.empty()) cmd.input = input;
    cmd.n = n;
    cmd.seed = seed;
    cmd.format = ordbubble::io::parse_format(format);
    if (mutate == "saturation") {
      cmd.sweep.corrupt_saturation = true;
    } else if (!mutate.empty()) {
      throw ordbubble::Error(ordbubble::ErrorKind::ParseError, "unknown mutation '" + mutate + "'");
    }

    const cli::Report rep = cli::run(cmd);
    const std::string text = rep.dump();
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write '" << output << "'\n";
        return 1;
      }
      out << text;
    }
    for (const auto& c : rep.invariants)
      if (!c.pass) std::cerr << "invariant failed: " << c.name << "\n";
    return cli::exit_code(rep);
  } catch (const ordbubble::Error& e) {
    std::cerr << "error: " << e.what();
    if (!e.witness().empty()) {
      std::cerr << " [";
      for (std::size_t i = 0; i < e.witness().size(); ++i)
        std::cerr << (i ? ", " : "") << e.witness()[i];
      std::cerr << "]";
    }
    std::cerr << "\n";
    return cli::exit_code(e);
  }
}
