#include "morita/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace morita;

namespace {

int write(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot write " << out << "\n";
    return 2;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of traces, shadows and umbras over finite-dimensional algebras"};
  app.require_subcommand(1);
  std::string scenario_path, format = "human", out, action;
  std::uint64_t seed = 1;
  std::size_t degree_bound = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
    sub->add_option("--format", format, "human, json or tsv")->check(CLI::IsMember({"human", "json", "tsv"}));
    sub->add_option("--seed", seed, "First seed for checks that do not set one");
    sub->add_option("--degree-bound", degree_bound, "Override n_max for Hochschild and Lunts checks");
    sub->add_option("--out", out, "Write the report here instead of stdout");
  };
  auto* check = app.add_subcommand("check", "Run the checks of a scenario");
  common(check);
  auto* chr = app.add_subcommand("char", "2-character tables of the scenario's group actions");
  common(chr);
  chr->add_option("--action", action, "Only this action");
  auto* hh = app.add_subcommand("hh", "Hochschild homology of every algebra in the scenario");
  common(hh);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Scenario s;
  Format f;
  try {
    f = parse_format(format);
    s = parse_scenario(scenario_path);
  } catch (const ScenarioError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) {
      RunOptions opt;
      opt.seed = seed;
      if (degree_bound) opt.degree_bound = degree_bound;
      Report r = run(s, opt);
      int w = write(emit(r, f), out);
      if (w) return w;
      return r.passed() ? 0 : 1;
    }
    if (chr->parsed()) {
      auto r = run_characters(s, action);
      return write(emit(r, f), out);
    }
    auto r = run_hochschild(s, degree_bound ? degree_bound : 4);
    int w = write(emit(r, f), out);
    if (w) return w;
    return r.passed() ? 0 : 1;
  } catch (const ScenarioError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
