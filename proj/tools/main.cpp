#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cambrian/cli.hpp"

namespace {

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter group sorting words, Cambrian intervals, and lattice property analysis"};
  app.require_subcommand(1);

  cambrian::SortOptions sort_opt;
  std::vector<std::string> sort_word;
  CLI::App* sort = app.add_subcommand("sort", "Compute the sorting word of an element");
  sort->add_option("--system,-s", sort_opt.system_path, "system JSON file")->required();
  sort->add_option("--gamma,-g", sort_opt.gamma, "Coxeter element as a generator permutation")->required();
  sort->add_option("word", sort_word, "word in generator names (empty for the identity)");

  cambrian::IntervalOptions interval_opt;
  CLI::App* interval = app.add_subcommand("interval", "Build a Cambrian interval and analyze it");
  interval->add_option("--system,-s", interval_opt.system_path, "system JSON file")->required();
  interval->add_option("--gamma,-g", interval_opt.gamma, "Coxeter element as a generator permutation")->required();
  interval->add_option("--bottom,-b", interval_opt.bottom, "bottom word (default: identity)");
  interval->add_option("--top,-t", interval_opt.top, "top word")->required();
  interval->add_option("--dot", interval_opt.dot_path, "write a DOT diagram here");
  interval->add_option("--json", interval_opt.json_path, "write the interval JSON here");
  interval->add_option("--max-elems", interval_opt.max_elems, "cap on the weak-order ideal of the top");

  cambrian::AnalyzeOptions analyze_opt;
  CLI::App* analyze = app.add_subcommand("analyze-lattice", "Check every lattice property of a cover list");
  analyze->add_option("lattice", analyze_opt.lattice_path, "lattice JSON file")->required();
  analyze->add_option("--json", analyze_opt.json_path, "write the report here instead of stdout");

  cambrian::SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand("sweep", "Check trimness across families of systems");
  sweep->add_option("config", sweep_opt.config_path, "sweep config JSON file")->required();
  sweep->add_option("--json", sweep_opt.json_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sort->parsed()) {
      sort_opt.word = join_tokens(sort_word);
      return cambrian::run_sort(sort_opt, std::cout);
    }
    if (interval->parsed()) return cambrian::run_interval(interval_opt, std::cout);
    if (analyze->parsed()) return cambrian::run_analyze(analyze_opt, std::cout);
    if (sweep->parsed()) return cambrian::run_sweep_cmd(sweep_opt, std::cout);
  } catch (const cambrian::LimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const cambrian::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cambrian::ArithmeticError& e) {
    std::cerr << "arithmetic error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
