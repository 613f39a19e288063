// clusterdt: command-line front end.
//
//   clusterdt classify data/quivers/d4.quiver
//   clusterdt signs data/quivers/q_prime.quiver --iters 10 --csv
//   clusterdt orbit data/quivers/q_prime.quiver --iters 6 --digits 4 --paper-style

#include "clusterdt/cli/commands.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>

using namespace clusterdt;
using namespace clusterdt::cli;

namespace {

void add_common(CLI::App* app, CliOptions& o, std::string& file) {
  app->add_option("file", file, "quiver file")->required();
  app->add_option("--samples", o.samples, "sample points per cone")->capture_default_str();
  app->add_option("--max-iters", o.max_iters, "loop iterations per sample")->capture_default_str();
  app->add_option("--keller-depth", o.keller_depth, "BFS depth of the multiplicity probe")->capture_default_str();
  app->add_option("--start", o.start, "start point, comma separated rationals (default all ones)");
  app->add_option("--iters", o.iters, "rows n = 0..iters")->capture_default_str();
  app->add_option("--direction", o.direction, "forward or backward")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Direction>{{"forward", Direction::Forward}, {"backward", Direction::Backward}}));
  app->add_option("--digits", o.digits, "decimal digits in reports")
      ->check(CLI::Range(0, 200))
      ->capture_default_str();
  app->add_flag("--paper-style", o.paper_style, "truncate digits and mark inexact values with ...");
  app->add_option("--threads", o.threads, "worker threads for sampling")->check(CLI::Range(1u, 256u));
  app->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
  app->add_flag("--require-complete", o.require_complete, "exit 5 if the exchange graph hits --max-seeds");
  app->add_option("--max-seeds", o.max_seeds, "exchange graph vertex cap")->capture_default_str();
  app->add_option("--keller-max-seeds", o.keller_max_seeds, "class cap of the multiplicity probe")
      ->capture_default_str();
  app->add_flag("--csv", o.csv, "print the table as CSV instead of JSON");
  app->add_option("--export", o.export_path, "write the exchange graph as DOT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quiver mutation, tropical DT dynamics and the finite/tame/wild trichotomy"};
  app.require_subcommand(1);
  CliOptions opts;
  std::string file;

  using Command = CommandOutput (*)(const QuiverFile&, const CliOptions&);
  const std::vector<std::tuple<const char*, const char*, Command>> commands = {
      {"classify", "finite/tame/wild verdict by four methods, with entropy", cmd_classify},
      {"signs", "signs of the DT loop along the tau-orbit", cmd_signs},
      {"orbit", "normalized tau-orbit and its limit direction", cmd_orbit},
      {"coxeter", "path counts, Coxeter matrix, characteristic polynomial, spectral radius", cmd_coxeter},
      {"graph", "labeled exchange graph summary", cmd_graph},
      {"entropy", "entropy of the DT loop", cmd_entropy},
  };
  std::map<CLI::App*, Command> dispatch;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, opts, file);
    dispatch[sub] = fn;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kParseError;
  }

  try {
    const QuiverFile q = read_quiver_file(file);
    Command fn = nullptr;
    for (auto& [sub, f] : dispatch)
      if (sub->parsed()) fn = f;
    CommandOutput out = fn(q, opts);
    if (!out.text.empty())
      std::cout << out.text;
    else
      std::cout << out.report.dump(2) << '\n';
    return out.exit_code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kParseError;
  } catch (const CyclicQuiver& e) {
    std::cerr << "cyclic quiver: " << e.what() << '\n';
    return kPrecondition;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
