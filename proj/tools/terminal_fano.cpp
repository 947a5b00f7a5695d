// terminal-fano: command-line front end for the terminal_fano library.

#include "terminal_fano/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>

namespace tf = terminal_fano;
namespace cli = terminal_fano::cli;

namespace {

struct Streams {
  std::istream* in = &std::cin;
  std::ostream* out = &std::cout;
  std::unique_ptr<std::ifstream> fin;
  std::unique_ptr<std::ofstream> fout;
};

// Returns false and reports on failure to open either path.
bool open_streams(const cli::CliConfig& cfg, Streams& s) {
  if (cfg.input != "-") {
    s.fin = std::make_unique<std::ifstream>(cfg.input);
    if (!*s.fin) {
      std::cerr << "cannot open input " << cfg.input << '\n';
      return false;
    }
    s.in = s.fin.get();
  }
  if (cfg.output != "-") {
    s.fout = std::make_unique<std::ofstream>(cfg.output);
    if (!*s.fout) {
      std::cerr << "cannot open output " << cfg.output << '\n';
      return false;
    }
    s.out = s.fout.get();
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Terminality of Picard rank two toric Fano varieties"};
  app.require_subcommand(1);
  cli::CliConfig cfg;
  std::string format;

  const std::map<std::string, cli::CheckMethod> methods{{"prop1", cli::CheckMethod::prop1},
                                                        {"fan", cli::CheckMethod::fan},
                                                        {"polytope", cli::CheckMethod::polytope},
                                                        {"all", cli::CheckMethod::all}};
  const std::map<std::string, tf::Filter> filters{{"exact", tf::Filter::exact},
                                                  {"classifier", tf::Filter::classifier}};
  auto format_opt = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"jsonl", "csv"}));
  };
  auto output_opt = [&](CLI::App* sub) { sub->add_option("-o,--output", cfg.output, "Output path, - for stdout"); };
  auto shape_opts = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Number of columns N")->check(CLI::Range(4, 64));
    sub->add_option("--bound", cfg.bound, "Entry bound")->check(CLI::Range(1, 1000000));
  };
  auto gen_opts = [&](CLI::App* sub) {
    shape_opts(sub);
    sub->add_option("--count", cfg.count, "Number of records")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--threads", cfg.threads, "Worker shards (output depends on this value)")
        ->check(CLI::Range(1, 4096));
  };

  auto* check = app.add_subcommand("check", "Decide terminality for matrices read one per line");
  check->add_option("-i,--input", cfg.input, "Input path, - for stdin");
  output_opt(check);
  format_opt(check);
  check->add_option("--method", cfg.method, "Checker: prop1, fan, polytope or all")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));

  auto* generate = app.add_subcommand("generate", "Balanced labelled dataset");
  gen_opts(generate);
  output_opt(generate);
  format_opt(generate);

  auto* enumerate = app.add_subcommand("enumerate", "All isomorphism classes with bounded entries");
  shape_opts(enumerate);
  output_opt(enumerate);
  format_opt(enumerate);

  auto* landscape = app.add_subcommand("landscape", "Growth coefficients of probably-terminal samples");
  gen_opts(landscape);
  output_opt(landscape);
  format_opt(landscape);
  landscape->add_option("--filter", cfg.filter, "exact or classifier")
      ->transform(CLI::CheckedTransformer(filters, CLI::ignore_case));
  landscape->add_option("--threshold", cfg.threshold, "Keep records with probability above this")
      ->check(CLI::Range(0.0, 1.0));
  landscape->add_flag("--keep-all", cfg.keep_all, "Exact filter: also emit non-terminal records");
  landscape->add_option("--classifier", cfg.classifier,
                        std::string("Classifier endpoint (default: $") + tf::kClassifierEnv + ")");
  landscape->add_option("--batch", cfg.batch, "Classifier batch size")->check(CLI::PositiveNumber);

  auto* bench = app.add_subcommand("bench", "Latency of prop1 against the fan oracle");
  shape_opts(bench);
  output_opt(bench);
  bench->add_option("--count", cfg.count, "Sample size (at least 1000)")->check(CLI::Range(1000, 100000000));
  bench->add_option("--seed", cfg.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kBadInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.subcommand = sub->get_name();
  if (format.empty()) format = cfg.subcommand == "landscape" ? "csv" : "jsonl";
  cfg.format = format == "csv" ? cli::Format::csv : cli::Format::jsonl;

  Streams s;
  if (!open_streams(cfg, s)) return cli::kBadInput;
  try {
    if (cfg.subcommand == "check") return cli::cmd_check(cfg, *s.in, *s.out, std::cerr);
    if (cfg.subcommand == "generate") return cli::cmd_generate(cfg, *s.out, std::cerr);
    if (cfg.subcommand == "enumerate") return cli::cmd_enumerate(cfg, *s.out, std::cerr);
    if (cfg.subcommand == "landscape") return cli::cmd_landscape(cfg, *s.out, std::cerr);
    return cli::cmd_bench(cfg, *s.out, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << cfg.subcommand << ": " << e.what() << '\n';
    return cli::kBadInput;
  }
}
