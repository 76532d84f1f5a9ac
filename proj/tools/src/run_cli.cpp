#include <CLI11.hpp>

#include "tweetpol/cli.hpp"
#include "tweetpol/corpus.hpp"

namespace tweetpol::cli {

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tweet polarity benchmarking toolkit"};
  app.require_subcommand(1);

  NormalizeOptions norm;
  norm.strip_set = std::string(kDefaultStripSet);
  auto* normalize = app.add_subcommand("normalize", "Normalize a labeled tweet TSV");
  normalize->add_option("input", norm.input, "Input TSV (id, label, text) or -")->required();
  normalize->add_option("output", norm.output, "Output TSV or -")->required();
  normalize->add_option("--strip-set", norm.strip_set, "Characters to delete")
      ->capture_default_str();

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment matrix from a JSON config");
  run_cmd->add_option("config", run.config_path, "Run config JSON")->required();
  run_cmd->add_option("--output-dir", run.output_dir,
                      std::string("Output directory (overrides ") + kOutputDirEnv +
                          " and the config)");
  run_cmd->add_flag("-q,--quiet", run.quiet, "No per-experiment progress lines");

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Render tables and a chart from results");
  report_cmd->add_option("results", report.results_path, "results.json")->required();
  report_cmd->add_option("--format", report.format, "csv, json or markdown")
      ->check(CLI::IsMember({"csv", "json", "markdown"}))
      ->capture_default_str();
  report_cmd->add_flag("--chart", report.chart, "Also write chart.svg");
  report_cmd->add_option("-o,--output", report.output, "Write the table here instead of stdout");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a seeded synthetic labeled corpus");
  synth_cmd->add_option("output", synth.output, "Output TSV or -")->required();
  synth_cmd->add_option("--per-class", synth.per_class, "Tweets per class")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--noise", synth.noise, "Off-class content word probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();
  synth_cmd->add_flag("--shuffle-labels", synth.shuffle_labels, "Permute labels after generation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (*normalize) return cmd_normalize(norm, err);
  if (*run_cmd) return cmd_run(run, out, err);
  if (*report_cmd) return cmd_report(report, out, err);
  return cmd_synth(synth, err);
}

}  // namespace tweetpol::cli
