#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tweetpol/cli.hpp"
#include "tweetpol/corpus.hpp"
#include "tweetpol/errors.hpp"
#include "tweetpol/lexicon.hpp"
#include "tweetpol/report.hpp"
#include "tweetpol/synthetic.hpp"

namespace tweetpol::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::optional<fs::path> env_output_dir() {
  const char* value = std::getenv(kOutputDirEnv);
  if (value == nullptr || *value == '\0') return std::nullopt;
  return fs::path(value);
}

std::string describe(const PipelineConfig& c) {
  std::string s(representation_family(c.representation));
  if (const auto* g = std::get_if<NGramRepresentation>(&c.representation)) {
    s += " n=" + std::to_string(g->n);
  } else if (const auto* g = std::get_if<NGramGraphRepresentation>(&c.representation)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " n=%zu prune=%g", g->n, g->prune_threshold);
    s += buf;
  }
  s += " " + method_name(c.method);
  if (c.balanced) s += " balanced";
  return s;
}

}  // namespace

int cmd_normalize(const NormalizeOptions& opts, std::ostream& err) {
  Corpus corpus;
  try {
    if (opts.input == "-") {
      corpus = read_corpus(std::cin);
    } else {
      std::ifstream in(opts.input, std::ios::binary);
      if (!in) {
        err << "error: cannot open " << opts.input.string() << '\n';
        return kExitInvalid;
      }
      corpus = read_corpus(in);
    }
  } catch (const ParseError& e) {
    err << "error: " << opts.input.string() << ": line " << e.line() << ": " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  std::ostringstream out;
  write_corpus(out, corpus.normalized(opts.strip_set), true);
  if (opts.output == "-") {
    std::cout << out.str();
    return kExitOk;
  }
  try {
    write_file(opts.output, out.str());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  // Everything that can be rejected is checked before any experiment runs or
  // any file is written.
  const auto text = read_file(opts.config_path);
  if (!text) {
    err << "error: cannot read config " << opts.config_path.string() << '\n';
    return kExitInvalid;
  }
  RunConfig rc;
  try {
    rc = parse_run_config(json::parse(*text), opts.config_path.parent_path());
  } catch (const json::parse_error& e) {
    err << "error: " << opts.config_path.string() << " is not valid JSON: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ConfigError& e) {
    err << "error: " << opts.config_path.string() << ": schema violation at " << e.what() << '\n';
    return kExitInvalid;
  }

  Corpus corpus;
  std::optional<Lexicon> lexicon;
  try {
    corpus = load_corpus(rc.corpus_path).normalized(rc.strip_set);
    if (rc.lexicon_path) lexicon = load_lexicon(*rc.lexicon_path);
  } catch (const ParseError& e) {
    err << "error: line " << e.line() << ": " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  fs::path out_dir = "results";
  if (opts.output_dir) {
    out_dir = *opts.output_dir;
  } else if (auto env = env_output_dir()) {
    out_dir = *env;
  } else if (rc.output_dir) {
    out_dir = *rc.output_dir;
  }

  EvaluationContext ctx;
  if (lexicon) ctx.lexicon = &*lexicon;
  std::size_t done = 0;
  const std::size_t total = rc.experiments.size();
  const auto entries = run_experiment_matrix(
      rc.experiments, corpus, ctx, rc.parallelism,
      [&](std::size_t, const MatrixEntry& e) {
        ++done;
        if (opts.quiet) return;
        err << '[' << done << '/' << total << "] " << describe(e.config) << ": ";
        if (e.ok()) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.4f", e.result->confidence_ratio);
          err << buf << '\n';
        } else {
          err << "error: " << e.error << '\n';
        }
      });

  try {
    write_file(out_dir / "results.json", results_document(entries).dump(2) + "\n");
    write_file(out_dir / "results.csv", results_csv(entries));
    write_file(out_dir / "timings.json", timings_document(entries).dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  std::size_t failed = 0;
  for (const MatrixEntry& e : entries) {
    if (!e.ok()) ++failed;
  }
  out << "wrote " << entries.size() << " results to " << out_dir.string();
  if (failed > 0) out << " (" << failed << " failed)";
  out << '\n';
  return failed == 0 ? kExitOk : kExitPartial;
}

int cmd_report(const ReportOptions& opts, std::ostream& out, std::ostream& err) {
  TableFormat format;
  std::vector<MatrixEntry> entries;
  try {
    format = parse_table_format(opts.format);
    const auto text = read_file(opts.results_path);
    if (!text) {
      err << "error: cannot read results " << opts.results_path.string() << '\n';
      return kExitInvalid;
    }
    entries = parse_results_document(json::parse(*text));
  } catch (const json::parse_error& e) {
    err << "error: " << opts.results_path.string() << " is not valid JSON: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  const fs::path results_dir = opts.results_path.parent_path();
  if (const auto timings = read_file(results_dir / "timings.json")) {
    try {
      apply_timings(entries, json::parse(*timings));
    } catch (const std::exception& e) {
      err << "warning: ignoring timings.json: " << e.what() << '\n';
    }
  }

  try {
    const ReportBundle bundle = ReportBundle::from_entries(entries);
    const std::string table = emit_table(bundle, format);
    std::string chart;
    if (opts.chart) chart = emit_radial_chart(bundle);

    if (opts.output) {
      write_file(*opts.output, table);
    } else {
      out << table;
    }
    if (opts.chart) {
      const fs::path dir = env_output_dir().value_or(results_dir);
      write_file(dir / "chart.svg", chart);
      err << "wrote " << (dir / "chart.svg").string() << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

int cmd_synth(const SynthOptions& opts, std::ostream& err) {
  try {
    SyntheticCorpusSpec spec;
    spec.per_class = opts.per_class;
    spec.noise = opts.noise;
    spec.seed = opts.seed;
    spec.shuffle_labels = opts.shuffle_labels;
    std::ostringstream out;
    write_corpus(out, synthetic_corpus(spec), false);
    if (opts.output == "-") {
      std::cout << out.str();
    } else {
      write_file(opts.output, out.str());
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

}  // namespace tweetpol::cli
