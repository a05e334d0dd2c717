#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reliatran/commands.hpp"
#include "reliatran/errors.hpp"
#include "reliatran/version.hpp"

namespace {

struct CliOptions {
  std::string utterances;
  std::string hypotheses;
  std::string config;
  std::string out;
  std::vector<std::string> formats;
  bool strict_rmm = false;
  bool dump_alignments = false;
  bool no_lowercase = false;
  bool no_strip_punctuation = false;
  bool no_collapse_whitespace = false;
  bool no_unicode_normalize = false;
  std::vector<std::string> strip_markers;
  std::uint64_t top_n = 0;
  std::uint64_t max_examples = 0;
  bool max_examples_set = false;
  std::uint64_t threads = 0;
  bool threads_set = false;
  double ratio = 0.8;
  std::uint64_t seed = 0;
};

void add_common_flags(CLI::App* cmd, CliOptions& options) {
  cmd->add_option("--config", options.config, "JSON run configuration");
  cmd->add_option("--out", options.out, "output directory (default: out)");
  cmd->add_flag("--no-lowercase", options.no_lowercase,
                "keep the original casing");
  cmd->add_flag("--no-strip-punctuation", options.no_strip_punctuation,
                "keep punctuation");
  cmd->add_flag("--no-collapse-whitespace", options.no_collapse_whitespace,
                "keep whitespace runs");
  cmd->add_flag("--no-unicode-normalize", options.no_unicode_normalize,
                "skip canonical composition");
  cmd->add_option("--strip-marker", options.strip_markers,
                  "marker substring to strip from tokens (repeatable)");
}

void add_report_flags(CLI::App* cmd, CliOptions& options) {
  cmd->add_option("--format", options.formats,
                  "report formats: json, csv, md (comma separated)")
      ->delimiter(',');
  cmd->add_option("--threads", options.threads, "worker thread count")
      ->trigger_on_parse()
      ->each([&options](const std::string&) { options.threads_set = true; });
}

// CLI flags win over the config file; untouched fields keep config values.
reliatran::RunConfig effective_config(const CliOptions& options) {
  reliatran::RunConfig config = reliatran::load_run_config(options.config);
  if (!options.out.empty()) config.output_dir = options.out;
  if (!options.formats.empty()) {
    for (const auto& format : options.formats) {
      if (format != "json" && format != "csv" && format != "md")
        throw reliatran::ValidationError("unknown report format '" + format +
                                         "' (expected json, csv, md)");
    }
    config.report_formats = options.formats;
  }
  if (options.strict_rmm)
    config.rmm_criterion = reliatran::RmmCriterion::kStrict;
  if (options.dump_alignments) config.dump_alignments = true;
  if (options.no_lowercase) config.normalization.lowercase = false;
  if (options.no_strip_punctuation)
    config.normalization.strip_punctuation = false;
  if (options.no_collapse_whitespace)
    config.normalization.collapse_whitespace = false;
  if (options.no_unicode_normalize)
    config.normalization.unicode_normalize = false;
  for (const auto& marker : options.strip_markers)
    config.normalization.strip_marker_suffixes.push_back(marker);
  if (options.top_n > 0)
    config.top_n = static_cast<std::size_t>(options.top_n);
  if (options.max_examples_set)
    config.max_examples = static_cast<std::size_t>(options.max_examples);
  if (options.threads_set)
    config.threads = static_cast<unsigned>(options.threads);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transcription reliability toolkit: scores ASR output against "
               "manual transcriptions and selects reliably transcribed "
               "utterances by prompt matching"};
  app.set_version_flag("--version", std::string(reliatran::kToolName) + " " +
                                        reliatran::kVersion);
  app.require_subcommand(1);

  CliOptions options;

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "compute WER/CER/UER and error tables per model");
  evaluate->add_option("--utterances", options.utterances, "utterance manifest")
      ->required();
  evaluate->add_option("--hypotheses", options.hypotheses, "hypothesis file")
      ->required();
  add_common_flags(evaluate, options);
  add_report_flags(evaluate, options);
  evaluate->add_option("--top-n", options.top_n,
                       "rows per error kind in the frequency table");
  evaluate
      ->add_option("--max-examples", options.max_examples,
                   "example utterance ids per error row (0 = all)")
      ->trigger_on_parse()
      ->each([&options](const std::string&) { options.max_examples_set = true; });
  evaluate->add_flag("--dump-alignments", options.dump_alignments,
                     "write the full per-op alignment CSV");

  CLI::App* select = app.add_subcommand(
      "select", "select reliably transcribed utterances by prompt matching");
  select->add_option("--utterances", options.utterances, "utterance manifest")
      ->required();
  select->add_option("--hypotheses", options.hypotheses, "hypothesis file")
      ->required();
  add_common_flags(select, options);
  add_report_flags(select, options);
  select->add_flag("--strict-rmm", options.strict_rmm,
                   "count an utterance correct only if every annotator "
                   "matches the prompt");

  CLI::App* curate = app.add_subcommand(
      "curate", "drop utterances with disfluency markers or annotator "
                "disagreement");
  curate->add_option("--utterances", options.utterances, "utterance manifest")
      ->required();
  add_common_flags(curate, options);

  CLI::App* split = app.add_subcommand(
      "split", "deterministic seeded train/eval split of a manifest");
  split->add_option("--utterances", options.utterances, "utterance manifest")
      ->required();
  split->add_option("--ratio", options.ratio, "train fraction in [0, 1]")
      ->capture_default_str();
  split->add_option("--seed", options.seed, "shuffle seed")
      ->capture_default_str();
  add_common_flags(split, options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    if (error.get_exit_code() == 0) return app.exit(error);
    app.exit(error);
    return reliatran::kExitValidationError;
  }

  return reliatran::run_cli_action([&] {
    reliatran::RunConfig config = effective_config(options);
    if (evaluate->parsed()) {
      reliatran::cmd_evaluate(options.utterances, options.hypotheses,
                              options.config, config);
    } else if (select->parsed()) {
      reliatran::cmd_select(options.utterances, options.hypotheses,
                            options.config, config);
    } else if (curate->parsed()) {
      reliatran::cmd_curate(options.utterances, options.config, config);
    } else if (split->parsed()) {
      reliatran::cmd_split(options.utterances, options.ratio, options.seed,
                           options.config, config);
    }
  });
}
