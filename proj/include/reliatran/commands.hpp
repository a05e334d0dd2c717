#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "reliatran/corpus.hpp"
#include "reliatran/selection.hpp"
#include "reliatran/textnorm.hpp"

namespace reliatran {

// Full run configuration. Loaded from a JSON config file, then overridden
// by CLI flags. Defaults reproduce the standard pipeline: lenient RMM,
// curation markers xxx/*u/*a, no strategies beyond the individual models.
struct RunConfig {
  NormalizationConfig normalization;
  CurationRule curation;
  std::vector<Strategy> strategies;
  RmmCriterion rmm_criterion = RmmCriterion::kLenient;
  std::size_t primary_annotator = 0;
  std::string output_dir = "out";
  std::vector<std::string> report_formats = {"json", "csv", "md"};
  std::size_t top_n = 10;
  std::size_t max_examples = 5;
  bool dump_alignments = false;
  unsigned threads = 0;

  bool wants(const std::string& format) const;
};

// Parses the JSON config file. Structural problems (bad JSON, wrong types)
// raise ParseError; out-of-domain values (unknown strategy kind, k out of
// range, unknown report format) raise ValidationError.
RunConfig load_run_config(const std::string& path);

// Effective worker count: config value, defaulting to all cores, capped by
// the RELIATRAN_THREADS environment variable when set.
unsigned resolve_threads(const RunConfig& config);

// Subcommand bodies. Each writes its report files under config.output_dir
// and returns normally on success; failures raise ParseError or
// ValidationError, mapped to exit codes by run_cli_action.
void cmd_evaluate(const std::string& utterances_path,
                  const std::string& hypotheses_path,
                  const std::string& config_path, const RunConfig& config);
void cmd_select(const std::string& utterances_path,
                const std::string& hypotheses_path,
                const std::string& config_path, const RunConfig& config);
void cmd_curate(const std::string& utterances_path,
                const std::string& config_path, const RunConfig& config);
void cmd_split(const std::string& utterances_path, double ratio,
               std::uint64_t seed, const std::string& config_path,
               const RunConfig& config);

// Runs fn, prints any error to stderr, and maps it to the process exit
// code: 0 success, 1 I/O or parse failure, 2 validation failure.
int run_cli_action(const std::function<void()>& fn);

}  // namespace reliatran
