#include "reliatran/commands.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include "json.hpp"
#include "reliatran/digest.hpp"
#include "reliatran/error_analysis.hpp"
#include "reliatran/errors.hpp"
#include "reliatran/metrics.hpp"
#include "reliatran/parallel.hpp"
#include "reliatran/report.hpp"
#include "reliatran/version.hpp"

namespace reliatran {

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  json root = json::parse(in, nullptr, false);
  if (root.is_discarded()) throw ParseError(path, 0, "malformed JSON");
  return root;
}

const json* find_member(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return nullptr;
  return &*it;
}

bool read_bool(const json& object, const char* key, bool fallback,
               const std::string& path) {
  const json* value = find_member(object, key);
  if (!value) return fallback;
  if (!value->is_boolean())
    throw ParseError(path, 0, std::string("'") + key + "' must be a boolean");
  return value->get<bool>();
}

std::uint64_t read_uint(const json& object, const char* key,
                        std::uint64_t fallback, const std::string& path) {
  const json* value = find_member(object, key);
  if (!value) return fallback;
  if (!value->is_number_unsigned())
    throw ParseError(path, 0,
                     std::string("'") + key + "' must be a nonnegative integer");
  return value->get<std::uint64_t>();
}

std::string read_string(const json& object, const char* key,
                        const std::string& fallback, const std::string& path) {
  const json* value = find_member(object, key);
  if (!value) return fallback;
  if (!value->is_string())
    throw ParseError(path, 0, std::string("'") + key + "' must be a string");
  return value->get<std::string>();
}

std::vector<std::string> read_string_array(const json& object, const char* key,
                                           std::vector<std::string> fallback,
                                           const std::string& path) {
  const json* value = find_member(object, key);
  if (!value) return fallback;
  if (!value->is_array())
    throw ParseError(path, 0,
                     std::string("'") + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const json& entry : *value) {
    if (!entry.is_string())
      throw ParseError(path, 0,
                       std::string("'") + key + "' must be an array of strings");
    out.push_back(entry.get<std::string>());
  }
  return out;
}

Strategy parse_strategy(const json& entry, const std::string& path) {
  if (!entry.is_object())
    throw ParseError(path, 0, "strategy entries must be objects");

  Strategy strategy;
  strategy.model_ids = read_string_array(entry, "models", {}, path);
  if (strategy.model_ids.empty())
    throw ValidationError("a strategy must name at least one model");

  const std::string kind = read_string(entry, "kind", "", path);
  std::string default_id;
  if (kind == "single") {
    if (strategy.model_ids.size() != 1)
      throw ValidationError("a single strategy takes exactly one model");
    strategy.kind = StrategyKind::kSingle;
    default_id = "single-" + strategy.model_ids.front();
  } else if (kind == "or") {
    strategy.kind = StrategyKind::kOr;
    default_id = "comb-or";
  } else if (kind == "and") {
    strategy.kind = StrategyKind::kAnd;
    const std::uint64_t k =
        read_uint(entry, "k", strategy.model_ids.size(), path);
    if (k < 1 || k > strategy.model_ids.size())
      throw ValidationError(
          "agreement threshold k must lie in [1, number of models]");
    strategy.agreement_threshold = static_cast<int>(k);
    default_id = "comb-and";
  } else {
    throw ValidationError("unknown strategy kind '" + kind +
                          "' (expected single, or, and)");
  }

  strategy.id = read_string(entry, "id", default_id, path);
  if (strategy.id.empty()) throw ValidationError("strategy id must not be empty");
  return strategy;
}

void warn_unknown_keys(const json& root) {
  static const std::set<std::string> known = {
      "normalization",   "curation", "strategies",     "rmm_criterion",
      "primary_annotator", "output_dir", "report_formats", "top_n",
      "max_examples",    "dump_alignments", "threads"};
  for (const auto& [key, value] : root.items()) {
    if (!known.count(key))
      std::cerr << "warning: unknown config key '" << key << "' ignored\n";
  }
}

std::set<std::string> collect_model_ids(const HypothesisMap& hypotheses) {
  std::set<std::string> ids;
  for (const auto& [utterance_id, per_model] : hypotheses)
    for (const auto& [model_id, hypothesis] : per_model) ids.insert(model_id);
  return ids;
}

void validate_strategies(const std::vector<Strategy>& strategies,
                         const std::set<std::string>& model_ids) {
  std::set<std::string> seen;
  for (const auto& strategy : strategies) {
    if (model_ids.count(strategy.id))
      throw ValidationError("strategy id '" + strategy.id +
                            "' collides with a model id");
    if (!seen.insert(strategy.id).second)
      throw ValidationError("duplicate strategy id '" + strategy.id + "'");
    for (const auto& model : strategy.model_ids) {
      if (!model_ids.count(model))
        throw ValidationError("strategy '" + strategy.id +
                              "' references model '" + model +
                              "' absent from the hypotheses file");
    }
  }
}

const AnnotatorReference& primary_reference(const Utterance& utterance,
                                            std::size_t index) {
  return utterance.references[std::min(index,
                                       utterance.references.size() - 1)];
}

Provenance make_provenance(
    const std::string& config_path,
    const std::vector<std::pair<std::string, std::string>>& inputs) {
  Provenance provenance;
  provenance.tool_version = std::string(kToolName) + " " + kVersion;
  provenance.config_digest =
      config_path.empty() ? "-" : sha256_file(config_path);
  for (const auto& [label, path] : inputs)
    provenance.input_digests[label] = sha256_file(path);
  return provenance;
}

std::string out_path(const RunConfig& config, const std::string& name) {
  return (std::filesystem::path(config.output_dir) / name).string();
}

std::string sanitize_filename(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    const bool safe = std::isalnum(static_cast<unsigned char>(c)) ||
                      c == '-' || c == '_' || c == '.';
    out.push_back(safe ? c : '_');
  }
  if (out.empty()) out = "target";
  return out;
}

}  // namespace

bool RunConfig::wants(const std::string& format) const {
  return std::find(report_formats.begin(), report_formats.end(), format) !=
         report_formats.end();
}

RunConfig load_run_config(const std::string& path) {
  RunConfig config;
  if (path.empty()) return config;

  json root = read_json_file(path);
  if (!root.is_object())
    throw ParseError(path, 0, "config root must be a JSON object");
  warn_unknown_keys(root);

  if (const json* section = find_member(root, "normalization")) {
    if (!section->is_object())
      throw ParseError(path, 0, "'normalization' must be an object");
    auto& n = config.normalization;
    n.lowercase = read_bool(*section, "lowercase", n.lowercase, path);
    n.strip_punctuation =
        read_bool(*section, "strip_punctuation", n.strip_punctuation, path);
    n.collapse_whitespace =
        read_bool(*section, "collapse_whitespace", n.collapse_whitespace, path);
    n.unicode_normalize =
        read_bool(*section, "unicode_normalize", n.unicode_normalize, path);
    n.strip_marker_suffixes = read_string_array(
        *section, "strip_marker_suffixes", n.strip_marker_suffixes, path);
  }

  if (const json* section = find_member(root, "curation")) {
    if (!section->is_object())
      throw ParseError(path, 0, "'curation' must be an object");
    auto& c = config.curation;
    c.marker_patterns =
        read_string_array(*section, "marker_patterns", c.marker_patterns, path);
    c.drop_annotator_disagreement = read_bool(
        *section, "drop_annotator_disagreement", c.drop_annotator_disagreement,
        path);
  }

  if (const json* section = find_member(root, "strategies")) {
    if (!section->is_array())
      throw ParseError(path, 0, "'strategies' must be an array");
    for (const json& entry : *section)
      config.strategies.push_back(parse_strategy(entry, path));
  }

  const std::string criterion =
      read_string(root, "rmm_criterion", "lenient", path);
  if (criterion == "lenient") {
    config.rmm_criterion = RmmCriterion::kLenient;
  } else if (criterion == "strict") {
    config.rmm_criterion = RmmCriterion::kStrict;
  } else {
    throw ValidationError("rmm_criterion must be 'lenient' or 'strict'");
  }

  config.primary_annotator = static_cast<std::size_t>(
      read_uint(root, "primary_annotator", config.primary_annotator, path));
  config.output_dir = read_string(root, "output_dir", config.output_dir, path);

  config.report_formats = read_string_array(root, "report_formats",
                                            config.report_formats, path);
  if (config.report_formats.empty())
    throw ValidationError("report_formats must not be empty");
  for (const auto& format : config.report_formats) {
    if (format != "json" && format != "csv" && format != "md")
      throw ValidationError("unknown report format '" + format +
                            "' (expected json, csv, md)");
  }

  config.top_n =
      static_cast<std::size_t>(read_uint(root, "top_n", config.top_n, path));
  if (config.top_n < 1) throw ValidationError("top_n must be at least 1");
  config.max_examples = static_cast<std::size_t>(
      read_uint(root, "max_examples", config.max_examples, path));
  config.dump_alignments =
      read_bool(root, "dump_alignments", config.dump_alignments, path);
  config.threads =
      static_cast<unsigned>(read_uint(root, "threads", config.threads, path));
  return config;
}

unsigned resolve_threads(const RunConfig& config) {
  unsigned threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RELIATRAN_THREADS")) {
    unsigned cap = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, cap);
    if (ec != std::errc() || ptr != end || cap == 0)
      throw ValidationError("RELIATRAN_THREADS must be a positive integer");
    threads = std::min(threads, cap);
  }
  return threads;
}

void cmd_evaluate(const std::string& utterances_path,
                  const std::string& hypotheses_path,
                  const std::string& config_path, const RunConfig& config) {
  const auto utterances = load_utterances(utterances_path);
  const auto hypotheses = load_hypotheses(hypotheses_path);
  const auto model_ids = collect_model_ids(hypotheses);
  if (model_ids.empty())
    throw ValidationError("hypotheses file names no models");
  validate_strategies(config.strategies, model_ids);

  std::set<std::string> manifest_ids;
  for (const auto& utterance : utterances)
    manifest_ids.insert(utterance.utterance_id);
  std::int64_t unknown_hypotheses = 0;
  for (const auto& [utterance_id, per_model] : hypotheses)
    if (!manifest_ids.count(utterance_id))
      unknown_hypotheses += static_cast<std::int64_t>(per_model.size());
  if (unknown_hypotheses > 0)
    std::cerr << "warning: " << unknown_hypotheses
              << " hypotheses reference utterances absent from the manifest\n";

  const unsigned threads = resolve_threads(config);
  const Provenance provenance = make_provenance(
      config_path,
      {{"utterances", utterances_path}, {"hypotheses", hypotheses_path}});

  std::vector<ModelMetricsReport> reports;
  std::vector<std::vector<UtteranceAlignment>> dump_store;
  std::vector<std::string> dump_models;

  for (const auto& model : model_ids) {
    std::vector<EvalPair> pairs;
    std::vector<std::string> pair_ids;
    std::int64_t missing = 0;
    for (const auto& utterance : utterances) {
      auto per_model = hypotheses.find(utterance.utterance_id);
      if (per_model == hypotheses.end() || !per_model->second.count(model)) {
        ++missing;
        continue;
      }
      const auto& reference =
          primary_reference(utterance, config.primary_annotator);
      const std::string ref_norm =
          normalize(reference.text, config.normalization);
      const std::string hyp_norm = normalize(
          per_model->second.at(model).text, config.normalization);
      pairs.push_back(EvalPair{tokenize_words(ref_norm), tokenize_words(hyp_norm),
                               tokenize_chars(ref_norm),
                               tokenize_chars(hyp_norm)});
      pair_ids.push_back(utterance.utterance_id);
    }
    if (pairs.empty())
      throw ValidationError("model '" + model +
                            "' shares no utterances with the manifest");

    ModelMetricsReport report;
    report.model_id = model;
    report.rates = corpus_error_rates(pairs, threads);
    report.missing_hypotheses = missing;
    reports.push_back(report);

    std::vector<UtteranceAlignment> alignments(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
      alignments[i] = UtteranceAlignment{
          pair_ids[i], align(pairs[i].ref_words, pairs[i].hyp_words)};
    });

    // Error tables are computed over the utterances that entered the WER
    // totals, so the per-kind table sums match the report's S/I/D counts.
    std::vector<UtteranceAlignment> scored;
    scored.reserve(alignments.size());
    for (std::size_t i = 0; i < alignments.size(); ++i)
      if (!pairs[i].ref_words.empty()) scored.push_back(alignments[i]);

    bool has_errors = false;
    for (const auto& entry : scored)
      if (entry.alignment.counts.total_errors() > 0) has_errors = true;
    SIDProportions proportions;
    if (has_errors) proportions = sid_proportions(scored);
    const auto table =
        op_frequency_table(scored, config.top_n, config.max_examples);

    const std::string stem = "errors_" + sanitize_filename(model);
    if (config.wants("csv"))
      write_text_file(out_path(config, stem + ".csv"), error_table_csv(table));
    if (config.wants("md"))
      write_text_file(out_path(config, stem + ".md"),
                      error_table_md(model, has_errors, proportions, table,
                                     provenance));

    if (config.dump_alignments) {
      dump_store.push_back(std::move(alignments));
      dump_models.push_back(model);
    }
  }

  if (config.wants("json"))
    write_text_file(out_path(config, "metrics.json"),
                    metrics_json(reports, unknown_hypotheses, provenance));
  if (config.wants("csv"))
    write_text_file(out_path(config, "metrics.csv"), metrics_csv(reports));

  if (config.dump_alignments) {
    std::vector<AlignmentDumpEntry> entries;
    for (std::size_t m = 0; m < dump_store.size(); ++m)
      for (const auto& entry : dump_store[m])
        entries.push_back(AlignmentDumpEntry{entry.utterance_id, dump_models[m],
                                             &entry.alignment});
    write_text_file(out_path(config, "alignments.csv"),
                    alignment_dump_csv(entries));
  }

  write_text_file(out_path(config, "provenance.json"),
                  provenance_json_text(provenance));
}

void cmd_select(const std::string& utterances_path,
                const std::string& hypotheses_path,
                const std::string& config_path, const RunConfig& config) {
  const auto utterances = load_utterances(utterances_path);
  const auto hypotheses = load_hypotheses(hypotheses_path);
  const auto model_ids = collect_model_ids(hypotheses);
  if (model_ids.empty())
    throw ValidationError("hypotheses file names no models");
  validate_strategies(config.strategies, model_ids);

  const auto read_utterances = filter_read_speech(utterances);
  if (read_utterances.empty())
    throw ValidationError("no read-speech utterances in the manifest");

  // Selection runs over the utterances every model transcribed, so per-target
  // confusion matrices share one denominator and strategies never lack votes.
  std::vector<const Utterance*> universe;
  std::int64_t skipped = 0;
  for (const auto& utterance : read_utterances) {
    auto per_model = hypotheses.find(utterance.utterance_id);
    bool complete = per_model != hypotheses.end();
    if (complete)
      for (const auto& model : model_ids)
        if (!per_model->second.count(model)) complete = false;
    if (complete)
      universe.push_back(&utterance);
    else
      ++skipped;
  }
  if (universe.empty())
    throw ValidationError(
        "no read-speech utterance has hypotheses for every model");
  if (skipped > 0)
    std::cerr << "warning: " << skipped
              << " read utterances lack hypotheses for some model and were "
                 "skipped\n";

  const unsigned threads = resolve_threads(config);
  const Provenance provenance = make_provenance(
      config_path,
      {{"utterances", utterances_path}, {"hypotheses", hypotheses_path}});

  std::vector<SelectionRecord> records(universe.size());
  parallel_for(universe.size(), threads, [&](std::size_t i) {
    const Utterance& utterance = *universe[i];
    const auto& per_model = hypotheses.at(utterance.utterance_id);
    SelectionRecord record;
    record.utterance_id = utterance.utterance_id;
    record.rmm = compute_rmm(utterance.references, *utterance.prompt,
                             config.normalization, config.rmm_criterion);
    for (const auto& model : model_ids)
      record.rma[model] = compute_rma(per_model.at(model).text,
                                      *utterance.prompt, config.normalization);
    for (const auto& strategy : config.strategies)
      record.rma[strategy.id] = apply_strategy(record.rma, strategy);
    records[i] = std::move(record);
  });

  std::vector<std::string> targets(model_ids.begin(), model_ids.end());
  for (const auto& strategy : config.strategies) targets.push_back(strategy.id);

  std::vector<TargetSummary> summaries;
  for (const auto& target : targets) {
    TargetSummary summary;
    summary.target = target;
    summary.confusion = build_confusion(records, target);
    summary.metrics = classification_metrics(summary.confusion);
    summary.yield_fraction = selection_yield(records, target);
    summaries.push_back(summary);
  }

  SelectionUniverse universe_stats;
  universe_stats.read_utterances =
      static_cast<std::int64_t>(read_utterances.size());
  universe_stats.evaluated_utterances =
      static_cast<std::int64_t>(universe.size());
  universe_stats.skipped_incomplete = skipped;

  if (config.wants("csv"))
    write_text_file(out_path(config, "selection.csv"),
                    selection_csv(records, targets));
  if (config.wants("json"))
    write_text_file(
        out_path(config, "selection_summary.json"),
        selection_summary_json(summaries, universe_stats, config.rmm_criterion,
                               provenance));

  std::map<std::string, const Strategy*> strategy_by_id;
  for (const auto& strategy : config.strategies)
    strategy_by_id[strategy.id] = &strategy;

  std::map<std::string, std::string> mo_texts;
  for (const Utterance* utterance : universe)
    mo_texts[utterance->utterance_id] =
        primary_reference(*utterance, config.primary_annotator).text;

  for (const auto& target : targets) {
    std::map<std::string, std::string> ao_texts;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      const SelectionRecord& record = records[i];
      if (!record.rma.at(target)) continue;
      const auto& per_model = hypotheses.at(record.utterance_id);
      auto strategy = strategy_by_id.find(target);
      if (strategy == strategy_by_id.end()) {
        ao_texts[record.utterance_id] = per_model.at(target).text;
      } else {
        // An accepted strategy has at least one agreeing member; show the
        // first one in the strategy's model order.
        for (const auto& model : strategy->second->model_ids) {
          if (record.rma.at(model)) {
            ao_texts[record.utterance_id] = per_model.at(model).text;
            break;
          }
        }
      }
    }
    const auto rows = false_positive_audit(records, target, ao_texts, mo_texts,
                                           config.normalization);
    const std::string stem = "fp_audit_" + sanitize_filename(target);
    if (config.wants("csv"))
      write_text_file(out_path(config, stem + ".csv"), fp_audit_csv(rows));
    if (config.wants("md"))
      write_text_file(out_path(config, stem + ".md"),
                      fp_audit_md(target, rows, provenance));
  }

  write_text_file(out_path(config, "provenance.json"),
                  provenance_json_text(provenance));
}

void cmd_curate(const std::string& utterances_path,
                const std::string& config_path, const RunConfig& config) {
  const auto utterances = load_utterances(utterances_path);
  const CurationResult result =
      curate(utterances, config.curation, config.normalization);

  const Provenance provenance =
      make_provenance(config_path, {{"utterances", utterances_path}});
  std::filesystem::create_directories(config.output_dir);
  save_utterances(out_path(config, "curated.jsonl"), result.kept);
  write_text_file(out_path(config, "curation_report.csv"),
                  curation_report_csv(result));
  write_text_file(out_path(config, "provenance.json"),
                  provenance_json_text(provenance));
}

void cmd_split(const std::string& utterances_path, double ratio,
               std::uint64_t seed, const std::string& config_path,
               const RunConfig& config) {
  const auto utterances = load_utterances(utterances_path);
  const SplitResult parts = split(utterances, ratio, seed);

  const Provenance provenance =
      make_provenance(config_path, {{"utterances", utterances_path}});
  std::filesystem::create_directories(config.output_dir);
  save_utterances(out_path(config, "train.jsonl"), parts.train);
  save_utterances(out_path(config, "eval.jsonl"), parts.eval);
  write_text_file(out_path(config, "provenance.json"),
                  provenance_json_text(provenance));
}

int run_cli_action(const std::function<void()>& fn) {
  try {
    fn();
    return kExitOk;
  } catch (const ValidationError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitValidationError;
  } catch (const ParseError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitParseError;
  }
}

}  // namespace reliatran
