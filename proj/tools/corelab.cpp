//
//   Copyright 2026 the corelab authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//

#include <atomic>
#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <corelab/config.hpp>
#include <corelab/corpus.hpp>
#include <corelab/curation.hpp>
#include <corelab/errors.hpp>
#include <corelab/io.hpp>
#include <corelab/lid.hpp>
#include <corelab/metrics.hpp>
#include <corelab/pipeline.hpp>
#include <corelab/rater.hpp>
#include <corelab/stats.hpp>

namespace {

using namespace corelab;

// Exit codes: 0 success, 1 data error, 2 configuration error, 64 usage error.
constexpr int kExitData = 1;
constexpr int kExitConfig = 2;
constexpr int kExitUsage = 64;

void emit_diagnostic(const std::string& message) {
  Json line = {{"level", "warning"}, {"message", message}};
  std::cerr << line.dump() << '\n';
}

void flush_diagnostics(const Diagnostics& diag) {
  for (const auto& m : diag.messages) emit_diagnostic(m);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    std::string part = s.substr(start, comma - start);
    if (!part.empty()) out.push_back(part);
    start = comma + 1;
  }
  return out;
}

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int count = std::min<int>(workers, static_cast<int>(n));
  pool.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct PipelineContext {
  Registry registry;
  LidConfig lid;
  SegmenterRegistry segmenters;
};

PipelineContext load_context(const std::string& config_path) {
  PipelineContext ctx{Registry::load(config_path), {}, {}};
  ctx.lid = build_lid_config(ctx.registry);
  ctx.segmenters = build_segmenters(ctx.registry);
  return ctx;
}

Json token_to_json(const Token& token, bool with_lang) {
  Json obj = Json::object();
  obj["text"] = token.text;
  obj["begin"] = token.begin;
  obj["end"] = token.end;
  obj["script"] = script_name(token.script);
  if (with_lang) obj["lang"] = token.tag.to_string();
  return obj;
}

// --- metrics/report shared table machinery -----------------------------------

const std::vector<std::string>& metric_column_names() {
  static const std::vector<std::string> names = {
      "cmi", "m_index", "i_index", "burstiness", "memory", "fluency", "accuracy"};
  return names;
}

std::optional<double> metric_column_value(const SwitchMetrics& m,
                                          const std::string& column) {
  if (column == "cmi") return m.cmi;
  if (column == "m_index") return m.m_index;
  if (column == "i_index") return m.i_index;
  if (column == "burstiness") return m.burstiness;
  if (column == "memory") return m.memory;
  if (column == "fluency") {
    if (m.fluency) return static_cast<double>(*m.fluency);
    return std::nullopt;
  }
  if (column == "accuracy") {
    if (m.accuracy) return static_cast<double>(*m.accuracy);
    return std::nullopt;
  }
  return std::nullopt;
}

std::string group_key_value(const ReasoningTrace& trace, const std::string& key) {
  if (key == "language") return trace.prompt_language;
  if (key == "model") return trace.model;
  if (key == "dataset") return trace.dataset;
  if (key == "domain") return trace.domain;
  throw ConfigError("unknown group-by key '" + key + "'");
}

struct SummaryRow {
  std::vector<std::string> group;
  std::size_t n = 0;
  std::vector<std::optional<double>> means;
  std::optional<double> correct_rate;
};

// Min-max normalizes each metric column over all rows, then averages the
// present values per group. Groups come out in sorted key order.
std::vector<SummaryRow> summarize(const std::vector<const ReasoningTrace*>& traces,
                                  const std::vector<const SwitchMetrics*>& metrics,
                                  const std::vector<std::string>& group_keys,
                                  bool with_correct) {
  const auto& columns = metric_column_names();
  std::vector<std::vector<std::optional<double>>> table(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    table[c].reserve(metrics.size());
    for (const auto* m : metrics) {
      table[c].push_back(metric_column_value(*m, columns[c]));
    }
    min_max_normalize(&table[c]);
  }

  std::map<std::vector<std::string>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    std::vector<std::string> key;
    key.reserve(group_keys.size());
    for (const auto& k : group_keys) key.push_back(group_key_value(*traces[i], k));
    groups[key].push_back(i);
  }

  std::vector<SummaryRow> rows;
  for (const auto& [key, members] : groups) {
    SummaryRow row;
    row.group = key;
    row.n = members.size();
    for (std::size_t c = 0; c < columns.size(); ++c) {
      double sum = 0;
      std::size_t present = 0;
      for (std::size_t i : members) {
        if (table[c][i].has_value()) {
          sum += *table[c][i];
          ++present;
        }
      }
      row.means.push_back(present == 0
                              ? std::optional<double>()
                              : std::optional<double>(sum / static_cast<double>(present)));
    }
    if (with_correct) {
      std::size_t with_flag = 0, correct = 0;
      for (std::size_t i : members) {
        if (traces[i]->correct.has_value()) {
          ++with_flag;
          if (*traces[i]->correct) ++correct;
        }
      }
      if (with_flag > 0) {
        row.correct_rate = static_cast<double>(correct) / static_cast<double>(with_flag);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary_tsv(std::ostream& out, const std::vector<std::string>& group_keys,
                       const std::vector<SummaryRow>& rows, bool with_correct) {
  for (const auto& k : group_keys) out << k << '\t';
  out << "n";
  for (const auto& c : metric_column_names()) out << '\t' << c;
  if (with_correct) out << '\t' << "correct_rate";
  out << '\n';
  for (const auto& row : rows) {
    for (const auto& g : row.group) out << g << '\t';
    out << row.n;
    for (const auto& mean : row.means) {
      out << '\t' << (mean ? format_number(*mean) : "NA");
    }
    if (with_correct) {
      out << '\t' << (row.correct_rate ? format_number(*row.correct_rate) : "NA");
    }
    out << '\n';
  }
}

// --- subcommand payload structs ----------------------------------------------

struct CommonOptions {
  std::string config_path = "data/registry.json";
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  std::uint64_t seed = 0;
};

int cmd_tokenize(const CommonOptions& common, const std::string& input,
                 const std::string& text, const std::string& language,
                 const std::string& output) {
  auto ctx = load_context(common.config_path);
  LanguageTag hint = language.empty() ? LanguageTag::unknown()
                                      : LanguageTag::iso(language);
  AtomicWriter writer(output);
  if (!text.empty()) {
    TokenizedText tokenized = tokenize(text, hint, ctx.segmenters);
    Json obj = {{"id", "text"}, {"tokens", Json::array()}};
    for (const auto& t : tokenized.tokens) obj["tokens"].push_back(token_to_json(t, false));
    writer.stream() << obj.dump() << '\n';
  } else {
    auto corpus = read_corpus(input);
    for (const auto& trace : corpus) {
      TokenizedText tokenized = tokenize(
          trace.reasoning, LanguageTag::iso(trace.prompt_language), ctx.segmenters);
      Json obj = {{"id", trace.id}, {"tokens", Json::array()}};
      for (const auto& t : tokenized.tokens) {
        obj["tokens"].push_back(token_to_json(t, false));
      }
      writer.stream() << obj.dump() << '\n';
    }
  }
  writer.commit();
  return 0;
}

int cmd_lid(const CommonOptions& common, const std::string& input,
            const std::string& output, std::int64_t min_tokens) {
  auto ctx = load_context(common.config_path);
  auto corpus = read_corpus(input);
  std::vector<std::string> lines(corpus.size());
  LidDiagnostics lid_diag;
  std::mutex diag_mutex;
  parallel_for(corpus.size(), common.workers, [&](std::size_t i) {
    const auto& trace = corpus[i];
    LidDiagnostics local;
    TokenizedText tagged = tag_words(
        tokenize(trace.reasoning, LanguageTag::iso(trace.prompt_language),
                 ctx.segmenters),
        ctx.lid, &local);
    Json obj = {{"id", trace.id}, {"languages", Json::array()},
                {"code_switched", false}, {"tokens", Json::array()}};
    for (const auto& lang : detect_instance_languages(tagged, min_tokens)) {
      obj["languages"].push_back(lang);
    }
    obj["code_switched"] = is_code_switched(tagged, min_tokens);
    for (const auto& t : tagged.tokens) obj["tokens"].push_back(token_to_json(t, true));
    lines[i] = obj.dump();
    std::lock_guard<std::mutex> lock(diag_mutex);
    for (const auto& [script, n] : local.unconfigured_scripts) {
      lid_diag.unconfigured_scripts[script] += n;
    }
    lid_diag.unknown_tokens += local.unknown_tokens;
  });
  AtomicWriter writer(output);
  for (const auto& line : lines) writer.stream() << line << '\n';
  writer.commit();
  for (const auto& [script, n] : lid_diag.unconfigured_scripts) {
    emit_diagnostic("script '" + script + "' is not in the language registry (" +
                    std::to_string(n) + " tokens tagged unknown)");
  }
  return 0;
}

int cmd_metrics(const CommonOptions& common, const std::string& input,
                const std::string& output, const std::string& summary_path,
                const std::string& ratings_path, const std::string& group_by,
                bool rate_missing) {
  auto ctx = load_context(common.config_path);
  auto corpus = read_corpus(input);
  Diagnostics diag;
  if (!ratings_path.empty()) {
    attach_ratings(corpus, read_ratings(ratings_path), &diag);
  }
  if (rate_missing) {
    auto endpoint = rater_endpoint_from_env();
    if (!endpoint.has_value()) {
      throw ConfigError(std::string("--rate requires ") + kRaterUrlEnv);
    }
    for (RatingDimension dim : {RatingDimension::Fluency, RatingDimension::Accuracy}) {
      std::vector<ReasoningTrace> pending;
      for (const auto& t : corpus) {
        bool has = dim == RatingDimension::Fluency ? t.fluency.has_value()
                                                   : t.accuracy.has_value();
        if (!has) pending.push_back(t);
      }
      if (pending.empty()) continue;
      RatingBatch batch = request_ratings(pending, dim, *endpoint);
      attach_ratings(corpus, batch.records, &diag);
      for (const auto& failure : batch.failures) diag.warn(failure);
    }
  }

  std::vector<SwitchMetrics> metrics(corpus.size());
  LidDiagnostics lid_diag;
  std::mutex diag_mutex;
  parallel_for(corpus.size(), common.workers, [&](std::size_t i) {
    LidDiagnostics local;
    metrics[i] = compute_all(corpus[i], ctx.lid, ctx.segmenters, &local);
    std::lock_guard<std::mutex> lock(diag_mutex);
    for (const auto& [script, n] : local.unconfigured_scripts) {
      lid_diag.unconfigured_scripts[script] += n;
    }
  });

  AtomicWriter writer(output);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    writer.stream() << metrics_to_json(corpus[i].id, metrics[i]).dump() << '\n';
  }
  std::optional<AtomicWriter> summary;
  if (!summary_path.empty()) {
    std::vector<const ReasoningTrace*> trace_ptrs;
    std::vector<const SwitchMetrics*> metric_ptrs;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      trace_ptrs.push_back(&corpus[i]);
      metric_ptrs.push_back(&metrics[i]);
    }
    auto keys = split_csv(group_by);
    auto rows = summarize(trace_ptrs, metric_ptrs, keys, false);
    summary.emplace(summary_path);
    write_summary_tsv(summary->stream(), keys, rows, false);
  }
  writer.commit();
  if (summary) summary->commit();

  flush_diagnostics(diag);
  for (const auto& [script, n] : lid_diag.unconfigured_scripts) {
    emit_diagnostic("script '" + script + "' is not in the language registry (" +
                    std::to_string(n) + " tokens tagged unknown)");
  }
  return 0;
}

struct JoinedRows {
  std::vector<const ReasoningTrace*> traces;
  std::vector<const SwitchMetrics*> metrics;
};

JoinedRows join_on_id(const std::vector<ReasoningTrace>& corpus,
                      const std::vector<MetricsRow>& rows) {
  std::map<std::string, const ReasoningTrace*> by_id;
  for (const auto& t : corpus) by_id[t.id] = &t;
  JoinedRows joined;
  std::vector<std::string> unjoined;
  for (const auto& row : rows) {
    auto it = by_id.find(row.id);
    if (it == by_id.end()) {
      unjoined.push_back(row.id);
      continue;
    }
    joined.traces.push_back(it->second);
    joined.metrics.push_back(&row.metrics);
  }
  for (const auto& id : unjoined) {
    emit_diagnostic("metrics id '" + id + "' has no trace in the corpus");
  }
  return joined;
}

int cmd_report(const std::string& metrics_path, const std::string& corpus_path,
               const std::string& output, const std::string& group_by) {
  auto corpus = read_corpus(corpus_path);
  auto rows = read_metrics(metrics_path);
  JoinedRows joined = join_on_id(corpus, rows);
  if (joined.traces.empty()) {
    throw InputError("no joined rows between metrics and corpus");
  }
  auto keys = split_csv(group_by);
  auto summary = summarize(joined.traces, joined.metrics, keys, true);
  AtomicWriter writer(output);
  write_summary_tsv(writer.stream(), keys, summary, true);
  writer.commit();
  return 0;
}

int cmd_fit(const std::string& metrics_path, const std::string& corpus_path,
            const std::string& output, const std::string& table_path,
            const std::string& continuous_csv, const std::string& factors_csv,
            double ridge) {
  auto corpus = read_corpus(corpus_path);
  auto rows = read_metrics(metrics_path);
  JoinedRows joined = join_on_id(corpus, rows);
  if (joined.traces.empty()) {
    throw InputError("no joined rows between metrics and corpus");
  }

  auto continuous = split_csv(continuous_csv);
  auto factors = split_csv(factors_csv);
  Diagnostics diag;

  std::vector<Observation> observations;
  for (std::size_t i = 0; i < joined.traces.size(); ++i) {
    const ReasoningTrace& trace = *joined.traces[i];
    const SwitchMetrics& m = *joined.metrics[i];
    if (!trace.correct.has_value()) {
      diag.warn("trace '" + trace.id + "' dropped: no correctness flag");
      continue;
    }
    Observation obs;
    obs.outcome = *trace.correct;
    bool usable = true;
    for (const auto& name : continuous) {
      std::optional<double> v;
      if (name.rfind("extra:", 0) == 0) {
        // numeric predictors carried as extra corpus fields, e.g. the number
        // of training examples behind a trace; z-scored like the metrics
        const std::string key = name.substr(6);
        if (trace.extras.contains(key) && trace.extras[key].is_number()) {
          v = trace.extras[key].get<double>();
        }
      } else {
        v = metric_column_value(m, name);
      }
      if (!v.has_value()) {
        diag.warn("trace '" + trace.id + "' dropped: metric '" + name + "' absent");
        usable = false;
        break;
      }
      obs.continuous[name] = *v;
    }
    if (!usable) continue;
    for (const auto& f : factors) {
      if (f == "matrix_class") {
        if (!m.matrix_class.has_value()) {
          diag.warn("trace '" + trace.id + "' dropped: no matrix language");
          usable = false;
          break;
        }
        obs.factors[f] = matrix_class_name(*m.matrix_class);
      } else if (f == "language") {
        obs.factors[f] = trace.prompt_language;
      } else if (f == "model") {
        obs.factors[f] = trace.model;
      } else if (f == "dataset") {
        obs.factors[f] = trace.dataset;
      } else if (f == "domain") {
        obs.factors[f] = trace.domain;
      } else {
        throw ConfigError("unknown factor '" + f + "'");
      }
    }
    if (usable) observations.push_back(std::move(obs));
  }
  if (observations.empty()) throw InputError("no usable observations for fit");

  // SameAsPrompt is the natural baseline for the matrix-language factor, so
  // English and OtherLanguage get their own coefficients.
  std::map<std::string, std::string> reference_override = {
      {"matrix_class", matrix_class_name(MatrixClass::SameAsPrompt)}};

  FitOptions options;
  options.ridge = ridge;
  DesignMatrix design = encode(observations, factors, continuous, &diag,
                               reference_override);
  FitResult fit = fit_logistic(design, options);

  Json out = Json::object();
  out["model"] = "logistic (fixed-effects approximation)";
  out["n_observations"] = observations.size();
  out["converged"] = fit.converged;
  out["iterations"] = fit.iterations;
  out["separation_detected"] = fit.separation_detected;
  out["log_likelihood"] = fit.log_likelihood;
  out["ridge"] = ridge;
  Json coef = Json::object();
  for (std::size_t j = 0; j < fit.names.size(); ++j) {
    auto idx = static_cast<Eigen::Index>(j);
    double se = fit.standard_errors(idx);
    coef[fit.names[j]] = {
        {"estimate", fit.coefficients(idx)},
        {"std_error", se},
        {"z_value", se > 0 ? fit.coefficients(idx) / se : 0.0},
    };
  }
  out["coefficients"] = coef;

  AtomicWriter writer(output);
  writer.stream() << out.dump(2) << '\n';
  std::optional<AtomicWriter> table;
  if (!table_path.empty()) {
    table.emplace(table_path);
    table->stream() << "term\testimate\tstd_error\tz_value\n";
    for (std::size_t j = 0; j < fit.names.size(); ++j) {
      auto idx = static_cast<Eigen::Index>(j);
      double se = fit.standard_errors(idx);
      table->stream() << fit.names[j] << '\t'
                      << format_number(fit.coefficients(idx)) << '\t'
                      << format_number(se) << '\t'
                      << format_number(se > 0 ? fit.coefficients(idx) / se : 0.0)
                      << '\n';
    }
  }
  writer.commit();
  if (table) table->commit();
  flush_diagnostics(diag);
  if (!fit.converged) {
    emit_diagnostic(fit.separation_detected
                        ? "fit stopped: separation detected"
                        : "fit did not converge within the iteration limit");
  }
  return 0;
}

int cmd_validate_lid(const CommonOptions& common, const std::string& gold_path,
                     const std::string& output) {
  auto ctx = load_context(common.config_path);
  auto gold = read_gold_lid(gold_path);
  LidReport report = validate_lid(gold, ctx.lid, ctx.segmenters);
  Json out = lid_report_to_json(report);
  if (output.empty()) {
    std::cout << out.dump(2) << '\n';
  } else {
    AtomicWriter writer(output);
    writer.stream() << out.dump(2) << '\n';
    writer.commit();
  }
  return 0;
}

// --- curate -------------------------------------------------------------------

Json instance_to_json(const CurationInstance& inst) {
  return Json{{"prompt", inst.prompt},
              {"reasoning", inst.reasoning},
              {"answer", inst.answer},
              {"task", curation_task_name(inst.task)},
              {"language", inst.language},
              {"token_count", inst.token_count}};
}

std::vector<Json> read_jsonl_objects(const std::string& path) {
  auto lines = read_lines(path);
  std::vector<Json> objects;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t") == std::string::npos) continue;
    try {
      objects.push_back(Json::parse(lines[i]));
    } catch (const Json::parse_error& e) {
      throw InputError("line " + std::to_string(i + 1) + ": " + e.what());
    }
    if (!objects.back().is_object()) {
      throw InputError("line " + std::to_string(i + 1) + ": not a JSON object");
    }
  }
  return objects;
}

std::string require_field(const Json& obj, const char* field, std::size_t index) {
  if (!obj.contains(field) || !obj[field].is_string()) {
    throw InputError("record " + std::to_string(index) + ": missing field " + field);
  }
  return obj[field].get<std::string>();
}

int cmd_curate(const CommonOptions& common, const std::string& task_name,
               const std::string& input, const std::string& output,
               const std::string& plan_path, const std::string& language,
               std::int64_t budget, double percentile,
               const std::string& template_path, std::int64_t min_tokens) {
  auto task = curation_task_from_name(task_name);
  if (!task.has_value()) {
    std::cerr << "corelab: unknown curation task '" << task_name << "'\n";
    return kExitUsage;
  }
  if (language.empty()) throw ConfigError("curate requires --language");

  Diagnostics diag;
  TokenCounter counter = default_token_counter();
  std::vector<CurationInstance> instances;
  Json plan_extra = Json::object();

  switch (*task) {
    case CurationTask::Native: {
      auto corpus = read_corpus(input);
      for (auto& trace : corpus) {
        if (!trace.correct.has_value() && trace.gold.has_value()) {
          trace.correct = score_correctness(trace, &diag);
        }
      }
      std::vector<std::int64_t> lengths;
      for (const auto& trace : corpus) {
        if (trace.correct.value_or(false)) lengths.push_back(counter(trace.reasoning));
      }
      if (lengths.empty()) {
        throw InputError("no correct traces available for the native task");
      }
      std::int64_t cutoff = length_cutoff(lengths, percentile);
      plan_extra["length_cutoff"] = cutoff;
      plan_extra["percentile"] = percentile;
      for (const auto& trace :
           filter_correct_and_short(corpus, cutoff, counter, &diag)) {
        CurationInstance inst;
        inst.prompt = trace.prompt;
        inst.reasoning = trace.reasoning;
        inst.answer = trace.answer;
        inst.task = CurationTask::Native;
        inst.language = language;
        inst.token_count = instance_token_count(inst, counter);
        instances.push_back(std::move(inst));
      }
      break;
    }
    case CurationTask::MtEn:
    case CurationTask::PromptMtEn: {
      if (template_path.empty()) {
        throw ConfigError("translation tasks require --template");
      }
      std::string prompt_template = read_file(template_path);
      auto objects = read_jsonl_objects(input);
      std::vector<TranslationPair> pairs;
      for (std::size_t i = 0; i < objects.size(); ++i) {
        TranslationPair pair;
        pair.source = require_field(objects[i], "source", i);
        pair.translation = require_field(objects[i], "target", i);
        if (objects[i].contains("candidate") && objects[i]["candidate"].is_string()) {
          MtOutcome outcome = mt_postprocess(
              objects[i]["candidate"].get<std::string>(), pair.translation);
          if (!outcome.accepted) {
            diag.warn("record " + std::to_string(i) +
                      ": refined translation rejected, using the original");
          }
          pair.translation = outcome.text;
        }
        FilterVerdict verdict = repetition_filter(pair.translation);
        if (!verdict.pass) {
          diag.warn("record " + std::to_string(i) + " dropped: " + verdict.reason);
          continue;
        }
        pairs.push_back(std::move(pair));
      }
      instances = make_translation_instances(pairs, prompt_template, *task,
                                             language, counter);
      break;
    }
    case CurationTask::EnglishReasoning: {
      auto objects = read_jsonl_objects(input);
      std::vector<AlignedReasoning> aligned;
      for (std::size_t i = 0; i < objects.size(); ++i) {
        AlignedReasoning rec;
        rec.prompt = objects[i].value("prompt", "");
        rec.reasoning_en = objects[i].value("reasoning", "");
        rec.answer = objects[i].value("answer", "");
        aligned.push_back(std::move(rec));
      }
      instances = make_english_reasoning_instances(aligned, language, counter, &diag);
      break;
    }
    case CurationTask::StrategicCsw: {
      auto ctx = load_context(common.config_path);
      auto corpus = read_corpus(input);
      for (const auto& trace :
           select_strategic(corpus, ctx.lid, ctx.segmenters, min_tokens)) {
        CurationInstance inst;
        inst.prompt = trace.prompt;
        inst.reasoning = trace.reasoning;
        inst.answer = trace.answer;
        inst.task = CurationTask::StrategicCsw;
        inst.language = language;
        inst.token_count = instance_token_count(inst, counter);
        instances.push_back(std::move(inst));
      }
      break;
    }
    case CurationTask::SyntheticCsw: {
      auto objects = read_jsonl_objects(input);
      plan_extra["splice_algorithm"] = kSpliceAlgorithmId;
      for (std::size_t i = 0; i < objects.size(); ++i) {
        std::string prompt = require_field(objects[i], "prompt", i);
        std::string reasoning_en = require_field(objects[i], "reasoning_en", i);
        std::string reasoning_l = require_field(objects[i], "reasoning_l", i);
        std::string answer = require_field(objects[i], "answer", i);
        CurationInstance inst;
        inst.prompt = std::move(prompt);
        inst.reasoning = splice_synthetic(reasoning_en, reasoning_l,
                                          common.seed + static_cast<std::uint64_t>(i));
        inst.answer = std::move(answer);
        inst.task = CurationTask::SyntheticCsw;
        inst.language = language;
        inst.token_count = instance_token_count(inst, counter);
        instances.push_back(std::move(inst));
      }
      break;
    }
  }

  BudgetPlan plan = apply_token_budget(instances, budget, &diag);

  AtomicWriter writer(output);
  for (std::size_t index : plan.selected) {
    writer.stream() << instance_to_json(instances[index]).dump() << '\n';
  }
  std::optional<AtomicWriter> plan_writer;
  if (!plan_path.empty()) {
    Json plan_json = Json::object();
    plan_json["task"] = curation_task_name(*task);
    plan_json["language"] = language;
    plan_json["seed"] = common.seed;
    plan_json["budget"] = plan.budget;
    plan_json["total_tokens"] = plan.total_tokens;
    plan_json["token_counter"] = "whitespace/v1";
    plan_json["n_candidates"] = instances.size();
    plan_json["n_selected"] = plan.selected.size();
    plan_json["selected"] = plan.selected;
    for (auto it = plan_extra.begin(); it != plan_extra.end(); ++it) {
      plan_json[it.key()] = it.value();
    }
    plan_writer.emplace(plan_path);
    plan_writer->stream() << plan_json.dump(2) << '\n';
  }
  writer.commit();
  if (plan_writer) plan_writer->commit();
  flush_diagnostics(diag);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corelab: code-switching analysis and SFT data curation"};
  app.require_subcommand(1);

  CommonOptions common;
  app.add_option("--config", common.config_path, "language registry JSON");
  app.add_option("--workers", common.workers, "parallel workers for per-trace work");
  app.add_option("--seed", common.seed, "seed for randomized curation steps");

  std::string input, output, text, language, summary_path, ratings_path;
  std::string metrics_path, corpus_path, table_path, gold_path, plan_path;
  std::string template_path, task_name;
  std::string group_by = "language,model";
  bool rate_missing = false;
  std::string continuous_csv = "cmi,m_index,i_index";
  std::string factors_csv = "language,model,matrix_class";
  std::int64_t budget = kDefaultTokenBudget;
  std::int64_t min_tokens = 3;
  double percentile = 0.95;
  double ridge = 1e-6;

  auto* tok = app.add_subcommand("tokenize", "tokenize reasoning text");
  tok->add_option("--input", input, "corpus JSONL");
  tok->add_option("--text", text, "tokenize a single string instead of a corpus");
  tok->add_option("--language", language, "language hint for segmenter selection");
  tok->add_option("--output", output, "tokens JSONL")->required();

  auto* lid_cmd = app.add_subcommand("lid", "word-level language identification");
  lid_cmd->add_option("--input", input, "corpus JSONL")->required();
  lid_cmd->add_option("--output", output, "tagged tokens JSONL")->required();
  lid_cmd->add_option("--min-tokens", min_tokens, "instance-language threshold");

  auto* met = app.add_subcommand("metrics", "compute code-switching metrics");
  met->add_option("--input", input, "corpus JSONL")->required();
  met->add_option("--output", output, "metrics JSONL")->required();
  met->add_option("--summary", summary_path, "normalized per-group summary TSV");
  met->add_option("--ratings", ratings_path, "ratings JSONL to attach");
  met->add_option("--group-by", group_by, "summary grouping keys");
  met->add_flag("--rate", rate_missing,
                "fetch missing ratings from the endpoint in " +
                    std::string(kRaterUrlEnv));

  auto* rep = app.add_subcommand("report", "correctness-by-behavior report");
  rep->add_option("--metrics", metrics_path, "metrics JSONL")->required();
  rep->add_option("--corpus", corpus_path, "corpus JSONL")->required();
  rep->add_option("--output", output, "report TSV")->required();
  rep->add_option("--group-by", group_by, "grouping keys");

  auto* cur = app.add_subcommand("curate", "build an SFT dataset");
  cur->add_option("task", task_name, "one of: native, mt_en, prompt_mt_en, "
                                     "english_reasoning, strategic_csw, synthetic_csw")
      ->required();
  cur->add_option("--input", input, "task input JSONL")->required();
  cur->add_option("--output", output, "curated dataset JSONL")->required();
  cur->add_option("--plan", plan_path, "budget plan JSON");
  cur->add_option("--language", language, "target language code");
  cur->add_option("--budget", budget, "token budget");
  cur->add_option("--percentile", percentile, "length-cutoff percentile");
  cur->add_option("--template", template_path, "prompt template file");
  cur->add_option("--min-tokens", min_tokens, "instance-language threshold");

  auto* fit = app.add_subcommand("fit", "logistic regression of correctness");
  fit->add_option("--metrics", metrics_path, "metrics JSONL")->required();
  fit->add_option("--corpus", corpus_path, "corpus JSONL")->required();
  fit->add_option("--output", output, "fit result JSON")->required();
  fit->add_option("--table", table_path, "coefficient TSV");
  fit->add_option("--continuous", continuous_csv, "continuous predictors");
  fit->add_option("--factors", factors_csv, "categorical predictors");
  fit->add_option("--ridge", ridge, "ridge penalty");

  auto* val = app.add_subcommand("validate-lid", "score LID against a gold set");
  val->add_option("--gold", gold_path, "gold JSONL")->required();
  val->add_option("--output", output, "report JSON (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "corelab: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (tok->parsed()) {
      if (text.empty() && input.empty()) {
        std::cerr << "corelab: tokenize needs --input or --text\n";
        return kExitUsage;
      }
      return cmd_tokenize(common, input, text, language, output);
    }
    if (lid_cmd->parsed()) return cmd_lid(common, input, output, min_tokens);
    if (met->parsed()) {
      return cmd_metrics(common, input, output, summary_path, ratings_path,
                         group_by, rate_missing);
    }
    if (rep->parsed()) return cmd_report(metrics_path, corpus_path, output, group_by);
    if (cur->parsed()) {
      return cmd_curate(common, task_name, input, output, plan_path, language,
                        budget, percentile, template_path, min_tokens);
    }
    if (fit->parsed()) {
      return cmd_fit(metrics_path, corpus_path, output, table_path,
                     continuous_csv, factors_csv, ridge);
    }
    if (val->parsed()) return cmd_validate_lid(common, gold_path, output);
  } catch (const ConfigError& e) {
    std::cerr << "corelab: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InputError& e) {
    std::cerr << "corelab: " << e.what() << '\n';
    return kExitData;
  } catch (const RatingError& e) {
    std::cerr << "corelab: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "corelab: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
