// Copyright 2026 The Synchro Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "synchro/align.hpp"
#include "synchro/error.hpp"
#include "synchro/eval.hpp"
#include "synchro/ingest.hpp"
#include "synchro/metrics.hpp"
#include "synchro/report.hpp"

namespace synchro::cli {

namespace {

using nlohmann::json;

struct CliFailure {
  int code;
  std::string message;
};

struct RunConfig {
  std::string segments;
  std::string embeddings;
  std::string external_align;
  std::string gold;
  std::string pred;
  std::string judgments;
  std::string results;
  std::string config_file;
  std::string out;

  double theta = 0.71;
  std::size_t min_n_align = 2;
  std::string n_align_rule = "ge";
  std::string mode = "synchro";
  std::vector<std::string> function_pos;
  bool keep_function_words = false;
  bool theta_in_combined = false;
  bool no_filter = false;
  std::string format = "table";
  bool percent = false;
  std::vector<std::size_t> nalign_thresholds = default_nalign_thresholds();
  std::vector<std::size_t> length_thresholds = default_length_thresholds();
  std::vector<std::string> metrics{"rho", "coverage", "combined"};
};

// A command-line option that may also be supplied by the config file.
struct Bound {
  std::string key;
  CLI::Option* option;
  std::function<void(const json&)> from_json;
};

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (const auto& i : items) {
    if (!s.empty()) s += ',';
    s += i;
  }
  return s;
}

std::string join(const std::vector<std::size_t>& items) {
  std::vector<std::string> s;
  for (auto i : items) s.push_back(std::to_string(i));
  return join(s);
}

std::string or_dash(const std::string& s) { return s.empty() ? "-" : s; }

template <typename T>
std::function<void(const json&)> json_setter(T& target) {
  return [&target](const json& j) { target = j.get<T>(); };
}

// function_pos accepts ["ADP", ...] or "ADP,AUX,...".
std::function<void(const json&)> pos_setter(std::vector<std::string>& target) {
  return [&target](const json& j) {
    if (j.is_string()) {
      target.clear();
      std::stringstream ss(j.get<std::string>());
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) target.push_back(item);
      }
    } else {
      target = j.get<std::vector<std::string>>();
    }
  };
}

class CommandLine {
 public:
  explicit CommandLine(RunConfig& cfg) : cfg_(cfg), app_("synchro") {
    app_.description(
        "Word order synchronization metrics for simultaneous interpretation "
        "and simultaneous machine translation.");
    app_.require_subcommand(1);
    app_.set_help_all_flag("--help-all", "Show help for all subcommands");

    auto* align = sub("align", "Write the filtered alignment of each segment in Pharaoh format");
    pipeline_options(align);
    bind(align, "no_filter", align->add_flag("--no-filter", cfg_.no_filter,
                                             "Emit the alignment before filtering"),
         json_setter(cfg_.no_filter));
    path_option(align, "--out", cfg_.out, "Output file (default: stdout)");

    auto* score = sub("score", "Score every segment and summarize by N_align and length");
    pipeline_options(score);
    format_option(score);
    threshold_options(score);

    auto* eval = sub("eval-align", "AER / precision / recall / F1 against gold alignments");
    path_option(eval, "--pred", cfg_.pred, "Predicted Pharaoh file");
    path_option(eval, "--gold", cfg_.gold, "Gold Pharaoh file (i-j sure, i?j possible)");
    path_option(eval, "--segments", cfg_.segments,
                "Segment file; binds ids and checks index ranges");
    format_option(eval);
    bind(eval, "percent",
         eval->add_flag("--percent", cfg_.percent,
                        "Print AER, precision and recall as percentages"),
         json_setter(cfg_.percent));
    config_option(eval);

    auto* corr = sub("correlate", "Pearson correlation of metric scores with human judgments");
    path_option(corr, "--results", cfg_.results, "Records-format output of `score`");
    path_option(corr, "--judgments", cfg_.judgments, "CSV: segment_id,score,kind");
    bind(corr, "metrics",
         corr->add_option("--metrics", cfg_.metrics,
                          "Metric columns to correlate (rho,coverage,combined)")
             ->delimiter(','),
         json_setter(cfg_.metrics));
    bind(corr, "length_thresholds",
         corr->add_option("--length-thresholds", cfg_.length_thresholds,
                          "Source-length bucket bounds")
             ->delimiter(','),
         json_setter(cfg_.length_thresholds));
    format_option(corr);
    config_option(corr);

    auto* report = sub("report", "Bucket reports from a records-format results file");
    path_option(report, "--results", cfg_.results, "Records-format output of `score`");
    threshold_options(report);
    format_option(report);
    config_option(report);
  }

  CLI::App& app() { return app_; }

  std::string selected() const {
    for (const auto* s : app_.get_subcommands()) return s->get_name();
    return {};
  }

  // Fills every option not given on the command line from the config file.
  void apply_config_file() {
    if (cfg_.config_file.empty()) return;
    std::ifstream in(cfg_.config_file);
    if (!in) {
      throw CliFailure{kExitInputError,
                       "cannot open --config file '" + cfg_.config_file + "'"};
    }
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CliFailure{kExitInputError, cfg_.config_file + ": " + e.what()};
    }
    if (!doc.is_object()) {
      throw CliFailure{kExitInputError,
                       cfg_.config_file + ": config must be a JSON object"};
    }
    // One file may serve several subcommands; keys meaningless to all of
    // them are rejected.
    std::set<std::string> known;
    for (const auto& [name, list] : bound_) {
      for (const auto& b : list) known.insert(b.key);
    }
    for (const auto& [key, value] : doc.items()) {
      if (!known.contains(key)) {
        throw CliFailure{kExitInputError,
                         cfg_.config_file + ": unknown key '" + key + "'"};
      }
    }
    const auto& bound = bound_[selected()];
    for (const auto& b : bound) {
      auto it = doc.find(b.key);
      if (it == doc.end() || b.option->count() > 0) continue;
      try {
        b.from_json(*it);
      } catch (const json::exception& e) {
        throw CliFailure{kExitInputError, cfg_.config_file + ": key '" + b.key +
                                              "': " + e.what()};
      }
    }
  }

 private:
  CLI::App* sub(const std::string& name, const std::string& help) {
    return app_.add_subcommand(name, help);
  }

  void bind(CLI::App* sub, std::string key, CLI::Option* opt,
            std::function<void(const json&)> setter) {
    bound_[sub->get_name()].push_back({std::move(key), opt, std::move(setter)});
  }

  void path_option(CLI::App* sub, const std::string& flag, std::string& target,
                   const std::string& help) {
    std::string key = flag.substr(2);
    for (auto& c : key) {
      if (c == '-') c = '_';
    }
    bind(sub, key, sub->add_option(flag, target, help), json_setter(target));
  }

  void config_option(CLI::App* sub) {
    sub->add_option("--config", cfg_.config_file,
                    "JSON config file; command-line flags take precedence");
  }

  void format_option(CLI::App* sub) {
    bind(sub, "format",
         sub->add_option("--format", cfg_.format, "Report layout")
             ->check(CLI::IsMember({"table", "records"})),
         json_setter(cfg_.format));
    path_option(sub, "--out", cfg_.out, "Output file (default: stdout)");
  }

  void threshold_options(CLI::App* sub) {
    bind(sub, "nalign_thresholds",
         sub->add_option("--nalign-thresholds", cfg_.nalign_thresholds,
                         "N_align bucket minima")
             ->delimiter(','),
         json_setter(cfg_.nalign_thresholds));
    bind(sub, "length_thresholds",
         sub->add_option("--length-thresholds", cfg_.length_thresholds,
                         "Source-length bucket bounds")
             ->delimiter(','),
         json_setter(cfg_.length_thresholds));
  }

  void pipeline_options(CLI::App* sub) {
    path_option(sub, "--segments", cfg_.segments, "Segment JSONL file");
    path_option(sub, "--embeddings", cfg_.embeddings, "Embedding JSONL file");
    path_option(sub, "--external-align", cfg_.external_align,
                "External aligner output (Pharaoh), required in combined mode");
    bind(sub, "theta",
         sub->add_option("--theta", cfg_.theta,
                         "Cosine threshold; links below it are dropped"),
         json_setter(cfg_.theta));
    bind(sub, "min_n_align",
         sub->add_option("--min-n-align", cfg_.min_n_align,
                         "Segments with fewer aligned source words are excluded"),
         json_setter(cfg_.min_n_align));
    bind(sub, "n_align_rule",
         sub->add_option("--n-align-rule", cfg_.n_align_rule,
                         "ge: n_align >= min, gt: n_align > min")
             ->check(CLI::IsMember({"ge", "gt"})),
         json_setter(cfg_.n_align_rule));
    bind(sub, "mode",
         sub->add_option("--mode", cfg_.mode, "synchro or combined")
             ->check(CLI::IsMember({"synchro", "combined"})),
         json_setter(cfg_.mode));
    bind(sub, "function_pos",
         sub->add_option("--function-pos", cfg_.function_pos,
                         "POS tags treated as function words")
             ->delimiter(','),
         pos_setter(cfg_.function_pos));
    bind(sub, "keep_function_words",
         sub->add_flag("--keep-function-words", cfg_.keep_function_words,
                       "Do not drop links of source function words"),
         json_setter(cfg_.keep_function_words));
    bind(sub, "theta_in_combined",
         sub->add_flag("--theta-in-combined", cfg_.theta_in_combined,
                       "Also apply --theta in combined mode"),
         json_setter(cfg_.theta_in_combined));
    config_option(sub);
  }

  RunConfig& cfg_;
  CLI::App app_;
  std::map<std::string, std::vector<Bound>> bound_;
};

void require(const std::string& value, const std::string& flag,
             const std::string& command) {
  if (value.empty()) {
    throw CliFailure{kExitInputError, command + " requires " + flag};
  }
}

std::string where(const std::string& path, const Error& e) {
  std::string s = path;
  if (e.line()) s += ":" + std::to_string(*e.line());
  return s + ": " + e.detail();
}

// Maps library errors raised while handling `path` onto exit codes.
template <typename Fn>
auto guard(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw CliFailure{kExitInputError, where(path, e)};
  } catch (const ConsistencyError& e) {
    throw CliFailure{kExitConsistencyError, where(path, e)};
  }
}

template <typename Fn>
auto load(const std::string& flag, const std::string& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CliFailure{kExitInputError, "cannot open " + flag + " file '" + path + "'"};
  }
  return guard(path, [&] { return fn(in); });
}

std::set<std::string> function_pos_set(const RunConfig& cfg) {
  return {cfg.function_pos.begin(), cfg.function_pos.end()};
}

MetricConfig metric_config(const RunConfig& cfg) {
  MetricConfig m;
  m.mode = *mode_from_string(cfg.mode);
  m.filter.theta = cfg.theta;
  m.filter.function_pos = function_pos_set(cfg);
  m.filter.drop_function_words = !cfg.keep_function_words;
  m.min_n_align = cfg.min_n_align;
  m.n_align_rule = cfg.n_align_rule == "gt" ? NAlignRule::more_than
                                            : NAlignRule::at_least;
  m.theta_in_combined = cfg.theta_in_combined;
  try {
    m.filter.validate();
  } catch (const std::invalid_argument& e) {
    throw CliFailure{kExitInputError, e.what()};
  }
  return m;
}

ReportFormat report_format(const RunConfig& cfg) {
  auto f = report_format_from_string(cfg.format);
  if (!f) throw CliFailure{kExitInputError, "unknown --format " + cfg.format};
  return *f;
}

struct PipelineInputs {
  std::vector<Segment> segments;
  EmbeddingTable embeddings;
  std::vector<AlignmentSet> externals;
};

PipelineInputs load_pipeline(const RunConfig& cfg, const std::string& command) {
  require(cfg.segments, "--segments", command);
  require(cfg.embeddings, "--embeddings", command);
  if (cfg.mode == "combined") require(cfg.external_align, "--external-align", command);

  PipelineInputs in;
  SegmentParseOptions opts;
  opts.function_pos = function_pos_set(cfg);
  in.segments = load("--segments", cfg.segments,
                     [&](std::istream& s) { return parse_segments(s, opts); });
  in.embeddings = load("--embeddings", cfg.embeddings, [&](std::istream& s) {
    return parse_embeddings(s, in.segments);
  });
  if (cfg.mode == "combined") {
    in.externals = load("--external-align", cfg.external_align, [&](std::istream& s) {
      auto sets = parse_predicted_pharaoh(s);
      bind_to_corpus(sets, in.segments);
      return sets;
    });
  }
  return in;
}

ReportHeader pipeline_header(const std::string& command, const RunConfig& cfg,
                             const MetricConfig& m) {
  ReportHeader h;
  h.command = command;
  h.config = {
      {"mode", cfg.mode},
      {"theta", shortest(m.filter.theta)},
      {"theta_in_combined", m.theta_in_combined ? "true" : "false"},
      {"drop_function_words", m.filter.drop_function_words ? "true" : "false"},
      {"function_pos", join(cfg.function_pos)},
      {"min_n_align", std::to_string(m.min_n_align)},
      {"n_align_rule", cfg.n_align_rule},
      {"segments", or_dash(cfg.segments)},
      {"embeddings", or_dash(cfg.embeddings)},
      {"external_align", or_dash(cfg.external_align)},
  };
  return h;
}

void cmd_align(const RunConfig& cfg, std::ostream& out) {
  const MetricConfig m = metric_config(cfg);
  const auto in = load_pipeline(cfg, "align");
  std::vector<AlignmentSet> sets;
  sets.reserve(in.segments.size());
  for (std::size_t i = 0; i < in.segments.size(); ++i) {
    const Segment& seg = in.segments[i];
    auto it = in.embeddings.find(seg.id);
    SegmentInputs inputs{seg, it == in.embeddings.end() ? nullptr : &it->second,
                         in.externals.empty() ? nullptr : &in.externals[i]};
    sets.push_back(cfg.no_filter ? raw_alignment(inputs, m)
                                 : filtered_alignment(inputs, m));
  }
  write_pharaoh(out, sets);
}

void cmd_score(const RunConfig& cfg, std::ostream& out) {
  const MetricConfig m = metric_config(cfg);
  const auto format = report_format(cfg);
  const auto in = load_pipeline(cfg, "score");
  const auto results = score_corpus(in.segments, in.embeddings, in.externals, m);
  const auto by_nalign = bucket_by_nalign(results, cfg.nalign_thresholds);
  const auto by_length = bucket_by_length(results, cfg.length_thresholds);
  auto header = pipeline_header("score", cfg, m);
  header.config.emplace_back("nalign_thresholds", join(cfg.nalign_thresholds));
  header.config.emplace_back("length_thresholds", join(cfg.length_thresholds));
  write_score_report(out, format, header, results, by_nalign, by_length);
}

void cmd_eval_align(const RunConfig& cfg, std::ostream& out) {
  require(cfg.pred, "--pred", "eval-align");
  require(cfg.gold, "--gold", "eval-align");
  const auto format = report_format(cfg);
  auto pred = load("--pred", cfg.pred,
                   [](std::istream& s) { return parse_predicted_pharaoh(s); });
  auto gold = load("--gold", cfg.gold,
                   [](std::istream& s) { return parse_gold_pharaoh(s); });
  if (!cfg.segments.empty()) {
    const auto segments = load("--segments", cfg.segments,
                               [](std::istream& s) { return parse_segments(s); });
    guard(cfg.pred, [&] { bind_to_corpus(pred, segments); });
    guard(cfg.gold, [&] { bind_to_corpus(gold, segments); });
  }
  if (pred.size() != gold.size()) {
    throw CliFailure{kExitConsistencyError,
                     "line-count mismatch: " + std::to_string(pred.size()) +
                         " predicted vs " + std::to_string(gold.size()) + " gold"};
  }
  std::vector<AlignmentEvalResult> per_segment;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    per_segment.push_back(aer(pred[i], gold[i]));
  }
  const auto corpus = aer_corpus(pred, gold);
  ReportHeader h{"eval-align",
                 {{"pred", cfg.pred},
                  {"gold", cfg.gold},
                  {"segments", or_dash(cfg.segments)},
                  {"percent", cfg.percent ? "true" : "false"}}};
  write_alignment_eval_report(out, format, h, per_segment, corpus, cfg.percent);
}

void cmd_correlate(const RunConfig& cfg, std::ostream& out) {
  require(cfg.results, "--results", "correlate");
  require(cfg.judgments, "--judgments", "correlate");
  const auto format = report_format(cfg);
  const auto results = load("--results", cfg.results,
                            [](std::istream& s) { return parse_results(s); });
  std::set<std::string> known;
  for (const auto& r : results) known.insert(r.segment_id);
  const auto judgments = load("--judgments", cfg.judgments, [&](std::istream& s) {
    return parse_judgments(s, &known);
  });

  std::vector<CorrelationResult> overall;
  std::vector<LengthBreakdown> breakdown;
  for (const auto& name : cfg.metrics) {
    auto field = metric_field_from_string(name);
    if (!field) throw CliFailure{kExitInputError, "unknown metric '" + name + "'"};
    overall.push_back(correlate_with_judgments(results, judgments, *field));
    breakdown.push_back(
        {*field, correlate_by_length(results, judgments, *field, cfg.length_thresholds)});
  }
  ReportHeader h{"correlate",
                 {{"results", cfg.results},
                  {"judgments", cfg.judgments},
                  {"metrics", join(cfg.metrics)},
                  {"length_thresholds", join(cfg.length_thresholds)}}};
  write_correlation_report(out, format, h, overall, breakdown);
}

void cmd_report(const RunConfig& cfg, std::ostream& out) {
  require(cfg.results, "--results", "report");
  const auto format = report_format(cfg);
  const auto results = load("--results", cfg.results,
                            [](std::istream& s) { return parse_results(s); });
  ReportHeader h{"report",
                 {{"results", cfg.results},
                  {"nalign_thresholds", join(cfg.nalign_thresholds)},
                  {"length_thresholds", join(cfg.length_thresholds)}}};
  write_bucket_report(out, format, h, bucket_by_nalign(results, cfg.nalign_thresholds),
                      bucket_by_length(results, cfg.length_thresholds));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  const auto defaults = default_function_pos();
  cfg.function_pos.assign(defaults.begin(), defaults.end());

  CommandLine cl(cfg);
  try {
    cl.app().parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cl.app().exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const std::string command = cl.selected();
  try {
    cl.apply_config_file();
    std::ostringstream buffer;
    if (command == "align") {
      cmd_align(cfg, buffer);
    } else if (command == "score") {
      cmd_score(cfg, buffer);
    } else if (command == "eval-align") {
      cmd_eval_align(cfg, buffer);
    } else if (command == "correlate") {
      cmd_correlate(cfg, buffer);
    } else if (command == "report") {
      cmd_report(cfg, buffer);
    }
    if (cfg.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
      if (!file) {
        throw CliFailure{kExitInputError, "cannot write --out file '" + cfg.out + "'"};
      }
      file << buffer.str();
    }
    return kExitOk;
  } catch (const CliFailure& f) {
    err << "synchro " << command << ": error: " << f.message << '\n';
    return f.code;
  } catch (const ParseError& e) {
    err << "synchro " << command << ": error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ConsistencyError& e) {
    err << "synchro " << command << ": error: " << e.what() << '\n';
    return kExitConsistencyError;
  }
}

}  // namespace synchro::cli
