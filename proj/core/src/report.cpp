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

#include "synchro/report.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "synchro/error.hpp"
#include "text_util.hpp"

namespace synchro {

namespace {

using ojson = nlohmann::ordered_json;

ojson opt_json(const std::optional<double>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

std::string opt_fixed(const std::optional<double>& v, int precision = 4) {
  return v ? detail::format_fixed(*v, precision) : "n/a";
}

// Left-aligned columns separated by two spaces; no trailing whitespace.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) {
    rows_.push_back(std::move(header));
  }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out) const {
    std::vector<std::size_t> widths;
    for (const auto& row : rows_) {
      if (widths.size() < row.size()) widths.resize(row.size(), 0);
      for (std::size_t c = 0; c < row.size(); ++c) {
        widths[c] = std::max(widths[c], display_width(row[c]));
      }
    }
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        line += row[c];
        if (c + 1 < row.size()) {
          line.append(widths[c] - display_width(row[c]) + 2, ' ');
        }
      }
      out << line << '\n';
    }
  }

 private:
  // Counts UTF-8 code points, close enough for ids and ASCII numbers.
  static std::size_t display_width(const std::string& s) {
    return static_cast<std::size_t>(std::count_if(
        s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  }

  std::vector<std::vector<std::string>> rows_;
};

void write_header_table(std::ostream& out, const ReportHeader& header) {
  out << "# synchro " << header.command << '\n';
  std::string cfg;
  for (const auto& [k, v] : header.config) {
    if (!cfg.empty()) cfg += ' ';
    cfg += k + "=" + v;
  }
  out << "# config: " << cfg << '\n';
}

void write_header_record(std::ostream& out, const ReportHeader& header) {
  ojson obj;
  obj["kind"] = "config";
  obj["command"] = header.command;
  for (const auto& [k, v] : header.config) obj[k] = v;
  out << obj.dump() << '\n';
}

void write_header(std::ostream& out, ReportFormat format,
                  const ReportHeader& header) {
  if (format == ReportFormat::table) {
    write_header_table(out, header);
  } else {
    write_header_record(out, header);
  }
}

std::string sequence_text(const std::vector<int>& seq) {
  std::string s;
  for (int v : seq) {
    if (!s.empty()) s += ' ';
    s += std::to_string(v);
  }
  return s.empty() ? "-" : s;
}

void write_buckets_table(std::ostream& out, const std::string& title,
                         const std::string& key_header,
                         std::span<const BucketReport> buckets) {
  out << "\n## " << title << '\n';
  TextTable t({key_header, "mean_rho (coverage)", "mean_combined", "segments",
               "excluded"});
  for (const auto& b : buckets) {
    t.add({b.bucket_key,
           opt_fixed(b.mean_rho) + " (" + opt_fixed(b.mean_coverage) + ")",
           opt_fixed(b.mean_combined),
           "(" + std::to_string(b.segment_count) + ")",
           std::to_string(b.excluded_count)});
  }
  t.print(out);
}

void write_buckets_records(std::ostream& out, const std::string& by,
                           std::span<const BucketReport> buckets) {
  for (const auto& b : buckets) {
    ojson obj;
    obj["kind"] = "bucket";
    obj["by"] = by;
    obj["key"] = b.bucket_key;
    obj["mean_rho"] = opt_json(b.mean_rho);
    obj["mean_coverage"] = opt_json(b.mean_coverage);
    obj["mean_combined"] = opt_json(b.mean_combined);
    obj["segment_count"] = b.segment_count;
    obj["excluded_count"] = b.excluded_count;
    out << obj.dump() << '\n';
  }
}

void write_buckets(std::ostream& out, ReportFormat format,
                   std::span<const BucketReport> by_nalign,
                   std::span<const BucketReport> by_length) {
  if (format == ReportFormat::table) {
    if (!by_nalign.empty()) {
      write_buckets_table(out, "buckets by N_align", "N_align", by_nalign);
    }
    if (!by_length.empty()) {
      write_buckets_table(out, "buckets by source length", "length",
                          by_length);
    }
  } else {
    write_buckets_records(out, "n_align", by_nalign);
    write_buckets_records(out, "length", by_length);
  }
}

std::optional<double> read_opt(const nlohmann::json& obj, const char* key,
                               std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) {
    throw ParseError(std::string("field '") + key + "' must be a number or null",
                     line_no);
  }
  return it->get<double>();
}

std::size_t read_count(const nlohmann::json& obj, const char* key,
                       std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_unsigned()) {
    throw ParseError(std::string("field '") + key +
                         "' must be a non-negative integer",
                     line_no);
  }
  return it->get<std::size_t>();
}

std::string eval_value(double v, bool percent) {
  return percent ? detail::format_fixed(100.0 * v, 1) : detail::format_fixed(v, 4);
}

}  // namespace

std::optional<ReportFormat> report_format_from_string(std::string_view text) {
  if (text == "table") return ReportFormat::table;
  if (text == "records") return ReportFormat::records;
  return std::nullopt;
}

std::string format_result_record(const SyncResult& r) {
  ojson obj;
  obj["kind"] = "segment";
  obj["segment_id"] = r.segment_id;
  obj["rho"] = opt_json(r.rho);
  obj["coverage"] = opt_json(r.coverage);
  obj["combined"] = opt_json(r.combined);
  obj["n_align"] = r.n_align;
  obj["source_length"] = r.source_length;
  obj["excluded"] = r.excluded;
  obj["sequence"] = r.sequence;
  ojson links = ojson::array();
  for (const auto& l : r.used_links) {
    links.push_back(ojson::array({l.source_index, l.target_index, l.similarity}));
  }
  obj["links"] = std::move(links);
  return obj.dump();
}

std::vector<SyncResult> parse_results(std::istream& in) {
  std::vector<SyncResult> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed results record: ") + e.what(),
                       line_no);
    }
    if (!obj.is_object()) {
      throw ParseError("results record is not a JSON object", line_no);
    }
    auto kind = obj.find("kind");
    if (kind == obj.end() || !kind->is_string()) {
      throw ParseError("results record without a 'kind'", line_no);
    }
    if (*kind != "segment") continue;

    SyncResult r;
    auto id = obj.find("segment_id");
    if (id == obj.end() || !id->is_string() || id->get<std::string>().empty()) {
      throw ParseError("segment record without a segment_id", line_no);
    }
    r.segment_id = id->get<std::string>();
    r.rho = read_opt(obj, "rho", line_no);
    r.coverage = read_opt(obj, "coverage", line_no);
    r.combined = read_opt(obj, "combined", line_no);
    r.n_align = read_count(obj, "n_align", line_no);
    r.source_length = read_count(obj, "source_length", line_no);
    auto excluded = obj.find("excluded");
    if (excluded == obj.end() || !excluded->is_boolean()) {
      throw ParseError("field 'excluded' must be a boolean", line_no);
    }
    r.excluded = excluded->get<bool>();
    if (auto seq = obj.find("sequence"); seq != obj.end()) {
      try {
        r.sequence = seq->get<std::vector<int>>();
      } catch (const nlohmann::json::exception&) {
        throw ParseError("field 'sequence' must be an integer array", line_no);
      }
    }
    if (auto links = obj.find("links"); links != obj.end()) {
      if (!links->is_array()) {
        throw ParseError("field 'links' must be an array", line_no);
      }
      for (const auto& l : *links) {
        if (!l.is_array() || l.size() != 3 || !l[0].is_number_unsigned() ||
            !l[1].is_number_unsigned() || !l[2].is_number()) {
          throw ParseError("link must be [source, target, similarity]", line_no);
        }
        r.used_links.push_back(
            {l[0].get<std::size_t>(), l[1].get<std::size_t>(), l[2].get<double>()});
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_score_report(std::ostream& out, ReportFormat format,
                        const ReportHeader& header,
                        std::span<const SyncResult> results,
                        std::span<const BucketReport> by_nalign,
                        std::span<const BucketReport> by_length) {
  write_header(out, format, header);
  const auto excluded = static_cast<std::size_t>(std::count_if(
      results.begin(), results.end(), [](const auto& r) { return r.excluded; }));
  if (format == ReportFormat::table) {
    TextTable t({"segment_id", "rho", "coverage", "combined", "n_align",
                 "length", "excluded", "sequence"});
    for (const auto& r : results) {
      t.add({r.segment_id, opt_fixed(r.rho), opt_fixed(r.coverage),
             opt_fixed(r.combined), std::to_string(r.n_align),
             std::to_string(r.source_length), r.excluded ? "yes" : "no",
             sequence_text(r.sequence)});
    }
    t.print(out);
    write_buckets(out, format, by_nalign, by_length);
    out << "\n# segments=" << results.size()
        << " included=" << results.size() - excluded
        << " excluded=" << excluded << '\n';
  } else {
    for (const auto& r : results) out << format_result_record(r) << '\n';
    write_buckets(out, format, by_nalign, by_length);
    ojson summary;
    summary["kind"] = "summary";
    summary["segments"] = results.size();
    summary["included"] = results.size() - excluded;
    summary["excluded"] = excluded;
    out << summary.dump() << '\n';
  }
}

void write_bucket_report(std::ostream& out, ReportFormat format,
                         const ReportHeader& header,
                         std::span<const BucketReport> by_nalign,
                         std::span<const BucketReport> by_length) {
  write_header(out, format, header);
  write_buckets(out, format, by_nalign, by_length);
}

void write_alignment_eval_report(std::ostream& out, ReportFormat format,
                                 const ReportHeader& header,
                                 std::span<const AlignmentEvalResult> segments,
                                 const AlignmentEvalResult& corpus,
                                 bool percent) {
  write_header(out, format, header);
  if (format == ReportFormat::table) {
    TextTable t({"segment_id", percent ? "AER(%)" : "AER",
                 percent ? "Precision(%)" : "Precision",
                 percent ? "Recall(%)" : "Recall", "F1", "|A|", "|S|", "|P|"});
    auto add_row = [&](const AlignmentEvalResult& r) {
      t.add({r.segment_id, eval_value(r.aer, percent),
             eval_value(r.precision, percent), eval_value(r.recall, percent),
             detail::format_fixed(r.f1, percent ? 3 : 4),
             std::to_string(r.counts.predicted), std::to_string(r.counts.sure),
             std::to_string(r.counts.possible)});
    };
    for (const auto& r : segments) add_row(r);
    add_row(corpus);
    t.print(out);
    if (corpus.precision_undefined) {
      out << "# warning: no predicted links; precision reported as 0\n";
    }
    if (corpus.recall_undefined) {
      out << "# warning: no sure gold links; recall reported as 0\n";
    }
    return;
  }
  auto record = [&](const AlignmentEvalResult& r, const char* kind) {
    ojson obj;
    obj["kind"] = kind;
    obj["segment_id"] = r.segment_id;
    obj["aer"] = percent ? 100.0 * r.aer : r.aer;
    obj["precision"] = percent ? 100.0 * r.precision : r.precision;
    obj["recall"] = percent ? 100.0 * r.recall : r.recall;
    obj["f1"] = r.f1;
    obj["predicted"] = r.counts.predicted;
    obj["sure"] = r.counts.sure;
    obj["possible"] = r.counts.possible;
    obj["precision_undefined"] = r.precision_undefined;
    obj["recall_undefined"] = r.recall_undefined;
    out << obj.dump() << '\n';
  };
  for (const auto& r : segments) record(r, "segment");
  record(corpus, "corpus");
}

void write_correlation_report(std::ostream& out, ReportFormat format,
                              const ReportHeader& header,
                              std::span<const CorrelationResult> overall,
                              std::span<const LengthBreakdown> breakdown) {
  write_header(out, format, header);
  if (format == ReportFormat::table) {
    TextTable t({"metric", "pearson_r", "n", "skipped", "note"});
    for (const auto& c : overall) {
      t.add({c.metric_name, opt_fixed(c.r), std::to_string(c.n_points),
             std::to_string(c.skipped), c.note.empty() ? "-" : c.note});
    }
    t.print(out);
    if (breakdown.empty()) return;
    out << "\n## pearson r by source length\n";
    std::vector<std::string> head{"length"};
    for (const auto& b : breakdown) {
      head.push_back(std::string(to_string(b.field)) + " (n)");
    }
    TextTable bt(std::move(head));
    const std::size_t rows = breakdown.front().buckets.size();
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<std::string> row{breakdown.front().buckets[i].bucket_key};
      for (const auto& b : breakdown) {
        const auto& cell = b.buckets[i];
        row.push_back(opt_fixed(cell.r, 3) + " (" + std::to_string(cell.n_points) +
                      ")");
      }
      bt.add(std::move(row));
    }
    bt.print(out);
    return;
  }
  for (const auto& c : overall) {
    ojson obj;
    obj["kind"] = "correlation";
    obj["metric"] = c.metric_name;
    obj["r"] = opt_json(c.r);
    obj["n"] = c.n_points;
    obj["skipped"] = c.skipped;
    obj["note"] = c.note;
    out << obj.dump() << '\n';
  }
  for (const auto& b : breakdown) {
    for (const auto& cell : b.buckets) {
      ojson obj;
      obj["kind"] = "length_correlation";
      obj["metric"] = std::string(to_string(b.field));
      obj["bucket"] = cell.bucket_key;
      obj["r"] = opt_json(cell.r);
      obj["n"] = cell.n_points;
      out << obj.dump() << '\n';
    }
  }
}

}  // namespace synchro
