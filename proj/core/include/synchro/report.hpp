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

// Report writers. Two layouts: "table" (aligned text, "#" header lines) and
// "records" (one JSON object per line, tagged by "kind"). Undefined values
// print as "n/a" in tables and null in records. Output carries no
// timestamps, so identical inputs give byte-identical reports.

#ifndef SYNCHRO_REPORT_HPP_
#define SYNCHRO_REPORT_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "synchro/eval.hpp"
#include "synchro/metrics.hpp"

namespace synchro {

enum class ReportFormat { table, records };

std::optional<ReportFormat> report_format_from_string(std::string_view text);

// Echoed at the top of every report.
struct ReportHeader {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
};

std::string format_result_record(const SyncResult& result);

// Reads the "segment" records of a records-format score report; other kinds
// are skipped. Throws ParseError on anything that is not a JSON object.
std::vector<SyncResult> parse_results(std::istream& in);

void write_score_report(std::ostream& out, ReportFormat format,
                        const ReportHeader& header,
                        std::span<const SyncResult> results,
                        std::span<const BucketReport> by_nalign,
                        std::span<const BucketReport> by_length);

void write_bucket_report(std::ostream& out, ReportFormat format,
                         const ReportHeader& header,
                         std::span<const BucketReport> by_nalign,
                         std::span<const BucketReport> by_length);

// With percent, AER/precision/recall print as percentages and F1 stays a
// fraction.
void write_alignment_eval_report(std::ostream& out, ReportFormat format,
                                 const ReportHeader& header,
                                 std::span<const AlignmentEvalResult> segments,
                                 const AlignmentEvalResult& corpus, bool percent);

struct LengthBreakdown {
  MetricField field;
  std::vector<BucketCorrelation> buckets;
};

void write_correlation_report(std::ostream& out, ReportFormat format,
                              const ReportHeader& header,
                              std::span<const CorrelationResult> overall,
                              std::span<const LengthBreakdown> breakdown);

}  // namespace synchro

#endif  // SYNCHRO_REPORT_HPP_
