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

// Corpus-level evaluation: alignment quality against sure/possible gold
// links, Pearson correlation with human judgments, and bucketed averages.
// All statistics are fractions; percent display is a report concern.

#ifndef SYNCHRO_EVAL_HPP_
#define SYNCHRO_EVAL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synchro/metrics.hpp"
#include "synchro/types.hpp"

namespace synchro {

struct AlignmentCounts {
  std::size_t predicted = 0;         // |A|
  std::size_t sure = 0;              // |S|
  std::size_t possible = 0;          // |P|
  std::size_t predicted_sure = 0;    // |A ∩ S|
  std::size_t predicted_possible = 0;  // |A ∩ P|

  AlignmentCounts& operator+=(const AlignmentCounts& o);
};

struct AlignmentEvalResult {
  std::string segment_id;
  double aer = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  AlignmentCounts counts;
  bool precision_undefined = false;  // |A| == 0, reported as 0
  bool recall_undefined = false;     // |S| == 0, reported as 0
};

// AER = 1 - (|A∩S| + |A∩P|) / (|A| + |S|), P = |A∩P| / |A|,
// R = |A∩S| / |S|, F1 = 2PR / (P + R) or 0. With |A| + |S| == 0 the AER is 0.
AlignmentEvalResult evaluate_counts(const AlignmentCounts& counts);

// Throws ConsistencyError when the segment ids differ.
AlignmentEvalResult aer(const AlignmentSet& predicted,
                        const GoldAlignment& gold);

// Micro-averaged over the corpus: counts are summed before the ratios.
AlignmentEvalResult aer_corpus(std::span<const AlignmentSet> predicted,
                               std::span<const GoldAlignment> gold);

struct CorrelationResult {
  std::string metric_name;
  std::size_t n_points = 0;
  std::optional<double> r;  // nullopt when either series has zero variance
  std::size_t skipped = 0;  // joined segments without a usable metric value
  std::string note;
};

// Sample Pearson r. Throws ConsistencyError on a length mismatch or fewer
// than two points.
CorrelationResult pearson(std::span<const double> xs, std::span<const double> ys);

enum class MetricField { rho, coverage, combined };

std::string_view to_string(MetricField field);
std::optional<MetricField> metric_field_from_string(std::string_view text);
std::optional<double> field_value(const SyncResult& result, MetricField field);

struct BucketReport {
  std::string bucket_key;
  std::optional<double> mean_rho;
  std::optional<double> mean_coverage;
  std::optional<double> mean_combined;
  std::size_t segment_count = 0;   // included segments
  std::size_t excluded_count = 0;  // matched the bucket but were excluded
};

// Bucket t holds results with n_align >= t. Means cover included results
// only.
std::vector<BucketReport> bucket_by_nalign(std::span<const SyncResult> results,
                                           std::span<const std::size_t> thresholds);

std::vector<std::size_t> default_nalign_thresholds();  // 2 3 4 5 6

// Rows "All", "<t0", ">=t0", ">=t1", ... on source word count.
std::vector<BucketReport> bucket_by_length(std::span<const SyncResult> results,
                                           std::span<const std::size_t> thresholds);

std::vector<std::size_t> default_length_thresholds();  // 15 20 25 30

// Predicate form of the length buckets, shared with the correlation
// breakdown. Keys match bucket_by_length.
struct LengthBucket {
  std::string key;
  std::size_t min_length = 0;
  std::optional<std::size_t> below;  // exclusive upper bound
  bool contains(std::size_t length) const {
    return length >= min_length && (!below || length < *below);
  }
};
std::vector<LengthBucket> length_buckets(std::span<const std::size_t> thresholds);

struct JoinedSeries {
  std::vector<std::string> ids;
  std::vector<double> metric;
  std::vector<double> human;
  std::vector<std::size_t> lengths;
  std::size_t skipped = 0;
  bool error_based = false;
};

// Pairs each judgment with the result of the same segment. Excluded results
// and undefined metric values are skipped and counted. Judgments naming an
// unknown segment raise ConsistencyError.
JoinedSeries join_judgments(std::span<const SyncResult> results,
                            std::span<const JudgedSegment> judgments,
                            MetricField field);

// Pearson r between the metric and the human score. Throws
// ConsistencyError with fewer than two joined points.
CorrelationResult correlate_with_judgments(std::span<const SyncResult> results,
                                           std::span<const JudgedSegment> judgments,
                                           MetricField field);

struct BucketCorrelation {
  std::string bucket_key;
  std::size_t n_points = 0;
  std::optional<double> r;  // nullopt with < 2 points or zero variance
};

std::vector<BucketCorrelation> correlate_by_length(
    std::span<const SyncResult> results, std::span<const JudgedSegment> judgments,
    MetricField field, std::span<const std::size_t> thresholds);

}  // namespace synchro

#endif  // SYNCHRO_EVAL_HPP_
