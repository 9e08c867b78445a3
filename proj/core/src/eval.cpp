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

#include "synchro/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "synchro/error.hpp"

namespace synchro {

namespace {

// Sums in ascending order so the result does not depend on input order.
std::optional<double> canonical_mean(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

template <typename Pred>
BucketReport make_bucket(std::string key, std::span<const SyncResult> results,
                         Pred&& in_bucket) {
  BucketReport b;
  b.bucket_key = std::move(key);
  std::vector<double> rho, coverage, combined;
  for (const auto& r : results) {
    if (!in_bucket(r)) continue;
    if (r.excluded) {
      ++b.excluded_count;
      continue;
    }
    ++b.segment_count;
    if (r.rho) rho.push_back(*r.rho);
    if (r.coverage) coverage.push_back(*r.coverage);
    if (r.combined) combined.push_back(*r.combined);
  }
  b.mean_rho = canonical_mean(std::move(rho));
  b.mean_coverage = canonical_mean(std::move(coverage));
  b.mean_combined = canonical_mean(std::move(combined));
  return b;
}

std::optional<double> pearson_or_nullopt(std::span<const double> xs,
                                         std::span<const double> ys) {
  if (xs.size() < 2) return std::nullopt;
  return pearson(xs, ys).r;
}

}  // namespace

AlignmentCounts& AlignmentCounts::operator+=(const AlignmentCounts& o) {
  predicted += o.predicted;
  sure += o.sure;
  possible += o.possible;
  predicted_sure += o.predicted_sure;
  predicted_possible += o.predicted_possible;
  return *this;
}

AlignmentEvalResult evaluate_counts(const AlignmentCounts& c) {
  AlignmentEvalResult r;
  r.counts = c;
  const auto a = static_cast<double>(c.predicted);
  const auto s = static_cast<double>(c.sure);
  if (c.predicted == 0) {
    r.precision_undefined = true;
  } else {
    r.precision = static_cast<double>(c.predicted_possible) / a;
  }
  if (c.sure == 0) {
    r.recall_undefined = true;
  } else {
    r.recall = static_cast<double>(c.predicted_sure) / s;
  }
  const double pr = r.precision + r.recall;
  r.f1 = pr > 0.0 ? 2.0 * r.precision * r.recall / pr : 0.0;
  if (c.predicted + c.sure > 0) {
    r.aer = 1.0 - static_cast<double>(c.predicted_sure + c.predicted_possible) /
                      (a + s);
  }
  return r;
}

AlignmentEvalResult aer(const AlignmentSet& predicted, const GoldAlignment& gold) {
  if (predicted.segment_id() != gold.segment_id) {
    throw ConsistencyError("predicted alignment " + predicted.segment_id() +
                           " does not match gold segment " + gold.segment_id);
  }
  AlignmentCounts c;
  c.predicted = predicted.size();
  c.sure = gold.sure.size();
  c.possible = gold.possible.size();
  for (const auto& link : predicted.links()) {
    if (gold.sure.contains(link.pair())) ++c.predicted_sure;
    if (gold.possible.contains(link.pair()) || gold.sure.contains(link.pair())) {
      ++c.predicted_possible;
    }
  }
  auto r = evaluate_counts(c);
  r.segment_id = gold.segment_id;
  return r;
}

AlignmentEvalResult aer_corpus(std::span<const AlignmentSet> predicted,
                               std::span<const GoldAlignment> gold) {
  if (predicted.size() != gold.size()) {
    throw ConsistencyError("line-count mismatch: " +
                           std::to_string(predicted.size()) +
                           " predicted vs " + std::to_string(gold.size()) +
                           " gold");
  }
  AlignmentCounts total;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    total += aer(predicted[i], gold[i]).counts;
  }
  auto r = evaluate_counts(total);
  r.segment_id = "corpus";
  return r;
}

CorrelationResult pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw ConsistencyError("pearson: series lengths differ (" +
                           std::to_string(xs.size()) + " vs " +
                           std::to_string(ys.size()) + ")");
  }
  if (xs.size() < 2) {
    throw ConsistencyError("pearson: need at least 2 points, got " +
                           std::to_string(xs.size()));
  }
  const auto n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  CorrelationResult out;
  out.n_points = xs.size();
  if (sxx == 0.0 || syy == 0.0) {
    out.note = "undefined: zero variance";
    return out;
  }
  out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return out;
}

std::string_view to_string(MetricField field) {
  switch (field) {
    case MetricField::rho:
      return "rho";
    case MetricField::coverage:
      return "coverage";
    case MetricField::combined:
      return "combined";
  }
  return "unknown";
}

std::optional<MetricField> metric_field_from_string(std::string_view text) {
  if (text == "rho") return MetricField::rho;
  if (text == "coverage") return MetricField::coverage;
  if (text == "combined") return MetricField::combined;
  return std::nullopt;
}

std::optional<double> field_value(const SyncResult& result, MetricField field) {
  switch (field) {
    case MetricField::rho:
      return result.rho;
    case MetricField::coverage:
      return result.coverage;
    case MetricField::combined:
      return result.combined;
  }
  return std::nullopt;
}

std::vector<std::size_t> default_nalign_thresholds() { return {2, 3, 4, 5, 6}; }

std::vector<std::size_t> default_length_thresholds() { return {15, 20, 25, 30}; }

std::vector<BucketReport> bucket_by_nalign(std::span<const SyncResult> results,
                                           std::span<const std::size_t> thresholds) {
  std::vector<BucketReport> out;
  out.reserve(thresholds.size());
  for (auto t : thresholds) {
    out.push_back(make_bucket("n_align>=" + std::to_string(t), results,
                              [t](const SyncResult& r) { return r.n_align >= t; }));
  }
  return out;
}

std::vector<LengthBucket> length_buckets(std::span<const std::size_t> thresholds) {
  std::vector<LengthBucket> out;
  out.push_back({"All", 0, std::nullopt});
  if (thresholds.empty()) return out;
  out.push_back({"<" + std::to_string(thresholds.front()), 0, thresholds.front()});
  for (auto t : thresholds) out.push_back({">=" + std::to_string(t), t, std::nullopt});
  return out;
}

std::vector<BucketReport> bucket_by_length(std::span<const SyncResult> results,
                                           std::span<const std::size_t> thresholds) {
  std::vector<BucketReport> out;
  for (const auto& b : length_buckets(thresholds)) {
    out.push_back(make_bucket(b.key, results, [&b](const SyncResult& r) {
      return b.contains(r.source_length);
    }));
  }
  return out;
}

JoinedSeries join_judgments(std::span<const SyncResult> results,
                            std::span<const JudgedSegment> judgments,
                            MetricField field) {
  std::map<std::string, const SyncResult*, std::less<>> by_id;
  for (const auto& r : results) by_id.emplace(r.segment_id, &r);

  // Canonical order (by segment id) keeps the sums order-independent.
  std::vector<const JudgedSegment*> ordered;
  for (const auto& j : judgments) ordered.push_back(&j);
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    return a->segment_id < b->segment_id;
  });

  JoinedSeries s;
  for (const auto* j : ordered) {
    auto it = by_id.find(j->segment_id);
    if (it == by_id.end()) {
      throw ConsistencyError("judgment for unknown segment " + j->segment_id);
    }
    if (j->kind == ScoreKind::error_based) s.error_based = true;
    const SyncResult& r = *it->second;
    const auto value = field_value(r, field);
    if (r.excluded || !value) {
      ++s.skipped;
      continue;
    }
    s.ids.push_back(r.segment_id);
    s.metric.push_back(*value);
    s.human.push_back(j->human_score);
    s.lengths.push_back(r.source_length);
  }
  return s;
}

CorrelationResult correlate_with_judgments(std::span<const SyncResult> results,
                                           std::span<const JudgedSegment> judgments,
                                           MetricField field) {
  const auto s = join_judgments(results, judgments, field);
  if (s.metric.size() < 2) {
    throw ConsistencyError("correlation of " + std::string(to_string(field)) +
                           " needs at least 2 judged segments with a value, got " +
                           std::to_string(s.metric.size()));
  }
  auto out = pearson(s.metric, s.human);
  out.metric_name = std::string(to_string(field));
  out.skipped = s.skipped;
  if (s.error_based && out.r) {
    out.note = "error-based judgments: negative r means agreement";
  }
  return out;
}

std::vector<BucketCorrelation> correlate_by_length(
    std::span<const SyncResult> results, std::span<const JudgedSegment> judgments,
    MetricField field, std::span<const std::size_t> thresholds) {
  const auto s = join_judgments(results, judgments, field);
  std::vector<BucketCorrelation> out;
  for (const auto& b : length_buckets(thresholds)) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < s.metric.size(); ++i) {
      if (!b.contains(s.lengths[i])) continue;
      xs.push_back(s.metric[i]);
      ys.push_back(s.human[i]);
    }
    out.push_back({b.key, xs.size(), pearson_or_nullopt(xs, ys)});
  }
  return out;
}

}  // namespace synchro
