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

#include "synchro/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "synchro/error.hpp"

namespace synchro {

namespace {

void check_permutation(std::span<const int> seq) {
  std::vector<bool> seen(seq.size() + 1, false);
  for (int v : seq) {
    if (v < 1 || static_cast<std::size_t>(v) > seq.size() || seen[v]) {
      throw std::invalid_argument("sequence is not a permutation of 1..k");
    }
    seen[v] = true;
  }
}

// Counts inversions with a bottom-up merge sort.
std::int64_t count_inversions(std::vector<int> v) {
  std::int64_t inversions = 0;
  std::vector<int> buf(v.size());
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, v.size());
      const std::size_t hi = std::min(lo + 2 * width, v.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[i] <= v[j]) {
          buf[k++] = v[i++];
        } else {
          inversions += static_cast<std::int64_t>(mid - i);
          buf[k++] = v[j++];
        }
      }
      while (i < mid) buf[k++] = v[i++];
      while (j < hi) buf[k++] = v[j++];
    }
    std::swap(v, buf);
  }
  return inversions;
}

}  // namespace

std::string_view to_string(Mode mode) {
  return mode == Mode::synchro ? "synchro" : "combined";
}

std::optional<Mode> mode_from_string(std::string_view text) {
  if (text == "synchro") return Mode::synchro;
  if (text == "combined") return Mode::combined;
  return std::nullopt;
}

std::string_view to_string(NAlignRule rule) {
  return rule == NAlignRule::at_least ? "ge" : "gt";
}

std::vector<int> source_index_sequence(std::span<const AlignmentLink> links) {
  std::vector<std::size_t> sources;
  sources.reserve(links.size());
  for (const auto& l : links) sources.push_back(l.source_index);
  std::vector<std::size_t> sorted = sources;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("links are not one-to-one in source index");
  }
  std::vector<int> seq;
  seq.reserve(sources.size());
  for (auto s : sources) {
    auto rank = std::lower_bound(sorted.begin(), sorted.end(), s) - sorted.begin();
    seq.push_back(static_cast<int>(rank) + 1);
  }
  return seq;
}

std::optional<double> spearman_rho(std::span<const int> seq) {
  check_permutation(seq);
  const auto k = static_cast<std::int64_t>(seq.size());
  if (k < 2) return std::nullopt;
  std::int64_t sum_sq = 0;
  for (std::int64_t i = 0; i < k; ++i) {
    const std::int64_t d = seq[i] - (i + 1);
    sum_sq += d * d;
  }
  // Exact integer numerator and denominator, one rounding at the division.
  const std::int64_t den = k * (k * k - 1);
  const std::int64_t num = den - 6 * sum_sq;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> kendall_tau(std::span<const int> seq) {
  check_permutation(seq);
  const auto k = static_cast<std::int64_t>(seq.size());
  if (k < 2) return std::nullopt;
  const std::int64_t pairs = k * (k - 1) / 2;
  const std::int64_t discordant =
      count_inversions(std::vector<int>(seq.begin(), seq.end()));
  const std::int64_t concordant = pairs - discordant;
  return static_cast<double>(concordant - discordant) /
         static_cast<double>(pairs);
}

std::optional<double> content_coverage(const Segment& segment,
                                       const AlignmentSet& links) {
  std::set<std::size_t> linked;
  for (const auto& l : links.links()) linked.insert(l.source_index);
  std::size_t total = 0;
  std::size_t covered = 0;
  for (std::size_t i = 0; i < segment.source_words.size(); ++i) {
    if (segment.source_words[i].is_function) continue;
    ++total;
    if (linked.contains(i)) ++covered;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(covered) / static_cast<double>(total);
}

std::optional<double> combined_score(std::optional<double> rho,
                                     std::optional<double> coverage) {
  if (!rho || !coverage) return std::nullopt;
  return *rho * *coverage;
}

AlignmentSet raw_alignment(const SegmentInputs& inputs,
                           const MetricConfig& cfg) {
  const Segment& seg = inputs.segment;
  if (!inputs.embeddings) {
    throw ConsistencyError("no embeddings for segment " + seg.id);
  }
  AlignmentSet greedy = greedy_align(inputs.embeddings->source,
                                     inputs.embeddings->target, seg);
  if (cfg.mode == Mode::synchro) return greedy;
  if (!inputs.external) {
    throw ConsistencyError("no external alignment for segment " + seg.id);
  }
  return intersect(greedy, *inputs.external);
}

AlignmentSet filtered_alignment(const SegmentInputs& inputs,
                                const MetricConfig& cfg) {
  FilterConfig filter = cfg.filter;
  if (cfg.mode == Mode::combined && !cfg.theta_in_combined) {
    filter.use_threshold = false;
  }
  return apply_filters(raw_alignment(inputs, cfg), inputs.segment, filter);
}

SyncResult score_segment(const SegmentInputs& inputs, const MetricConfig& cfg) {
  const AlignmentSet filtered = filtered_alignment(inputs, cfg);

  SyncResult r;
  r.segment_id = inputs.segment.id;
  r.source_length = inputs.segment.source_words.size();
  r.used_links = dedupe_for_ranking(filtered);
  r.sequence = source_index_sequence(r.used_links);
  r.n_align = r.used_links.size();
  r.rho = spearman_rho(r.sequence);
  r.coverage = content_coverage(inputs.segment, filtered);
  r.combined = combined_score(r.rho, r.coverage);
  r.excluded = !r.rho || !cfg.passes_min_n_align(r.n_align);
  return r;
}

std::vector<SyncResult> score_corpus(std::span<const Segment> corpus,
                                     const EmbeddingTable& embeddings,
                                     std::span<const AlignmentSet> externals,
                                     const MetricConfig& cfg) {
  if (!externals.empty() && externals.size() != corpus.size()) {
    throw ConsistencyError("external alignment count " +
                           std::to_string(externals.size()) +
                           " does not match corpus size " +
                           std::to_string(corpus.size()));
  }
  std::vector<SyncResult> results;
  results.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Segment& seg = corpus[i];
    auto it = embeddings.find(seg.id);
    SegmentInputs inputs{seg, it == embeddings.end() ? nullptr : &it->second,
                         externals.empty() ? nullptr : &externals[i]};
    if (inputs.external && inputs.external->segment_id() != seg.id) {
      throw ConsistencyError("external alignment " +
                             inputs.external->segment_id() +
                             " is not bound to segment " + seg.id);
    }
    results.push_back(score_segment(inputs, cfg));
  }
  return results;
}

}  // namespace synchro
