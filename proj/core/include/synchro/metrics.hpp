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

// Per-segment word order synchronization scores.
//
// Synchro: greedy alignment, reliability filters, one-to-one reduction, then
// Spearman's rho over the source ranks read in target order.
// Combined: the same rho computed on the intersection of greedy and external
// alignments, multiplied by the fraction of source content words that keep
// at least one link.

#ifndef SYNCHRO_METRICS_HPP_
#define SYNCHRO_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synchro/align.hpp"
#include "synchro/types.hpp"

namespace synchro {

enum class Mode { synchro, combined };

std::string_view to_string(Mode mode);
std::optional<Mode> mode_from_string(std::string_view text);

// How min_n_align is compared against n_align.
enum class NAlignRule { at_least, more_than };

std::string_view to_string(NAlignRule rule);

struct MetricConfig {
  Mode mode = Mode::synchro;
  FilterConfig filter;
  std::size_t min_n_align = 2;
  NAlignRule n_align_rule = NAlignRule::at_least;
  // The combined pipeline applies only the function-word filter unless set.
  bool theta_in_combined = false;

  bool passes_min_n_align(std::size_t n_align) const {
    return n_align_rule == NAlignRule::at_least ? n_align >= min_n_align
                                                : n_align > min_n_align;
  }
};

struct SyncResult {
  std::string segment_id;
  std::optional<double> rho;       // defined iff n_align >= 2
  std::optional<double> coverage;  // undefined when no source content words
  std::optional<double> combined;  // rho * coverage when both defined
  std::size_t n_align = 0;         // distinct source words ranked
  std::size_t source_length = 0;   // source word count
  bool excluded = false;           // rho undefined or n_align below minimum
  std::vector<int> sequence;       // 1-based dense source ranks, target order
  std::vector<AlignmentLink> used_links;

  bool operator==(const SyncResult&) const = default;
};

// 1-based source ranks in target order. The surviving source indices are
// renumbered densely 1..k by source position. Throws std::invalid_argument
// if a source index repeats.
std::vector<int> source_index_sequence(std::span<const AlignmentLink> links);

// 1 - 6 * sum(d_i^2) / (k (k^2 - 1)), d_i = seq_i - i. nullopt for k < 2;
// std::invalid_argument if seq is not a permutation of 1..k.
std::optional<double> spearman_rho(std::span<const int> seq);

// (concordant - discordant) / (k (k - 1) / 2). Same domain as spearman_rho.
std::optional<double> kendall_tau(std::span<const int> seq);

// n / N over source content words (is_function == false); n counts those
// with at least one link. nullopt when N is 0.
std::optional<double> content_coverage(const Segment& segment,
                                       const AlignmentSet& links);

std::optional<double> combined_score(std::optional<double> rho,
                                     std::optional<double> coverage);

struct SegmentInputs {
  const Segment& segment;
  const SegmentEmbeddings* embeddings = nullptr;
  const AlignmentSet* external = nullptr;
};

// Alignment stage of score_segment: the filtered link set whose one-to-one
// reduction gets ranked. Throws ConsistencyError on missing inputs.
AlignmentSet filtered_alignment(const SegmentInputs& inputs,
                                const MetricConfig& cfg);

// Same pipeline without the filters: greedy links in synchro mode, the
// greedy/external intersection in combined mode.
AlignmentSet raw_alignment(const SegmentInputs& inputs,
                           const MetricConfig& cfg);

SyncResult score_segment(const SegmentInputs& inputs, const MetricConfig& cfg);

// Scores every corpus segment in order. externals, when non-empty, must be
// bound to the corpus (same order and ids).
std::vector<SyncResult> score_corpus(std::span<const Segment> corpus,
                                     const EmbeddingTable& embeddings,
                                     std::span<const AlignmentSet> externals,
                                     const MetricConfig& cfg);

}  // namespace synchro

#endif  // SYNCHRO_METRICS_HPP_
