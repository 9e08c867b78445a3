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

// Cross-lingual alignment: greedy cosine matching of target subwords to
// source subwords, projection to word level, intersection with an external
// aligner, and the reliability filters applied before rank correlation.
//
// Direction: every target unit looks for its best source unit, so the
// resulting source indices can be read off in target order.

#ifndef SYNCHRO_ALIGN_HPP_
#define SYNCHRO_ALIGN_HPP_

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "synchro/types.hpp"

namespace synchro {

// ADP AUX CCONJ SCONJ DET PART PRON PUNCT SYM
std::set<std::string> default_function_pos();

struct FilterConfig {
  double theta = 0.71;
  // Links with similarity < theta are dropped; equal is kept.
  bool use_threshold = true;
  std::set<std::string> function_pos = default_function_pos();
  bool drop_function_words = true;

  // Throws std::invalid_argument on a non-finite or out-of-[0,1] theta, or an
  // empty function_pos while drop_function_words is set.
  void validate() const;
};

struct SubwordLink {
  std::size_t source_subword = 0;
  std::size_t target_subword = 0;
  double similarity = 0.0;
};

// Cosine similarity. Throws ConsistencyError on a zero-norm input or a
// length mismatch.
double cosine(std::span<const double> a, std::span<const double> b);

// One link per target subword: argmax over source subwords of the cosine,
// ties resolved to the lowest source subword.
std::vector<SubwordLink> greedy_subword_links(const EmbeddingMatrix& source,
                                              const EmbeddingMatrix& target);

// A word pair is linked iff at least one subword link falls inside both
// spans; its similarity is the max over those subword links. Subwords that
// sit in gaps between word spans are ignored.
AlignmentSet subwords_to_words(std::span<const SubwordLink> links,
                               const Segment& segment);

// greedy_subword_links followed by subwords_to_words. Matrices must match
// the segment's subword counts and share a dim.
AlignmentSet greedy_align(const EmbeddingMatrix& source,
                          const EmbeddingMatrix& target,
                          const Segment& segment);

// Pairs present in both sets; similarity is the min of the two.
AlignmentSet intersect(const AlignmentSet& a, const AlignmentSet& b);

// Drops links whose SOURCE word is a function word (is_function or pos in
// cfg.function_pos) when cfg.drop_function_words, and links below theta
// when cfg.use_threshold.
AlignmentSet apply_filters(const AlignmentSet& alignment,
                           const Segment& segment, const FilterConfig& cfg);

// Reduces a many-to-many set to a one-to-one list sorted by target index.
// First each source word keeps its best link (tie: lowest target), then each
// target word keeps its best remaining link (tie: lowest source).
std::vector<AlignmentLink> dedupe_for_ranking(const AlignmentSet& alignment);

}  // namespace synchro

#endif  // SYNCHRO_ALIGN_HPP_
