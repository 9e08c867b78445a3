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

// Core domain types shared by every module: segments with their subword
// layout, embedding matrices, alignment link sets, gold alignments and human
// judgments.

#ifndef SYNCHRO_TYPES_HPP_
#define SYNCHRO_TYPES_HPP_

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace synchro {

enum class Side { source, target };

std::string_view to_string(Side side);

// Half-open range [begin, end) into one side's subword sequence.
struct SubwordSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t subword) const {
    return subword >= begin && subword < end;
  }
  bool operator==(const SubwordSpan&) const = default;
};

struct Word {
  std::string surface;
  std::string pos;  // UPOS-style tag; empty when the producer had none
  bool is_function = false;
  SubwordSpan span;

  bool operator==(const Word&) const = default;
};

// One aligned source/target unit pair. Word indices are the 0-based
// positions in source_words / target_words.
struct Segment {
  std::string id;
  std::vector<Word> source_words;
  std::vector<Word> target_words;

  const std::vector<Word>& words(Side side) const;

  // Number of subwords on a side, i.e. the end of the last word's span.
  std::size_t subword_count(Side side) const;

  // Index of the word whose span holds the subword, or nullopt when the
  // subword sits in a gap between spans.
  std::optional<std::size_t> word_of_subword(Side side,
                                             std::size_t subword) const;

  bool operator==(const Segment&) const = default;
};

// Row-major matrix with one embedding vector per subword of one side.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  // Throws std::invalid_argument when dim is zero or values.size() is not a
  // multiple of dim.
  EmbeddingMatrix(std::string segment_id, Side side, std::size_t dim,
                  std::vector<double> values);

  const std::string& segment_id() const { return segment_id_; }
  Side side() const { return side_; }
  std::size_t dim() const { return dim_; }
  std::size_t rows() const { return dim_ == 0 ? 0 : values_.size() / dim_; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }

 private:
  std::string segment_id_;
  Side side_ = Side::source;
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

struct SegmentEmbeddings {
  EmbeddingMatrix source;
  EmbeddingMatrix target;

  const EmbeddingMatrix& side(Side s) const {
    return s == Side::source ? source : target;
  }
};

using EmbeddingTable = std::map<std::string, SegmentEmbeddings, std::less<>>;

// A (source word, target word) index pair.
struct WordPair {
  std::size_t source = 0;
  std::size_t target = 0;

  auto operator<=>(const WordPair&) const = default;
};

struct AlignmentLink {
  std::size_t source_index = 0;
  std::size_t target_index = 0;
  double similarity = 0.0;

  WordPair pair() const { return {source_index, target_index}; }
  bool operator==(const AlignmentLink&) const = default;
};

enum class Provenance { greedy, external, intersected, filtered };

std::string_view to_string(Provenance provenance);

// Word-level links of one segment, at most one per (source, target) pair.
// Links are kept sorted by (source_index, target_index).
class AlignmentSet {
 public:
  AlignmentSet() = default;
  AlignmentSet(std::string segment_id, Provenance provenance);
  // Duplicate pairs collapse onto the highest similarity.
  AlignmentSet(std::string segment_id, Provenance provenance,
               std::vector<AlignmentLink> links);

  const std::string& segment_id() const { return segment_id_; }
  void set_segment_id(std::string id) { segment_id_ = std::move(id); }
  Provenance provenance() const { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = p; }

  // Adds a link; if the pair is already present the higher similarity wins.
  void add(const AlignmentLink& link);

  const AlignmentLink* find(WordPair pair) const;
  bool contains(WordPair pair) const { return find(pair) != nullptr; }

  std::span<const AlignmentLink> links() const { return links_; }
  std::size_t size() const { return links_.size(); }
  bool empty() const { return links_.empty(); }
  std::set<WordPair> pairs() const;

 private:
  std::string segment_id_;
  Provenance provenance_ = Provenance::external;
  std::vector<AlignmentLink> links_;
};

// Reference alignment with sure links S and possible links P, S ⊆ P.
struct GoldAlignment {
  std::string segment_id;
  std::set<WordPair> sure;
  std::set<WordPair> possible;
};

enum class ScoreKind { error_based, accuracy_based };

std::string_view to_string(ScoreKind kind);
std::optional<ScoreKind> score_kind_from_string(std::string_view text);

struct JudgedSegment {
  std::string segment_id;
  double human_score = 0.0;  // MQM error score for error_based: lower is better
  ScoreKind kind = ScoreKind::error_based;
};

}  // namespace synchro

#endif  // SYNCHRO_TYPES_HPP_
