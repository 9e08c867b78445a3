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

#include "synchro/types.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "synchro/error.hpp"

namespace synchro {

namespace {

std::string with_line(const std::string& detail,
                      std::optional<std::size_t> line) {
  if (!line) return detail;
  return "line " + std::to_string(*line) + ": " + detail;
}

bool pair_less(const AlignmentLink& a, const AlignmentLink& b) {
  return a.pair() < b.pair();
}

}  // namespace

Error::Error(std::string detail, std::optional<std::size_t> line)
    : std::runtime_error(with_line(detail, line)),
      detail_(std::move(detail)),
      line_(line) {}

std::string_view to_string(Side side) {
  return side == Side::source ? "source" : "target";
}

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::greedy:
      return "greedy";
    case Provenance::external:
      return "external";
    case Provenance::intersected:
      return "intersected";
    case Provenance::filtered:
      return "filtered";
  }
  return "unknown";
}

std::string_view to_string(ScoreKind kind) {
  return kind == ScoreKind::error_based ? "error_based" : "accuracy_based";
}

std::optional<ScoreKind> score_kind_from_string(std::string_view text) {
  if (text == "error_based") return ScoreKind::error_based;
  if (text == "accuracy_based") return ScoreKind::accuracy_based;
  return std::nullopt;
}

const std::vector<Word>& Segment::words(Side side) const {
  return side == Side::source ? source_words : target_words;
}

std::size_t Segment::subword_count(Side side) const {
  const auto& w = words(side);
  return w.empty() ? 0 : w.back().span.end;
}

std::optional<std::size_t> Segment::word_of_subword(Side side,
                                                    std::size_t subword) const {
  const auto& w = words(side);
  // Spans are monotone, so the candidate is the last word starting at or
  // before the subword.
  auto it = std::upper_bound(
      w.begin(), w.end(), subword,
      [](std::size_t s, const Word& word) { return s < word.span.begin; });
  if (it == w.begin()) return std::nullopt;
  --it;
  if (!it->span.contains(subword)) return std::nullopt;
  return static_cast<std::size_t>(it - w.begin());
}

EmbeddingMatrix::EmbeddingMatrix(std::string segment_id, Side side,
                                 std::size_t dim, std::vector<double> values)
    : segment_id_(std::move(segment_id)),
      side_(side),
      dim_(dim),
      values_(std::move(values)) {
  if (dim_ == 0) throw std::invalid_argument("embedding dim must be positive");
  if (values_.size() % dim_ != 0) {
    throw std::invalid_argument("embedding values not a multiple of dim");
  }
}

AlignmentSet::AlignmentSet(std::string segment_id, Provenance provenance)
    : segment_id_(std::move(segment_id)), provenance_(provenance) {}

AlignmentSet::AlignmentSet(std::string segment_id, Provenance provenance,
                           std::vector<AlignmentLink> links)
    : segment_id_(std::move(segment_id)),
      provenance_(provenance),
      links_(std::move(links)) {
  // Stable sort keeps the first occurrence ahead among equal pairs; the merge
  // below then keeps the max similarity regardless.
  std::stable_sort(links_.begin(), links_.end(), pair_less);
  std::vector<AlignmentLink> merged;
  merged.reserve(links_.size());
  for (const auto& link : links_) {
    if (!merged.empty() && merged.back().pair() == link.pair()) {
      merged.back().similarity =
          std::max(merged.back().similarity, link.similarity);
    } else {
      merged.push_back(link);
    }
  }
  links_ = std::move(merged);
}

void AlignmentSet::add(const AlignmentLink& link) {
  auto it = std::lower_bound(links_.begin(), links_.end(), link, pair_less);
  if (it != links_.end() && it->pair() == link.pair()) {
    it->similarity = std::max(it->similarity, link.similarity);
    return;
  }
  links_.insert(it, link);
}

const AlignmentLink* AlignmentSet::find(WordPair pair) const {
  AlignmentLink probe{pair.source, pair.target, 0.0};
  auto it = std::lower_bound(links_.begin(), links_.end(), probe, pair_less);
  if (it != links_.end() && it->pair() == pair) return &*it;
  return nullptr;
}

std::set<WordPair> AlignmentSet::pairs() const {
  std::set<WordPair> out;
  for (const auto& link : links_) out.insert(link.pair());
  return out;
}

}  // namespace synchro
