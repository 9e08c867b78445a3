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

#include "synchro/align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "synchro/error.hpp"

namespace synchro {

namespace {

double norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

std::vector<double> row_norms(const EmbeddingMatrix& m) {
  std::vector<double> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out[r] = norm(m.row(r));
    if (out[r] == 0.0) {
      throw ConsistencyError("zero-norm " + std::string(to_string(m.side())) +
                             " vector at row " + std::to_string(r) +
                             " of segment " + m.segment_id());
    }
  }
  return out;
}

bool is_function_source(const Segment& seg, std::size_t index,
                        const FilterConfig& cfg) {
  if (index >= seg.source_words.size()) {
    throw ConsistencyError("source index " + std::to_string(index) +
                           " out of range for segment " + seg.id);
  }
  const Word& w = seg.source_words[index];
  return w.is_function || cfg.function_pos.contains(w.pos);
}

}  // namespace

std::set<std::string> default_function_pos() {
  return {"ADP", "AUX", "CCONJ", "SCONJ", "DET", "PART", "PRON", "PUNCT", "SYM"};
}

void FilterConfig::validate() const {
  if (!std::isfinite(theta) || theta < 0.0 || theta > 1.0) {
    throw std::invalid_argument("theta must lie in [0, 1]");
  }
  if (drop_function_words && function_pos.empty()) {
    throw std::invalid_argument(
        "function_pos must be nonempty when dropping function words");
  }
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ConsistencyError("cosine of vectors with different lengths");
  }
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) {
    throw ConsistencyError("cosine of a zero-norm vector");
  }
  return dot(a, b) / (na * nb);
}

std::vector<SubwordLink> greedy_subword_links(const EmbeddingMatrix& source,
                                              const EmbeddingMatrix& target) {
  if (source.dim() != target.dim()) {
    throw ConsistencyError("embedding dim mismatch: source " +
                           std::to_string(source.dim()) + ", target " +
                           std::to_string(target.dim()));
  }
  const auto src_norms = row_norms(source);
  const auto tgt_norms = row_norms(target);

  std::vector<SubwordLink> links;
  if (source.rows() == 0) return links;
  links.reserve(target.rows());
  for (std::size_t t = 0; t < target.rows(); ++t) {
    const auto tv = target.row(t);
    std::size_t best = 0;
    double best_sim = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < source.rows(); ++s) {
      const double sim = dot(source.row(s), tv) / (src_norms[s] * tgt_norms[t]);
      if (sim > best_sim) {
        best_sim = sim;
        best = s;
      }
    }
    links.push_back({best, t, best_sim});
  }
  return links;
}

AlignmentSet subwords_to_words(std::span<const SubwordLink> links,
                               const Segment& segment) {
  const std::size_t n_src = segment.subword_count(Side::source);
  const std::size_t n_tgt = segment.subword_count(Side::target);
  AlignmentSet out(segment.id, Provenance::greedy);
  for (const auto& link : links) {
    if (link.source_subword >= n_src || link.target_subword >= n_tgt) {
      throw ConsistencyError(
          "subword link " + std::to_string(link.source_subword) + "-" +
          std::to_string(link.target_subword) + " out of range for segment " +
          segment.id);
    }
    auto ws = segment.word_of_subword(Side::source, link.source_subword);
    auto wt = segment.word_of_subword(Side::target, link.target_subword);
    if (!ws || !wt) continue;
    out.add({*ws, *wt, link.similarity});
  }
  return out;
}

AlignmentSet greedy_align(const EmbeddingMatrix& source,
                          const EmbeddingMatrix& target,
                          const Segment& segment) {
  if (source.rows() != segment.subword_count(Side::source) ||
      target.rows() != segment.subword_count(Side::target)) {
    throw ConsistencyError("embedding rows do not match subword counts of " +
                           segment.id);
  }
  const auto links = greedy_subword_links(source, target);
  return subwords_to_words(links, segment);
}

AlignmentSet intersect(const AlignmentSet& a, const AlignmentSet& b) {
  if (a.segment_id() != b.segment_id()) {
    throw ConsistencyError("cannot intersect alignments of segments " +
                           a.segment_id() + " and " + b.segment_id());
  }
  AlignmentSet out(a.segment_id(), Provenance::intersected);
  for (const auto& link : a.links()) {
    if (const auto* other = b.find(link.pair())) {
      out.add({link.source_index, link.target_index,
               std::min(link.similarity, other->similarity)});
    }
  }
  return out;
}

AlignmentSet apply_filters(const AlignmentSet& alignment,
                           const Segment& segment, const FilterConfig& cfg) {
  AlignmentSet out(alignment.segment_id(), Provenance::filtered);
  for (const auto& link : alignment.links()) {
    if (cfg.drop_function_words &&
        is_function_source(segment, link.source_index, cfg)) {
      continue;
    }
    if (cfg.use_threshold && link.similarity < cfg.theta) continue;
    out.add(link);
  }
  return out;
}

std::vector<AlignmentLink> dedupe_for_ranking(const AlignmentSet& alignment) {
  // Links arrive sorted by (source, target), so the first link seen for a
  // source is its lowest target; strict '>' keeps it on ties.
  std::map<std::size_t, AlignmentLink> by_source;
  for (const auto& link : alignment.links()) {
    auto [it, inserted] = by_source.emplace(link.source_index, link);
    if (!inserted && link.similarity > it->second.similarity) it->second = link;
  }
  std::map<std::size_t, AlignmentLink> by_target;
  for (const auto& [src, link] : by_source) {
    auto [it, inserted] = by_target.emplace(link.target_index, link);
    if (!inserted && link.similarity > it->second.similarity) it->second = link;
  }
  std::vector<AlignmentLink> out;
  out.reserve(by_target.size());
  for (const auto& [tgt, link] : by_target) out.push_back(link);
  return out;
}

}  // namespace synchro
