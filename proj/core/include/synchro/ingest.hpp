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

// Readers and writers for the on-disk formats: JSONL segment and embedding
// files, Pharaoh alignment files and CSV judgment tables. See docs/formats.md.
//
// Syntax errors and per-record invariant violations raise ParseError with
// the 1-based line number; disagreements between files raise
// ConsistencyError.

#ifndef SYNCHRO_INGEST_HPP_
#define SYNCHRO_INGEST_HPP_

#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "synchro/types.hpp"

namespace synchro {

struct SegmentParseOptions {
  // When set, every word carrying a nonempty pos must satisfy
  // is_function == (pos in function_pos).
  std::optional<std::set<std::string>> function_pos;
};

std::vector<Segment> parse_segments(std::istream& in,
                                    const SegmentParseOptions& options = {});

// One JSONL line per segment, field order as documented.
std::string format_segment_record(const Segment& segment);

// Every segment that appears in the stream must have both a source and a
// target matrix whose row counts match the corpus subword counts.
EmbeddingTable parse_embeddings(std::istream& in,
                                std::span<const Segment> corpus);

std::string format_embedding_record(const EmbeddingMatrix& matrix);

// Pharaoh lines: "i-j" is a sure link, "i?j" possible-only. Segment ids are
// the 0-based line numbers until bind_to_corpus renames them.
std::vector<GoldAlignment> parse_gold_pharaoh(std::istream& in);

// Predicted alignments: both "i-j" and "i?j" become links with similarity
// 1.0 and provenance external.
std::vector<AlignmentSet> parse_predicted_pharaoh(std::istream& in);

// Renames the per-line alignments after the corpus segments and checks line
// count and index ranges. Throws ConsistencyError.
void bind_to_corpus(std::vector<AlignmentSet>& alignments,
                    std::span<const Segment> corpus);
void bind_to_corpus(std::vector<GoldAlignment>& alignments,
                    std::span<const Segment> corpus);

// Links in (source, target) order, space separated, no trailing space.
std::string format_pharaoh_line(const AlignmentSet& alignment);
std::string format_gold_pharaoh_line(const GoldAlignment& gold);

void write_pharaoh(std::ostream& out, std::span<const AlignmentSet> alignments);

// CSV with header "segment_id,score,kind". Ids not in known_ids (when given)
// raise ConsistencyError.
std::vector<JudgedSegment> parse_judgments(
    std::istream& in, const std::set<std::string>* known_ids = nullptr);

}  // namespace synchro

#endif  // SYNCHRO_INGEST_HPP_
