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

#include "synchro/ingest.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "synchro/error.hpp"
#include "text_util.hpp"

namespace synchro {

namespace {

using nlohmann::json;

json parse_json_line(const std::string& line, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed record: ") + e.what(), line_no);
  }
}

const json& require_field(const json& obj, const char* name,
                          std::size_t line_no) {
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw ParseError(std::string("missing field '") + name + "'", line_no);
  }
  return *it;
}

std::string require_string(const json& obj, const char* name,
                           std::size_t line_no) {
  const auto& v = require_field(obj, name, line_no);
  if (!v.is_string()) {
    throw ParseError(std::string("field '") + name + "' must be a string",
                     line_no);
  }
  return v.get<std::string>();
}

std::size_t require_unsigned(const json& v, const std::string& what,
                             std::size_t line_no) {
  if (!v.is_number_unsigned()) {
    throw ParseError(what + " must be a non-negative integer", line_no);
  }
  return v.get<std::size_t>();
}

std::string span_text(const SubwordSpan& s) {
  return "[" + std::to_string(s.begin) + "," + std::to_string(s.end) + ")";
}

std::vector<Word> parse_words(const json& record, Side side,
                              const SegmentParseOptions& options,
                              std::size_t line_no) {
  const char* key = side == Side::source ? "source" : "target";
  const auto& arr = require_field(record, key, line_no);
  if (!arr.is_array()) {
    throw ParseError(std::string("field '") + key + "' must be an array",
                     line_no);
  }
  if (arr.empty()) {
    throw ParseError(std::string("empty ") + key + " word list", line_no);
  }
  std::vector<Word> words;
  words.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& w = arr[i];
    const std::string where =
        std::string(key) + " word " + std::to_string(i);
    if (!w.is_object()) throw ParseError(where + " must be an object", line_no);
    Word word;
    word.surface = require_string(w, "surface", line_no);
    if (auto it = w.find("pos"); it != w.end() && !it->is_null()) {
      if (!it->is_string()) {
        throw ParseError(where + ": 'pos' must be a string", line_no);
      }
      word.pos = it->get<std::string>();
    }
    const auto& flag = require_field(w, "is_function", line_no);
    if (!flag.is_boolean()) {
      throw ParseError(where + ": 'is_function' must be a boolean", line_no);
    }
    word.is_function = flag.get<bool>();

    const auto& span = require_field(w, "span", line_no);
    if (!span.is_array() || span.size() != 2) {
      throw ParseError(where + ": 'span' must be [start, end]", line_no);
    }
    word.span.begin = require_unsigned(span[0], where + " span start", line_no);
    word.span.end = require_unsigned(span[1], where + " span end", line_no);
    if (word.span.begin >= word.span.end) {
      throw ParseError("empty span " + span_text(word.span) + " in " + where,
                       line_no);
    }
    if (!words.empty() && word.span.begin < words.back().span.end) {
      throw ParseError("overlapping or non-monotone span " +
                           span_text(word.span) + " in " + where +
                           " (previous ends at " +
                           std::to_string(words.back().span.end) + ")",
                       line_no);
    }
    if (options.function_pos && !word.pos.empty()) {
      const bool expected = options.function_pos->contains(word.pos);
      if (expected != word.is_function) {
        throw ParseError(where + " '" + word.surface + "': is_function=" +
                             (word.is_function ? "true" : "false") +
                             " disagrees with pos " + word.pos,
                         line_no);
      }
    }
    words.push_back(std::move(word));
  }
  return words;
}

json words_to_json(const std::vector<Word>& words) {
  json arr = json::array();
  for (const auto& w : words) {
    json obj = json::object();
    obj["surface"] = w.surface;
    obj["pos"] = w.pos;
    obj["is_function"] = w.is_function;
    obj["span"] = json::array({w.span.begin, w.span.end});
    arr.push_back(std::move(obj));
  }
  return arr;
}

// Parses "i-j" / "i?j". Returns the pair and whether it is sure.
std::pair<WordPair, bool> parse_pharaoh_token(std::string_view token,
                                              std::size_t line_no) {
  const std::string tok(token);
  if (!token.empty() && token.front() == '-') {
    throw ParseError("negative index in '" + tok + "'", line_no);
  }
  auto sep = token.find_first_of("-?");
  if (sep == std::string_view::npos) {
    throw ParseError("token '" + tok + "' does not match i-j or i?j", line_no);
  }
  auto lhs = token.substr(0, sep);
  auto rhs = token.substr(sep + 1);
  if (!rhs.empty() && rhs.front() == '-') {
    throw ParseError("negative index in '" + tok + "'", line_no);
  }
  auto i = detail::parse_index(lhs);
  auto j = detail::parse_index(rhs);
  if (!i || !j) {
    throw ParseError("non-integer index in '" + tok + "'", line_no);
  }
  return {{*i, *j}, token[sep] == '-'};
}

template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    fn(line, line_no);
  }
}

bool is_blank(std::string_view line) { return detail::trim(line).empty(); }

void check_in_range(const WordPair& p, const Segment& seg,
                    std::size_t line_no) {
  if (p.source >= seg.source_words.size() ||
      p.target >= seg.target_words.size()) {
    throw ConsistencyError(
        "link " + std::to_string(p.source) + "-" + std::to_string(p.target) +
            " out of range for segment " + seg.id + " (" +
            std::to_string(seg.source_words.size()) + " source, " +
            std::to_string(seg.target_words.size()) + " target words)",
        line_no);
  }
}

void check_line_count(std::size_t lines, std::size_t segments) {
  if (lines != segments) {
    throw ConsistencyError("alignment file has " + std::to_string(lines) +
                           " lines but corpus has " + std::to_string(segments) +
                           " segments");
  }
}

}  // namespace

std::vector<Segment> parse_segments(std::istream& in,
                                    const SegmentParseOptions& options) {
  std::vector<Segment> segments;
  std::set<std::string> seen;
  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    if (is_blank(line)) return;
    const json record = parse_json_line(line, line_no);
    if (!record.is_object()) {
      throw ParseError("malformed record: expected a JSON object", line_no);
    }
    Segment seg;
    seg.id = require_string(record, "id", line_no);
    if (seg.id.empty()) throw ParseError("empty segment id", line_no);
    if (!seen.insert(seg.id).second) {
      throw ParseError("duplicate id " + seg.id, line_no);
    }
    seg.source_words = parse_words(record, Side::source, options, line_no);
    seg.target_words = parse_words(record, Side::target, options, line_no);
    segments.push_back(std::move(seg));
  });
  return segments;
}

std::string format_segment_record(const Segment& segment) {
  json obj = json::object();
  obj["id"] = segment.id;
  obj["source"] = words_to_json(segment.source_words);
  obj["target"] = words_to_json(segment.target_words);
  return obj.dump();
}

EmbeddingTable parse_embeddings(std::istream& in,
                                std::span<const Segment> corpus) {
  std::map<std::string, const Segment*, std::less<>> by_id;
  for (const auto& seg : corpus) by_id.emplace(seg.id, &seg);

  struct Partial {
    std::optional<EmbeddingMatrix> source;
    std::optional<EmbeddingMatrix> target;
    std::size_t line = 0;
  };
  std::map<std::string, Partial, std::less<>> partial;
  std::optional<std::size_t> file_dim;

  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    if (is_blank(line)) return;
    const json record = parse_json_line(line, line_no);
    if (!record.is_object()) {
      throw ParseError("malformed record: expected a JSON object", line_no);
    }
    const std::string id = require_string(record, "segment_id", line_no);
    const std::string side_text = require_string(record, "side", line_no);
    Side side;
    if (side_text == "source") {
      side = Side::source;
    } else if (side_text == "target") {
      side = Side::target;
    } else {
      throw ParseError("side must be \"source\" or \"target\", got \"" +
                           side_text + "\"",
                       line_no);
    }
    const std::size_t dim =
        require_unsigned(require_field(record, "dim", line_no), "dim", line_no);
    if (dim == 0) throw ParseError("dim must be positive", line_no);
    if (file_dim && *file_dim != dim) {
      throw ParseError("dim mismatch across records: " + std::to_string(dim) +
                           " vs " + std::to_string(*file_dim),
                       line_no);
    }
    file_dim = dim;

    const auto& vectors = require_field(record, "vectors", line_no);
    if (!vectors.is_array()) {
      throw ParseError("field 'vectors' must be an array", line_no);
    }
    std::vector<double> values;
    values.reserve(vectors.size() * dim);
    for (std::size_t r = 0; r < vectors.size(); ++r) {
      const auto& vec = vectors[r];
      if (!vec.is_array()) {
        throw ParseError("vector " + std::to_string(r) + " is not an array",
                         line_no);
      }
      if (vec.size() != dim) {
        throw ParseError("ragged dims: vector " + std::to_string(r) +
                             " has length " + std::to_string(vec.size()) +
                             ", expected " + std::to_string(dim),
                         line_no);
      }
      bool all_zero = true;
      for (const auto& x : vec) {
        if (!x.is_number()) {
          throw ParseError("non-numeric component in vector " +
                               std::to_string(r),
                           line_no);
        }
        const double v = x.get<double>();
        if (v != 0.0) all_zero = false;
        values.push_back(v);
      }
      if (all_zero) {
        throw ParseError("zero vector at row " + std::to_string(r), line_no);
      }
    }

    auto seg_it = by_id.find(id);
    if (seg_it == by_id.end()) {
      throw ConsistencyError("unknown segment " + id, line_no);
    }
    const Segment& seg = *seg_it->second;
    const std::size_t rows = vectors.size();
    if (rows != seg.subword_count(side)) {
      throw ConsistencyError(
          "vector count " + std::to_string(rows) + " does not match " +
              std::to_string(seg.subword_count(side)) + " " + side_text +
              " subwords of segment " + id,
          line_no);
    }

    auto& slot = partial[id];
    auto& target_slot = side == Side::source ? slot.source : slot.target;
    if (target_slot) {
      throw ParseError("duplicate " + side_text + " matrix for segment " + id,
                       line_no);
    }
    target_slot.emplace(id, side, dim, std::move(values));
    slot.line = line_no;
  });

  EmbeddingTable table;
  for (auto& [id, p] : partial) {
    if (!p.source || !p.target) {
      throw ConsistencyError("segment " + id + " has no " +
                                 (p.source ? "target" : "source") + " matrix",
                             p.line);
    }
    table.emplace(id, SegmentEmbeddings{std::move(*p.source),
                                        std::move(*p.target)});
  }
  return table;
}

std::string format_embedding_record(const EmbeddingMatrix& matrix) {
  std::string out = "{\"segment_id\":" + json(matrix.segment_id()).dump() +
                    ",\"side\":\"" + std::string(to_string(matrix.side())) +
                    "\",\"dim\":" + std::to_string(matrix.dim()) +
                    ",\"vectors\":[";
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    if (r) out += ',';
    out += '[';
    const auto row = matrix.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += detail::format_shortest(row[c]);
    }
    out += ']';
  }
  out += "]}";
  return out;
}

std::vector<GoldAlignment> parse_gold_pharaoh(std::istream& in) {
  std::vector<GoldAlignment> out;
  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    GoldAlignment gold;
    gold.segment_id = std::to_string(line_no - 1);
    for (auto tok : detail::split_whitespace(line)) {
      auto [pair, sure] = parse_pharaoh_token(tok, line_no);
      if (sure) gold.sure.insert(pair);
      gold.possible.insert(pair);
    }
    out.push_back(std::move(gold));
  });
  return out;
}

std::vector<AlignmentSet> parse_predicted_pharaoh(std::istream& in) {
  std::vector<AlignmentSet> out;
  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    AlignmentSet set(std::to_string(line_no - 1), Provenance::external);
    for (auto tok : detail::split_whitespace(line)) {
      auto [pair, sure] = parse_pharaoh_token(tok, line_no);
      (void)sure;
      set.add({pair.source, pair.target, 1.0});
    }
    out.push_back(std::move(set));
  });
  return out;
}

void bind_to_corpus(std::vector<AlignmentSet>& alignments,
                    std::span<const Segment> corpus) {
  check_line_count(alignments.size(), corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (const auto& link : alignments[i].links()) {
      check_in_range(link.pair(), corpus[i], i + 1);
    }
    alignments[i].set_segment_id(corpus[i].id);
  }
}

void bind_to_corpus(std::vector<GoldAlignment>& alignments,
                    std::span<const Segment> corpus) {
  check_line_count(alignments.size(), corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (const auto& p : alignments[i].possible) {
      check_in_range(p, corpus[i], i + 1);
    }
    alignments[i].segment_id = corpus[i].id;
  }
}

std::string format_pharaoh_line(const AlignmentSet& alignment) {
  std::string out;
  for (const auto& link : alignment.links()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(link.source_index);
    out += '-';
    out += std::to_string(link.target_index);
  }
  return out;
}

std::string format_gold_pharaoh_line(const GoldAlignment& gold) {
  std::string out;
  for (const auto& p : gold.possible) {
    if (!out.empty()) out += ' ';
    out += std::to_string(p.source);
    out += gold.sure.contains(p) ? '-' : '?';
    out += std::to_string(p.target);
  }
  // Sure links missing from possible still belong in the file.
  for (const auto& p : gold.sure) {
    if (gold.possible.contains(p)) continue;
    if (!out.empty()) out += ' ';
    out += std::to_string(p.source) + "-" + std::to_string(p.target);
  }
  return out;
}

void write_pharaoh(std::ostream& out, std::span<const AlignmentSet> alignments) {
  for (const auto& a : alignments) out << format_pharaoh_line(a) << '\n';
}

std::vector<JudgedSegment> parse_judgments(
    std::istream& in, const std::set<std::string>* known_ids) {
  std::vector<JudgedSegment> out;
  std::set<std::string> seen;
  bool header_seen = false;
  for_each_line(in, [&](const std::string& raw, std::size_t line_no) {
    const auto line = detail::trim(raw);
    if (line.empty()) return;
    if (!header_seen) {
      if (line != "segment_id,score,kind") {
        throw ParseError(
            "expected header \"segment_id,score,kind\", got \"" +
                std::string(line) + "\"",
            line_no);
      }
      header_seen = true;
      return;
    }
    const auto fields = detail::split(line, ',');
    if (fields.size() != 3) {
      throw ParseError("expected 3 comma-separated fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    JudgedSegment j;
    j.segment_id = std::string(detail::trim(fields[0]));
    if (j.segment_id.empty()) throw ParseError("empty segment_id", line_no);
    auto score = detail::parse_finite_double(fields[1]);
    if (!score) {
      throw ParseError("non-numeric score '" + std::string(fields[1]) + "'",
                       line_no);
    }
    j.human_score = *score;
    auto kind = score_kind_from_string(detail::trim(fields[2]));
    if (!kind) {
      throw ParseError("unknown score kind '" + std::string(fields[2]) + "'",
                       line_no);
    }
    j.kind = *kind;
    if (!seen.insert(j.segment_id).second) {
      throw ParseError("duplicate judgment for " + j.segment_id, line_no);
    }
    if (known_ids && !known_ids->contains(j.segment_id)) {
      throw ConsistencyError("unknown segment " + j.segment_id, line_no);
    }
    out.push_back(std::move(j));
  });
  return out;
}

}  // namespace synchro
