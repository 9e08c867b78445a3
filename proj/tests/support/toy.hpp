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

// Loads the bundled toy corpus from data/toy.

#ifndef SYNCHRO_TESTS_TOY_HPP_
#define SYNCHRO_TESTS_TOY_HPP_

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "synchro/ingest.hpp"

namespace synchro::testing {

inline std::string toy_path(const std::string& name) {
  return std::string(SYNCHRO_TOY_DIR) + "/" + name;
}

inline std::ifstream open_toy(const std::string& name) {
  std::ifstream in(toy_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + toy_path(name));
  return in;
}

struct ToyCorpus {
  std::vector<Segment> segments;
  EmbeddingTable embeddings;
  std::vector<AlignmentSet> external;
  std::vector<GoldAlignment> gold;

  const Segment& segment(const std::string& id) const {
    for (const auto& s : segments) {
      if (s.id == id) return s;
    }
    throw std::out_of_range(id);
  }
  std::size_t index(const std::string& id) const {
    return static_cast<std::size_t>(&segment(id) - segments.data());
  }
};

inline ToyCorpus load_toy() {
  ToyCorpus toy;
  auto seg = open_toy("segments.jsonl");
  toy.segments = parse_segments(seg);
  auto emb = open_toy("embeddings.jsonl");
  toy.embeddings = parse_embeddings(emb, toy.segments);
  auto ext = open_toy("external.pharaoh");
  toy.external = parse_predicted_pharaoh(ext);
  bind_to_corpus(toy.external, toy.segments);
  auto gold = open_toy("gold.pharaoh");
  toy.gold = parse_gold_pharaoh(gold);
  bind_to_corpus(toy.gold, toy.segments);
  return toy;
}

}  // namespace synchro::testing

#endif  // SYNCHRO_TESTS_TOY_HPP_
