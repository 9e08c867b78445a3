#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "generators.hpp"
#include "oracles.hpp"
#include "synchro/error.hpp"
#include "synchro/metrics.hpp"
#include "toy.hpp"

namespace synchro {
namespace {

std::vector<AlignmentLink> chain(std::initializer_list<std::size_t> sources) {
  std::vector<AlignmentLink> out;
  std::size_t t = 0;
  for (auto s : sources) out.push_back({s, t++, 1.0});
  return out;
}

TEST(Sequence, DenseReRanking) {
  EXPECT_EQ(source_index_sequence(chain({9, 2, 5})), (std::vector<int>{3, 1, 2}));
  EXPECT_EQ(source_index_sequence(chain({0, 1, 2, 3})), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_TRUE(source_index_sequence({}).empty());
}

TEST(Sequence, MatchesSortOracle) {
  testing::Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::size_t> pool(40);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(testing::uniform_size(rng, 0, 12));
    std::vector<AlignmentLink> links;
    for (std::size_t t = 0; t < pool.size(); ++t) links.push_back({pool[t], t, 1.0});
    auto sorted = pool;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> want;
    for (auto s : pool) {
      want.push_back(static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), s) - sorted.begin() + 1));
    }
    EXPECT_EQ(source_index_sequence(links), want);
  }
}

TEST(Spearman, Examples) {
  EXPECT_NEAR(*spearman_rho(std::vector<int>{1, 4, 3, 2}), 0.2, 1e-12);
  EXPECT_EQ(*spearman_rho(std::vector<int>{1, 2, 3, 4}), 1.0);
  EXPECT_EQ(*spearman_rho(std::vector<int>{4, 3, 2, 1}), -1.0);
  EXPECT_FALSE(spearman_rho(std::vector<int>{1}).has_value());
  EXPECT_FALSE(spearman_rho(std::vector<int>{}).has_value());
  EXPECT_THROW(spearman_rho(std::vector<int>{1, 1, 2}), std::invalid_argument);
  EXPECT_THROW(spearman_rho(std::vector<int>{0, 1}), std::invalid_argument);
}

TEST(Spearman, AllPermutationsUpToSixMatchRationalOracle) {
  for (int k = 2; k <= 6; ++k) {
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 1);
    do {
      const double got = *spearman_rho(p);
      EXPECT_EQ(got, testing::spearman_rational(p).to_double());
      EXPECT_GE(got, -1.0);
      EXPECT_LE(got, 1.0);
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST(Kendall, MatchesPairCounting) {
  EXPECT_EQ(*kendall_tau(std::vector<int>{1, 4, 3, 2}), 0.0);
  EXPECT_EQ(*kendall_tau(std::vector<int>{4, 3, 2, 1}), -1.0);
  EXPECT_FALSE(kendall_tau(std::vector<int>{1}).has_value());
  testing::Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    std::vector<int> p(testing::uniform_size(rng, 2, 30));
    std::iota(p.begin(), p.end(), 1);
    std::shuffle(p.begin(), p.end(), rng);
    EXPECT_NEAR(*kendall_tau(p), testing::kendall_pairs(p), 1e-12);
  }
}

Segment content_segment(std::size_t content, std::size_t function) {
  Segment seg{"c", {}, {{"t", "NOUN", false, {0, 1}}}};
  std::size_t sub = 0;
  for (std::size_t i = 0; i < content + function; ++i) {
    const bool fn = i >= content;
    seg.source_words.push_back({"w", fn ? "DET" : "NOUN", fn, {sub, sub + 1}});
    ++sub;
  }
  return seg;
}

TEST(Coverage, ElevenOfTwentyThree) {
  auto seg = content_segment(23, 7);
  AlignmentSet links("c", Provenance::filtered);
  for (std::size_t i = 0; i < 11; ++i) links.add({i, 0, 0.9});
  links.add({25, 0, 0.9});  // function word: not counted
  links.add({3, 0, 0.8});   // same word twice: counted once
  EXPECT_NEAR(*content_coverage(seg, links), 0.478, 0.001);
  EXPECT_EQ(*content_coverage(seg, links), 11.0 / 23.0);
}

TEST(Coverage, Edges) {
  auto seg = content_segment(3, 1);
  AlignmentSet all("c", Provenance::filtered, {{0, 0, 1}, {1, 0, 1}, {2, 0, 1}});
  EXPECT_EQ(*content_coverage(seg, all), 1.0);
  EXPECT_EQ(*content_coverage(seg, AlignmentSet("c", Provenance::filtered)), 0.0);
  EXPECT_FALSE(content_coverage(content_segment(0, 2), all).has_value());
}

TEST(Combined, Anchors) {
  EXPECT_NEAR(*combined_score(0.9, 0.636363636), 0.573, 0.001);
  EXPECT_NEAR(*combined_score(-1.0, 0.666), -0.666, 0.001);
  EXPECT_EQ(*combined_score(0.0, 0.37), 0.0);
  EXPECT_FALSE(combined_score(std::nullopt, 0.5).has_value());
  EXPECT_FALSE(combined_score(0.5, std::nullopt).has_value());
}

class ToyScore : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { toy_ = new testing::ToyCorpus(testing::load_toy()); }
  static void TearDownTestSuite() { delete toy_; }

  SyncResult score(const std::string& id, const MetricConfig& cfg) const {
    const auto& seg = toy_->segment(id);
    return score_segment({seg, &toy_->embeddings.at(id), &toy_->external[toy_->index(id)]},
                         cfg);
  }
  static testing::ToyCorpus* toy_;
};
testing::ToyCorpus* ToyScore::toy_ = nullptr;

TEST_F(ToyScore, WorkedExampleEndToEnd) {
  MetricConfig cfg;
  cfg.filter.drop_function_words = false;
  auto r = score("s01", cfg);
  EXPECT_EQ(r.sequence, (std::vector<int>{1, 4, 3, 2}));
  EXPECT_NEAR(*r.rho, 0.2, 1e-9);
  EXPECT_EQ(r.n_align, 4u);
  EXPECT_FALSE(r.excluded);
}

TEST_F(ToyScore, DefaultFilterDropsPronoun) {
  auto r = score("s01", MetricConfig{});
  EXPECT_EQ(r.sequence, (std::vector<int>{3, 2, 1}));
  EXPECT_EQ(*r.rho, -1.0);
}

TEST_F(ToyScore, DrugsCoverage) {
  auto r = score("s11", MetricConfig{});
  EXPECT_NEAR(*r.coverage, 0.478, 0.001);
  EXPECT_EQ(r.n_align, 11u);
}

TEST_F(ToyScore, EmptyFilteredAlignment) {
  auto r = score("s08", MetricConfig{});
  EXPECT_FALSE(r.rho.has_value());
  EXPECT_EQ(*r.coverage, 0.0);
  EXPECT_TRUE(r.excluded);
  EXPECT_EQ(r.n_align, 0u);
}

TEST_F(ToyScore, ThetaBoundary) {
  // Designed cosines 0.705 ("green") and 0.72 ("line") straddle 0.71.
  MetricConfig cfg;
  EXPECT_EQ(score("s10", cfg).n_align, 4u);
  cfg.filter.theta = 0.70;
  EXPECT_EQ(score("s10", cfg).n_align, 5u);
  cfg.filter.theta = 0.73;
  EXPECT_EQ(score("s10", cfg).n_align, 3u);
}

TEST_F(ToyScore, Deterministic) {
  for (const auto& seg : toy_->segments) {
    EXPECT_EQ(score(seg.id, MetricConfig{}), score(seg.id, MetricConfig{}));
  }
}

TEST_F(ToyScore, CombinedModeIntersects) {
  MetricConfig cfg;
  cfg.mode = Mode::combined;
  auto r = score("s02", cfg);
  auto raw = raw_alignment({toy_->segment("s02"), &toy_->embeddings.at("s02"),
                            &toy_->external[toy_->index("s02")]},
                           cfg);
  EXPECT_EQ(raw.provenance(), Provenance::intersected);
  for (const auto& l : r.used_links) EXPECT_TRUE(raw.contains(l.pair()));
  EXPECT_NEAR(*r.combined, *r.rho * *r.coverage, 1e-12);
}

TEST_F(ToyScore, MissingInputs) {
  const auto& seg = toy_->segment("s01");
  EXPECT_THROW(score_segment({seg, nullptr, nullptr}, MetricConfig{}), ConsistencyError);
  MetricConfig cfg;
  cfg.mode = Mode::combined;
  EXPECT_THROW(score_segment({seg, &toy_->embeddings.at("s01"), nullptr}, cfg),
               ConsistencyError);
}

TEST_F(ToyScore, CorpusKeepsOrder) {
  auto results = score_corpus(toy_->segments, toy_->embeddings, {}, MetricConfig{});
  ASSERT_EQ(results.size(), toy_->segments.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    EXPECT_EQ(results[i].segment_id, toy_->segments[i].id);
  }
}

TEST(MinNAlign, Rule) {
  MetricConfig cfg;
  cfg.min_n_align = 3;
  EXPECT_TRUE(cfg.passes_min_n_align(3));
  cfg.n_align_rule = NAlignRule::more_than;
  EXPECT_FALSE(cfg.passes_min_n_align(3));
  EXPECT_TRUE(cfg.passes_min_n_align(4));
}

// Random segments: the invariants every SyncResult must satisfy, and
// monotonicity of n_align in theta.
TEST(ScoreProperties, RandomSegments) {
  testing::Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    auto seg = testing::random_segment(rng, "r", 15);
    auto emb = testing::random_embeddings(rng, seg, 4);
    std::size_t last = std::numeric_limits<std::size_t>::max();
    for (double theta : {0.0, 0.3, 0.5, 0.71, 0.9}) {
      MetricConfig cfg;
      cfg.filter.theta = theta;
      auto r = score_segment({seg, &emb, nullptr}, cfg);
      EXPECT_LE(r.n_align, last);
      last = r.n_align;
      EXPECT_LE(r.n_align, r.source_length);
      EXPECT_EQ(r.rho.has_value(), r.n_align >= 2);
      std::vector<int> sorted = r.sequence;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t k = 0; k < sorted.size(); ++k) {
        EXPECT_EQ(sorted[k], static_cast<int>(k + 1));
      }
      if (r.coverage) {
        EXPECT_GE(*r.coverage, 0.0);
        EXPECT_LE(*r.coverage, 1.0);
      }
    }
  }
}

}  // namespace
}  // namespace synchro
