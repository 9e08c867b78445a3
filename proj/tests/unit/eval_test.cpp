#include <gtest/gtest.h>

#include <algorithm>

#include "generators.hpp"
#include "oracles.hpp"
#include "synchro/error.hpp"
#include "synchro/eval.hpp"

namespace synchro {
namespace {

AlignmentSet pred(std::initializer_list<WordPair> pairs, std::string id = "x") {
  AlignmentSet a(std::move(id), Provenance::external);
  for (auto p : pairs) a.add({p.source, p.target, 1.0});
  return a;
}

GoldAlignment gold(std::set<WordPair> sure, std::set<WordPair> possible_only = {},
                   std::string id = "x") {
  GoldAlignment g{std::move(id), sure, sure};
  g.possible.insert(possible_only.begin(), possible_only.end());
  return g;
}

TEST(Aer, Perfect) {
  auto r = aer(pred({{0, 0}, {1, 2}}), gold({{0, 0}, {1, 2}}));
  EXPECT_EQ(r.aer, 0.0);
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.f1, 1.0);
}

TEST(Aer, Disjoint) {
  auto r = aer(pred({{0, 1}}), gold({{0, 0}}, {{1, 1}}));
  EXPECT_EQ(r.aer, 1.0);
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.f1, 0.0);
}

TEST(Aer, PossibleLinksCountForPrecisionOnly) {
  auto r = aer(pred({{0, 0}, {1, 1}}), gold({{0, 0}}, {{1, 1}}));
  EXPECT_EQ(r.aer, 0.0);
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.counts.predicted, 2u);
  EXPECT_EQ(r.counts.sure, 1u);
  EXPECT_EQ(r.counts.possible, 2u);
}

TEST(Aer, EmptySides) {
  auto none = aer(pred({}), gold({{0, 0}}));
  EXPECT_TRUE(none.precision_undefined);
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.recall, 0.0);
  auto no_gold = aer(pred({{0, 0}}), gold({}));
  EXPECT_TRUE(no_gold.recall_undefined);
  EXPECT_EQ(aer(pred({}), gold({})).aer, 0.0);
}

TEST(Aer, SegmentMismatch) {
  EXPECT_THROW(aer(pred({}, "a"), gold({}, {}, "b")), ConsistencyError);
  std::vector<AlignmentSet> p{pred({})};
  std::vector<GoldAlignment> g;
  EXPECT_THROW(aer_corpus(p, g), ConsistencyError);
}

TEST(Aer, CorpusIsMicroAveraged) {
  std::vector<AlignmentSet> p{pred({{0, 0}}, "a"), pred({{0, 0}, {1, 1}, {2, 2}}, "b")};
  std::vector<GoldAlignment> g{gold({{0, 0}}, {}, "a"), gold({{5, 5}}, {}, "b")};
  auto r = aer_corpus(p, g);
  EXPECT_EQ(r.counts.predicted, 4u);
  EXPECT_EQ(r.counts.predicted_sure, 1u);
  EXPECT_DOUBLE_EQ(r.precision, 0.25);
  EXPECT_DOUBLE_EQ(r.recall, 0.5);
  EXPECT_DOUBLE_EQ(r.aer, 1.0 - 2.0 / 6.0);
}

TEST(Aer, RandomProperties) {
  testing::Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    auto a = testing::random_alignment(rng, "x", 5, 5, 10);
    auto s = testing::random_alignment(rng, "x", 5, 5, 6);
    auto extra = testing::random_alignment(rng, "x", 5, 5, 6);
    GoldAlignment g{"x", s.pairs(), s.pairs()};
    for (auto p : extra.pairs()) g.possible.insert(p);
    auto r = aer(a, g);
    for (double v : {r.aer, r.precision, r.recall, r.f1}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_LE(r.f1, std::max(r.precision, r.recall) + 1e-15);
    EXPECT_EQ(r.f1 == 0.0, r.precision * r.recall == 0.0);
  }
}

TEST(Pearson, Examples) {
  const std::vector<double> xs{1, 2, 3, 4.5};
  std::vector<double> lin, neg;
  for (double x : xs) {
    lin.push_back(2 * x + 1);
    neg.push_back(-x);
  }
  EXPECT_EQ(*pearson(xs, lin).r, 1.0);
  EXPECT_EQ(*pearson(xs, neg).r, -1.0);
  EXPECT_NEAR(*pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}).r, 0.5,
              1e-12);
  EXPECT_FALSE(pearson(xs, std::vector<double>(4, 3.0)).r.has_value());
  EXPECT_THROW(pearson(xs, std::vector<double>{1, 2}), ConsistencyError);
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{2}), ConsistencyError);
}

TEST(Pearson, MatchesPowerSumOracle) {
  testing::Rng rng(23);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 200; ++i) {
    const auto n = testing::uniform_size(rng, 2, 40);
    std::vector<double> xs(n), ys(n);
    for (std::size_t k = 0; k < n; ++k) {
      xs[k] = normal(rng);
      ys[k] = 0.5 * xs[k] + normal(rng);
    }
    EXPECT_NEAR(*pearson(xs, ys).r,
                static_cast<double>(testing::pearson_power_sums(xs, ys)), 1e-9);
  }
}

SyncResult result(std::string id, std::size_t n_align, std::size_t length,
                  std::optional<double> rho, std::optional<double> coverage = 0.5) {
  SyncResult r;
  r.segment_id = std::move(id);
  r.n_align = n_align;
  r.source_length = length;
  r.rho = rho;
  r.coverage = coverage;
  if (rho && coverage) r.combined = *rho * *coverage;
  r.excluded = !rho || n_align < 2;
  return r;
}

TEST(Buckets, NAlignCounts) {
  std::vector<SyncResult> rs{result("a", 2, 5, 0.1), result("b", 4, 5, 0.2),
                             result("c", 6, 5, 0.3)};
  const std::vector<std::size_t> t{2, 4};
  auto b = bucket_by_nalign(rs, t);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].segment_count, 3u);
  EXPECT_EQ(b[1].segment_count, 2u);
  EXPECT_NEAR(*b[1].mean_rho, 0.25, 1e-15);
  EXPECT_EQ(b[0].bucket_key, "n_align>=2");
}

TEST(Buckets, EmptyInput) {
  auto b = bucket_by_nalign({}, default_nalign_thresholds());
  ASSERT_EQ(b.size(), 5u);
  for (const auto& r : b) {
    EXPECT_EQ(r.segment_count, 0u);
    EXPECT_FALSE(r.mean_rho.has_value());
  }
}

TEST(Buckets, ExcludedCountedNotAveraged) {
  std::vector<SyncResult> rs{result("a", 3, 5, 0.4), result("b", 3, 5, std::nullopt)};
  rs[1].excluded = true;
  const std::vector<std::size_t> t{2};
  auto b = bucket_by_nalign(rs, t);
  EXPECT_EQ(b[0].segment_count, 1u);
  EXPECT_EQ(b[0].excluded_count, 1u);
  EXPECT_EQ(*b[0].mean_rho, 0.4);
}

TEST(Buckets, LengthRows) {
  auto rows = length_buckets(default_length_thresholds());
  std::vector<std::string> keys;
  for (const auto& r : rows) keys.push_back(r.key);
  EXPECT_EQ(keys, (std::vector<std::string>{"All", "<15", ">=15", ">=20", ">=25", ">=30"}));

  std::vector<SyncResult> rs{result("a", 3, 14, 0.1), result("b", 3, 30, 0.2)};
  auto b = bucket_by_length(rs, default_length_thresholds());
  std::vector<std::size_t> counts;
  for (const auto& r : b) counts.push_back(r.segment_count);
  EXPECT_EQ(counts, (std::vector<std::size_t>{2, 1, 1, 1, 1, 1}));
  EXPECT_EQ(*b[1].mean_rho, 0.1);
  EXPECT_EQ(*b[5].mean_rho, 0.2);
}

std::vector<SyncResult> random_results(testing::Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<SyncResult> rs;
  for (std::size_t i = 0; i < n; ++i) {
    const auto n_align = testing::uniform_size(rng, 0, 10);
    const auto len = n_align + testing::uniform_size(rng, 0, 40);
    std::optional<double> rho;
    if (n_align >= 2) rho = u(rng);
    rs.push_back(result("r" + std::to_string(i), n_align, len, rho, (u(rng) + 1) / 2));
  }
  return rs;
}

TEST(Buckets, MembershipMonotoneAndOrderFree) {
  testing::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto rs = random_results(rng, testing::uniform_size(rng, 0, 40));
    const std::vector<std::size_t> nt{0, 1, 2, 3, 5, 8}, lt{10, 15, 20, 30};
    auto by_n = bucket_by_nalign(rs, nt);
    auto by_len = bucket_by_length(rs, lt);
    for (std::size_t k = 0; k < nt.size(); ++k) {
      std::size_t want = 0;
      for (const auto& r : rs) want += !r.excluded && r.n_align >= nt[k];
      EXPECT_EQ(by_n[k].segment_count, want);
      if (k) {
        EXPECT_LE(by_n[k].segment_count, by_n[k - 1].segment_count);
      }
    }
    auto rows = length_buckets(lt);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::size_t want = 0;
      for (const auto& r : rs) want += !r.excluded && rows[k].contains(r.source_length);
      EXPECT_EQ(by_len[k].segment_count, want);
      if (k > 2) {
        EXPECT_LE(by_len[k].segment_count, by_len[k - 1].segment_count);
      }
    }

    auto shuffled = rs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto by_n2 = bucket_by_nalign(shuffled, nt);
    for (std::size_t k = 0; k < nt.size(); ++k) {
      EXPECT_EQ(by_n[k].mean_rho, by_n2[k].mean_rho);
      EXPECT_EQ(by_n[k].mean_coverage, by_n2[k].mean_coverage);
      EXPECT_EQ(by_n[k].mean_combined, by_n2[k].mean_combined);
    }
  }
}

TEST(Correlate, NegatedErrorScore) {
  std::vector<SyncResult> rs{result("a", 3, 5, 0.1), result("b", 3, 5, 0.5),
                             result("c", 3, 5, 0.9), result("d", 0, 5, std::nullopt)};
  std::vector<JudgedSegment> js;
  for (const auto& r : rs) {
    js.push_back({r.segment_id, r.rho ? -*r.rho : 7.0, ScoreKind::error_based});
  }
  auto c = correlate_with_judgments(rs, js, MetricField::rho);
  EXPECT_NEAR(*c.r, -1.0, 1e-12);
  EXPECT_EQ(c.n_points, 3u);
  EXPECT_EQ(c.skipped, 1u);
  EXPECT_FALSE(c.note.empty());
}

TEST(Correlate, ConstantMetricIsUndefined) {
  std::vector<SyncResult> rs{result("a", 3, 5, 0.5), result("b", 3, 5, 0.5)};
  std::vector<JudgedSegment> js{{"a", 1, ScoreKind::error_based},
                                {"b", 2, ScoreKind::error_based}};
  EXPECT_FALSE(correlate_with_judgments(rs, js, MetricField::rho).r.has_value());
}

TEST(Correlate, Errors) {
  std::vector<SyncResult> rs{result("a", 3, 5, 0.5), result("b", 3, 5, 0.1)};
  std::vector<JudgedSegment> unknown{{"zz", 1, ScoreKind::error_based}};
  EXPECT_THROW(correlate_with_judgments(rs, unknown, MetricField::rho), ConsistencyError);
  std::vector<JudgedSegment> one{{"a", 1, ScoreKind::error_based}};
  EXPECT_THROW(correlate_with_judgments(rs, one, MetricField::rho), ConsistencyError);
}

TEST(Correlate, MatchesHandJoin) {
  testing::Rng rng(37);
  std::uniform_real_distribution<double> u(0, 50);
  for (int trial = 0; trial < 50; ++trial) {
    auto rs = random_results(rng, 30);
    std::vector<JudgedSegment> js;
    for (const auto& r : rs) {
      if (rng() % 4) js.push_back({r.segment_id, u(rng), ScoreKind::error_based});
    }
    std::shuffle(js.begin(), js.end(), rng);
    for (auto field : {MetricField::rho, MetricField::coverage, MetricField::combined}) {
      std::vector<double> xs, ys;
      for (const auto& j : js) {
        const auto& r = *std::find_if(rs.begin(), rs.end(),
                                      [&](const SyncResult& s) { return s.segment_id == j.segment_id; });
        auto v = field_value(r, field);
        if (r.excluded || !v) continue;
        xs.push_back(*v);
        ys.push_back(j.human_score);
      }
      if (xs.size() < 2) continue;
      auto c = correlate_with_judgments(rs, js, field);
      EXPECT_EQ(c.n_points, xs.size());
      EXPECT_NEAR(*c.r, static_cast<double>(testing::pearson_power_sums(xs, ys)), 1e-9);

      const std::vector<std::size_t> lt{15, 25};
      auto per = correlate_by_length(rs, js, field, lt);
      auto rows = length_buckets(lt);
      ASSERT_EQ(per.size(), rows.size());
      for (std::size_t k = 0; k < rows.size(); ++k) {
        std::vector<double> bx, by;
        for (const auto& j : js) {
          const auto& r = *std::find_if(rs.begin(), rs.end(), [&](const SyncResult& s) {
            return s.segment_id == j.segment_id;
          });
          auto v = field_value(r, field);
          if (r.excluded || !v || !rows[k].contains(r.source_length)) continue;
          bx.push_back(*v);
          by.push_back(j.human_score);
        }
        EXPECT_EQ(per[k].n_points, bx.size());
        if (bx.size() >= 2) {
          auto want = pearson(bx, by).r;
          ASSERT_EQ(per[k].r.has_value(), want.has_value());
          if (want) {
            EXPECT_NEAR(*per[k].r, *want, 1e-12);
          }
        } else {
          EXPECT_FALSE(per[k].r.has_value());
        }
      }
    }
  }
}

}  // namespace
}  // namespace synchro
