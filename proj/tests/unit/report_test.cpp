#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"

#include "synchro/error.hpp"
#include "synchro/report.hpp"

namespace synchro {
namespace {

SyncResult sample() {
  SyncResult r;
  r.segment_id = "s1";
  r.rho = 0.2;
  r.coverage = 11.0 / 23.0;
  r.combined = 0.2 * 11.0 / 23.0;
  r.n_align = 4;
  r.source_length = 23;
  r.sequence = {1, 4, 3, 2};
  r.used_links = {{0, 0, 0.9}, {3, 1, 0.75}, {2, 2, 0.8}, {1, 3, 0.123456789}};
  return r;
}

TEST(Records, RoundTripIsExact) {
  SyncResult undefined;
  undefined.segment_id = "s2";
  undefined.excluded = true;
  undefined.source_length = 3;
  std::istringstream in(format_result_record(sample()) + "\n" +
                        R"({"kind":"bucket","bucket_key":"x"})" + "\n" +
                        format_result_record(undefined) + "\n");
  auto back = parse_results(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], sample());
  EXPECT_EQ(back[1], undefined);
}

TEST(Records, UndefinedIsNull) {
  SyncResult r;
  r.segment_id = "x";
  auto j = nlohmann::json::parse(format_result_record(r));
  EXPECT_TRUE(j["rho"].is_null());
  EXPECT_EQ(j["kind"], "segment");
}

TEST(Records, ParseErrors) {
  std::istringstream junk("not json\n");
  EXPECT_THROW(parse_results(junk), ParseError);
  std::istringstream no_kind(R"({"segment_id":"x"})");
  EXPECT_THROW(parse_results(no_kind), ParseError);
}

TEST(ScoreReport, TableShowsNaAndHeader) {
  SyncResult undefined;
  undefined.segment_id = "s2";
  undefined.excluded = true;
  std::vector<SyncResult> rs{sample(), undefined};
  std::ostringstream out;
  write_score_report(out, ReportFormat::table, {"score", {{"theta", "0.71"}}}, rs, {}, {});
  const auto text = out.str();
  EXPECT_EQ(text.rfind("# synchro score\n# config: theta=0.71\n", 0), 0u);
  EXPECT_NE(text.find("n/a"), std::string::npos);
  EXPECT_NE(text.find("0.2000"), std::string::npos);
  EXPECT_NE(text.find("1 4 3 2"), std::string::npos);
}

TEST(ScoreReport, RecordsAreJsonLines) {
  std::vector<SyncResult> rs{sample()};
  std::vector<BucketReport> buckets{{"n_align>=2", 0.2, 0.5, 0.1, 1, 0}};
  std::ostringstream out;
  write_score_report(out, ReportFormat::records, {"score", {}}, rs, buckets, buckets);
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> kinds;
  while (std::getline(in, line)) kinds.push_back(nlohmann::json::parse(line)["kind"]);
  ASSERT_GE(kinds.size(), 4u);
  EXPECT_EQ(kinds.front(), "config");
  EXPECT_EQ(kinds[1], "segment");
}

TEST(BucketReport, ParenthesizedCounts) {
  std::vector<BucketReport> b{{"n_align>=4", 0.5123, 0.25, 0.128, 7, 2}};
  std::ostringstream out;
  write_bucket_report(out, ReportFormat::table, {"report", {}}, b, {});
  EXPECT_NE(out.str().find("0.5123 (0.2500)"), std::string::npos);
  EXPECT_NE(out.str().find("(7)"), std::string::npos);
}

TEST(EvalReport, PercentDisplay) {
  AlignmentEvalResult r{"corpus", 0.25, 0.8, 0.7, 0.74666, {}, false, false};
  std::ostringstream pct, frac;
  write_alignment_eval_report(pct, ReportFormat::table, {"eval-align", {}}, {}, r, true);
  write_alignment_eval_report(frac, ReportFormat::table, {"eval-align", {}}, {}, r, false);
  EXPECT_NE(pct.str().find("25.0"), std::string::npos);
  EXPECT_NE(pct.str().find("0.747"), std::string::npos);
  EXPECT_NE(frac.str().find("0.2500"), std::string::npos);
}

TEST(CorrelationReport, ErrorBasedNote) {
  CorrelationResult c{"rho", 5, -0.4, 1, "error-based judgments: negative r means agreement"};
  std::ostringstream out;
  write_correlation_report(out, ReportFormat::table, {"correlate", {}},
                           std::vector<CorrelationResult>{c}, {});
  EXPECT_NE(out.str().find("negative r means agreement"), std::string::npos);
  EXPECT_NE(out.str().find("-0.4000"), std::string::npos);
}

}  // namespace
}  // namespace synchro
