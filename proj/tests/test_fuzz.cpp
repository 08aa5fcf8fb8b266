#include <gtest/gtest.h>

#include "vfrag/fuzz.hpp"

using namespace vfrag;

TEST(Fuzz, EmptyConfig) {
  FuzzConfig cfg;
  cfg.cases = 0;
  FuzzReport r = fuzz_translation(cfg);
  EXPECT_EQ(r.total, 0u);
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(format_summary(r).rfind("0/0 agree", 0), 0u);
}

TEST(Fuzz, CorrectedAgrees) {
  FuzzConfig cfg;
  cfg.cases = 100;
  FuzzReport r = fuzz_translation(cfg);
  EXPECT_EQ(r.total, 100u);
  EXPECT_EQ(r.agree, 100u);
  EXPECT_EQ(r.unknown, 0u);
  EXPECT_EQ(r.errors, 0u);
  EXPECT_EQ(r.accounting_ok, 100u);
}

TEST(Fuzz, Deterministic) {
  FuzzConfig cfg;
  cfg.cases = 25;
  cfg.seed = 99;
  FuzzReport a = fuzz_translation(cfg), b = fuzz_translation(cfg);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_EQ(format_record(a.records[i]), format_record(b.records[i]));
}

TEST(Fuzz, PaperLiteralBoundaryCase) {
  FuzzConfig cfg;
  cfg.cases = 0;
  cfg.eta = EtaVariant::PaperLiteral;
  cfg.injected.push_back(bundle_counterexample());
  FuzzReport r = fuzz_translation(cfg);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_GE(r.disagree, 1u);
  EXPECT_EQ(r.records[0].status, "disagree");
  EXPECT_FALSE(r.records[0].lhs);
  EXPECT_EQ(r.records[0].rhs, Truth::True);

  cfg.eta = EtaVariant::Corrected;
  FuzzReport c = fuzz_translation(cfg);
  EXPECT_EQ(c.agree, 1u);
}

TEST(Fuzz, RecordFormat) {
  FuzzConfig cfg;
  cfg.cases = 1;
  FuzzReport r = fuzz_translation(cfg);
  ASSERT_EQ(r.records.size(), 1u);
  const std::string text = format_record(r.records[0]);
  for (const char* key : {"seed=", "formula=", "assignment=", "lhs=", "rhs=", "status="})
    EXPECT_NE(text.find(key), std::string::npos) << key;
  const std::string tsv = format_record(r.records[0], true);
  EXPECT_NE(tsv.find('\t'), std::string::npos);
}
