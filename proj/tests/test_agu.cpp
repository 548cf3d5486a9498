#include <gtest/gtest.h>

#include "rtcsim/agu.hpp"
#include "rtcsim/error.hpp"
#include "oracles.hpp"

using namespace rtcsim;

TEST(Agu, LinearSweep) {
  AguProgram p{{{10, 1, 5}}, true, 10, 5};
  for (std::uint64_t i = 0; i < 5; ++i) EXPECT_EQ(emit(p, i), 10 + i);
  EXPECT_EQ(emit(p, 5), 10u);
  EXPECT_TRUE(covers(p, 10, 14).covered);
}

TEST(Agu, StrideWrapsInRegion) {
  AguProgram p{{{0, 3, 4}}, true, 0, 4};
  std::vector<RowIndex> got;
  for (std::uint64_t i = 0; i < 4; ++i) got.push_back(emit(p, i));
  EXPECT_EQ(got, (std::vector<RowIndex>{0, 3, 2, 1}));
}

TEST(Agu, NonRepeatingProgramEnds) {
  AguProgram p{{{0, 1, 3}}, false, 0, 8};
  EXPECT_EQ(emit(p, 2), 2u);
  try {
    emit(p, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPositionOutOfProgram);
  }
}

TEST(Agu, CoverageReportsMissingRows) {
  AguProgram p{{{0, 2, 4}}, true, 0, 8};
  auto r = covers(p, 0, 7);
  EXPECT_FALSE(r.covered);
  EXPECT_EQ(r.missing, (std::vector<RowIndex>{1, 3, 5, 7}));
  EXPECT_EQ(r.missing_total, 4u);
  EXPECT_TRUE(covers(p, 4, 4).covered);
}

TEST(Agu, ValidateRejectsBadPrograms) {
  EXPECT_THROW((AguProgram{{}, true, 0, 4}.validate()), Error);
  EXPECT_THROW((AguProgram{{{0, 1, 0}}, true, 0, 4}.validate()), Error);
  EXPECT_THROW((AguProgram{{{9, 1, 1}}, true, 0, 4}.validate()), Error);
  EXPECT_THROW((AguProgram{{{0, 1, 1}}, true, 0, 0}.validate()), Error);
  EXPECT_NO_THROW((AguProgram{{{3, -1, 2}}, true, 0, 4}.validate()));
}

TEST(Agu, WordsEncodeSegments) {
  AguProgram p{{{4, 1, 8}, {20, -2, 3}}, true, 0, 64};
  EXPECT_EQ(p.to_words(), (std::vector<std::int64_t>{2, 4, 1, 8, 20, -2, 3}));
  EXPECT_EQ(p.length(), 11u);
}

TEST(Agu, RandomProgramsMatchBruteForce) {
  const auto r = oracle::check_agu(11, 2000);
  EXPECT_EQ(r.mismatches, 0u) << r.first_failure;
}
