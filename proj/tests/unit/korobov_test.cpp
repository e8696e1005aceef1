#include "kqmc/korobov.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "kqmc/errors.hpp"
#include "kqmc/fourier.hpp"
#include "oracles.hpp"

namespace kqmc {
namespace {

std::vector<std::vector<std::int64_t>> sorted_rows(const std::vector<RationalPoint>& pts) {
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& x : pts) rows.push_back(x.numerators);
  std::sort(rows.begin(), rows.end());
  return rows;
}

TEST(KorobovSet, SmallS) {
  const auto s = s_set(2, 1);
  EXPECT_EQ(s.denominator(), 4);
  ASSERT_EQ(s.size(), 4);
  for (std::int64_t h = 0; h < 4; ++h) EXPECT_EQ(s.numerator(h, 0), h);

  const auto x = s_set(3, 2).point(2);
  EXPECT_EQ(x.denominator, 9);
  EXPECT_EQ(x.numerators, (std::vector<std::int64_t>{2, 4}));
}

TEST(KorobovSet, LargePrimeUsesModularPowers) {
  const auto s = s_set(101, 5);
  EXPECT_EQ(s.numerator(100, 4), oracle::slow_powmod(100, 5, 10201));
  EXPECT_EQ(s.numerator(100, 4), 504);
  const auto streamed = s_set(101, 5, Storage::streaming);
  EXPECT_FALSE(streamed.materialized());
  EXPECT_EQ(streamed.numerator(100, 4), 504);
  EXPECT_EQ(streamed.point(77), s.point(77));
}

TEST(KorobovSet, SmallT) {
  const auto t = t_set(2, 2);
  const auto rows = sorted_rows(t.points());
  EXPECT_EQ(rows, (std::vector<std::vector<std::int64_t>>{{0, 0}, {0, 0}, {0, 0}, {1, 1}}));
  EXPECT_EQ(t.denominator(), 2);

  const auto t3 = t_set(3, 1);
  std::vector<std::int64_t> flat;
  for (const auto& x : t3.points()) flat.push_back(x.numerators[0]);
  EXPECT_EQ(flat, (std::vector<std::int64_t>{0, 0, 0, 0, 1, 2, 0, 2, 1}));

  const auto x = t_set(5, 3).point(2 * 5 + 3);
  EXPECT_EQ(x.numerators, (std::vector<std::int64_t>{1, 3, 4}));
  EXPECT_EQ(x.denominator, 5);
}

TEST(KorobovSet, RejectsCompositeAndBadDimension) {
  EXPECT_THROW((void)s_set(9, 2), DomainError);
  EXPECT_THROW((void)t_set(1, 2), DomainError);
  EXPECT_THROW((void)s_set(7, 0), DomainError);
  EXPECT_THROW((void)s_set(7, 1).numerator(49, 0), DomainError);
}

TEST(KorobovSet, CardinalityAndRange) {
  for (const std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    for (int d = 1; d <= 6; ++d) {
      for (const auto kind : {SetKind::S, SetKind::T}) {
        const KorobovSet set(kind, p, d);
        ASSERT_EQ(set.size(), p * p);
        std::int64_t visited = 0;
        set.for_each_point([&](std::int64_t, std::span<const std::int64_t> num) {
          ++visited;
          for (const auto v : num) {
            ASSERT_GE(v, 0);
            ASSERT_LT(v, set.denominator());
          }
        });
        ASSERT_EQ(visited, p * p);
      }
    }
  }
}

TEST(KorobovSet, OneDimensionalSEnumeratesResidues) {
  for (const std::int64_t p : {2, 3, 5, 7, 31}) {
    std::vector<std::int64_t> seen;
    s_set(p, 1).for_each_point([&](std::int64_t, std::span<const std::int64_t> num) { seen.push_back(num[0]); });
    std::sort(seen.begin(), seen.end());
    for (std::int64_t i = 0; i < p * p; ++i) ASSERT_EQ(seen[static_cast<std::size_t>(i)], i);
  }
}

TEST(KorobovSet, StreamingAndMaterializedAgree) {
  for (const auto kind : {SetKind::S, SetKind::T}) {
    const KorobovSet a(kind, 13, 4, Storage::materialized);
    const KorobovSet b(kind, 13, 4, Storage::streaming);
    EXPECT_TRUE(a.materialized());
    EXPECT_FALSE(b.materialized());
    EXPECT_EQ(a.points(), b.points());
  }
}

TEST(KorobovSet, FloatProjectionWithinOneUlp) {
  const auto set = s_set(97, 3);
  for (std::int64_t i = 0; i < set.size(); i += 37) {
    const auto x = set.point(i);
    const auto xf = x.to_double();
    for (std::size_t j = 0; j < x.dim(); ++j) {
      const double exact = static_cast<double>(x.numerators[j]) / static_cast<double>(x.denominator);
      ASSERT_LE(std::abs(xf[j] - exact), std::nextafter(exact, 2.0) - exact);
      ASSERT_GE(xf[j], 0.0);
      ASSERT_LT(xf[j], 1.0);
    }
  }
}

TEST(KorobovSet, ExactPhaseMatchesFloatPhase) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> entry(-1000, 1000);
  for (const std::int64_t p : {11, 101, 1009}) {
    for (const auto kind : {SetKind::S, SetKind::T}) {
      const KorobovSet set(kind, p, 3, Storage::streaming);
      std::uniform_int_distribution<std::int64_t> pick(0, set.size() - 1);
      for (int trial = 0; trial < 200; ++trial) {
        const auto x = set.point(pick(rng));
        const auto k = Frequency::from_dense({entry(rng), entry(rng), entry(rng)});
        const auto exact = static_cast<double>(phase_numerator(k, x.numerators, x.denominator)) /
                           static_cast<double>(x.denominator);
        double fl = 0.0;
        const auto xf = x.to_double();
        for (int j = 0; j < 3; ++j) fl += static_cast<double>(k[j]) * xf[static_cast<std::size_t>(j)];
        fl -= std::floor(fl);
        double diff = std::abs(fl - exact);
        diff = std::min(diff, 1.0 - diff);
        ASSERT_LT(diff, 1e-9);
      }
    }
  }
}

TEST(UnionPointSet, Construction) {
  const auto u = union_set(SetKind::S, 10, 1);
  ASSERT_EQ(u.sets.size(), 1U);
  EXPECT_EQ(u.sets[0].p(), 7);
  EXPECT_EQ(u.size(), 49);
  EXPECT_EQ(u.label(), "P1");

  const auto t = union_set(SetKind::T, 4, 2);
  ASSERT_EQ(t.sets.size(), 1U);
  EXPECT_EQ(t.sets[0].p(), 3);
  EXPECT_EQ(t.sets[0].kind(), SetKind::T);
  EXPECT_EQ(t.size(), 9);
  EXPECT_EQ(t.label(), "P2");

  const auto big = union_set(SetKind::S, 20, 2);
  EXPECT_EQ(big.size(), 121 + 169 + 289 + 361);
  std::int64_t count = 0;
  std::int64_t last_p = 0;
  big.for_each_point([&](const KorobovSet& set, std::int64_t, std::span<const std::int64_t>) {
    ++count;
    ASSERT_GE(set.p(), last_p);
    last_p = set.p();
  });
  EXPECT_EQ(count, 940);
  EXPECT_THROW((void)union_set(SetKind::S, 1, 2), DomainError);
}

TEST(PointExport, RoundTrip) {
  const auto u = union_set(SetKind::T, 14, 3);
  std::stringstream buffer;
  write_points(buffer, u);
  const auto first_line = buffer.str().substr(0, buffer.str().find('\n'));
  EXPECT_EQ(first_line, "# kind=T p=11 d=3 denom=11");
  const auto blocks = read_points(buffer);
  ASSERT_EQ(blocks.size(), u.sets.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    EXPECT_EQ(blocks[i].p, u.sets[i].p());
    EXPECT_EQ(blocks[i].kind, SetKind::T);
    EXPECT_EQ(blocks[i].points, u.sets[i].points());
  }
}

TEST(PointExport, RejectsMalformed) {
  std::istringstream no_header("1 2\n");
  EXPECT_THROW((void)read_points(no_header), DataError);
  std::istringstream out_of_range("# kind=S p=2 d=1 denom=4\n4\n");
  EXPECT_THROW((void)read_points(out_of_range), DataError);
  std::istringstream wrong_dim("# kind=S p=2 d=2 denom=4\n1\n");
  EXPECT_THROW((void)read_points(wrong_dim), DataError);
}

}  // namespace
}  // namespace kqmc
