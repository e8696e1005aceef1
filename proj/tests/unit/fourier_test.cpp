#include "kqmc/fourier.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "kqmc/errors.hpp"
#include "oracles.hpp"

namespace kqmc {
namespace {

SpectralFunction cosine(int d, const Frequency& k, double amplitude = 1.0) {
  return SpectralFunction(d, {{k, amplitude / 2.0}, {-k, amplitude / 2.0}}, true);
}

TEST(Width, Definition) {
  EXPECT_EQ(width(std::vector<int>{}), 1);
  EXPECT_EQ(width(std::vector<int>{3}), 1);
  EXPECT_EQ(width(std::vector<int>{2, 5}), 4);
  EXPECT_EQ(width(Frequency::from_dense({0, 2, 0, -7})), 3);
  EXPECT_EQ(width(Frequency(4)), 1);
}

TEST(Frequency, CanonicalEncoding) {
  const auto k = Frequency::from_dense({0, 2, 0, -7});
  EXPECT_EQ(k.entries(), (std::vector<Frequency::Entry>{{1, 2}, {3, -7}}));
  EXPECT_EQ(k.support(), (std::vector<int>{2, 4}));
  EXPECT_EQ(k, Frequency::from_pairs(4, {{3, -7}, {1, 2}, {0, 0}}));
  EXPECT_EQ(k.dense(), (std::vector<std::int64_t>{0, 2, 0, -7}));
  EXPECT_EQ((-k)[3], 7);
  EXPECT_TRUE((k - k).is_zero());
  EXPECT_EQ(k.reversed(), Frequency::from_dense({-7, 0, 2, 0}));
  EXPECT_THROW((void)Frequency::from_pairs(2, {{2, 1}}), DomainError);
  EXPECT_THROW((void)Frequency::from_pairs(2, {{1, 1}, {1, 2}}), DomainError);
}

TEST(Weight, Examples) {
  EXPECT_DOUBLE_EQ(weight(Frequency::from_dense({0, 2, 0, -7}), WeightScheme::F2), 3.0);
  EXPECT_NEAR(weight(Frequency::from_dense({3}), WeightScheme::F1), std::log(3.0), 1e-15);
  EXPECT_NEAR(weight(Frequency::from_dense({3}), WeightScheme::F1), 1.0986, 5e-5);
  for (const auto s : {WeightScheme::F1, WeightScheme::F2, WeightScheme::F3}) {
    EXPECT_DOUBLE_EQ(weight(Frequency(5), s), 1.0);
  }
  EXPECT_DOUBLE_EQ(weight(Frequency::from_dense({0, 2, 0, -7}), WeightScheme::F3), 2.0);
  EXPECT_DOUBLE_EQ(weight(Frequency::from_dense({100, 0, 0, 0, 100}), WeightScheme::F2), 5.0);
  EXPECT_NEAR(weight(Frequency::from_dense({100, 0, 0, 0, 100}), WeightScheme::F1), std::log(100.0), 1e-15);
}

TEST(Weight, OrderingProperty) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 12);
  std::uniform_int_distribution<std::int64_t> entry(-200, 200);
  std::bernoulli_distribution sparse(0.6);
  for (int trial = 0; trial < 5000; ++trial) {
    const int d = dim(rng);
    std::vector<std::int64_t> k(static_cast<std::size_t>(d));
    for (auto& v : k) v = sparse(rng) ? 0 : entry(rng);
    const auto f = Frequency::from_dense(k);
    const double w1 = weight(f, WeightScheme::F1);
    const double w2 = weight(f, WeightScheme::F2);
    const double w3 = weight(f, WeightScheme::F3);
    ASSERT_LE(w1, w3);
    ASSERT_LE(w3, w2);
    if (width(f) == 1) {
      ASSERT_EQ(w1, w2);
    }
  }
}

TEST(Norm, Examples) {
  const auto f = cosine(1, Frequency::from_dense({3}));
  EXPECT_NEAR(norm(f, WeightScheme::F1), std::log(3.0), 1e-15);
  EXPECT_NEAR(norm(f, WeightScheme::F1), 1.0986, 5e-5);

  const SpectralFunction c(2, {{Frequency(2), Complex{-2.5, 0.0}}}, true);
  EXPECT_DOUBLE_EQ(norm(c, WeightScheme::F2), 2.5);

  const SpectralFunction g(2, {{Frequency::from_dense({1, 0}), 1.0}, {Frequency::from_dense({0, 1}), 1.0}}, false);
  EXPECT_DOUBLE_EQ(norm(g, WeightScheme::F2), 2.0);
  EXPECT_DOUBLE_EQ(norm(SpectralFunction(3, {}, true), WeightScheme::F1), 0.0);
}

TEST(SpectralFunction, CanonicalAndHermitian) {
  const auto k = Frequency::from_dense({1, 2});
  const SpectralFunction f(2, {{k, 1.0}, {k, -1.0}, {Frequency(2), 3.0}}, false);
  EXPECT_EQ(f.coeffs().size(), 1U);
  EXPECT_THROW(SpectralFunction(2, {{k, Complex(1.0, 1.0)}, {-k, Complex(1.0, 1.0)}}, true), DomainError);
  EXPECT_THROW(SpectralFunction(2, {{Frequency(2), Complex(0.0, 1.0)}}, true), DomainError);
  EXPECT_THROW(SpectralFunction(2, {{Frequency::from_dense({1}), 1.0}}, false), DomainError);
  EXPECT_NO_THROW(SpectralFunction(2, {{k, Complex(1.0, 1.0)}, {-k, Complex(1.0, -1.0)}}, true));
}

TEST(Evaluate, Examples) {
  const SpectralFunction one(1, {{Frequency(1), 1.0}}, true);
  EXPECT_EQ(evaluate(one, RationalPoint{{3}, 7}), Complex(1.0, 0.0));

  const SpectralFunction g(1, {{Frequency(1), 1.0}, {Frequency::from_dense({3}), -1.0}}, false);
  const auto v = evaluate(g, RationalPoint{{1}, 6});
  EXPECT_NEAR(v.real(), 2.0, 1e-15);
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);

  const auto c = cosine(1, Frequency::from_dense({1}));
  EXPECT_NEAR(std::abs(evaluate(c, RationalPoint{{1}, 4})), 0.0, 1e-15);
  EXPECT_THROW((void)evaluate(c, RationalPoint{{1, 1}, 4}), DomainError);
}

TEST(Evaluate, ExactMatchesFloatOracle) {
  const auto f = random_function(5, 3, 12, 40, WeightScheme::F2);
  const auto set = t_set(13, 3);
  for (std::int64_t i = 0; i < set.size(); i += 5) {
    const auto x = set.point(i);
    ASSERT_LT(std::abs(evaluate(f, x) - oracle::evaluate(f, x.to_double())), 1e-12);
    ASSERT_LT(std::abs(evaluate(f, x) - evaluate(f, std::span<const double>(x.to_double()))), 1e-12);
  }
}

TEST(Integral, Examples) {
  EXPECT_EQ(integral(SpectralFunction(1, {{Frequency(1), 5.0}}, true)), Complex(5.0));
  EXPECT_EQ(integral(cosine(1, Frequency::from_dense({3}))), Complex(0.0));
  const SpectralFunction f(2, {{Frequency(2), 0.25}, {Frequency::from_dense({1, 1}), Complex(0.0, 1.0)}}, false);
  EXPECT_EQ(integral(f), Complex(0.25));
}

TEST(RandomFunction, SinglePair) {
  const auto f = random_function(1, 1, 1, 1, WeightScheme::F1);
  ASSERT_EQ(f.coeffs().size(), 2U);
  const auto c = f.coeff(Frequency::from_dense({1}));
  EXPECT_EQ(f.coeff(Frequency::from_dense({-1})), std::conj(c));
  EXPECT_NEAR(std::abs(c), 0.5, 1e-15);  // a cos(2 pi x + phi) with a = 1
  EXPECT_NEAR(norm(f, WeightScheme::F1), 1.0, 1e-12);
}

TEST(RandomFunction, DeterministicAndNormalized) {
  for (const auto scheme : {WeightScheme::F1, WeightScheme::F2, WeightScheme::F3}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const int d = 1 + static_cast<int>(seed % 6);
      const auto f = random_function(seed, d, 1 + static_cast<int>(seed % 9), 30, scheme);
      const auto g = random_function(seed, d, 1 + static_cast<int>(seed % 9), 30, scheme);
      ASSERT_EQ(f.coeffs(), g.coeffs());
      ASSERT_TRUE(f.real_valued());
      ASSERT_NEAR(norm(f, scheme), 1.0, 1e-12);
      ASSERT_EQ(integral(f), Complex(0.0));
    }
  }
}

TEST(RandomFunction, DenseRegimeAndImpossibleBudget) {
  const auto f = random_function(3, 1, 2, 2, WeightScheme::F2);
  EXPECT_EQ(f.coeffs().size(), 4U);
  EXPECT_THROW((void)random_function(3, 1, 3, 2, WeightScheme::F2), DomainError);
  EXPECT_THROW((void)random_function(3, 1, 0, 2, WeightScheme::F2), DomainError);
}

TEST(Norm, MonotoneAndPermutationInvariance) {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int d = 2 + static_cast<int>(seed % 7);
    const auto f = random_function(seed, d, 10, 20, WeightScheme::F1);
    const double n1 = norm(f, WeightScheme::F1);
    const double n2 = norm(f, WeightScheme::F2);
    const double n3 = norm(f, WeightScheme::F3);
    ASSERT_LE(n1, n3 + 1e-15);
    ASSERT_LE(n3, n2 + 1e-15);

    std::vector<int> reverse(static_cast<std::size_t>(d));
    std::iota(reverse.rbegin(), reverse.rend(), 0);
    ASSERT_NEAR(norm(f.permuted(reverse), WeightScheme::F2), n2, 1e-13);

    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto g = f.permuted(perm);
    ASSERT_NEAR(norm(g, WeightScheme::F1), n1, 1e-13);
    ASSERT_NEAR(norm(g, WeightScheme::F3), n3, 1e-13);
  }
}

TEST(Json, RoundTripAndErrors) {
  const auto f = random_function(8, 4, 6, 9, WeightScheme::F3);
  const auto g = spectral_function_from_json(to_json(f));
  EXPECT_EQ(g.dim(), 4);
  EXPECT_TRUE(g.real_valued());
  EXPECT_EQ(g.coeffs(), f.coeffs());
  EXPECT_THROW((void)spectral_function_from_json("{"), DataError);
  EXPECT_THROW((void)spectral_function_from_json(R"({"d":2,"coeffs":[{"k":[[5,1]],"re":1}]})"), DomainError);
}

}  // namespace
}  // namespace kqmc
