#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>

#include <json.hpp>

#include "lezter/csv.hpp"
#include "lezter/preprocess.hpp"

using lezter::Symbol;

namespace {

std::vector<Symbol> symbols_of(const lezter::Quantized& q) {
  return {q.symbols.symbols().begin(), q.symbols.symbols().end()};
}

nlohmann::json load_fixture(const std::string& name) {
  std::ifstream in(std::string(LEZTER_FIXTURE_DIR) + "/" + name);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST(BinarizeMedian, EvenLengthUsesMidpoint) {
  const std::vector<double> v{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(lezter::median(v), 2.5);
  const auto q = lezter::binarize_median(v);
  EXPECT_EQ(symbols_of(q), (std::vector<Symbol>{0, 0, 1, 1}));
  EXPECT_FALSE(q.degenerate);
}

TEST(BinarizeMedian, ConstantSeriesIsAllOnesWithWarning) {
  const auto q = lezter::binarize_median(std::vector<double>{5, 5, 5, 5});
  EXPECT_EQ(symbols_of(q), (std::vector<Symbol>{1, 1, 1, 1}));
  EXPECT_TRUE(q.degenerate);
}

TEST(BinarizeMedian, TiesWithOddMedianMapToOne) {
  const auto q = lezter::binarize_median(std::vector<double>{3, 1, 4, 1, 5});
  EXPECT_EQ(symbols_of(q), (std::vector<Symbol>{1, 0, 1, 0, 1}));
}

TEST(BinarizeMedian, RejectsBadInput) {
  EXPECT_THROW(lezter::binarize_median(std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(lezter::binarize_median(std::vector<double>{1.0, NAN}), std::invalid_argument);
  EXPECT_THROW(lezter::binarize_median(std::vector<double>{1.0, INFINITY}), std::invalid_argument);
}

TEST(BinarizeMedian, BalancedUpToTiesWithTheMedian) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(2 + rng() % 200);
    // Coarse values so ties are common.
    for (auto& x : v) x = static_cast<double>(rng() % 7);
    const double med = lezter::median(v);
    const auto q = lezter::binarize_median(v);
    long ones = 0;
    for (Symbol s : q.symbols.symbols()) ones += static_cast<long>(s);
    const long zeros = static_cast<long>(v.size()) - ones;
    const auto tied = std::count(v.begin(), v.end(), med);
    // Values tied with the median all land on 1, so the surplus of ones is
    // at most twice the tie count and vanishes without ties.
    ASSERT_GE(ones, zeros) << "trial " << trial;
    ASSERT_LE(ones - zeros, 2 * tied) << "trial " << trial;
  }
  std::vector<double> distinct(100);
  for (std::size_t i = 0; i < distinct.size(); ++i) distinct[i] = std::sin(static_cast<double>(i) * 1.3);
  long ones = 0;
  const auto q = lezter::binarize_median(distinct);
  for (Symbol s : q.symbols.symbols()) ones += static_cast<long>(s);
  EXPECT_EQ(ones, 50);
}

TEST(QuantizeQuantiles, QuartilesOfOneToEight) {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8};
  const auto q = lezter::quantize_quantiles(v, 4);
  EXPECT_EQ(symbols_of(q), (std::vector<Symbol>{0, 0, 1, 1, 2, 2, 3, 3}));
  EXPECT_EQ(q.symbols.alphabet_size(), 4u);
  EXPECT_FALSE(q.degenerate);
}

TEST(QuantizeQuantiles, TwoSymbolsEqualMedianBinarization) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(2 + rng() % 100);
    for (auto& x : v) x = static_cast<double>(rng() % 11) - 5.0;
    ASSERT_EQ(symbols_of(lezter::quantize_quantiles(v, 2)), symbols_of(lezter::binarize_median(v)));
  }
}

TEST(QuantizeQuantiles, DuplicateThresholdsWarnButStayTotal) {
  const auto q = lezter::quantize_quantiles(std::vector<double>{0, 0, 0, 1}, 4);
  EXPECT_TRUE(q.degenerate);
  EXPECT_EQ(q.symbols.size(), 4u);
  for (Symbol s : q.symbols.symbols()) EXPECT_LT(s, 4u);
}

TEST(QuantizeQuantiles, RejectsBadArguments) {
  EXPECT_THROW(lezter::quantize_quantiles(std::vector<double>{1, 2, 3}, 1), std::invalid_argument);
  EXPECT_THROW(lezter::quantize_quantiles(std::vector<double>{1, 2, 3}, 4), std::invalid_argument);
}

TEST(QuantizeQuantiles, IsMonotone) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(20 + rng() % 200);
    for (auto& x : v) x = normal(rng);
    const std::size_t alphabet = 2 + rng() % 6;
    const auto q = lezter::quantize_quantiles(v, alphabet);
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[i] <= v[j]) {
          ASSERT_LE(q.symbols[i], q.symbols[j]);
        }
      }
    }
  }
}

TEST(AutoMutualInformation, LagZeroIsBinnedEntropy) {
  std::vector<double> v(1600);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.37 * static_cast<double>(i) * static_cast<double>(i));
  const auto curve = lezter::auto_mutual_information(v, 5, 16);
  // 1600 distinct values in 16 equal-count bins: uniform marginal.
  EXPECT_NEAR(curve.mi[0], std::log(16.0), 1e-12);
  for (double mi : curve.mi) EXPECT_GE(mi, 0.0);
}

TEST(AutoMutualInformation, IidNoiseHasSmallMutualInformation) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uniform;
  std::vector<double> v(100000);
  for (auto& x : v) x = uniform(rng);
  const auto curve = lezter::auto_mutual_information(v, 10, 16);
  for (std::size_t tau = 1; tau <= 10; ++tau) EXPECT_LT(curve.mi[tau], 0.02) << "tau=" << tau;
}

TEST(AutoMutualInformation, ExactSineMatchesOracleCurve) {
  const auto fx = load_fixture("noisy_sine_ami.json")["exact_sine"];
  std::vector<double> v(fx["length"].get<std::size_t>());
  for (std::size_t t = 0; t < v.size(); ++t) v[t] = std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / 50.0);
  const auto curve = lezter::auto_mutual_information(v, fx["max_lag"].get<std::size_t>(), 16);
  const auto expected = fx["mi"].get<std::vector<double>>();
  ASSERT_EQ(curve.mi.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(curve.mi[i], expected[i], 1e-9) << "tau=" << i;

  // Half and full periods are the most informative lags.
  std::vector<std::size_t> order(curve.mi.size() - 1);
  std::iota(order.begin(), order.end(), std::size_t{1});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return curve.mi[a] > curve.mi[b]; });
  EXPECT_EQ(std::min(order[0], order[1]), 25u);
  EXPECT_EQ(std::max(order[0], order[1]), 50u);
  EXPECT_EQ(lezter::suggest_lag(curve).lag, fx["first_local_min"].get<std::size_t>());
}

TEST(AutoMutualInformation, NoisySineMatchesOracleCurve) {
  const auto fx = load_fixture("noisy_sine_ami.json")["noisy_sine"];
  const auto table = lezter::csv::read_file(std::string(LEZTER_FIXTURE_DIR) + "/noisy_sine.csv");
  const auto v = lezter::csv::column_as_reals(table, 1);
  const auto curve = lezter::auto_mutual_information(v, fx["max_lag"].get<std::size_t>(), 16);
  const auto expected = fx["mi"].get<std::vector<double>>();
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(curve.mi[i], expected[i], 1e-9) << "tau=" << i;
  const auto lag = lezter::suggest_lag(curve);
  EXPECT_EQ(lag.lag, 12u);
  EXPECT_FALSE(lag.no_local_minimum);
  EXPECT_EQ(std::max_element(curve.mi.begin() + 1, curve.mi.end()) - curve.mi.begin(), 25);
}

TEST(AutoMutualInformation, PositiveAffineTransformLeavesCurveUnchanged) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  std::vector<double> v(3000);
  double state = 0.0;
  for (auto& x : v) x = state = 0.9 * state + normal(rng);
  std::vector<double> w(v.size());
  std::transform(v.begin(), v.end(), w.begin(), [](double x) { return 3.5 * x - 12.0; });
  const auto a = lezter::auto_mutual_information(v, 30, 16);
  const auto b = lezter::auto_mutual_information(w, 30, 16);
  EXPECT_EQ(a.mi, b.mi);
  EXPECT_EQ(lezter::suggest_lag(a).lag, lezter::suggest_lag(b).lag);
}

TEST(AutoMutualInformation, RejectsLagTooLarge) {
  EXPECT_THROW(lezter::auto_mutual_information(std::vector<double>{1, 2, 3, 4}, 2, 2), std::invalid_argument);
}

TEST(SuggestLag, FirstStrictLocalMinimum) {
  lezter::AmiCurve c{{2.0, 0.5, 0.2, 0.4, 0.3}};
  const auto s = lezter::suggest_lag(c);
  EXPECT_EQ(s.lag, 2u);
  EXPECT_FALSE(s.no_local_minimum);
}

TEST(SuggestLag, MonotoneCurveFallsBackToGlobalMinimum) {
  lezter::AmiCurve c{{2.0, 1.0, 0.8, 0.5, 0.3}};
  const auto s = lezter::suggest_lag(c);
  EXPECT_EQ(s.lag, 4u);
  EXPECT_TRUE(s.no_local_minimum);
}

TEST(SuggestLag, NeedsThreeLags) {
  EXPECT_THROW(lezter::suggest_lag(lezter::AmiCurve{{1.0, 0.5}}), std::invalid_argument);
}

TEST(SuggestEmbeddingDim, SumPlusOne) {
  EXPECT_EQ(lezter::suggest_embedding_dim(2, 2), 5);
  EXPECT_EQ(lezter::suggest_embedding_dim(3, 3), 7);
  EXPECT_EQ(lezter::suggest_embedding_dim(1, 1), 3);
  EXPECT_THROW(lezter::suggest_embedding_dim(0, 2), std::invalid_argument);
}
