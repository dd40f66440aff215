#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "pcomb/combiners.hpp"
#include "pcomb/errors.hpp"
#include "pcomb/models.hpp"
#include "pcomb/rng.hpp"

using namespace pcomb;

namespace {

using Vec = std::vector<double>;

constexpr CombinerId kAll[] = {CombinerId::Fisher, CombinerId::Stouffer, CombinerId::Minimum,
                               CombinerId::Bonferroni};

}  // namespace

TEST(Fisher, Examples) {
  EXPECT_EQ(fisher_g(Vec{1.0, 1.0}).value(), 1.0);
  EXPECT_EQ(fisher_g(Vec{0.0, 0.9}).value(), 0.0);
  // -2 log(0.25) = 2.772589 on 4 dof, survival from the MPFR oracle.
  const double statistic = -2.0 * std::log(0.25);
  EXPECT_NEAR(fisher_g(Vec{0.5, 0.5}).value(), oracle::chi2_sf_even(statistic, 4), 1e-14);
  EXPECT_NEAR(fisher_g(Vec{0.5, 0.5}).value(), 0.596574, 1e-6);
}

TEST(Fisher, MatchesOracleOnRandomVectors) {
  RngStream rng(3, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + trial % 8;
    Vec p(k);
    double statistic = 0.0;
    for (auto& x : p) {
      x = std::pow(rng.uniform(), 4.0);
      statistic -= 2.0 * std::log(x);
    }
    EXPECT_NEAR(fisher_g(p).value(), oracle::chi2_sf_even(statistic, 2 * static_cast<int>(k)), 1e-12);
  }
}

TEST(Stouffer, Examples) {
  EXPECT_NEAR(stouffer_g(Vec{0.3}).value(), 0.3, 1e-15);
  EXPECT_NEAR(stouffer_g(Vec{0.5, 0.5}).value(), 0.5, 1e-15);
  const double z = 2.0 * oracle::normal_quantile(0.9) / std::sqrt(2.0);
  EXPECT_NEAR(stouffer_g(Vec{0.1, 0.1}).value(), oracle::normal_cdf(-z), 1e-13);
  EXPECT_NEAR(stouffer_g(Vec{0.1, 0.1}).value(), 0.03497, 1e-5);
}

TEST(Stouffer, BoundaryLimits) {
  EXPECT_EQ(stouffer_g(Vec{0.0, 0.4, 0.9}).value(), 0.0);
  EXPECT_EQ(stouffer_g(Vec{1.0, 0.4, 0.01}).value(), 1.0);
  EXPECT_THROW(stouffer_g(Vec{0.0, 1.0}), IndeterminateStatistic);
}

TEST(Minimum, Examples) {
  EXPECT_EQ(minimum_g(Vec{0.0, 0.5}).value(), 0.0);
  EXPECT_NEAR(minimum_g(Vec{0.1, 0.2, 0.3, 0.4, 0.5}).value(), 1.0 - std::pow(0.9, 5), 1e-15);
  EXPECT_NEAR(minimum_g(Vec{0.1, 0.2, 0.3, 0.4, 0.5}).value(), 0.40951, 1e-15);
  EXPECT_NEAR(minimum_g(Vec{0.7}).value(), 0.7, 1e-15);
}

TEST(Bonferroni, Examples) {
  EXPECT_DOUBLE_EQ(bonferroni_g(Vec{0.1, 0.2, 0.3, 0.4, 0.5}).value(), 0.5);
  EXPECT_EQ(bonferroni_g(Vec{0.3, 0.4, 0.5, 0.6, 0.7}).value(), 1.0);
  EXPECT_DOUBLE_EQ(bonferroni_g(Vec{0.2}).value(), 0.2);
}

TEST(Combiners, RejectEmptyAndOutOfRange) {
  for (CombinerId id : kAll) {
    EXPECT_THROW(combine(id, Vec{}), ParameterError) << combiner_name(id);
    EXPECT_THROW(combine(id, Vec{0.5, 1.5}), DomainError) << combiner_name(id);
    EXPECT_THROW(combine(id, Vec{-0.1}), DomainError) << combiner_name(id);
    EXPECT_THROW(combine(id, Vec{std::nan("")}), DomainError) << combiner_name(id);
  }
}

TEST(Combiners, NamesRoundTrip) {
  for (CombinerId id : kAll) EXPECT_EQ(parse_combiner(combiner_name(id)), id);
  EXPECT_EQ(parse_combiner("FISHER"), CombinerId::Fisher);
  EXPECT_EQ(parse_combiner("min"), CombinerId::Minimum);
  EXPECT_THROW(parse_combiner("pearson"), ParameterError);
}

TEST(PartialConjunction, Examples) {
  const Vec p{0.01, 0.2, 1, 1, 1, 1};
  EXPECT_NEAR(partial_conjunction_p(p, 2, CombinerId::Minimum).value(), 1.0 - std::pow(0.8, 5), 1e-15);
  EXPECT_NEAR(partial_conjunction_p(p, 2, CombinerId::Minimum).value(), 0.67232, 1e-12);
  EXPECT_EQ(partial_conjunction_p(p, 2, CombinerId::Bonferroni).value(), 1.0);
}

TEST(PartialConjunction, GammaOneIsTheBaseCombiner) {
  RngStream rng(8, 0);
  for (int trial = 0; trial < 50; ++trial) {
    Vec p(6);
    for (auto& x : p) x = rng.uniform();
    for (CombinerId id : kAll) {
      EXPECT_NEAR(partial_conjunction_p(p, 1, id).value(), combine(id, p).value(), 1e-15);
    }
  }
}

TEST(PartialConjunction, UsesTheLargestValues) {
  const Vec p{0.9, 0.001, 0.3, 0.02, 0.6};
  const Vec largest{0.3, 0.6, 0.9};
  for (CombinerId id : kAll) {
    EXPECT_EQ(partial_conjunction_p(p, 3, id).value(), combine(id, largest).value());
  }
}

TEST(PartialConjunction, RejectsGammaOutOfRange) {
  const Vec p{0.1, 0.2, 0.3};
  EXPECT_THROW(partial_conjunction_p(p, 0, CombinerId::Fisher), ParameterError);
  EXPECT_THROW(partial_conjunction_p(p, 4, CombinerId::Fisher), ParameterError);
  EXPECT_THROW(partial_conjunction_p(Vec{0.1, 2.0}, 1, CombinerId::Fisher), DomainError);
}

TEST(Properties, MonotoneInEachCoordinate) {
  RngStream rng(21, 0);
  for (int trial = 0; trial < 500; ++trial) {
    Vec p(1 + trial % 6);
    for (auto& x : p) x = rng.uniform();
    const std::size_t j = static_cast<std::size_t>(rng.uniform() * p.size());
    Vec q = p;
    q[j] = p[j] + (1.0 - p[j]) * rng.uniform();
    for (CombinerId id : kAll) {
      EXPECT_LE(combine(id, p).value(), combine(id, q).value()) << combiner_name(id);
    }
    for (int gamma = 1; gamma <= static_cast<int>(p.size()); ++gamma) {
      for (CombinerId id : kAll) {
        EXPECT_LE(partial_conjunction_p(p, gamma, id).value(), partial_conjunction_p(q, gamma, id).value());
      }
    }
  }
}

TEST(Properties, PermutationInvariant) {
  RngStream rng(22, 0);
  for (int trial = 0; trial < 100; ++trial) {
    Vec p(6);
    for (auto& x : p) x = rng.uniform();
    Vec q = p;
    std::reverse(q.begin(), q.end());
    std::rotate(q.begin(), q.begin() + trial % 6, q.end());
    for (CombinerId id : kAll) {
      EXPECT_NEAR(combine(id, p).value(), combine(id, q).value(), 1e-15);
      EXPECT_EQ(partial_conjunction_p(p, 3, id).value(), partial_conjunction_p(q, 3, id).value());
    }
  }
}

TEST(Properties, SingleValueIsIdentity) {
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    for (CombinerId id : {CombinerId::Fisher, CombinerId::Stouffer, CombinerId::Minimum}) {
      EXPECT_NEAR(combine(id, Vec{t}).value(), t, 1e-10) << combiner_name(id) << " t " << t;
    }
  }
}

TEST(Properties, ExactUnderLeastFavourableConfiguration) {
  // s = 6, gamma = 2: one p-value pinned at 0, five iid uniforms.
  constexpr int kReps = 100000;
  const double levels[] = {0.01, 0.05, 0.10};
  std::array<std::array<int, 3>, 4> hits{};
  RngStream rng(77, 0);
  Vec p(6);
  for (int rep = 0; rep < kReps; ++rep) {
    p[0] = 0.0;
    for (std::size_t i = 1; i < 6; ++i) p[i] = rng.uniform();
    for (std::size_t m = 0; m < 4; ++m) {
      const double v = partial_conjunction_p(p, 2, kAll[m]).value();
      for (std::size_t l = 0; l < 3; ++l) hits[m][l] += v <= levels[l];
    }
  }
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t l = 0; l < 3; ++l) {
      const double rate = static_cast<double>(hits[m][l]) / kReps;
      const double band = 3.0 * oracle::binomial_se(levels[l], kReps);
      if (kAll[m] == CombinerId::Bonferroni) {
        EXPECT_LE(rate, levels[l] + band) << "bonferroni at " << levels[l];
      } else {
        EXPECT_NEAR(rate, levels[l], band) << combiner_name(kAll[m]) << " at " << levels[l];
      }
    }
  }
}

TEST(Properties, ValidUnderConservativeNulls) {
  // Beta-Model draws at theta = -1 are stochastically larger than uniform.
  constexpr int kReps = 100000;
  const double levels[] = {0.01, 0.05, 0.10};
  std::array<std::array<int, 3>, 4> hits{};
  RngStream rng(78, 0);
  const ModelSpec beta = ModelSpec::beta();
  Vec p(6);
  for (int rep = 0; rep < kReps; ++rep) {
    p[0] = 0.0;
    for (std::size_t i = 1; i < 6; ++i) p[i] = sample_p(beta, -1.0, rng);
    for (std::size_t m = 0; m < 4; ++m) {
      const double v = partial_conjunction_p(p, 2, kAll[m]).value();
      for (std::size_t l = 0; l < 3; ++l) hits[m][l] += v <= levels[l];
    }
  }
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t l = 0; l < 3; ++l) {
      const double rate = static_cast<double>(hits[m][l]) / kReps;
      EXPECT_LE(rate, levels[l] + 3.0 * oracle::binomial_se(levels[l], kReps))
          << combiner_name(kAll[m]) << " at " << levels[l];
    }
  }
}
