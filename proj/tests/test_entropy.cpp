#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "entrosteer/core.hpp"
#include "entrosteer/entropy.hpp"

using namespace entrosteer;

namespace {

ProbDist random_dist(Rng& rng, std::size_t n, bool with_zero = false) {
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) s += (x = -std::log(1.0 - rng.uniform()));
  if (with_zero) {
    s -= v[0];
    v[0] = 0.0;
  }
  for (auto& x : v) x /= s;
  return ProbDist(v);
}

ProbDist mix_dist(const ProbDist& a, const ProbDist& b, double l) { return mix(a, b, l); }

double div(const ProbDist& p, const ProbDist& r, const EntropyKind& k) { return relative_entropy(p, r, k).value(); }

const std::vector<double> kGrid{0.5, 1.5, 2.0, 3.0, 5.0};

}  // namespace

//------------------------------------------------------------------------------
// Distributions
//------------------------------------------------------------------------------

TEST(ProbDist, ClampsTinyNegativesAndRejectsBadInput) {
  const ProbDist p({0.5, 0.5 + 1e-13, -1e-13});
  EXPECT_EQ(p[2], 0.0);
  EXPECT_THROW(ProbDist({0.6, 0.6}), Error);
  EXPECT_THROW(ProbDist({1.1, -0.1}), Error);
  EXPECT_THROW(ProbDist(std::vector<double>{}), Error);
}

TEST(EntropyKind, RejectsInvalidParameters) {
  EXPECT_THROW(EntropyKind::tsallis(0.0), Error);
  EXPECT_THROW(EntropyKind::tsallis(-1.0), Error);
  EXPECT_THROW(EntropyKind::renyi(std::nan("")), Error);
}

//------------------------------------------------------------------------------
// q-logarithm
//------------------------------------------------------------------------------

TEST(QLog, KnownValues) {
  for (double q : kGrid) EXPECT_EQ(q_log(1.0, q), 0.0);
  EXPECT_NEAR(q_log(2.0, 2.0), 0.5, 1e-15);
  EXPECT_NEAR(q_log(2.0, 3.0), 0.375, 1e-15);
  EXPECT_NEAR(q_log(std::numbers::e, 1.0 + 1e-12), 1.0, 1e-9);
  EXPECT_NEAR(q_log(std::numbers::e, 1.0 - 1e-12), 1.0, 1e-9);
}

TEST(QLog, RejectsNonPositiveArgument) {
  try {
    q_log(0.0, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainError);
  }
}

TEST(QLog, ContinuousAcrossOne) {
  for (double x : {0.3, 2.0, 7.5}) EXPECT_NEAR(q_log(x, 1.0 + 1e-7), std::log(x), 1e-6);
}

//------------------------------------------------------------------------------
// Entropies
//------------------------------------------------------------------------------

TEST(Entropy, DeltaIsZeroForEveryKind) {
  const ProbDist delta({1.0, 0.0, 0.0});
  EXPECT_EQ(entropy(delta, EntropyKind::shannon()), 0.0);
  for (double a : kGrid) {
    EXPECT_NEAR(entropy(delta, EntropyKind::tsallis(a)), 0.0, 1e-15);
    EXPECT_NEAR(entropy(delta, EntropyKind::renyi(a)), 0.0, 1e-15);
  }
}

TEST(Entropy, UniformValues) {
  const ProbDist u = ProbDist::uniform(2);
  EXPECT_NEAR(entropy(u, EntropyKind::shannon()), std::log(2.0), 1e-15);
  EXPECT_NEAR(entropy(u, EntropyKind::tsallis(2.0)), 0.5, 1e-15);
  EXPECT_NEAR(entropy(u, EntropyKind::tsallis(2.0)), q_log(2.0, 2.0), 1e-15);
  for (double r : kGrid) EXPECT_NEAR(entropy(ProbDist::uniform(5), EntropyKind::renyi(r)), std::log(5.0), 1e-12);
}

TEST(EntropyProperty, MonotoneInParameter) {
  Rng rng(RngSeed{21});
  for (int t = 0; t < 100; ++t) {
    const ProbDist p = random_dist(rng, 2 + t % 6, t % 3 == 0);
    for (std::size_t k = 1; k < kGrid.size(); ++k) {
      EXPECT_LE(entropy(p, EntropyKind::tsallis(kGrid[k])), entropy(p, EntropyKind::tsallis(kGrid[k - 1])) + 1e-12);
      EXPECT_LE(entropy(p, EntropyKind::renyi(kGrid[k])), entropy(p, EntropyKind::renyi(kGrid[k - 1])) + 1e-12);
    }
  }
}

TEST(EntropyProperty, RenyiTsallisBridge) {
  Rng rng(RngSeed{22});
  for (int t = 0; t < 100; ++t) {
    const ProbDist p = random_dist(rng, 2 + t % 7);
    for (double r : kGrid) {
      const double st = entropy(p, EntropyKind::tsallis(r));
      EXPECT_NEAR(entropy(p, EntropyKind::renyi(r)), std::log(1.0 + (1.0 - r) * st) / (1.0 - r), 1e-10);
    }
  }
}

TEST(EntropyProperty, Concavity) {
  Rng rng(RngSeed{23});
  for (int t = 0; t < 200; ++t) {
    const ProbDist p1 = random_dist(rng, 4), p2 = random_dist(rng, 4);
    const double l = rng.uniform();
    const ProbDist m = mix_dist(p1, p2, l);
    for (const EntropyKind& k : {EntropyKind::shannon(), EntropyKind::tsallis(0.5), EntropyKind::tsallis(2.0),
                                 EntropyKind::tsallis(5.0)})
      EXPECT_GE(entropy(m, k), l * entropy(p1, k) + (1.0 - l) * entropy(p2, k) - 1e-12);
  }
}

TEST(EntropyProperty, TsallisPseudoAdditivity) {
  Rng rng(RngSeed{24});
  for (int t = 0; t < 100; ++t) {
    const ProbDist p = random_dist(rng, 3), r = random_dist(rng, 4);
    for (double q : kGrid) {
      const double sp = entropy(p, EntropyKind::tsallis(q)), sr = entropy(r, EntropyKind::tsallis(q));
      EXPECT_NEAR(entropy(product(p, r), EntropyKind::tsallis(q)), sp + sr + (1.0 - q) * sp * sr, 1e-10);
    }
  }
}

TEST(EntropyProperty, ShannonAndRenyiAdditive) {
  Rng rng(RngSeed{25});
  const ProbDist p = random_dist(rng, 3), r = random_dist(rng, 5);
  EXPECT_NEAR(entropy(product(p, r), EntropyKind::shannon()),
              entropy(p, EntropyKind::shannon()) + entropy(r, EntropyKind::shannon()), 1e-12);
  for (double a : kGrid)
    EXPECT_NEAR(entropy(product(p, r), EntropyKind::renyi(a)),
                entropy(p, EntropyKind::renyi(a)) + entropy(r, EntropyKind::renyi(a)), 1e-12);
}

TEST(EntropyProperty, MinEntropyLimit) {
  Rng rng(RngSeed{26});
  for (int t = 0; t < 50; ++t) {
    const ProbDist p = random_dist(rng, 2 + t % 5);
    EXPECT_NEAR(entropy(p, EntropyKind::renyi(1e6)), -std::log(p.max()), 1e-4);
  }
}

TEST(EntropyProperty, ShannonLimitContinuity) {
  Rng rng(RngSeed{27});
  for (int t = 0; t < 50; ++t) {
    const ProbDist p = random_dist(rng, 2 + t % 5, t % 2 == 0);
    const double s = entropy(p, EntropyKind::shannon());
    for (double e : {1e-6, -1e-6, 1e-12}) {
      EXPECT_NEAR(entropy(p, EntropyKind::tsallis(1.0 + e)), s, 1e-4);
      EXPECT_NEAR(entropy(p, EntropyKind::renyi(1.0 + e)), s, 1e-4);
    }
  }
}

//------------------------------------------------------------------------------
// Relative entropies
//------------------------------------------------------------------------------

TEST(RelativeEntropy, SelfDivergenceIsZero) {
  Rng rng(RngSeed{31});
  const ProbDist p = random_dist(rng, 4, true);
  EXPECT_NEAR(div(p, p, EntropyKind::shannon()), 0.0, 1e-14);
  for (double a : kGrid) {
    EXPECT_NEAR(div(p, p, EntropyKind::tsallis(a)), 0.0, 1e-14);
    EXPECT_NEAR(div(p, p, EntropyKind::renyi(a)), 0.0, 1e-14);
  }
}

TEST(RelativeEntropy, DeltaAgainstUniform) {
  EXPECT_NEAR(div(ProbDist({1.0, 0.0}), ProbDist::uniform(2), EntropyKind::shannon()), std::log(2.0), 1e-15);
}

TEST(RelativeEntropy, SupportMismatchIsInfinite) {
  const Divergence d = relative_entropy(ProbDist({0.5, 0.5}), ProbDist({1.0, 0.0}), EntropyKind::shannon());
  EXPECT_FALSE(d.is_finite());
  try {
    (void)d.value();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfiniteDivergence);
  }
  // Zero mass where the reference vanishes is fine.
  EXPECT_TRUE(relative_entropy(ProbDist({1.0, 0.0}), ProbDist({0.5, 0.5}), EntropyKind::tsallis(2.0)).is_finite());
}

TEST(RelativeEntropyProperty, NonNegative) {
  Rng rng(RngSeed{32});
  for (int t = 0; t < 100; ++t) {
    const ProbDist p = random_dist(rng, 4), r = random_dist(rng, 4);
    EXPECT_GE(div(p, r, EntropyKind::shannon()), -1e-14);
    for (double a : kGrid) {
      EXPECT_GE(div(p, r, EntropyKind::tsallis(a)), -1e-14);
      EXPECT_GE(div(p, r, EntropyKind::renyi(a)), -1e-14);
    }
  }
}

TEST(RelativeEntropyProperty, AdditivityOnProducts) {
  Rng rng(RngSeed{33});
  for (int t = 0; t < 50; ++t) {
    const ProbDist p1 = random_dist(rng, 3), r1 = random_dist(rng, 3), p2 = random_dist(rng, 2),
                   r2 = random_dist(rng, 2);
    const auto p = product(p1, p2), r = product(r1, r2);
    EXPECT_NEAR(div(p, r, EntropyKind::shannon()),
                div(p1, r1, EntropyKind::shannon()) + div(p2, r2, EntropyKind::shannon()), 1e-12);
    for (double a : kGrid) {
      const EntropyKind rk = EntropyKind::renyi(a), tk = EntropyKind::tsallis(a);
      EXPECT_NEAR(div(p, r, rk), div(p1, r1, rk) + div(p2, r2, rk), 1e-12);
      const double d1 = div(p1, r1, tk), d2 = div(p2, r2, tk);
      const double expected = d1 + d2 + (a - 1.0) * d1 * d2;
      EXPECT_NEAR(div(p, r, tk), expected, 1e-12 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST(RelativeEntropyProperty, JointConvexity) {
  Rng rng(RngSeed{34});
  std::vector<EntropyKind> kinds{EntropyKind::shannon(), EntropyKind::renyi(0.3), EntropyKind::renyi(0.8)};
  for (double q : kGrid) kinds.push_back(EntropyKind::tsallis(q));
  for (int t = 0; t < 200; ++t) {
    const ProbDist p1 = random_dist(rng, 4), p2 = random_dist(rng, 4), r1 = random_dist(rng, 4),
                   r2 = random_dist(rng, 4);
    const double l = rng.uniform();
    for (const auto& k : kinds)
      EXPECT_LE(div(mix_dist(p1, p2, l), mix_dist(r1, r2, l), k),
                l * div(p1, r1, k) + (1.0 - l) * div(p2, r2, k) + 1e-12);
  }
}

//------------------------------------------------------------------------------
// Conditional entropies
//------------------------------------------------------------------------------

TEST(Conditional, IndependentJointGivesMarginalEntropy) {
  const ProbDist pa({0.2, 0.8});
  const ProbDist u = ProbDist::uniform(3);
  const JointDist j(product(pa, u), 2, 3);
  // Pseudo-additivity: S_q(AB) - S_q(A) = S_q(B) + (1 - q) S_q(A) S_q(B).
  for (double q : kGrid) {
    const double sa = entropy(pa, EntropyKind::tsallis(q)), sb = entropy(u, EntropyKind::tsallis(q));
    EXPECT_NEAR(conditional_tsallis(j, pa, q), sb + (1.0 - q) * sa * sb, 1e-12);
  }
  EXPECT_NEAR(conditional_shannon(j), std::log(3.0), 1e-12);
}

TEST(Conditional, PerfectCorrelationIsZero) {
  const JointDist j(ProbDist({0.5, 0.0, 0.0, 0.5}), 2, 2);
  EXPECT_NEAR(conditional_tsallis(j, j.row_marginal(), 1.0 + 1e-12), 0.0, 1e-12);
  EXPECT_NEAR(conditional_shannon(j), 0.0, 1e-15);
}

TEST(Conditional, SingletZZDistribution) {
  const JointDist j(ProbDist({0.0, 0.5, 0.5, 0.0}), 2, 2);
  EXPECT_NEAR(conditional_shannon(j), 0.0, 1e-15);
}

TEST(Conditional, RejectsInconsistentMarginal) {
  const JointDist j(ProbDist({0.25, 0.25, 0.25, 0.25}), 2, 2);
  try {
    conditional_tsallis(j, ProbDist({0.4, 0.6}), 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MarginalMismatch);
  }
}
