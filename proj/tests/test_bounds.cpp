#include <gtest/gtest.h>

#include <cmath>

#include "entrosteer/bounds.hpp"
#include "entrosteer/measurements.hpp"

using namespace entrosteer;

namespace {

const double kLn2 = std::log(2.0);

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no entrosteer::Error thrown";
  return ErrorCode::ParseError;
}

MeasurementSet pauli(const char* axes) { return pauli_set(parse_axes(axes)); }

}  // namespace

//------------------------------------------------------------------------------
// Shannon
//------------------------------------------------------------------------------

TEST(ShannonBound, CatalogValues) {
  EXPECT_NEAR(bound_shannon_mub(2, 3).value, 2.0 * kLn2, 1e-15);
  EXPECT_NEAR(bound_shannon_mub(3, 4).value, 4.0 * kLn2, 1e-14);
  EXPECT_NEAR(bound_shannon_mub(2, 2).value, kLn2, 1e-15);
  EXPECT_EQ(bound_shannon_mub(3, 4).tag, "shannon-complete-mub");
  EXPECT_EQ(bound_shannon_mub(2, 3).provenance, Provenance::Analytic);
}

TEST(ShannonBound, PairBoundIsLogD) {
  for (int d = 2; d <= 7; ++d) EXPECT_NEAR(bound_shannon_mub(d, 2).value, std::log(double(d)), 1e-14) << d;
}

TEST(ShannonBound, MonotoneInMeasurementCount) {
  for (int d = 2; d <= 5; ++d)
    for (int m = 2; m <= d; ++m)
      EXPECT_GE(bound_shannon_mub(d, m + 1).value, bound_shannon_mub(d, m).value - 1e-15) << d << "," << m;
}

TEST(ShannonBound, RejectsCountsOutsideRange) {
  EXPECT_EQ(code_of([] { bound_shannon_mub(2, 4); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { bound_shannon_mub(3, 1); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { bound_shannon_mub(1, 2); }), ErrorCode::OutOfRange);
}

//------------------------------------------------------------------------------
// Tsallis
//------------------------------------------------------------------------------

TEST(TsallisBound, QubitValues) {
  EXPECT_NEAR(bound_tsallis_mub(2, 3, 2.0).value, 1.0, 1e-15);
  EXPECT_NEAR(bound_tsallis_mub(2, 2, 2.0).value, 0.5, 1e-15);
  EXPECT_NEAR(bound_tsallis_mub(2, 2, 3.0).value, 0.375, 1e-15);
  EXPECT_EQ(bound_tsallis_mub(2, 3, 2.0).provenance, Provenance::Analytic);
}

TEST(TsallisBound, BranchesAgreeAtTwo) {
  for (int d = 2; d <= 7; ++d)
    for (int m = 2; m <= d + 1; ++m) {
      const double small = m * q_log(double(m) * d / (d + m - 1.0), 2.0);
      const double large = (m - 1.0) * q_log(double(d), 2.0);
      EXPECT_NEAR(small, large, 1e-12);
      EXPECT_NEAR(bound_tsallis_mub(d, m, 2.0).value, small, 1e-12);
    }
}

TEST(TsallisBound, ContinuousAtShannonLimit) {
  EXPECT_NEAR(bound_tsallis_mub(3, 4, 1.0 + 1e-7).value, bound_shannon_mub(3, 4).value, 1e-5);
  EXPECT_NEAR(bound_tsallis_mub(3, 4, 1.0 - 1e-7).value, bound_shannon_mub(3, 4).value, 1e-5);
}

TEST(TsallisBound, ProvenanceByRegion) {
  EXPECT_EQ(bound_tsallis_mub(3, 4, 1.5).provenance, Provenance::Analytic);
  EXPECT_EQ(bound_tsallis_mub(3, 4, 3.0).provenance, Provenance::Conjectured);
  // Qubit pair: analytic on [2n-1, 2n], conjectured elsewhere above 2.
  EXPECT_EQ(bound_tsallis_mub(2, 2, 3.5).provenance, Provenance::Analytic);
  EXPECT_EQ(bound_tsallis_mub(2, 2, 4.5).provenance, Provenance::Conjectured);
  EXPECT_FALSE(bound_tsallis_mub(2, 3, 2.5).caveat.empty());
  EXPECT_TRUE(bound_tsallis_mub(2, 3, 3.5).caveat.empty());
}

//------------------------------------------------------------------------------
// Renyi
//------------------------------------------------------------------------------

TEST(RenyiBound, Values) {
  EXPECT_NEAR(bound_renyi_mub(2, 3, 0.5).value, 2.0 * kLn2, 1e-15);
  EXPECT_NEAR(bound_renyi_mub(2, 2, 2.0).value, 2.0 * std::log(4.0 / 3.0), 1e-15);
  EXPECT_NEAR(bound_renyi_mub(2, 2, 1e9).value, std::log(4.0 / 3.0), 1e-8);
  EXPECT_FALSE(bound_renyi_mub(2, 3, 1.5).caveat.empty());
  EXPECT_TRUE(bound_renyi_mub(2, 3, 0.5).caveat.empty());
}

//------------------------------------------------------------------------------
// Composite
//------------------------------------------------------------------------------

TEST(CompositeBound, ShannonQubits) {
  const auto sh = EntropyKind::shannon();
  EXPECT_NEAR(bound_composite(2, 2, 2, sh, BoundScenario::CompositeSeparable).value, 2.0 * kLn2, 1e-15);
  EXPECT_NEAR(bound_composite(2, 2, 3, sh, BoundScenario::CompositeSeparable).value, 4.0 * kLn2, 1e-15);
  EXPECT_NEAR(bound_composite(2, 2, 3, sh, BoundScenario::CompositeAny).value, 3.0 * kLn2, 1e-15);
  EXPECT_NEAR(bound_composite(3, 3, 4, sh, BoundScenario::CompositeSeparable).value, 8.0 * kLn2, 1e-13);
}

TEST(CompositeBound, TsallisQubits) {
  const auto t2 = EntropyKind::tsallis(2.0);
  EXPECT_NEAR(bound_composite(2, 2, 3, t2, BoundScenario::CompositeAny).value, 1.5, 1e-15);
  EXPECT_NEAR(bound_composite(2, 2, 3, t2, BoundScenario::CompositeSeparable).value, 1.5, 1e-15);
  EXPECT_NEAR(bound_composite(2, 2, 2, t2, BoundScenario::CompositeAny).value, 0.75, 1e-15);
  const auto t15 = EntropyKind::tsallis(1.5);
  EXPECT_NEAR(bound_composite(2, 2, 3, t15, BoundScenario::CompositeAny).value, 3.0 * q_log(2.0, 1.5), 1e-15);
  EXPECT_NEAR(bound_composite(2, 2, 3, t15, BoundScenario::CompositeSeparable).value, 2.0 * q_log(4.0, 1.5), 1e-15);
}

TEST(CompositeBound, UnsupportedCombinations) {
  EXPECT_EQ(code_of([] { bound_composite(3, 3, 4, EntropyKind::tsallis(2.0), BoundScenario::CompositeAny); }),
            ErrorCode::UnsupportedCombination);
  EXPECT_EQ(code_of([] { bound_composite(2, 2, 3, EntropyKind::renyi(2.0), BoundScenario::CompositeAny); }),
            ErrorCode::UnsupportedCombination);
  EXPECT_EQ(code_of([] { bound_composite(2, 2, 3, EntropyKind::shannon(), BoundScenario::Single); }),
            ErrorCode::UnsupportedCombination);
}

TEST(BoundValue, RejectsNegative) {
  EXPECT_THROW(BoundValue(-0.1, Provenance::Analytic, "x"), Error);
}

//------------------------------------------------------------------------------
// Numerical certification
//------------------------------------------------------------------------------

TEST(NumericBound, PauliTripleShannon) {
  const BoundValue b = verify_bound_numeric(pauli("xyz"), EntropyKind::shannon(), BoundScenario::Single);
  EXPECT_NEAR(b.value, 2.0 * kLn2, 1e-6);
  EXPECT_EQ(b.provenance, Provenance::Numerical);
  ASSERT_TRUE(b.certificate.has_value());
  EXPECT_NEAR(b.certificate->state.norm(), 1.0, 1e-12);
}

TEST(NumericBound, PauliPairTsallisQ3) {
  const BoundValue b = verify_bound_numeric(pauli("xz"), EntropyKind::tsallis(3.0), BoundScenario::Single);
  EXPECT_NEAR(b.value, 0.375, 1e-6);
}

TEST(NumericBound, TwoQubitAnyStateAttainedAtMaximalEntanglement) {
  // Every Bell state (the singlet among them) attains 3 ln 2.
  const BoundValue b = verify_bound_numeric(pauli("xyz"), EntropyKind::shannon(), BoundScenario::CompositeAny);
  EXPECT_NEAR(b.value, 3.0 * kLn2, 1e-5);
  const ComplexVector& v = b.certificate->state;
  Eigen::Matrix2cd m;
  m << v(0), v(1), v(2), v(3);
  const Eigen::Matrix2cd reduced = m * m.adjoint();
  EXPECT_NEAR((reduced * reduced).trace().real(), 0.5, 1e-4);
}

TEST(NumericBound, SeparableScenarioMatchesSum) {
  const BoundValue b =
      verify_bound_numeric(pauli("xyz"), EntropyKind::shannon(), BoundScenario::CompositeSeparable, {16, 2000});
  EXPECT_NEAR(b.value, 4.0 * kLn2, 1e-6);
}

TEST(NumericBound, ReproducibleForFixedSeed) {
  const auto a = verify_bound_numeric(mub_complete(3), EntropyKind::tsallis(1.5), BoundScenario::Single, {4, 500},
                                      RngSeed{9});
  const auto b = verify_bound_numeric(mub_complete(3), EntropyKind::tsallis(1.5), BoundScenario::Single, {4, 500},
                                      RngSeed{9});
  EXPECT_EQ(a.value, b.value);
}

TEST(NumericBound, QubitWindowCaveatIsReal) {
  // In q in (2,3) the qubit formula overshoots the true minimum.
  const double q = 2.5;
  const auto numeric = verify_bound_numeric(pauli("xyz"), EntropyKind::tsallis(q), BoundScenario::Single);
  EXPECT_LT(numeric.value, bound_tsallis_mub(2, 3, q).value - 1e-3);
}

TEST(NumericBoundProperty, AnalyticCatalogIsSound) {
  const MinimizerBudget budget{16, 3000};
  for (int d : {2, 3}) {
    const auto full = mub_complete(d);
    for (int m = 2; m <= d + 1; ++m) {
      const auto set = take(full, static_cast<std::size_t>(m));
      std::vector<EntropyKind> kinds{EntropyKind::shannon(), EntropyKind::tsallis(0.5), EntropyKind::tsallis(1.5),
                                     EntropyKind::tsallis(2.0), EntropyKind::renyi(2.0), EntropyKind::renyi(4.0)};
      for (const auto& k : kinds) {
        const BoundValue cat = bound_mub(d, m, k);
        if (cat.provenance != Provenance::Analytic) continue;
        const BoundValue num = verify_bound_numeric(set, k, BoundScenario::Single, budget);
        EXPECT_GE(num.value, cat.value - 1e-6) << "d=" << d << " m=" << m << " " << k.name();
      }
    }
  }
}

TEST(NumericBound, BudgetValidation) {
  EXPECT_EQ(code_of([] { verify_bound_numeric(pauli("xz"), EntropyKind::shannon(), BoundScenario::Single, {0, 10}); }),
            ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] {
              verify_bound_numeric(mub_complete(5), EntropyKind::shannon(), BoundScenario::CompositeAny);
            }),
            ErrorCode::OutOfRange);
}
