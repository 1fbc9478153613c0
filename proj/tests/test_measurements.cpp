#include <gtest/gtest.h>

#include "entrosteer/json_io.hpp"
#include "entrosteer/measurements.hpp"
#include "entrosteer/states.hpp"

using namespace entrosteer;

namespace {

/// Largest deviation of |<v|w>|^2 from 1/d over every cross pair of bases.
double worst_unbiasedness(const MeasurementSet& set) {
  double worst = 0.0;
  const double target = 1.0 / set.dim();
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      const ComplexMatrix g = set[a].vectors().adjoint() * set[b].vectors();
      for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) worst = std::max(worst, std::abs(std::norm(g(i, j)) - target));
    }
  return worst;
}

double worst_orthonormality(const MeasurementSet& set) {
  double worst = 0.0;
  for (const auto& b : set)
    worst = std::max(worst, max_abs(b.vectors().adjoint() * b.vectors() - ComplexMatrix::Identity(set.dim(), set.dim())));
  return worst;
}

/// Same projectors, i.e. equal up to a phase per vector.
bool same_up_to_phases(const MeasurementBasis& a, const MeasurementBasis& b) {
  for (int k = 0; k < a.dim(); ++k) {
    bool found = false;
    for (int l = 0; l < b.dim(); ++l)
      if (max_abs(a.projector(k) - b.projector(l)) < 1e-12) found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace

//------------------------------------------------------------------------------
// Pauli bases
//------------------------------------------------------------------------------

TEST(Pauli, PairIsUnbiased) {
  const auto set = pauli_set(parse_axes("xz"));
  EXPECT_EQ(set.size(), 2u);
  EXPECT_TRUE(set.mutually_unbiased());
}

TEST(Pauli, TripleIsCompleteQubitMub) {
  const auto set = pauli_set(parse_axes("xyz"));
  EXPECT_EQ(set.size(), 3u);
  EXPECT_TRUE(set.mutually_unbiased());
  EXPECT_LT(worst_unbiasedness(set), 1e-12);
}

TEST(Pauli, ZIsComputational) {
  const auto set = pauli_set(parse_axes("z"));
  EXPECT_TRUE(same_up_to_phases(set[0], computational_basis(2)));
}

TEST(Pauli, EigenvectorsMatchOperators) {
  const auto set = pauli_set(parse_axes("xyz"));
  for (int k = 0; k < 3; ++k) {
    const ComplexMatrix s = pauli(k + 1);
    const ComplexVector plus = set[static_cast<std::size_t>(k)].vector(0);
    const ComplexVector minus = set[static_cast<std::size_t>(k)].vector(1);
    EXPECT_LT((s * plus - plus).norm(), 1e-12);
    EXPECT_LT((s * minus + minus).norm(), 1e-12);
  }
}

TEST(Pauli, RepeatedAxesAreNotUnbiased) {
  EXPECT_FALSE(pauli_set(parse_axes("zz")).mutually_unbiased());
  EXPECT_THROW(parse_axes("xq"), Error);
}

//------------------------------------------------------------------------------
// MUB constructions
//------------------------------------------------------------------------------

TEST(FourierPair, QubitIsZX) {
  const auto set = mub_fourier_pair(2);
  const auto zx = pauli_set(parse_axes("zx"));
  EXPECT_TRUE(same_up_to_phases(set[0], zx[0]));
  EXPECT_TRUE(same_up_to_phases(set[1], zx[1]));
}

TEST(FourierPair, UnbiasedInEveryDimension) {
  for (int d = 2; d <= 9; ++d) {
    const auto set = mub_fourier_pair(d);
    EXPECT_TRUE(set.mutually_unbiased()) << d;
    EXPECT_LT(worst_unbiasedness(set), 1e-12) << d;
  }
}

TEST(MubComplete, QubitMatchesPauli) {
  const auto set = mub_complete(2);
  ASSERT_EQ(set.size(), 3u);
  const auto p = pauli_set(parse_axes("zxy"));
  for (std::size_t k = 0; k < 3; ++k) EXPECT_TRUE(same_up_to_phases(set[k], p[k])) << k;
}

TEST(MubComplete, ExhaustiveOverlapsForPrimes) {
  for (int d : {2, 3, 5, 7}) {
    const auto set = mub_complete(d);
    EXPECT_EQ(set.size(), static_cast<std::size_t>(d + 1));
    EXPECT_LT(worst_unbiasedness(set), 1e-10) << d;
    EXPECT_LT(worst_orthonormality(set), 1e-10) << d;
  }
}

TEST(MubComplete, RejectsNonPrime) {
  for (int d : {4, 6, 9}) {
    try {
      mub_complete(d);
      FAIL() << d;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotPrime);
    }
  }
}

TEST(MubDim4, FirstBasisIsComputational) {
  EXPECT_TRUE(same_up_to_phases(mub_dim4()[0], computational_basis(4)));
}

TEST(MubDim4, AllTenPairsUnbiased) {
  const auto set = mub_dim4();
  EXPECT_EQ(set.size(), 5u);
  EXPECT_LT(worst_unbiasedness(set), 1e-10);
  EXPECT_LT(worst_orthonormality(set), 1e-10);
}

TEST(MubDim4, MatchesShippedFixture) {
  const auto fixture = measurements_from_json(read_json_file(std::string(ENTROSTEER_TEST_DATA) + "/mub_dim4.json"));
  const auto set = mub_dim4();
  ASSERT_EQ(fixture.size(), set.size());
  for (std::size_t k = 0; k < set.size(); ++k) EXPECT_LT(max_abs(fixture[k].vectors() - set[k].vectors()), 1e-12);
}

TEST(BesMeasurements, OrthonormalUnbiasedComplete) {
  const auto set = bes_measurements();
  EXPECT_LT(worst_orthonormality(set), 1e-10);
  EXPECT_LT(worst_unbiasedness(set), 1e-9);
  for (const auto& b : set) {
    ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
    for (int k = 0; k < 3; ++k) sum += b.projector(k);
    EXPECT_LT(max_abs(sum - ComplexMatrix::Identity(3, 3)), 1e-12);
  }
}

TEST(BesMeasurements, MatchesShippedFixture) {
  const auto fixture =
      measurements_from_json(read_json_file(std::string(ENTROSTEER_TEST_DATA) + "/bes_measurements.json"));
  const auto set = bes_measurements();
  ASSERT_EQ(fixture.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_LT(max_abs(fixture[k].vectors() - set[k].vectors()), 1e-12);
}

TEST(MeasurementBasis, RejectsNonOrthonormal) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 0.1;
  try {
    MeasurementBasis b(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOrthonormal);
  }
}

TEST(MeasurementBasis, PhaseGaugeMakesFirstComponentPositive) {
  Rng rng(RngSeed{3});
  const MeasurementBasis b(random_unitary(3, rng));
  for (int k = 0; k < 3; ++k) {
    const cplx c = b.vectors()(0, k);
    EXPECT_NEAR(c.imag(), 0.0, 1e-15);
    EXPECT_GT(c.real(), 0.0);
  }
}

TEST(MeasurementBasis, ProbabilitiesFollowBornRule) {
  const auto x = pauli_basis(PauliAxis::X);
  ComplexVector zero(2);
  zero << 1.0, 0.0;
  const auto p = x.probabilities(zero);
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[1], 0.5, 1e-15);
}

//------------------------------------------------------------------------------
// Transformations
//------------------------------------------------------------------------------

TEST(Rotate, IdentityLeavesSetUnchanged) {
  const auto set = mub_complete(3);
  const auto r = rotate(set, ComplexMatrix(ComplexMatrix::Identity(3, 3)));
  for (std::size_t k = 0; k < set.size(); ++k) EXPECT_LT(max_abs(r[k].vectors() - set[k].vectors()), 1e-15);
}

TEST(Rotate, SharedUnitaryPreservesUnbiasedness) {
  Rng rng(RngSeed{4});
  for (int d : {2, 3, 5}) {
    const auto r = rotate(mub_complete(d), random_unitary(d, rng));
    EXPECT_TRUE(r.mutually_unbiased());
    EXPECT_LT(worst_unbiasedness(r), 1e-9);
    EXPECT_LT(worst_orthonormality(r), 1e-10);
  }
}

TEST(Rotate, DistinctUnitariesRecomputeFlag) {
  Rng rng(RngSeed{5});
  const auto set = mub_complete(3);
  std::vector<ComplexMatrix> us;
  for (std::size_t k = 0; k < set.size(); ++k) us.push_back(random_unitary(3, rng));
  const auto r = rotate(set, us);
  EXPECT_FALSE(r.mutually_unbiased());
  EXPECT_LT(worst_orthonormality(r), 1e-10);
}

TEST(Rotate, RejectsBadUnitaries) {
  const auto set = pauli_set(parse_axes("xz"));
  try {
    rotate(set, ComplexMatrix(2.0 * ComplexMatrix::Identity(2, 2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
  }
  try {
    rotate(set, ComplexMatrix(ComplexMatrix::Identity(3, 3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Conjugate, TakeAndSelect) {
  const auto set = mub_dim4();
  const auto c = conjugate(set);
  for (std::size_t k = 0; k < set.size(); ++k) EXPECT_LT(max_abs(c[k].vectors() - set[k].vectors().conjugate()), 1e-15);
  EXPECT_EQ(take(set, 2).size(), 2u);
  const auto s = select(set, {0, 1, 3});
  EXPECT_EQ(s[2].label(), "M4");
  EXPECT_THROW(select(set, {7}), Error);
  EXPECT_THROW(take(set, 6), Error);
}
