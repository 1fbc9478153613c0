#include <gtest/gtest.h>

#include "entrosteer/core.hpp"
#include "entrosteer/states.hpp"

using namespace entrosteer;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no entrosteer::Error thrown";
  return ErrorCode::ParseError;
}

ComplexMatrix diag(std::initializer_list<double> v) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) m(k, k) = x, ++k;
  return m;
}

}  // namespace

//------------------------------------------------------------------------------
// kron
//------------------------------------------------------------------------------

TEST(Kron, IdentityTimesIdentity) {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  EXPECT_LT(max_abs(kron(i2, i2) - ComplexMatrix::Identity(4, 4)), 1e-15);
}

TEST(Kron, SigmaZSigmaZIsDiagonal) {
  EXPECT_LT(max_abs(kron(pauli(3), pauli(3)) - diag({1, -1, -1, 1})), 1e-15);
}

TEST(Kron, MatchesIndexFormula) {
  const ComplexMatrix a = pauli(1), b = pauli(2);
  const ComplexMatrix k = kron(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int r = 0; r < 2; ++r)
        for (int l = 0; l < 2; ++l) EXPECT_EQ(k(i * 2 + r, j * 2 + l), a(i, j) * b(r, l));
}

TEST(Kron, AssociativeAndTraceMultiplicative) {
  Rng rng(RngSeed{7});
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = ginibre(2, 2, rng), b = ginibre(3, 3, rng), c = ginibre(2, 2, rng);
    EXPECT_LT(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))), 1e-12);
    EXPECT_LT(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 1e-12);
  }
}

//------------------------------------------------------------------------------
// validate_density
//------------------------------------------------------------------------------

TEST(ValidateDensity, MaximallyMixedIsValid) {
  const DensityMatrix rho = validate_density(ComplexMatrix::Identity(4, 4) / 4.0);
  EXPECT_EQ(rho.dim(), 4);
  EXPECT_NEAR(rho.purity(), 0.25, 1e-15);
}

TEST(ValidateDensity, SingletIsRankOne) {
  const ComplexVector s = singlet();
  const DensityMatrix rho = validate_density(s * s.adjoint());
  EXPECT_EQ(rho.rank(), 1);
}

TEST(ValidateDensity, RejectsNegativeEigenvalueWithMagnitude) {
  try {
    validate_density(diag({0.6, 0.6, -0.1, -0.1}));
    FAIL() << "expected NotPositive";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositive);
    EXPECT_NEAR(e.magnitude(), 0.1, 1e-12);
  }
}

TEST(ValidateDensity, RejectsEachBrokenInvariant) {
  ComplexMatrix h = ComplexMatrix::Identity(2, 2) / 2.0;
  h(0, 1) = 0.1;
  EXPECT_EQ(code_of([&] { validate_density(h); }), ErrorCode::NotHermitian);
  EXPECT_EQ(code_of([] { validate_density(ComplexMatrix::Identity(2, 2)); }), ErrorCode::TraceNotOne);
  EXPECT_EQ(code_of([] { validate_density(ComplexMatrix::Identity(2, 3)); }), ErrorCode::NotSquare);
}

//------------------------------------------------------------------------------
// Random sampling
//------------------------------------------------------------------------------

TEST(RandomUnitary, IsUnitaryForSeveralDimensions) {
  Rng rng(RngSeed{1});
  for (int d = 2; d <= 8; ++d)
    for (int t = 0; t < 10; ++t) {
      const ComplexMatrix u = random_unitary(d, rng);
      EXPECT_LT(max_abs(u.adjoint() * u - ComplexMatrix::Identity(d, d)), 1e-10);
    }
}

TEST(RandomUnitary, SameSeedSameMatrix) {
  EXPECT_EQ(max_abs(random_unitary(2, RngSeed{42}) - random_unitary(2, RngSeed{42})), 0.0);
  EXPECT_GT(max_abs(random_unitary(2, RngSeed{42}) - random_unitary(2, RngSeed{43})), 1e-6);
}

TEST(RandomUnitary, HaarFirstMoment) {
  // <|U_00|^2> = 1/d under the Haar measure.
  Rng rng(RngSeed{3});
  for (int d : {2, 3}) {
    double sum = 0.0;
    const int n = 100000;
    for (int k = 0; k < n; ++k) sum += std::norm(random_unitary(d, rng)(0, 0));
    EXPECT_NEAR(sum / n, 1.0 / d, 0.01);
  }
}

TEST(RandomDensity, HilbertSchmidtPurityMoment) {
  // E[Tr rho^2] = 2d/(d^2+1) for the Hilbert-Schmidt ensemble.
  Rng rng(RngSeed{4});
  double sum = 0.0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) sum += random_density_hs(4, rng).purity();
  EXPECT_NEAR(sum / n, 8.0 / 17.0, 0.005);
}

TEST(RandomDensity, SamplesAreValidAndReproducible) {
  Rng a(RngSeed{5}), b(RngSeed{5});
  for (int d = 2; d <= 4; ++d)
    for (int k = 0; k < 3000; ++k) {
      const DensityMatrix x = random_density_hs(d, a);
      const DensityMatrix y = random_density_hs(d, b);
      EXPECT_EQ(max_abs(x.matrix() - y.matrix()), 0.0);
      EXPECT_NO_THROW(validate_density(x.matrix()));
    }
}

TEST(RandomDensity, UnitaryConjugationPreservesValidity) {
  Rng rng(RngSeed{6});
  for (int k = 0; k < 200; ++k) {
    const DensityMatrix rho = random_density_hs(3, rng);
    const ComplexMatrix u = random_unitary(3, rng);
    EXPECT_NO_THROW(validate_density(u * rho.matrix() * u.adjoint()));
  }
}

TEST(RandomPure, NormalizedState) {
  Rng rng(RngSeed{8});
  for (int d = 2; d <= 6; ++d) EXPECT_NEAR(random_pure(d, rng).norm(), 1.0, 1e-12);
}

TEST(DeriveSeed, StreamsDiffer) {
  const RngSeed base{11};
  EXPECT_NE(derive_seed(base, 0).value, derive_seed(base, 1).value);
  EXPECT_EQ(derive_seed(base, 5).value, derive_seed(base, 5).value);
}

TEST(Bronzan, ProducesUnitaries) {
  Rng rng(RngSeed{9});
  for (int k = 0; k < 100; ++k) {
    BronzanAngles a;
    for (double& x : a) x = 2.0 * kPi * rng.uniform();
    const ComplexMatrix u = bronzan_su3(a);
    EXPECT_LT(max_abs(u.adjoint() * u - ComplexMatrix::Identity(3, 3)), 1e-10);
  }
  BronzanAngles zero{};
  EXPECT_TRUE(is_unitary(bronzan_su3(zero)));
}
