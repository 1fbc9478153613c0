#pragma once

// Dense complex linear algebra for small systems (d <= 16): Kronecker
// products, density-matrix validation and seeded random sampling of
// unitaries and mixed states.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "entrosteer/error.hpp"

namespace entrosteer {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double eigen_floor = -1e-9;
inline constexpr double unitary = 1e-10;
}  // namespace tol

//------------------------------------------------------------------------------
// Kronecker product
//------------------------------------------------------------------------------

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_unitary(const ComplexMatrix& u, double tolerance = tol::unitary) {
  if (u.rows() != u.cols()) return false;
  const auto n = u.rows();
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(n, n)) < tolerance;
}

//------------------------------------------------------------------------------
// Density matrices
//------------------------------------------------------------------------------

class DensityMatrix;
DensityMatrix validate_density(const ComplexMatrix& m);

/// A validated quantum state: Hermitian, unit trace and positive
/// semidefinite within the tolerances in `tol`. Only obtainable through
/// validate_density, so holding one is proof the invariants were checked.
class DensityMatrix {
 public:
  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

  double purity() const { return (matrix_ * matrix_).trace().real(); }
  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }
  /// Numerical rank (eigenvalues above `cutoff`).
  int rank(double cutoff = 1e-9) const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_, Eigen::EigenvaluesOnly);
    return static_cast<int>((es.eigenvalues().array() > cutoff).count());
  }
  /// <psi|rho|psi>
  double expectation(const ComplexVector& psi) const {
    return psi.dot(matrix_ * psi).real();
  }

 private:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}
  friend DensityMatrix validate_density(const ComplexMatrix& m);

  ComplexMatrix matrix_;
};

/// Checks the density-matrix invariants and returns the Hermitized state.
/// Throws Error with NotSquare, NotHermitian, TraceNotOne or NotPositive;
/// the error magnitude is the size of the violation.
inline DensityMatrix validate_density(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorCode::NotSquare, "density matrix must be square and non-empty");
  if (!m.allFinite()) throw Error(ErrorCode::NotHermitian, "non-finite entries", INFINITY);

  const double herm = max_abs(m - m.adjoint());
  if (herm > tol::hermitian) {
    std::ostringstream os;
    os << "max |M - M^dagger| = " << herm;
    throw Error(ErrorCode::NotHermitian, os.str(), herm);
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());

  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tol::trace) {
    std::ostringstream os;
    os << "trace = " << tr;
    throw Error(ErrorCode::TraceNotOne, os.str(), std::abs(tr - 1.0));
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  const double lowest = es.eigenvalues().minCoeff();
  if (lowest < tol::eigen_floor) {
    std::ostringstream os;
    os << "minimum eigenvalue = " << lowest;
    throw Error(ErrorCode::NotPositive, os.str(), -lowest);
  }
  return DensityMatrix(std::move(h));
}

inline DensityMatrix maximally_mixed(int d) {
  return validate_density(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

inline DensityMatrix pure_state(const ComplexVector& psi) {
  const ComplexVector v = psi.normalized();
  return validate_density(v * v.adjoint());
}

/// U rho U^dagger.
inline DensityMatrix conjugate_by(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != rho.dim() || !is_unitary(u, 1e-8))
    throw Error(ErrorCode::NotUnitary, "conjugation requires a unitary of matching dimension");
  return validate_density(u * rho.matrix() * u.adjoint());
}

/// w * rho + (1 - w) * sigma
inline DensityMatrix mix(const DensityMatrix& rho, const DensityMatrix& sigma, double w) {
  if (rho.dim() != sigma.dim())
    throw Error(ErrorCode::DimensionMismatch, "mixing states of different dimension");
  if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorCode::OutOfRange, "mixing weight outside [0,1]");
  return validate_density(w * rho.matrix() + (1.0 - w) * sigma.matrix());
}

//------------------------------------------------------------------------------
// Randomness
//------------------------------------------------------------------------------

struct RngSeed {
  std::uint64_t value = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for an independent sub-stream (restart, shard, grid point ...).
inline RngSeed derive_seed(RngSeed base, std::uint64_t stream) {
  return RngSeed{splitmix64(base.value ^ splitmix64(stream + 0x632be59bd9b4e019ULL))};
}

/// The single random source used throughout the library. Same seed gives
/// the same stream; there is no global generator.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(splitmix64(seed.value)) {}

  double uniform() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }
  cplx complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal moved into Q.
inline ComplexMatrix random_unitary(int d, Rng& rng) {
  if (d < 2) throw Error(ErrorCode::OutOfRange, "random_unitary needs d >= 2");
  const ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= (mag > 0.0 ? rjj / mag : cplx{1.0, 0.0});
  }
  return q;
}

inline ComplexMatrix random_unitary(int d, RngSeed seed) {
  Rng rng(seed);
  return random_unitary(d, rng);
}

/// Hilbert-Schmidt random state G G^dagger / Tr(G G^dagger).
inline DensityMatrix random_density_hs(int d, Rng& rng) {
  if (d < 2) throw Error(ErrorCode::OutOfRange, "random_density_hs needs d >= 2");
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return validate_density(rho);
}

inline DensityMatrix random_density_hs(int d, RngSeed seed) {
  Rng rng(seed);
  return random_density_hs(d, rng);
}

/// Random pure state, uniform on the unit sphere.
inline ComplexVector random_pure(int d, Rng& rng) {
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.complex_normal();
  return v.normalized();
}

//------------------------------------------------------------------------------
// Bronzan parametrization of SU(3)
//------------------------------------------------------------------------------

/// Three mixing angles theta_k in [0, pi/2] followed by five phases
/// phi_k in [0, 2 pi).
using BronzanAngles = std::array<double, 8>;

inline ComplexMatrix bronzan_su3(const BronzanAngles& a) {
  const double c1 = std::cos(a[0]), s1 = std::sin(a[0]);
  const double c2 = std::cos(a[1]), s2 = std::sin(a[1]);
  const double c3 = std::cos(a[2]), s3 = std::sin(a[2]);
  const double p1 = a[3], p2 = a[4], p3 = a[5], p4 = a[6], p5 = a[7];
  auto e = [](double phase) { return std::polar(1.0, phase); };

  ComplexMatrix u(3, 3);
  u(0, 0) = c1 * c2 * e(p1);
  u(0, 1) = s1 * e(p3);
  u(0, 2) = c1 * s2 * e(p4);
  u(1, 0) = s2 * s3 * e(-p4 - p5) - s1 * c2 * c3 * e(p1 + p2 - p3);
  u(1, 1) = c1 * c3 * e(p2);
  u(1, 2) = -c2 * s3 * e(-p1 - p5) - s1 * s2 * c3 * e(p2 - p3 + p4);
  u(2, 0) = -s1 * c2 * s3 * e(p1 - p3 + p5) - s2 * c3 * e(-p2 - p4);
  u(2, 1) = c1 * s3 * e(p5);
  u(2, 2) = c2 * c3 * e(-p1 - p2) - s1 * s2 * s3 * e(p4 + p5 - p3);
  return u;
}

}  // namespace entrosteer
