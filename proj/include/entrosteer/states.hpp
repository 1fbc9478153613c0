#pragma once

// State families: isotropic/Werner, general two-qubit Bloch form, the two
// two fixed example states, the one-way steerable family, the bound-entangled
// qutrit family, noisy GHZ and W states, plus partial trace / transpose.

#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "entrosteer/core.hpp"

namespace entrosteer {

using Vec3 = std::array<double, 3>;

//------------------------------------------------------------------------------
// Pauli matrices
//------------------------------------------------------------------------------

inline ComplexMatrix pauli(int k) {
  ComplexMatrix m(2, 2);
  const cplx i{0.0, 1.0};
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

//------------------------------------------------------------------------------
// Partial trace / partial transpose
//------------------------------------------------------------------------------

namespace detail {

inline int product_of(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

// Mixed-radix digits of `index` for the given dims (party 0 most significant).
inline std::vector<int> digits(int index, const std::vector<int>& dims) {
  std::vector<int> out(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = index % dims[static_cast<std::size_t>(k)];
    index /= dims[static_cast<std::size_t>(k)];
  }
  return out;
}

inline int compose(const std::vector<int>& digits, const std::vector<int>& dims) {
  int index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

inline void check_dims(const ComplexMatrix& m, const std::vector<int>& dims) {
  if (dims.empty() || product_of(dims) != m.rows() || m.rows() != m.cols())
    throw Error(ErrorCode::DimensionMismatch, "party dimensions do not factor the matrix");
}

}  // namespace detail

/// Traces out party `party` of a multipartite operator with local dims.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims, int party) {
  detail::check_dims(m, dims);
  std::vector<int> kept = dims;
  kept.erase(kept.begin() + party);
  const int n = detail::product_of(kept);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int r = 0; r < m.rows(); ++r) {
    const auto dr = detail::digits(r, dims);
    for (int c = 0; c < m.cols(); ++c) {
      const auto dc = detail::digits(c, dims);
      if (dr[static_cast<std::size_t>(party)] != dc[static_cast<std::size_t>(party)]) continue;
      auto kr = dr, kc = dc;
      kr.erase(kr.begin() + party);
      kc.erase(kc.begin() + party);
      out(detail::compose(kr, kept), detail::compose(kc, kept)) += m(r, c);
    }
  }
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims, int party) {
  return validate_density(partial_trace(rho.matrix(), dims, party));
}

/// Transposes party `party` only.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const std::vector<int>& dims, int party) {
  detail::check_dims(m, dims);
  ComplexMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      auto dr = detail::digits(r, dims), dc = detail::digits(c, dims);
      std::swap(dr[static_cast<std::size_t>(party)], dc[static_cast<std::size_t>(party)]);
      out(detail::compose(dr, dims), detail::compose(dc, dims)) = m(r, c);
    }
  }
  return out;
}

inline double min_eigenvalue_hermitian(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

//------------------------------------------------------------------------------
// Two-qubit Bloch representation
//------------------------------------------------------------------------------

/// rho = 1/4 [I + a.sigma (x) I + I (x) b.sigma + sum_i c_i sigma_i (x) sigma_i]
struct BlochParams {
  Vec3 a{};
  Vec3 b{};
  Vec3 c{};
};

/// Full Bloch data of an arbitrary two-qubit state: T_ij = <sigma_i (x) sigma_j>.
struct BlochDecomposition {
  Vec3 a{};
  Vec3 b{};
  Eigen::Matrix3d T = Eigen::Matrix3d::Zero();
};

inline DensityMatrix two_qubit_bloch(const BlochParams& p) {
  ComplexMatrix m = kron(pauli(0), pauli(0));
  for (int i = 0; i < 3; ++i) {
    m += p.a[static_cast<std::size_t>(i)] * kron(pauli(i + 1), pauli(0));
    m += p.b[static_cast<std::size_t>(i)] * kron(pauli(0), pauli(i + 1));
    m += p.c[static_cast<std::size_t>(i)] * kron(pauli(i + 1), pauli(i + 1));
  }
  return validate_density(0.25 * m);
}

inline BlochDecomposition bloch_decompose(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw Error(ErrorCode::DimensionMismatch, "Bloch decomposition needs a two-qubit state");
  BlochDecomposition out;
  const ComplexMatrix& m = rho.matrix();
  for (int i = 0; i < 3; ++i) {
    out.a[static_cast<std::size_t>(i)] = (m * kron(pauli(i + 1), pauli(0))).trace().real();
    out.b[static_cast<std::size_t>(i)] = (m * kron(pauli(0), pauli(i + 1))).trace().real();
    for (int j = 0; j < 3; ++j) out.T(i, j) = (m * kron(pauli(i + 1), pauli(j + 1))).trace().real();
  }
  return out;
}

/// Reads a, b and the diagonal of T. Exact inverse of two_qubit_bloch.
inline BlochParams extract_bloch(const DensityMatrix& rho) {
  const auto d = bloch_decompose(rho);
  return {d.a, d.b, {d.T(0, 0), d.T(1, 1), d.T(2, 2)}};
}

/// Normal form under local unitaries: T = R_A diag(c) R_B^T with
/// R_A, R_B in SO(3) (signs absorbed into c), a -> R_A^T a, b -> R_B^T b.
inline BlochParams canonical_bloch(const BlochDecomposition& d) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(d.T, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d u = svd.matrixU(), v = svd.matrixV();
  Eigen::Vector3d c = svd.singularValues();
  if (u.determinant() < 0) {
    u.col(2) *= -1.0;
    c(2) *= -1.0;
  }
  if (v.determinant() < 0) {
    v.col(2) *= -1.0;
    c(2) *= -1.0;
  }
  const Eigen::Vector3d a = u.transpose() * Eigen::Vector3d(d.a[0], d.a[1], d.a[2]);
  const Eigen::Vector3d b = v.transpose() * Eigen::Vector3d(d.b[0], d.b[1], d.b[2]);
  return {{a(0), a(1), a(2)}, {b(0), b(1), b(2)}, {c(0), c(1), c(2)}};
}

inline BlochParams canonical_bloch(const DensityMatrix& rho) { return canonical_bloch(bloch_decompose(rho)); }

//------------------------------------------------------------------------------
// Families
//------------------------------------------------------------------------------

/// |phi+_d> = sum_i |ii>/sqrt(d)
inline ComplexVector max_entangled(int d) {
  ComplexVector v = ComplexVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
  return v;
}

/// (|01> - |10>)/sqrt(2)
inline ComplexVector singlet() {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v;
}

inline DensityMatrix isotropic(int d, double alpha) {
  if (d < 2) throw Error(ErrorCode::OutOfRange, "isotropic needs d >= 2");
  const double lo = -1.0 / (double(d) * d - 1.0);
  if (!(alpha >= lo - 1e-15 && alpha <= 1.0 + 1e-15))
    throw Error(ErrorCode::OutOfRange, "isotropic alpha outside [-1/(d^2-1), 1]", alpha);
  const ComplexVector phi = max_entangled(d);
  const int n = d * d;
  return validate_density(alpha * phi * phi.adjoint() + (1.0 - alpha) / n * ComplexMatrix::Identity(n, n));
}

/// w |psi-><psi-| + (1 - w) I/4
inline DensityMatrix werner(double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorCode::OutOfRange, "werner w outside [0,1]", w);
  const ComplexVector s = singlet();
  return validate_density(w * s * s.adjoint() + (1.0 - w) / 4.0 * ComplexMatrix::Identity(4, 4));
}

/// w * base + (1 - w) * I/d
inline DensityMatrix noisy_family(const DensityMatrix& base, double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorCode::OutOfRange, "noise weight outside [0,1]", w);
  return mix(base, maximally_mixed(base.dim()), w);
}

/// The two fixed 4x4 example states (second and third two-qubit
/// examples), Hermitized. Their smallest eigenvalues are about 7.0e-3 and
/// 2.7e-3, so no projection onto the PSD cone is needed.
inline std::pair<DensityMatrix, DensityMatrix> example_states() {
  const cplx i{0.0, 1.0};
  ComplexMatrix r2(4, 4), r3(4, 4);
  r2 << 0.14, 0.09 - 0.18 * i, -0.12 + 0.17 * i, -0.06,
        0.09 + 0.18 * i, 1.58, -1.72, -0.12 + 0.17 * i,
        -0.12 - 0.17 * i, -1.72, 1.98, 0.09 - 0.18 * i,
        -0.06, -0.12 - 0.17 * i, 0.09 + 0.18 * i, 0.3;
  r3 << 0.06, -0.13, 0.16 + 0.02 * i, -0.02,
        -0.13, 1.74, -1.82, 0.16 + 0.02 * i,
        0.16 - 0.02 * i, -1.82, 1.96, -0.13,
        -0.02, 0.16 - 0.02 * i, -0.13, 0.24;
  r2 /= 4.0;
  r3 /= 4.0;
  return {validate_density(0.5 * (r2 + r2.adjoint())), validate_density(0.5 * (r3 + r3.adjoint()))};
}

/// (|00> + x|11> + |22>)/sqrt(2 + x^2)
inline DensityMatrix qutrit_pure(double x) {
  if (!(x >= 0.0)) throw Error(ErrorCode::OutOfRange, "qutrit family needs x >= 0", x);
  ComplexVector v = ComplexVector::Zero(9);
  v(0) = 1.0;
  v(4) = x;
  v(8) = 1.0;
  return pure_state(v);
}

/// cos(theta)|00> + sin(theta)|11>
inline ComplexVector one_way_vector(double theta) {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = std::cos(theta);
  v(3) = std::sin(theta);
  return v;
}

/// beta |psi(theta)><psi(theta)| + (1 - beta) I/2 (x) rho_B(theta)
inline DensityMatrix one_way(double beta, double theta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error(ErrorCode::OutOfRange, "one_way beta outside [0,1]", beta);
  if (!(theta >= 0.0 && theta <= kPi / 4.0 + 1e-15))
    throw Error(ErrorCode::OutOfRange, "one_way theta outside [0, pi/4]", theta);
  const ComplexVector psi = one_way_vector(theta);
  const ComplexMatrix pure = psi * psi.adjoint();
  const ComplexMatrix rho_b = partial_trace(pure, {2, 2}, 0);
  return validate_density(beta * pure + (1.0 - beta) * kron(ComplexMatrix(0.5 * ComplexMatrix::Identity(2, 2)), rho_b));
}

/// Mixture weights of the bound-entangled family.
struct BesWeights {
  double lambda1, lambda2, lambda3, m3;
};

inline bool bes_admissible(double m1, double m2) {
  return m1 >= 0.0 && m2 >= 0.0 && m1 * m1 + m2 * m2 + m1 * m2 <= 1.0 + 1e-12;
}

inline BesWeights bes_weights(double m1, double m2) {
  if (!bes_admissible(m1, m2))
    throw Error(ErrorCode::OutOfRange, "bound_entangled needs m1, m2 >= 0 and m1^2 + m2^2 + m1 m2 <= 1");
  const double n = 4.0 - 2.0 * m1 * m1 + m1 * m2 - 2.0 * m2 * m2;
  const double m3 = std::sqrt(std::max(0.0, (1.0 - m1 * m1 - m2 * m2) / 2.0));
  return {1.0 - (2.0 + 3.0 * m1 * m2) / n, 3.0 * m1 * m2 / n, 1.0 / n, m3};
}

inline DensityMatrix bound_entangled(double m1, double m2) {
  const BesWeights w = bes_weights(m1, m2);
  auto ket = [](std::initializer_list<std::tuple<double, int, int>> terms) {
    ComplexVector v = ComplexVector::Zero(9);
    for (const auto& [amp, i, j] : terms) v(3 * i + j) += amp;
    return v;
  };
  const double r2 = 1.0 / std::sqrt(2.0), r3 = 1.0 / std::sqrt(3.0);
  const ComplexVector psi1 = ket({{r2, 1, 2}, {r2, 2, 1}});
  const ComplexVector psi2 = ket({{r3, 0, 0}, {r3, 1, 1}, {-r3, 2, 2}});
  const ComplexVector psi3 = ket({{m1, 0, 1}, {m2, 1, 0}, {w.m3, 1, 1}, {w.m3, 2, 2}});
  const ComplexVector psi3t = ket({{m1, 0, 2}, {-m2, 2, 0}, {w.m3, 2, 1}, {-w.m3, 1, 2}});
  const ComplexMatrix m = w.lambda1 * psi1 * psi1.adjoint() + w.lambda2 * psi2 * psi2.adjoint() +
                          w.lambda3 * (psi3 * psi3.adjoint() + psi3t * psi3t.adjoint());
  return validate_density(m);
}

inline ComplexVector ghz_vector() {
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return v;
}

/// (|100> + |010> + |001>)/sqrt(3)
inline ComplexVector w_vector() {
  ComplexVector v = ComplexVector::Zero(8);
  v(4) = v(2) = v(1) = 1.0 / std::sqrt(3.0);
  return v;
}

inline DensityMatrix noisy_ghz(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorCode::OutOfRange, "GHZ visibility outside [0,1]", gamma);
  return noisy_family(pure_state(ghz_vector()), gamma);
}

inline DensityMatrix noisy_w(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw Error(ErrorCode::OutOfRange, "W visibility outside [0,1]", delta);
  return noisy_family(pure_state(w_vector()), delta);
}

//------------------------------------------------------------------------------
// Named one-parameter families
//------------------------------------------------------------------------------

/// A one-parameter state family, addressable by name. `make` must accept
/// every parameter in [lo, hi]; thresholds are reported in this parameter.
struct StateFamily {
  std::string name;
  std::vector<int> dims;
  std::function<DensityMatrix(double)> make;
  double lo = 0.0;
  double hi = 1.0;
};

inline StateFamily werner_family() {
  return {"werner", {2, 2}, [](double w) { return werner(w); }};
}

inline StateFamily isotropic_family(int d) {
  return {"isotropic(d=" + std::to_string(d) + ")", {d, d}, [d](double a) { return isotropic(d, a); }};
}

inline StateFamily noisy_state_family(std::string name, const DensityMatrix& base, std::vector<int> dims) {
  return {std::move(name), std::move(dims), [base](double w) { return noisy_family(base, w); }};
}

inline StateFamily example_family(int which) {
  const auto [r2, r3] = example_states();
  if (which == 2) return noisy_state_family("example2", r2, {2, 2});
  if (which == 3) return noisy_state_family("example3", r3, {2, 2});
  throw Error(ErrorCode::OutOfRange, "example family index must be 2 or 3", which);
}

inline StateFamily qutrit_family(double x) {
  return noisy_state_family("qutrit(x=" + std::to_string(x) + ")", qutrit_pure(x), {3, 3});
}

inline StateFamily one_way_family(double theta) {
  return {"one_way(theta=" + std::to_string(theta) + ")", {2, 2}, [theta](double b) { return one_way(b, theta); }};
}

inline StateFamily ghz_family() {
  return {"ghz", {2, 2, 2}, [](double g) { return noisy_ghz(g); }};
}

inline StateFamily w_family() {
  return {"w", {2, 2, 2}, [](double d) { return noisy_w(d); }};
}

}  // namespace entrosteer
