#pragma once

// Projective measurements as orthonormal bases: Pauli eigenbases, Fourier
// and prime-dimension complete MUB sets, a fixed complete set in d = 4,
// the rotated qutrit pair used for the bound-entangled family, and
// unitary rotation / complex conjugation of whole sets.

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "entrosteer/core.hpp"

namespace entrosteer {

namespace tol {
inline constexpr double orthonormal = 1e-10;
inline constexpr double unbiased = 1e-9;
inline constexpr double phase_gauge = 1e-12;
}  // namespace tol

/// An orthonormal basis; vector k is column k of `vectors()`. Each vector
/// is rephased so its first non-negligible component is real positive.
class MeasurementBasis {
 public:
  explicit MeasurementBasis(ComplexMatrix columns, std::string label = {})
      : vectors_(std::move(columns)), label_(std::move(label)) {
    if (vectors_.rows() != vectors_.cols() || vectors_.rows() < 2)
      throw Error(ErrorCode::DimensionMismatch, "a basis needs d >= 2 vectors of length d");
    const int d = dim();
    const double defect = max_abs(vectors_.adjoint() * vectors_ - ComplexMatrix::Identity(d, d));
    if (defect > tol::orthonormal) {
      std::ostringstream os;
      os << "basis '" << label_ << "' deviates from orthonormality by " << defect;
      throw Error(ErrorCode::NotOrthonormal, os.str(), defect);
    }
    for (int k = 0; k < d; ++k) {
      for (int i = 0; i < d; ++i) {
        const cplx c = vectors_(i, k);
        if (std::abs(c) > tol::phase_gauge) {
          vectors_.col(k) *= std::conj(c) / std::abs(c);
          vectors_(i, k) = std::abs(c);
          break;
        }
      }
    }
  }

  int dim() const { return static_cast<int>(vectors_.rows()); }
  const ComplexMatrix& vectors() const { return vectors_; }
  ComplexVector vector(int k) const { return vectors_.col(k); }
  ComplexMatrix projector(int k) const { return vectors_.col(k) * vectors_.col(k).adjoint(); }
  const std::string& label() const { return label_; }

  /// Outcome distribution of this measurement on a pure state.
  std::vector<double> probabilities(const ComplexVector& psi) const {
    const ComplexVector amps = vectors_.adjoint() * psi;
    std::vector<double> p(static_cast<std::size_t>(dim()));
    for (int k = 0; k < dim(); ++k) p[static_cast<std::size_t>(k)] = std::norm(amps(k));
    return p;
  }

 private:
  ComplexMatrix vectors_;
  std::string label_;
};

/// max over vector pairs of | |<v|w>|^2 - 1/d |
inline double unbiasedness_defect(const MeasurementBasis& a, const MeasurementBasis& b) {
  const ComplexMatrix overlaps = a.vectors().adjoint() * b.vectors();
  const double target = 1.0 / a.dim();
  return (overlaps.cwiseAbs2().array() - target).abs().maxCoeff();
}

inline bool mutually_unbiased(const MeasurementBasis& a, const MeasurementBasis& b) {
  return a.dim() == b.dim() && unbiasedness_defect(a, b) < tol::unbiased;
}

/// Non-empty list of bases of a common dimension. The pairwise
/// unbiasedness flag is computed once at construction.
class MeasurementSet {
 public:
  explicit MeasurementSet(std::vector<MeasurementBasis> bases) : bases_(std::move(bases)) {
    if (bases_.empty()) throw Error(ErrorCode::OutOfRange, "measurement set must not be empty");
    for (const auto& b : bases_)
      if (b.dim() != bases_.front().dim())
        throw Error(ErrorCode::DimensionMismatch, "all bases in a set must share one dimension");
    unbiased_ = true;
    for (std::size_t i = 0; i < bases_.size(); ++i)
      for (std::size_t j = i + 1; j < bases_.size(); ++j)
        unbiased_ = unbiased_ && entrosteer::mutually_unbiased(bases_[i], bases_[j]);
  }

  int dim() const { return bases_.front().dim(); }
  std::size_t size() const { return bases_.size(); }
  const MeasurementBasis& operator[](std::size_t i) const { return bases_[i]; }
  const std::vector<MeasurementBasis>& bases() const { return bases_; }
  bool mutually_unbiased() const { return unbiased_; }

  auto begin() const { return bases_.begin(); }
  auto end() const { return bases_.end(); }

 private:
  std::vector<MeasurementBasis> bases_;
  bool unbiased_ = false;
};

//------------------------------------------------------------------------------
// Generators
//------------------------------------------------------------------------------

enum class PauliAxis { X, Y, Z };

inline char axis_char(PauliAxis a) { return a == PauliAxis::X ? 'x' : a == PauliAxis::Y ? 'y' : 'z'; }

/// Eigenbasis of sigma_axis; vector 0 belongs to eigenvalue +1.
inline MeasurementBasis pauli_basis(PauliAxis axis) {
  const double s = 1.0 / std::sqrt(2.0);
  const cplx i{0.0, 1.0};
  ComplexMatrix m(2, 2);
  switch (axis) {
    case PauliAxis::X: m << s, s, s, -s; break;
    case PauliAxis::Y: m << s, s, i * s, -i * s; break;
    case PauliAxis::Z: m << 1, 0, 0, 1; break;
  }
  return MeasurementBasis(m, std::string("sigma_") + axis_char(axis));
}

inline MeasurementSet pauli_set(const std::vector<PauliAxis>& axes) {
  if (axes.empty()) throw Error(ErrorCode::OutOfRange, "pauli_set needs at least one axis");
  std::vector<MeasurementBasis> bases;
  for (auto a : axes) bases.push_back(pauli_basis(a));
  return MeasurementSet(std::move(bases));
}

/// Parses strings like "xz" or "xyz" into Pauli axes.
inline std::vector<PauliAxis> parse_axes(const std::string& s) {
  std::vector<PauliAxis> out;
  for (char c : s) {
    switch (c) {
      case 'x': case 'X': out.push_back(PauliAxis::X); break;
      case 'y': case 'Y': out.push_back(PauliAxis::Y); break;
      case 'z': case 'Z': out.push_back(PauliAxis::Z); break;
      default: throw Error(ErrorCode::ParseError, std::string("unknown Pauli axis '") + c + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty Pauli axis string");
  return out;
}

inline MeasurementBasis computational_basis(int d) {
  return MeasurementBasis(ComplexMatrix::Identity(d, d), "computational");
}

/// F[j,k] = exp(2 pi i jk/d)/sqrt(d)
inline MeasurementBasis fourier_basis(int d) {
  ComplexMatrix f(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) f(j, k) = std::polar(1.0 / std::sqrt(double(d)), 2.0 * kPi * j * k / d);
  return MeasurementBasis(f, "fourier");
}

inline MeasurementSet mub_fourier_pair(int d) {
  if (d < 2) throw Error(ErrorCode::OutOfRange, "mub_fourier_pair needs d >= 2");
  return MeasurementSet({computational_basis(d), fourier_basis(d)});
}

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

/// Complete set of d + 1 MUBs for prime d: the computational basis plus
/// bases t = 0..d-1 with components exp(2 pi i (t j^2 + s j)/d)/sqrt(d).
/// For d = 2 the quadratic phase is i^(t j^2), giving the sigma_y basis.
inline MeasurementSet mub_complete(int d) {
  if (!is_prime(d)) throw Error(ErrorCode::NotPrime, "mub_complete is implemented for prime d only", d);
  std::vector<MeasurementBasis> bases{computational_basis(d)};
  const double norm = 1.0 / std::sqrt(double(d));
  for (int t = 0; t < d; ++t) {
    ComplexMatrix m(d, d);
    for (int j = 0; j < d; ++j) {
      for (int s = 0; s < d; ++s) {
        const double phase = d == 2 ? kPi * (0.5 * t * j * j + s * j)
                                    : 2.0 * kPi * double((t * j * j + s * j) % d) / d;
        m(j, s) = std::polar(norm, phase);
      }
    }
    bases.emplace_back(m, "mub_t" + std::to_string(t));
  }
  return MeasurementSet(std::move(bases));
}

/// The five bases M1..M5 of a complete MUB set in d = 4 (columns are the
/// basis vectors).
inline MeasurementSet mub_dim4() {
  const cplx i{0.0, 1.0};
  ComplexMatrix m1 = ComplexMatrix::Identity(4, 4);
  ComplexMatrix m2(4, 4), m3(4, 4), m4(4, 4), m5(4, 4);
  m2 << 1, 1, 1, 1,
        1, 1, -1, -1,
        1, -1, -1, 1,
        1, -1, 1, -1;
  m3 << 1, 1, 1, 1,
        -1, -1, 1, 1,
        -i, i, i, -i,
        -i, i, -i, i;
  m4 << 1, 1, 1, 1,
        -i, -i, i, i,
        -i, i, i, -i,
        -1, 1, -1, 1;
  m5 << 1, 1, 1, 1,
        -i, -i, i, i,
        -1, 1, -1, 1,
        -i, i, i, -i;
  return MeasurementSet({MeasurementBasis(m1, "M1"), MeasurementBasis(0.5 * m2, "M2"),
                         MeasurementBasis(0.5 * m3, "M3"), MeasurementBasis(0.5 * m4, "M4"),
                         MeasurementBasis(0.5 * m5, "M5")});
}

/// Rotated qutrit MUB pair adapted to the bound-entangled family.
/// The third vector of the first basis is completed as
/// (1/sqrt3, sqrt(2/3), 0), the unique unit vector orthogonal to the
/// other two with that leading pair of components. The unspecified phase
/// in the second basis is fixed by the phase gauge (it only contributes a
/// global phase per vector).
inline MeasurementSet bes_measurements() {
  const double r3 = 1.0 / std::sqrt(3.0), r6 = 1.0 / std::sqrt(6.0), r2 = 1.0 / std::sqrt(2.0);
  const cplx i{0.0, 1.0};
  ComplexMatrix a(3, 3), b(3, 3);
  a << r3, r3, r3,
       -r6, -r6, std::sqrt(2.0 / 3.0),
       -r2, r2, 0.0;
  b << 1.0, 0.0, 0.0,
       0.0, r2, r2,
       0.0, i * r2, -i * r2;
  return MeasurementSet({MeasurementBasis(a, "bes_1"), MeasurementBasis(b, "bes_2")});
}

//------------------------------------------------------------------------------
// Transformations
//------------------------------------------------------------------------------

/// v -> U v. Either one unitary shared by every basis, or one per basis.
inline MeasurementSet rotate(const MeasurementSet& set, const std::vector<ComplexMatrix>& unitaries) {
  if (unitaries.size() != 1 && unitaries.size() != set.size())
    throw Error(ErrorCode::DimensionMismatch, "rotate needs one shared unitary or one per basis");
  std::vector<MeasurementBasis> out;
  for (std::size_t k = 0; k < set.size(); ++k) {
    const ComplexMatrix& u = unitaries.size() == 1 ? unitaries.front() : unitaries[k];
    if (u.rows() != set.dim() || u.cols() != set.dim())
      throw Error(ErrorCode::DimensionMismatch, "unitary dimension differs from basis dimension");
    if (!is_unitary(u, 1e-9)) throw Error(ErrorCode::NotUnitary, "rotation matrix is not unitary", max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.rows())));
    out.emplace_back(u * set[k].vectors(), set[k].label());
  }
  return MeasurementSet(std::move(out));
}

inline MeasurementSet rotate(const MeasurementSet& set, const ComplexMatrix& shared) {
  return rotate(set, std::vector<ComplexMatrix>{shared});
}

/// Complex conjugate of every basis vector.
inline MeasurementSet conjugate(const MeasurementSet& set) {
  std::vector<MeasurementBasis> out;
  for (const auto& b : set) out.emplace_back(b.vectors().conjugate(), b.label() + "*");
  return MeasurementSet(std::move(out));
}

/// First `m` bases of a set.
inline MeasurementSet take(const MeasurementSet& set, std::size_t m) {
  if (m == 0 || m > set.size()) throw Error(ErrorCode::OutOfRange, "cannot take that many bases");
  return MeasurementSet(std::vector<MeasurementBasis>(set.begin(), set.begin() + static_cast<std::ptrdiff_t>(m)));
}

/// Selects bases by index, e.g. {0, 1, 3} picks M1, M2, M4.
inline MeasurementSet select(const MeasurementSet& set, const std::vector<std::size_t>& indices) {
  std::vector<MeasurementBasis> out;
  for (auto k : indices) {
    if (k >= set.size()) throw Error(ErrorCode::OutOfRange, "basis index out of range");
    out.push_back(set[k]);
  }
  return MeasurementSet(std::move(out));
}

}  // namespace entrosteer
