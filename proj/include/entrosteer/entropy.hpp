#pragma once

// Classical entropies of discrete outcome distributions: Shannon, Tsallis
// and Renyi, the q-logarithm, conditional Tsallis entropy and the matching
// relative entropies. All logarithms are natural (results in nats).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "entrosteer/error.hpp"

namespace entrosteer {

namespace tol {
inline constexpr double q_unity = 1e-9;
inline constexpr double normalization = 1e-9;
inline constexpr double negative_prob = 1e-12;
inline constexpr double marginal = 1e-9;
}  // namespace tol

//------------------------------------------------------------------------------
// Distributions
//------------------------------------------------------------------------------

/// Non-negative probabilities summing to one. Entries down to -1e-12 are
/// clamped to zero, and the vector is renormalized when the sum is within
/// 1e-9 of one; anything else is rejected.
class ProbDist {
 public:
  ProbDist() = default;
  explicit ProbDist(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw Error(ErrorCode::InvalidDistribution, "empty distribution");
    for (double& p : probs_) {
      if (!std::isfinite(p) || p < -tol::negative_prob) {
        std::ostringstream os;
        os << "entry " << p << " is negative or non-finite";
        throw Error(ErrorCode::InvalidDistribution, os.str(), std::abs(p));
      }
      if (p < 0.0) p = 0.0;
    }
    const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(total - 1.0) > tol::normalization) {
      std::ostringstream os;
      os << "probabilities sum to " << total;
      throw Error(ErrorCode::InvalidDistribution, os.str(), std::abs(total - 1.0));
    }
    for (double& p : probs_) p /= total;
  }
  ProbDist(std::initializer_list<double> probs) : ProbDist(std::vector<double>(probs)) {}

  static ProbDist uniform(std::size_t n) { return ProbDist(std::vector<double>(n, 1.0 / static_cast<double>(n))); }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }
  double max() const { return *std::max_element(probs_.begin(), probs_.end()); }

 private:
  std::vector<double> probs_;
};

/// Outer product p (x) r, row-major with p as the slow index.
inline ProbDist product(const ProbDist& p, const ProbDist& r) {
  std::vector<double> out;
  out.reserve(p.size() * r.size());
  for (double a : p.probs())
    for (double b : r.probs()) out.push_back(a * b);
  return ProbDist(std::move(out));
}

/// Convex combination lambda * p + (1 - lambda) * r.
inline ProbDist mix(const ProbDist& p, const ProbDist& r, double lambda) {
  if (p.size() != r.size()) throw Error(ErrorCode::DimensionMismatch, "mixing distributions of different size");
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = lambda * p[i] + (1.0 - lambda) * r[i];
  return ProbDist(std::move(out));
}

/// A joint distribution over (row, col) outcome pairs, stored row-major.
/// In the steering criteria rows index the untrusted side's outcome and
/// columns the trusted side's outcome.
class JointDist {
 public:
  JointDist(ProbDist probs, std::size_t rows, std::size_t cols)
      : probs_(std::move(probs)), rows_(rows), cols_(cols) {
    if (rows * cols != probs_.size())
      throw Error(ErrorCode::DimensionMismatch, "joint distribution shape does not match its size");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return probs_[i * cols_ + j]; }
  const ProbDist& flat() const { return probs_; }

  ProbDist row_marginal() const {
    std::vector<double> m(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m[i] += (*this)(i, j);
    return ProbDist(std::move(m));
  }
  ProbDist col_marginal() const {
    std::vector<double> m(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m[j] += (*this)(i, j);
    return ProbDist(std::move(m));
  }

 private:
  ProbDist probs_;
  std::size_t rows_;
  std::size_t cols_;
};

//------------------------------------------------------------------------------
// Entropy kinds
//------------------------------------------------------------------------------

class EntropyKind {
 public:
  enum class Family { Shannon, Tsallis, Renyi };

  static EntropyKind shannon() { return EntropyKind(Family::Shannon, 1.0); }
  static EntropyKind tsallis(double q) {
    check_parameter(q, "Tsallis q");
    return EntropyKind(Family::Tsallis, q);
  }
  static EntropyKind renyi(double r) {
    check_parameter(r, "Renyi r");
    return EntropyKind(Family::Renyi, r);
  }

  Family family() const { return family_; }
  double parameter() const { return parameter_; }
  /// True when the kind evaluates through the Shannon branch, either
  /// explicitly or because its parameter sits within 1e-9 of one.
  bool is_shannon_limit() const {
    return family_ == Family::Shannon || std::abs(parameter_ - 1.0) < tol::q_unity;
  }
  std::string name() const {
    std::ostringstream os;
    switch (family_) {
      case Family::Shannon: return "shannon";
      case Family::Tsallis: os << "tsallis(q=" << parameter_ << ")"; break;
      case Family::Renyi: os << "renyi(r=" << parameter_ << ")"; break;
    }
    return os.str();
  }

 private:
  EntropyKind(Family f, double p) : family_(f), parameter_(p) {}
  static void check_parameter(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::DomainError, std::string(what) + " must be positive and finite");
  }

  Family family_;
  double parameter_;
};

//------------------------------------------------------------------------------
// Scalar helpers
//------------------------------------------------------------------------------

/// ln_q(x) = (x^(1-q) - 1)/(1 - q); the natural log when |q - 1| < 1e-9.
inline double q_log(double x, double q) {
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "q_log requires x > 0", x);
  if (std::abs(q - 1.0) < tol::q_unity) return std::log(x);
  return std::expm1((1.0 - q) * std::log(x)) / (1.0 - q);
}

/// sum_i p_i^a over strictly positive entries (0^a = 0).
inline double power_sum(std::span<const double> p, double a) {
  double s = 0.0;
  for (double v : p)
    if (v > 0.0) s += std::pow(v, a);
  return s;
}

inline double shannon_entropy(std::span<const double> p) {
  double s = 0.0;
  for (double v : p)
    if (v > 0.0) s -= v * std::log(v);
  return s;
}

inline double tsallis_entropy(std::span<const double> p, double q) {
  if (std::abs(q - 1.0) < tol::q_unity) return shannon_entropy(p);
  return (1.0 - power_sum(p, q)) / (q - 1.0);
}

/// ln sum p^r evaluated as r ln p_max + ln sum (p/p_max)^r, so large
/// orders do not underflow.
inline double renyi_entropy(std::span<const double> p, double r) {
  if (std::abs(r - 1.0) < tol::q_unity) return shannon_entropy(p);
  const double top = *std::max_element(p.begin(), p.end());
  double s = 0.0;
  for (double v : p)
    if (v > 0.0) s += std::pow(v / top, r);
  return (r * std::log(top) + std::log(s)) / (1.0 - r);
}

//------------------------------------------------------------------------------
// Entropies
//------------------------------------------------------------------------------

inline double entropy(std::span<const double> p, const EntropyKind& kind) {
  switch (kind.family()) {
    case EntropyKind::Family::Shannon: return shannon_entropy(p);
    case EntropyKind::Family::Tsallis: return tsallis_entropy(p, kind.parameter());
    case EntropyKind::Family::Renyi: return renyi_entropy(p, kind.parameter());
  }
  return 0.0;
}

inline double entropy(const ProbDist& p, const EntropyKind& kind) { return entropy(p.probs(), kind); }

/// S_q(B|A) = S_q(A,B) - S_q(A). `marginal` must be the row marginal of
/// `joint` within 1e-9 (MarginalMismatch otherwise).
inline double conditional_tsallis(const JointDist& joint, const ProbDist& marginal, double q) {
  if (marginal.size() != joint.rows())
    throw Error(ErrorCode::MarginalMismatch, "marginal length differs from joint row count");
  const ProbDist rows = joint.row_marginal();
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) worst = std::max(worst, std::abs(rows[i] - marginal[i]));
  if (worst > tol::marginal) throw Error(ErrorCode::MarginalMismatch, "marginal is not the row marginal of joint", worst);
  return tsallis_entropy(joint.flat().probs(), q) - tsallis_entropy(marginal.probs(), q);
}

inline double conditional_shannon(const JointDist& joint) {
  return shannon_entropy(joint.flat().probs()) - shannon_entropy(joint.row_marginal().probs());
}

//------------------------------------------------------------------------------
// Relative entropies
//------------------------------------------------------------------------------

/// Result of a divergence. An unbounded divergence is a distinct state,
/// not a floating-point infinity: reading value() from it throws
/// InfiniteDivergence.
class Divergence {
 public:
  static Divergence finite(double v) { return Divergence(v, false); }
  static Divergence infinite() { return Divergence(0.0, true); }

  bool is_finite() const { return !infinite_; }
  double value() const {
    if (infinite_) throw Error(ErrorCode::InfiniteDivergence, "divergence is unbounded (support mismatch)");
    return value_;
  }

 private:
  Divergence(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// D(p||r) for the chosen entropy family:
///   Shannon  sum p ln(p/r)
///   Tsallis  -sum p ln_q(r/p)
///   Renyi    ln(sum p^a r^(1-a)) / (a - 1)
/// Terms with p_i = 0 vanish. If some r_i = 0 while p_i > 0 the result is
/// the infinite state.
inline Divergence relative_entropy(const ProbDist& p, const ProbDist& r, const EntropyKind& kind) {
  if (p.size() != r.size()) throw Error(ErrorCode::DimensionMismatch, "divergence of distributions of different size");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0 && r[i] <= 0.0) return Divergence::infinite();

  const double a = kind.parameter();
  if (kind.is_shannon_limit()) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] > 0.0) d += p[i] * std::log(p[i] / r[i]);
    return Divergence::finite(d);
  }
  if (kind.family() == EntropyKind::Family::Tsallis) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] > 0.0) d -= p[i] * q_log(r[i] / p[i], a);
    return Divergence::finite(d);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s += std::pow(p[i], a) * std::pow(r[i], 1.0 - a);
  return Divergence::finite(std::log(s) / (a - 1.0));
}

}  // namespace entrosteer
