#pragma once

// Steering and entanglement criteria evaluated on measured outcome
// statistics: bipartite Shannon/Tsallis/Renyi criteria, their tripartite
// variants, the global-observable and permutation-matrix criteria, the
// linear criterion and the closed forms for isotropic and two-qubit states.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "entrosteer/bounds.hpp"
#include "entrosteer/core.hpp"
#include "entrosteer/entropy.hpp"
#include "entrosteer/measurements.hpp"
#include "entrosteer/states.hpp"

namespace entrosteer {

namespace tol {
inline constexpr double violation = 1e-9;
}  // namespace tol

//------------------------------------------------------------------------------
// Scenario and assemblage
//------------------------------------------------------------------------------

/// Measurement settings of every party, combined index-wise: setting m
/// measures parties[p][m] on each party p. Parties listed in `untrusted`
/// form the row outcome of every joint distribution (in listed order), the
/// remaining parties form the column outcome (in party order).
struct Scenario {
  std::vector<MeasurementSet> parties;
  std::vector<int> untrusted{0};

  std::size_t settings() const { return parties.front().size(); }
  std::vector<int> dims() const {
    std::vector<int> out;
    for (const auto& p : parties) out.push_back(p.dim());
    return out;
  }
  std::vector<int> trusted() const {
    std::vector<int> out;
    for (int p = 0; p < static_cast<int>(parties.size()); ++p)
      if (std::find(untrusted.begin(), untrusted.end(), p) == untrusted.end()) out.push_back(p);
    return out;
  }
};

/// Alice measures `alice`, Bob measures `bob`; Alice is untrusted.
inline Scenario bipartite(MeasurementSet alice, MeasurementSet bob) {
  return {{std::move(alice), std::move(bob)}, {0}};
}

/// One joint distribution per setting; rows are untrusted outcomes.
struct SettingDistributions {
  std::vector<JointDist> settings;

  std::size_t size() const { return settings.size(); }
  const JointDist& operator[](std::size_t m) const { return settings[m]; }
};

namespace detail {

inline void check_scenario(const Scenario& s) {
  if (s.parties.size() < 2) throw Error(ErrorCode::DimensionMismatch, "a scenario needs at least two parties");
  for (const auto& p : s.parties)
    if (p.size() != s.settings())
      throw Error(ErrorCode::DimensionMismatch, "every party needs the same number of settings");
  if (s.untrusted.empty() || s.untrusted.size() >= s.parties.size())
    throw Error(ErrorCode::DimensionMismatch, "untrusted parties must be a proper non-empty subset");
  for (int u : s.untrusted)
    if (u < 0 || u >= static_cast<int>(s.parties.size()))
      throw Error(ErrorCode::DimensionMismatch, "untrusted party index out of range", u);
}

}  // namespace detail

/// p(outcomes) = Tr[(P_i (x) P_j (x) ...) rho] for every setting.
inline SettingDistributions assemblage(const DensityMatrix& rho, const Scenario& s) {
  detail::check_scenario(s);
  const std::vector<int> dims = s.dims();
  if (detail::product_of(dims) != rho.dim())
    throw Error(ErrorCode::DimensionMismatch, "state dimension does not match the party dimensions");

  const std::vector<int> rows_parties = s.untrusted, cols_parties = s.trusted();
  std::vector<int> row_dims, col_dims;
  for (int p : rows_parties) row_dims.push_back(dims[static_cast<std::size_t>(p)]);
  for (int p : cols_parties) col_dims.push_back(dims[static_cast<std::size_t>(p)]);
  const int n_rows = detail::product_of(row_dims), n_cols = detail::product_of(col_dims);

  SettingDistributions out;
  for (std::size_t m = 0; m < s.settings(); ++m) {
    ComplexMatrix u = s.parties[0][m].vectors();
    for (std::size_t p = 1; p < s.parties.size(); ++p) u = kron(u, s.parties[p][m].vectors());
    const ComplexMatrix diag = u.adjoint() * rho.matrix() * u;

    std::vector<double> probs(static_cast<std::size_t>(n_rows * n_cols), 0.0);
    for (int k = 0; k < rho.dim(); ++k) {
      const auto dg = detail::digits(k, dims);
      std::vector<int> rd, cd;
      for (int p : rows_parties) rd.push_back(dg[static_cast<std::size_t>(p)]);
      for (int p : cols_parties) cd.push_back(dg[static_cast<std::size_t>(p)]);
      probs[static_cast<std::size_t>(detail::compose(rd, row_dims) * n_cols + detail::compose(cd, col_dims))] =
          diag(k, k).real();
    }
    out.settings.emplace_back(ProbDist(std::move(probs)), static_cast<std::size_t>(n_rows),
                              static_cast<std::size_t>(n_cols));
  }
  return out;
}

//------------------------------------------------------------------------------
// Reports
//------------------------------------------------------------------------------

struct CriterionReport {
  std::string criterion;
  double lhs = 0.0;
  BoundValue bound;
  bool violated = false;
  std::vector<double> terms;
  double tolerance = tol::violation;

  double margin() const { return lhs - bound.value; }
  /// True when a violation verdict leans on a conjectured catalog entry.
  bool rests_on_conjecture() const { return bound.provenance == Provenance::Conjectured; }
};

inline CriterionReport make_report(std::string criterion, std::vector<double> terms, BoundValue bound) {
  CriterionReport r;
  r.criterion = std::move(criterion);
  r.lhs = std::accumulate(terms.begin(), terms.end(), 0.0);
  r.terms = std::move(terms);
  r.bound = std::move(bound);
  r.violated = r.lhs < r.bound.value - r.tolerance;
  return r;
}

//------------------------------------------------------------------------------
// Per-setting quantities
//------------------------------------------------------------------------------

/// (1/(q-1)) [1 - sum_ij p_ij^q / p_i^(q-1)], rows with p_i = 0 dropped;
/// the conditional Shannon entropy when q is within 1e-9 of one.
inline double tsallis_steering_term(const JointDist& p, double q) {
  if (std::abs(q - 1.0) < tol::q_unity) return conditional_shannon(p);
  const ProbDist rows = p.row_marginal();
  double s = 0.0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (rows[i] <= 0.0) continue;
    double inner = 0.0;
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (p(i, j) > 0.0) inner += std::pow(p(i, j), q);
    s += inner / std::pow(rows[i], q - 1.0);
  }
  return (1.0 - s) / (q - 1.0);
}

/// (1/(1-r)) ln sum_ij p_ij^r p_i^(1-r)
inline double renyi_steering_term(const JointDist& p, double r) {
  if (std::abs(r - 1.0) < tol::q_unity) return conditional_shannon(p);
  const ProbDist rows = p.row_marginal();
  double s = 0.0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (rows[i] <= 0.0) continue;
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (p(i, j) > 0.0) s += std::pow(p(i, j), r) * std::pow(rows[i], 1.0 - r);
  }
  return std::log(s) / (1.0 - r);
}

/// Non-additivity correction sum_i p_i^q ln_q(p_i)^2 - sum_ij p_ij^q ln_q(p_i) ln_q(p_ij),
/// with rows as the conditioning variable (covers both tripartite forms).
inline double correction_term(const JointDist& p, double q) {
  const ProbDist rows = p.row_marginal();
  double c = 0.0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (rows[i] <= 0.0) continue;
    const double li = q_log(rows[i], q);
    c += std::pow(rows[i], q) * li * li;
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (p(i, j) > 0.0) c -= std::pow(p(i, j), q) * li * q_log(p(i, j), q);
  }
  return c;
}

/// S_q(rows, cols) - S_q(rows) + (1 - q) * correction_term.
inline double tsallis_entropy_form_term(const JointDist& p, double q) {
  const ProbDist rows = p.row_marginal();
  return conditional_tsallis(p, rows, q) + (1.0 - q) * correction_term(p, q);
}

//------------------------------------------------------------------------------
// Bipartite and tripartite criteria
//------------------------------------------------------------------------------

inline CriterionReport steering_shannon(const SettingDistributions& d, const BoundValue& bound) {
  std::vector<double> terms;
  for (const auto& p : d.settings) terms.push_back(conditional_shannon(p));
  return make_report("steering-shannon", std::move(terms), bound);
}

inline CriterionReport steering_tsallis(const SettingDistributions& d, double q, const BoundValue& bound) {
  if (!(q > 0.0)) throw Error(ErrorCode::DomainError, "Tsallis q must be positive", q);
  std::vector<double> terms;
  for (const auto& p : d.settings) terms.push_back(tsallis_steering_term(p, q));
  return make_report("steering-tsallis", std::move(terms), bound);
}

/// Same criterion evaluated through conditional entropies and the
/// correction term; agrees with steering_tsallis up to rounding.
inline CriterionReport steering_tsallis_entropy_form(const SettingDistributions& d, double q,
                                                     const BoundValue& bound) {
  std::vector<double> terms;
  for (const auto& p : d.settings) terms.push_back(tsallis_entropy_form_term(p, q));
  return make_report("steering-tsallis-entropy-form", std::move(terms), bound);
}

inline CriterionReport steering_renyi(const SettingDistributions& d, double r, const BoundValue& bound) {
  if (!(r > 0.0)) throw Error(ErrorCode::DomainError, "Renyi r must be positive", r);
  std::vector<double> terms;
  for (const auto& p : d.settings) terms.push_back(renyi_steering_term(p, r));
  return make_report("steering-renyi", std::move(terms), bound);
}

inline CriterionReport steering(const SettingDistributions& d, const EntropyKind& kind, const BoundValue& bound) {
  switch (kind.family()) {
    case EntropyKind::Family::Shannon: return steering_shannon(d, bound);
    case EntropyKind::Family::Tsallis: return steering_tsallis(d, kind.parameter(), bound);
    case EntropyKind::Family::Renyi: return steering_renyi(d, kind.parameter(), bound);
  }
  return {};
}

/// Alice steering Bob and Charlie: rows are Alice's outcome, columns (j,k).
inline CriterionReport tripartite_a_to_bc(const SettingDistributions& d, double q, const BoundValue& bound) {
  auto r = steering_tsallis(d, q, bound);
  r.criterion = "tripartite-a-to-bc";
  return r;
}

/// Alice and Bob steering Charlie: rows are (i,j) or a global AB outcome.
inline CriterionReport tripartite_ab_to_c(const SettingDistributions& d, double q, const BoundValue& bound) {
  auto r = steering_tsallis(d, q, bound);
  r.criterion = "tripartite-ab-to-c";
  return r;
}

//------------------------------------------------------------------------------
// Global-observable criterion
//------------------------------------------------------------------------------

/// Merges the outcome pair (i, j) of a d x d joint distribution into the
/// global outcome (i + j) mod d, i.e. the eigenvalue of the product
/// observable for +-1 (qubit) or root-of-unity spectra.
inline ProbDist merge_product_outcomes(const JointDist& p) {
  if (p.rows() != p.cols()) throw Error(ErrorCode::DimensionMismatch, "outcome merging needs equal local dims");
  const std::size_t d = p.rows();
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[(i + j) % d] += p(i, j);
  return ProbDist(std::move(out));
}

inline CriterionReport global_observable(const DensityMatrix& rho, const Scenario& s, const EntropyKind& kind,
                                    const BoundValue& bound) {
  const auto d = assemblage(rho, s);
  std::vector<double> terms;
  for (const auto& p : d.settings) terms.push_back(entropy(merge_product_outcomes(p), kind));
  return make_report("global-observable", std::move(terms), bound);
}

//------------------------------------------------------------------------------
// Permutation-matrix criterion
//------------------------------------------------------------------------------

/// n_A x n_B grid of symbols 0..n_B-1 in which every row is a permutation
/// of the symbol set. Rows follow Alice's outcomes.
class PermutationMatrix {
 public:
  explicit PermutationMatrix(std::vector<std::vector<int>> grid) : grid_(std::move(grid)) {
    if (grid_.empty() || grid_.front().empty())
      throw Error(ErrorCode::InvalidPermutationMatrix, "empty permutation matrix");
    const std::size_t n = grid_.front().size();
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      if (grid_[i].size() != n) throw Error(ErrorCode::InvalidPermutationMatrix, "ragged permutation matrix");
      std::vector<int> sorted = grid_[i];
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t t = 0; t < n; ++t)
        if (sorted[t] != static_cast<int>(t))
          throw Error(ErrorCode::InvalidPermutationMatrix,
                      "row " + std::to_string(i) + " is not a permutation of the symbol set", double(i));
    }
  }

  std::size_t rows() const { return grid_.size(); }
  std::size_t cols() const { return grid_.front().size(); }
  int operator()(std::size_t i, std::size_t j) const { return grid_[i][j]; }
  const std::vector<std::vector<int>>& grid() const { return grid_; }

 private:
  std::vector<std::vector<int>> grid_;
};

/// t_s = sum_ij p_ij [symbols_ij == s]. Accepts any grid of symbols in
/// 0..cols-1, valid permutation matrix or not.
inline ProbDist recombine(const JointDist& p, const std::vector<std::vector<int>>& symbols) {
  if (symbols.size() != p.rows()) throw Error(ErrorCode::DimensionMismatch, "symbol grid row count differs");
  std::vector<double> out(p.cols(), 0.0);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (symbols[i].size() != p.cols()) throw Error(ErrorCode::DimensionMismatch, "symbol grid column count differs");
    for (std::size_t j = 0; j < p.cols(); ++j) {
      const int s = symbols[i][j];
      if (s < 0 || s >= static_cast<int>(p.cols())) throw Error(ErrorCode::OutOfRange, "symbol out of range", s);
      out[static_cast<std::size_t>(s)] += p(i, j);
    }
  }
  return ProbDist(std::move(out));
}

inline ProbDist recombine(const JointDist& p, const PermutationMatrix& q) { return recombine(p, q.grid()); }

/// lhs = sum_k f(recombine(p_k, Q_k)).
inline CriterionReport permutation_criterion(const std::vector<JointDist>& p, const std::vector<PermutationMatrix>& qs,
                                         const EntropyKind& f, const BoundValue& bound) {
  if (p.size() != qs.size() && p.size() != 1)
    throw Error(ErrorCode::DimensionMismatch, "need one distribution per permutation matrix (or one shared)");
  std::vector<double> terms;
  for (std::size_t k = 0; k < qs.size(); ++k) {
    const JointDist& pk = p.size() == 1 ? p.front() : p[k];
    if (qs[k].rows() != pk.rows() || qs[k].cols() != pk.cols())
      throw Error(ErrorCode::DimensionMismatch, "permutation matrix shape differs from the distribution");
    terms.push_back(entropy(recombine(pk, qs[k]), f));
  }
  return make_report("permutation-matrix", std::move(terms), bound);
}

//------------------------------------------------------------------------------
// Two-qubit and isotropic closed forms
//------------------------------------------------------------------------------

/// Violated iff |c| > 1; reported as lhs = 1 - |c| against bound 0.
inline CriterionReport linear_criterion(const Vec3& c) {
  const double norm = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  return make_report("linear", {1.0 - norm}, BoundValue(0.0, Provenance::Analytic, "linear-unit-norm"));
}

/// Tsallis criterion for the isotropic state measured in m MUBs (Bob's
/// bases conjugate to Alice's), bound from the MUB catalog.
inline CriterionReport closed_form_isotropic(int d, int m, double q, double alpha) {
  if (d < 2) throw Error(ErrorCode::OutOfRange, "isotropic needs d >= 2", d);
  const double lo = -1.0 / (double(d) * d - 1.0);
  if (!(alpha >= lo - 1e-15 && alpha <= 1.0 + 1e-15))
    throw Error(ErrorCode::OutOfRange, "isotropic alpha outside [-1/(d^2-1), 1]", alpha);
  const double dd = d;
  std::vector<double> row(static_cast<std::size_t>(d), (1.0 - alpha) / dd);
  row[0] = (1.0 + (dd - 1.0) * alpha) / dd;
  const double term = tsallis_entropy(row, q);
  return make_report("closed-form-isotropic", std::vector<double>(static_cast<std::size_t>(m), term),
                     bound_tsallis_mub(d, m, q));
}

/// q = 2 criterion with the Pauli triple on a state in Bloch normal form:
/// lhs = sum_i (1 - a_i^2 - b_i^2 - c_i^2 + 2 a_i b_i c_i) / (2 (1 - a_i^2)) against 1.
inline CriterionReport closed_form_two_qubit_q2(const BlochParams& p) {
  std::vector<double> terms;
  for (std::size_t i = 0; i < 3; ++i) {
    const double a = p.a[i], b = p.b[i], c = p.c[i];
    if (std::abs(a) >= 1.0 - 1e-9)
      throw Error(ErrorCode::SingularMarginal, "untrusted marginal is deterministic along an axis", a);
    terms.push_back((1.0 - a * a - b * b - c * c + 2.0 * a * b * c) / (2.0 * (1.0 - a * a)));
  }
  return make_report("closed-form-two-qubit-q2", std::move(terms), bound_tsallis_mub(2, 3, 2.0));
}

//------------------------------------------------------------------------------
// One-way steerable family
//------------------------------------------------------------------------------

struct OneWayWindow {
  double lower = 0.0;
  double upper = 0.0;
  bool empty() const { return !(lower < upper); }
};

/// Detection window of the q = 2 criterion with m = 2 (x, z) or m = 3 Pauli
/// measurements on one_way(beta, theta): violation for beta > lower, while
/// the state stays one-way steerable up to upper.
inline OneWayWindow one_way_window(double theta, int m) {
  if (!(theta > 0.0 && theta < kPi / 4.0)) throw Error(ErrorCode::OutOfRange, "theta must lie in (0, pi/4)", theta);
  const double s2 = std::sin(2.0 * theta);
  if (m == 2) {
    const double t = std::tan(theta);
    return {std::sqrt(1.0 + t * t) / (1.0 + t), 1.0 / std::sqrt(1.0 + s2 * s2)};
  }
  if (m == 3) {
    return {std::sqrt(3.0 - std::sqrt(1.0 + 8.0 * s2 * s2)) / (2.0 * std::cos(2.0 * theta)),
            1.0 / std::sqrt(1.0 + 2.0 * s2 * s2)};
  }
  throw Error(ErrorCode::OutOfRange, "one-way window defined for m = 2 or 3", m);
}

}  // namespace entrosteer
