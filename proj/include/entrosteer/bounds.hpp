#pragma once

// Entropic uncertainty bounds for mutually unbiased measurements: the
// analytic/conjectured catalog and a multi-start pure-state minimizer that
// certifies a bound numerically for an arbitrary measurement set.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "entrosteer/core.hpp"
#include "entrosteer/entropy.hpp"
#include "entrosteer/measurements.hpp"
#include "entrosteer/optimize.hpp"

namespace entrosteer {

enum class BoundScenario { Single, CompositeSeparable, CompositeAny };

inline std::string to_string(BoundScenario s) {
  switch (s) {
    case BoundScenario::Single: return "single";
    case BoundScenario::CompositeSeparable: return "composite-separable";
    case BoundScenario::CompositeAny: return "composite-any";
  }
  return "?";
}

enum class Provenance { Analytic, Conjectured, Numerical };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Analytic: return "analytic";
    case Provenance::Conjectured: return "conjectured";
    case Provenance::Numerical: return "numerical";
  }
  return "?";
}

/// Output of the pure-state minimizer.
struct MinimizerReport {
  double value = 0.0;
  ComplexVector state;
  int restarts = 0;
  long evaluations = 0;
  bool converged = false;
};

struct BoundValue {
  double value = 0.0;
  Provenance provenance = Provenance::Analytic;
  std::string tag;
  std::string caveat;
  std::optional<MinimizerReport> certificate;

  BoundValue() = default;
  BoundValue(double v, Provenance p, std::string t, std::string c = {})
      : value(v), provenance(p), tag(std::move(t)), caveat(std::move(c)) {
    if (!(v >= -1e-12) || !std::isfinite(v)) throw Error(ErrorCode::DomainError, "bound value must be non-negative", v);
    value = std::max(0.0, v);
  }
};

//------------------------------------------------------------------------------
// Catalog: single system
//------------------------------------------------------------------------------

namespace detail {

inline void check_mub_count(int d, int m) {
  if (d < 2) throw Error(ErrorCode::OutOfRange, "dimension must be at least 2", d);
  if (m < 2 || m > d + 1) throw Error(ErrorCode::OutOfRange, "number of MUBs must lie in [2, d+1]", m);
}

inline double shannon_complete(int d) {
  const double dd = d;
  if (d % 2 == 1) return (dd + 1.0) * std::log((dd + 1.0) / 2.0);
  return (dd / 2.0) * std::log(dd / 2.0) + (dd / 2.0 + 1.0) * std::log(dd / 2.0 + 1.0);
}

inline double shannon_counting(int d, int m) {
  const double dd = d, mm = m;
  const double k = std::floor(mm * dd / (dd + mm - 1.0));
  return mm * std::log(k) + (k + 1.0) * (mm - k * (dd + mm - 1.0) / dd) * std::log(1.0 + 1.0 / k);
}

inline bool in_odd_even_window(double q) {
  // q in [2n-1, 2n] for some positive integer n
  const double n = std::ceil(q / 2.0);
  return q >= 2.0 * n - 1.0 - 1e-12;
}

}  // namespace detail

/// Shannon bound for m MUBs in dimension d. The complete-set formula is
/// used for m = d+1, the counting bound for every m, and ln d for a pair;
/// the largest applicable value is returned.
inline BoundValue bound_shannon_mub(int d, int m) {
  detail::check_mub_count(d, m);
  BoundValue best(detail::shannon_counting(d, m), Provenance::Analytic, "shannon-mub-count");
  if (m == d + 1) {
    const double v = detail::shannon_complete(d);
    if (v > best.value - 1e-15) best = BoundValue(v, Provenance::Analytic, "shannon-complete-mub");
  }
  if (m == 2) {
    const double v = std::log(double(d));
    if (v > best.value + 1e-15) best = BoundValue(v, Provenance::Analytic, "shannon-mub-pair");
  }
  return best;
}

/// Tsallis bound for m MUBs in dimension d.
inline BoundValue bound_tsallis_mub(int d, int m, double q) {
  detail::check_mub_count(d, m);
  if (!(q > 0.0) || !std::isfinite(q)) throw Error(ErrorCode::OutOfRange, "Tsallis q must be positive", q);
  if (std::abs(q - 1.0) < tol::q_unity) return bound_shannon_mub(d, m);

  const double dd = d, mm = m;
  BoundValue best;
  if (q <= 2.0) {
    best = BoundValue(mm * q_log(mm * dd / (dd + mm - 1.0), q), Provenance::Analytic, "tsallis-mub-small-q");
  } else {
    best = BoundValue((mm - 1.0) * q_log(dd, q), Provenance::Conjectured, "tsallis-mub-large-q");
  }

  if (d == 2) {
    const double v = (mm - 1.0) * q_log(2.0, q);
    Provenance p = Provenance::Conjectured;
    if (m == 2 && q >= 1.0 && detail::in_odd_even_window(q)) p = Provenance::Analytic;
    std::string caveat;
    if (q > 2.0 && q < 3.0)
      caveat = "exceeds the true minimum for q in (2,3); certify with verify_bound_numeric";
    if (v > best.value + 1e-15 || (q > 2.0 && std::abs(v - best.value) < 1e-15)) {
      best = BoundValue(v, p, "tsallis-qubit-pauli", caveat);
    }
  }
  return best;
}

/// Renyi bound for m MUBs in dimension d.
inline BoundValue bound_renyi_mub(int d, int m, double r) {
  detail::check_mub_count(d, m);
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::OutOfRange, "Renyi r must be positive", r);
  if (r < 2.0) {
    BoundValue b = bound_shannon_mub(d, m);
    b.tag = "renyi-mub-small-r";
    if (r > 1.0 + tol::q_unity)
      b.caveat = "Renyi entropy decreases with r; for r in (1,2) this value can exceed the true minimum";
    return b;
  }
  const double dd = d, mm = m;
  return BoundValue(mm * r / (2.0 * (r - 1.0)) * std::log(mm * dd / (dd + mm - 1.0)), Provenance::Analytic,
                    "renyi-mub-large-r");
}

inline BoundValue bound_mub(int d, int m, const EntropyKind& kind) {
  switch (kind.family()) {
    case EntropyKind::Family::Shannon: return bound_shannon_mub(d, m);
    case EntropyKind::Family::Tsallis: return bound_tsallis_mub(d, m, kind.parameter());
    case EntropyKind::Family::Renyi: return bound_renyi_mub(d, m, kind.parameter());
  }
  return {};
}

//------------------------------------------------------------------------------
// Catalog: composite systems
//------------------------------------------------------------------------------

/// Bound on sum_m S(A_m (x) B_m) for a bipartite system where both parties
/// measure m MUBs. Supported: Shannon separable for any dims, two-qubit
/// Shannon and Tsallis (q >= 1) for m in {2,3}.
inline BoundValue bound_composite(int dA, int dB, int m, const EntropyKind& kind, BoundScenario scenario) {
  if (scenario == BoundScenario::Single)
    throw Error(ErrorCode::UnsupportedCombination, "bound_composite needs a composite scenario");
  const bool qubits = dA == 2 && dB == 2;

  if (kind.is_shannon_limit()) {
    if (scenario == BoundScenario::CompositeSeparable)
      return BoundValue(bound_shannon_mub(dA, m).value + bound_shannon_mub(dB, m).value, Provenance::Analytic,
                        "shannon-separable-sum");
    if (qubits && m == 2) return BoundValue(2.0 * std::log(2.0), Provenance::Conjectured, "shannon-two-qubit-pauli2");
    if (qubits && m == 3) return BoundValue(3.0 * std::log(2.0), Provenance::Conjectured, "shannon-two-qubit-pauli3");
    throw Error(ErrorCode::UnsupportedCombination, "no catalog entry for this Shannon composite bound");
  }

  if (kind.family() == EntropyKind::Family::Tsallis && qubits && kind.parameter() >= 1.0) {
    const double q = kind.parameter();
    if (m == 2) return BoundValue(q_log(4.0, q), Provenance::Conjectured, "tsallis-two-qubit-pauli2");
    if (m == 3) {
      if (scenario == BoundScenario::CompositeAny && q <= 2.0)
        return BoundValue(3.0 * q_log(2.0, q), Provenance::Conjectured, "tsallis-two-qubit-pauli3-entangled");
      return BoundValue(2.0 * q_log(4.0, q), Provenance::Conjectured, "tsallis-two-qubit-pauli3");
    }
  }
  throw Error(ErrorCode::UnsupportedCombination, "no catalog entry for " + kind.name() + " composite bound (" +
                                                     to_string(scenario) + ")");
}

//------------------------------------------------------------------------------
// Numerical certification
//------------------------------------------------------------------------------

namespace detail {

inline ComplexVector vector_from(const std::vector<double>& x, std::size_t offset, int n) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx{x[offset + 2 * i], x[offset + 2 * i + 1]};
  const double norm = v.norm();
  if (norm < 1e-300) return ComplexVector::Unit(n, 0);
  return v / norm;
}

inline std::vector<double> params_from(const ComplexVector& v) {
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(2 * v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    x.push_back(v(i).real());
    x.push_back(v(i).imag());
  }
  return x;
}

/// sum over bases of the entropy of the outcome distribution of psi.
/// `bases` holds, per setting, the adjoint of the basis column matrix.
inline double entropy_sum(const std::vector<ComplexMatrix>& bases, const ComplexVector& psi,
                          const EntropyKind& kind, std::vector<double>& scratch) {
  double total = 0.0;
  for (const auto& b : bases) {
    const ComplexVector amp = b * psi;
    scratch.resize(static_cast<std::size_t>(amp.size()));
    for (Eigen::Index k = 0; k < amp.size(); ++k) scratch[static_cast<std::size_t>(k)] = std::norm(amp(k));
    total += entropy(scratch, kind);
  }
  return total;
}

}  // namespace detail

struct MinimizerBudget {
  int restarts = 64;
  int iterations = 4000;
};

/// Minimum over pure states of sum_m S(outcomes of basis m). For composite
/// scenarios every basis is measured on both parties as B_m (x) B_m; the
/// separable scenario restricts to product vectors and alternates between
/// the two factors. Restarts are seeded from the basis vectors first, then
/// from Haar-random vectors drawn from derive_seed(seed, restart).
inline BoundValue verify_bound_numeric(const MeasurementSet& set, const EntropyKind& kind, BoundScenario scenario,
                                       MinimizerBudget budget = {}, RngSeed seed = {}) {
  const int d = set.dim();
  const bool composite = scenario != BoundScenario::Single;
  if ((!composite && d > 9) || (composite && d > 4))
    throw Error(ErrorCode::OutOfRange, "numerical certification limited to d <= 9 (single) or 4x4 (composite)", d);
  if (budget.restarts < 1 || budget.iterations < 1)
    throw Error(ErrorCode::OutOfRange, "minimizer budget must be positive");

  std::vector<ComplexMatrix> bases;
  for (const auto& b : set) {
    ComplexMatrix v = b.vectors();
    if (composite) v = kron(v, v);
    bases.push_back(v.adjoint());
  }
  const int n = composite ? d * d : d;
  std::vector<double> scratch;

  auto full_state = [&](const std::vector<double>& x) -> ComplexVector {
    if (scenario == BoundScenario::CompositeSeparable)
      return kron(detail::vector_from(x, 0, d), detail::vector_from(x, static_cast<std::size_t>(2 * d), d));
    return detail::vector_from(x, 0, n);
  };
  const Objective joint = [&](const std::vector<double>& x) {
    return detail::entropy_sum(bases, full_state(x), kind, scratch);
  };

  // Starting points: basis vectors (product pairs for composite), then Haar.
  std::vector<ComplexVector> seeds;
  for (const auto& b : set) {
    for (int k = 0; k < d; ++k) {
      if (!composite) {
        seeds.push_back(b.vector(k));
      } else {
        for (int l = 0; l < d; ++l) seeds.push_back(kron(ComplexVector(b.vector(k)), ComplexVector(b.vector(l))));
      }
    }
  }

  MinimizerReport report;
  report.value = INFINITY;
  bool any_converged = false;
  for (int r = 0; r < budget.restarts; ++r) {
    std::vector<double> x0;
    if (static_cast<std::size_t>(r) < seeds.size()) {
      if (scenario == BoundScenario::CompositeSeparable) {
        const int per = static_cast<int>(set.size()) * d * d;
        const int which = r % per;
        const auto& b = set[static_cast<std::size_t>(which / (d * d))];
        auto xa = detail::params_from(b.vector((which % (d * d)) / d));
        auto xb = detail::params_from(b.vector(which % d));
        xa.insert(xa.end(), xb.begin(), xb.end());
        x0 = std::move(xa);
      } else {
        x0 = detail::params_from(seeds[static_cast<std::size_t>(r)]);
      }
    } else {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
      if (scenario == BoundScenario::CompositeSeparable) {
        x0 = detail::params_from(random_pure(d, rng));
        auto xb = detail::params_from(random_pure(d, rng));
        x0.insert(x0.end(), xb.begin(), xb.end());
      } else {
        x0 = detail::params_from(random_pure(n, rng));
      }
    }

    LocalResult res;
    if (scenario == BoundScenario::CompositeSeparable) {
      // Alternate over the two local vectors, then polish jointly.
      const std::size_t half = static_cast<std::size_t>(2 * d);
      std::vector<double> x = x0;
      double current = joint(x);
      long evals = 1;
      for (int sweep = 0; sweep < 8; ++sweep) {
        for (int side = 0; side < 2; ++side) {
          const std::size_t off = side == 0 ? 0 : half;
          const Objective local = [&](const std::vector<double>& y) {
            std::vector<double> z = x;
            std::copy(y.begin(), y.end(), z.begin() + static_cast<std::ptrdiff_t>(off));
            return joint(z);
          };
          std::vector<double> y(x.begin() + static_cast<std::ptrdiff_t>(off),
                                x.begin() + static_cast<std::ptrdiff_t>(off + half));
          const LocalResult lr = polish(local, y, 0.2, budget.iterations, 1e-13, 3);
          evals += lr.evaluations;
          if (lr.value < current) {
            std::copy(lr.x.begin(), lr.x.end(), x.begin() + static_cast<std::ptrdiff_t>(off));
            current = lr.value;
          }
        }
      }
      res = polish(joint, x, 0.05, budget.iterations, 1e-13, 3);
      res.evaluations += evals;
      if (current < res.value) {
        res.value = current;
        res.x = x;
      }
    } else {
      res = polish(joint, x0, 0.3, budget.iterations, 1e-13, 4);
    }

    report.evaluations += res.evaluations;
    report.restarts = r + 1;
    any_converged = any_converged || res.converged;
    if (res.value < report.value) {
      report.value = res.value;
      report.state = full_state(res.x);
      report.converged = res.converged;
    }
  }

  if (!any_converged) {
    std::ostringstream os;
    os << "no restart converged within " << budget.iterations << " iterations; best value " << report.value;
    throw Error(ErrorCode::BudgetExceeded, os.str(), report.value);
  }

  BoundValue out(report.value, Provenance::Numerical, "numeric-" + to_string(scenario));
  out.certificate = std::move(report);
  return out;
}

}  // namespace entrosteer
