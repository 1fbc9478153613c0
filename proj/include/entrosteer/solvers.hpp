#pragma once

// Noise-threshold bisection, parameter sweeps, local-unitary optimization
// of measurement settings and the random two-qubit survey.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "entrosteer/bounds.hpp"
#include "entrosteer/core.hpp"
#include "entrosteer/criteria.hpp"
#include "entrosteer/measurements.hpp"
#include "entrosteer/optimize.hpp"
#include "entrosteer/states.hpp"

namespace entrosteer {

//------------------------------------------------------------------------------
// Work distribution
//------------------------------------------------------------------------------

/// Runs fn(0..n-1) on up to `threads` workers. Results must be written by
/// index so the outcome does not depend on scheduling. The first exception
/// thrown by any task is rethrown after all workers stop.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex guard;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(guard);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

//------------------------------------------------------------------------------
// Criterion configuration
//------------------------------------------------------------------------------

enum class CriterionForm { Steering, GlobalObservable };
/// Catalog: analytic/conjectured formulas only. Numeric: always minimize.
/// Certified: catalog, falling back to the minimizer when the entry is
/// missing or carries a validity caveat.
enum class BoundPolicy { Catalog, Numeric, Certified };

struct CriterionConfig {
  std::string name;
  Scenario scenario;
  EntropyKind kind = EntropyKind::shannon();
  BoundValue bound;
  CriterionForm form = CriterionForm::Steering;
};

inline CriterionReport evaluate(const CriterionConfig& c, const DensityMatrix& rho) {
  CriterionReport r = c.form == CriterionForm::GlobalObservable
                          ? global_observable(rho, c.scenario, c.kind, c.bound)
                          : steering(assemblage(rho, c.scenario), c.kind, c.bound);
  if (!c.name.empty()) r.criterion = c.name;
  return r;
}

namespace detail {

inline bool same_set(const MeasurementSet& a, const MeasurementSet& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  for (std::size_t m = 0; m < a.size(); ++m)
    if (max_abs(a[m].vectors() - b[m].vectors()) > 1e-12) return false;
  return true;
}

}  // namespace detail

/// EUR bound for the trusted side of a scenario. Catalog entries need
/// mutually unbiased trusted bases; with two trusted parties `composite`
/// selects the separable or unrestricted composite bound.
inline BoundValue trusted_bound(const Scenario& s, const EntropyKind& kind, BoundPolicy policy,
                                BoundScenario composite = BoundScenario::CompositeSeparable,
                                MinimizerBudget budget = {}, RngSeed seed = {}) {
  if (policy == BoundPolicy::Certified) {
    try {
      BoundValue b = trusted_bound(s, kind, BoundPolicy::Catalog, composite, budget, seed);
      if (b.caveat.empty()) return b;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnsupportedCombination) throw;
    }
    return trusted_bound(s, kind, BoundPolicy::Numeric, composite, budget, seed);
  }
  const auto trusted = s.trusted();
  const int m = static_cast<int>(s.settings());
  if (trusted.size() == 1) {
    const MeasurementSet& set = s.parties[static_cast<std::size_t>(trusted[0])];
    if (policy == BoundPolicy::Numeric) return verify_bound_numeric(set, kind, BoundScenario::Single, budget, seed);
    if (!set.mutually_unbiased())
      throw Error(ErrorCode::UnsupportedCombination, "catalog bounds need mutually unbiased trusted bases");
    return bound_mub(set.dim(), m, kind);
  }
  if (trusted.size() == 2) {
    const MeasurementSet& b = s.parties[static_cast<std::size_t>(trusted[0])];
    const MeasurementSet& c = s.parties[static_cast<std::size_t>(trusted[1])];
    if (composite == BoundScenario::Single) composite = BoundScenario::CompositeSeparable;
    if (policy == BoundPolicy::Numeric) {
      if (!detail::same_set(b, c))
        throw Error(ErrorCode::UnsupportedCombination, "numeric composite bounds need identical trusted settings");
      return verify_bound_numeric(b, kind, composite, budget, seed);
    }
    if (!b.mutually_unbiased() || !c.mutually_unbiased())
      throw Error(ErrorCode::UnsupportedCombination, "catalog bounds need mutually unbiased trusted bases");
    return bound_composite(b.dim(), c.dim(), m, kind, composite);
  }
  throw Error(ErrorCode::UnsupportedCombination, "at most two trusted parties are supported");
}

//------------------------------------------------------------------------------
// Threshold bisection
//------------------------------------------------------------------------------

struct ThresholdResult {
  double critical = 0.0;
  double resolution = 0.0;
  std::string criterion;
  std::string family;
  double lo = 0.0;
  double hi = 0.0;
  int evaluations = 0;
};

using StateCriterion = std::function<CriterionReport(const DensityMatrix&)>;

/// Smallest family parameter at which the criterion is violated. An
/// 11-point pre-scan must show a single not-violated -> violated switch.
inline ThresholdResult threshold_bisect(const StateFamily& family, const StateCriterion& criterion,
                                        const std::string& name, double resolution = 1e-4) {
  if (!(resolution > 0.0)) throw Error(ErrorCode::OutOfRange, "resolution must be positive", resolution);
  int evaluations = 0;
  auto violated = [&](double x) {
    ++evaluations;
    return criterion(family.make(x)).violated;
  };

  constexpr int kScan = 11;
  std::vector<bool> scan(kScan);
  for (int k = 0; k < kScan; ++k) scan[static_cast<std::size_t>(k)] =
      violated(family.lo + (family.hi - family.lo) * k / (kScan - 1));
  if (!scan.back())
    throw Error(ErrorCode::NoViolation, name + " is not violated anywhere on " + family.name);
  int first = kScan - 1;
  while (first > 0 && scan[static_cast<std::size_t>(first - 1)]) --first;
  for (int k = 0; k < first; ++k)
    if (scan[static_cast<std::size_t>(k)])
      throw Error(ErrorCode::NonMonotone, name + " verdict is not monotone on " + family.name,
                  family.lo + (family.hi - family.lo) * k / (kScan - 1));

  ThresholdResult out;
  out.criterion = name;
  out.family = family.name;
  out.resolution = resolution;
  if (first == 0) {
    out.critical = out.lo = out.hi = family.lo;
    out.evaluations = evaluations;
    return out;
  }
  double lo = family.lo + (family.hi - family.lo) * (first - 1) / (kScan - 1);
  double hi = family.lo + (family.hi - family.lo) * first / (kScan - 1);
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (violated(mid)) hi = mid;
    else lo = mid;
  }
  out.critical = 0.5 * (lo + hi);
  out.lo = lo;
  out.hi = hi;
  out.evaluations = evaluations;
  return out;
}

inline ThresholdResult threshold_bisect(const StateFamily& family, const CriterionConfig& config,
                                        double resolution = 1e-4) {
  return threshold_bisect(
      family, [&config](const DensityMatrix& rho) { return evaluate(config, rho); }, config.name, resolution);
}

//------------------------------------------------------------------------------
// Parameter sweeps
//------------------------------------------------------------------------------

struct SweepPoint {
  double parameter = 0.0;
  std::optional<double> critical;
  std::string bound_provenance;
  double bound = 0.0;
  std::string note;
};

struct SweepCurve {
  std::string family;
  std::string criterion;
  std::vector<SweepPoint> points;
};

/// One threshold per grid value. `config_at` builds the criterion for a
/// grid value (entropy parameter and its bound); failures at one point are
/// recorded on that point and never abort the sweep.
inline SweepCurve sweep_parameter(const StateFamily& family,
                                  const std::function<CriterionConfig(double)>& config_at,
                                  const std::vector<double>& grid, double resolution = 1e-4, unsigned threads = 1) {
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw Error(ErrorCode::OutOfRange, "sweep grid must be strictly increasing");
  SweepCurve curve;
  curve.family = family.name;
  curve.points.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    SweepPoint& pt = curve.points[k];
    pt.parameter = grid[k];
    try {
      const CriterionConfig cfg = config_at(grid[k]);
      pt.bound = cfg.bound.value;
      pt.bound_provenance = to_string(cfg.bound.provenance);
      pt.critical = threshold_bisect(family, cfg, resolution).critical;
    } catch (const Error& e) {
      pt.note = to_string(e.code());
    }
  });
  if (!grid.empty()) {
    try {
      curve.criterion = config_at(grid.front()).name;
    } catch (const Error&) {
    }
  }
  return curve;
}

//------------------------------------------------------------------------------
// Measurement optimization
//------------------------------------------------------------------------------

namespace detail {

inline int unitary_param_count(int d) { return d == 2 ? 3 : d == 3 ? 8 : d * d; }

/// Identity at x = 0. d = 2: Rz Ry Rz Euler angles; d = 3: Bronzan
/// angles; otherwise exp(iH) with H built from d^2 real parameters.
inline ComplexMatrix unitary_from(const double* x, int d) {
  const cplx i{0.0, 1.0};
  if (d == 2) {
    auto rz = [&](double a) {
      ComplexMatrix m = ComplexMatrix::Zero(2, 2);
      m(0, 0) = std::exp(-i * (a / 2.0));
      m(1, 1) = std::exp(i * (a / 2.0));
      return m;
    };
    ComplexMatrix ry(2, 2);
    ry << std::cos(x[1] / 2.0), -std::sin(x[1] / 2.0), std::sin(x[1] / 2.0), std::cos(x[1] / 2.0);
    return rz(x[0]) * ry * rz(x[2]);
  }
  if (d == 3) {
    BronzanAngles a;
    std::copy(x, x + 8, a.begin());
    return bronzan_su3(a);
  }
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  int k = 0;
  for (int r = 0; r < d; ++r) h(r, r) = x[k++];
  for (int r = 0; r < d; ++r)
    for (int c = r + 1; c < d; ++c) {
      h(r, c) = cplx{x[k], x[k + 1]};
      h(c, r) = std::conj(h(r, c));
      k += 2;
    }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  ComplexVector phases(d);
  for (int r = 0; r < d; ++r) phases(r) = std::exp(i * es.eigenvalues()(r));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

struct OptimizationResult {
  std::vector<MeasurementSet> parties;
  CriterionReport report;
  int restarts = 0;
  long evaluations = 0;
};

/// Maximizes bound - lhs over per-party unitary rotations of the scenario's
/// measurement sets (the bound is unchanged by such rotations). Restart 0
/// starts from the given settings; later restarts from Haar-random
/// rotations seeded by derive_seed(seed, restart). Compass search refines
/// each start.
inline OptimizationResult optimize_measurements(const DensityMatrix& rho, const CriterionConfig& config,
                                                int restarts = 32, int iterations = 500, RngSeed seed = {}) {
  const std::size_t parties = config.scenario.parties.size();
  if (parties > 3) throw Error(ErrorCode::OutOfRange, "measurement optimization supports at most 3 parties");
  std::vector<int> offsets{0};
  for (const auto& p : config.scenario.parties) {
    if (p.dim() > 4) throw Error(ErrorCode::OutOfRange, "measurement optimization supports d <= 4", p.dim());
    offsets.push_back(offsets.back() + detail::unitary_param_count(p.dim()));
  }

  auto rotated = [&](const std::vector<double>& x, const std::vector<ComplexMatrix>& base) {
    CriterionConfig c = config;
    for (std::size_t p = 0; p < parties; ++p) {
      const int d = config.scenario.parties[p].dim();
      const ComplexMatrix u = detail::unitary_from(x.data() + offsets[p], d) * base[p];
      c.scenario.parties[p] = rotate(config.scenario.parties[p], u);
    }
    return c;
  };

  OptimizationResult best;
  best.parties = config.scenario.parties;
  best.report = evaluate(config, rho);
  long evaluations = 1;

  for (int r = 0; r < std::max(1, restarts); ++r) {
    std::vector<ComplexMatrix> base;
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    for (const auto& p : config.scenario.parties)
      base.push_back(r == 0 ? ComplexMatrix(ComplexMatrix::Identity(p.dim(), p.dim())) : random_unitary(p.dim(), rng));

    const Objective margin = [&](const std::vector<double>& x) {
      try {
        return evaluate(rotated(x, base), rho).margin();
      } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    const LocalResult lr = pattern_search(margin, std::vector<double>(static_cast<std::size_t>(offsets.back()), 0.0),
                                          0.3, iterations, 1e-6);
    evaluations += lr.evaluations;
    if (lr.value < best.report.margin()) {
      const CriterionConfig c = rotated(lr.x, base);
      best.parties = c.scenario.parties;
      best.report = evaluate(c, rho);
    }
  }
  best.restarts = std::max(1, restarts);
  best.evaluations = evaluations;
  return best;
}

//------------------------------------------------------------------------------
// Random two-qubit survey
//------------------------------------------------------------------------------

struct Proportion {
  long count = 0;
  long total = 0;
  double fraction() const { return total == 0 ? 0.0 : double(count) / double(total); }
  /// Wilson score interval at 95% confidence.
  std::pair<double, double> wilson(double z = 1.959963984540054) const {
    if (total == 0) return {0.0, 1.0};
    const double n = double(total), p = fraction(), z2 = z * z;
    const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
  }
};

/// Joint violation counts of the closed-form q = 2 criterion ("general"),
/// the global-observable criterion and the linear criterion. `pattern[k]`
/// counts samples whose violation set is the bitmask k
/// (bit 0 general, bit 1 global, bit 2 linear).
struct SurveyResult {
  long samples = 0;
  std::uint64_t seed = 0;
  std::array<long, 8> pattern{};
  std::vector<std::array<long, 8>> shards;

  Proportion with_mask(int mask) const { return {pattern[static_cast<std::size_t>(mask)], samples}; }
  Proportion none() const { return with_mask(0); }
  Proportion all_three() const { return with_mask(7); }
  Proportion only_general() const { return with_mask(1); }
  Proportion linear_without_general() const {
    return {pattern[4] + pattern[6], samples};
  }
};

inline constexpr int kSurveyShard = 1000;

/// Violation flags (general, global, linear) for one two-qubit state after
/// bringing it to Bloch normal form.
inline std::array<bool, 3> survey_flags(const DensityMatrix& rho) {
  static const Scenario pauli = bipartite(pauli_set(parse_axes("xyz")), pauli_set(parse_axes("xyz")));
  const BlochParams p = canonical_bloch(rho);
  bool general = false;
  try {
    general = closed_form_two_qubit_q2(p).violated;
  } catch (const Error&) {
  }
  const bool global = global_observable(two_qubit_bloch(p), pauli, EntropyKind::tsallis(2.0), bound_tsallis_mub(2, 3, 2.0))
                          .violated;
  const bool linear = linear_criterion(p.c).violated;
  return {general, global, linear};
}

/// Hilbert-Schmidt random two-qubit states in shards of 1000; shard s
/// draws from derive_seed(seed, s), so the table is independent of the
/// thread count.
inline SurveyResult survey_random(long n, RngSeed seed = {}, unsigned threads = 1) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "survey needs at least one sample", double(n));
  const std::size_t shards = static_cast<std::size_t>((n + kSurveyShard - 1) / kSurveyShard);
  std::vector<std::array<long, 8>> partial(shards);
  parallel_for(shards, threads, [&](std::size_t s) {
    Rng rng(derive_seed(seed, s));
    const long begin = static_cast<long>(s) * kSurveyShard;
    const long end = std::min(n, begin + kSurveyShard);
    auto& counts = partial[s];
    counts.fill(0);
    for (long k = begin; k < end; ++k) {
      const auto f = survey_flags(random_density_hs(4, rng));
      ++counts[static_cast<std::size_t>((f[0] ? 1 : 0) | (f[1] ? 2 : 0) | (f[2] ? 4 : 0))];
    }
  });
  SurveyResult out;
  out.samples = n;
  out.seed = seed.value;
  for (const auto& c : partial)
    for (std::size_t k = 0; k < 8; ++k) out.pattern[k] += c[k];
  out.shards = std::move(partial);
  return out;
}

}  // namespace entrosteer
