// Critical Werner visibility for the Shannon, Tsallis (q = 2) and Renyi
// (r = 0.5) criteria with the three Pauli measurements on both sides.

#include <cstdio>

#include "entrosteer/entrosteer.hpp"

using namespace entrosteer;

int main() {
  const MeasurementSet pauli = pauli_set(parse_axes("xyz"));
  const Scenario scenario = bipartite(pauli, pauli);

  for (const EntropyKind& kind : {EntropyKind::shannon(), EntropyKind::tsallis(2.0), EntropyKind::renyi(0.5)}) {
    CriterionConfig cfg{kind.name(), scenario, kind, trusted_bound(scenario, kind, BoundPolicy::Catalog)};
    const ThresholdResult t = threshold_bisect(werner_family(), cfg, 1e-6);
    std::printf("%-16s bound=%.6f  critical w=%.6f  (%d evaluations)\n", kind.name().c_str(), cfg.bound.value,
                t.critical, t.evaluations);
  }

  const CriterionReport r = steering_tsallis(assemblage(werner(0.7), scenario), 2.0, bound_tsallis_mub(2, 3, 2.0));
  std::printf("werner(0.7), q=2: lhs=%.6f bound=%.6f violated=%s\n", r.lhs, r.bound.value, r.violated ? "yes" : "no");
}
