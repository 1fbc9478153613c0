// Numerical certification of uncertainty bounds: the minimizing state is
// returned with the value, so a bound can be checked independently.

#include <cmath>
#include <cstdio>

#include "entrosteer/entrosteer.hpp"

using namespace entrosteer;

namespace {

void show(const char* label, const BoundValue& b, double reference) {
  std::printf("%-28s numeric=%.8f reference=%.8f", label, b.value, reference);
  if (b.certificate)
    std::printf("  restarts=%d evaluations=%ld converged=%s", b.certificate->restarts, b.certificate->evaluations,
                b.certificate->converged ? "yes" : "no");
  std::printf("\n");
}

}  // namespace

int main() {
  const MeasurementSet pauli = pauli_set(parse_axes("xyz"));
  show("qubit, 3 MUBs, shannon", verify_bound_numeric(pauli, EntropyKind::shannon(), BoundScenario::Single),
       bound_shannon_mub(2, 3).value);
  show("two qubits, any state", verify_bound_numeric(pauli, EntropyKind::shannon(), BoundScenario::CompositeAny),
       3.0 * std::log(2.0));
  show("qutrit, 4 MUBs, q=1.5", verify_bound_numeric(mub_complete(3), EntropyKind::tsallis(1.5), BoundScenario::Single),
       bound_tsallis_mub(3, 4, 1.5).value);

  // Inside (2, 3) the closed-form qubit entry overshoots the true minimum.
  const BoundValue catalog = bound_tsallis_mub(2, 3, 2.5);
  show("qubit, 3 MUBs, q=2.5", verify_bound_numeric(pauli, EntropyKind::tsallis(2.5), BoundScenario::Single),
       catalog.value);
  std::printf("catalog caveat: %s\n", catalog.caveat.c_str());
}
