// How much of the entanglement of a state survives when only restricted
// measurements may be used to tell it apart from separable states.
#include <cstdio>

#include "reent/restricted.hpp"
#include "reent/states.hpp"

int main() {
  using namespace reent;
  const DensityOperator rho = werner_state(0.9);
  const ReferenceSetSpec p = ReferenceSetSpec::sep(rho.dims());
  std::printf("E_R = %.6f\n", relative_entropy_of_entanglement(rho, p).value);
  for (auto [name, cls] : {std::pair{"LO", MeasurementClass::Lo}, std::pair{"LOCC1", MeasurementClass::Locc1},
                           std::pair{"SEP", MeasurementClass::Sep}}) {
    const CertifiedValue v = restricted_ree(rho, p, MeasurementClassSpec{cls, {4, 4}});
    std::printf("%-6s estimate %.6f  certified >= %.6f  (%zu outcomes)\n", name, v.estimate, v.certified_lower,
                v.witness_measurement.size());
  }
}
