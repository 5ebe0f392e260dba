// Relative entropy of entanglement and mutual information across the Werner family.
#include <cmath>
#include <cstdio>

#include "reent/ree.hpp"
#include "reent/states.hpp"

int main() {
  using namespace reent;
  std::printf("%6s %10s %10s %10s %10s\n", "lambda", "E_R(SEP)", "E_R(PPT)", "1-h2", "I(A:B)");
  for (double lambda = 0.5; lambda <= 1.0001; lambda += 0.1) {
    const DensityOperator w = werner_state(lambda);
    const double sep = relative_entropy_of_entanglement(w, ReferenceSetSpec::sep(w.dims())).value;
    const double ppt = relative_entropy_of_entanglement(w, ReferenceSetSpec::ppt(w.dims())).value;
    const double h = lambda >= 1 ? 0 : -lambda * std::log2(lambda) - (1 - lambda) * std::log2(1 - lambda);
    std::printf("%6.2f %10.6f %10.6f %10.6f %10.6f\n", lambda, sep, ppt, 1 - h, multipartite_mutual_information(w));
  }
}
