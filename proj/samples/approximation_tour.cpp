// Walks through the library on the R^4 witness plane with xi = sqrt 2:
// heights of a few rational planes, their proximity to the witness, the
// best approximations up to height 6, and a short Dirichlet sequence.

#include <iostream>

#include "dioph/dioph.hpp"

int main() {
  using namespace dioph;
  constexpr unsigned bits = 128;

  const RealSubspace a = witness_r4(ParamExpr::parse("sqrt2"), bits);

  const auto b = RationalSubspace::from_generators({{1, 0, 1, 0}, {0, 1, 0, 1}});
  std::cout << "B = " << b.key() << "  H(B)^2 = " << b.height_sq() << '\n';
  const auto prof = canonical_angles(a, real_view(b, bits));
  std::cout << "  psi_1 = " << prof.psi(1).str(12) << "  phi = " << prof.phi.str(12) << "\n\n";

  const auto en = enumerate_subspaces(4, 2, 6.0);
  const auto scan = scan_target(a, en, 1);
  std::cout << "records up to H = 6 (" << en.size() << " planes):\n";
  for (const auto& r : scan.records) std::cout << "  H = " << r.height.str(8) << "  psi_1 = " << r.psi.str(8) << "  " << r.key << '\n';

  std::cout << "\nDirichlet lines for the witness, q <= 2000:\n";
  const auto seq = dirichlet_sequence(a, 1, 2000);
  for (const auto& r : seq.rows)
    std::cout << "  q = " << r.q << "  H = " << r.height.str(8) << "  psi_1 H^(4/3) = " << r.bound_ratio.str(6) << '\n';
  return 0;
}
