// Small tour of the library: characters, the local series, one p-adic value
// and the orbit table over F_2.

#include "rsverify/charring.hpp"
#include "rsverify/padic.hpp"
#include "rsverify/series.hpp"
#include "rsverify/sympgrp.hpp"

#include <iostream>

int main() {
  using namespace rsv;

  // B2[1,0] x B2[0,1] = B2[1,1] + B2[0,1]
  const auto prod = tensor_decompose(VirtualCharacter::irreducible(weight(0, 1, 0)),
                                     VirtualCharacter::irreducible(weight(0, 0, 1)));
  std::cout << "vector x spin = " << prod.to_string() << "\n";

  const CharSeries local = local_integral_series(2, 2);
  const CharSeries lprod = lfactor_product_series(2, 2);
  std::cout << "local series to U^2 V^2:\n" << local.to_string() << "\n";
  std::cout << "equals the L-factor product: " << (local == lprod ? "yes" : "no") << "\n";

  const SatakePoint pt{Rational(2), Rational(3), Rational(1, 2)};
  std::cout << "U^1 V^1 coefficient at " << pt.to_string() << ": " << specialize(local, pt).coeff(1, 1) << "\n";

  const TorusValuations v{1, 0, 1};
  std::cout << "f'_psi" << v.to_string() << " = " << fpsi_closed(v).to_string()
            << "; at p=3, (s,w)=(2,9): " << fpsi_closed_value(v, 3, 2, 9) << "\n";

  const OrbitTable table = orbit_decompose(2);
  std::cout << "H(F_2)-orbits of isotropic flags (" << table.total_flags << " flags):\n";
  for (const auto& o : table.orbits)
    std::cout << "  (" << o.case_index << ") " << o.representative.to_string() << "  size " << o.size << "\n";
  return 0;
}
