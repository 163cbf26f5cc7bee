// Prints the E7 mass table of the dilute A4 model near criticality together
// with the exact trigonometric values, and the universal amplitudes.

#include <cstdio>

#include "dilutea/spectrum.hpp"

int main() {
  using namespace dilutea;
  const auto mp = params_for(4);
  const double p = 1e-6;
  const auto f = frame_from_p(p, mp);
  const double m1 = mass(excitation(4, 1), f, mp);

  std::printf("dilute A4, regime 2: mass ratios at p = %g vs E7 values\n\n", p);
  std::printf("  j   m_j/m_1 (lattice)   closed form     parity\n");
  for (const auto& ref : e7_reference()) {
    const double ratio = mass(excitation(4, ref.j), f, mp) / m1;
    std::printf("  %d   %.9f         %.9f     %s\n", ref.j, ratio, ref.value,
                to_string(ref.parity));
  }

  const auto a = amplitudes();
  std::printf("\ntricritical Ising universal amplitudes\n");
  std::printf("  f_s xi_1^2    = %.6f\n", a.fs_xi1_sq);
  std::printf("  R_xi^+        = %.6f\n", a.R_xi_plus);
  std::printf("  R_xi^-        = %.6f\n", a.R_xi_minus);
  std::printf("  xi_0^+/xi_0^- = %.6f\n", a.xi0_ratio);
  return 0;
}
