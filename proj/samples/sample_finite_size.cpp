// Solves the Bethe equations for the first two excitations at several lattice
// widths and compares the measured eigenvalue ratios with the closed form.

#include <cstdio>

#include "dilutea/bethe.hpp"

int main() {
  using namespace dilutea;
  namespace bt = dilutea::bethe;
  const auto mp = params_for(4);
  const double x = 0.1;
  const cplx w = isotropic_w(frame_from_x(x, mp), mp);

  const auto gsec = bt::scan_ground_sector(4, mp, x);
  std::printf("ground sector: ell=%d branch=%d\n", gsec.ell, gsec.branch);

  for (int j : {1, 2}) {
    const auto esec = bt::scan_excited_sector(j, mp, x);
    std::printf("excitation %d (sector ell=%d branch=%d):\n", j, esec.ell,
                esec.branch);
    const double closed = bt::closed_form_log_ratio(j, mp, x, w);
    for (int N : {4, 6, 8}) {
      const auto ground = bt::solve(N, mp, x, bt::AnsatzSpec::ground(), gsec);
      const auto st = bt::solve(N, mp, x, bt::AnsatzSpec::excitation(j, mp), esec);
      const cplx meas = bt::measured_log_ratio(st, ground, w);
      std::printf("  N=%d  ln(Lambda_%d/Lambda_0) = %.14f  closed form %.14f  "
                  "|dev| = %.2e\n",
                  N, j, meas.real(), closed, std::abs(meas - closed));
    }
  }
  return 0;
}
