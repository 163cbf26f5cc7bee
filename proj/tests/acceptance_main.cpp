// Acceptance suite: every shipped guarantee is exercised at its stated
// tolerance, one pass/fail line per criterion. Exit code 0 iff all pass.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "dilutea/bethe.hpp"
#include "dilutea/model.hpp"
#include "dilutea/spectrum.hpp"
#include "dilutea/verifier.hpp"

using namespace dilutea;
using cplxd = std::complex<double>;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int idx, const char* title, bool pass, const std::string& detail,
            double secs) {
  std::printf("[%s] criterion %d: %s — %s (%.2f s)\n", pass ? "PASS" : "FAIL",
              idx, title, detail.c_str(), secs);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. E7 mass ratios from the closed form at p = 1e-6.
void criterion1() {
  Timer t;
  const auto mp = params_for(4);
  const auto f = frame_from_p(1e-6, mp);
  const double m1 = mass(excitation(4, 1), f, mp);
  double worst = 0.0;
  for (const auto& ref : e7_reference()) {
    const double ratio = mass(excitation(4, ref.j), f, mp) / m1;
    worst = std::max(worst, std::abs(ratio / ref.value - 1.0));
  }
  const double secs = t.seconds();
  report(1, "E7 mass ratios at p = 1e-6 (rel err < 1e-4, < 5 s)",
         worst < 1e-4 && secs < 5.0, "max rel err " + fmt(worst), secs);
}

// ---------------------------------------------------------------------------
// 2. E8/E6 trigonometric mass-ratio lists vs an independent brute-force sum.
void criterion2() {
  Timer t;
  double worst = 0.0;
  for (int L : {3, 6}) {
    const auto mp = params_for(L);
    const auto& tab = excitation_table(L);
    // independent oracle: Kahan-compensated long double sums, reversed order
    auto brute = [&](const ExcitationSpec& e) {
      long double sum = 0.0L, comp = 0.0L;
      for (auto it = e.a_set.rbegin(); it != e.a_set.rend(); ++it) {
        const long double term =
            sinl(static_cast<long double>(*it) * 3.14159265358979323846264338328L /
                 mp.g);
        const long double y = term - comp;
        const long double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
      }
      return sum;
    };
    const double ref1 = double(brute(tab[0]));
    const double lib1 = asymptotic_mass(tab[0], 1e-6, mp);
    for (const auto& e : tab) {
      const double r_lib = asymptotic_mass(e, 1e-6, mp) / lib1;
      const double r_ref = double(brute(e)) / ref1;
      worst = std::max(worst, std::abs(r_lib - r_ref));
    }
  }
  const double secs = t.seconds();
  report(2, "E8/E6 ratio lists vs brute-force trigonometry (1e-12, < 1 s)",
         worst < 1e-12 && secs < 1.0, "max abs dev " + fmt(worst), secs);
}

// ---------------------------------------------------------------------------
// 3. Universal amplitudes to all printed digits.
void criterion3() {
  Timer t;
  const auto a = amplitudes();
  const bool pass = std::abs(a.fs_xi1_sq - 0.09420) < 1e-5 &&
                    std::abs(a.R_xi_plus - 0.101678) < 1e-6 &&
                    std::abs(a.R_xi_minus - 0.083889) < 1e-6 &&
                    std::abs(a.xi0_ratio -
                             2.0 * std::cos(5.0 * std::numbers::pi / 18.0)) < 1e-15 &&
                    std::abs(a.xi0_ratio - 1.285575) < 1e-6;
  char detail[128];
  std::snprintf(detail, sizeof(detail), "%.6f / %.6f / %.6f / %.6f", a.fs_xi1_sq,
                a.R_xi_plus, a.R_xi_minus, a.xi0_ratio);
  report(3, "amplitudes reproduce the printed digits", pass, detail, t.seconds());
}

// ---------------------------------------------------------------------------
// 4. E-product vs theta4 representation.
void criterion4() {
  Timer t;
  const auto mp = params_for(4);
  double worst = 0.0;
  for (double p : {0.01, 0.1, 0.5}) {
    const auto f = frame_from_p(p, mp);
    for (const auto& spec : excitation_table(4))
      worst = std::max(worst, std::abs(mass(spec, f, mp) - mass_theta4_L4(spec, p)));
  }
  const double secs = t.seconds();
  report(4, "representation equivalence |mass - mass_theta4| < 1e-9 (< 5 s)",
         worst < 1e-9 && secs < 5.0, "max abs dev " + fmt(worst), secs);
}

// ---------------------------------------------------------------------------
// 5. Generic closed form equals each per-mass E-factor expression.
void criterion5() {
  Timer t;
  const auto mp = params_for(4);
  const double x = 0.1;
  const auto f = frame_from_x(x, mp);
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const cplxd w = std::polar(0.5 * std::pow(4.0, u(rng)),
                               2.0 * std::numbers::pi * u(rng));
    for (int j = 1; j <= 7; ++j) {
      const cplxd lhs = excitation_ratio(excitation(4, j), w, f, mp);
      const cplxd rhs = verify::eig_eval(j, w, x);
      worst = std::max(worst, std::abs(lhs / rhs - 1.0));
    }
  }
  const double secs = t.seconds();
  report(5, "closed-form equivalence at 20 random w (rel 1e-10, < 5 s)",
         worst < 1e-10 && secs < 5.0, "max rel dev " + fmt(worst), secs);
}

// ---------------------------------------------------------------------------
// 6. Critical exponent 5/9 and amplitude 8 sin(pi/3).
void criterion6() {
  Timer t;
  const auto mp = params_for(4);
  const auto& e1 = excitation(4, 1);
  std::vector<double> lx, ly;
  for (int i = 0; i < 13; ++i) {
    const double p = 1e-8 * std::pow(10.0, 3.0 * i / 12.0);  // [1e-8, 1e-5]
    lx.push_back(std::log(p));
    ly.push_back(std::log(mass_spectrum(4, p).entries.front().m));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = int(lx.size());
  for (int i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double p0 = 1e-6;
  const double prefactor_ratio =
      mass_spectrum(4, p0).entries.front().m / asymptotic_mass(e1, p0, mp);
  const bool pass = std::abs(slope - 5.0 / 9.0) < 0.005 &&
                    std::abs(prefactor_ratio - 1.0) < 0.01;
  char detail[128];
  std::snprintf(detail, sizeof(detail), "slope %.6f (target %.6f), prefactor ratio %.6f",
                slope, 5.0 / 9.0, prefactor_ratio);
  report(6, "critical exponent 5/9 and leading amplitude", pass, detail, t.seconds());
}

// ---------------------------------------------------------------------------
// 7. Recurrence-solution and assembly identities for every mass.
void criterion7() {
  Timer t;
  const std::array<double, 3> xs = {0.05, 0.1, 0.2};
  double worst = 0.0;
  bool pass = true;
  for (int j = 1; j <= 7; ++j) {
    const auto rec = verify::check_recurrence_solution(j, xs, 10, 0, {}, 1e-9);
    const auto asm_rep = verify::check_assembly(j, xs, 10, 0, {}, 1e-9);
    for (const auto& c : rec.cases) {
      worst = std::max(worst, c.max_dev);
      pass = pass && c.pass;
    }
    for (const auto& c : asm_rep.cases) {
      worst = std::max(worst, c.max_dev);
      pass = pass && c.pass;
    }
  }
  const double secs = t.seconds();
  report(7, "recurrence/assembly verification j = 1..7 (1e-9, < 60 s)",
         pass && secs < 60.0, "max dev " + fmt(worst), secs);
}

// ---------------------------------------------------------------------------
// 8. Finite-size Bethe property at x = 0.1.
void criterion8() {
  Timer t;
  namespace bt = dilutea::bethe;
  const auto mp = params_for(4);
  const double x = 0.1;
  const cplxd w = isotropic_w(frame_from_x(x, mp), mp);
  bool pass = true;
  std::string detail;
  try {
    const auto gsec = bt::scan_ground_sector(4, mp, x);
    for (int j : {1, 2}) {
      const auto esec = bt::scan_excited_sector(j, mp, x);
      std::vector<double> devs;
      double worst_res = 0.0, worst_phase = 0.0;
      for (int N : {4, 6, 8}) {
        const auto ground = bt::solve(N, mp, x, bt::AnsatzSpec::ground(), gsec);
        const auto st = bt::solve(N, mp, x, bt::AnsatzSpec::excitation(j, mp), esec);
        worst_res = std::max({worst_res, ground.max_residual, st.max_residual});
        for (const auto& b : st.string_phases())
          worst_phase = std::max(worst_phase, std::abs(b + 1.0));
        devs.push_back(std::abs(bt::measured_log_ratio(st, ground, w) -
                                bt::closed_form_log_ratio(j, mp, x, w)));
      }
      int exceptions = 0;
      for (int i = 1; i < 3; ++i)
        if (devs[i] >= devs[i - 1]) ++exceptions;
      // Deviations already at the double-precision floor at N = 4 count as
      // converged: there is no finite-size error left to decrease.
      const bool at_floor =
          devs[0] < 1e-12 && devs[1] < 1e-12 && devs[2] < 1e-12;
      const bool trend_ok = exceptions <= 1 || at_floor;
      pass = pass && trend_ok && worst_res < 1e-10 && worst_phase < 1e-6;
      detail += "j=" + std::to_string(j) + " devs(4,6,8)=" + fmt(devs[0]) + "," +
                fmt(devs[1]) + "," + fmt(devs[2]) +
                (at_floor ? " [floor]" : (exceptions == 1 ? " [1 exception]" : "")) +
                " res=" + fmt(worst_res) + " |b+1|=" + fmt(worst_phase) + "; ";
    }
  } catch (const std::exception& e) {
    pass = false;
    detail += std::string("exception: ") + e.what();
  }
  const double secs = t.seconds();
  report(8, "finite-size Bethe deviations at x = 0.1 (N = 4,6,8, < 600 s)",
         pass && secs < 600.0, detail, secs);
}

// ---------------------------------------------------------------------------
// 9. Kernel property suite.
void criterion9() {
  Timer t;
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  const auto poch = verify::check_poch_identities(100, 0);
  worst = std::max(worst, poch.worst());
  const auto mp = params_for(4);
  const auto f = frame_from_p(0.3, mp);
  for (int i = 0; i < 100; ++i) {
    const cplxd z = std::polar(0.1 * std::pow(20.0, u(rng)),
                               2.0 * std::numbers::pi * u(rng));
    const double q = 0.01 + 0.89 * u(rng);
    worst = std::max(worst,
                     std::abs(elliptic_E(q / z, q) / elliptic_E(z, q) - 1.0));
    worst = std::max(worst, std::abs(elliptic_E(q * z, q) + elliptic_E(z, q) / z));
    const cplxd ww = std::polar(0.5 * std::pow(4.0, u(rng)),
                                2.0 * std::numbers::pi * u(rng));
    const int j = 1 + int(u(rng) * 6.999);
    const auto& spec = excitation(4, j);
    worst = std::max(worst, std::abs(excitation_ratio(spec, ww, f, mp) *
                                         excitation_ratio(spec, 1.0 / ww, f, mp) -
                                     1.0));
  }
  const double secs = t.seconds();
  report(9, "kernel properties: identities, E symmetries, r(w) r(1/w) = 1 (1e-10, < 10 s)",
         worst < 1e-10 && secs < 10.0, "max dev " + fmt(worst), secs);
}

}  // namespace

int main() {
  Timer total;
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::printf("%s: %d/9 criteria passed (%.1f s total)\n",
              g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              9 - g_failures, total.seconds());
  return g_failures == 0 ? 0 : 1;
}
