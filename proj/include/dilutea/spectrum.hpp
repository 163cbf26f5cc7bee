#pragma once

// Closed-form excitation spectrum in regime 2: the E-product form of the
// excitation ratios r_j(w), masses m_j = -log r_j at the isotropic point,
// the theta_4 representation (L = 4), critical asymptotics and the E7
// reference values, plus the universal amplitude combinations for the
// tricritical Ising class.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "dilutea/errors.hpp"
#include "dilutea/model.hpp"
#include "dilutea/qproducts.hpp"

namespace dilutea {

/// r_j(w) = prod_a w E(-x^{6sa/g}/w) E(-x^{6s(g-a)/g}/w)
///                 / [E(-x^{6sa/g} w) E(-x^{6s(g-a)/g} w)], nome x^{12s}.
inline cplx excitation_ratio(const ExcitationSpec& spec, cplx w,
                             const NomeFrame& f, const ModelParams& mp,
                             const Truncation& tr = {}) {
  if (w == cplx(0.0)) throw std::domain_error("excitation_ratio: w = 0");
  const double x = f.x;
  const cplx q = std::pow(x, 12.0 * mp.s);
  cplx val = 1.0;
  for (int a : spec.a_set) {
    const double za = std::pow(x, 6.0 * mp.s * a / mp.g);
    const double zb = std::pow(x, 6.0 * mp.s * (mp.g - a) / mp.g);
    const cplx num = elliptic_E(-za / w, q, tr) * elliptic_E(-zb / w, q, tr);
    const cplx d1 = elliptic_E(-za * w, q, tr);
    const cplx d2 = elliptic_E(-zb * w, q, tr);
    if (std::abs(d1) < 1e-250)
      throw pole_error("excitation_ratio: E(-x^{6s a/g} w) vanishes at a=" +
                       std::to_string(a));
    if (std::abs(d2) < 1e-250)
      throw pole_error("excitation_ratio: E(-x^{6s(g-a)/g} w) vanishes at a=" +
                       std::to_string(a));
    val *= w * num / (d1 * d2);
  }
  return val;
}

/// Mass gap m_j = -log r_j at the isotropic point w = x^{3s}. The ratio is
/// real positive there; a large imaginary part flags an inconsistency rather
/// than being silently dropped.
inline double mass(const ExcitationSpec& spec, const NomeFrame& f,
                   const ModelParams& mp, const Truncation& tr = {}) {
  const cplx rj = excitation_ratio(spec, isotropic_w(f, mp), f, mp, tr);
  if (std::abs(std::arg(rj)) > 1e-9)
    throw consistency_error("mass: excitation ratio not real at isotropic point (arg=" +
                            std::to_string(std::arg(rj)) + ")");
  return -std::log(std::abs(rj));
}

/// L = 4 masses in terms of the original nome:
/// m_j = 2 sum_a log[ theta4(a pi/36 + pi/4, p^{5/9}) / theta4(a pi/36 - pi/4, p^{5/9}) ].
inline double mass_theta4_L4(const ExcitationSpec& spec, double p,
                             const Truncation& tr = {}) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("mass_theta4_L4: need 0 < p < 1");
  const double q = std::pow(p, 5.0 / 9.0);
  double m = 0.0;
  for (int a : spec.a_set) {
    const double u = a * std::numbers::pi / 36.0;
    m += std::log(theta4(u + std::numbers::pi / 4.0, q, tr) /
                  theta4(u - std::numbers::pi / 4.0, q, tr));
  }
  return 2.0 * m;
}

/// Leading critical behaviour. For L = 4 this is the full leading order
/// 8 p^{5/9} sum_a sin(a pi / 18); for the other L only the trigonometric
/// shape sum_a sin(a pi / g) is returned (ratios are meaningful, the overall
/// normalisation is not).
inline double asymptotic_mass(const ExcitationSpec& spec, double p,
                              const ModelParams& mp) {
  double s = 0.0;
  for (int a : spec.a_set) s += std::sin(a * std::numbers::pi / mp.g);
  if (mp.L == 4) return 8.0 * std::pow(p, 5.0 / 9.0) * s;
  return s;
}

struct E7Reference {
  int j;
  double value;
  Parity parity;
};

/// The seven E7 mass ratios (m_1 = 1) with their Z2 parity labels.
inline std::array<E7Reference, 7> e7_reference() {
  using std::cos;
  const double pi = std::numbers::pi;
  return {{
      {1, 1.0, Parity::odd},
      {2, 2.0 * cos(5.0 * pi / 18.0), Parity::even},
      {3, 2.0 * cos(pi / 9.0), Parity::odd},
      {4, 2.0 * cos(pi / 18.0), Parity::even},
      {5, 4.0 * cos(pi / 18.0) * cos(5.0 * pi / 18.0), Parity::even},
      {6, 4.0 * cos(pi / 9.0) * cos(2.0 * pi / 9.0), Parity::odd},
      {7, 4.0 * cos(pi / 18.0) * cos(pi / 9.0), Parity::even},
  }};
}

struct AmplitudeSet {
  double fs_xi1_sq;   // f_s xi_1^2
  double R_xi_plus;   // A^{1/2} xi_0^+
  double R_xi_minus;  // A^{1/2} xi_0^-
  double xi0_ratio;   // xi_0^+ / xi_0^-
};

/// Universal amplitude combinations for the tricritical Ising class.
inline AmplitudeSet amplitudes() {
  const double pi = std::numbers::pi;
  const double s3 = std::sqrt(3.0);
  AmplitudeSet a;
  a.fs_xi1_sq = 1.0 / (8.0 * s3 * std::cos(2.0 * pi / 9.0));
  a.R_xi_plus = std::sqrt(10.0 / (729.0 * s3 * std::cos(2.0 * pi / 9.0)));
  a.R_xi_minus = std::sqrt(5.0 / (8.0 * 81.0 * s3 * std::cos(5.0 * pi / 18.0) *
                                  std::sin(5.0 * pi / 9.0)));
  a.xi0_ratio = 2.0 * std::cos(5.0 * pi / 18.0);
  return a;
}

struct MassEntry {
  int j;
  std::string label;
  double m;
  double xi;
  Parity parity;
};

struct MassSpectrumResult {
  int L;
  double p;
  std::vector<MassEntry> entries;
};

// Below this p the theta_4 form is used for L = 4 (its nome p^{5/9} is small
// there); above it the E-product form (nome x^{12s} small). Both are accurate
// at the crossover itself.
inline constexpr double theta4_crossover_p = 0.5;

/// Mass spectrum m_j(p) with xi_j = 1/m_j for all excitations of the model.
inline MassSpectrumResult mass_spectrum(int L, double p,
                                        const Truncation& tr = {}) {
  const ModelParams mp = params_for(L);
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("mass_spectrum: need 0 < p < 1");
  const NomeFrame f = frame_from_p(p, mp);
  MassSpectrumResult out{L, p, {}};
  for (const auto& spec : excitation_table(L)) {
    const double m = (L == 4 && p < theta4_crossover_p)
                         ? mass_theta4_L4(spec, p, tr)
                         : mass(spec, f, mp, tr);
    out.entries.push_back({spec.j, spec.label, m, 1.0 / m, spec.parity});
  }
  return out;
}

}  // namespace dilutea
