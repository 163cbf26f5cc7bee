#pragma once

// Model parameter registry for the dilute A_L lattice models in regime 2:
// the derived integers (s, r, Coxeter number g), the nome frame conversions,
// and the excitation data tables. Everything here is immutable static data;
// all other modules treat this as the single source of truth.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace dilutea {

enum class Parity { unspecified, odd, even };

inline const char* to_string(Parity p) {
  switch (p) {
    case Parity::odd: return "odd";
    case Parity::even: return "even";
    default: return "unspecified";
  }
}

struct ModelParams {
  int L;                  // number of heights, L in {3, 4, 6}
  int s;                  // L + 2
  int r;                  // 4 (L + 1)
  int g;                  // Coxeter number: 30 (E8), 18 (E7), 12 (E6)
  double lambda;          // crossing parameter pi s / r
  double central_charge;  // 1 - 6 / (L (L+1))
};

inline ModelParams params_for(int L) {
  int g;
  switch (L) {
    case 3: g = 30; break;
    case 4: g = 18; break;
    case 6: g = 12; break;
    default:
      throw std::domain_error("params_for: L must be one of {3, 4, 6}");
  }
  ModelParams mp;
  mp.L = L;
  mp.s = L + 2;
  mp.r = 4 * (L + 1);
  mp.g = g;
  mp.lambda = std::numbers::pi * mp.s / mp.r;
  mp.central_charge = 1.0 - 6.0 / (double(L) * (L + 1));
  return mp;
}

// Coupled nome variables: p = e^{-eps} drives the model off criticality,
// x = e^{-pi^2 / (r eps)} is its conjugate-modulus partner.
struct NomeFrame {
  double eps;
  double p;
  double x;
};

inline NomeFrame frame_from_eps(double eps, const ModelParams& mp) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw std::domain_error("frame_from_eps: need eps > 0");
  NomeFrame f;
  f.eps = eps;
  f.p = std::exp(-eps);
  f.x = std::exp(-std::numbers::pi * std::numbers::pi / (mp.r * eps));
  return f;
}

inline NomeFrame frame_from_p(double p, const ModelParams& mp) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("frame_from_p: need 0 < p < 1");
  return frame_from_eps(-std::log(p), mp);
}

inline NomeFrame frame_from_x(double x, const ModelParams& mp) {
  if (!(x > 0.0 && x < 1.0))
    throw std::domain_error("frame_from_x: need 0 < x < 1");
  return frame_from_eps(-std::numbers::pi * std::numbers::pi / (mp.r * std::log(x)), mp);
}

// w = e^{-2 pi u / eps} for spectral parameter u, 0 < u < 3 lambda.
inline double spectral_w(double u, const NomeFrame& f) {
  return std::exp(-2.0 * std::numbers::pi * u / f.eps);
}

// At the isotropic point u = 3 lambda / 2 the spectral variable collapses to
// w = x^{3s}; masses are read off there.
inline double isotropic_w(const NomeFrame& f, const ModelParams& mp) {
  return std::pow(f.x, 3.0 * mp.s);
}

// One excitation: its index, the integer set {a} entering the closed-form
// spectrum, and (L = 4 only) the string positions in units of pi/20 together
// with the leading eigenvalue band w^band.
struct ExcitationSpec {
  int j;
  std::string label;  // distinguishes the degenerate L=6 pairs (1,1b), (3,3b)
  std::vector<int> a_set;
  Parity parity = Parity::unspecified;
  std::vector<int> string_positions;  // empty unless L = 4
  int band = 0;
};

inline const std::vector<ExcitationSpec>& excitation_table(int L) {
  static const std::vector<ExcitationSpec> table3 = {
      {1, "1", {1, 11}, Parity::unspecified, {}, 2},
      {2, "2", {7, 13}, Parity::unspecified, {}, 2},
      {3, "3", {2, 10, 12}, Parity::unspecified, {}, 3},
      {4, "4", {6, 10, 14}, Parity::unspecified, {}, 3},
      {5, "5", {3, 9, 11, 13}, Parity::unspecified, {}, 4},
      {6, "6", {6, 8, 12, 14}, Parity::unspecified, {}, 4},
      {7, "7", {4, 8, 10, 12, 14}, Parity::unspecified, {}, 5},
      {8, "8", {5, 7, 9, 11, 13, 15}, Parity::unspecified, {}, 6},
  };
  static const std::vector<ExcitationSpec> table4 = {
      {1, "1", {6}, Parity::odd, {2, -2, 10}, 1},
      {2, "2", {1, 7}, Parity::even, {7, -7}, 2},
      {3, "3", {4, 8}, Parity::odd, {6, -6, 10}, 2},
      {4, "4", {5, 7}, Parity::even, {3, -3, 9, -9}, 2},
      {5, "5", {2, 6, 8}, Parity::even, {6, -6, 8, -8}, 3},
      {6, "6", {4, 6, 8}, Parity::odd, {4, -4, 8, -8, 10}, 3},
      {7, "7", {3, 5, 7, 9}, Parity::even, {5, -5, 7, -7, 9, -9}, 4},
  };
  // The degenerate labels share one a_set but are kept as distinct entries.
  static const std::vector<ExcitationSpec> table6 = {
      {1, "1", {4}, Parity::unspecified, {}, 1},
      {2, "1b", {4}, Parity::unspecified, {}, 1},
      {3, "2", {1, 5}, Parity::unspecified, {}, 2},
      {4, "3", {3, 5}, Parity::unspecified, {}, 2},
      {5, "3b", {3, 5}, Parity::unspecified, {}, 2},
      {6, "4", {2, 4, 6}, Parity::unspecified, {}, 3},
  };
  switch (L) {
    case 3: return table3;
    case 4: return table4;
    case 6: return table6;
    default:
      throw std::domain_error("excitation_table: L must be one of {3, 4, 6}");
  }
}

inline const ExcitationSpec& excitation(int L, int j) {
  const auto& tab = excitation_table(L);
  for (const auto& e : tab)
    if (e.j == j) return e;
  throw std::domain_error("excitation: no excitation " + std::to_string(j) +
                          " for L=" + std::to_string(L));
}

// FNV-1a over all table integers; guards the embedded data against drift.
inline std::uint64_t excitation_table_checksum() {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::int64_t v) {
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  for (int L : {3, 4, 6}) {
    mix(L);
    const auto& tab = excitation_table(L);
    mix(static_cast<std::int64_t>(tab.size()));
    for (const auto& e : tab) {
      mix(e.j);
      mix(e.band);
      mix(static_cast<int>(e.parity));
      mix(static_cast<std::int64_t>(e.a_set.size()));
      for (int a : e.a_set) mix(a);
      mix(static_cast<std::int64_t>(e.string_positions.size()));
      for (int m : e.string_positions) mix(m);
    }
  }
  return h;
}

}  // namespace dilutea
