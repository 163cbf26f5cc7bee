#pragma once

// Finite-N Bethe solver for the dilute A models in regime 2, with the L = 4
// string ansaetze, and the full three-term row transfer-matrix eigenvalue.
//
// Roots are parametrised in log space, w_j = exp(zeta_j): every fractional
// power of a root product is then single-valued. The residual branch left
// over from the fractional powers is a per-equation root-of-unity constant
// kappa, measured once from the small-x limit state (where the reduced
// polynomial equations are exact) and held fixed along the continuation in x.
//
// String roots sit at w = b x^m. Their internal Bethe factors contain exact
// zero/pole pairs whose resolution is far below double precision, so string
// members are held rigid (frozen levels, one common phase per orbit) and the
// product of the Bethe equations over an orbit — in which the internal
// factors cancel identically — replaces the individual string equations.
// The per-root residual function is still available for circle roots and
// reports those internal zeros as singularities.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "dilutea/errors.hpp"
#include "dilutea/model.hpp"
#include "dilutea/qproducts.hpp"
#include "dilutea/spectrum.hpp"

namespace dilutea::bethe {

// A maximal set of string levels sharing one phase. Levels are w-exponents:
// a table position m (units of pi/20) puts roots at w = b x^{+-2m}.
struct Orbit {
  std::vector<int> levels;
};

struct AnsatzSpec {
  int j = 0;  // 0 = ground state (no strings)
  std::vector<Orbit> orbits;
  bool has_hole = false;

  static AnsatzSpec ground() { return {}; }

  // L = 4 string data. The +-12 pair of excitation 3 carries its own
  // spectator phase and is a separate orbit from the lone level-20 root.
  static AnsatzSpec excitation(int j, const ModelParams& mp) {
    if (mp.L != 4)
      throw std::domain_error("AnsatzSpec::excitation: string data exists for L = 4 only");
    switch (j) {
      case 0: return ground();
      case 1: return {1, {Orbit{{-4, 4, 20}}}, true};
      case 2: return {2, {Orbit{{-14, 14}}}, false};
      case 3: return {3, {Orbit{{-12, 12}}, Orbit{{20}}}, false};
      case 4: return {4, {Orbit{{-6, 6, -18, 18}}}, false};
      case 5: return {5, {Orbit{{-12, 12, -16, 16}}}, false};
      case 6: return {6, {Orbit{{-8, 8, -16, 16, 20}}}, false};
      case 7: return {7, {Orbit{{-10, 10, -14, 14, -18, 18}}}, false};
      default:
        throw std::domain_error("AnsatzSpec::excitation: j must be 0..7");
    }
  }

  int string_count() const {
    int n = 0;
    for (const auto& o : orbits) n += int(o.levels.size());
    return n;
  }
};

// Which omega sector (ell) hosts the state and which branch of the reduced
// limit polynomial constant to take. Neither is fixed a priori; they are
// scanned for and recorded.
struct SectorChoice {
  int ell = 1;
  int branch = 0;
};

struct ContinuationOptions {
  double x_start = 1e-4;
  double dx_init = 0.01;
  double dx_max = 0.02;
  double dx_floor = 1e-4;
  double newton_tol = 1e-12;
  int newton_maxit = 60;
  int damp_halvings = 20;
  Truncation trunc{};
};

struct BetheState {
  ModelParams params{};
  AnsatzSpec ansatz{};
  SectorChoice sector{};
  int N = 0;
  double x = 0.0;
  std::vector<cplx> zeta_circle;  // log roots on the unit circle
  std::vector<cplx> beta;         // per-orbit log phases (strings)
  std::vector<cplx> kappa;        // per reduced-equation branch constants
  cplx kappa_base{1.0, 0.0};      // single-equation constant, used by Lambda
  bool converged = false;
  double max_residual = std::numeric_limits<double>::infinity();

  int circle_count() const { return int(zeta_circle.size()); }

  std::vector<cplx> all_zeta() const {
    std::vector<cplx> z = zeta_circle;
    const double lx = std::log(x);
    for (std::size_t o = 0; o < beta.size(); ++o)
      for (int lev : ansatz.orbits[o].levels) z.push_back(beta[o] + double(lev) * lx);
    return z;
  }

  std::vector<cplx> roots() const {
    std::vector<cplx> w;
    for (const cplx& z : all_zeta()) w.push_back(std::exp(z));
    return w;
  }

  std::vector<cplx> string_phases() const {
    std::vector<cplx> b;
    for (const cplx& bb : beta) b.push_back(std::exp(bb));
    return b;
  }
};

namespace detail {

inline cplx omega(const ModelParams& mp, int ell) {
  return std::polar(1.0, std::numbers::pi * ell / (mp.L + 1));
}

// Per-root log LHS and the pairwise log scattering ratio T of the Bethe
// equations, nome x^{2r}.
struct DeltaParts {
  std::vector<cplx> lhs;           // log of omega [w_j E(x^2s/w_j)/E(x^2s w_j)]^N
  std::vector<std::vector<cplx>> T;
  cplx sum_zeta;
};

inline DeltaParts delta_parts(const std::vector<cplx>& zeta, int N,
                              const ModelParams& mp, int ell, double x,
                              const Truncation& tr) {
  const int n = int(zeta.size());
  const cplx q = std::pow(x, 2.0 * mp.r);
  const double x2s = std::pow(x, 2.0 * mp.s);
  const double x4s = std::pow(x, 4.0 * mp.s);
  DeltaParts d;
  d.lhs.resize(n);
  d.T.assign(n, std::vector<cplx>(n, cplx(0.0)));
  d.sum_zeta = std::accumulate(zeta.begin(), zeta.end(), cplx(0.0));
  const cplx logw = std::log(omega(mp, ell));
  for (int j = 0; j < n; ++j) {
    d.lhs[j] = logw + double(N) * zeta[j] +
               double(N) * (log_elliptic_E(x2s * std::exp(-zeta[j]), q, tr) -
                            log_elliptic_E(x2s * std::exp(zeta[j]), q, tr));
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const cplx ep = std::exp(zeta[j] - zeta[k]);
      d.T[j][k] = log_elliptic_E(x2s * ep, q, tr) +
                  log_elliptic_E(x4s / ep, q, tr) -
                  log_elliptic_E(x2s / ep, q, tr) -
                  log_elliptic_E(x4s * ep, q, tr);
    }
  }
  return d;
}

// Reduced residual vector: one entry per circle root, then one per orbit
// (product of the orbit's equations with the internal factors omitted).
inline std::vector<cplx> reduced_residuals_raw(const BetheState& st,
                                               const std::vector<cplx>* kappas) {
  const auto zeta = st.all_zeta();
  const int M = st.circle_count();
  const int n = int(zeta.size());
  const double tsr = 2.0 * st.params.s / st.params.r;
  const auto d = delta_parts(zeta, st.N, st.params, st.sector.ell, st.x,
                             Truncation{});
  const cplx base = cplx(0.0, std::numbers::pi) + tsr * d.sum_zeta;
  std::vector<cplx> R;
  R.reserve(M + st.beta.size());
  for (int i = 0; i < M; ++i) {
    cplx delta = d.lhs[i] - base;
    for (int k = 0; k < n; ++k) delta -= d.T[i][k];
    cplx v = std::exp(delta);
    if (kappas) v /= (*kappas)[R.size()];
    R.push_back(v - 1.0);
  }
  int off = M;
  for (std::size_t o = 0; o < st.beta.size(); ++o) {
    const int len = int(st.ansatz.orbits[o].levels.size());
    cplx delta = -double(len) * base;
    for (int jj = off; jj < off + len; ++jj) {
      delta += d.lhs[jj];
      for (int k = 0; k < n; ++k) {
        if (k >= off && k < off + len) continue;  // internal factors cancel
        delta -= d.T[jj][k];
      }
    }
    cplx v = std::exp(delta);
    if (kappas) v /= (*kappas)[R.size()];
    R.push_back(v - 1.0);
    off += len;
  }
  return R;
}

inline double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

// Smallest-denominator rational snap of a measured unit phase. The branch
// constants are exact roots of unity; the limit-state measurement is off by
// O(x_start^2), far inside the snap tolerance.
inline cplx snap_root_of_unity(cplx kappa, int max_den = 512, double tol = 1e-5) {
  if (std::abs(std::abs(kappa) - 1.0) > 1e-4)
    throw ansatz_error("bethe: branch constant not on the unit circle");
  const double phi = std::arg(kappa) / (2.0 * std::numbers::pi);
  for (int qd = 1; qd <= max_den; ++qd) {
    const double pn = std::round(phi * qd);
    if (std::abs(phi - pn / qd) < tol)
      return std::polar(1.0, 2.0 * std::numbers::pi * pn / qd);
  }
  throw ansatz_error("bethe: branch constant is not near a root of unity");
}

inline void pack(const BetheState& st, Eigen::VectorXcd& u) {
  const int M = st.circle_count();
  u.resize(M + st.beta.size());
  for (int i = 0; i < M; ++i) u[i] = st.zeta_circle[i];
  for (std::size_t o = 0; o < st.beta.size(); ++o) u[M + o] = st.beta[o];
}

inline void unpack(const Eigen::VectorXcd& u, BetheState& st) {
  const int M = st.circle_count();
  for (int i = 0; i < M; ++i) st.zeta_circle[i] = u[i];
  for (std::size_t o = 0; o < st.beta.size(); ++o) st.beta[o] = u[M + o];
}

// Damped Newton on the reduced system at fixed x.
inline bool newton(BetheState& st, const ContinuationOptions& opt) {
  Eigen::VectorXcd u;
  pack(st, u);
  auto eval = [&st](const Eigen::VectorXcd& uu) {
    BetheState tmp = st;
    unpack(uu, tmp);
    return reduced_residuals_raw(tmp, &st.kappa);
  };
  std::vector<cplx> R = eval(u);
  const int n = int(u.size());
  for (int it = 0; it < opt.newton_maxit; ++it) {
    const double rn = max_abs(R);
    if (rn < opt.newton_tol) {
      unpack(u, st);
      st.max_residual = rn;
      return true;
    }
    Eigen::MatrixXcd J(n, n);
    const double h = 1e-8;
    for (int m = 0; m < n; ++m) {
      Eigen::VectorXcd up = u;
      up[m] += h;
      const auto Rp = eval(up);
      for (int i = 0; i < n; ++i) J(i, m) = (Rp[i] - R[i]) / h;
    }
    Eigen::VectorXcd rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = -R[i];
    const Eigen::VectorXcd du = J.partialPivLu().solve(rhs);
    if (!du.allFinite()) return false;
    double lam = 1.0;
    bool accepted = false;
    for (int halves = 0; halves <= opt.damp_halvings; ++halves) {
      const Eigen::VectorXcd un = u + lam * du;
      const auto Rn = eval(un);
      if (max_abs(Rn) < rn) {
        u = un;
        R = Rn;
        accepted = true;
        break;
      }
      lam *= 0.5;
    }
    if (!accepted) {
      unpack(u, st);
      st.max_residual = max_abs(R);
      return max_abs(R) < opt.newton_tol;
    }
  }
  unpack(u, st);
  st.max_residual = max_abs(R);
  return st.max_residual < opt.newton_tol;
}

}  // namespace detail

/// Initial state at the x -> 0 limit (built at a small x_start > 0): circle
/// roots are the roots of the reduced polynomial a^M = c, string phases are
/// -1, and the per-equation branch constants are measured and snapped. The
/// constraint equations of the ansatz are verified.
inline BetheState limit_roots(int N, const ModelParams& mp, const AnsatzSpec& an,
                              SectorChoice sector, double x_start = 1e-4) {
  if (N <= 0 || N % 2 != 0)
    throw std::domain_error("limit_roots: N must be even and positive");
  const int nstr = an.string_count();
  if (N - nstr < 1)
    throw std::domain_error("limit_roots: N too small for the ansatz strings");

  BetheState st;
  st.params = mp;
  st.ansatz = an;
  st.sector = sector;
  st.N = N;
  st.x = x_start;
  st.beta.assign(an.orbits.size(), cplx(0.0, std::numbers::pi));  // b = -1

  // Reduced limit polynomial a^M = c.
  int M_poly;
  cplx c;
  const cplx hole = -1.0;
  if (an.j == 0) {
    // c^{q-e} = (-1)^{q+e} omega^{-q} with gamma = gcd(s, 2(L+1)).
    const int gam = std::gcd(mp.s, 2 * (mp.L + 1));
    const int qq = 2 * (mp.L + 1) / gam;
    const int ee = mp.s / gam;
    const int ncand = qq - ee;
    if (sector.branch < 0 || sector.branch >= ncand)
      throw std::domain_error("limit_roots: ground branch out of range");
    const double th0 = std::numbers::pi * ((qq + ee) % 2) -
                       std::numbers::pi * qq * sector.ell / (mp.L + 1);
    c = std::polar(1.0, (th0 + 2.0 * std::numbers::pi * sector.branch) / ncand);
    M_poly = N;
  } else if (an.j == 1) {
    // Hole constraints force a_h^3 = omega^{-5}; a_h = -1 needs ell odd.
    if (sector.ell % 2 == 0)
      throw ansatz_error("limit_roots: excitation 1 needs an odd omega sector");
    c = 1.0;
    M_poly = N - 2;
  } else {
    if (sector.branch < 0 || sector.branch > 1)
      throw std::domain_error("limit_roots: branch must be 0 or 1");
    const double sgnA = sector.branch == 0 ? 1.0 : -1.0;
    const cplx A = sgnA * std::polar(1.0, -std::numbers::pi * sector.ell / 2.0);
    const double csign = (an.j == 3 || an.j == 6) ? 1.0 : -1.0;
    c = csign * A;
    M_poly = N - nstr;
  }

  const double thc = std::arg(c);
  std::vector<cplx> poly_roots;
  for (int k = 0; k < M_poly; ++k)
    poly_roots.push_back(std::polar(1.0, (thc + 2.0 * std::numbers::pi * k) / M_poly));

  if (an.has_hole) {
    auto it = std::min_element(poly_roots.begin(), poly_roots.end(),
                               [&](const cplx& a, const cplx& b) {
                                 return std::abs(a - hole) < std::abs(b - hole);
                               });
    if (std::abs(*it - hole) > 1e-9)
      throw ansatz_error("limit_roots: hole phase is not a reduced-polynomial root");
    poly_roots.erase(it);
  }
  for (const cplx& a : poly_roots) st.zeta_circle.push_back(std::log(a));

  // Ansatz constraint checks at the limit.
  if (an.j == 1) {
    cplx A_circ = 1.0;
    for (const cplx& z : st.zeta_circle) A_circ *= std::exp(z);
    if (std::abs(std::pow(hole, N) - 1.0) > 1e-9)
      throw ansatz_error("limit_roots: (a_h)^N != 1");
    if (std::abs(A_circ * hole * hole * hole + 1.0) > 1e-9)
      throw ansatz_error("limit_roots: A_{N-3} a_h^3 != -1");
  } else if (an.j >= 2) {
    const cplx b = std::exp(st.beta[0]);
    const int pw = (an.j == 4 || an.j == 7) ? 4 : (an.j == 5 || an.j == 6) ? 5 : 2;
    if (std::abs(std::pow(b, pw * N) - 1.0) > 1e-9)
      throw ansatz_error("limit_roots: b^{kN} != 1");
  }

  // Branch constants.
  const auto raw = detail::reduced_residuals_raw(st, nullptr);
  st.kappa.clear();
  for (const cplx& rv : raw) st.kappa.push_back(detail::snap_root_of_unity(rv + 1.0));
  st.kappa_base = st.kappa.empty() ? cplx(1.0) : st.kappa[0];
  for (std::size_t i = 0; i + st.beta.size() < st.kappa.size(); ++i)
    if (std::abs(st.kappa[i] - st.kappa_base) > 1e-12)
      throw ansatz_error("limit_roots: circle branch constants disagree");
  return st;
}

/// Residuals of the reduced (orbit-collapsed) system; zero at a solution.
inline std::vector<cplx> reduced_residuals(const BetheState& st) {
  return detail::reduced_residuals_raw(st, &st.kappa);
}

/// Per-root residuals log LHS_j - log RHS_j (as exp-1 of the branch-corrected
/// ratio). Any exactly vanishing Bethe factor — e.g. the internal zero of a
/// string pair — raises singularity_error naming the pair.
inline std::vector<cplx> bethe_residuals(const BetheState& st) {
  const auto zeta = st.all_zeta();
  const int n = int(zeta.size());
  const cplx q = std::pow(st.x, 2.0 * st.params.r);
  const double x2s = std::pow(st.x, 2.0 * st.params.s);
  const double x4s = std::pow(st.x, 4.0 * st.params.s);
  const Truncation tr{};
  // A factor arg sitting on a zero of E (z = q^k, phase ratio 1) only reaches
  // rounding scale numerically, so the cutoff is loose; healthy factors never
  // drop below O(1/N).
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const cplx ep = std::exp(zeta[j] - zeta[k]);
      for (const cplx z : {x2s * ep, x4s / ep, x2s / ep, x4s * ep})
        if (std::abs(elliptic_E(z, q, tr)) < 1e-10)
          throw singularity_error("bethe_residuals: vanishing factor between roots " +
                                  std::to_string(j) + " and " + std::to_string(k));
    }
  const double tsr = 2.0 * st.params.s / st.params.r;
  const auto d = detail::delta_parts(zeta, st.N, st.params, st.sector.ell, st.x, tr);
  const cplx base = cplx(0.0, std::numbers::pi) + tsr * d.sum_zeta;
  std::vector<cplx> R(n);
  for (int j = 0; j < n; ++j) {
    cplx delta = d.lhs[j] - base;
    for (int k = 0; k < n; ++k) delta -= d.T[j][k];
    R[j] = std::exp(delta) / st.kappa_base - 1.0;
  }
  return R;
}

/// Damped-Newton continuation from the x -> 0 limit state to x_target.
inline BetheState solve(int N, const ModelParams& mp, double x_target,
                        const AnsatzSpec& an, SectorChoice sector,
                        const ContinuationOptions& opt = {}) {
  if (!(x_target > 0.0 && x_target < 1.0))
    throw std::domain_error("solve: need 0 < x < 1");
  const double x0 = std::min(opt.x_start, x_target);
  BetheState st = limit_roots(N, mp, an, sector, x0);
  if (!detail::newton(st, opt))
    throw solver_error("bethe::solve: Newton failed at the limit point", 0.0);

  double dx = opt.dx_init;
  while (st.x < x_target - 1e-15) {
    const double xn = std::min(st.x + dx, x_target);
    BetheState trial = st;
    trial.x = xn;
    if (detail::newton(trial, opt)) {
      st = trial;
      dx = std::min(dx * 1.5, opt.dx_max);
    } else {
      dx *= 0.5;
      if (dx < opt.dx_floor)
        throw solver_error("bethe::solve: continuation stalled", st.x);
    }
  }

  // Structure checks: circle roots must stay near the unit circle and the
  // string phases near -1.
  for (const cplx& z : st.zeta_circle)
    if (std::abs(std::abs(std::exp(z)) - 1.0) > 0.5)
      throw solver_error("bethe::solve: circle root left the unit-circle band", st.x);
  for (const cplx& b : st.string_phases())
    if (std::abs(std::arg(-b)) > 0.1)
      throw solver_error("bethe::solve: string phase drifted from -1", st.x);

  // Canonical ordering for comparability between states.
  std::sort(st.zeta_circle.begin(), st.zeta_circle.end(),
            [](const cplx& a, const cplx& b) { return a.imag() < b.imag(); });
  st.converged = true;
  return st;
}

struct EigenvalueResult {
  cplx lambda;                    // may overflow for large N; log form is exact
  cplx log_lambda;
  std::array<cplx, 3> terms;
  std::array<cplx, 3> term_logs;
};

/// All three terms of the row transfer-matrix eigenvalue, nome x^{2r}. The
/// fractional prefactor powers are evaluated through the log roots with the
/// state's branch constant.
inline EigenvalueResult transfer_eigenvalue(const BetheState& st, cplx w,
                                            const Truncation& tr = {}) {
  const auto zeta = st.all_zeta();
  const ModelParams& mp = st.params;
  const double x = st.x;
  const cplx q = std::pow(x, 2.0 * mp.r);
  const double x2s = std::pow(x, 2.0 * mp.s);
  const double x4s = std::pow(x, 4.0 * mp.s);
  const double x6s = std::pow(x, 6.0 * mp.s);
  const double x8s = std::pow(x, 8.0 * mp.s);
  const double tsr = 2.0 * mp.s / mp.r;
  const cplx logw_om = std::log(detail::omega(mp, st.sector.ell));
  const cplx logkb = std::log(st.kappa_base);

  for (const cplx z : {cplx(x4s), cplx(x6s)})
    if (std::abs(elliptic_E(z, q, tr)) < 1e-250)
      throw pole_error("transfer_eigenvalue: normalisation E vanishes");
  const cplx denomN = log_elliptic_E(x4s, q, tr) + log_elliptic_E(x6s, q, tr);

  cplx sz = 0.0;
  for (const cplx& z : zeta) sz += z;

  cplx p1 = 0.0, p2 = 0.0, p3 = 0.0;
  for (const cplx& z : zeta) {
    const cplx ez = std::exp(z), iez = std::exp(-z);
    for (const cplx d : {x2s * ez / w, x4s * ez / w})
      if (std::abs(elliptic_E(d, q, tr)) < 1e-250)
        throw pole_error("transfer_eigenvalue: w sits on a root-factor zero");
    p1 += log_elliptic_E(x2s * w * iez, q, tr) - log_elliptic_E(x2s * ez / w, q, tr);
    p2 += log_elliptic_E(w * iez, q, tr) + log_elliptic_E(x6s * ez / w, q, tr) -
          log_elliptic_E(x2s * ez / w, q, tr) - log_elliptic_E(x4s * ez / w, q, tr);
    p3 += log_elliptic_E(x8s * ez / w, q, tr) - log_elliptic_E(x4s * ez / w, q, tr);
  }

  const double N = double(st.N);
  std::array<cplx, 3> tl;
  tl[0] = logw_om +
          N * (log_elliptic_E(x4s / w, q, tr) + log_elliptic_E(x6s / w, q, tr) - denomN) +
          (1.0 - tsr) * sz + p1 - logkb;
  tl[1] = N * (std::log(x2s / w) + log_elliptic_E(w, q, tr) +
               log_elliptic_E(x6s / w, q, tr) - denomN) +
          sz + p2;
  tl[2] = -logw_om +
          N * (std::log(cplx(x2s)) + log_elliptic_E(w, q, tr) +
               log_elliptic_E(x2s / w, q, tr) - denomN) +
          tsr * sz + p3 + logkb;

  EigenvalueResult res;
  res.term_logs = tl;
  const double m = std::max({tl[0].real(), tl[1].real(), tl[2].real()});
  const cplx ssum = std::exp(tl[0] - m) + std::exp(tl[1] - m) + std::exp(tl[2] - m);
  res.log_lambda = m + std::log(ssum);
  for (int i = 0; i < 3; ++i) res.terms[i] = std::exp(tl[i]);
  res.lambda = std::exp(res.log_lambda);
  return res;
}

/// log(Lambda_excited / Lambda_ground) at the same (N, x, w).
inline cplx measured_log_ratio(const BetheState& excited, const BetheState& ground,
                               cplx w, const Truncation& tr = {}) {
  if (excited.N != ground.N || excited.x != ground.x)
    throw std::invalid_argument("measured_log_ratio: states must share N and x");
  return transfer_eigenvalue(excited, w, tr).log_lambda -
         transfer_eigenvalue(ground, w, tr).log_lambda;
}

/// Closed-form log r_j at the same frame, for deviation measurements.
inline double closed_form_log_ratio(int j, const ModelParams& mp, double x, cplx w,
                                    const Truncation& tr = {}) {
  const NomeFrame f = frame_from_x(x, mp);
  const cplx r = excitation_ratio(excitation(mp.L, j), w, f, mp, tr);
  return std::log(std::abs(r));
}

/// Scan all (ell, branch) ground candidates at the given size, keep the one
/// maximising |Lambda| at the isotropic point. The sector splitting is far
/// below double precision at accessible sizes, so this records a convention
/// as much as a measurement.
inline SectorChoice scan_ground_sector(int N, const ModelParams& mp, double x,
                                       const ContinuationOptions& opt = {}) {
  const int gam = std::gcd(mp.s, 2 * (mp.L + 1));
  const int ncand = 2 * (mp.L + 1) / gam - mp.s / gam;
  const cplx w = isotropic_w(frame_from_x(x, mp), mp);
  SectorChoice best{};
  double best_val = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (int ell = 1; ell <= mp.L; ++ell)
    for (int br = 0; br < ncand; ++br) {
      try {
        const BetheState st = solve(N, mp, x, AnsatzSpec::ground(), {ell, br}, opt);
        const double v = transfer_eigenvalue(st, w).log_lambda.real();
        if (!found || v > best_val) {
          best = {ell, br};
          best_val = v;
          found = true;
        }
      } catch (const std::exception&) {
      }
    }
  if (!found) throw solver_error("scan_ground_sector: no candidate converged", 0.0);
  return best;
}

/// Empirical sector identification for an excitation: the candidate whose
/// eigenvalue ratio at the isotropic point is closest to the closed form, at
/// the smallest workable size.
inline SectorChoice scan_excited_sector(int j, const ModelParams& mp, double x,
                                        const ContinuationOptions& opt = {}) {
  const AnsatzSpec an = AnsatzSpec::excitation(j, mp);
  int N = std::max(4, an.string_count() + 1);
  if (N % 2) ++N;
  const SectorChoice gs = scan_ground_sector(N, mp, x, opt);
  const BetheState ground = solve(N, mp, x, AnsatzSpec::ground(), gs, opt);
  const cplx w = isotropic_w(frame_from_x(x, mp), mp);
  const double closed = closed_form_log_ratio(j, mp, x, w);

  std::vector<SectorChoice> cands;
  if (j == 1) {
    for (int ell = 1; ell <= mp.L; ell += 2) cands.push_back({ell, 0});
  } else {
    for (int ell = 1; ell <= mp.L; ++ell)
      for (int br = 0; br < 2; ++br) cands.push_back({ell, br});
  }
  SectorChoice best{};
  double best_dev = std::numeric_limits<double>::infinity();
  bool found = false;
  for (const auto& sc : cands) {
    try {
      const BetheState st = solve(N, mp, x, an, sc, opt);
      const double dev = std::abs(measured_log_ratio(st, ground, w) - closed);
      if (!found || dev < best_dev) {
        best = sc;
        best_dev = dev;
        found = true;
      }
    } catch (const std::exception&) {
    }
  }
  if (!found)
    throw solver_error("scan_excited_sector: no candidate converged for j=" +
                           std::to_string(j), 0.0);
  return best;
}

struct ConstraintCase {
  std::string name;
  double residual;
};

struct ConstraintReport {
  std::vector<ConstraintCase> cases;
  double worst() const {
    double w = 0.0;
    for (const auto& c : cases) w = std::max(w, c.residual);
    return w;
  }
};

/// Evaluates the displayed hole/phase constraint equations on a converged
/// state (report only). For j >= 4 the analogous equations are not displayed
/// in closed form; the phase deviation from -1 is reported instead.
inline ConstraintReport string_constraints_check(const BetheState& st,
                                                 const Truncation& tr = {}) {
  ConstraintReport rep;
  const double x = st.x;
  const int j = st.ansatz.j;
  const cplx q72 = std::pow(x, 72.0);
  const cplx q16 = std::pow(x, 16.0);  // x^{2r-4s}
  const auto phases = st.string_phases();
  auto bracket_eq = [&](const std::vector<int>& lo, const std::vector<int>& hi,
                        cplx b) {
    // [prod E(x^lo b)E(x^hi /b) / (E(x^lo /b)E(x^hi b))]^N = b^{2N}
    cplx lg = 0.0;
    for (int p : lo) {
      const double xp = std::pow(x, double(p));
      lg += log_elliptic_E(xp * b, q72, tr) - log_elliptic_E(xp / b, q72, tr);
    }
    for (int p : hi) {
      const double xp = std::pow(x, double(p));
      lg += log_elliptic_E(xp / b, q72, tr) - log_elliptic_E(xp * b, q72, tr);
    }
    return std::abs(std::exp(double(st.N) * lg - 2.0 * double(st.N) * std::log(b)) - 1.0);
  };
  switch (j) {
    case 1: {
      const cplx b = phases.at(0), ah = -1.0;
      rep.cases.push_back({"m1 hole-phase symmetry E(x^12 b/a_h) = E(x^12 a_h/b)",
                           std::abs(elliptic_E(std::pow(x, 12.0) * b / ah, q16, tr) -
                                    elliptic_E(std::pow(x, 12.0) * ah / b, q16, tr))});
      cplx lg = log_elliptic_E(std::pow(x, 12.0) * ah, q72, tr) +
                log_elliptic_E(std::pow(x, 48.0) / ah, q72, tr) -
                log_elliptic_E(std::pow(x, 12.0) / ah, q72, tr) -
                log_elliptic_E(std::pow(x, 48.0) * ah, q72, tr);
      rep.cases.push_back({"m1 hole equation [E-ratio]^N = a_h^N",
                           std::abs(std::exp(double(st.N) * lg -
                                             double(st.N) * std::log(ah)) - 1.0)});
      break;
    }
    case 2:
      rep.cases.push_back({"m2 phase equation [E-ratio]^N = b^{2N}",
                           bracket_eq({2, 14}, {38, 50}, phases.at(0))});
      break;
    case 3: {
      const cplx alpha = phases.at(0), b = phases.at(1);
      rep.cases.push_back({"m3 spectator link E(x^12 b/alpha) = E(x^12 alpha/b)",
                           std::abs(elliptic_E(std::pow(x, 12.0) * b / alpha, q16, tr) -
                                    elliptic_E(std::pow(x, 12.0) * alpha / b, q16, tr))});
      rep.cases.push_back({"m3 phase equation [E-ratio]^N = b^{2N}",
                           bracket_eq({8, 16}, {44, 52}, b)});
      break;
    }
    default:
      break;
  }
  for (std::size_t o = 0; o < phases.size(); ++o)
    rep.cases.push_back({"orbit " + std::to_string(o) + " phase deviation |b+1|",
                         std::abs(phases[o] + 1.0)});
  return rep;
}

}  // namespace dilutea::bethe
