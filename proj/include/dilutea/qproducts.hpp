#pragma once

// Numerical kernel for q-Pochhammer products, the conjugate-modulus elliptic
// function E(z,q) and the Jacobi theta function theta_4, all with controlled
// truncation error.

#include <cmath>
#include <complex>
#include <cstddef>

#include "dilutea/errors.hpp"

namespace dilutea {

using cplx = std::complex<double>;

// Truncation control shared by every product in the kernel. A product stops
// once the current factor is within `tol` of 1 *and* the geometric tail bound
// |q|^n max(|z|,1)/(1-|q|) has dropped below `tol`. Products near |q| -> 1
// converge slowly, so nomes above `nome_cap` are rejected unless the caller
// opts in with `allow_large_nome`.
struct Truncation {
  double tol = 1e-13;
  std::size_t max_terms = 1'000'000;
  bool allow_large_nome = false;

  static constexpr double nome_cap = 0.98;
};

// Set when a product was cut off by `max_terms` before reaching `tol`; the
// returned value is then only as accurate as the last tail bound.
struct EvalStatus {
  bool hit_term_cap = false;
};

namespace detail {

inline bool finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_nome(cplx q, const Truncation& tr, const char* who) {
  if (!finite(q)) throw std::domain_error(std::string(who) + ": non-finite nome");
  const double aq = std::abs(q);
  if (aq >= 1.0) throw std::domain_error(std::string(who) + ": nome |q| >= 1");
  if (aq > Truncation::nome_cap && !tr.allow_large_nome)
    throw std::domain_error(std::string(who) +
                            ": nome above 0.98 cap (set allow_large_nome to override)");
}

}  // namespace detail

/// (z; q)_inf = prod_{n>=0} (1 - q^n z)
inline cplx qpoch1(cplx z, cplx q, const Truncation& tr = {},
                   EvalStatus* status = nullptr) {
  if (!detail::finite(z)) throw std::domain_error("qpoch1: non-finite argument");
  detail::require_nome(q, tr, "qpoch1");
  const double invgap = 1.0 / (1.0 - std::abs(q));
  cplx prod = 1.0;
  cplx w = z;  // q^n z
  for (std::size_t n = 0;; ++n) {
    prod *= (1.0 - w);
    w *= q;
    const double aw = std::abs(w);
    if (aw < tr.tol && aw * invgap < tr.tol) break;
    if (n + 1 >= tr.max_terms) {
      if (status) status->hit_term_cap = true;
      break;
    }
  }
  return prod;
}

/// (z; p, q)_inf = prod_{m,n>=0} (1 - p^m q^n z)
inline cplx qpoch2(cplx z, cplx p, cplx q, const Truncation& tr = {},
                   EvalStatus* status = nullptr) {
  if (!detail::finite(z)) throw std::domain_error("qpoch2: non-finite argument");
  detail::require_nome(p, tr, "qpoch2");
  detail::require_nome(q, tr, "qpoch2");
  const double invgap2 = 1.0 / ((1.0 - std::abs(p)) * (1.0 - std::abs(q)));
  cplx prod = 1.0;
  cplx zp = z;  // p^m z
  for (std::size_t m = 0;; ++m) {
    prod *= qpoch1(zp, q, tr, status);
    zp *= p;
    const double az = std::abs(zp);
    if (az < tr.tol && az * invgap2 < tr.tol) break;
    if (m + 1 >= tr.max_terms) {
      if (status) status->hit_term_cap = true;
      break;
    }
  }
  return prod;
}

/// E(z,q) = prod_{n>=1} (1 - q^{n-1} z)(1 - q^n / z)(1 - q^n) = (z, q/z, q; q)_inf
inline cplx elliptic_E(cplx z, cplx q, const Truncation& tr = {},
                       EvalStatus* status = nullptr) {
  if (z == cplx(0.0)) throw std::domain_error("elliptic_E: z = 0 (q/z pole)");
  return qpoch1(z, q, tr, status) * qpoch1(q / z, q, tr, status) *
         qpoch1(q, q, tr, status);
}

/// Principal log of E(z,q); the value itself stays well inside double range
/// for every argument used here, so a plain log of the product suffices.
inline cplx log_elliptic_E(cplx z, cplx q, const Truncation& tr = {}) {
  return std::log(elliptic_E(z, q, tr));
}

/// theta_4(u,q) = prod_{n>=1} (1 - 2 q^{2n-1} cos 2u + q^{4n-2})(1 - q^{2n})
inline double theta4(double u, double q, const Truncation& tr = {},
                     EvalStatus* status = nullptr) {
  if (!std::isfinite(u) || !std::isfinite(q))
    throw std::domain_error("theta4: non-finite input");
  if (q < 0.0 || q >= 1.0) throw std::domain_error("theta4: need 0 <= q < 1");
  if (q > Truncation::nome_cap && !tr.allow_large_nome)
    throw std::domain_error("theta4: nome above 0.98 cap");
  const double c = std::cos(2.0 * u);
  const double invgap = 1.0 / (1.0 - q);
  double prod = 1.0;
  double t = q;    // q^{2n-1}
  double e = q * q;  // q^{2n}
  for (std::size_t n = 0;; ++n) {
    prod *= (1.0 - 2.0 * t * c + t * t) * (1.0 - e);
    t *= q * q;
    e *= q * q;
    if (t * (2.0 * std::abs(c) + t) < tr.tol && t * invgap < tr.tol) break;
    if (n + 1 >= tr.max_terms) {
      if (status) status->hit_term_cap = true;
      break;
    }
  }
  return prod;
}

}  // namespace dilutea
