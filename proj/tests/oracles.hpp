// Independent reference computations used by the unit tests and the
// acceptance gate.  Everything here deliberately avoids the library's own
// algorithms: linear systems are solved by hand-rolled Gaussian elimination
// and moment right-hand sides are built by raw enumeration of ordered
// compositions with multinomial weights (no generating-function shortcuts).
#pragma once

#include <complex>
#include <cstdlib>
#include <functional>
#include <vector>

#include "urnlab/urn.hpp"

namespace oracle {

using cplx = std::complex<double>;

// Gaussian elimination with partial pivoting; A is row-major d×d.
inline std::vector<cplx> solve_dense(std::vector<std::vector<cplx>> A,
                                     std::vector<cplx> b) {
  const std::size_t d = b.size();
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < d; ++r)
      if (std::abs(A[r][k]) > std::abs(A[piv][k])) piv = r;
    std::swap(A[k], A[piv]);
    std::swap(b[k], b[piv]);
    if (std::abs(A[k][k]) == 0.0) std::abort();
    for (std::size_t r = k + 1; r < d; ++r) {
      const cplx f = A[r][k] / A[k][k];
      for (std::size_t cc = k; cc < d; ++cc) A[r][cc] -= f * A[k][cc];
      b[r] -= f * b[k];
    }
  }
  std::vector<cplx> x(d);
  for (std::size_t k = d; k-- > 0;) {
    cplx acc = b[k];
    for (std::size_t cc = k + 1; cc < d; ++cc) acc -= A[k][cc] * x[cc];
    x[k] = acc / A[k][k];
  }
  return x;
}

// Plain (un-calibrated) p-th moments m_p^{(c)} = E W_c^p of the
// continuous-time limits started from the single-atom compositions,
// from the recursive law
//
//   W_c = U^{λ/θ_c} · Σ_j X_j ,   slots j: n_{c,i} independent copies per i,
//
// so  m_p^{(c)} · (pλ+θ_c)/θ_c  −  Σ_i n_{c,i} m_p^{(i)}  =  lower_c(p)
// with lower_c(p) the multinomial sum over ordered compositions of p into
// the slots where every part is < p.  Returns out[c][p], p = 0..p_max.
inline std::vector<std::vector<cplx>> plain_moments_enum(
    const urnlab::AtomicBasis& basis, cplx lambda,
    const std::vector<cplx>& means, int p_max) {
  const int d = int(basis.theta.size());
  std::vector<std::vector<cplx>> m(static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c) m[std::size_t(c)] = {cplx(1), means[std::size_t(c)]};

  // binomial table up to p_max
  std::vector<std::vector<double>> binom(std::size_t(p_max) + 1);
  for (int n = 0; n <= p_max; ++n) {
    binom[std::size_t(n)].assign(std::size_t(n) + 1, 1.0);
    for (int k = 1; k < n; ++k)
      binom[std::size_t(n)][std::size_t(k)] =
          binom[std::size_t(n - 1)][std::size_t(k - 1)] +
          binom[std::size_t(n - 1)][std::size_t(k)];
  }

  for (int p = 2; p <= p_max; ++p) {
    std::vector<std::vector<cplx>> A(
        static_cast<std::size_t>(d),
        std::vector<cplx>(static_cast<std::size_t>(d)));
    std::vector<cplx> rhs(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) {
      std::vector<int> slot_colour;
      for (int i = 0; i < d; ++i) {
        const long long n_ci = basis.a_tilde(c, i) + (c == i ? 1 : 0);
        for (long long k = 0; k < n_ci; ++k) slot_colour.push_back(i);
        A[std::size_t(c)][std::size_t(i)] = -double(n_ci);
      }
      A[std::size_t(c)][std::size_t(c)] +=
          (double(p) * lambda + double(basis.theta[std::size_t(c)])) /
          double(basis.theta[std::size_t(c)]);
      std::function<cplx(std::size_t, int)> rec = [&](std::size_t j,
                                                      int rem) -> cplx {
        if (j == slot_colour.size()) return rem == 0 ? cplx(1) : cplx(0);
        cplx acc = 0;
        const int hi = std::min(rem, p - 1);
        for (int part = 0; part <= hi; ++part)
          acc += binom[std::size_t(rem)][std::size_t(part)] *
                 m[std::size_t(slot_colour[j])][std::size_t(part)] *
                 rec(j + 1, rem - part);
        return acc;
      };
      rhs[std::size_t(c)] = rec(0, p);
    }
    const std::vector<cplx> x = solve_dense(A, rhs);
    for (int c = 0; c < d; ++c) m[std::size_t(c)].push_back(x[std::size_t(c)]);
  }
  return m;
}

}  // namespace oracle
