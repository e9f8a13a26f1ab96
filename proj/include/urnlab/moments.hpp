// ── urnlab/moments.hpp ──────────────────────────────────────────────────────
//
// Exact joint moments m^{(c)}_{p,q} = E[W^p · conj(W)^q] of the calibrated
// limit variables, from the distributional fixed-point system.
//
// The un-calibrated CT variables started at the atomic compositions satisfy
//
//   W_c  =law  U^{λ/θ_c} · Σ_i Σ_{k ≤ n_{c,i}} W^{(k)}_i ,   n_{c,i} = ã_{c,i} + δ_{c,i}
//
// with U uniform and all W-copies independent.  Raising to mixed powers
// (p, q), writing z = pλ + qλ̄ and separating the terms where one summand
// carries the whole degree gives, per total degree m = p+q ≥ 2, a d×d linear
// system (zΘ − Ã)·m_{p,q} = r_{p,q}, Θ = diag(1/θ_i), Ã = (ã_{c,i}); the
// right side collects strictly-lower-degree products via an exponential-
// generating-function convolution over the n_{c,i} independent summands,
// r^{(c)} = p!·q!·H_c[p][q].  The system is nonsingular for m ≥ 2 because
// Re z = m·Reλ > S dominates the whole spectrum of R (checked at runtime via
// det(zI − R)).  Degree-1 values are the exact means θ_c·u_c.
//
// Calibration: the published tables describe the calibrated estimators of
// simulate.hpp, so the solved plain values are scaled on output,
//
//   CT:  m̂_{p,q} = G(θ_c)^p · conj(G(θ_c))^q · m_{p,q},  G(x) = Γ((x+λ)/S)/Γ(x/S)
//   DT:  m̂^DT_{p,q} = m̂^CT_{p,q} / ( S^{(p+q)ν} · Γ(θ_c/S + z/S)/Γ(θ_c/S) ),
//
// the DT line being the moment form of the law identity Ŵ^CT = S^ν ξ^{λ/S} Ŵ^DT
// with independent ξ ~ Gamma(θ_c/S); its degree-1 entries reduce exactly to
// the mean vector.  Only ν = 0 large blocks are supported (the system above
// is derived for the plain projection without logarithmic corrections).
//
// Also here: the moment-growth diagnostics — the Carleman partial sums of
// m_{p,p}^{-1/(2p)} (divergence ⇒ moment-determinacy) and the combinatorial
// bound Φ_c(p) ≤ (1 + 8·ln(p+2))^{γ^{(c)}} with φ(k) = ln^k(k+2).
//
#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "urnlab/distributions.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/simulate.hpp"
#include "urnlab/spectral.hpp"
#include "urnlab/urn.hpp"

namespace urnlab {

inline constexpr int kMomentDegreeCap = 20;

struct MomentTable {
  TimeMode mode = TimeMode::ct;
  int d = 0;
  int p_max = 0;
  cplx lambda;
  int nu = 0;
  std::vector<cplx> vals;  // [colour][triangle index of (p,q)]

  static std::size_t tri(int p, int q) {
    const int m = p + q;
    return std::size_t(m) * (m + 1) / 2 + std::size_t(q);
  }
  std::size_t stride() const {
    return std::size_t(p_max + 1) * (p_max + 2) / 2;
  }
  cplx at(int c, int p, int q) const {
    require(c >= 0 && c < d && p >= 0 && q >= 0 && p + q <= p_max,
            errc::invalid_argument, "moment index out of range");
    return vals[std::size_t(c) * stride() + tri(p, q)];
  }
  cplx& slot(int c, int p, int q) {
    return vals[std::size_t(c) * stride() + tri(p, q)];
  }
};

inline std::vector<cplx> mean_vector(const AtomicBasis& basis,
                                     const JordanBlock& blk) {
  require(blk.klass == EigenClass::large, errc::block_not_large,
          "mean vector defined for large blocks");
  std::vector<cplx> mv(basis.theta.size());
  for (std::size_t c = 0; c < mv.size(); ++c)
    mv[c] = double(basis.theta[c]) * blk.u_dual[c];
  bool any = false;
  for (const cplx& v : mv)
    if (std::abs(v) > 1e-12) any = true;
  require(any, errc::degenerate_structure,
          "all atomic means vanish (contradicts the mean lemma)");
  return mv;
}

namespace detail {

// Dense triangular array of EGF-normalized coefficients up to total degree cap.
struct Tri {
  int cap = 0;
  std::vector<cplx> a;
  explicit Tri(int cap_) : cap(cap_), a(MomentTable::tri(cap_ + 1, 0), cplx(0)) {}
  cplx& at(int p, int q) { return a[MomentTable::tri(p, q)]; }
  cplx get(int p, int q) const {
    return p + q > cap ? cplx(0) : a[MomentTable::tri(p, q)];
  }
};

inline Tri conv(const Tri& A, const Tri& B, int cap) {
  Tri C(cap);
  for (int m = 0; m <= cap; ++m)
    for (int q = 0; q <= m; ++q) {
      const int p = m - q;
      cplx acc = 0;
      for (int a = 0; a <= p; ++a)
        for (int b = 0; b <= q; ++b)
          acc += A.get(a, b) * B.get(p - a, q - b);
      C.at(p, q) = acc;
    }
  return C;
}

inline Tri conv_power(Tri base, long long e, int cap) {
  Tri acc(cap);
  acc.at(0, 0) = 1.0;  // identity of the convolution
  while (e > 0) {
    if (e & 1) acc = conv(acc, base, cap);
    base = conv(base, base, cap);
    e >>= 1;
  }
  return acc;
}

inline double factorial_d(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace detail

// Relative gap of det(zΘ − Ã) against Π θ_i^{-1} · det(zI − R); the identity
// is exact (zΘ − Ã = (zI − R)·diag(1/θ) up to the row convention) and the gap
// measures only floating error.
inline double det_identity_gap(const UrnSpec& u, const AtomicBasis& basis,
                               cplx z) {
  const int d = u.d;
  Eigen::MatrixXcd lhs(d, d), rhs(d, d);
  for (int c = 0; c < d; ++c)
    for (int i = 0; i < d; ++i) {
      lhs(c, i) = (c == i ? z / double(basis.theta[std::size_t(c)]) : cplx(0)) -
                  cplx(double(basis.a_tilde(c, i)), 0.0);
      rhs(c, i) = (c == i ? z : cplx(0)) - cplx(double(u.at(c, i)), 0.0);
    }
  cplx det_lhs = lhs.determinant();
  cplx det_rhs = rhs.determinant();
  for (long long t : basis.theta) det_rhs /= double(t);
  const double scale = std::max({1.0, std::abs(det_lhs), std::abs(det_rhs)});
  return std::abs(det_lhs - det_rhs) / scale;
}

inline MomentTable ct_joint_moments(const AtomicBasis& basis,
                                    const JordanBlock& blk, int p_max) {
  require(blk.klass == EigenClass::large, errc::block_not_large,
          "moment system requires a large block");
  require(blk.nu == 0, errc::unsupported,
          "moment system implemented for nu = 0 blocks only");
  require(p_max >= 1 && p_max <= kMomentDegreeCap, errc::invalid_argument,
          "degree cap must lie in [1, " + std::to_string(kMomentDegreeCap) + "]");
  const int d = int(basis.theta.size());
  const cplx lambda = blk.lambda;
  const double S = double(basis.S);

  MomentTable plain;
  plain.mode = TimeMode::ct;
  plain.d = d;
  plain.p_max = p_max;
  plain.lambda = lambda;
  plain.nu = blk.nu;
  plain.vals.assign(std::size_t(d) * plain.stride(), cplx(0));

  const std::vector<cplx> mv = mean_vector(basis, blk);
  for (int c = 0; c < d; ++c) {
    plain.slot(c, 0, 0) = 1.0;
    if (p_max >= 1) {
      plain.slot(c, 1, 0) = mv[std::size_t(c)];
      plain.slot(c, 0, 1) = std::conj(mv[std::size_t(c)]);
    }
  }

  for (int m = 2; m <= p_max; ++m) {
    // per-colour EGF arrays of all strictly lower degrees
    std::vector<detail::Tri> lower;
    for (int i = 0; i < d; ++i) {
      detail::Tri t(m - 1);
      for (int deg = 0; deg <= m - 1; ++deg)
        for (int q = 0; q <= deg; ++q) {
          const int p = deg - q;
          t.at(p, q) = plain.at(i, p, q) /
                       (detail::factorial_d(p) * detail::factorial_d(q));
        }
      lower.push_back(std::move(t));
    }
    // per-colour convolution over the slots of colour c's dislocation
    std::vector<detail::Tri> slot_prod;
    for (int c = 0; c < d; ++c) {
      detail::Tri acc(m);
      acc.at(0, 0) = 1.0;
      for (int i = 0; i < d; ++i) {
        const long long n_ci = basis.a_tilde(c, i) + (c == i ? 1 : 0);
        if (n_ci > 0) {
          detail::Tri g(m);
          for (int deg = 0; deg <= m - 1; ++deg)
            for (int q = 0; q <= deg; ++q)
              g.at(deg - q, q) = lower[std::size_t(i)].get(deg - q, q);
          acc = detail::conv(acc, detail::conv_power(std::move(g), n_ci, m), m);
        }
      }
      slot_prod.push_back(std::move(acc));
    }
    for (int q = 0; 2 * q <= m; ++q) {
      const int p = m - q;
      const cplx z = double(p) * lambda + double(q) * std::conj(lambda);
      // solvability: Re z = m·Reλ > S dominates the spectrum of R
      require(z.real() > S - 1e-9, errc::singular_system,
              "moment system degree pushes Re z below the balance");
      Eigen::MatrixXcd A(d, d);
      Eigen::VectorXcd r(d);
      for (int c = 0; c < d; ++c) {
        for (int i = 0; i < d; ++i)
          A(c, i) = (c == i ? z / double(basis.theta[std::size_t(c)]) : cplx(0)) -
                    cplx(double(basis.a_tilde(c, i)), 0.0);
        r(c) = detail::factorial_d(p) * detail::factorial_d(q) *
               slot_prod[std::size_t(c)].get(p, q);
      }
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
      require(lu.isInvertible(), errc::singular_system,
              "moment system matrix is singular");
      const Eigen::VectorXcd x = lu.solve(r);
      for (int c = 0; c < d; ++c) {
        plain.slot(c, p, q) = x(c);
        plain.slot(c, q, p) = std::conj(x(c));
      }
      if (p == q)
        for (int c = 0; c < d; ++c) {
          const cplx v = plain.at(c, p, p);
          require(std::abs(v.imag()) <= 1e-8 * (1.0 + std::abs(v)),
                  errc::singular_system,
                  "diagonal moment not real — system inconsistent");
          plain.slot(c, p, p) = cplx(v.real(), 0.0);
        }
    }
  }

  // calibrate: multiply by G(θ_c)^p · conj(G(θ_c))^q
  MomentTable out = plain;
  for (int c = 0; c < d; ++c) {
    const cplx g = gamma_ratio(double(basis.theta[std::size_t(c)]) / S, lambda / S);
    for (int m = 1; m <= p_max; ++m)
      for (int q = 0; q <= m; ++q) {
        const int p = m - q;
        out.slot(c, p, q) = plain.at(c, p, q) * std::pow(g, double(p)) *
                            std::pow(std::conj(g), double(q));
      }
  }
  return out;
}

inline MomentTable dt_joint_moments(const MomentTable& ct,
                                    const AtomicBasis& basis,
                                    const JordanBlock& blk) {
  require(ct.mode == TimeMode::ct, errc::invalid_argument,
          "input table must be continuous-time");
  const int d = ct.d;
  const double S = double(basis.S);
  MomentTable dt = ct;
  dt.mode = TimeMode::dt;
  const std::vector<cplx> mv = mean_vector(basis, blk);
  for (int c = 0; c < d; ++c) {
    for (int m = 1; m <= ct.p_max; ++m)
      for (int q = 0; q <= m; ++q) {
        const int p = m - q;
        const cplx z = double(p) * ct.lambda + double(q) * std::conj(ct.lambda);
        const cplx denom =
            std::pow(S, double((p + q) * blk.nu)) *
            gamma_ratio(double(basis.theta[std::size_t(c)]) / S, z / S);
        dt.slot(c, p, q) = ct.at(c, p, q) / denom;
      }
    // degree-1 entries are exactly the means by the martingale calibration
    dt.slot(c, 1, 0) = mv[std::size_t(c)];
    dt.slot(c, 0, 1) = std::conj(mv[std::size_t(c)]);
  }
  return dt;
}

// ── moment-growth diagnostics ───────────────────────────────────────────────

struct CarlemanRow {
  int two_p = 0;          // absolute-moment order 2p
  double abs_moment = 0;  // m_{p,p} = E|W|^{2p}
  double bound_seq = 0;   // (m_{p,p}/((2p)!·ln^{2p}(2p+2)))^{1/(2p)}
  double carleman_term = 0;  // m_{p,p}^{-1/(2p)}
  double partial_sum = 0;    // Σ up to this row (divergence ⇒ determinacy)
};

inline std::vector<std::vector<CarlemanRow>> carleman_diagnostic(
    const MomentTable& table) {
  std::vector<std::vector<CarlemanRow>> out(static_cast<std::size_t>(table.d));
  for (int c = 0; c < table.d; ++c) {
    double acc = 0;
    for (int p = 1; 2 * p <= table.p_max; ++p) {
      CarlemanRow row;
      row.two_p = 2 * p;
      row.abs_moment = table.at(c, p, p).real();
      require(row.abs_moment >= 0, errc::invalid_argument,
              "negative absolute moment in table");
      const double lg = std::log(double(2 * p + 2));
      row.bound_seq = std::pow(
          row.abs_moment /
              (detail::factorial_d(2 * p) * std::pow(lg, double(2 * p))),
          1.0 / double(2 * p));
      row.carleman_term =
          row.abs_moment > 0 ? std::pow(row.abs_moment, -1.0 / double(2 * p))
                             : 0.0;
      acc += row.carleman_term;
      row.partial_sum = acc;
      out[std::size_t(c)].push_back(row);
    }
  }
  return out;
}

// Φ_c(p) = Σ_{p₁+…+p_γ = p, each ≤ p−1} φ(p₁)…φ(p_γ) / φ(p), φ(k) = ln^k(k+2),
// and its proven envelope (1 + 8·ln(p+2))^γ.
inline std::pair<double, double> phi_bound_check(const AtomicBasis& basis,
                                                 int c, int p) {
  require(c >= 0 && c < int(basis.theta.size()), errc::invalid_argument,
          "colour out of range");
  require(p >= 2, errc::invalid_argument, "phi bound defined for p >= 2");
  const long long gamma = basis.gamma_total(c);
  require(gamma >= 1, errc::invalid_argument, "gamma must be >= 1");
  std::vector<double> phi(std::size_t(p) + 1);
  for (int k = 0; k <= p; ++k) phi[std::size_t(k)] = std::pow(std::log(double(k + 2)), double(k));
  // DP convolution over γ parts, each part capped at p−1
  std::vector<double> acc(std::size_t(p) + 1, 0.0);
  acc[0] = 1.0;
  for (long long g = 0; g < gamma; ++g) {
    std::vector<double> next(std::size_t(p) + 1, 0.0);
    for (int t = 0; t <= p; ++t) {
      if (acc[std::size_t(t)] == 0.0) continue;
      for (int part = 0; part <= std::min(p - t, p - 1); ++part)
        next[std::size_t(t + part)] += acc[std::size_t(t)] * phi[std::size_t(part)];
    }
    acc.swap(next);
  }
  const double value = acc[std::size_t(p)] / phi[std::size_t(p)];
  const double bound =
      std::pow(1.0 + 8.0 * std::log(double(p + 2)), double(gamma));
  return {value, bound};
}

}  // namespace urnlab
