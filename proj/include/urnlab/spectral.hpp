// ── urnlab/spectral.hpp ─────────────────────────────────────────────────────
//
// Spectral decomposition of the replacement dynamics.
//
// The composition vector (as a column) evolves by the matrix M = Rᵀ, since a
// draw of colour c adds the row R[c] to the composition.  All Jordan
// machinery therefore runs on M; for each Jordan block we expose
//
//   chain     vectors h₀ … h_ν with (M − λ)h_{k+1} = h_k, (M − λ)h₀ = 0,
//   v = h₀    the eigenvector of the block,
//   u_dual    the row of the inverse similarity transform matching v, so
//             ⟨u_dual, x⟩ is the coefficient of x along v and ⟨u_dual, v⟩ = 1,
//   projector the d×d matrix of the spectral projection onto the block.
//
// Pipeline: exact integer characteristic polynomial (Faddeev–LeVerrier in
// checked 128-bit arithmetic, long-double fallback on overflow), Aberth–
// Ehrlich root finding in long double, clustering at 1e−8 to assign
// multiplicities, then Jordan chains from SVD null spaces of (M − λ)ᵏ with
// rank threshold 1e−8·‖R‖.  Rank decisions falling inside [1e−10, 1e−6]·‖R‖
// refuse with DegenerateStructure rather than silently guessing ν.
//
// Classification: σ = Re λ / S; principal λ = S, large 1/2 < σ < 1, small
// σ ≤ 1/2.  For a balanced matrix (1,…,1)ᵀ is exactly the right Perron
// vector of R, so S is always an eigenvalue and is pinned exactly.
//
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "urnlab/errors.hpp"
#include "urnlab/urn.hpp"

namespace urnlab {

using cplx = std::complex<double>;

enum class EigenClass { principal, large, small };

inline const char* eigen_class_name(EigenClass k) {
  switch (k) {
    case EigenClass::principal: return "principal";
    case EigenClass::large: return "large";
    case EigenClass::small: return "small";
  }
  return "?";
}

struct JordanBlock {
  cplx lambda;
  int nu = 0;                            // block size minus one
  EigenClass klass = EigenClass::small;
  std::vector<std::vector<cplx>> chain;  // nu+1 vectors, chain[0] = v
  std::vector<cplx> v;                   // eigenvector, first nonzero coord = 1
  std::vector<cplx> u_dual;              // dual row of v, ⟨u_dual, v⟩ = 1
  std::vector<cplx> projector;           // row-major d×d spectral projection
};

struct Spectrum {
  int d = 0;
  long long S = 0;
  double op_norm = 0.0;  // ‖R‖₂
  std::vector<std::pair<cplx, int>> eigenvalues;  // distinct, with multiplicity
  std::vector<JordanBlock> blocks;
};

inline EigenClass classify(cplx lambda, long long S) {
  require(S >= 1, errc::invalid_argument, "classify needs S >= 1");
  const double scale = double(S);
  if (std::abs(lambda - cplx(double(S), 0.0)) <= 1e-9 * std::max(1.0, scale))
    return EigenClass::principal;
  const double sigma = lambda.real() / scale;
  return sigma > 0.5 ? EigenClass::large : EigenClass::small;
}

namespace detail {

// Exact characteristic polynomial of an integer matrix via Faddeev–LeVerrier:
// p(x) = x^d − c₁x^{d−1} − … − c_d.  Returns false on 128-bit overflow.
inline bool char_poly_exact(int d, const std::vector<long long>& A,
                            std::vector<__int128>& c) {
  std::vector<__int128> M(std::size_t(d) * d), next(std::size_t(d) * d);
  c.assign(std::size_t(d) + 1, 0);
  for (int i = 0; i < d * d; ++i) M[std::size_t(i)] = A[std::size_t(i)];
  for (int k = 1; k <= d; ++k) {
    __int128 tr = 0;
    for (int i = 0; i < d; ++i)
      if (__builtin_add_overflow(tr, M[std::size_t(i) * d + i], &tr)) return false;
    c[std::size_t(k)] = tr / k;  // exact by the Faddeev–LeVerrier recursion
    if (k == d) break;
    // next = A · (M − c_k I)
    for (int i = 0; i < d; ++i) M[std::size_t(i) * d + i] -= c[std::size_t(k)];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        __int128 s = 0;
        for (int l = 0; l < d; ++l) {
          __int128 p;
          if (__builtin_mul_overflow(__int128(A[std::size_t(i) * d + l]),
                                     M[std::size_t(l) * d + j], &p))
            return false;
          if (__builtin_add_overflow(s, p, &s)) return false;
        }
        next[std::size_t(i) * d + j] = s;
      }
    M.swap(next);
  }
  return true;
}

// Long-double fallback for the same recursion (large d where 128 bits burst).
inline void char_poly_float(int d, const std::vector<long long>& A,
                            std::vector<long double>& c) {
  std::vector<long double> M(std::size_t(d) * d), next(std::size_t(d) * d);
  c.assign(std::size_t(d) + 1, 0.0L);
  for (int i = 0; i < d * d; ++i) M[std::size_t(i)] = (long double)A[std::size_t(i)];
  for (int k = 1; k <= d; ++k) {
    long double tr = 0;
    for (int i = 0; i < d; ++i) tr += M[std::size_t(i) * d + i];
    c[std::size_t(k)] = tr / k;
    if (k == d) break;
    for (int i = 0; i < d; ++i) M[std::size_t(i) * d + i] -= c[std::size_t(k)];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        long double s = 0;
        for (int l = 0; l < d; ++l)
          s += (long double)A[std::size_t(i) * d + l] * M[std::size_t(l) * d + j];
        next[std::size_t(i) * d + j] = s;
      }
    M.swap(next);
  }
}

using cplxl = std::complex<long double>;

// Monic polynomial evaluation; coef[k] multiplies z^k, coef.back() = 1.
inline cplxl poly_eval(const std::vector<long double>& coef, cplxl z) {
  cplxl acc = 0;
  for (std::size_t k = coef.size(); k-- > 0;) acc = acc * z + coef[k];
  return acc;
}

inline cplxl poly_eval_deriv(const std::vector<long double>& coef, cplxl z) {
  cplxl acc = 0;
  for (std::size_t k = coef.size(); k-- > 1;)
    acc = acc * z + (long double)k * coef[k];
  return acc;
}

// Aberth–Ehrlich simultaneous root refinement for a monic real polynomial.
inline std::vector<cplx> poly_roots(std::vector<long double> coef) {
  const int n = int(coef.size()) - 1;
  std::vector<cplx> out;
  if (n <= 0) return out;
  // Fujiwara-type bound on root modulus.
  long double radius = 0.0L;
  for (int k = 0; k < n; ++k) {
    const long double a = fabsl(coef[std::size_t(k)]);
    if (a > 0)
      radius = std::max(radius, 2.0L * powl(a, 1.0L / (long double)(n - k)));
  }
  if (radius <= 0) radius = 1.0L;
  std::vector<cplxl> z(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    // staggered radii break symmetric starting configurations
    const long double r = radius * (0.55L + 0.45L * (j + 1) / (long double)n);
    const long double a = 2.0L * 3.14159265358979323846L * j / n + 0.40L;
    z[std::size_t(j)] = cplxl(r * cosl(a), r * sinl(a));
  }
  for (int sweep = 0; sweep < 400; ++sweep) {
    long double worst = 0.0L;
    for (int i = 0; i < n; ++i) {
      const cplxl p = poly_eval(coef, z[std::size_t(i)]);
      const cplxl dp = poly_eval_deriv(coef, z[std::size_t(i)]);
      if (std::abs(p) == 0.0L) continue;
      cplxl w = dp == cplxl(0) ? cplxl(1e-30L) : p / dp;
      cplxl rep = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) {
          const cplxl diff = z[std::size_t(i)] - z[std::size_t(j)];
          if (std::abs(diff) > 0) rep += cplxl(1) / diff;
        }
      const cplxl denom = cplxl(1) - w * rep;
      const cplxl step = std::abs(denom) > 0 ? w / denom : w;
      z[std::size_t(i)] -= step;
      worst = std::max(worst,
                       (long double)std::abs(step) /
                           (1.0L + (long double)std::abs(z[std::size_t(i)])));
    }
    if (worst < 1e-17L) break;
  }
  for (int i = 0; i < n; ++i) {  // Newton polish
    for (int it = 0; it < 4; ++it) {
      const cplxl p = poly_eval(coef, z[std::size_t(i)]);
      const cplxl dp = poly_eval_deriv(coef, z[std::size_t(i)]);
      if (std::abs(dp) == 0.0L) break;
      const cplxl step = p / dp;
      if (std::abs(step) > 1.0L + std::abs(z[std::size_t(i)])) break;
      z[std::size_t(i)] -= step;
    }
    out.emplace_back(double(z[std::size_t(i)].real()),
                     double(z[std::size_t(i)].imag()));
  }
  return out;
}

inline Eigen::MatrixXcd to_dynamics_matrix(const UrnSpec& u) {
  Eigen::MatrixXcd M(u.d, u.d);
  for (int c = 0; c < u.d; ++c)
    for (int i = 0; i < u.d; ++i)
      M(i, c) = cplx(double(u.at(c, i)), 0.0);  // M = Rᵀ
  return M;
}

// Orthonormal basis of the null space of B at the given threshold, plus the
// degenerate-band refusal.
inline Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& B, double tau,
                                   double band_lo, double band_hi) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      B, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int nullity = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > band_lo && sv(i) < band_hi)
      raise(errc::degenerate_structure,
            "singular value " + std::to_string(sv(i)) +
                " falls in the ambiguous rank band [" +
                std::to_string(band_lo) + ", " + std::to_string(band_hi) + "]");
    if (sv(i) <= tau) ++nullity;
  }
  return svd.matrixV().rightCols(nullity);
}

// Component of each column of X orthogonal to the span of Q's columns.
inline Eigen::MatrixXcd project_out(const Eigen::MatrixXcd& Q,
                                    const Eigen::MatrixXcd& X) {
  if (Q.cols() == 0) return X;
  return X - Q * (Q.adjoint() * X);
}

inline Eigen::MatrixXcd orthonormal_columns(const Eigen::MatrixXcd& X,
                                            double drop_tol) {
  Eigen::MatrixXcd Q(X.rows(), X.cols());
  int kept = 0;
  for (int c = 0; c < X.cols(); ++c) {
    Eigen::VectorXcd v = X.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (int q = 0; q < kept; ++q) v -= Q.col(q) * (Q.col(q).adjoint() * v)(0);
    const double norm = v.norm();
    if (norm > drop_tol) Q.col(kept++) = v / norm;
  }
  return Q.leftCols(kept);
}

}  // namespace detail

inline Spectrum eigen_spectrum(const UrnSpec& u) {
  const ValidationReport rep = validate_or_throw(u);
  const int d = u.d;
  Spectrum spec;
  spec.d = d;
  spec.S = rep.S;

  // characteristic polynomial, exact if 128-bit arithmetic suffices
  std::vector<long double> monic(std::size_t(d) + 1, 0.0L);
  monic[std::size_t(d)] = 1.0L;
  {
    std::vector<__int128> c;
    if (detail::char_poly_exact(d, u.R, c)) {
      for (int k = 1; k <= d; ++k)
        monic[std::size_t(d - k)] = -(long double)c[std::size_t(k)];
    } else {
      std::vector<long double> cf;
      detail::char_poly_float(d, u.R, cf);
      for (int k = 1; k <= d; ++k)
        monic[std::size_t(d - k)] = -cf[std::size_t(k)];
    }
  }
  std::vector<cplx> roots = detail::poly_roots(monic);

  // cluster roots into distinct eigenvalues
  double root_scale = 1.0;
  for (const cplx& r : roots) root_scale = std::max(root_scale, std::abs(r));
  const double cluster_tol = 1e-8 * root_scale;
  std::vector<int> owner(roots.size(), -1);
  std::vector<cplx> centers;
  std::vector<int> mult;
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  for (std::size_t i = 0; i < roots.size(); ++i) {
    int hit = -1;
    for (std::size_t k = 0; k < centers.size(); ++k)
      if (std::abs(roots[i] - centers[k]) <= 4 * cluster_tol) { hit = int(k); break; }
    if (hit < 0) {
      centers.push_back(roots[i]);
      mult.push_back(1);
      owner[i] = int(centers.size()) - 1;
    } else {
      // running mean keeps the center stable
      centers[std::size_t(hit)] =
          (centers[std::size_t(hit)] * double(mult[std::size_t(hit)]) + roots[i]) /
          double(mult[std::size_t(hit)] + 1);
      ++mult[std::size_t(hit)];
      owner[i] = hit;
    }
  }

  // real-axis snapping and conjugate pairing (real characteristic polynomial)
  for (auto& z : centers)
    if (std::abs(z.imag()) <= 1e-9 * root_scale) z = cplx(z.real(), 0.0);
  for (std::size_t a = 0; a < centers.size(); ++a) {
    if (centers[a].imag() <= 0) continue;
    std::size_t best = a;
    double best_err = 1e300;
    for (std::size_t b = 0; b < centers.size(); ++b) {
      if (centers[b].imag() >= 0) continue;
      const double err = std::abs(std::conj(centers[b]) - centers[a]);
      if (err < best_err) { best_err = err; best = b; }
    }
    if (best != a && best_err <= 16 * cluster_tol) {
      const cplx sym = (centers[a] + std::conj(centers[best])) / 2.0;
      centers[a] = sym;
      centers[best] = std::conj(sym);
    }
  }
  // S is always a root (right Perron vector (1,…,1)); pin it exactly.
  {
    std::size_t best = 0;
    double best_err = 1e300;
    for (std::size_t k = 0; k < centers.size(); ++k) {
      const double err = std::abs(centers[k] - cplx(double(spec.S), 0.0));
      if (err < best_err) { best_err = err; best = k; }
    }
    require(best_err <= 1e-6 * std::max(1.0, double(spec.S)),
            errc::degenerate_structure,
            "balance S not located among the characteristic roots");
    centers[best] = cplx(double(spec.S), 0.0);
  }

  std::vector<std::size_t> order(centers.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (centers[a].real() != centers[b].real())
      return centers[a].real() > centers[b].real();
    return centers[a].imag() > centers[b].imag();
  });
  for (std::size_t k : order)
    spec.eigenvalues.emplace_back(centers[k], mult[k]);
  for (const auto& [lam, m] : spec.eigenvalues)
    if (std::abs(lam - cplx(double(spec.S), 0.0)) > 1e-12 && lam.real() >= double(spec.S))
      raise(errc::degenerate_structure,
            "eigenvalue with Re >= S besides the principal one");

  // Jordan chains on M = Rᵀ
  const Eigen::MatrixXcd M = detail::to_dynamics_matrix(u);
  {
    Eigen::MatrixXd Rd(d, d);
    for (int c = 0; c < d; ++c)
      for (int i = 0; i < d; ++i) Rd(c, i) = double(u.at(c, i));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Rd);
    spec.op_norm = svd.singularValues()(0);
  }
  const double scale = std::max(1.0, spec.op_norm);
  const double tau = 1e-8 * scale;
  const double band_lo = 1e-10 * scale, band_hi = 1e-6 * scale;

  std::vector<JordanBlock> blocks;
  for (const auto& [lambda, m] : spec.eigenvalues) {
    const Eigen::MatrixXcd B = M - lambda * Eigen::MatrixXcd::Identity(d, d);
    // Weyr sequence: nullities of B^k up to algebraic multiplicity
    std::vector<Eigen::MatrixXcd> nulls;  // nulls[k] spans Null(B^{k+1})
    Eigen::MatrixXcd Bk = B;
    int prev = 0;
    while (true) {
      Eigen::MatrixXcd N = detail::null_space(Bk, tau, band_lo, band_hi);
      require(N.cols() > prev || prev == m, errc::degenerate_structure,
              "null-space growth stalled below the algebraic multiplicity");
      nulls.push_back(N);
      prev = int(N.cols());
      if (prev >= m) break;
      require(int(nulls.size()) < m + 1, errc::degenerate_structure,
              "Jordan chain search exceeded the algebraic multiplicity");
      Bk = Bk * B;
    }
    require(prev == m, errc::degenerate_structure,
            "geometric structure inconsistent with algebraic multiplicity");
    const int K = int(nulls.size());  // longest chain length
    std::vector<int> w(std::size_t(K) + 2, 0);  // w[k] = #blocks of size ≥ k
    for (int k = 1; k <= K; ++k)
      w[std::size_t(k)] = int(nulls[std::size_t(k - 1)].cols()) -
                          (k >= 2 ? int(nulls[std::size_t(k - 2)].cols()) : 0);

    std::vector<std::vector<Eigen::VectorXcd>> chains;  // [chain][height 0..len-1]
    for (int s = K; s >= 1; --s) {
      const int need = w[std::size_t(s)] - w[std::size_t(s) + 1];
      if (need <= 0) continue;
      // obstruction: Null(B^{s−1}) plus height-s vectors of longer chains
      Eigen::MatrixXcd obs(d, 0);
      if (s >= 2) obs = nulls[std::size_t(s - 2)];
      for (const auto& ch : chains)
        if (int(ch.size()) > s) {
          obs.conservativeResize(d, obs.cols() + 1);
          obs.col(obs.cols() - 1) = ch[std::size_t(s - 1)];
        }
      Eigen::MatrixXcd Q = detail::orthonormal_columns(obs, 1e-12);
      const Eigen::MatrixXcd& cand = nulls[std::size_t(s - 1)];
      for (int picked = 0; picked < need; ++picked) {
        Eigen::MatrixXcd resid = detail::project_out(Q, cand);
        int best = -1;
        double best_norm = 0;
        for (int c = 0; c < resid.cols(); ++c)
          if (resid.col(c).norm() > best_norm) {
            best_norm = resid.col(c).norm();
            best = c;
          }
        require(best >= 0 && best_norm > 1e-6, errc::degenerate_structure,
                "no independent chain top found at height " + std::to_string(s));
        Eigen::VectorXcd top = resid.col(best) / best_norm;
        std::vector<Eigen::VectorXcd> ch(static_cast<std::size_t>(s));
        ch[std::size_t(s) - 1] = top;
        for (int h = s - 1; h >= 1; --h)
          ch[std::size_t(h) - 1] = B * ch[std::size_t(h)];
        require(ch[0].norm() > 1e-10, errc::degenerate_structure,
                "chain bottom vanished while descending");
        chains.push_back(std::move(ch));
        Q.conservativeResize(d, Q.cols() + 1);
        Eigen::VectorXcd q = chains.back()[std::size_t(s) - 1];
        for (int qq = 0; qq + 1 < int(Q.cols()); ++qq)
          q -= Q.col(qq) * (Q.col(qq).adjoint() * q)(0);
        Q.col(Q.cols() - 1) = q.norm() > 0 ? q / q.norm() : q;
      }
    }
    // normalize: first nonzero coordinate of the bottom = 1, whole chain scaled
    for (auto& ch : chains) {
      const Eigen::VectorXcd& bot = ch[0];
      double top_abs = 0;
      for (int i = 0; i < d; ++i) top_abs = std::max(top_abs, std::abs(bot(i)));
      int lead = -1;
      for (int i = 0; i < d; ++i)
        if (std::abs(bot(i)) > 1e-9 * top_abs) { lead = i; break; }
      require(lead >= 0, errc::degenerate_structure, "zero eigenvector");
      const cplx s = bot(lead);
      for (auto& h : ch) h /= s;
    }
    std::sort(chains.begin(), chains.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });
    for (auto& ch : chains) {
      JordanBlock blk;
      blk.lambda = lambda;
      blk.nu = int(ch.size()) - 1;
      blk.klass = classify(lambda, spec.S);
      for (const auto& h : ch)
        blk.chain.emplace_back(h.data(), h.data() + d);
      blk.v = blk.chain[0];
      blocks.push_back(std::move(blk));
    }
  }

  // dual rows from the inverse of the full similarity transform
  Eigen::MatrixXcd P(d, d);
  {
    int col = 0;
    for (const auto& blk : blocks)
      for (const auto& h : blk.chain) {
        for (int i = 0; i < d; ++i) P(i, col) = h[std::size_t(i)];
        ++col;
      }
    require(col == d, errc::degenerate_structure,
            "Jordan chain vectors do not fill the space");
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(P);
  require(lu.isInvertible(), errc::degenerate_structure,
          "similarity transform is numerically singular");
  const Eigen::MatrixXcd Pinv = lu.inverse();
  {
    int col = 0;
    for (auto& blk : blocks) {
      const int base = col;
      blk.u_dual.resize(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) blk.u_dual[std::size_t(i)] = Pinv(base, i);
      blk.projector.assign(std::size_t(d) * d, cplx(0));
      for (int k = 0; k <= blk.nu; ++k, ++col)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            blk.projector[std::size_t(i) * d + j] +=
                P(i, base + k) * Pinv(base + k, j);
    }
  }
  spec.blocks = std::move(blocks);
  return spec;
}

namespace detail {
template <typename T>
cplx to_cplx(const T& v) {
  if constexpr (std::is_arithmetic_v<T>)
    return cplx(double(v), 0.0);
  else
    return cplx(v);
}
}  // namespace detail

// Coefficient of x along the block's eigenvector v.
template <typename Vec>
cplx block_coefficient(const JordanBlock& blk, const Vec& x) {
  require(std::size_t(x.size()) == blk.u_dual.size(), errc::invalid_argument,
          "block_coefficient: dimension mismatch");
  cplx acc = 0;
  for (std::size_t i = 0; i < blk.u_dual.size(); ++i)
    acc += blk.u_dual[i] * detail::to_cplx(x[i]);
  return acc;
}

inline std::vector<cplx> apply_projector(const JordanBlock& blk,
                                         const std::vector<cplx>& x) {
  const std::size_t d = blk.u_dual.size();
  require(x.size() == d, errc::invalid_argument, "projector: dimension mismatch");
  std::vector<cplx> y(d, cplx(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      y[i] += blk.projector[i * d + j] * x[j];
  return y;
}

// Block whose eigenvalue matches the selector within tol (largest ν on ties).
inline const JordanBlock& find_block(const Spectrum& spec, cplx target,
                                     double tol = 1e-6) {
  const JordanBlock* best = nullptr;
  for (const auto& blk : spec.blocks)
    if (std::abs(blk.lambda - target) <=
        tol * std::max(1.0, std::abs(target))) {
      if (!best || blk.nu > best->nu) best = &blk;
    }
  if (!best)
    raise(errc::invalid_argument,
          "no eigenvalue matches selector (" + std::to_string(target.real()) +
              (target.imag() >= 0 ? "+" : "") + std::to_string(target.imag()) +
              "i) within tolerance");
  return *best;
}

// Left Perron row vector of R: positive entries, normalized to sum 1.
inline std::vector<double> perron_left_vector(const Spectrum& spec) {
  const JordanBlock& blk =
      find_block(spec, cplx(double(spec.S), 0.0), 1e-9);
  require(blk.nu == 0, errc::degenerate_structure,
          "principal eigenvalue is not simple");
  std::vector<double> u(blk.v.size());
  double sum = 0;
  for (std::size_t i = 0; i < blk.v.size(); ++i) {
    require(std::abs(blk.v[i].imag()) <= 1e-9 * (1 + std::abs(blk.v[i])),
            errc::degenerate_structure, "Perron vector has imaginary part");
    u[i] = blk.v[i].real();
    sum += u[i];
  }
  require(sum != 0.0, errc::degenerate_structure, "Perron vector sums to zero");
  for (double& x : u) x /= sum;
  for (double x : u)
    require(x > 0.0, errc::degenerate_structure,
            "Perron vector has a non-positive entry");
  return u;
}

inline std::vector<double> perron_left_vector(const UrnSpec& u) {
  return perron_left_vector(eigen_spectrum(u));
}

}  // namespace urnlab
