// ── urnlab/density.hpp ──────────────────────────────────────────────────────
//
// Empirical density and characteristic-function diagnostics for the limit
// samples:
//
//   • estimate_charfn   φ̂(t) = N⁻¹ Σ e^{i⟨t,w⟩}, ⟨t,w⟩ = Re t·Re w + Im t·Im w
//   • radial_sup        ψ̂(r) = max of |φ̂| over the circle |t| = r
//   • decay_exponent    least-squares slope of log ψ̂ against log r on the
//                       signal-dominated range (ψ̂ > 3·SE, SE = 1/√N)
//   • kde_1d / kde_2d   Gaussian-kernel density on a regular grid covering the
//                       0.1%–99.9% sample-quantile box padded by 20%
//   • support_closure_check
//                       draws probe points from the colour pools, pushes them
//                       through the dislocation combiner Σ ρ_{c,i}·V_k^{λ/S}·z
//                       and reports how often the image lands where the target
//                       colour's density estimate is above a small threshold
//
// Monte-Carlo estimates cannot certify integrability of φ; these operations
// exhibit the density and its decay empirically, nothing more.
//
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "urnlab/errors.hpp"
#include "urnlab/fixpoint.hpp"
#include "urnlab/parallel.hpp"
#include "urnlab/rng.hpp"
#include "urnlab/spectral.hpp"
#include "urnlab/urn.hpp"

namespace urnlab {

constexpr std::size_t kMinDensitySamples = 10000;

// ── characteristic function ─────────────────────────────────────────────────

struct CharFnPoint {
  cplx t;
  cplx phi;
  double se = 0;
};

struct CharFnEstimate {
  std::vector<CharFnPoint> points;
  std::size_t n_samples = 0;
};

namespace detail {

inline cplx charfn_at(const std::vector<cplx>& samples, cplx t) {
  double re = 0, im = 0;
  for (const cplx& w : samples) {
    const double phase = t.real() * w.real() + t.imag() * w.imag();
    re += std::cos(phase);
    im += std::sin(phase);
  }
  const double n = double(samples.size());
  return cplx(re / n, im / n);
}

}  // namespace detail

inline CharFnEstimate estimate_charfn(const std::vector<cplx>& samples,
                                      const std::vector<cplx>& ts,
                                      int threads = 1) {
  require(samples.size() >= kMinDensitySamples, errc::too_few_samples,
          "characteristic-function estimate needs >= 10^4 samples");
  CharFnEstimate est;
  est.n_samples = samples.size();
  est.points.resize(ts.size());
  const double se = 1.0 / std::sqrt(double(samples.size()));
  parallel_for(ts.size(), threads, [&](std::size_t k) {
    est.points[k] = CharFnPoint{ts[k], detail::charfn_at(samples, ts[k]), se};
  });
  return est;
}

// Max of |φ̂| over the circle |t| = r (complex case, ≥ 64 angles) or over the
// two points ±r (real case).
inline double radial_sup(const std::vector<cplx>& samples, double r,
                         int n_angles, bool real_valued, int threads = 1) {
  require(samples.size() >= kMinDensitySamples, errc::too_few_samples,
          "radial_sup needs >= 10^4 samples");
  require(r > 0.0, errc::invalid_argument, "radius must be positive");
  std::vector<cplx> ts;
  if (real_valued) {
    ts = {cplx(r, 0), cplx(-r, 0)};
  } else {
    require(n_angles >= 64, errc::grid_too_coarse,
            "circle grid needs >= 64 angles");
    const double pi = std::acos(-1.0);
    for (int k = 0; k < n_angles; ++k) {
      const double a = 2.0 * pi * double(k) / double(n_angles);
      ts.emplace_back(r * std::cos(a), r * std::sin(a));
    }
  }
  std::vector<double> mags(ts.size(), 0.0);
  parallel_for(ts.size(), threads, [&](std::size_t k) {
    mags[k] = std::abs(detail::charfn_at(samples, ts[k]));
  });
  return *std::max_element(mags.begin(), mags.end());
}

// ── decay exponent ──────────────────────────────────────────────────────────

struct DecayEstimate {
  double rho = 0;          // fitted decay exponent (−slope of log ψ̂ vs log r)
  double ci_lo = 0;        // 95% confidence band
  double ci_hi = 0;
  std::size_t n_used = 0;  // radii surviving the 3·SE signal cut
  std::vector<double> rs;
  std::vector<double> psi;
};

inline DecayEstimate decay_exponent(const std::vector<cplx>& samples,
                                    const std::vector<double>& rs,
                                    int n_angles, bool real_valued,
                                    int threads = 1) {
  require(rs.size() >= 3, errc::invalid_argument, "need >= 3 radii");
  const double se = 1.0 / std::sqrt(double(samples.size()));
  DecayEstimate est;
  std::vector<double> xs, ys;
  for (double r : rs) {
    const double psi = radial_sup(samples, r, n_angles, real_valued, threads);
    est.rs.push_back(r);
    est.psi.push_back(psi);
    if (psi > 3.0 * se) {
      xs.push_back(std::log(r));
      ys.push_back(std::log(psi));
    }
  }
  require(xs.size() >= 3, errc::noise_dominated,
          "no usable radii above the noise floor");
  est.n_used = xs.size();
  const double n = double(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  require(sxx > 0.0, errc::invalid_argument, "radii must not be identical");
  const double slope = sxy / sxx;
  double rss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - my - slope * (xs[i] - mx);
    rss += e * e;
  }
  const double slope_se =
      xs.size() > 2 ? std::sqrt(rss / (n - 2.0) / sxx) : 0.0;
  est.rho = -slope;
  est.ci_lo = est.rho - 1.96 * slope_se;
  est.ci_hi = est.rho + 1.96 * slope_se;
  return est;
}

// ── kernel density estimates ────────────────────────────────────────────────

namespace detail {

inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * double(sorted.size() - 1);
  const std::size_t lo = std::size_t(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - double(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

inline double normal_kernel(double u) {
  static const double inv_sqrt_2pi = 0.3989422804014327;
  return inv_sqrt_2pi * std::exp(-0.5 * u * u);
}

}  // namespace detail

struct DensityEstimate1D {
  std::vector<double> grid;
  std::vector<double> values;
  double bandwidth = 0;
  double integral = 0;
};

// Silverman bandwidth: 0.9 · min(sd, IQR/1.34) · N^{−1/5}.
inline double silverman_bandwidth(const std::vector<double>& x) {
  require(x.size() >= 2, errc::too_few_samples, "need >= 2 samples");
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  double m = 0;
  for (double v : x) m += v;
  m /= double(x.size());
  double s2 = 0;
  for (double v : x) s2 += (v - m) * (v - m);
  const double sd = std::sqrt(s2 / double(x.size()));
  const double iqr = detail::quantile_sorted(sorted, 0.75) -
                     detail::quantile_sorted(sorted, 0.25);
  double scale = sd;
  if (iqr > 0.0) scale = std::min(scale, iqr / 1.34);
  require(scale > 0.0, errc::invalid_argument,
          "degenerate sample (zero spread)");
  return 0.9 * scale * std::pow(double(x.size()), -0.2);
}

inline DensityEstimate1D kde_1d(const std::vector<double>& x,
                                double bandwidth = 0.0,
                                std::size_t grid_size = 512,
                                int threads = 1) {
  require(x.size() >= kMinDensitySamples, errc::too_few_samples,
          "density estimate needs >= 10^4 samples");
  require(grid_size >= 16, errc::grid_too_coarse, "grid too coarse");
  DensityEstimate1D est;
  est.bandwidth = bandwidth > 0.0 ? bandwidth : silverman_bandwidth(x);
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  const double qlo = detail::quantile_sorted(sorted, 0.001);
  const double qhi = detail::quantile_sorted(sorted, 0.999);
  const double pad = 0.2 * std::max(qhi - qlo, est.bandwidth);
  const double lo = qlo - pad, hi = qhi + pad;
  est.grid.resize(grid_size);
  est.values.assign(grid_size, 0.0);
  const double h = est.bandwidth;
  for (std::size_t g = 0; g < grid_size; ++g)
    est.grid[g] = lo + (hi - lo) * double(g) / double(grid_size - 1);
  parallel_for(grid_size, threads, [&](std::size_t g) {
    double acc = 0;
    for (double v : x) acc += detail::normal_kernel((est.grid[g] - v) / h);
    est.values[g] = acc / (double(x.size()) * h);
  });
  double integral = 0;
  for (std::size_t g = 0; g + 1 < grid_size; ++g)
    integral += 0.5 * (est.values[g] + est.values[g + 1]) *
                (est.grid[g + 1] - est.grid[g]);
  est.integral = integral;
  require(std::abs(integral - 1.0) <= 0.02, errc::grid_too_coarse,
          "density estimate does not integrate to 1 within 2%");
  return est;
}

struct DensityEstimate2D {
  std::vector<double> xs;  // grid along the real axis
  std::vector<double> ys;  // grid along the imaginary axis
  std::vector<double> values;  // row-major: values[j * xs.size() + i]
  double bw_x = 0, bw_y = 0;
  double integral = 0;
};

inline DensityEstimate2D kde_2d(const std::vector<cplx>& w,
                                std::size_t grid_size = 128, int threads = 1) {
  require(w.size() >= kMinDensitySamples, errc::too_few_samples,
          "density estimate needs >= 10^4 samples");
  require(grid_size >= 16, errc::grid_too_coarse, "grid too coarse");
  DensityEstimate2D est;
  const double n = double(w.size());
  std::vector<double> re(w.size()), im(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    re[i] = w[i].real();
    im[i] = w[i].imag();
  }
  const auto axis = [&](std::vector<double>& vals, double& bw,
                        std::vector<double>& grid) {
    double m = 0;
    for (double v : vals) m += v;
    m /= n;
    double s2 = 0;
    for (double v : vals) s2 += (v - m) * (v - m);
    const double sd = std::sqrt(s2 / n);
    require(sd > 0.0, errc::invalid_argument,
            "degenerate sample (zero spread along an axis)");
    bw = sd * std::pow(n, -1.0 / 6.0);
    std::vector<double> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    const double qlo = detail::quantile_sorted(sorted, 0.001);
    const double qhi = detail::quantile_sorted(sorted, 0.999);
    const double pad = 0.2 * std::max(qhi - qlo, bw);
    grid.resize(grid_size);
    for (std::size_t g = 0; g < grid_size; ++g)
      grid[g] = qlo - pad +
                (qhi - qlo + 2 * pad) * double(g) / double(grid_size - 1);
  };
  axis(re, est.bw_x, est.xs);
  axis(im, est.bw_y, est.ys);
  est.values.assign(grid_size * grid_size, 0.0);
  parallel_for(grid_size, threads, [&](std::size_t j) {
    for (std::size_t i = 0; i < grid_size; ++i) {
      double acc = 0;
      for (std::size_t k = 0; k < w.size(); ++k)
        acc += detail::normal_kernel((est.xs[i] - re[k]) / est.bw_x) *
               detail::normal_kernel((est.ys[j] - im[k]) / est.bw_y);
      est.values[j * grid_size + i] = acc / (n * est.bw_x * est.bw_y);
    }
  });
  const double dx = est.xs[1] - est.xs[0];
  const double dy = est.ys[1] - est.ys[0];
  double integral = 0;
  for (double v : est.values) integral += v * dx * dy;
  est.integral = integral;
  require(std::abs(integral - 1.0) <= 0.02, errc::grid_too_coarse,
          "density estimate does not integrate to 1 within 2%");
  return est;
}

// Direct kernel-sum evaluation (defined everywhere, not just on the grid).
inline double kde_eval_1d(const std::vector<double>& x, double bandwidth,
                          double at) {
  double acc = 0;
  for (double v : x) acc += detail::normal_kernel((at - v) / bandwidth);
  return acc / (double(x.size()) * bandwidth);
}

inline double kde_eval_2d(const std::vector<cplx>& w, double bw_x, double bw_y,
                          cplx at) {
  double acc = 0;
  for (const cplx& v : w)
    acc += detail::normal_kernel((at.real() - v.real()) / bw_x) *
           detail::normal_kernel((at.imag() - v.imag()) / bw_y);
  return acc / (double(w.size()) * bw_x * bw_y);
}

// ── support closure ─────────────────────────────────────────────────────────

// With equal weights V = (1/γ,…,1/γ) and a common point z, the dislocation
// combiner collapses to γ^{1−λ/S}·z (all ρ factors are 1 when the activities
// coincide).
inline cplx homogeneous_combiner_point(long long gamma, cplx lambda, double S,
                                       cplx z) {
  require(gamma >= 1, errc::invalid_argument, "need >= 1 slot");
  return std::exp((1.0 - lambda / S) * std::log(double(gamma))) * z;
}

struct SupportReport {
  int n_probes = 0;
  int n_pass = 0;
  double fraction = 0;
  double threshold = 0;  // relative to the per-colour density peak
};

// Diagnostic for the closure of Supp(W) under the dislocation combiner: probe
// points drawn from the colour pools are mapped through Σ ρ_{c,i}·V_k^{λ/S}·z
// and tested against the target colour's density estimate.
inline SupportReport support_closure_check(
    const std::vector<std::vector<cplx>>& pools, const AtomicBasis& basis,
    const JordanBlock& blk, int n_probes, std::uint64_t seed,
    double rel_threshold = 1e-4, int threads = 1) {
  require(blk.klass == EigenClass::large, errc::block_not_large,
          "support check defined for large blocks");
  const int d = int(basis.theta.size());
  require(int(pools.size()) == d, errc::size_mismatch,
          "one pool per colour required");
  require(n_probes >= 1, errc::invalid_argument, "need >= 1 probe");
  const bool real_valued = std::abs(blk.lambda.imag()) < 1e-12;
  const double S = double(basis.S);

  // per-colour density context: bandwidths plus the on-sample peak estimate
  std::vector<double> bw_x(std::size_t(d), 0.0), bw_y(std::size_t(d), 0.0),
      peak(std::size_t(d), 0.0);
  std::vector<std::vector<double>> reals(static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c) {
    const auto& pool = pools[std::size_t(c)];
    require(pool.size() >= kMinDensitySamples, errc::too_few_samples,
            "support check needs >= 10^4 samples per colour");
    if (real_valued) {
      reals[std::size_t(c)].resize(pool.size());
      for (std::size_t i = 0; i < pool.size(); ++i)
        reals[std::size_t(c)][i] = pool[i].real();
      bw_x[std::size_t(c)] = silverman_bandwidth(reals[std::size_t(c)]);
    } else {
      const double n = double(pool.size());
      double mr = 0, mi = 0;
      for (const cplx& v : pool) {
        mr += v.real();
        mi += v.imag();
      }
      mr /= n;
      mi /= n;
      double sr = 0, si = 0;
      for (const cplx& v : pool) {
        sr += (v.real() - mr) * (v.real() - mr);
        si += (v.imag() - mi) * (v.imag() - mi);
      }
      bw_x[std::size_t(c)] = std::sqrt(sr / n) * std::pow(n, -1.0 / 6.0);
      bw_y[std::size_t(c)] = std::sqrt(si / n) * std::pow(n, -1.0 / 6.0);
      require(bw_x[std::size_t(c)] > 0 && bw_y[std::size_t(c)] > 0,
              errc::invalid_argument, "degenerate pool");
    }
    // peak over a thinned subset of the pool itself (density maxima live on
    // high-density sample points)
    const std::size_t stride = std::max<std::size_t>(1, pool.size() / 256);
    for (std::size_t i = 0; i < pool.size(); i += stride) {
      const double f =
          real_valued
              ? kde_eval_1d(reals[std::size_t(c)], bw_x[std::size_t(c)],
                            pool[i].real())
              : kde_eval_2d(pool, bw_x[std::size_t(c)], bw_y[std::size_t(c)],
                            pool[i]);
      peak[std::size_t(c)] = std::max(peak[std::size_t(c)], f);
    }
  }

  std::vector<int> hit(std::size_t(n_probes), 0);
  parallel_for(std::size_t(n_probes), threads, [&](std::size_t p) {
    RngStream rng(seed, std::uint32_t(p), role::probe);
    const int c = int(p) % d;
    const detail::MapPlan plan = detail::map_plan(basis, blk, c);
    const std::size_t slots = plan.slot_colour.size();
    std::vector<double> g(slots);
    double gsum = 0;
    for (std::size_t k = 0; k < slots; ++k) {
      g[k] = rng.gamma(plan.dirichlet[k]);
      gsum += g[k];
    }
    cplx y = 0;
    for (std::size_t k = 0; k < slots; ++k) {
      const auto& src = pools[std::size_t(plan.slot_colour[k])];
      const cplx z = src[std::size_t(rng.below(src.size()))];
      const double v = g[k] / gsum;
      y += std::exp((blk.lambda / S) * std::log(v)) * plan.rho[k] * z;
    }
    const double f =
        real_valued
            ? kde_eval_1d(reals[std::size_t(c)], bw_x[std::size_t(c)], y.real())
            : kde_eval_2d(pools[std::size_t(c)], bw_x[std::size_t(c)],
                          bw_y[std::size_t(c)], y);
    if (f > rel_threshold * peak[std::size_t(c)]) hit[p] = 1;
  });
  SupportReport rep;
  rep.n_probes = n_probes;
  rep.threshold = rel_threshold;
  for (int h : hit) rep.n_pass += h;
  rep.fraction = double(rep.n_pass) / double(n_probes);
  return rep;
}

}  // namespace urnlab
