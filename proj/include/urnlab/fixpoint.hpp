// ── urnlab/fixpoint.hpp ─────────────────────────────────────────────────────
//
// The smoothing (contraction) maps on empirical laws, one pool of samples
// per atomic colour.  With n_{c,i} = ã_{c,i} + δ_{c,i} copies per colour i:
//
//   CT:  (K μ)_c = law of  U^{λ/θ_c} · Σ_i Σ_k ρ_{c,i} · x_i^{(k)},   U uniform
//   DT:  (K μ)_c = law of  Σ_i Σ_k (V_k)^{λ/S} · ρ_{c,i} · x_i^{(k)},
//        V ~ Dirichlet(π^{(c)}),  π over the γ^{(c)} slots with weight θ_i/S
//
// where the x are drawn with replacement from the input pools.  The slot
// factor ρ_{c,i} = G(θ_c)/G(θ_i), with G(x) = Γ((x+λ)/S)/Γ(x/S), transports
// the un-calibrated fixed-point system onto the calibrated variables that
// simulate.hpp estimates; whenever all θ_i coincide, ρ ≡ 1 and the maps
// reduce to their plain form.  Both maps then preserve the calibrated mean
// vector exactly in expectation (the Γ-functional equation makes the mean
// map's factor (λ+θ_c)/θ_c cancel against G(S+θ_c)/G(θ_c)).
//
// The fixed-point law of the DT map is the law of (Ŵ^DT_{ẽ_1},…,Ŵ^DT_{ẽ_d});
// iterate_to_fixpoint runs the map until the step distance reaches the
// sampling noise floor (estimated by splitting a pool into halves).
//
// Distances: real-λ pools use Wasserstein-1 via sorted coupling; complex
// pools use the energy metric on a deterministic subsample.
//
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "urnlab/distributions.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/parallel.hpp"
#include "urnlab/rng.hpp"
#include "urnlab/simulate.hpp"
#include "urnlab/spectral.hpp"
#include "urnlab/stats.hpp"
#include "urnlab/urn.hpp"

namespace urnlab {

struct EmpiricalLaw {
  bool real_valued = false;
  std::vector<std::vector<cplx>> pools;  // one per atomic colour
  std::vector<cplx> target_means;        // means the iteration must preserve

  int colours() const { return int(pools.size()); }
  cplx pool_mean(int c) const {
    const auto& p = pools[std::size_t(c)];
    require(!p.empty(), errc::empty_pool, "empty sample pool");
    cplx m = 0;
    for (const cplx& v : p) m += v;
    return m / double(p.size());
  }
  double pool_sd(int c) const {
    const auto& p = pools[std::size_t(c)];
    const cplx m = pool_mean(c);
    double s2 = 0;
    for (const cplx& v : p) s2 += std::norm(v - m);
    return std::sqrt(s2 / double(p.size()));
  }
};

inline EmpiricalLaw make_pointmass_law(const std::vector<cplx>& means,
                                       std::size_t size, bool real_valued) {
  require(size >= 1, errc::invalid_argument, "pool size must be >= 1");
  EmpiricalLaw law;
  law.real_valued = real_valued;
  law.target_means = means;
  for (const cplx& m : means)
    law.pools.emplace_back(size, real_valued ? cplx(m.real(), 0.0) : m);
  return law;
}

// Gaussian seeding around the exact means; variances are E|W − EW|².
inline EmpiricalLaw make_gaussian_law(const std::vector<cplx>& means,
                                      const std::vector<double>& variances,
                                      std::size_t size, std::uint64_t seed,
                                      std::uint32_t replica, bool real_valued) {
  require(means.size() == variances.size(), errc::size_mismatch,
          "means and variances must align");
  require(size >= 1, errc::invalid_argument, "pool size must be >= 1");
  EmpiricalLaw law;
  law.real_valued = real_valued;
  law.target_means = means;
  for (std::size_t c = 0; c < means.size(); ++c) {
    require(variances[c] >= 0.0, errc::invalid_argument,
            "negative variance requested");
    RngStream rng(seed, replica, role::gauss, std::uint32_t(c));
    std::vector<cplx> pool(size);
    for (std::size_t j = 0; j < size; ++j) {
      if (real_valued) {
        pool[j] = cplx(means[c].real() + std::sqrt(variances[c]) * rng.normal(),
                       0.0);
      } else {
        const double h = std::sqrt(variances[c] / 2.0);
        pool[j] = means[c] + cplx(h * rng.normal(), h * rng.normal());
      }
    }
    law.pools.push_back(std::move(pool));
  }
  return law;
}

namespace detail {

struct MapPlan {
  std::vector<int> slot_colour;   // colour of each of the γ^{(c)} slots
  std::vector<double> dirichlet;  // θ_i/S per slot (DT weights)
  std::vector<cplx> rho;          // calibration factor per slot
};

inline MapPlan map_plan(const AtomicBasis& basis, const JordanBlock& blk,
                        int c) {
  MapPlan plan;
  const double S = double(basis.S);
  const int d = int(basis.theta.size());
  const cplx gc = gamma_ratio(double(basis.theta[std::size_t(c)]) / S,
                              blk.lambda / S);
  for (int i = 0; i < d; ++i) {
    const long long n_ci = basis.a_tilde(c, i) + (c == i ? 1 : 0);
    const cplx gi =
        gamma_ratio(double(basis.theta[std::size_t(i)]) / S, blk.lambda / S);
    for (long long k = 0; k < n_ci; ++k) {
      plan.slot_colour.push_back(i);
      plan.dirichlet.push_back(double(basis.theta[std::size_t(i)]) / S);
      plan.rho.push_back(gc / gi);
    }
  }
  require(!plan.slot_colour.empty(), errc::invalid_argument,
          "dislocation produces no slots");
  return plan;
}

}  // namespace detail

inline EmpiricalLaw smoothing_map(const EmpiricalLaw& law,
                                  const AtomicBasis& basis,
                                  const JordanBlock& blk, TimeMode mode,
                                  std::size_t out_size, std::uint64_t seed,
                                  std::uint32_t stage, int threads) {
  require(blk.klass == EigenClass::large, errc::block_not_large,
          "smoothing maps defined for large blocks");
  const int d = int(basis.theta.size());
  require(law.colours() == d, errc::size_mismatch,
          "law colour count does not match the scheme");
  for (int c = 0; c < d; ++c)
    require(!law.pools[std::size_t(c)].empty(), errc::empty_pool,
            "input pool for colour " + std::to_string(c) + " is empty");
  require(out_size >= 1, errc::invalid_argument, "output size must be >= 1");
  require(out_size <= (std::size_t(1) << 22), errc::invalid_argument,
          "output size exceeds the per-sample stream index space");

  EmpiricalLaw out;
  out.real_valued = law.real_valued && std::abs(blk.lambda.imag()) < 1e-12;
  out.target_means = law.target_means;
  out.pools.assign(std::size_t(d), {});

  const double S = double(basis.S);
  for (int c = 0; c < d; ++c) {
    const detail::MapPlan plan = detail::map_plan(basis, blk, c);
    const std::size_t slots = plan.slot_colour.size();
    std::vector<cplx>& pool = out.pools[std::size_t(c)];
    pool.resize(out_size);
    parallel_for(out_size, threads, [&](std::size_t j) {
      RngStream rng(seed, stage, role::pool,
                    std::uint32_t(c) | (std::uint32_t(j) << 6));
      cplx acc = 0;
      if (mode == TimeMode::dt) {
        // Dirichlet(π) via normalized Gammas, weight V^{λ/S} per slot
        std::vector<double> g(slots);
        double gsum = 0;
        for (std::size_t k = 0; k < slots; ++k) {
          g[k] = rng.gamma(plan.dirichlet[k]);
          gsum += g[k];
        }
        for (std::size_t k = 0; k < slots; ++k) {
          const auto& src = law.pools[std::size_t(plan.slot_colour[k])];
          const cplx x = src[std::size_t(rng.below(src.size()))];
          const double v = g[k] / gsum;
          const cplx w = std::exp((blk.lambda / S) * std::log(v));
          acc += w * plan.rho[k] * x;
        }
      } else {
        for (std::size_t k = 0; k < slots; ++k) {
          const auto& src = law.pools[std::size_t(plan.slot_colour[k])];
          const cplx x = src[std::size_t(rng.below(src.size()))];
          acc += plan.rho[k] * x;
        }
        const double u = rng.u01_open_left();
        acc *= std::exp((blk.lambda / double(basis.theta[std::size_t(c)])) *
                        std::log(u));
      }
      pool[j] = out.real_valued ? cplx(acc.real(), 0.0) : acc;
    });
  }
  return out;
}

inline EmpiricalLaw smoothing_map_dt(const EmpiricalLaw& law,
                                     const AtomicBasis& basis,
                                     const JordanBlock& blk,
                                     std::size_t out_size, std::uint64_t seed,
                                     std::uint32_t stage, int threads = 1) {
  return smoothing_map(law, basis, blk, TimeMode::dt, out_size, seed, stage,
                       threads);
}

inline EmpiricalLaw smoothing_map_ct(const EmpiricalLaw& law,
                                     const AtomicBasis& basis,
                                     const JordanBlock& blk,
                                     std::size_t out_size, std::uint64_t seed,
                                     std::uint32_t stage, int threads = 1) {
  return smoothing_map(law, basis, blk, TimeMode::ct, out_size, seed, stage,
                       threads);
}

// ── distances and iteration ─────────────────────────────────────────────────

struct DistanceReport {
  std::vector<double> per_colour;
  double max = 0;
};

inline DistanceReport empirical_distance(const EmpiricalLaw& a,
                                         const EmpiricalLaw& b,
                                         std::uint64_t seed,
                                         std::uint32_t replica,
                                         std::size_t energy_cap = 2048) {
  require(a.colours() == b.colours(), errc::size_mismatch,
          "laws have different colour counts");
  DistanceReport rep;
  for (int c = 0; c < a.colours(); ++c) {
    const auto& pa = a.pools[std::size_t(c)];
    const auto& pb = b.pools[std::size_t(c)];
    require(!pa.empty() && !pb.empty(), errc::empty_pool, "empty sample pool");
    double dist = 0;
    if (a.real_valued && b.real_valued) {
      require(pa.size() == pb.size(), errc::size_mismatch,
              "Wasserstein distance needs equal pool sizes");
      std::vector<double> xa(pa.size()), xb(pb.size());
      for (std::size_t i = 0; i < pa.size(); ++i) xa[i] = pa[i].real();
      for (std::size_t i = 0; i < pb.size(); ++i) xb[i] = pb[i].real();
      dist = wasserstein1(std::move(xa), std::move(xb));
    } else {
      RngStream rng(seed, replica, role::probe, std::uint32_t(c));
      const std::vector<cplx> sa = detail::subsample(pa, energy_cap, rng);
      const std::vector<cplx> sb = detail::subsample(pb, energy_cap, rng);
      dist = energy_distance(sa, sb);
    }
    rep.per_colour.push_back(dist);
    rep.max = std::max(rep.max, dist);
  }
  return rep;
}

struct FixpointOptions {
  TimeMode mode = TimeMode::dt;
  int max_iter = 30;
  std::size_t out_size = 100000;
  double noise_factor = 1.0;  // stop when step distance <= factor · floor
  std::uint64_t seed = 1;
  int threads = 1;
  double drift_sigmas = 5.0;
};

struct FixpointTraceRow {
  int iter = 0;
  std::vector<double> per_colour;
  double max = 0;
  double noise_floor = 0;
};

struct FixpointResult {
  EmpiricalLaw law;
  std::vector<FixpointTraceRow> trace;
  bool converged = false;
  int iterations = 0;
};

namespace detail {

inline EmpiricalLaw half_split(const EmpiricalLaw& law, bool first) {
  EmpiricalLaw out;
  out.real_valued = law.real_valued;
  out.target_means = law.target_means;
  for (const auto& p : law.pools) {
    const std::size_t h = p.size() / 2;
    out.pools.emplace_back(first ? std::vector<cplx>(p.begin(), p.begin() + h)
                                 : std::vector<cplx>(p.begin() + h,
                                                     p.begin() + 2 * h));
  }
  return out;
}

}  // namespace detail

inline FixpointResult iterate_to_fixpoint(const EmpiricalLaw& initial,
                                          const AtomicBasis& basis,
                                          const JordanBlock& blk,
                                          const FixpointOptions& opt) {
  require(opt.max_iter >= 0, errc::invalid_argument, "negative max_iter");
  FixpointResult res;
  res.law = initial;
  for (int it = 1; it <= opt.max_iter; ++it) {
    EmpiricalLaw next =
        smoothing_map(res.law, basis, blk, opt.mode, opt.out_size, opt.seed,
                      std::uint32_t(it), opt.threads);
    // mean preservation guard on the raw map output: with a mean-correct
    // input the output mean error is pure sampling noise of scale SE, so a
    // larger gap signals a bug or a wrong initialization
    for (int c = 0; c < next.colours(); ++c) {
      const cplx m = next.pool_mean(c);
      const double se =
          next.pool_sd(c) / std::sqrt(double(next.pools[std::size_t(c)].size()));
      const double gap = std::abs(m - next.target_means[std::size_t(c)]);
      require(gap <= opt.drift_sigmas * std::max(se, 1e-12), errc::mean_drift,
              "pool mean for colour " + std::to_string(c) + " drifted " +
                  std::to_string(gap) + " (" + std::to_string(se) +
                  " per-sample SE) from its target");
    }
    // project back onto the fixed-mean fibre.  The map is a contraction only
    // among laws sharing the target means; transverse to that fibre the mean
    // transfer matrix diag(θ_c/(θ_c+λ))·(ã+δ) has spectral radius above one,
    // so unprojected empirical mean noise would be amplified geometrically.
    for (int c = 0; c < next.colours(); ++c) {
      const cplx shift = next.target_means[std::size_t(c)] - next.pool_mean(c);
      const cplx use = next.real_valued ? cplx(shift.real(), 0.0) : shift;
      for (cplx& v : next.pools[std::size_t(c)]) v += use;
    }
    const DistanceReport step =
        empirical_distance(res.law, next, opt.seed, std::uint32_t(1000 + it));
    const DistanceReport floor =
        empirical_distance(detail::half_split(next, true),
                           detail::half_split(next, false), opt.seed,
                           std::uint32_t(2000 + it));
    res.law = std::move(next);
    res.iterations = it;
    res.trace.push_back(
        FixpointTraceRow{it, step.per_colour, step.max, floor.max});
    if (step.max <= opt.noise_factor * floor.max) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace urnlab
