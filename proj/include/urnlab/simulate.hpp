// ── urnlab/simulate.hpp ─────────────────────────────────────────────────────
//
// Discrete-time simulation, the continuous-time embedding, and estimators of
// the limit variables.
//
// Discrete time: draw a ball uniformly, add the drawn colour's replacement
// row.  Continuous time: every ball carries an independent rate-1
// exponential clock; between rings the composition is frozen, so the jump
// chain of the CT process is exactly the DT chain and inter-ring time k is
// Exponential(total ball count before ring k).  Colour draws and clock draws
// come from separate streams, which makes the CT jump chain reproduce the DT
// chain draw-for-draw under a shared seed.
//
// Limit-variable estimators for a Jordan block (λ, ν) with dual row u:
//
//   DT:  Ŵ = ν! · Sᵛ · ⟨u, U(n)⟩ / (F_n · (ln n)^ν)
//        F_n = Γ(N₀/S)Γ(n + (N₀+λ)/S) / (Γ((N₀+λ)/S)Γ(n + N₀/S)),  N₀ = |α|₁
//   CT:  Ŵ = ν! · G(N₀) · ⟨u, U(τ_n)⟩ / (τ_nᵛ e^{λτ_n})
//        G(N₀) = Γ((N₀+λ)/S) / Γ(N₀/S)
//
// F_n is the exact compensator of the projection martingale, F_n ≈
// G(N₀)⁻¹·n^{λ/S}; so both estimators are calibrated to the same scale and
// at ν = 0 the DT estimator is exactly unbiased: E Ŵ = ⟨u, α⟩.  With this
// calibration, starting from the atomic composition ẽ_c,
//
//   E Ŵ^DT = ⟨u, ẽ_c⟩    and    E Ŵ^CT = G(θ_c) · ⟨u, ẽ_c⟩,
//
// and the two estimators are linked in law by Ŵ^CT = Sᵛ ξ^{λ/S} Ŵ^DT with an
// independent ξ ~ Gamma(θ_c/S).  Complex powers always have a positive real
// base and are defined as exp(z·ln x).
//
// The total-count martingale gives ξ̂ = n·e^{−S·τ_n} → Gamma(N₀/S).
//
// Also here: the diagonal (Pólya–Eggenberger) urn and the forest
// decomposition, which rebuilds U(n) in law as a sum of independent atomic
// runs whose internal times come from a diagonal urn on the initial atoms.
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
#include "urnlab/spectral.hpp"
#include "urnlab/urn.hpp"

namespace urnlab {

enum class TimeMode { dt, ct };

struct TrajectoryDT {
  std::vector<long long> initial;
  std::vector<long long> state;  // U(n)
  long long n = 0;
  long long S = 0;
  std::vector<std::pair<long long, std::vector<long long>>> checkpoints;
};

struct TrajectoryCT {
  TrajectoryDT jumps;
  std::vector<double> tau;  // ring times, increasing
  double tau_n() const { return tau.empty() ? 0.0 : tau.back(); }
};

// Single draw-and-replace step; returns the colour drawn.
inline int step_dt(const UrnSpec& u, std::vector<long long>& state,
                   RngStream& rng) {
  long long total = 0;
  for (long long x : state) total += x;
  require(total > 0, errc::invalid_argument, "empty urn");
  long long pick = (long long)rng.below(std::uint64_t(total));
  int colour = 0;
  for (; colour < u.d; ++colour) {
    if (pick < state[std::size_t(colour)]) break;
    pick -= state[std::size_t(colour)];
  }
  for (int i = 0; i < u.d; ++i) {
    state[std::size_t(i)] += u.at(colour, i);
    require(state[std::size_t(i)] >= 0, errc::tenability_violation,
            "coordinate " + std::to_string(i) + " went negative");
  }
  return colour;
}

inline TrajectoryDT run_dt(const UrnSpec& u, const std::vector<long long>& alpha,
                           long long steps, RngStream& rng,
                           long long checkpoint_every = 0) {
  require(steps >= 0, errc::invalid_argument, "negative step count");
  require(alpha.size() == std::size_t(u.d), errc::invalid_argument,
          "initial composition has wrong length");
  TrajectoryDT t;
  t.initial = alpha;
  t.state = alpha;
  t.n = steps;
  long long S = 0;
  for (int i = 0; i < u.d; ++i) S += u.at(0, i);
  t.S = S;
  for (long long k = 0; k < steps; ++k) {
    step_dt(u, t.state, rng);
    if (checkpoint_every > 0 && (k + 1) % checkpoint_every == 0)
      t.checkpoints.emplace_back(k + 1, t.state);
  }
  return t;
}

inline TrajectoryDT run_dt(const UrnSpec& u, long long steps, RngStream& rng) {
  return run_dt(u, u.alpha, steps, rng);
}

inline TrajectoryCT run_ct(const UrnSpec& u, const std::vector<long long>& alpha,
                           long long rings, RngStream& colour_rng,
                           RngStream& clock_rng) {
  require(rings >= 0, errc::invalid_argument, "negative ring count");
  TrajectoryCT t;
  t.jumps.initial = alpha;
  t.jumps.state = alpha;
  t.jumps.n = rings;
  long long S = 0;
  for (int i = 0; i < u.d; ++i) S += u.at(0, i);
  t.jumps.S = S;
  t.tau.reserve(std::size_t(rings));
  long long total = 0;
  for (long long x : alpha) total += x;
  double now = 0.0;
  for (long long k = 0; k < rings; ++k) {
    now += clock_rng.exponential(double(total));
    t.tau.push_back(now);
    step_dt(u, t.jumps.state, colour_rng);
    total += S;
  }
  return t;
}

inline TrajectoryCT run_ct(const UrnSpec& u, long long rings,
                           RngStream& colour_rng, RngStream& clock_rng) {
  return run_ct(u, u.alpha, rings, colour_rng, clock_rng);
}

namespace detail {

inline double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Exact compensator of the DT projection martingale (see header comment).
inline cplx dt_compensator(long long n, double n0_over_s, cplx lambda_over_s) {
  const cplx a(n0_over_s, 0.0);
  const cplx b = a + lambda_over_s;
  return std::exp(log_gamma(a) + log_gamma(cplx(double(n), 0.0) + b) -
                  log_gamma(b) - log_gamma(cplx(double(n), 0.0) + a));
}

}  // namespace detail

inline cplx extract_w(const TrajectoryDT& t, const JordanBlock& blk) {
  require(blk.klass != EigenClass::small, errc::block_not_large,
          "limit extraction needs Re(lambda)/S > 1/2");
  require(t.n >= (blk.nu >= 1 ? 2 : 1), errc::invalid_argument,
          "too few steps for extraction");
  long long n0 = 0;
  for (long long x : t.initial) n0 += x;
  const double S = double(t.S);
  const cplx mu = blk.lambda / S;
  const cplx comp = detail::dt_compensator(t.n, double(n0) / S, mu);
  cplx num = block_coefficient(blk, t.state);
  num *= detail::factorial(blk.nu) * std::pow(S, double(blk.nu));
  cplx den = comp;
  if (blk.nu >= 1) den *= std::pow(cplx(std::log(double(t.n)), 0.0), blk.nu);
  return num / den;
}

inline cplx extract_w(const TrajectoryCT& t, const JordanBlock& blk) {
  require(blk.klass != EigenClass::small, errc::block_not_large,
          "limit extraction needs Re(lambda)/S > 1/2");
  const double tau = t.tau_n();
  require(tau > 0.0, errc::invalid_argument, "extraction needs tau > 0");
  long long n0 = 0;
  for (long long x : t.jumps.initial) n0 += x;
  const double S = double(t.jumps.S);
  const cplx g = gamma_ratio(double(n0) / S, blk.lambda / S);
  cplx num = block_coefficient(blk, t.jumps.state);
  num *= detail::factorial(blk.nu) * g;
  cplx den = std::exp(blk.lambda * tau);
  if (blk.nu >= 1) den *= std::pow(cplx(tau, 0.0), blk.nu);
  return num / den;
}

inline double extract_xi(const TrajectoryCT& t) {
  require(t.jumps.n >= 1, errc::invalid_argument, "extract_xi needs n >= 1");
  return double(t.jumps.n) * std::exp(-double(t.jumps.S) * t.tau_n());
}

// ── batches ─────────────────────────────────────────────────────────────────

struct WSampleSet {
  TimeMode mode = TimeMode::dt;
  int colour = -1;                // atomic start colour, or -1 for custom α
  std::vector<long long> start;   // the initial composition used
  cplx lambda;
  int nu = 0;
  long long n = 0;
  std::uint64_t seed = 0;
  std::vector<cplx> w;
  std::vector<double> xi;  // CT only
};

inline WSampleSet sample_w_batch(const UrnSpec& u, const JordanBlock& blk,
                                 TimeMode mode,
                                 const std::vector<long long>& alpha,
                                 long long steps, int replicas,
                                 std::uint64_t seed, int threads,
                                 int colour_tag = -1,
                                 std::uint32_t replica_base = 0) {
  require(replicas >= 1, errc::invalid_argument, "need at least one replica");
  WSampleSet set;
  set.mode = mode;
  set.colour = colour_tag;
  set.start = alpha;
  set.lambda = blk.lambda;
  set.nu = blk.nu;
  set.n = steps;
  set.seed = seed;
  set.w.resize(std::size_t(replicas));
  if (mode == TimeMode::ct) set.xi.resize(std::size_t(replicas));
  parallel_for(std::size_t(replicas), threads, [&](std::size_t r) {
    const std::uint32_t rep = replica_base + std::uint32_t(r);
    RngStream colour_rng(seed, rep, role::colour);
    if (mode == TimeMode::dt) {
      TrajectoryDT t = run_dt(u, alpha, steps, colour_rng);
      set.w[r] = extract_w(t, blk);
    } else {
      RngStream clock_rng(seed, rep, role::clock);
      TrajectoryCT t = run_ct(u, alpha, steps, colour_rng, clock_rng);
      set.w[r] = extract_w(t, blk);
      set.xi[r] = extract_xi(t);
    }
  });
  return set;
}

// One batch per atomic colour (the d building-block starts ẽ_c).  Batches of
// different colours use disjoint replica ranges so they are independent.
inline std::vector<WSampleSet> sample_w_atomic(const UrnSpec& u,
                                               const AtomicBasis& basis,
                                               const JordanBlock& blk,
                                               TimeMode mode, long long steps,
                                               int replicas, std::uint64_t seed,
                                               int threads) {
  std::vector<WSampleSet> out;
  for (int c = 0; c < u.d; ++c) {
    out.push_back(sample_w_batch(u, blk, mode, basis.atomic_composition(c),
                                 steps, replicas, seed, threads, c,
                                 std::uint32_t(c) * std::uint32_t(replicas)));
  }
  return out;
}

// ── diagonal (Pólya–Eggenberger) urn ────────────────────────────────────────

inline std::vector<long long> pe_counts(const std::vector<long long>& nu_vec,
                                        long long K, long long n,
                                        RngStream& rng) {
  require(nu_vec.size() >= 2, errc::invalid_argument,
          "diagonal urn needs >= 2 colours");
  require(K >= 1, errc::invalid_argument, "diagonal urn needs K >= 1");
  require(n >= 0, errc::invalid_argument, "negative step count");
  std::vector<long long> D = nu_vec;
  long long total = 0;
  for (long long v : D) {
    require(v >= 1, errc::invalid_argument, "diagonal urn needs nu_i >= 1");
    total += v;
  }
  for (long long k = 0; k < n; ++k) {
    long long pick = (long long)rng.below(std::uint64_t(total));
    std::size_t col = 0;
    for (; col < D.size(); ++col) {
      if (pick < D[col]) break;
      pick -= D[col];
    }
    D[col] += K;
    total += K;
  }
  return D;
}

// Renormalized composition D(n)/(nK); the limit is Dirichlet(ν₁/K, …, ν_p/K).
inline std::vector<double> simulate_polya_eggenberger(
    const std::vector<long long>& nu_vec, long long K, long long n,
    RngStream& rng) {
  require(n >= 1, errc::invalid_argument, "diagonal urn needs n >= 1");
  const std::vector<long long> D = pe_counts(nu_vec, K, n, rng);
  std::vector<double> out(D.size());
  for (std::size_t i = 0; i < D.size(); ++i)
    out[i] = double(D[i]) / (double(n) * double(K));
  return out;
}

// ── forest decomposition ────────────────────────────────────────────────────
//
// U_α(n) in law equals a sum of independent atomic runs: the initial
// composition splits into β_d atoms; a diagonal urn on the atoms' ball counts
// (each draw adds S to the drawn atom's count) decides how the n draws
// distribute; atom p of colour c then runs an independent atomic urn from
// ẽ_c for S_p(n) = (D_p(n) − θ_c)/S steps.
//
inline std::vector<long long> sample_forest_decomposition(
    const UrnSpec& u, const AtomicBasis& basis, long long n,
    std::uint64_t seed, std::uint32_t replica) {
  require(n >= 0, errc::invalid_argument, "negative step count");
  const long long atoms = basis.beta_total();
  require(atoms >= 1, errc::invalid_argument, "no initial atoms");
  std::vector<int> atom_colour;
  std::vector<long long> weights;
  for (int c = 0; c < u.d; ++c)
    for (long long k = 0; k < basis.alpha_atoms[std::size_t(c)]; ++k) {
      atom_colour.push_back(c);
      weights.push_back(basis.theta[std::size_t(c)]);
    }
  // degree process: a draw lands in atom p with probability ∝ D_p, adds S
  RngStream forest_rng(seed, replica, role::forest);
  std::vector<long long> D = weights;
  long long total = 0;
  for (long long v : D) total += v;
  for (long long k = 0; k < n; ++k) {
    long long pick = (long long)forest_rng.below(std::uint64_t(total));
    std::size_t p = 0;
    for (; p < D.size(); ++p) {
      if (pick < D[p]) break;
      pick -= D[p];
    }
    D[p] += basis.S;
    total += basis.S;
  }
  std::vector<long long> out(std::size_t(u.d), 0);
  for (std::size_t p = 0; p < D.size(); ++p) {
    const long long inner = (D[p] - weights[p]) / basis.S;
    require(inner * basis.S == D[p] - weights[p], errc::invalid_argument,
            "internal time not divisible by S");
    RngStream sub_rng(seed, replica, role::subtree, std::uint32_t(p));
    TrajectoryDT t = run_dt(u, basis.atomic_composition(atom_colour[p]), inner,
                            sub_rng);
    for (int i = 0; i < u.d; ++i) out[std::size_t(i)] += t.state[std::size_t(i)];
  }
  return out;
}

}  // namespace urnlab
