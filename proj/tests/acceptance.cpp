// ── acceptance gate ─────────────────────────────────────────────────────────
//
// Standalone binary (no test framework).  Runs thirteen end-to-end criteria
// against the library and the CLI and prints exactly one PASS/FAIL line per
// criterion, with an indented reason on failure.  Tolerances and seeds are
// fixed below; every run is deterministic.
//
//   usage: urnlab_acceptance <path-to-cli-binary>
//
// Exit code: 0 iff all criteria pass.
//
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "urnlab/density.hpp"
#include "urnlab/distributions.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/fixpoint.hpp"
#include "urnlab/io.hpp"
#include "urnlab/moments.hpp"
#include "urnlab/rng.hpp"
#include "urnlab/simulate.hpp"
#include "urnlab/spectral.hpp"
#include "urnlab/stats.hpp"
#include "urnlab/urn.hpp"
#include "urnlab/verify.hpp"

#include "oracles.hpp"

namespace {

using urnlab::cplx;

int pick_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return int(std::min(8u, std::max(1u, hc)));
}

// reference urns used throughout
urnlab::UrnSpec three_colour() {
  return urnlab::make_urn(3, {6, 2, 0, 5, -2, 5, 0, 2, 6}, {2, 4, 1});
}
urnlab::UrnSpec two_colour_negdiag() {
  return urnlab::make_urn(2, {-2, 4, 2, 0}, {2, 2});
}
urnlab::UrnSpec two_colour_symmetric() {
  return urnlab::make_urn(2, {5, 1, 1, 5}, {1, 1});
}

struct Shared {
  int threads = pick_threads();
  urnlab::UrnSpec m3 = three_colour();
  urnlab::AtomicBasis basis3 = urnlab::atomic_basis(m3);
  urnlab::Spectrum spec3 = urnlab::eigen_spectrum(m3);
  const urnlab::JordanBlock* b6 = &urnlab::find_block(spec3, cplx(6, 0));
  // heavy sample sets shared between criteria 3 and 4
  std::vector<urnlab::WSampleSet> dt2000, ct2000;

  const std::vector<urnlab::WSampleSet>& dt_samples() {
    if (dt2000.empty())
      dt2000 = urnlab::sample_w_atomic(m3, basis3, *b6, urnlab::TimeMode::dt,
                                       10000, 2000, 101, threads);
    return dt2000;
  }
  const std::vector<urnlab::WSampleSet>& ct_samples() {
    if (ct2000.empty())
      ct2000 = urnlab::sample_w_atomic(m3, basis3, *b6, urnlab::TimeMode::ct,
                                       10000, 2000, 103, threads);
    return ct2000;
  }
};

Shared S;

std::string fail(const std::string& msg) { return msg; }

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// ── criterion bodies (return "" on pass, reason on failure) ─────────────────

std::string c01_structure_spectrum() {
  const auto t0 = std::chrono::steady_clock::now();
  const urnlab::ValidationReport rep = urnlab::validate(S.m3);
  if (!rep.ok()) return fail("three-colour urn failed validation");
  if (!rep.balanced || rep.S != 8) return fail("expected balance S=8");
  if (rep.tenability != urnlab::Tenability::general)
    return fail("expected the general tenability case (diagonal -2)");
  if (!rep.irreducible) return fail("expected irreducibility");

  const urnlab::Spectrum& sp = S.spec3;
  const double want[3] = {8.0, 6.0, -4.0};
  const urnlab::EigenClass klass[3] = {urnlab::EigenClass::principal,
                                       urnlab::EigenClass::large,
                                       urnlab::EigenClass::small};
  for (int k = 0; k < 3; ++k) {
    bool found = false;
    for (const auto& [lambda, mult] : sp.eigenvalues)
      if (std::abs(lambda - cplx(want[k], 0)) <= 1e-9) {
        found = true;
        if (mult != 1) return fail("eigenvalue multiplicity should be 1");
        if (urnlab::classify(lambda, sp.S) != klass[k])
          return fail("misclassified eigenvalue " + num(want[k]));
      }
    if (!found)
      return fail("eigenvalue " + num(want[k]) + " not found within 1e-9");
  }
  if (sp.eigenvalues.size() != 3) return fail("expected 3 distinct eigenvalues");
  for (const auto& blk : sp.blocks)
    if (blk.nu != 0) return fail("all blocks should be simple (nu=0)");

  // an unbalanced variant must be rejected
  const urnlab::UrnSpec bad =
      urnlab::make_urn(3, {6, 2, 0, 5, -2, 5, 0, 2, 7}, {2, 4, 1});
  if (urnlab::validate(bad).ok()) return fail("unbalanced variant accepted");

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (secs >= 1.0) return fail("structural pass took " + num(secs) + " s >= 1 s");
  return "";
}

std::string c02_atomic_bookkeeping() {
  const urnlab::AtomicBasis& b = S.basis3;
  const long long theta_want[3] = {1, 2, 1};
  const long long mult_want[3][3] = {{7, 1, 0}, {5, 0, 5}, {0, 1, 7}};
  const long long beta_want[3] = {2, 4, 5};
  const long long gamma_want[3] = {8, 10, 8};
  for (int i = 0; i < 3; ++i)
    if (b.theta[std::size_t(i)] != theta_want[i])
      return fail("theta mismatch at colour " + std::to_string(i));
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 3; ++i) {
      const long long n_ci = b.a_tilde(c, i) + (c == i ? 1 : 0);
      if (n_ci != mult_want[c][i])
        return fail("multiplicity n[" + std::to_string(c) + "][" +
                    std::to_string(i) + "] = " + std::to_string(n_ci) +
                    ", expected " + std::to_string(mult_want[c][i]));
    }
  for (int i = 0; i < 3; ++i)
    if (b.beta[std::size_t(i)] != beta_want[i])
      return fail("cumulative beta mismatch at colour " + std::to_string(i));
  for (int c = 0; c < 3; ++c)
    if (b.gamma_total(c) != gamma_want[c])
      return fail("slot count mismatch for colour " + std::to_string(c));
  for (int c = 0; c < 3; ++c) {
    long long mass = 0;
    for (int i = 0; i < 3; ++i)
      mass += (b.a_tilde(c, i) + (c == i ? 1 : 0)) * b.theta[std::size_t(i)];
    if (mass != b.S + b.theta[std::size_t(c)])
      return fail("mass conservation broken for colour " + std::to_string(c));
  }
  return "";
}

std::string c03_means() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<cplx> mv = urnlab::mean_vector(S.basis3, *S.b6);
  const double want[3] = {0.5, 0.0, -0.5};
  for (int c = 0; c < 3; ++c) {
    if (std::abs(mv[std::size_t(c)].real() - want[c]) > 1e-12 ||
        std::abs(mv[std::size_t(c)].imag()) > 1e-12)
      return fail("exact mean for colour " + std::to_string(c) +
                  " is not " + num(want[c]));
  }
  const auto& sets = S.dt_samples();
  for (int c = 0; c < 3; ++c) {
    std::vector<double> xs;
    xs.reserve(sets[std::size_t(c)].w.size());
    double max_im = 0;
    for (const cplx& w : sets[std::size_t(c)].w) {
      xs.push_back(w.real());
      max_im = std::max(max_im, std::abs(w.imag()));
    }
    if (max_im > 1e-9)
      return fail("real eigenvalue produced complex estimates");
    const urnlab::SampleStats st = urnlab::sample_stats(xs);
    const double se = st.sd / std::sqrt(double(st.n));
    if (std::abs(st.mean - want[c]) > 3.0 * se)
      return fail("colour " + std::to_string(c) + ": empirical mean " +
                  num(st.mean) + " deviates from " + num(want[c]) +
                  " by more than 3 SE (" + num(se) + ")");
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (secs >= 120.0) return fail("mean check took " + num(secs) + " s >= 120 s");
  return "";
}

std::string c04_moments_vs_mc() {
  const urnlab::MomentTable ct_tab =
      urnlab::ct_joint_moments(S.basis3, *S.b6, 4);
  const urnlab::MomentTable dt_tab =
      urnlab::dt_joint_moments(ct_tab, S.basis3, *S.b6);
  const auto check_table = [&](const urnlab::MomentTable& tab,
                               const std::vector<urnlab::WSampleSet>& sets,
                               const char* label) -> std::string {
    for (int c = 0; c < 3; ++c) {
      for (int m = 1; m <= 4; ++m) {
        std::vector<double> pw;
        pw.reserve(sets[std::size_t(c)].w.size());
        for (const cplx& w : sets[std::size_t(c)].w)
          pw.push_back(std::pow(w.real(), double(m)));
        const urnlab::SampleStats st = urnlab::sample_stats(pw);
        const double se = st.sd / std::sqrt(double(st.n));
        for (int q = 0; q <= m; ++q) {
          const int p = m - q;
          const cplx val = tab.at(c, p, q);
          if (std::abs(val.imag()) > 1e-8)
            return fail(std::string(label) + " moment (" + std::to_string(p) +
                        "," + std::to_string(q) + ") colour " +
                        std::to_string(c) + " has imaginary part");
          if (std::abs(val.real() - st.mean) > 3.0 * se + 1e-12)
            return fail(std::string(label) + " moment (" + std::to_string(p) +
                        "," + std::to_string(q) + ") colour " +
                        std::to_string(c) + ": exact " + num(val.real()) +
                        " vs Monte Carlo " + num(st.mean) + " (SE " + num(se) +
                        ")");
        }
      }
    }
    return "";
  };
  if (std::string r = check_table(dt_tab, S.dt_samples(), "DT"); !r.empty())
    return r;
  if (std::string r = check_table(ct_tab, S.ct_samples(), "CT"); !r.empty())
    return r;

  // determinant identity on randomly generated validated schemes
  int made = 0;
  for (std::uint32_t attempt = 0; attempt < 4000 && made < 100; ++attempt) {
    urnlab::RngStream g(777, attempt, urnlab::role::mixer);
    const int d = 2 + int(g.below(3));
    std::vector<long long> theta(std::size_t(d), 1);
    for (int i = 1; i < d; ++i) theta[std::size_t(i)] = 1 + (long long)g.below(3);
    std::vector<long long> R(std::size_t(d) * d, 0);
    for (int c = 0; c < d; ++c)
      for (int i = 0; i < d; ++i) {
        if (i == c)
          R[std::size_t(c) * d + i] = theta[std::size_t(c)] > 1
                                          ? -theta[std::size_t(c)]
                                          : (long long)g.below(4);
        else
          R[std::size_t(c) * d + i] =
              theta[std::size_t(i)] * (long long)g.below(3);
      }
    long long smax = -1000000;
    std::vector<long long> rowsum(std::size_t(d), 0);
    for (int c = 0; c < d; ++c) {
      for (int i = 0; i < d; ++i) rowsum[std::size_t(c)] += R[std::size_t(c) * d + i];
      smax = std::max(smax, rowsum[std::size_t(c)]);
    }
    if (smax < 1) smax = 1;
    for (int c = 0; c < d; ++c)
      R[std::size_t(c) * d + 0] += smax - rowsum[std::size_t(c)];
    std::vector<long long> alpha(std::size_t(d), 0);
    long long tot = 0;
    for (int i = 0; i < d; ++i) {
      alpha[std::size_t(i)] = theta[std::size_t(i)] * (long long)g.below(3);
      tot += alpha[std::size_t(i)];
    }
    if (tot == 0) alpha[0] = 1;
    try {
      const urnlab::UrnSpec u = urnlab::make_urn(d, R, alpha);
      const urnlab::ValidationReport vrep = urnlab::validate(u);
      if (!vrep.ok()) continue;
      const urnlab::AtomicBasis b = urnlab::atomic_basis(u);
      for (int k = 0; k < 3; ++k) {
        const double sc = 3.0 * double(vrep.S);
        const cplx z((2.0 * g.u01() - 1.0) * sc, (2.0 * g.u01() - 1.0) * sc);
        const double gap = urnlab::det_identity_gap(u, b, z);
        if (gap > 1e-8)
          return fail("determinant identity gap " + num(gap) +
                      " > 1e-8 on generated scheme (attempt " +
                      std::to_string(attempt) + ")");
      }
      ++made;
    } catch (const urnlab::UrnError&) {
      continue;
    }
  }
  if (made < 100)
    return fail("only " + std::to_string(made) +
                "/100 random schemes validated within the attempt budget");
  return "";
}

std::string c05_oracle_equivalence() {
  const urnlab::UrnSpec u = two_colour_symmetric();
  const urnlab::AtomicBasis basis = urnlab::atomic_basis(u);
  const urnlab::Spectrum sp = urnlab::eigen_spectrum(u);
  const urnlab::JordanBlock& blk = urnlab::find_block(sp, cplx(4, 0));
  if (blk.klass != urnlab::EigenClass::large)
    return fail("eigenvalue 4 should be large for the symmetric urn");
  const int p_max = 6;
  const urnlab::MomentTable tab = urnlab::ct_joint_moments(basis, blk, p_max);
  const std::vector<cplx> means = urnlab::mean_vector(basis, blk);
  const auto oracle_m =
      oracle::plain_moments_enum(basis, blk.lambda, means, p_max);
  for (int c = 0; c < 2; ++c)
    for (int p = 1; p <= p_max; ++p) {
      const cplx g = urnlab::gamma_ratio(
          double(basis.theta[std::size_t(c)]) / double(basis.S),
          blk.lambda / double(basis.S));
      const cplx plain = tab.at(c, p, 0) / std::pow(g, double(p));
      const cplx want = oracle_m[std::size_t(c)][std::size_t(p)];
      const double rel =
          std::abs(plain - want) / std::max(1.0, std::abs(want));
      if (rel > 1e-10)
        return fail("degree " + std::to_string(p) + " colour " +
                    std::to_string(c) + ": solver vs oracle relative gap " +
                    num(rel));
    }
  return "";
}

std::string c06_dislocation_decomposition() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr std::uint32_t B = std::uint32_t(1) << 22;
  const auto disl_dt = urnlab::test_dislocation(
      S.m3, S.basis3, *S.b6, urnlab::TimeMode::dt, 10000, 2000, 999, 0.01, 211,
      S.threads, false, 0 * B);
  const auto disl_ct = urnlab::test_dislocation(
      S.m3, S.basis3, *S.b6, urnlab::TimeMode::ct, 10000, 2000, 999, 0.01, 211,
      S.threads, false, 1 * B);
  const auto ctrl = urnlab::test_dislocation(
      S.m3, S.basis3, *S.b6, urnlab::TimeMode::dt, 10000, 2000, 999, 0.01, 211,
      S.threads, true, 2 * B);
  const auto dec_dt = urnlab::test_decomposition(
      S.m3, S.basis3, *S.b6, urnlab::TimeMode::dt, {2, 4, 1}, 10000, 2000, 999,
      0.01, 211, S.threads, 3 * B);
  const auto dec_ct = urnlab::test_decomposition(
      S.m3, S.basis3, *S.b6, urnlab::TimeMode::ct, {2, 4, 1}, 10000, 2000, 999,
      0.01, 211, S.threads, 4 * B);
  for (const auto& r : disl_dt)
    if (!r.pass)
      return fail("dislocation (discrete) rejected at colour " +
                  std::to_string(r.colour) + ", p = " + num(r.p_value));
  for (const auto& r : disl_ct)
    if (!r.pass)
      return fail("dislocation (continuous) rejected at colour " +
                  std::to_string(r.colour) + ", p = " + num(r.p_value));
  if (!dec_dt.pass)
    return fail("decomposition (discrete) rejected, p = " + num(dec_dt.p_value));
  if (!dec_ct.pass)
    return fail("decomposition (continuous) rejected, p = " +
                num(dec_ct.p_value));
  // misspecified-weights control: colour 0 has unequal slot weights, so the
  // flattened map must be rejected there (colours with equal weights are
  // unaffected by the flattening and carry no signal)
  if (!ctrl[0].pass)
    return fail("misspecified-weights control was not rejected (p = " +
                num(ctrl[0].p_value) + ")");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (secs >= 600.0)
    return fail("fixed-point verification took " + num(secs) + " s >= 600 s");
  return "";
}

std::string c07_martingale() {
  constexpr std::uint32_t B = std::uint32_t(1) << 22;
  for (int c = 0; c < 3; ++c) {
    const auto rep = urnlab::test_martingale_connection(
        S.m3, S.basis3, *S.b6, S.basis3.atomic_composition(c), 10000, 2000,
        999, 0.01 / 3.0, 223, S.threads, false, std::uint32_t(c) * B);
    if (!rep.pass)
      return fail("martingale connection rejected for atomic colour " +
                  std::to_string(c) + ", p = " + num(rep.p_value));
  }
  const auto ctrl = urnlab::test_martingale_connection(
      S.m3, S.basis3, *S.b6, S.basis3.atomic_composition(0), 10000, 2000, 999,
      0.01, 223, S.threads, true, 3 * B);
  if (!ctrl.pass)
    return fail("unit-shape mixing control was not rejected (p = " +
                num(ctrl.p_value) + ")");
  return "";
}

std::string c08_dirichlet_and_clock() {
  const auto dir = urnlab::test_dirichlet_limit({1, 1}, 1, 100000, 1000, 0.01,
                                                227, S.threads, 0);
  if (!dir.pass)
    return fail("diagonal-urn proportion failed KS vs Uniform[0,1], p = " +
                num(dir.p_value));
  const auto xi =
      urnlab::test_xi_law(S.m3, {2, 4, 1}, 10000, 1000, 0.01, 229, S.threads, 0);
  if (!xi.pass)
    return fail("clock scaling failed KS vs Gamma(7/8), p = " +
                num(xi.p_value));
  return "";
}

std::string c09_forest() {
  constexpr std::uint32_t B = std::uint32_t(1) << 22;
  const auto f3 = urnlab::test_forest_decomposition(S.m3, {2, 4, 1}, 1000,
                                                   1000, 999, 0.01, 233,
                                                   S.threads, 0);
  for (const auto& r : f3)
    if (!r.pass)
      return fail("three-colour forest identity rejected at coordinate " +
                  std::to_string(r.colour) + ", p = " + num(r.p_value));
  const auto f2 = urnlab::test_forest_decomposition(
      two_colour_negdiag(), {2, 2}, 1000, 1000, 999, 0.01, 233, S.threads, B);
  for (const auto& r : f2)
    if (!r.pass)
      return fail("two-colour forest identity rejected at coordinate " +
                  std::to_string(r.colour) + ", p = " + num(r.p_value));
  return "";
}

std::string c10_small_clt() {
  const urnlab::UrnSpec u = two_colour_negdiag();
  const urnlab::Spectrum sp = urnlab::eigen_spectrum(u);
  const urnlab::JordanBlock& blk = urnlab::find_block(sp, cplx(-4, 0));
  if (blk.klass != urnlab::EigenClass::small)
    return fail("eigenvalue -4 should be small");
  const auto rep = urnlab::test_small_clt(u, blk, {2, 2}, 100000, 2000, 0.01,
                                          239, S.threads, 0, 400);
  if (!rep.pass) return fail("normality bands violated: " + rep.note);
  return "";
}

std::string c11_fixpoint_convergence() {
  const urnlab::MomentTable ct_tab =
      urnlab::ct_joint_moments(S.basis3, *S.b6, 2);
  const urnlab::MomentTable dt_tab =
      urnlab::dt_joint_moments(ct_tab, S.basis3, *S.b6);
  std::vector<cplx> means(3);
  std::vector<double> vars(3);
  for (int c = 0; c < 3; ++c) {
    means[std::size_t(c)] = dt_tab.at(c, 1, 0);
    vars[std::size_t(c)] = std::max(
        0.0, dt_tab.at(c, 1, 1).real() - std::norm(means[std::size_t(c)]));
  }
  const urnlab::EmpiricalLaw init =
      urnlab::make_gaussian_law(means, vars, 100000, 241, 0, true);
  urnlab::FixpointOptions opt;
  opt.mode = urnlab::TimeMode::dt;
  opt.max_iter = 30;
  opt.out_size = 100000;
  opt.seed = 241;
  opt.threads = S.threads;
  const urnlab::FixpointResult res =
      urnlab::iterate_to_fixpoint(init, S.basis3, *S.b6, opt);
  if (!res.converged)
    return fail("smoothing iteration did not reach the noise floor in 30 "
                "iterations");
  const auto sim = urnlab::sample_w_atomic(
      S.m3, S.basis3, *S.b6, urnlab::TimeMode::dt, 10000, 2000, 251, S.threads);
  for (int c = 0; c < 3; ++c) {
    const auto rep = urnlab::two_sample_energy_test(
        res.law.pools[std::size_t(c)], sim[std::size_t(c)].w, 999, 0.01 / 3.0,
        251, std::uint32_t(100 + c), S.threads);
    if (!rep.pass)
      return fail("converged pool differs from simulated law at colour " +
                  std::to_string(c) + ", p = " + num(rep.p_value));
  }
  return "";
}

std::string c12_density_diagnostics() {
  const auto sets = urnlab::sample_w_atomic(
      S.m3, S.basis3, *S.b6, urnlab::TimeMode::dt, 10000, 40000, 257,
      S.threads);
  const double se = 1.0 / std::sqrt(40000.0);
  for (int c = 0; c < 3; ++c) {
    const auto& w = sets[std::size_t(c)].w;
    for (double r : {0.5, 1.0, 2.0, 3.5, 5.0}) {
      const double psi = urnlab::radial_sup(w, r, 64, true, S.threads);
      if (psi >= 1.0 - 3.0 * se)
        return fail("colour " + std::to_string(c) + ": psi(" + num(r) +
                    ") = " + num(psi) + " not below 1 - 3 SE");
    }
    std::vector<double> rs;
    for (int k = 0; k < 10; ++k)
      rs.push_back(0.5 * std::pow(10.0, double(k) / 9.0));
    const urnlab::DecayEstimate est =
        urnlab::decay_exponent(w, rs, 64, true, S.threads);
    if (!(est.rho > 0.0) || !(est.ci_lo > 0.0))
      return fail("colour " + std::to_string(c) +
                  ": decay exponent band does not exclude 0 (rho = " +
                  num(est.rho) + ", ci_lo = " + num(est.ci_lo) + ")");
  }
  for (int c = 0; c < 3; ++c)
    for (int p = 2; p <= 50; ++p) {
      const auto [value, bound] = urnlab::phi_bound_check(S.basis3, c, p);
      if (value > bound * (1.0 + 1e-12))
        return fail("growth functional exceeds its bound at colour " +
                    std::to_string(c) + ", p = " + std::to_string(p));
    }
  return "";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::string();
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string c13_cli_determinism(const std::string& cli) {
  const std::string cfg = "acceptance_cfg_tmp.json";
  {
    std::ofstream out(cfg, std::ios::binary);
    out << "{\n  \"R\": [[6, 2, 0], [5, -2, 5], [0, 2, 6]],\n"
           "  \"alpha\": [2, 4, 1]\n}\n";
    if (!out) return fail("cannot write temporary config");
  }
  const std::string q = "\"" + cli + "\"";
  struct Run {
    std::string name;
    std::string args;
  };
  const std::vector<Run> runs = {
      {"spectrum", "spectrum " + cfg},
      {"moments", "moments " + cfg + " --eigenvalue 6 --pmax 4"},
      {"wsample", "--threads 3 wsample " + cfg +
                      " --seed 1 --eigenvalue 6 --mode dt --steps 500 "
                      "--replicas 200"},
  };
  for (const Run& run : runs) {
    const std::string f1 = "acceptance_" + run.name + "_1.out";
    const std::string f2 = "acceptance_" + run.name + "_2.out";
    for (const std::string& f : {f1, f2}) {
      const std::string cmd = q + " " + run.args + " --out " + f;
      const int rc = std::system(cmd.c_str());
      if (rc != 0)
        return fail("CLI command failed (" + run.name + "), exit status " +
                    std::to_string(rc));
    }
    const std::string a = read_file(f1), b = read_file(f2);
    if (a.empty()) return fail("CLI produced empty output (" + run.name + ")");
    if (a != b)
      return fail("repeated " + run.name +
                  " invocations differ; outputs kept in " + f1 + " and " + f2);
    std::remove(f1.c_str());
    std::remove(f2.c_str());
  }
  std::remove(cfg.c_str());
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: urnlab_acceptance <path-to-cli-binary>\n");
    return 2;
  }
  const std::string cli = argv[1];

  struct Criterion {
    const char* title;
    std::function<std::string()> body;
  };
  const std::vector<Criterion> criteria = {
      {"structural validation and eigenvalue classification",
       c01_structure_spectrum},
      {"atomic slot multiplicities and cumulative offsets",
       c02_atomic_bookkeeping},
      {"exact projection means vs simulated estimates", c03_means},
      {"joint-moment tables vs Monte Carlo and determinant identity",
       c04_moments_vs_mc},
      {"moment recursion vs brute-force multinomial oracle",
       c05_oracle_equivalence},
      {"dislocation and decomposition laws with negative control",
       c06_dislocation_decomposition},
      {"martingale connection across time scales", c07_martingale},
      {"Dirichlet limit and poissonization clock law", c08_dirichlet_and_clock},
      {"forest decomposition at finite time", c09_forest},
      {"small-eigenvalue CLT shape", c10_small_clt},
      {"smoothing-map convergence to the simulated law",
       c11_fixpoint_convergence},
      {"density diagnostics: decay and moment growth", c12_density_diagnostics},
      {"CLI byte determinism", [&cli] { return c13_cli_determinism(cli); }},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string reason;
    try {
      reason = criteria[k].body();
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%2zu/13] %s  %-58s (%.1f s)\n", k + 1,
                reason.empty() ? "PASS" : "FAIL", criteria[k].title, secs);
    if (!reason.empty()) {
      std::printf("        %s\n", reason.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  if (failures == 0)
    std::printf("acceptance: all 13 criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
