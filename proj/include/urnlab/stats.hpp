// ── urnlab/stats.hpp ────────────────────────────────────────────────────────
//
// Statistical machinery for the verification layer:
//
//   • descriptive moments (mean, sd, skewness, excess kurtosis),
//   • one-sample Kolmogorov–Smirnov against a continuous CDF with the
//     asymptotic (Stephens-corrected) p-value,
//   • two-sample KS with a permutation p-value (tie-safe, usable on
//     integer-valued data),
//   • energy distance and the two-sample energy permutation test for
//     complex-valued laws,
//   • Wasserstein-1 between real sample sets (sorted-coupling formula),
//   • bootstrap standard errors.
//
// Permutation tests derive one RNG stream per permutation from (seed,
// replica, perm-index), so p-values are deterministic for a given seed and
// independent of the thread count.  p = (1 + #{perm ≥ observed}) / (1 + P).
//
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "urnlab/errors.hpp"
#include "urnlab/parallel.hpp"
#include "urnlab/rng.hpp"

namespace urnlab {

using cplx = std::complex<double>;

struct SampleStats {
  std::size_t n = 0;
  double mean = 0, sd = 0, skewness = 0, excess_kurtosis = 0;
};

inline SampleStats sample_stats(const std::vector<double>& x) {
  require(x.size() >= 2, errc::too_few_samples, "need >= 2 samples");
  SampleStats s;
  s.n = x.size();
  double m = 0;
  for (double v : x) m += v;
  m /= double(x.size());
  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : x) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= double(x.size());
  m3 /= double(x.size());
  m4 /= double(x.size());
  s.mean = m;
  s.sd = std::sqrt(m2);
  require(m2 > 0.0, errc::invalid_argument, "degenerate sample (zero variance)");
  s.skewness = m3 / (m2 * std::sqrt(m2));
  s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  return s;
}

// ── reference CDFs ──────────────────────────────────────────────────────────

inline double gamma_cdf(double shape, double x) {
  require(shape > 0.0, errc::invalid_argument, "gamma_cdf needs shape > 0");
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(shape, x);
}

inline double beta_cdf(double a, double b, double x) {
  require(a > 0.0 && b > 0.0, errc::invalid_argument, "beta_cdf needs a,b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// ── Kolmogorov–Smirnov ──────────────────────────────────────────────────────

inline double ks_statistic(std::vector<double> x,
                           const std::function<double(double)>& cdf) {
  require(!x.empty(), errc::too_few_samples, "empty sample");
  std::sort(x.begin(), x.end());
  const double n = double(x.size());
  double d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max(d, std::abs(f - double(i + 1) / n));
    d = std::max(d, std::abs(f - double(i) / n));
  }
  return d;
}

// Asymptotic Kolmogorov distribution tail with the Stephens finite-n
// correction; adequate for n ≥ 100 and the 0.01 levels used here.
inline double ks_pvalue(double d, std::size_t n) {
  const double sn = std::sqrt(double(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double p = 0;
  for (int k = 1; k <= 101; ++k) {
    const double term = std::exp(-2.0 * double(k) * double(k) * lambda * lambda);
    p += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::min(1.0, std::max(0.0, p));
}

struct TestOutcome {
  double statistic = 0;
  double p_value = 1;
};

namespace detail {

// sup |F_x − F_y| over the pooled sorted values; ties handled by advancing
// whole tie groups before measuring (valid for discrete data).
inline double ks2_from_sorted(const std::vector<double>& pooled,
                              const std::vector<unsigned char>& is_x,
                              std::size_t m, std::size_t n) {
  double fx = 0, fy = 0, d = 0;
  std::size_t i = 0;
  const std::size_t total = pooled.size();
  while (i < total) {
    const double v = pooled[i];
    while (i < total && pooled[i] == v) {
      if (is_x[i]) fx += 1.0;
      else fy += 1.0;
      ++i;
    }
    d = std::max(d, std::abs(fx / double(m) - fy / double(n)));
  }
  return d;
}

inline void shuffle_labels(std::vector<unsigned char>& labels, RngStream& rng) {
  for (std::size_t i = labels.size(); i > 1; --i)
    std::swap(labels[i - 1], labels[std::size_t(rng.below(i))]);
}

}  // namespace detail

// Two-sample KS with permutation p-value; safe for integer-valued samples.
inline TestOutcome ks2_permutation(const std::vector<double>& x,
                                   const std::vector<double>& y, int n_perm,
                                   std::uint64_t seed, std::uint32_t replica,
                                   int threads = 1) {
  require(!x.empty() && !y.empty(), errc::too_few_samples, "empty sample");
  require(n_perm >= 1, errc::invalid_argument, "need >= 1 permutation");
  const std::size_t m = x.size(), n = y.size();
  std::vector<std::pair<double, unsigned char>> tagged;
  tagged.reserve(m + n);
  for (double v : x) tagged.emplace_back(v, 1);
  for (double v : y) tagged.emplace_back(v, 0);
  std::sort(tagged.begin(), tagged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> pooled(m + n);
  std::vector<unsigned char> labels(m + n);
  for (std::size_t i = 0; i < m + n; ++i) {
    pooled[i] = tagged[i].first;
    labels[i] = tagged[i].second;
  }
  const double obs = detail::ks2_from_sorted(pooled, labels, m, n);
  std::vector<int> exceed(std::size_t(n_perm), 0);
  parallel_for(std::size_t(n_perm), threads, [&](std::size_t p) {
    RngStream rng(seed, replica, role::perm, std::uint32_t(p));
    std::vector<unsigned char> lab = labels;
    detail::shuffle_labels(lab, rng);
    if (detail::ks2_from_sorted(pooled, lab, m, n) >= obs - 1e-12)
      exceed[p] = 1;
  });
  int count = 0;
  for (int e : exceed) count += e;
  return TestOutcome{obs, double(1 + count) / double(1 + n_perm)};
}

// ── energy distance ─────────────────────────────────────────────────────────

namespace detail {

struct EnergyParts {
  double sxx = 0, syy = 0, sxy = 0;  // pairwise |·| sums within/between
};

// labels[i] true ⇒ sample-1 membership in the pooled array.
inline EnergyParts energy_parts(const std::vector<double>& dist,
                                const std::vector<unsigned char>& labels) {
  const std::size_t N = labels.size();
  EnergyParts e;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      const double d = dist[i * N + j];
      if (labels[i] && labels[j]) e.sxx += d;
      else if (!labels[i] && !labels[j]) e.syy += d;
      else e.sxy += d;
    }
  return e;
}

inline double energy_stat(const EnergyParts& e, double m, double n) {
  // mn/(m+n) · (2 E|X−Y| − E|X−X'| − E|Y−Y'|)
  const double exy = e.sxy / (m * n);
  const double exx = 2.0 * e.sxx / (m * m);
  const double eyy = 2.0 * e.syy / (n * n);
  return m * n / (m + n) * (2.0 * exy - exx - eyy);
}

inline std::vector<cplx> subsample(const std::vector<cplx>& x, std::size_t cap,
                                   RngStream& rng) {
  if (x.size() <= cap) return x;
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t(0));
  for (std::size_t i = 0; i < cap; ++i)
    std::swap(idx[i], idx[i + std::size_t(rng.below(idx.size() - i))]);
  std::vector<cplx> out(cap);
  for (std::size_t i = 0; i < cap; ++i) out[i] = x[idx[i]];
  return out;
}

}  // namespace detail

// Energy distance (the metric, i.e. the square root of the energy form).
inline double energy_distance(const std::vector<cplx>& x,
                              const std::vector<cplx>& y) {
  require(!x.empty() && !y.empty(), errc::too_few_samples, "empty sample");
  const double m = double(x.size()), n = double(y.size());
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) sxy += std::abs(x[i] - y[j]);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) sxx += std::abs(x[i] - x[j]);
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = i + 1; j < y.size(); ++j) syy += std::abs(y[i] - y[j]);
  const double form =
      2.0 * sxy / (m * n) - 2.0 * sxx / (m * m) - 2.0 * syy / (n * n);
  return std::sqrt(std::max(0.0, form));
}

// Two-sample energy permutation test.  Pools above cap_per_side are
// deterministically subsampled (they remain exchangeable under the null).
inline TestOutcome energy_permutation_test(const std::vector<cplx>& x,
                                           const std::vector<cplx>& y,
                                           int n_perm, std::uint64_t seed,
                                           std::uint32_t replica,
                                           std::size_t cap_per_side = 2000,
                                           int threads = 1,
                                           std::size_t min_samples = 500) {
  require(x.size() >= min_samples && y.size() >= min_samples,
          errc::too_few_samples,
          "energy test needs >= " + std::to_string(min_samples) +
              " samples per side");
  RngStream sub_rng(seed, replica, role::probe);
  const std::vector<cplx> xs = detail::subsample(x, cap_per_side, sub_rng);
  const std::vector<cplx> ys = detail::subsample(y, cap_per_side, sub_rng);
  const std::size_t m = xs.size(), n = ys.size(), N = m + n;
  std::vector<double> dist(N * N, 0.0);
  std::vector<cplx> pool(N);
  for (std::size_t i = 0; i < m; ++i) pool[i] = xs[i];
  for (std::size_t j = 0; j < n; ++j) pool[m + j] = ys[j];
  parallel_for(N, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      const double d = std::abs(pool[i] - pool[j]);
      dist[i * N + j] = d;
      dist[j * N + i] = d;
    }
  });
  std::vector<unsigned char> labels(N, 0);
  for (std::size_t i = 0; i < m; ++i) labels[i] = 1;
  const double obs =
      detail::energy_stat(detail::energy_parts(dist, labels), double(m), double(n));
  std::vector<int> exceed(std::size_t(n_perm), 0);
  parallel_for(std::size_t(n_perm), threads, [&](std::size_t p) {
    RngStream rng(seed, replica, role::perm, std::uint32_t(p));
    std::vector<unsigned char> lab = labels;
    detail::shuffle_labels(lab, rng);
    const double s =
        detail::energy_stat(detail::energy_parts(dist, lab), double(m), double(n));
    if (s >= obs - 1e-12) exceed[p] = 1;
  });
  int count = 0;
  for (int e : exceed) count += e;
  return TestOutcome{obs, double(1 + count) / double(1 + n_perm)};
}

// Wasserstein-1 between equal-size real sample sets (sorted coupling).
inline double wasserstein1(std::vector<double> x, std::vector<double> y) {
  require(x.size() == y.size(), errc::size_mismatch,
          "Wasserstein-1 needs equal sample counts");
  require(!x.empty(), errc::too_few_samples, "empty sample");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::abs(x[i] - y[i]);
  return acc / double(x.size());
}

// Bootstrap standard error of a statistic of real samples.
inline double bootstrap_se(const std::vector<double>& x,
                           const std::function<double(const std::vector<double>&)>& stat,
                           int n_boot, std::uint64_t seed,
                           std::uint32_t replica) {
  require(x.size() >= 2, errc::too_few_samples, "need >= 2 samples");
  require(n_boot >= 2, errc::invalid_argument, "need >= 2 bootstrap draws");
  std::vector<double> vals(static_cast<std::size_t>(n_boot));
  std::vector<double> resample(x.size());
  RngStream rng(seed, replica, role::probe);
  for (int b = 0; b < n_boot; ++b) {
    for (std::size_t i = 0; i < x.size(); ++i)
      resample[i] = x[std::size_t(rng.below(x.size()))];
    vals[std::size_t(b)] = stat(resample);
  }
  double m = 0;
  for (double v : vals) m += v;
  m /= double(n_boot);
  double s2 = 0;
  for (double v : vals) s2 += (v - m) * (v - m);
  return std::sqrt(s2 / double(n_boot - 1));
}

}  // namespace urnlab
