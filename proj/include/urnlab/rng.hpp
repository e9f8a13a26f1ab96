// ── urnlab/rng.hpp ──────────────────────────────────────────────────────────
//
// Counter-based pseudo-random streams (Philox-4x32-10) plus a hand-rolled
// distribution layer.  Counter-based generation gives us:
//
//   • reproducibility across platforms and compilers (no reliance on the
//     implementation-defined std::<random> distribution algorithms),
//   • cheap logical streams: a stream is (seed, replica, role, index) and any
//     number of them can be created independently without seeding ceremonies,
//   • trivially parallel replicas with byte-identical output regardless of
//     the thread count that consumed them.
//
// The 128-bit Philox counter is laid out as
//
//   word0/word1 :  64-bit draw counter (increments per 4-word block)
//   word2       :  replica id
//   word3       :  role | index << 4     (role < 16 distinguishes draw kinds)
//
// Distributions: uniform doubles use the top 53 bits of a 64-bit draw;
// normals use Box–Muller without caching; Gamma uses Marsaglia–Tsang with the
// standard shape<1 boost.  All are deterministic given the stream coordinates.
//
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "urnlab/errors.hpp"

namespace urnlab {

// Stream roles (counter word3 low nibble).  Keeping the assignments central
// avoids accidental collisions between independent consumers of one replica.
namespace role {
inline constexpr std::uint32_t colour = 0;     // urn colour draws
inline constexpr std::uint32_t clock = 1;      // continuous-time exponentials
inline constexpr std::uint32_t forest = 2;     // forest degree process
inline constexpr std::uint32_t subtree = 3;    // per-subtree inner runs (index = subtree)
inline constexpr std::uint32_t weights = 4;    // Dirichlet / uniform weight draws
inline constexpr std::uint32_t pool = 5;       // empirical-pool resampling
inline constexpr std::uint32_t gauss = 6;      // Gaussian seeding of laws
inline constexpr std::uint32_t perm = 7;       // permutation-test shuffles
inline constexpr std::uint32_t mixer = 8;      // auxiliary independent factors
inline constexpr std::uint32_t probe = 9;      // bootstrap / subsampling draws
}  // namespace role

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

struct PhiloxBlock {
  std::uint32_t v[4];
};

inline PhiloxBlock philox4x32_10(std::uint32_t c0, std::uint32_t c1,
                                 std::uint32_t c2, std::uint32_t c3,
                                 std::uint32_t k0, std::uint32_t k1) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t(kPhiloxM0) * c0;
    const std::uint64_t p1 = std::uint64_t(kPhiloxM1) * c2;
    const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
    const std::uint32_t hi1 = std::uint64_t(p1) >> 32, lo1 = std::uint32_t(p1);
    const std::uint32_t n0 = hi1 ^ c1 ^ k0;
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ c3 ^ k1;
    const std::uint32_t n3 = lo0;
    c0 = n0; c1 = n1; c2 = n2; c3 = n3;
    k0 += kWeyl0; k1 += kWeyl1;  // final bump is harmless (key unused after)
  }
  return PhiloxBlock{{c0, c1, c2, c3}};
}

}  // namespace detail

// One logical stream of draws, identified by (seed, replica, role, index).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint32_t replica,
            std::uint32_t role_id = role::colour, std::uint32_t index = 0)
      : key0_(std::uint32_t(seed)), key1_(std::uint32_t(seed >> 32)),
        replica_(replica), tag_(role_id | (index << 4)) {
    require(role_id < 16, errc::invalid_argument, "stream role must be < 16");
  }

  std::uint64_t next_u64() {
    if (pos_ == 4) refill();
    const std::uint32_t lo = block_.v[pos_++];
    const std::uint32_t hi = block_.v[pos_++];
    return std::uint64_t(hi) << 32 | lo;
  }

  // Uniform on [0,1) with 53 random bits.
  double u01() {
    return double(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0,1]; safe as a logarithm argument.
  double u01_open_left() { return 1.0 - u01(); }

  // Unbiased draw from {0, …, n-1} by rejection.
  std::uint64_t below(std::uint64_t n) {
    require(n > 0, errc::invalid_argument, "below(0) is undefined");
    const std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % n;
    std::uint64_t x;
    do { x = next_u64(); } while (x >= limit);
    return x % n;
  }

  double exponential(double rate) {
    require(rate > 0.0, errc::invalid_argument, "exponential rate must be > 0");
    return -std::log(u01_open_left()) / rate;
  }

  // Box–Muller, no second-value caching, so draws are position-independent.
  double normal() {
    const double r = std::sqrt(-2.0 * std::log(u01_open_left()));
    const double a = 2.0 * std::numbers::pi * u01();
    return r * std::cos(a);
  }

  // Marsaglia–Tsang; for shape < 1 uses Gamma(shape+1) * U^{1/shape}.
  double gamma(double shape) {
    require(shape > 0.0, errc::invalid_argument, "gamma shape must be > 0");
    if (shape < 1.0) {
      const double boost = gamma(shape + 1.0);
      return boost * std::pow(u01_open_left(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = u01_open_left();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  std::uint32_t replica() const { return replica_; }

 private:
  void refill() {
    block_ = detail::philox4x32_10(std::uint32_t(ctr_), std::uint32_t(ctr_ >> 32),
                                   replica_, tag_, key0_, key1_);
    ++ctr_;
    pos_ = 0;
  }

  std::uint32_t key0_, key1_, replica_, tag_;
  std::uint64_t ctr_ = 0;
  detail::PhiloxBlock block_{};
  int pos_ = 4;
};

}  // namespace urnlab
