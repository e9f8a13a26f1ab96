#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "urnlab/errors.hpp"
#include "urnlab/spectral.hpp"
#include "urnlab/urn.hpp"

using urnlab::cplx;
using urnlab::EigenClass;
using urnlab::eigen_spectrum;
using urnlab::find_block;
using urnlab::JordanBlock;
using urnlab::make_urn;
using urnlab::Spectrum;
using urnlab::UrnSpec;

namespace {

UrnSpec three_colour() {
  return make_urn(3, {6, 2, 0, 5, -2, 5, 0, 2, 6}, {2, 4, 1});
}
UrnSpec two_colour_negdiag() { return make_urn(2, {-2, 4, 2, 0}, {2, 2}); }
UrnSpec two_colour_symmetric() { return make_urn(2, {5, 1, 1, 5}, {1, 1}); }

bool has_eigen(const Spectrum& s, cplx lambda, double tol = 1e-9) {
  for (const auto& [mu, mult] : s.eigenvalues)
    if (std::abs(mu - lambda) <= tol) return true;
  return false;
}

// multiply the dynamics matrix (transpose of R) by a vector
std::vector<cplx> dyn_apply(const UrnSpec& u, const std::vector<cplx>& x) {
  std::vector<cplx> y(std::size_t(u.d), 0);
  for (int i = 0; i < u.d; ++i)
    for (int c = 0; c < u.d; ++c)
      y[std::size_t(i)] += double(u.at(c, i)) * x[std::size_t(c)];
  return y;
}

double vec_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
  return g;
}

}  // namespace

TEST_CASE("three-colour spectrum {8, 6, -4}", "[spectral]") {
  const Spectrum s = eigen_spectrum(three_colour());
  CHECK(s.S == 8);
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(has_eigen(s, cplx(8, 0)));
  CHECK(has_eigen(s, cplx(6, 0)));
  CHECK(has_eigen(s, cplx(-4, 0)));
  CHECK(urnlab::classify(cplx(8, 0), 8) == EigenClass::principal);
  CHECK(urnlab::classify(cplx(6, 0), 8) == EigenClass::large);
  CHECK(urnlab::classify(cplx(-4, 0), 8) == EigenClass::small);
}

TEST_CASE("three-colour eigenvectors and dual rows", "[spectral]") {
  const Spectrum s = eigen_spectrum(three_colour());

  const JordanBlock b8 = find_block(s, cplx(8, 0));
  CHECK(b8.nu == 0);
  CHECK(b8.klass == EigenClass::principal);
  CHECK(vec_gap(b8.v, {cplx(1), cplx(0.4), cplx(1)}) < 1e-9);
  CHECK(vec_gap(b8.u_dual,
                {cplx(5.0 / 12), cplx(5.0 / 12), cplx(5.0 / 12)}) < 1e-9);

  const JordanBlock b6 = find_block(s, cplx(6, 0));
  CHECK(b6.nu == 0);
  CHECK(b6.klass == EigenClass::large);
  CHECK(vec_gap(b6.v, {cplx(1), cplx(0), cplx(-1)}) < 1e-9);
  CHECK(vec_gap(b6.u_dual, {cplx(0.5), cplx(0), cplx(-0.5)}) < 1e-9);

  const JordanBlock bm4 = find_block(s, cplx(-4, 0));
  CHECK(bm4.klass == EigenClass::small);
  CHECK(vec_gap(bm4.v, {cplx(1), cplx(-2), cplx(1)}) < 1e-9);
  CHECK(vec_gap(bm4.u_dual,
                {cplx(1.0 / 12), cplx(-5.0 / 12), cplx(1.0 / 12)}) < 1e-9);
}

TEST_CASE("negative-diagonal urn spectrum {2, -4}", "[spectral]") {
  const Spectrum s = eigen_spectrum(two_colour_negdiag());
  CHECK(s.S == 2);
  CHECK(has_eigen(s, cplx(2, 0)));
  CHECK(has_eigen(s, cplx(-4, 0)));
  const JordanBlock b2 = find_block(s, cplx(2, 0));
  CHECK(vec_gap(b2.v, {cplx(1), cplx(2)}) < 1e-9);
  const JordanBlock bm4 = find_block(s, cplx(-4, 0));
  CHECK(vec_gap(bm4.v, {cplx(1), cplx(-1)}) < 1e-9);
  CHECK(vec_gap(bm4.u_dual, {cplx(2.0 / 3), cplx(-1.0 / 3)}) < 1e-9);
  // -4 is small yet |λ| > S: classification uses the real part ratio
  CHECK(bm4.klass == EigenClass::small);
}

TEST_CASE("symmetric urn block {6, 4}", "[spectral]") {
  const Spectrum s = eigen_spectrum(two_colour_symmetric());
  CHECK(s.S == 6);
  const JordanBlock b4 = find_block(s, cplx(4, 0));
  CHECK(b4.klass == EigenClass::large);
  CHECK(vec_gap(b4.v, {cplx(1), cplx(-1)}) < 1e-9);
  CHECK(vec_gap(b4.u_dual, {cplx(0.5), cplx(-0.5)}) < 1e-9);
}

TEST_CASE("biorthogonality and eigen residuals", "[spectral]") {
  for (const UrnSpec& u :
       {three_colour(), two_colour_negdiag(), two_colour_symmetric()}) {
    const Spectrum s = eigen_spectrum(u);
    for (const auto& blk : s.blocks) {
      // (M - λ) v = 0 for the chain bottom
      std::vector<cplx> mv = dyn_apply(u, blk.v);
      for (std::size_t i = 0; i < mv.size(); ++i)
        mv[i] -= blk.lambda * blk.v[i];
      CHECK(vec_gap(mv, std::vector<cplx>(mv.size(), cplx(0))) < 1e-8);
      // ⟨u_dual, v⟩ = 1
      cplx dot = 0;
      for (std::size_t i = 0; i < blk.v.size(); ++i)
        dot += blk.u_dual[i] * blk.v[i];
      CHECK(std::abs(dot - cplx(1)) < 1e-9);
      // u_dual is a left eigenvector of the dynamics matrix (row convention:
      // uᵀ M = λ uᵀ means Σ_i a_{c,i} u_i = λ u_c)
      for (int c = 0; c < u.d; ++c) {
        cplx acc = 0;
        for (int i = 0; i < u.d; ++i)
          acc += double(u.at(c, i)) * blk.u_dual[std::size_t(i)];
        CHECK(std::abs(acc - blk.lambda * blk.u_dual[std::size_t(c)]) < 1e-8);
      }
    }
  }
}

TEST_CASE("spectral projectors resolve the identity", "[spectral]") {
  for (const UrnSpec& u :
       {three_colour(), two_colour_negdiag(), two_colour_symmetric()}) {
    const Spectrum s = eigen_spectrum(u);
    const int d = u.d;
    std::vector<cplx> sum(std::size_t(d) * d, 0);
    std::vector<cplx> recon(std::size_t(d) * d, 0);
    for (const auto& blk : s.blocks)
      for (int i = 0; i < d * d; ++i) {
        sum[std::size_t(i)] += blk.projector[std::size_t(i)];
        recon[std::size_t(i)] += blk.lambda * blk.projector[std::size_t(i)];
      }
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        const cplx want = r == c ? cplx(1) : cplx(0);
        CHECK(std::abs(sum[std::size_t(r) * d + c] - want) < 1e-8);
        // all examples are diagonalizable: M = Σ λ P
        CHECK(std::abs(recon[std::size_t(r) * d + c] -
                       double(u.at(c, r))) < 1e-7);
      }
    // idempotence and orthogonality
    for (const auto& a : s.blocks)
      for (const auto& b : s.blocks) {
        const cplx want = std::abs(a.lambda - b.lambda) < 1e-9 ? 1.0 : 0.0;
        std::vector<cplx> prod(std::size_t(d) * d, 0);
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c)
            for (int k = 0; k < d; ++k)
              prod[std::size_t(r) * d + c] +=
                  a.projector[std::size_t(r) * d + k] *
                  b.projector[std::size_t(k) * d + c];
        double gap = 0;
        for (int i = 0; i < d * d; ++i)
          gap = std::max(gap, std::abs(prod[std::size_t(i)] -
                                       want * a.projector[std::size_t(i)]));
        CHECK(gap < 1e-7);
      }
  }
}

TEST_CASE("projector application matches the full matrix", "[spectral]") {
  const UrnSpec u = three_colour();
  const Spectrum s = eigen_spectrum(u);
  const std::vector<cplx> x{cplx(2), cplx(4), cplx(1)};
  std::vector<cplx> recombined(3, 0);
  for (const auto& blk : s.blocks) {
    const std::vector<cplx> px = urnlab::apply_projector(blk, x);
    // M (P x) = λ (P x) in the diagonalizable case
    const std::vector<cplx> mpx = dyn_apply(u, px);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(mpx[std::size_t(i)] - blk.lambda * px[std::size_t(i)]) <
            1e-8);
      recombined[std::size_t(i)] += px[std::size_t(i)];
    }
  }
  CHECK(vec_gap(recombined, x) < 1e-8);
}

TEST_CASE("block coefficient is the dual pairing", "[spectral]") {
  const Spectrum s = eigen_spectrum(three_colour());
  const JordanBlock b6 = find_block(s, cplx(6, 0));
  const std::vector<double> x{8, 6, 1};
  const cplx coef = urnlab::block_coefficient(b6, x);
  CHECK(std::abs(coef - cplx(3.5)) < 1e-9);  // (8 - 1)/2
}

TEST_CASE("find_block rejects unknown eigenvalues", "[spectral]") {
  const Spectrum s = eigen_spectrum(three_colour());
  CHECK_THROWS_AS(find_block(s, cplx(100, 0)), urnlab::UrnError);
}

TEST_CASE("perron vector is the normalized principal eigenvector",
          "[spectral]") {
  const std::vector<double> p3 = urnlab::perron_left_vector(three_colour());
  REQUIRE(p3.size() == 3);
  CHECK(std::abs(p3[0] - 5.0 / 12) < 1e-9);
  CHECK(std::abs(p3[1] - 2.0 / 12) < 1e-9);
  CHECK(std::abs(p3[2] - 5.0 / 12) < 1e-9);
  const std::vector<double> p2 =
      urnlab::perron_left_vector(two_colour_negdiag());
  CHECK(std::abs(p2[0] - 1.0 / 3) < 1e-9);
  CHECK(std::abs(p2[1] - 2.0 / 3) < 1e-9);
}

TEST_CASE("spectrum validates the scheme first", "[spectral]") {
  const UrnSpec reducible = make_urn(2, {2, 0, 1, 1}, {1, 1});
  CHECK_THROWS_AS(eigen_spectrum(reducible), urnlab::UrnError);
}

TEST_CASE("complex eigenvalue pair on a cyclic scheme", "[spectral]") {
  // cyclic 3-colour scheme: eigenvalues S and S·(ω, ω̄) scaled
  const UrnSpec u = make_urn(3, {0, 3, 0, 0, 0, 3, 3, 0, 0}, {1, 1, 1});
  const Spectrum s = eigen_spectrum(u);
  CHECK(s.S == 3);
  REQUIRE(s.eigenvalues.size() == 3);
  const double half_sqrt3 = 1.5 * std::sqrt(3.0);
  CHECK(has_eigen(s, cplx(3, 0)));
  CHECK(has_eigen(s, cplx(-1.5, half_sqrt3), 1e-8));
  CHECK(has_eigen(s, cplx(-1.5, -half_sqrt3), 1e-8));
  // conjugate blocks carry conjugate vectors
  const JordanBlock bp = find_block(s, cplx(-1.5, half_sqrt3));
  const JordanBlock bm = find_block(s, cplx(-1.5, -half_sqrt3));
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(bp.v[std::size_t(i)] - std::conj(bm.v[std::size_t(i)])) <
          1e-7);
}
