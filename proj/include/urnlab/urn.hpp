// ── urnlab/urn.hpp ──────────────────────────────────────────────────────────
//
// Urn model: a d-colour scheme is an integer replacement matrix R together
// with an initial composition α.  Drawing a ball of colour c replaces it and
// adds R[c][i] balls of colour i (row convention).  The model layer checks:
//
//   balance        every row of R sums to the same S ≥ 1;
//   tenability     the process can never be asked to remove balls it does not
//                  have: off-diagonals ≥ 0 and, for each colour i, either
//                  a_{i,i} ≥ -1, or θ_i := -a_{i,i} divides every entry of
//                  column i and the initial count α_i;
//   irreducibility the colour graph (c → i iff colour i can be created from
//                  a draw of c, i.e. a_{c,i} > 0 off-diagonal or a_{c,c} > 0)
//                  is strongly connected.
//
// The atomic basis rescales colours by θ:
//
//   θ_i   = 1 if a_{i,i} ≥ -1, else -a_{i,i}          (atom size of colour i)
//   ẽ_i   = θ_i · e_i                                  (atomic composition)
//   α̃_i  = α_i / θ_i  (θ_i > 1)   else α_i           (atoms initially)
//   ã_{c,i} = a_{c,i} / θ_i                            (atoms created per draw)
//   γ^{(c)}_i = Σ_{j ≤ i} (ã_{c,j} + δ_{c,j})          (cumulative slot count)
//   β_i  = Σ_{j ≤ i} α̃_j                              (cumulative initial atoms)
//
// Conservation check: Σ_i (ã_{c,i} + δ_{c,i}) θ_i = S + θ_c for every c.
//
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "urnlab/errors.hpp"

namespace urnlab {

inline constexpr int kMaxColours = 64;
inline constexpr long long kMaxEntry = 1'000'000;

struct UrnSpec {
  int d = 0;
  std::vector<long long> R;      // row-major d*d replacement matrix
  std::vector<long long> alpha;  // initial composition, length d

  long long at(int c, int i) const { return R[std::size_t(c) * d + i]; }
  long long& at(int c, int i) { return R[std::size_t(c) * d + i]; }
};

inline UrnSpec make_urn(int d, std::vector<long long> R,
                        std::vector<long long> alpha) {
  require(d >= 2 && d <= kMaxColours, errc::invalid_argument,
          "colour count must lie in [2, " + std::to_string(kMaxColours) + "]");
  require(R.size() == std::size_t(d) * d, errc::invalid_argument,
          "replacement matrix must have d*d entries");
  require(alpha.size() == std::size_t(d), errc::invalid_argument,
          "initial composition must have d entries");
  long long total = 0;
  for (long long a : alpha) {
    require(a >= 0, errc::invalid_argument, "initial counts must be >= 0");
    require(a <= kMaxEntry, errc::invalid_argument, "initial count too large");
    total += a;
  }
  require(total > 0, errc::invalid_argument,
          "initial composition must contain at least one ball");
  for (long long v : R)
    require(v >= -kMaxEntry && v <= kMaxEntry, errc::invalid_argument,
            "replacement entry magnitude above limit");
  return UrnSpec{d, std::move(R), std::move(alpha)};
}

// ── validation ──────────────────────────────────────────────────────────────

enum class Tenability { negative_diag_bounded, general, fail };

struct ValidationReport {
  bool balanced = false;
  long long S = 0;  // meaningful only when balanced
  Tenability tenability = Tenability::fail;
  bool irreducible = false;
  std::pair<int, int> witness{-1, -1};  // colours (from, to) with no path
  std::vector<std::string> errors;

  bool ok() const {
    return balanced && S >= 1 && tenability != Tenability::fail && irreducible;
  }
};

inline void validate_balance(const UrnSpec& u, ValidationReport& rep) {
  long long s0 = 0;
  for (int i = 0; i < u.d; ++i) s0 += u.at(0, i);
  bool same = true;
  for (int c = 1; c < u.d; ++c) {
    long long s = 0;
    for (int i = 0; i < u.d; ++i) s += u.at(c, i);
    if (s != s0) {
      same = false;
      rep.errors.push_back(std::string(errc_name(errc::row_sum_mismatch)) +
                           ": row " + std::to_string(c) + " sums to " +
                           std::to_string(s) + ", row 0 sums to " +
                           std::to_string(s0));
    }
  }
  if (!same) return;
  if (s0 < 1) {
    rep.errors.push_back(std::string(errc_name(errc::non_positive_balance)) +
                         ": common row sum is " + std::to_string(s0));
    return;
  }
  rep.balanced = true;
  rep.S = s0;
}

inline void validate_tenability(const UrnSpec& u, ValidationReport& rep) {
  bool ok = true;
  for (int c = 0; c < u.d; ++c)
    for (int i = 0; i < u.d; ++i)
      if (c != i && u.at(c, i) < 0) {
        ok = false;
        rep.errors.push_back(
            std::string(errc_name(errc::tenability_violation)) +
            ": off-diagonal entry (" + std::to_string(c) + "," +
            std::to_string(i) + ") is negative");
      }
  bool bounded_diag = true;
  for (int i = 0; i < u.d && ok; ++i) {
    if (u.at(i, i) >= -1) continue;
    bounded_diag = false;
    const long long theta = -u.at(i, i);
    for (int c = 0; c < u.d; ++c)
      if (u.at(c, i) % theta != 0) {
        ok = false;
        rep.errors.push_back(
            std::string(errc_name(errc::tenability_violation)) + ": entry (" +
            std::to_string(c) + "," + std::to_string(i) + ") = " +
            std::to_string(u.at(c, i)) + " not divisible by " +
            std::to_string(theta));
      }
    if (u.alpha[i] % theta != 0) {
      ok = false;
      rep.errors.push_back(
          std::string(errc_name(errc::tenability_violation)) +
          ": initial count of colour " + std::to_string(i) + " = " +
          std::to_string(u.alpha[i]) + " not divisible by " +
          std::to_string(theta));
    }
  }
  rep.tenability = !ok              ? Tenability::fail
                   : bounded_diag   ? Tenability::negative_diag_bounded
                                    : Tenability::general;
}

inline void validate_irreducibility(const UrnSpec& u, ValidationReport& rep) {
  // reach[c] bitmask of colours reachable from c in the creation graph.
  std::vector<std::uint64_t> reach(u.d);
  for (int c = 0; c < u.d; ++c) {
    reach[c] = std::uint64_t(1) << c;
    for (int i = 0; i < u.d; ++i)
      if ((i != c && u.at(c, i) > 0) || (i == c && u.at(c, c) > 0))
        reach[c] |= std::uint64_t(1) << i;
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (int c = 0; c < u.d; ++c) {
      std::uint64_t acc = reach[c];
      for (int i = 0; i < u.d; ++i)
        if (acc >> i & 1) acc |= reach[i];
      if (acc != reach[c]) { reach[c] = acc; grew = true; }
    }
  }
  const std::uint64_t full =
      u.d == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << u.d) - 1;
  for (int c = 0; c < u.d; ++c)
    if (reach[c] != full) {
      for (int i = 0; i < u.d; ++i)
        if (!(reach[c] >> i & 1)) {
          rep.irreducible = false;
          rep.witness = {c, i};
          rep.errors.push_back(std::string(errc_name(errc::reducibility)) +
                               ": colour " + std::to_string(i) +
                               " unreachable from colour " + std::to_string(c));
          return;
        }
    }
  rep.irreducible = true;
}

inline ValidationReport validate(const UrnSpec& u) {
  ValidationReport rep;
  validate_balance(u, rep);
  validate_tenability(u, rep);
  validate_irreducibility(u, rep);
  return rep;
}

// Throwing variant for internal preconditions.
inline ValidationReport validate_or_throw(const UrnSpec& u) {
  ValidationReport rep = validate(u);
  if (!rep.ok()) {
    std::string msg = "scheme rejected:";
    for (const auto& e : rep.errors) msg += " " + e;
    if (!rep.balanced)
      raise(errc::row_sum_mismatch, msg);
    if (rep.tenability == Tenability::fail)
      raise(errc::tenability_violation, msg);
    raise(errc::reducibility, msg);
  }
  return rep;
}

// ── atomic basis ────────────────────────────────────────────────────────────

struct AtomicBasis {
  long long S = 0;
  std::vector<long long> theta;        // θ_i
  std::vector<long long> alpha_atoms;  // α̃_i
  std::vector<long long> a_atoms;      // ã_{c,i}, row-major
  std::vector<long long> gamma;        // γ^{(c)}_i, row-major cumulative
  std::vector<long long> beta;         // β_i cumulative initial atoms

  long long a_tilde(int c, int i) const { return a_atoms[std::size_t(c) * theta.size() + i]; }
  long long gamma_at(int c, int i) const { return gamma[std::size_t(c) * theta.size() + i]; }
  // total replacement slots for a draw of colour c
  long long gamma_total(int c) const { return gamma_at(c, int(theta.size()) - 1); }
  long long beta_total() const { return beta.back(); }
  std::vector<long long> atomic_composition(int i) const {
    std::vector<long long> e(theta.size(), 0);
    e[std::size_t(i)] = theta[std::size_t(i)];
    return e;
  }
};

inline AtomicBasis atomic_basis(const UrnSpec& u) {
  ValidationReport rep = validate_or_throw(u);
  AtomicBasis b;
  b.S = rep.S;
  const int d = u.d;
  b.theta.resize(d);
  b.alpha_atoms.resize(d);
  b.a_atoms.resize(std::size_t(d) * d);
  b.gamma.resize(std::size_t(d) * d);
  b.beta.resize(d);
  for (int i = 0; i < d; ++i)
    b.theta[i] = u.at(i, i) >= -1 ? 1 : -u.at(i, i);
  for (int i = 0; i < d; ++i) {
    b.alpha_atoms[i] = u.alpha[i] / b.theta[i];
    for (int c = 0; c < d; ++c)
      b.a_atoms[std::size_t(c) * d + i] = u.at(c, i) / b.theta[i];
  }
  for (int c = 0; c < d; ++c) {
    long long run = 0;
    for (int i = 0; i < d; ++i) {
      run += b.a_tilde(c, i) + (c == i ? 1 : 0);
      b.gamma[std::size_t(c) * d + i] = run;
    }
  }
  long long run = 0;
  for (int i = 0; i < d; ++i) {
    run += b.alpha_atoms[i];
    b.beta[i] = run;
  }
  // Conservation: replacing colour c's atom spends its θ_c balls and the row
  // adds S, so the produced slots carry S + θ_c balls in total.
  for (int c = 0; c < d; ++c) {
    long long mass = 0;
    for (int i = 0; i < d; ++i)
      mass += (b.a_tilde(c, i) + (c == i ? 1 : 0)) * b.theta[i];
    require(mass == b.S + b.theta[c], errc::tenability_violation,
            "atom mass conservation failed for colour " + std::to_string(c));
  }
  for (int c = 0; c < d; ++c)
    require(b.gamma_total(c) >= 1, errc::tenability_violation,
            "draw of colour " + std::to_string(c) + " produces no atoms");
  return b;
}

}  // namespace urnlab
