// ── urnlab CLI ──────────────────────────────────────────────────────────────
//
// Single executable over the library:
//
//   validate   structural checks (balance, tenability, irreducibility)
//   spectrum   eigenvalues, classes, Jordan data (JSON)
//   simulate   final compositions of independent runs (CSV)
//   wsample    limit-variable estimates per atomic colour (CSV)
//   moments    exact joint-moment table + growth diagnostics (JSON)
//   fixpoint   smoothing-map iteration trace (CSV)
//   density    kernel density estimate of the limit law (CSV)
//   charfn     radial characteristic-function profile, optional decay fit (CSV)
//   verify     statistical test suites (JSON report)
//
// Exit codes: 0 success; 1 usage or runtime error; 2 validation failure;
// 3 any verification test below its level.  Data goes to stdout or --out,
// messages to stderr.  Identical invocations produce byte-identical output.
//
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "urnlab/density.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/fixpoint.hpp"
#include "urnlab/io.hpp"
#include "urnlab/moments.hpp"
#include "urnlab/parallel.hpp"
#include "urnlab/rng.hpp"
#include "urnlab/simulate.hpp"
#include "urnlab/spectral.hpp"
#include "urnlab/stats.hpp"
#include "urnlab/urn.hpp"
#include "urnlab/verify.hpp"

namespace {

using urnlab::cplx;
using ordered_json = nlohmann::ordered_json;

// "6", "-4", "2+3i", "-1.5-2i", "3i", "i", "-i" → complex value
cplx parse_eigenvalue(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  urnlab::require(!s.empty(), urnlab::errc::invalid_argument,
                  "empty eigenvalue selector");
  const auto to_num = [](std::string t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      urnlab::raise(urnlab::errc::invalid_argument,
                    "cannot parse eigenvalue component '" + t + "'");
    }
    urnlab::require(used == t.size(), urnlab::errc::invalid_argument,
                    "cannot parse eigenvalue component '" + t + "'");
    return v;
  };
  if (s.back() != 'i') return cplx(to_num(s), 0.0);
  s.pop_back();
  // split before the sign of the imaginary part (skip leading sign, exponents)
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return cplx(0.0, to_num(s));
  return cplx(to_num(s.substr(0, split)), to_num(s.substr(split)));
}

struct OutputFile {
  std::ofstream file;
  std::ostream* stream = &std::cout;
  explicit OutputFile(const std::string& path) {
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      urnlab::require(bool(file), urnlab::errc::invalid_argument,
                      "cannot open output file: " + path);
      stream = &file;
    }
  }
};

ordered_json complex_json(cplx z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

std::string tenability_name(urnlab::Tenability t) {
  switch (t) {
    case urnlab::Tenability::negative_diag_bounded: return "negative_diag_bounded";
    case urnlab::Tenability::general: return "general";
    case urnlab::Tenability::fail: return "fail";
  }
  return "fail";
}

// shared options
struct Common {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  int threads = 0;
  int resolved_threads() const {
    return threads > 0 ? threads : urnlab::default_threads();
  }
};

int cmd_validate(const Common& co) {
  const urnlab::UrnSpec u = urnlab::load_urn_config(co.config);
  const urnlab::ValidationReport rep = urnlab::validate(u);
  OutputFile out(co.out);
  std::ostream& os = *out.stream;
  os << "balanced: " << (rep.balanced ? "yes" : "no");
  if (rep.balanced) os << " (S=" << rep.S << ")";
  os << "\n";
  os << "tenability: " << tenability_name(rep.tenability) << "\n";
  os << "irreducible: " << (rep.irreducible ? "yes" : "no");
  if (!rep.irreducible && rep.witness.first >= 0)
    os << " (no path " << rep.witness.first << " -> " << rep.witness.second
       << ")";
  os << "\n";
  for (const std::string& e : rep.errors) os << "error: " << e << "\n";
  return rep.ok() ? 0 : 2;
}

int cmd_spectrum(const Common& co) {
  const urnlab::UrnSpec u = urnlab::load_urn_config(co.config);
  const urnlab::Spectrum spec = urnlab::eigen_spectrum(u);
  ordered_json j;
  j["schema"] = "urnlab.spectrum.v1";
  j["d"] = spec.d;
  j["S"] = spec.S;
  j["op_norm"] = spec.op_norm;
  j["eigenvalues"] = ordered_json::array();
  for (const auto& [lambda, mult] : spec.eigenvalues) {
    ordered_json e = complex_json(lambda);
    e["multiplicity"] = mult;
    e["class"] = urnlab::eigen_class_name(urnlab::classify(lambda, spec.S));
    j["eigenvalues"].push_back(e);
  }
  j["blocks"] = ordered_json::array();
  for (const auto& blk : spec.blocks) {
    ordered_json b;
    b["lambda"] = complex_json(blk.lambda);
    b["nu"] = blk.nu;
    b["class"] = urnlab::eigen_class_name(blk.klass);
    b["v"] = ordered_json::array();
    for (const cplx& x : blk.v) b["v"].push_back(complex_json(x));
    b["u"] = ordered_json::array();
    for (const cplx& x : blk.u_dual) b["u"].push_back(complex_json(x));
    j["blocks"].push_back(b);
  }
  OutputFile out(co.out);
  *out.stream << j.dump(2) << "\n";
  return 0;
}

int cmd_simulate(const Common& co, const std::string& mode_str,
                 long long steps, int replicas) {
  const urnlab::UrnSpec u = urnlab::load_urn_config(co.config);
  urnlab::validate_or_throw(u);
  const bool ct = mode_str == "ct";
  std::vector<std::string> header{"replica"};
  for (int i = 0; i < u.d; ++i) header.push_back("c" + std::to_string(i));
  if (ct) header.push_back("tau");
  OutputFile out(co.out);
  urnlab::CsvWriter csv(*out.stream, "urnlab.simulate.v1", header);
  for (int r = 0; r < replicas; ++r) {
    urnlab::RngStream colour_rng(co.seed, std::uint32_t(r),
                                 urnlab::role::colour);
    csv.field((long long)r);
    if (ct) {
      urnlab::RngStream clock_rng(co.seed, std::uint32_t(r),
                                  urnlab::role::clock);
      const urnlab::TrajectoryCT t =
          urnlab::run_ct(u, steps, colour_rng, clock_rng);
      for (long long x : t.jumps.state) csv.field(x);
      csv.field(t.tau_n());
    } else {
      const urnlab::TrajectoryDT t = urnlab::run_dt(u, steps, colour_rng);
      for (long long x : t.state) csv.field(x);
    }
    csv.end_row();
  }
  return 0;
}

int cmd_wsample(const Common& co, const std::string& eig,
                const std::string& mode_str, long long steps, int replicas) {
  const urnlab::UrnSpec u = urnlab::load_urn_config(co.config);
  const urnlab::AtomicBasis basis = urnlab::atomic_basis(u);
  const urnlab::Spectrum spec = urnlab::eigen_spectrum(u);
  const urnlab::JordanBlock blk =
      urnlab::find_block(spec, parse_eigenvalue(eig));
  const urnlab::TimeMode mode =
      mode_str == "ct" ? urnlab::TimeMode::ct : urnlab::TimeMode::dt;
  const std::vector<urnlab::WSampleSet> sets = urnlab::sample_w_atomic(
      u, basis, blk, mode, steps, replicas, co.seed, co.resolved_threads());
  std::vector<std::string> header{"replica", "colour", "n", "re_w", "im_w"};
  if (mode == urnlab::TimeMode::ct) header.push_back("xi");
  OutputFile out(co.out);
  urnlab::CsvWriter csv(*out.stream, "urnlab.wsample.v1", header);
  for (const auto& set : sets) {
    for (std::size_t r = 0; r < set.w.size(); ++r) {
      csv.field((long long)r);
      csv.field(set.colour);
      csv.field(set.n);
      csv.field(set.w[r].real());
      csv.field(set.w[r].imag());
      if (mode == urnlab::TimeMode::ct) csv.field(set.xi[r]);
      csv.end_row();
    }
  }
  return 0;
}

int cmd_moments(const Common& co, const std::string& eig, int p_max) {
  const urnlab::UrnSpec u = urnlab::load_urn_config(co.config);
  const urnlab::AtomicBasis basis = urnlab::atomic_basis(u);
  const urnlab::Spectrum spec = urnlab::eigen_spectrum(u);
  const urnlab::JordanBlock blk =
      urnlab::find_block(spec, parse_eigenvalue(eig));
  const urnlab::MomentTable ct = urnlab::ct_joint_moments(basis, blk, p_max);
  const urnlab::MomentTable dt = urnlab::dt_joint_moments(ct, basis, blk);
  ordered_json j;
  j["schema"] = "urnlab.moments.v1";
  j["lambda"] = complex_json(blk.lambda);
  j["nu"] = blk.nu;
  j["p_max"] = p_max;
  j["colours"] = ordered_json::array();
  for (int c = 0; c < u.d; ++c) {
    ordered_json cj;
    cj["colour"] = c;
    cj["moments"] = ordered_json::array();
    for (int m = 1; m <= p_max; ++m)
      for (int q = 0; q <= m; ++q) {
        const int p = m - q;
        ordered_json mj;
        mj["p"] = p;
        mj["q"] = q;
        mj["ct"] = complex_json(ct.at(c, p, q));
        mj["dt"] = complex_json(dt.at(c, p, q));
        cj["moments"].push_back(mj);
      }
    j["colours"].push_back(cj);
  }
  if (p_max >= 2) {
    const auto rows = urnlab::carleman_diagnostic(ct);
    j["carleman"] = ordered_json::array();
    for (int c = 0; c < u.d; ++c) {
      ordered_json cj;
      cj["colour"] = c;
      cj["rows"] = ordered_json::array();
      for (const auto& row : rows[std::size_t(c)]) {
        cj["rows"].push_back(ordered_json{{"order", row.two_p},
                                          {"abs_moment", row.abs_moment},
                                          {"bound_seq", row.bound_seq},
                                          {"partial_sum", row.partial_sum}});
      }
      j["carleman"].push_back(cj);
    }
  }
  OutputFile out(co.out);
  *out.stream << j.dump(2) << "\n";
  return 0;
}

int cmd_fixpoint(const Common& co, const std::string& eig,
                 const std::string& mode_str, std::size_t pool, int iters,
                 double noise_factor) {
  const urnlab::UrnSpec u = urnlab::load_urn_config(co.config);
  const urnlab::AtomicBasis basis = urnlab::atomic_basis(u);
  const urnlab::Spectrum spec = urnlab::eigen_spectrum(u);
  const urnlab::JordanBlock blk =
      urnlab::find_block(spec, parse_eigenvalue(eig));
  urnlab::FixpointOptions opt;
  opt.mode = mode_str == "ct" ? urnlab::TimeMode::ct : urnlab::TimeMode::dt;
  opt.max_iter = iters;
  opt.out_size = pool;
  opt.noise_factor = noise_factor;
  opt.seed = co.seed;
  opt.threads = co.resolved_threads();

  // Gaussian start around the exact means with the exact variances
  const std::vector<cplx> mv = urnlab::mean_vector(basis, blk);
  const urnlab::MomentTable ct_tab = urnlab::ct_joint_moments(basis, blk, 2);
  const urnlab::MomentTable tab =
      opt.mode == urnlab::TimeMode::ct
          ? ct_tab
          : urnlab::dt_joint_moments(ct_tab, basis, blk);
  std::vector<cplx> means(static_cast<std::size_t>(u.d));
  std::vector<double> variances(static_cast<std::size_t>(u.d));
  for (int c = 0; c < u.d; ++c) {
    means[std::size_t(c)] = tab.at(c, 1, 0);
    variances[std::size_t(c)] = std::max(
        0.0, tab.at(c, 1, 1).real() - std::norm(means[std::size_t(c)]));
  }
  const bool real_valued = std::abs(blk.lambda.imag()) < 1e-12;
  const urnlab::EmpiricalLaw init = urnlab::make_gaussian_law(
      means, variances, pool, co.seed, 0, real_valued);
  const urnlab::FixpointResult res =
      urnlab::iterate_to_fixpoint(init, basis, blk, opt);

  std::vector<std::string> header{"iter"};
  for (int c = 0; c < u.d; ++c) header.push_back("dist_c" + std::to_string(c));
  header.push_back("max");
  header.push_back("noise_floor");
  OutputFile out(co.out);
  urnlab::CsvWriter csv(*out.stream, "urnlab.fixpoint.v1", header);
  for (const auto& row : res.trace) {
    csv.field(row.iter);
    for (double dcol : row.per_colour) csv.field(dcol);
    csv.field(row.max);
    csv.field(row.noise_floor);
    csv.end_row();
  }
  std::cerr << (res.converged ? "converged" : "not converged") << " after "
            << res.iterations << " iteration(s)\n";
  return 0;
}

int cmd_density(const Common& co, const std::string& eig,
                const std::string& mode_str, long long steps, int replicas,
                int colour, std::size_t grid) {
  const urnlab::UrnSpec u = urnlab::load_urn_config(co.config);
  const urnlab::AtomicBasis basis = urnlab::atomic_basis(u);
  const urnlab::Spectrum spec = urnlab::eigen_spectrum(u);
  const urnlab::JordanBlock blk =
      urnlab::find_block(spec, parse_eigenvalue(eig));
  urnlab::require(colour >= 0 && colour < u.d, urnlab::errc::invalid_argument,
                  "colour out of range");
  const urnlab::TimeMode mode =
      mode_str == "ct" ? urnlab::TimeMode::ct : urnlab::TimeMode::dt;
  const urnlab::WSampleSet set = urnlab::sample_w_batch(
      u, blk, mode, basis.atomic_composition(colour), steps, replicas, co.seed,
      co.resolved_threads(), colour);
  OutputFile out(co.out);
  if (std::abs(blk.lambda.imag()) < 1e-12) {
    std::vector<double> x(set.w.size());
    for (std::size_t i = 0; i < set.w.size(); ++i) x[i] = set.w[i].real();
    const urnlab::DensityEstimate1D kde =
        urnlab::kde_1d(x, 0.0, grid ? grid : 512, co.resolved_threads());
    urnlab::CsvWriter csv(*out.stream, "urnlab.density.v1", {"x", "density"});
    for (std::size_t g = 0; g < kde.grid.size(); ++g) {
      csv.field(kde.grid[g]);
      csv.field(kde.values[g]);
      csv.end_row();
    }
  } else {
    const urnlab::DensityEstimate2D kde =
        urnlab::kde_2d(set.w, grid ? grid : 128, co.resolved_threads());
    urnlab::CsvWriter csv(*out.stream, "urnlab.density.v1",
                          {"x", "y", "density"});
    for (std::size_t jy = 0; jy < kde.ys.size(); ++jy)
      for (std::size_t ix = 0; ix < kde.xs.size(); ++ix) {
        csv.field(kde.xs[ix]);
        csv.field(kde.ys[jy]);
        csv.field(kde.values[jy * kde.xs.size() + ix]);
        csv.end_row();
      }
  }
  return 0;
}

int cmd_charfn(const Common& co, const std::string& eig,
               const std::string& mode_str, long long steps, int replicas,
               int colour, double r_min, double r_max, int n_r, bool decay) {
  const urnlab::UrnSpec u = urnlab::load_urn_config(co.config);
  const urnlab::AtomicBasis basis = urnlab::atomic_basis(u);
  const urnlab::Spectrum spec = urnlab::eigen_spectrum(u);
  const urnlab::JordanBlock blk =
      urnlab::find_block(spec, parse_eigenvalue(eig));
  urnlab::require(colour >= 0 && colour < u.d, urnlab::errc::invalid_argument,
                  "colour out of range");
  urnlab::require(r_min > 0 && r_max > r_min && n_r >= 2,
                  urnlab::errc::invalid_argument, "bad radius range");
  const urnlab::TimeMode mode =
      mode_str == "ct" ? urnlab::TimeMode::ct : urnlab::TimeMode::dt;
  const urnlab::WSampleSet set = urnlab::sample_w_batch(
      u, blk, mode, basis.atomic_composition(colour), steps, replicas, co.seed,
      co.resolved_threads(), colour);
  const bool real_valued = std::abs(blk.lambda.imag()) < 1e-12;
  std::vector<double> rs(static_cast<std::size_t>(n_r));
  for (int k = 0; k < n_r; ++k)
    rs[std::size_t(k)] =
        r_min * std::pow(r_max / r_min, double(k) / double(n_r - 1));
  const double se = 1.0 / std::sqrt(double(set.w.size()));
  OutputFile out(co.out);
  urnlab::CsvWriter csv(*out.stream, "urnlab.charfn.v1", {"r", "psi", "se"});
  for (double r : rs) {
    csv.field(r);
    csv.field(urnlab::radial_sup(set.w, r, 64, real_valued,
                                 co.resolved_threads()));
    csv.field(se);
    csv.end_row();
  }
  if (decay) {
    const urnlab::DecayEstimate est = urnlab::decay_exponent(
        set.w, rs, 64, real_valued, co.resolved_threads());
    *out.stream << "# decay: rho=" << urnlab::fmt_g17(est.rho) << " ci=["
                << urnlab::fmt_g17(est.ci_lo) << ","
                << urnlab::fmt_g17(est.ci_hi) << "] n_used=" << est.n_used
                << "\n";
  }
  return 0;
}

int cmd_verify(const Common& co, urnlab::VerifyOptions opt,
               const std::string& eig) {
  const urnlab::UrnSpec u = urnlab::load_urn_config(co.config);
  opt.seed = co.seed;
  opt.threads = co.resolved_threads();
  if (!eig.empty()) opt.eigenvalue = parse_eigenvalue(eig);
  const std::vector<urnlab::TestReport> reports =
      urnlab::run_verify_suite(u, opt);
  ordered_json j;
  j["schema"] = "urnlab.verify.v1";
  j["suite"] = opt.suite;
  j["level"] = opt.level;
  j["seed"] = opt.seed;
  j["results"] = ordered_json::array();
  bool all_pass = true;
  for (const auto& r : reports) {
    // runtime is intentionally omitted: outputs must be byte-reproducible
    ordered_json rj;
    rj["name"] = r.name;
    rj["colour"] = r.colour;
    rj["n_x"] = r.n_x;
    rj["n_y"] = r.n_y;
    rj["statistic"] = r.statistic;
    rj["p_value"] = r.p_value;
    rj["level"] = r.level;
    rj["pass"] = r.pass;
    rj["note"] = r.note;
    j["results"].push_back(rj);
    all_pass = all_pass && r.pass;
  }
  OutputFile out(co.out);
  *out.stream << j.dump(2) << "\n";
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "urnlab: balanced multicolour urn schemes, their spectral "
      "decompositions, limit-variable estimation, exact moments, "
      "distributional fixed points and statistical verification"};
  app.require_subcommand(1);

  Common co;
  app.add_option("--threads", co.threads,
                 "worker threads (default: URNLAB_THREADS or hardware)");

  std::string mode = "dt";
  std::string eig;
  long long steps = 10000;
  int replicas = 1000;

  auto add_common = [&](CLI::App* sub, bool needs_seed) {
    sub->add_option("config", co.config, "urn configuration JSON")
        ->required();
    sub->add_option("--out", co.out, "output file (default: stdout)");
    auto* s = sub->add_option("--seed", co.seed, "RNG seed");
    if (needs_seed) s->required();
  };

  // validate
  auto* validate = app.add_subcommand(
      "validate", "check balance, tenability and irreducibility");
  add_common(validate, false);

  // spectrum
  auto* spectrum = app.add_subcommand(
      "spectrum", "eigenvalues, classes and Jordan data (JSON)");
  add_common(spectrum, false);

  // simulate
  auto* simulate =
      app.add_subcommand("simulate", "final compositions of seeded runs (CSV)");
  add_common(simulate, true);
  simulate->add_option("--mode", mode, "dt or ct")
      ->check(CLI::IsMember({"dt", "ct"}));
  simulate->add_option("--steps", steps, "draws per run")->required();
  simulate->add_option("--replicas", replicas, "independent runs")->required();

  // wsample
  auto* wsample = app.add_subcommand(
      "wsample", "limit-variable estimates per atomic colour (CSV)");
  add_common(wsample, true);
  wsample->add_option("--eigenvalue", eig, "eigenvalue selector, e.g. 6 or 2+3i")
      ->required();
  wsample->add_option("--mode", mode, "dt or ct")
      ->check(CLI::IsMember({"dt", "ct"}));
  wsample->add_option("--steps", steps, "draws per run")->required();
  wsample->add_option("--replicas", replicas, "independent runs")->required();

  // moments
  int p_max = 4;
  auto* moments = app.add_subcommand(
      "moments", "exact joint-moment table with growth diagnostics (JSON)");
  add_common(moments, false);
  moments->add_option("--eigenvalue", eig, "eigenvalue selector")->required();
  moments->add_option("--pmax", p_max, "maximal total degree");

  // fixpoint
  std::size_t pool = 100000;
  int iters = 30;
  double noise_factor = 1.0;
  auto* fixpoint = app.add_subcommand(
      "fixpoint", "iterate the smoothing map to its fixed point (CSV trace)");
  add_common(fixpoint, true);
  fixpoint->add_option("--eigenvalue", eig, "eigenvalue selector")->required();
  fixpoint->add_option("--mode", mode, "dt or ct")
      ->check(CLI::IsMember({"dt", "ct"}));
  fixpoint->add_option("--pool", pool, "samples per colour pool");
  fixpoint->add_option("--iters", iters, "maximal iterations");
  fixpoint->add_option("--noise-factor", noise_factor,
                       "stop at distance <= factor * noise floor");

  // density
  int colour = 0;
  std::size_t grid = 0;
  auto* density = app.add_subcommand(
      "density", "kernel density estimate of the limit law (CSV)");
  add_common(density, true);
  density->add_option("--eigenvalue", eig, "eigenvalue selector")->required();
  density->add_option("--mode", mode, "dt or ct")
      ->check(CLI::IsMember({"dt", "ct"}));
  density->add_option("--steps", steps, "draws per run")->required();
  density->add_option("--replicas", replicas, "independent runs")->required();
  density->add_option("--colour", colour, "atomic start colour");
  density->add_option("--grid", grid, "grid points per axis");

  // charfn
  double r_min = 0.5, r_max = 5.0;
  int n_r = 16;
  bool decay = false;
  auto* charfn = app.add_subcommand(
      "charfn", "radial characteristic-function profile (CSV)");
  add_common(charfn, true);
  charfn->add_option("--eigenvalue", eig, "eigenvalue selector")->required();
  charfn->add_option("--mode", mode, "dt or ct")
      ->check(CLI::IsMember({"dt", "ct"}));
  charfn->add_option("--steps", steps, "draws per run")->required();
  charfn->add_option("--replicas", replicas, "independent runs")->required();
  charfn->add_option("--colour", colour, "atomic start colour");
  charfn->add_option("--rmin", r_min, "smallest radius");
  charfn->add_option("--rmax", r_max, "largest radius");
  charfn->add_option("--nr", n_r, "number of radii (log-spaced)");
  charfn->add_flag("--decay", decay, "append the decay-exponent fit");

  // verify
  urnlab::VerifyOptions vopt;
  auto* verify =
      app.add_subcommand("verify", "statistical test suites (JSON report)");
  add_common(verify, true);
  verify
      ->add_option("--suite", vopt.suite,
                   "dislocation|decomposition|martingale|dirichlet|clt|"
                   "forest|all")
      ->check(CLI::IsMember({"dislocation", "decomposition", "martingale",
                             "dirichlet", "clt", "forest", "all"}));
  verify->add_option("--level", vopt.level, "test level (default 0.01)");
  verify->add_option("--eigenvalue", eig, "eigenvalue selector override");
  verify->add_option("--steps", vopt.steps, "draws per trajectory");
  verify->add_option("--replicas", vopt.replicas, "samples per side");
  verify->add_option("--n-perm", vopt.n_perm, "permutations per test");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(co);
    if (*spectrum) return cmd_spectrum(co);
    if (*simulate) return cmd_simulate(co, mode, steps, replicas);
    if (*wsample) return cmd_wsample(co, eig, mode, steps, replicas);
    if (*moments) return cmd_moments(co, eig, p_max);
    if (*fixpoint)
      return cmd_fixpoint(co, eig, mode, pool, iters, noise_factor);
    if (*density)
      return cmd_density(co, eig, mode, steps, replicas, colour, grid);
    if (*charfn)
      return cmd_charfn(co, eig, mode, steps, replicas, colour, r_min, r_max,
                        n_r, decay);
    if (*verify) return cmd_verify(co, vopt, eig);
  } catch (const urnlab::UrnError& e) {
    std::cerr << "error [" << urnlab::errc_name(e.code()) << "]: " << e.what()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
