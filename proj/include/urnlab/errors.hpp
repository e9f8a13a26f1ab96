// ── urnlab/errors.hpp ───────────────────────────────────────────────────────
//
// Error taxonomy for the library.  Every failure that a caller can reasonably
// branch on carries a stable code; the what() string starts with the code name
// so that CLI output and logs stay grep-able.
//
#pragma once

#include <stdexcept>
#include <string>

namespace urnlab {

enum class errc {
  row_sum_mismatch,      // replacement rows do not share a common sum
  non_positive_balance,  // common row sum S < 1
  tenability_violation,  // negative off-diagonal or divisibility failure
  reducibility,          // colour graph not strongly connected
  invalid_argument,      // precondition on a plain argument violated
  parse_error,           // malformed configuration input
  divergent_moment,      // requested moment of U^mu does not exist
  pole_error,            // gamma-ratio argument hits a pole
  block_not_large,       // operation defined only for 1/2 < Re(lambda)/S < 1
  block_not_small,       // operation defined only for Re(lambda)/S <= 1/2
  singular_system,       // moment system matrix singular (should not happen)
  unsupported,           // operation not defined for this block shape
  degenerate_structure,  // rank decision ambiguous at working precision
  empty_pool,            // empirical law with no samples
  mean_drift,            // fixed-point iteration lost its mean constraint
  size_mismatch,         // incompatible sample-pool sizes
  too_few_samples,       // statistic undefined below a floor sample count
  grid_too_coarse,       // probe grid below resolution floor
  noise_dominated,       // signal below Monte Carlo noise over the whole range
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::row_sum_mismatch:     return "RowSumMismatch";
    case errc::non_positive_balance: return "NonPositiveBalance";
    case errc::tenability_violation: return "TenabilityViolation";
    case errc::reducibility:         return "Reducibility";
    case errc::invalid_argument:     return "InvalidArgument";
    case errc::parse_error:          return "ParseError";
    case errc::divergent_moment:     return "DivergentMoment";
    case errc::pole_error:           return "PoleError";
    case errc::block_not_large:      return "BlockNotLarge";
    case errc::block_not_small:      return "BlockNotSmall";
    case errc::singular_system:      return "SingularSystem";
    case errc::unsupported:          return "Unsupported";
    case errc::degenerate_structure: return "DegenerateStructure";
    case errc::empty_pool:           return "EmptyPool";
    case errc::mean_drift:           return "MeanDrift";
    case errc::size_mismatch:        return "SizeMismatch";
    case errc::too_few_samples:      return "TooFewSamples";
    case errc::grid_too_coarse:      return "GridTooCoarse";
    case errc::noise_dominated:      return "NoiseDominated";
  }
  return "UnknownError";
}

class UrnError : public std::runtime_error {
 public:
  UrnError(errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& detail) {
  throw UrnError(code, detail);
}

inline void require(bool ok, errc code, const std::string& detail) {
  if (!ok) raise(code, detail);
}

}  // namespace urnlab
