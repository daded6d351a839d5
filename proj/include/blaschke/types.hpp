#ifndef BLASCHKE_TYPES_HPP
#define BLASCHKE_TYPES_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace blaschke {

using Cplx = std::complex<double>;

inline bool is_finite(Cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Tolerances and knobs shared across the pipeline. All values are
/// echoed verbatim into reports so a run can be reproduced.
struct ToolConfig {
  double cluster_eps = 1e-8;
  double rank_tol = 1e-7;
  double newton_tol = 1e-12;
  double safety_eps = 1e-3;
  double initial_step = 1e-2;
  double mean_circle_radius = 1e-2;
  int mean_samples = 64;
  std::uint64_t seed = 0;

  void validate() const {
    if (cluster_eps <= 0 || rank_tol <= 0 || newton_tol <= 0 ||
        safety_eps <= 0 || initial_step <= 0 || mean_circle_radius <= 0)
      throw std::invalid_argument("ToolConfig: all tolerances must be positive");
    if (mean_samples < 32 || (mean_samples & (mean_samples - 1)) != 0)
      throw std::invalid_argument("ToolConfig: mean_samples must be a power of two >= 32");
  }
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Construction / input errors
struct ZeroOutsideDisk : Error { using Error::Error; };
struct NonUnimodularConstant : Error { using Error::Error; };
struct EmptyProduct : Error { using Error::Error; };
struct DegenerateParameters : Error { using Error::Error; };
struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// Numerical failures
struct NoConvergence : Error { using Error::Error; };
struct RootFindingFailed : Error { using Error::Error; };
struct BochnerCountViolation : Error { using Error::Error; };
struct NoValidBasePoint : Error { using Error::Error; };
struct PathTooCloseToBranchPoint : Error { using Error::Error; };
struct TrackingCollision : Error { using Error::Error; };
struct MinStepReached : Error { using Error::Error; };
struct NearBranchPoint : Error { using Error::Error; };
struct InverseBlockMissing : Error { using Error::Error; };
struct CrossCheckFailed : Error { using Error::Error; };

}  // namespace blaschke

#endif
