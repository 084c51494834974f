#ifndef BIRKHOFF_FIT_HPP
#define BIRKHOFF_FIT_HPP

#include <optional>
#include <vector>

#include "birkhoff/elbo.hpp"
#include "birkhoff/rng.hpp"
#include "birkhoff/schedule.hpp"

namespace birkhoff {

enum class TransformKind { StickBreaking, Rounding, GumbelSoftmaxRows };

struct FitOptions {
  AnnealSchedule schedule;
  int steps = 1500;
  int mc_samples = 10;
  double learning_rate = 0.1;
  double nu_min = 1e-8, nu_max = 1.0;    // stick-breaking scale clamp
  double v_min = 0.1, v_max = 0.5;       // rounding scale clamp
  double m_min = 1e-6, m_max = 1e6;      // rounding mean clamp
  int sinkhorn_iters = 10;
  int snapshot_every = 0;  // 0 = no parameter snapshots
};

struct FitTracePoint {
  int step;
  double tau;
  double elbo;
};

template <typename Params>
struct FitResult {
  Params params;
  std::vector<FitTracePoint> trace;
  std::vector<std::pair<int, Params>> snapshots;
};

// Stochastic gradient ascent on the reparameterized ELBO: each step anneals
// tau, draws mc_samples noise matrices, takes one clamped ADAM step.
// Aborts with a diagnostic if the ELBO estimate turns non-finite.
FitResult<StickBreakingParams> fit_stick_breaking(
    const LogJointFn& logjoint, int n, const FitOptions& opts, Rng& rng,
    std::optional<StickBreakingParams> init = std::nullopt);

FitResult<RoundingParams> fit_rounding(
    const LogJointFn& logjoint, int n, const FitOptions& opts,
    const Eigen::MatrixXi& forbidden, Rng& rng,
    std::optional<RoundingParams> init = std::nullopt);

FitResult<RowwiseParams> fit_rowwise(
    const LogJointFn& logjoint, int n, const FitOptions& opts,
    const Eigen::MatrixXi& forbidden, Rng& rng,
    std::optional<RowwiseParams> init = std::nullopt);

// Rounding requires tau strictly inside (0,1); the schedule value is capped.
inline double rounding_tau(double tau) { return std::min(tau, 0.999); }

}  // namespace birkhoff

#endif  // BIRKHOFF_FIT_HPP
