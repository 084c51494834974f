#include "birkhoff/fit.hpp"

#include <cmath>
#include <string>

#include "birkhoff/adam.hpp"
#include "birkhoff/errors.hpp"

namespace birkhoff {

namespace {

std::vector<Eigen::MatrixXd> draw_noise(int count, int rows, int cols, Rng& rng) {
  std::vector<Eigen::MatrixXd> zs;
  zs.reserve(count);
  for (int s = 0; s < count; ++s) zs.push_back(rng.normal_matrix(rows, cols));
  return zs;
}

std::vector<Eigen::MatrixXd> draw_uniforms(int count, int n, Rng& rng) {
  std::vector<Eigen::MatrixXd> us;
  us.reserve(count);
  for (int s = 0; s < count; ++s) {
    Eigen::MatrixXd u(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) u(i, j) = rng.uniform();
    us.push_back(std::move(u));
  }
  return us;
}

[[noreturn]] void abort_non_finite(const char* what, int step, double tau) {
  throw Error(std::string("non-finite ELBO estimate (") + what + ") at step " +
              std::to_string(step) + ", tau=" + std::to_string(tau));
}

}  // namespace

FitResult<StickBreakingParams> fit_stick_breaking(
    const LogJointFn& logjoint, int n, const FitOptions& opts, Rng& rng,
    std::optional<StickBreakingParams> init) {
  FitResult<StickBreakingParams> result;
  result.params = init ? *init : StickBreakingParams::init(n);
  AdamState mu_state = AdamState::like(result.params.mu, opts.learning_rate);
  AdamState nu_state = AdamState::like(result.params.nu, opts.learning_rate);
  for (int k = 0; k < opts.steps; ++k) {
    result.params.tau = opts.schedule.at(k);
    const auto zs = draw_noise(opts.mc_samples, n - 1, n - 1, rng);
    SbElboGrad g = sb_elbo_gradient(logjoint, result.params, zs);
    if (!std::isfinite(g.elbo.value))
      abort_non_finite("stick-breaking", k, result.params.tau);
    adam_step(mu_state, (-g.d_mu).eval(), result.params.mu);
    adam_step(nu_state, (-g.d_nu).eval(), result.params.nu, opts.nu_min,
              opts.nu_max);
    result.trace.push_back({k, result.params.tau, g.elbo.value});
    if (opts.snapshot_every > 0 && (k + 1) % opts.snapshot_every == 0)
      result.snapshots.emplace_back(k, result.params);
  }
  return result;
}

FitResult<RoundingParams> fit_rounding(const LogJointFn& logjoint, int n,
                                       const FitOptions& opts,
                                       const Eigen::MatrixXi& forbidden,
                                       Rng& rng,
                                       std::optional<RoundingParams> init) {
  FitResult<RoundingParams> result;
  result.params = init ? *init : RoundingParams::init(n);
  result.params.forbidden = forbidden;
  AdamState m_state = AdamState::like(result.params.m_raw, opts.learning_rate);
  AdamState v_state = AdamState::like(result.params.v, opts.learning_rate);
  for (int k = 0; k < opts.steps; ++k) {
    result.params.tau = rounding_tau(opts.schedule.at(k));
    const auto zs = draw_noise(opts.mc_samples, n, n, rng);
    RoundElboGrad g =
        round_elbo_gradient(logjoint, result.params, zs, opts.sinkhorn_iters);
    if (!std::isfinite(g.elbo.value))
      abort_non_finite("rounding", k, result.params.tau);
    adam_step(m_state, (-g.d_m_raw).eval(), result.params.m_raw, opts.m_min,
              opts.m_max);
    adam_step(v_state, (-g.d_v).eval(), result.params.v, opts.v_min, opts.v_max);
    result.trace.push_back({k, result.params.tau, g.elbo.value});
    if (opts.snapshot_every > 0 && (k + 1) % opts.snapshot_every == 0)
      result.snapshots.emplace_back(k, result.params);
  }
  return result;
}

FitResult<RowwiseParams> fit_rowwise(const LogJointFn& logjoint, int n,
                                     const FitOptions& opts,
                                     const Eigen::MatrixXi& forbidden, Rng& rng,
                                     std::optional<RowwiseParams> init) {
  FitResult<RowwiseParams> result;
  result.params = init ? *init : RowwiseParams::init(n);
  result.params.forbidden = forbidden;
  AdamState state = AdamState::like(result.params.logits, opts.learning_rate);
  for (int k = 0; k < opts.steps; ++k) {
    result.params.tau = opts.schedule.at(k);
    const auto us = draw_uniforms(opts.mc_samples, n, rng);
    RowwiseElboGrad g = rowwise_elbo_gradient(logjoint, result.params, us);
    if (!std::isfinite(g.elbo.value))
      abort_non_finite("rowwise", k, result.params.tau);
    adam_step(state, (-g.d_logits).eval(), result.params.logits);
    result.trace.push_back({k, result.params.tau, g.elbo.value});
    if (opts.snapshot_every > 0 && (k + 1) % opts.snapshot_every == 0)
      result.snapshots.emplace_back(k, result.params);
  }
  return result;
}

}  // namespace birkhoff
