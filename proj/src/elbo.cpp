#include "birkhoff/elbo.hpp"

#include <cmath>

#include "birkhoff/errors.hpp"
#include "birkhoff/gauss.hpp"

namespace birkhoff {

double gaussian_entropy(const Eigen::MatrixXd& nu) {
  const double c = 0.5 * (kLogTwoPi + 1.0);
  return nu.array().log().sum() + c * static_cast<double>(nu.size());
}

ElboEstimate sb_elbo(const LogJointFn& logjoint, const StickBreakingParams& params,
                     const std::vector<Eigen::MatrixXd>& noise) {
  if (noise.empty()) throw Error("need at least one noise draw");
  const double inv_s = 1.0 / static_cast<double>(noise.size());
  double lj = 0.0, ld = 0.0;
  for (const auto& z : noise) {
    const SbSample s = sb_sample(params, z);
    lj += logjoint(s.x, nullptr);
    ld += s.log_det;
  }
  ElboEstimate e;
  e.num_samples = static_cast<int>(noise.size());
  e.logjoint_term = lj * inv_s;
  e.entropy_term = gaussian_entropy(params.nu) + ld * inv_s;
  e.value = e.logjoint_term + e.entropy_term;
  return e;
}

SbElboGrad sb_elbo_gradient(const LogJointFn& logjoint,
                            const StickBreakingParams& params,
                            const std::vector<Eigen::MatrixXd>& noise) {
  if (noise.empty()) throw Error("need at least one noise draw");
  const int fn = static_cast<int>(params.mu.rows());
  const double inv_s = 1.0 / static_cast<double>(noise.size());
  SbElboGrad out;
  out.d_mu = Eigen::MatrixXd::Zero(fn, fn);
  out.d_nu = Eigen::MatrixXd::Zero(fn, fn);
  double lj = 0.0, ld = 0.0;
  Eigen::MatrixXd gx;
  for (const auto& z : noise) {
    const SbSample s = sb_sample(params, z);
    gx.setZero(fn + 1, fn + 1);
    lj += logjoint(s.x, &gx);
    ld += s.log_det;
    sb_backward(params, z, (gx * inv_s).eval(), inv_s, out.d_mu, out.d_nu);
  }
  // closed-form Gaussian entropy contributes 1/nu elementwise
  out.d_nu.array() += params.nu.array().inverse();
  out.elbo.num_samples = static_cast<int>(noise.size());
  out.elbo.logjoint_term = lj * inv_s;
  out.elbo.entropy_term = gaussian_entropy(params.nu) + ld * inv_s;
  out.elbo.value = out.elbo.logjoint_term + out.elbo.entropy_term;
  return out;
}

ElboEstimate round_elbo(const LogJointFn& logjoint, const RoundingParams& params,
                        const std::vector<Eigen::MatrixXd>& noise,
                        int sinkhorn_iters) {
  if (noise.empty()) throw Error("need at least one noise draw");
  const double inv_s = 1.0 / static_cast<double>(noise.size());
  const Eigen::MatrixXd m_tilde =
      sinkhorn_knopp(masked_m(params), sinkhorn_iters).entries;
  double lj = 0.0;
  for (const auto& z : noise)
    lj += logjoint(round_sample_with_mean(params, m_tilde, z).x, nullptr);
  ElboEstimate e;
  e.num_samples = static_cast<int>(noise.size());
  e.logjoint_term = lj * inv_s;
  const double n2 = static_cast<double>(params.n()) * params.n();
  e.entropy_term = gaussian_entropy(params.v) + n2 * std::log(params.tau);
  e.value = e.logjoint_term + e.entropy_term;
  return e;
}

RoundElboGrad round_elbo_gradient(const LogJointFn& logjoint,
                                  const RoundingParams& params,
                                  const std::vector<Eigen::MatrixXd>& noise,
                                  int sinkhorn_iters) {
  if (noise.empty()) throw Error("need at least one noise draw");
  const int n = params.n();
  const double inv_s = 1.0 / static_cast<double>(noise.size());
  const SinkhornTrace trace = sinkhorn_forward_trace(masked_m(params), sinkhorn_iters);
  RoundElboGrad out;
  out.d_m_raw = Eigen::MatrixXd::Zero(n, n);
  out.d_v = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd g_mean = Eigen::MatrixXd::Zero(n, n);
  double lj = 0.0;
  Eigen::MatrixXd gx;
  for (const auto& z : noise) {
    const RoundSample s = round_sample_with_mean(params, trace.output, z);
    gx.setZero(n, n);
    lj += logjoint(s.x, &gx);
    // X = tau*Psi + (1-tau)*round(Psi); the rounded term is locally constant
    const Eigen::MatrixXd g_psi = params.tau * gx * inv_s;
    out.d_v += g_psi.cwiseProduct(z);
    g_mean += g_psi;
  }
  out.d_m_raw = sinkhorn_vjp(trace, g_mean);
  if (params.has_mask()) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (params.forbidden(i, j)) out.d_m_raw(i, j) = 0.0;
  }
  out.d_v.array() += params.v.array().inverse();
  out.elbo.num_samples = static_cast<int>(noise.size());
  out.elbo.logjoint_term = lj * inv_s;
  out.elbo.entropy_term = gaussian_entropy(params.v) +
                          static_cast<double>(n) * n * std::log(params.tau);
  out.elbo.value = out.elbo.logjoint_term + out.elbo.entropy_term;
  return out;
}

namespace {

// Stable per-row Gumbel-softmax evaluation: log x is taken from the softmax
// logits directly so masked coordinates never contaminate the density.
struct RowEval {
  Eigen::VectorXd x;
  Eigen::VectorXd logx;
  double logq;
};

RowEval eval_row(const Eigen::VectorXd& logits, const Eigen::VectorXd& uniforms,
                 double tau) {
  const int n = static_cast<int>(logits.size());
  Eigen::VectorXd h(n);
  for (int k = 0; k < n; ++k) {
    const double u = std::min(std::max(uniforms(k), 1e-12), 1.0 - 1e-12);
    h(k) = (logits(k) - std::log(-std::log(u))) / tau;
  }
  const double hmax = h.maxCoeff();
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += std::exp(h(k) - hmax);
  const double lse = hmax + std::log(sum);
  RowEval r;
  r.logx = h.array() - lse;
  r.x = r.logx.array().exp();
  // Concrete density on the simplex
  double acc = std::lgamma(static_cast<double>(n)) + (n - 1) * std::log(tau);
  double lse2 = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) lse2 = logsumexp(lse2, logits(k) - tau * r.logx(k));
  for (int k = 0; k < n; ++k) acc += logits(k) - (tau + 1.0) * r.logx(k);
  r.logq = acc - n * lse2;
  return r;
}

Eigen::MatrixXd masked_logits(const RowwiseParams& params) {
  Eigen::MatrixXd l = params.logits;
  if (params.has_mask()) {
    if (params.forbidden.rows() != l.rows() || params.forbidden.cols() != l.cols())
      throw ShapeMismatch("forbidden mask shape mismatch");
    for (int i = 0; i < l.rows(); ++i)
      for (int j = 0; j < l.cols(); ++j)
        if (params.forbidden(i, j)) l(i, j) = kMaskedLogit;
  }
  return l;
}

}  // namespace

Eigen::MatrixXd rowwise_sample(const RowwiseParams& params,
                               const Eigen::MatrixXd& uniforms) {
  const int n = params.n();
  if (uniforms.rows() != n || uniforms.cols() != n)
    throw ShapeMismatch("draw shape mismatch");
  const Eigen::MatrixXd logits = masked_logits(params);
  Eigen::MatrixXd x(n, n);
  for (int m = 0; m < n; ++m)
    x.row(m) =
        eval_row(logits.row(m), uniforms.row(m), params.tau).x.transpose();
  return x;
}

ElboEstimate rowwise_elbo(const LogJointFn& logjoint, const RowwiseParams& params,
                          const std::vector<Eigen::MatrixXd>& uniforms) {
  if (uniforms.empty()) throw Error("need at least one draw");
  const int n = params.n();
  const double inv_s = 1.0 / static_cast<double>(uniforms.size());
  const Eigen::MatrixXd logits = masked_logits(params);
  double lj = 0.0, ent = 0.0;
  Eigen::MatrixXd x(n, n);
  for (const auto& u : uniforms) {
    double logq = 0.0;
    for (int m = 0; m < n; ++m) {
      const RowEval r = eval_row(logits.row(m), u.row(m), params.tau);
      x.row(m) = r.x.transpose();
      logq += r.logq;
    }
    lj += logjoint(x, nullptr);
    ent += -logq;
  }
  ElboEstimate e;
  e.num_samples = static_cast<int>(uniforms.size());
  e.logjoint_term = lj * inv_s;
  e.entropy_term = ent * inv_s;
  e.value = e.logjoint_term + e.entropy_term;
  return e;
}

RowwiseElboGrad rowwise_elbo_gradient(const LogJointFn& logjoint,
                                      const RowwiseParams& params,
                                      const std::vector<Eigen::MatrixXd>& uniforms) {
  if (uniforms.empty()) throw Error("need at least one draw");
  const int n = params.n();
  const double inv_s = 1.0 / static_cast<double>(uniforms.size());
  const double inv_tau = 1.0 / params.tau;
  const Eigen::MatrixXd logits = masked_logits(params);
  RowwiseElboGrad out;
  out.d_logits = Eigen::MatrixXd::Zero(n, n);
  double lj = 0.0, ent = 0.0;
  Eigen::MatrixXd x(n, n), gx(n, n);
  std::vector<RowEval> rows(n);
  for (const auto& u : uniforms) {
    double logq = 0.0;
    for (int m = 0; m < n; ++m) {
      rows[m] = eval_row(logits.row(m), u.row(m), params.tau);
      x.row(m) = rows[m].x.transpose();
      logq += rows[m].logq;
    }
    gx.setZero();
    lj += logjoint(x, &gx);
    ent += -logq;
    for (int m = 0; m < n; ++m) {
      const Eigen::VectorXd& xr = rows[m].x;
      const Eigen::VectorXd gr = gx.row(m).transpose();
      const double dot = gr.dot(xr);
      // log-joint path through the softmax plus the on-path entropy gradient
      // d(-log q)/d logits = (1 - N x) / tau
      for (int l = 0; l < n; ++l) {
        const double g = inv_tau * (xr(l) * (gr(l) - dot) + (1.0 - n * xr(l)));
        out.d_logits(m, l) += g * inv_s;
      }
    }
  }
  if (params.has_mask()) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (params.forbidden(i, j)) out.d_logits(i, j) = 0.0;
  }
  out.elbo.num_samples = static_cast<int>(uniforms.size());
  out.elbo.logjoint_term = lj * inv_s;
  out.elbo.entropy_term = ent * inv_s;
  out.elbo.value = out.elbo.logjoint_term + out.elbo.entropy_term;
  return out;
}

}  // namespace birkhoff
