#ifndef BIRKHOFF_ELBO_HPP
#define BIRKHOFF_ELBO_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "birkhoff/rounding.hpp"
#include "birkhoff/stick_breaking.hpp"

namespace birkhoff {

// Relaxed model log joint density log p(X, y) evaluated at a real-valued
// matrix X; when grad is non-null the gradient w.r.t. X is written there.
using LogJointFn =
    std::function<double(const Eigen::MatrixXd&, Eigen::MatrixXd*)>;

struct ElboEstimate {
  double value = 0.0;
  double entropy_term = 0.0;   // H(Psi) + E log |J_h|
  double logjoint_term = 0.0;  // Monte Carlo mean of log p(X, y)
  int num_samples = 0;
};

// 0.5 * sum log(2 pi e nu^2) over all entries
double gaussian_entropy(const Eigen::MatrixXd& nu);

// --- stick-breaking -------------------------------------------------------

ElboEstimate sb_elbo(const LogJointFn& logjoint, const StickBreakingParams& params,
                     const std::vector<Eigen::MatrixXd>& noise);

struct SbElboGrad {
  ElboEstimate elbo;
  Eigen::MatrixXd d_mu, d_nu;
};

// Exact chain-rule gradient of sb_elbo for the given fixed noise draws.
SbElboGrad sb_elbo_gradient(const LogJointFn& logjoint,
                            const StickBreakingParams& params,
                            const std::vector<Eigen::MatrixXd>& noise);

// --- rounding --------------------------------------------------------------

// For the rounding transform the transform Jacobian is the constant
// N^2 log tau, so the entropy term has no Monte Carlo variance.
ElboEstimate round_elbo(const LogJointFn& logjoint, const RoundingParams& params,
                        const std::vector<Eigen::MatrixXd>& noise,
                        int sinkhorn_iters = 10);

struct RoundElboGrad {
  ElboEstimate elbo;
  Eigen::MatrixXd d_m_raw, d_v;
};

// Gradient flows through tau*Psi and the unrolled Sinkhorn normalization;
// the round(Psi) term is piecewise constant and contributes none.
RoundElboGrad round_elbo_gradient(const LogJointFn& logjoint,
                                  const RoundingParams& params,
                                  const std::vector<Eigen::MatrixXd>& noise,
                                  int sinkhorn_iters = 10);

// --- row-wise Gumbel-softmax (no column coupling) ---------------------------

// Baseline family: each row of X is an independent Gumbel-softmax sample on
// the simplex; masked entries get a large negative logit and are never
// selected.
struct RowwiseParams {
  Eigen::MatrixXd logits;  // N x N
  double tau = 0.5;
  Eigen::MatrixXi forbidden;

  int n() const { return static_cast<int>(logits.rows()); }
  bool has_mask() const { return forbidden.size() > 0; }

  static RowwiseParams init(int n, double tau = 0.5) {
    return {Eigen::MatrixXd::Zero(n, n), tau, Eigen::MatrixXi()};
  }
};

inline constexpr double kMaskedLogit = -40.0;

// Sample the full matrix (rows independently) from uniform draws.
Eigen::MatrixXd rowwise_sample(const RowwiseParams& params,
                               const Eigen::MatrixXd& uniforms);

ElboEstimate rowwise_elbo(const LogJointFn& logjoint, const RowwiseParams& params,
                          const std::vector<Eigen::MatrixXd>& uniforms);

struct RowwiseElboGrad {
  ElboEstimate elbo;
  Eigen::MatrixXd d_logits;
};

RowwiseElboGrad rowwise_elbo_gradient(const LogJointFn& logjoint,
                                      const RowwiseParams& params,
                                      const std::vector<Eigen::MatrixXd>& uniforms);

}  // namespace birkhoff

#endif  // BIRKHOFF_ELBO_HPP
