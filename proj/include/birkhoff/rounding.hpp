#ifndef BIRKHOFF_ROUNDING_HPP
#define BIRKHOFF_ROUNDING_HPP

#include <Eigen/Dense>

#include "birkhoff/permutation.hpp"
#include "birkhoff/sinkhorn.hpp"

namespace birkhoff {

// Value masked entries of M take before Sinkhorn normalization; exact zeros
// would break the positivity precondition.
inline constexpr double kMaskEpsilon = 1e-6;

// Variational parameters of the rounding transform. m_raw is normalized onto
// the Birkhoff polytope by Sinkhorn-Knopp, v scales the Gaussian noise, and
// tau in (0,1) interpolates between the noisy point and its nearest
// permutation matrix. Entries flagged in `forbidden` (0/1 mask, may be empty)
// are excluded from the assignment and pinned to kMaskEpsilon before
// normalization.
struct RoundingParams {
  Eigen::MatrixXd m_raw;  // N x N, positive
  Eigen::MatrixXd v;      // N x N, kept in [0.1, 0.5] by the optimizer
  double tau = 0.5;
  Eigen::MatrixXi forbidden;

  int n() const { return static_cast<int>(m_raw.rows()); }

  static RoundingParams init(int n, double v0 = 0.3, double tau = 0.5) {
    return {Eigen::MatrixXd::Ones(n, n), Eigen::MatrixXd::Constant(n, n, v0),
            tau, Eigen::MatrixXi()};
  }

  bool has_mask() const { return forbidden.size() > 0; }
};

// m_raw with forbidden entries replaced by kMaskEpsilon.
Eigen::MatrixXd masked_m(const RoundingParams& params);

struct RoundSample {
  Eigen::MatrixXd x;        // tau*psi + (1-tau)*round(psi)
  Eigen::MatrixXd psi;      // m_tilde + v .* z
  Eigen::MatrixXd m_tilde;  // sinkhorn_knopp(masked m_raw)
  Permutation rounded;      // round(psi)
};

RoundSample round_sample(const RoundingParams& params, const Eigen::MatrixXd& z,
                         int sinkhorn_iters = 10);

// Same, with the Sinkhorn-normalized mean supplied by the caller (it is
// shared across the per-step Monte Carlo samples).
RoundSample round_sample_with_mean(const RoundingParams& params,
                                   const Eigen::MatrixXd& m_tilde,
                                   const Eigen::MatrixXd& z);

// Algebraic inverse (x/tau - (1-tau)/tau * round(x) - m_tilde) ./ v.
Eigen::MatrixXd round_inverse(const Eigen::MatrixXd& x,
                              const RoundingParams& params,
                              int sinkhorn_iters = 10);

// sum_mn [-log(tau v_mn) + log N(z_mn; 0, 1)] on the image set of the map;
// -inf outside it. Membership is the self-consistency check
// round((x - (1-tau) round(x))/tau) == round(x).
double round_log_density(const Eigen::MatrixXd& x, const RoundingParams& params,
                         int sinkhorn_iters = 10);

}  // namespace birkhoff

#endif  // BIRKHOFF_ROUNDING_HPP
