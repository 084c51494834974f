#include "birkhoff/rounding.hpp"

#include <cmath>
#include <limits>

#include "birkhoff/assignment.hpp"
#include "birkhoff/errors.hpp"
#include "birkhoff/gauss.hpp"

namespace birkhoff {

Eigen::MatrixXd masked_m(const RoundingParams& params) {
  Eigen::MatrixXd m = params.m_raw;
  if (params.has_mask()) {
    if (params.forbidden.rows() != m.rows() || params.forbidden.cols() != m.cols())
      throw ShapeMismatch("forbidden mask shape mismatch");
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (params.forbidden(i, j)) m(i, j) = kMaskEpsilon;
  }
  return m;
}

RoundSample round_sample_with_mean(const RoundingParams& params,
                                   const Eigen::MatrixXd& m_tilde,
                                   const Eigen::MatrixXd& z) {
  if (z.rows() != params.n() || z.cols() != params.n())
    throw ShapeMismatch("noise shape mismatch");
  if (params.tau <= 0.0 || params.tau >= 1.0)
    throw Error("rounding temperature must lie in (0,1)");
  RoundSample s;
  s.m_tilde = m_tilde;
  s.psi = m_tilde + params.v.cwiseProduct(z);
  const Eigen::MatrixXi* mask = params.has_mask() ? &params.forbidden : nullptr;
  s.rounded = round_to_permutation(s.psi, mask);
  s.x = params.tau * s.psi + (1.0 - params.tau) * s.rounded.to_matrix();
  return s;
}

RoundSample round_sample(const RoundingParams& params, const Eigen::MatrixXd& z,
                         int sinkhorn_iters) {
  return round_sample_with_mean(
      params, sinkhorn_knopp(masked_m(params), sinkhorn_iters).entries, z);
}

Eigen::MatrixXd round_inverse(const Eigen::MatrixXd& x,
                              const RoundingParams& params, int sinkhorn_iters) {
  const Eigen::MatrixXi* mask = params.has_mask() ? &params.forbidden : nullptr;
  const Eigen::MatrixXd r = round_to_permutation(x, mask).to_matrix();
  const Eigen::MatrixXd m_tilde =
      sinkhorn_knopp(masked_m(params), sinkhorn_iters).entries;
  const double t = params.tau;
  return ((x / t - (1.0 - t) / t * r - m_tilde).array() / params.v.array())
      .matrix();
}

double round_log_density(const Eigen::MatrixXd& x, const RoundingParams& params,
                         int sinkhorn_iters) {
  const int n = params.n();
  const double t = params.tau;
  const Eigen::MatrixXi* mask = params.has_mask() ? &params.forbidden : nullptr;
  const Permutation r = round_to_permutation(x, mask);
  const Eigen::MatrixXd rm = r.to_matrix();
  // image-set membership: undoing the pull toward round(x) must not cross a
  // Voronoi cell boundary
  const Eigen::MatrixXd psi = (x - (1.0 - t) * rm) / t;
  if (!(round_to_permutation(psi, mask) == r))
    return -std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd m_tilde =
      sinkhorn_knopp(masked_m(params), sinkhorn_iters).entries;
  const Eigen::MatrixXd z = ((psi - m_tilde).array() / params.v.array()).matrix();
  double logq = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      logq += -std::log(t * params.v(i, j)) + log_normal_pdf(z(i, j), 0.0, 1.0);
  return logq;
}

}  // namespace birkhoff
