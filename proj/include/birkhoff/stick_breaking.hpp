#ifndef BIRKHOFF_STICK_BREAKING_HPP
#define BIRKHOFF_STICK_BREAKING_HPP

#include <Eigen/Dense>
#include <utility>

#include "birkhoff/sinkhorn.hpp"

namespace birkhoff {

// Variational parameters of the stick-breaking transform: entrywise Gaussian
// means and std devs of the intermediate matrix Psi, plus the temperature of
// the logistic squashing. nu is kept inside [1e-8, 1] by the optimizer.
struct StickBreakingParams {
  Eigen::MatrixXd mu;  // (N-1) x (N-1)
  Eigen::MatrixXd nu;  // (N-1) x (N-1), positive
  double tau = 1.0;

  int n() const { return static_cast<int>(mu.rows()) + 1; }

  static StickBreakingParams init(int n, double nu0 = 0.5, double tau = 1.0) {
    return {Eigen::MatrixXd::Zero(n - 1, n - 1),
            Eigen::MatrixXd::Constant(n - 1, n - 1, nu0), tau};
  }
};

// Lower/upper feasibility bounds accumulated along the raster scan. Only the
// top-left (N-1) x (N-1) block is populated; the last row and column are
// fixed by the sum constraints.
struct StickBounds {
  Eigen::MatrixXd lower, upper;
};

// Raster-scan stick-breaking fill of the Birkhoff polytope: each free entry
// takes x = l + beta (u - l) inside its feasible interval, the last row and
// column complete the sums. All beta must lie in [0,1].
std::pair<DoublyStochasticMatrix, StickBounds> sb_forward(
    const Eigen::MatrixXd& beta);

// Inverse scan: recovers beta = (x - l)/(u - l). Throws DegenerateBound when
// a bound gap collapses below 1e-12 (point on a face of the polytope).
std::pair<Eigen::MatrixXd, StickBounds> sb_inverse(const Eigen::MatrixXd& x);

struct SbSample {
  Eigen::MatrixXd x;     // N x N doubly stochastic
  double log_det;        // log |d x_free / d psi| at the sampled point
  Eigen::MatrixXd psi;   // mu + nu .* z
  Eigen::MatrixXd beta;  // logistic(psi / tau)
  StickBounds bounds;
};

// psi = mu + nu.*z, beta = logistic(psi/tau), x = sb_forward(beta).
// log_det = sum log(u - l) + sum log[(1/tau) sigma(psi/tau) sigma(-psi/tau)].
SbSample sb_sample(const StickBreakingParams& params, const Eigen::MatrixXd& z);

// Density of x under the pushforward of the entrywise Gaussian through the
// temperature-controlled stick-breaking map (change of variables).
double sb_log_density(const Eigen::MatrixXd& x, const StickBreakingParams& params);

// Reverse-mode accumulation through the sampling path. grad_x is dL/dX
// (N x N) and grad_logdet the coefficient of the per-sample log_det output;
// adds the resulting dL/dmu and dL/dnu into grad_mu / grad_nu.
void sb_backward(const StickBreakingParams& params, const Eigen::MatrixXd& z,
                 const Eigen::MatrixXd& grad_x, double grad_logdet,
                 Eigen::MatrixXd& grad_mu, Eigen::MatrixXd& grad_nu);

}  // namespace birkhoff

#endif  // BIRKHOFF_STICK_BREAKING_HPP
