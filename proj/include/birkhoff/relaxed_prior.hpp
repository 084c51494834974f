#ifndef BIRKHOFF_RELAXED_PRIOR_HPP
#define BIRKHOFF_RELAXED_PRIOR_HPP

#include <Eigen/Dense>
#include <cmath>

#include "birkhoff/errors.hpp"
#include "birkhoff/gauss.hpp"

namespace birkhoff {

// Coordinate-wise two-component Gaussian mixture prior over relaxations of
// permutation matrices: each entry is pulled toward {0, 1} with scale eta.
// Deliberately cheap; it puts mass on some invalid points (e.g. the all-ones
// matrix scores like a permutation matrix) but penalizes X far from them.
struct RelaxedPermutationPrior {
  double eta = 0.5;
};

inline double relaxed_prior_logpdf_entry(double x, double eta) {
  const double l0 = log_normal_pdf(x, 0.0, eta);
  const double l1 = log_normal_pdf(x, 1.0, eta);
  return logsumexp(l0, l1) - std::log(2.0);
}

inline double relaxed_prior_logpdf(const Eigen::MatrixXd& x, double eta) {
  if (eta <= 0.0) throw Error("eta must be positive");
  double total = 0.0;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      total += relaxed_prior_logpdf_entry(x(i, j), eta);
  return total;
}

// d/dx of the entrywise mixture log-density.
inline double relaxed_prior_dlogpdf_entry(double x, double eta) {
  const double l0 = log_normal_pdf(x, 0.0, eta);
  const double l1 = log_normal_pdf(x, 1.0, eta);
  const double m = l0 > l1 ? l0 : l1;
  const double w0 = std::exp(l0 - m), w1 = std::exp(l1 - m);
  const double inv_var = 1.0 / (eta * eta);
  return (-w0 * x * inv_var - w1 * (x - 1.0) * inv_var) / (w0 + w1);
}

inline Eigen::MatrixXd relaxed_prior_grad(const Eigen::MatrixXd& x, double eta) {
  Eigen::MatrixXd g(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      g(i, j) = relaxed_prior_dlogpdf_entry(x(i, j), eta);
  return g;
}

}  // namespace birkhoff

#endif  // BIRKHOFF_RELAXED_PRIOR_HPP
