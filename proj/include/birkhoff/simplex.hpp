#ifndef BIRKHOFF_SIMPLEX_HPP
#define BIRKHOFF_SIMPLEX_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/gauss.hpp"

namespace birkhoff {

// Categorical analogs of the matrix transforms: stick-breaking and rounding
// on the probability simplex, the Gumbel-softmax relaxation, and the
// Euclidean simplex projection.

// x_1 = beta_1, x_n = beta_n * (remaining stick), x_N = remainder.
inline Eigen::VectorXd simplex_sb_forward(const Eigen::VectorXd& beta) {
  const int n = static_cast<int>(beta.size()) + 1;
  Eigen::VectorXd x(n);
  double rem = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    x(i) = beta(i) * rem;
    rem -= x(i);
  }
  x(n - 1) = std::max(0.0, rem);
  return x;
}

inline Eigen::VectorXd simplex_sb_inverse(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd beta(n - 1);
  double rem = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    if (rem < 1e-12)
      throw DegenerateBound("stick remainder underflow during inverse");
    beta(i) = x(i) / rem;
    rem -= x(i);
  }
  return beta;
}

// argmax with ties resolved to the smallest index
inline int simplex_argmax(const Eigen::VectorXd& psi) {
  int best = 0;
  for (int i = 1; i < psi.size(); ++i)
    if (psi(i) > psi(best)) best = i;
  return best;
}

// x = tau*psi + (1-tau)*e_{argmax(psi)}; stays in the argmax's Voronoi cell.
inline Eigen::VectorXd simplex_round(const Eigen::VectorXd& psi, double tau) {
  if (tau < 0.0 || tau > 1.0) throw Error("tau must lie in [0,1]");
  Eigen::VectorXd x = tau * psi;
  x(simplex_argmax(psi)) += 1.0 - tau;
  return x;
}

// psi_n = logits_n + Gumbel(g_n), output = softmax(psi / tau). The uniform
// draws g are clipped away from {0,1} before the double log.
inline Eigen::VectorXd gumbel_softmax(const Eigen::VectorXd& logits, double tau,
                                      const Eigen::VectorXd& g) {
  if (tau <= 0.0) throw Error("tau must be positive");
  if (g.size() != logits.size()) throw ShapeMismatch("draw count mismatch");
  Eigen::VectorXd psi(logits.size());
  for (int i = 0; i < logits.size(); ++i) {
    const double u = std::min(std::max(g(i), 1e-12), 1.0 - 1e-12);
    psi(i) = logits(i) - std::log(-std::log(u));
  }
  const Eigen::VectorXd scaled = psi / tau;
  const double m = scaled.maxCoeff();
  Eigen::VectorXd e = (scaled.array() - m).exp();
  return e / e.sum();
}

// Euclidean projection onto the simplex (sort-based).
inline Eigen::VectorXd simplex_project(const Eigen::VectorXd& m) {
  const int n = static_cast<int>(m.size());
  std::vector<double> u(m.data(), m.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  int rho = 0;
  for (int j = 0; j < n; ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / (j + 1);
    if (u[j] - t > 0.0) {
      rho = j + 1;
      theta = t;
    }
  }
  (void)rho;
  return (m.array() - theta).max(0.0).matrix();
}

// Log-density of the Gumbel-softmax (Concrete) distribution on the simplex
// interior, with alpha = exp(logits).
inline double concrete_log_density(const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& logits, double tau) {
  const int n = static_cast<int>(x.size());
  double logq = std::lgamma(static_cast<double>(n)) + (n - 1) * std::log(tau);
  double lse = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k)
    lse = logsumexp(lse, logits(k) - tau * std::log(x(k)));
  for (int k = 0; k < n; ++k)
    logq += logits(k) - (tau + 1.0) * std::log(x(k));
  return logq - n * lse;
}

}  // namespace birkhoff

#endif  // BIRKHOFF_SIMPLEX_HPP
