#ifndef BIRKHOFF_EXPERIMENTS_MATCHING_HPP
#define BIRKHOFF_EXPERIMENTS_MATCHING_HPP

#include <Eigen/Dense>

#include "birkhoff/elbo.hpp"
#include "birkhoff/histogram.hpp"
#include "birkhoff/permutation.hpp"
#include "birkhoff/rng.hpp"

namespace birkhoff {

// Toy matching problem: N cluster centers in the plane, observations are the
// centers under an unknown permutation plus spherical Gaussian noise.
// Observation m corresponds to center true_perm(m).
struct MatchingModel {
  Eigen::MatrixXd centers;       // N x dim
  Eigen::MatrixXd observations;  // N x dim
  double sigma = 0.1;
  Permutation true_perm;
};

MatchingModel matching_generate(int n, double sigma, Rng& rng, int dim = 2);

// Matrix of per-assignment log likelihoods: (m, n) = log N(y_m; c_n, sigma^2 I).
Eigen::MatrixXd matching_loglik_matrix(const MatchingModel& model);

// Exact posterior over permutations by enumeration (N <= 8).
PosteriorHistogram matching_exact_posterior(const MatchingModel& model);

// Relaxed log joint: rows of X mix the centers, plus the coordinate-wise
// permutation-matrix prior with scale eta.
LogJointFn matching_relaxed_logjoint(const MatchingModel& model, double eta);

}  // namespace birkhoff

#endif  // BIRKHOFF_EXPERIMENTS_MATCHING_HPP
