#ifndef BIRKHOFF_MALLOWS_HPP
#define BIRKHOFF_MALLOWS_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "birkhoff/permutation.hpp"
#include "birkhoff/rng.hpp"

namespace birkhoff {

// Spearman footrule on one-line notation, 0-based positions. The distance is
// invariant to the indexing base since offsets cancel inside |.|.
int footrule_distance(const Permutation& phi, const Permutation& center);

// p(phi) proportional to exp(-theta * d(phi, center)); the normalizer is
// computed by exact enumeration for N <= 8 and cached.
class MallowsModel {
 public:
  MallowsModel(Permutation center, double theta);

  const Permutation& center() const { return center_; }
  double theta() const { return theta_; }
  int n() const { return center_.size(); }

  // Normalized log pmf when N <= 8; otherwise the unnormalized value, with
  // *normalized telling which one was returned.
  double log_pmf(const Permutation& phi, bool* normalized = nullptr) const;

  double log_normalizer() const;  // throws DimensionTooLarge when N > 8

 private:
  Permutation center_;
  double theta_;
  mutable std::optional<double> log_z_;
};

// Metropolis chain with uniform random transposition proposals and
// acceptance min(1, exp(-theta * delta_d)). The first 10% of steps are
// discarded as burn-in; no thinning.
std::vector<Permutation> mallows_mcmc(const MallowsModel& model, long steps,
                                      Rng rng);

// Center at the MAP assignment of a log-likelihood matrix (entry (m,n) =
// log-lik of assigning m -> n), via hungarian on the negated matrix.
Permutation mallows_fit_center(const Eigen::MatrixXd& loglik);

}  // namespace birkhoff

#endif  // BIRKHOFF_MALLOWS_HPP
