#include "birkhoff/mallows.hpp"

#include <cmath>

#include "birkhoff/assignment.hpp"
#include "birkhoff/errors.hpp"

namespace birkhoff {

int footrule_distance(const Permutation& phi, const Permutation& center) {
  if (phi.size() != center.size())
    throw DimensionMismatch("permutations must have equal size");
  int d = 0;
  for (int i = 0; i < phi.size(); ++i) d += std::abs(phi(i) - center(i));
  return d;
}

MallowsModel::MallowsModel(Permutation center, double theta)
    : center_(std::move(center)), theta_(theta) {
  if (theta_ < 0.0) throw Error("theta must be >= 0");
}

double MallowsModel::log_normalizer() const {
  if (!log_z_) {
    // the multiset of footrule distances from any center is center-free,
    // so enumerate against the identity
    const auto perms = enumerate_permutations(n());
    const Permutation id = Permutation::identity(n());
    double z = 0.0;
    for (const auto& p : perms) z += std::exp(-theta_ * footrule_distance(p, id));
    log_z_ = std::log(z);
  }
  return *log_z_;
}

double MallowsModel::log_pmf(const Permutation& phi, bool* normalized) const {
  const double unnorm = -theta_ * footrule_distance(phi, center_);
  if (n() > 8) {
    if (normalized) *normalized = false;
    return unnorm;
  }
  if (normalized) *normalized = true;
  return unnorm - log_normalizer();
}

std::vector<Permutation> mallows_mcmc(const MallowsModel& model, long steps,
                                      Rng rng) {
  if (steps < 1) throw Error("steps must be >= 1");
  const int n = model.n();
  std::vector<int> state = model.center().mapping();
  const auto& c = model.center().mapping();
  const long burn_in = steps / 10;
  std::vector<Permutation> samples;
  samples.reserve(steps - burn_in);
  for (long s = 0; s < steps; ++s) {
    if (n > 1) {
      int i = rng.uniform_int(n);
      int j = rng.uniform_int(n - 1);
      if (j >= i) ++j;
      const int di = std::abs(state[i] - c[i]) + std::abs(state[j] - c[j]);
      const int dj = std::abs(state[j] - c[i]) + std::abs(state[i] - c[j]);
      const int delta = dj - di;
      if (delta <= 0 || rng.uniform() < std::exp(-model.theta() * delta))
        std::swap(state[i], state[j]);
    }
    if (s >= burn_in) samples.push_back(Permutation(state));
  }
  return samples;
}

Permutation mallows_fit_center(const Eigen::MatrixXd& loglik) {
  return hungarian((-loglik).eval()).first;
}

}  // namespace birkhoff
