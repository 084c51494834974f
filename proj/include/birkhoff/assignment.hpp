#ifndef BIRKHOFF_ASSIGNMENT_HPP
#define BIRKHOFF_ASSIGNMENT_HPP

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/permutation.hpp"

namespace birkhoff {

// Minimum-weight perfect matching on a square cost matrix, by shortest
// augmenting paths with dual potentials (Jonker-Volgenant style), O(N^3).
// Entries of +inf encode forbidden assignments. Ties are broken by the
// deterministic column scan order.
template <typename Derived>
std::pair<Permutation, typename Derived::Scalar> hungarian(
    const Eigen::MatrixBase<Derived>& cost_expr) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cost =
      cost_expr.derived();
  if (cost.rows() != cost.cols() || cost.rows() < 1)
    throw DimensionMismatch("cost matrix must be square, N >= 1");
  const int n = static_cast<int>(cost.rows());
  constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::isnan(cost(i, j)) || cost(i, j) == -kInf)
        throw Error("cost entries must be finite or +inf");

  // 1-indexed internals; column 0 is the virtual start of augmenting paths.
  std::vector<Scalar> u(n + 1, Scalar(0)), v(n + 1, Scalar(0));
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<Scalar> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = -1;
      Scalar delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Scalar cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (!(delta < kInf))
        throw InfeasibleMatching("no finite-cost perfect matching exists");
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> assign(n, -1);
  for (int j = 1; j <= n; ++j) assign[match[j] - 1] = j - 1;
  Permutation perm(std::move(assign));
  Scalar total(0);
  for (int i = 0; i < n; ++i) total += cost(i, perm(i));
  return {std::move(perm), total};
}

// Nearest permutation matrix to psi in Frobenius norm: the Frobenius argmin
// equals the inner-product argmax, i.e. hungarian(-psi). An optional 0/1
// mask marks entries that must never be selected.
template <typename Derived>
Permutation round_to_permutation(const Eigen::MatrixBase<Derived>& psi,
                                 const Eigen::MatrixXi* forbidden = nullptr) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cost = -psi.derived();
  if (forbidden && forbidden->size() > 0) {
    if (forbidden->rows() != cost.rows() || forbidden->cols() != cost.cols())
      throw ShapeMismatch("forbidden mask shape mismatch");
    const Scalar kInf = std::numeric_limits<Scalar>::infinity();
    for (int i = 0; i < cost.rows(); ++i)
      for (int j = 0; j < cost.cols(); ++j)
        if ((*forbidden)(i, j)) cost(i, j) = kInf;
  }
  return hungarian(cost).first;
}

}  // namespace birkhoff

#endif  // BIRKHOFF_ASSIGNMENT_HPP
