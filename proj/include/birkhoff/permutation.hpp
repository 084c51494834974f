#ifndef BIRKHOFF_PERMUTATION_HPP
#define BIRKHOFF_PERMUTATION_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/rng.hpp"

namespace birkhoff {

// A bijection of {0,...,N-1} onto itself, stored in one-line notation:
// mapping[m] = n means element m is assigned to n.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
    if (map_.empty()) throw DimensionMismatch("permutation must have N >= 1");
    std::vector<char> seen(map_.size(), 0);
    for (int v : map_) {
      if (v < 0 || v >= static_cast<int>(map_.size()) || seen[v])
        throw DimensionMismatch("mapping is not a bijection");
      seen[v] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> m(n);
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
  }

  static Permutation random(int n, Rng& rng) {
    std::vector<int> m(n);
    std::iota(m.begin(), m.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(m[i], m[rng.uniform_int(i + 1)]);
    return Permutation(std::move(m));
  }

  int size() const { return static_cast<int>(map_.size()); }
  int operator()(int i) const { return map_[i]; }
  const std::vector<int>& mapping() const { return map_; }

  Permutation inverse() const {
    std::vector<int> inv(map_.size());
    for (int i = 0; i < size(); ++i) inv[map_[i]] = i;
    return Permutation(std::move(inv));
  }

  Eigen::MatrixXd to_matrix() const {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(size(), size());
    for (int i = 0; i < size(); ++i) p(i, map_[i]) = 1.0;
    return p;
  }

  // Exact inverse of to_matrix; rejects anything that is not a 0/1
  // permutation matrix.
  static Permutation from_matrix(const Eigen::MatrixXd& x) {
    if (x.rows() != x.cols() || x.rows() < 1)
      throw DimensionMismatch("permutation matrix must be square");
    const int n = static_cast<int>(x.rows());
    std::vector<int> m(n, -1);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double v = x(i, j);
        if (v == 1.0) {
          if (m[i] != -1) throw DimensionMismatch("row with two ones");
          m[i] = j;
        } else if (v != 0.0) {
          throw DimensionMismatch("entries must be exactly 0 or 1");
        }
      }
      if (m[i] == -1) throw DimensionMismatch("row without a one");
    }
    return Permutation(std::move(m));
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.map_ == b.map_;
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.map_ < b.map_;
  }

 private:
  std::vector<int> map_;
};

// All N! permutations in lexicographic order. Capped at N = 8 (40320) to
// bound memory.
inline std::vector<Permutation> enumerate_permutations(int n) {
  if (n < 1) throw DimensionMismatch("N must be >= 1");
  if (n > 8) throw DimensionTooLarge("enumeration capped at N = 8");
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(m));
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

}  // namespace birkhoff

#endif  // BIRKHOFF_PERMUTATION_HPP
