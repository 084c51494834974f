#ifndef BIRKHOFF_RNG_HPP
#define BIRKHOFF_RNG_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace birkhoff {

// splitmix64; used both as a seed scrambler and to derive independent
// per-repetition streams from (base_seed, index).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic random stream. Normal draws use Box-Muller with a fixed
// uniform consumption pattern so sequences are reproducible run to run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  // Stream for repetition `index` of a run seeded with `base`.
  static Rng for_repetition(std::uint64_t base, std::uint64_t index) {
    return Rng(splitmix64(base + 0x9e3779b97f4a7c15ULL * (index + 1)));
  }

  // uniform on (0,1)
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // -log(-log(U)), U clipped away from {0,1}
  double gumbel() {
    double u = uniform();
    u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
    return -std::log(-std::log(u));
  }

  // uniform integer in [0, n)
  int uniform_int(int n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = gen_();
    } while (r >= limit);
    return static_cast<int>(r % bound);
  }

  Eigen::MatrixXd normal_matrix(int rows, int cols) {
    Eigen::MatrixXd z(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) z(i, j) = normal();
    return z;
  }

  Eigen::VectorXd normal_vector(int n) {
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) z(i) = normal();
    return z;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace birkhoff

#endif  // BIRKHOFF_RNG_HPP
