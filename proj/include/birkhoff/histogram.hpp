#ifndef BIRKHOFF_HISTOGRAM_HPP
#define BIRKHOFF_HISTOGRAM_HPP

#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/permutation.hpp"

namespace birkhoff {

// Empirical (or exact) pmf over permutations. Support entries are distinct
// by construction of the underlying map.
class PosteriorHistogram {
 public:
  PosteriorHistogram() = default;

  void add(const Permutation& phi, double mass) { mass_[phi.mapping()] += mass; }

  // Divide all masses by their sum.
  void normalize() {
    double total = 0.0;
    for (const auto& [k, v] : mass_) total += v;
    if (total <= 0.0) throw Error("histogram has no mass");
    for (auto& [k, v] : mass_) v /= total;
  }

  double mass(const Permutation& phi) const {
    auto it = mass_.find(phi.mapping());
    return it == mass_.end() ? 0.0 : it->second;
  }

  double total_mass() const {
    double total = 0.0;
    for (const auto& [k, v] : mass_) total += v;
    return total;
  }

  std::size_t support_size() const { return mass_.size(); }

  bool is_normalized(double tol = 1e-12) const {
    return std::abs(total_mass() - 1.0) <= tol;
  }

  const std::map<std::vector<int>, double>& table() const { return mass_; }

  static PosteriorHistogram from_samples(const std::vector<Permutation>& samples) {
    PosteriorHistogram h;
    const double w = 1.0 / static_cast<double>(samples.size());
    for (const auto& s : samples) h.add(s, w);
    return h;
  }

 private:
  std::map<std::vector<int>, double> mass_;
};

// Bhattacharyya distance -ln sum_phi sqrt(p(phi) q(phi)); +inf when the
// supports are disjoint. Masses missing from one support count as 0.
inline double bhattacharyya(const PosteriorHistogram& p,
                            const PosteriorHistogram& q) {
  double bc = 0.0;
  const auto& pt = p.table();
  const auto& qt = q.table();
  // iterate over the smaller support
  const auto& a = pt.size() <= qt.size() ? pt : qt;
  const auto& b = pt.size() <= qt.size() ? qt : pt;
  for (const auto& [k, va] : a) {
    auto it = b.find(k);
    if (it != b.end()) bc += std::sqrt(va * it->second);
  }
  if (bc <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(std::min(bc, 1.0));
}

}  // namespace birkhoff

#endif  // BIRKHOFF_HISTOGRAM_HPP
