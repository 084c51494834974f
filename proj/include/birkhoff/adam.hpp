#ifndef BIRKHOFF_ADAM_HPP
#define BIRKHOFF_ADAM_HPP

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "birkhoff/errors.hpp"

namespace birkhoff {

struct AdamState {
  Eigen::MatrixXd m;  // first moment
  Eigen::MatrixXd v;  // second moment
  long step = 0;
  double lr = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  static AdamState like(const Eigen::MatrixXd& param, double lr) {
    AdamState s;
    s.m = Eigen::MatrixXd::Zero(param.rows(), param.cols());
    s.v = Eigen::MatrixXd::Zero(param.rows(), param.cols());
    s.lr = lr;
    return s;
  }
};

// One ADAM descent step followed by projection onto [lo, hi].
inline void adam_step(AdamState& state, const Eigen::MatrixXd& grad,
                      Eigen::MatrixXd& param,
                      double lo = -std::numeric_limits<double>::infinity(),
                      double hi = std::numeric_limits<double>::infinity()) {
  if (grad.rows() != param.rows() || grad.cols() != param.cols() ||
      state.m.rows() != param.rows() || state.m.cols() != param.cols())
    throw ShapeMismatch("adam_step shape mismatch");
  ++state.step;
  state.m = state.beta1 * state.m + (1.0 - state.beta1) * grad;
  state.v = state.beta2 * state.v.array().matrix() +
            (1.0 - state.beta2) * grad.cwiseProduct(grad);
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  param.array() -= state.lr * (state.m.array() / c1) /
                   ((state.v.array() / c2).sqrt() + state.eps);
  param = param.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace birkhoff

#endif  // BIRKHOFF_ADAM_HPP
