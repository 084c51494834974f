#ifndef BIRKHOFF_SINKHORN_HPP
#define BIRKHOFF_SINKHORN_HPP

#include <Eigen/Dense>
#include <vector>

#include "birkhoff/errors.hpp"

namespace birkhoff {

// A point of (or near) the Birkhoff polytope. `tolerance` is the measured
// worst-case deviation of any row/column sum from 1.
struct DoublyStochasticMatrix {
  Eigen::MatrixXd entries;
  double tolerance = 0.0;
};

inline double doubly_stochastic_deviation(const Eigen::MatrixXd& x) {
  const double row_dev = (x.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double col_dev = (x.colwise().sum().array() - 1.0).abs().maxCoeff();
  return std::max(row_dev, col_dev);
}

// One pass = exact row normalization followed by exact column normalization.
inline DoublyStochasticMatrix sinkhorn_knopp(const Eigen::MatrixXd& m,
                                             int iters) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw DimensionMismatch("matrix must be square");
  if (iters < 1) throw Error("iters must be >= 1");
  if ((m.array() <= 0.0).any())
    throw NonPositiveEntry("sinkhorn_knopp requires strictly positive entries");
  Eigen::MatrixXd x = m;
  for (int it = 0; it < iters; ++it) {
    const Eigen::VectorXd r = x.rowwise().sum();
    x.array().colwise() /= r.array();
    const Eigen::RowVectorXd c = x.colwise().sum();
    x.array().rowwise() /= c.array();
  }
  return {x, doubly_stochastic_deviation(x)};
}

// Unrolled forward pass retaining every half-step input, so the reverse pass
// can run through the fixed 10-iteration (or any) computation graph.
struct SinkhornTrace {
  // inputs[0] is the original matrix; then alternately the matrix before
  // each row normalization and before each column normalization.
  std::vector<Eigen::MatrixXd> inputs;
  Eigen::MatrixXd output;
  int iters = 0;
};

inline SinkhornTrace sinkhorn_forward_trace(const Eigen::MatrixXd& m,
                                            int iters) {
  if ((m.array() <= 0.0).any())
    throw NonPositiveEntry("sinkhorn_knopp requires strictly positive entries");
  SinkhornTrace trace;
  trace.iters = iters;
  Eigen::MatrixXd x = m;
  for (int it = 0; it < iters; ++it) {
    trace.inputs.push_back(x);
    const Eigen::VectorXd r = x.rowwise().sum();
    x.array().colwise() /= r.array();
    trace.inputs.push_back(x);
    const Eigen::RowVectorXd c = x.colwise().sum();
    x.array().rowwise() /= c.array();
  }
  trace.output = x;
  return trace;
}

// Vector-Jacobian product of the unrolled Sinkhorn iteration: maps a gradient
// w.r.t. the output back to a gradient w.r.t. the input matrix.
inline Eigen::MatrixXd sinkhorn_vjp(const SinkhornTrace& trace,
                                    const Eigen::MatrixXd& grad_out) {
  Eigen::MatrixXd g = grad_out;
  for (int it = trace.iters - 1; it >= 0; --it) {
    // reverse of column normalization: b_ij = a_ij / c_j
    {
      const Eigen::MatrixXd& a = trace.inputs[2 * it + 1];
      const Eigen::RowVectorXd c = a.colwise().sum();
      const Eigen::RowVectorXd dot =
          (g.array() * (a.array().rowwise() / c.array())).colwise().sum();
      g = ((g.array().rowwise() - dot.array()).rowwise() / c.array()).matrix();
    }
    // reverse of row normalization: b_ij = a_ij / r_i
    {
      const Eigen::MatrixXd& a = trace.inputs[2 * it];
      const Eigen::VectorXd r = a.rowwise().sum();
      const Eigen::VectorXd dot =
          (g.array() * (a.array().colwise() / r.array())).rowwise().sum();
      g = ((g.array().colwise() - dot.array()).colwise() / r.array()).matrix();
    }
  }
  return g;
}

}  // namespace birkhoff

#endif  // BIRKHOFF_SINKHORN_HPP
