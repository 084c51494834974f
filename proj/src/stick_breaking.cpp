#include "birkhoff/stick_breaking.hpp"

#include <cmath>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/gauss.hpp"

namespace birkhoff {

namespace {

constexpr double kBetaFloor = 1e-12;   // keeps saturated sticks off exact faces
constexpr double kGapFloor = 1e-300;   // guards log/div at collapsed gaps

double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }

// Shared raster scan. When `invert` is false, x is produced from beta; when
// true, beta is recovered from a given x. Bounds and per-entry branch flags
// are recorded for the backward pass.
struct ScanTrace {
  Eigen::MatrixXd x;
  Eigen::MatrixXd beta;
  Eigen::MatrixXd lower, upper;
  // branch flags per free entry
  Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic> row_branch;   // u = rowrem?
  Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic> lower_active; // lraw > 0?
};

ScanTrace raster_scan(const Eigen::MatrixXd& input, bool invert) {
  const int free_n = invert ? static_cast<int>(input.rows()) - 1
                            : static_cast<int>(input.rows());
  const int n = free_n + 1;
  if (!invert && input.size() > 0 &&
      ((input.array() < 0.0).any() || (input.array() > 1.0).any()))
    throw Error("beta entries must lie in [0,1]");
  if (invert && (input.rows() != input.cols() || input.rows() < 1))
    throw DimensionMismatch("x must be square");
  if (!invert && input.rows() != input.cols())
    throw DimensionMismatch("beta must be square");

  ScanTrace t;
  t.x = invert ? input : Eigen::MatrixXd::Zero(n, n);
  t.beta = invert ? Eigen::MatrixXd::Zero(free_n, free_n) : input;
  t.lower = Eigen::MatrixXd::Zero(n, n);
  t.upper = Eigen::MatrixXd::Zero(n, n);
  t.row_branch.setZero(free_n, free_n);
  t.lower_active.setZero(free_n, free_n);

  std::vector<double> col_sum(n, 0.0);
  // above_tail[c] = sum over completed rows k of sum_{j > c} x(k, j)
  std::vector<double> above_tail(n, 0.0);

  for (int m = 0; m < free_n; ++m) {
    double row_acc = 0.0;
    for (int c = 0; c < free_n; ++c) {
      const double rowrem = 1.0 - row_acc;
      const double colrem = 1.0 - col_sum[c];
      const bool use_row = rowrem <= colrem;
      const double u = use_row ? rowrem : colrem;
      // feasibility floor: the leftover stick must fit into the remaining
      // column headroom of columns c+1..n-1
      const double lraw = 1.0 - n + (c + 1) - row_acc + above_tail[c];
      const bool low_on = lraw > 0.0;
      const double l = low_on ? lraw : 0.0;
      t.lower(m, c) = l;
      t.upper(m, c) = u;
      t.row_branch(m, c) = use_row ? 1 : 0;
      t.lower_active(m, c) = low_on ? 1 : 0;

      double xv;
      if (invert) {
        xv = t.x(m, c);
        const double gap = u - l;
        if (gap < 1e-12)
          throw DegenerateBound("bound gap below 1e-12 during inverse scan");
        t.beta(m, c) = std::min(1.0, std::max(0.0, (xv - l) / gap));
      } else {
        xv = l + t.beta(m, c) * (u - l);
        t.x(m, c) = xv;
      }
      row_acc += xv;
      col_sum[c] += xv;
    }
    if (!invert) t.x(m, n - 1) = std::max(0.0, 1.0 - row_acc);
    col_sum[n - 1] += t.x(m, n - 1);
    // fold this row's suffix sums into above_tail
    double suff = 0.0;
    for (int c = n - 2; c >= 0; --c) {
      suff += t.x(m, c + 1);
      above_tail[c] += suff;
    }
  }
  if (!invert)
    for (int c = 0; c < n; ++c) t.x(n - 1, c) = std::max(0.0, 1.0 - col_sum[c]);
  return t;
}

}  // namespace

std::pair<DoublyStochasticMatrix, StickBounds> sb_forward(
    const Eigen::MatrixXd& beta) {
  ScanTrace t = raster_scan(beta, false);
  DoublyStochasticMatrix out{t.x, doubly_stochastic_deviation(t.x)};
  return {std::move(out), StickBounds{std::move(t.lower), std::move(t.upper)}};
}

std::pair<Eigen::MatrixXd, StickBounds> sb_inverse(const Eigen::MatrixXd& x) {
  ScanTrace t = raster_scan(x, true);
  return {std::move(t.beta), StickBounds{std::move(t.lower), std::move(t.upper)}};
}

SbSample sb_sample(const StickBreakingParams& params, const Eigen::MatrixXd& z) {
  const int fn = params.mu.rows();
  if (z.rows() != fn || z.cols() != fn) throw ShapeMismatch("noise shape mismatch");
  SbSample s;
  s.psi = params.mu + params.nu.cwiseProduct(z);
  s.beta.resize(fn, fn);
  double logistic_logdet = 0.0;
  for (int i = 0; i < fn; ++i)
    for (int j = 0; j < fn; ++j) {
      const double a = s.psi(i, j) / params.tau;
      double b = logistic(a);
      b = std::min(1.0 - kBetaFloor, std::max(kBetaFloor, b));
      s.beta(i, j) = b;
      // log sigma(a) + log sigma(-a) - log tau
      logistic_logdet += -softplus(a) - softplus(-a) - std::log(params.tau);
    }
  auto [x, bounds] = sb_forward(s.beta);
  double gap_logdet = 0.0;
  for (int i = 0; i < fn; ++i)
    for (int j = 0; j < fn; ++j)
      gap_logdet += std::log(std::max(bounds.upper(i, j) - bounds.lower(i, j), kGapFloor));
  s.x = std::move(x.entries);
  s.bounds = std::move(bounds);
  s.log_det = gap_logdet + logistic_logdet;
  return s;
}

double sb_log_density(const Eigen::MatrixXd& x, const StickBreakingParams& params) {
  const auto [beta, bounds] = sb_inverse(x);
  const int fn = params.mu.rows();
  if (beta.rows() != fn) throw ShapeMismatch("params do not match x dimension");
  double logq = 0.0;
  for (int i = 0; i < fn; ++i)
    for (int j = 0; j < fn; ++j) {
      const double b = std::min(1.0 - kBetaFloor, std::max(kBetaFloor, beta(i, j)));
      const double psi = params.tau * logit(b);
      logq += log_normal_pdf(psi, params.mu(i, j), params.nu(i, j));
      const double a = psi / params.tau;
      // subtract log |dx/dpsi|
      logq -= std::log(std::max(bounds.upper(i, j) - bounds.lower(i, j), kGapFloor));
      logq -= -softplus(a) - softplus(-a) - std::log(params.tau);
    }
  return logq;
}

void sb_backward(const StickBreakingParams& params, const Eigen::MatrixXd& z,
                 const Eigen::MatrixXd& grad_x, double grad_logdet,
                 Eigen::MatrixXd& grad_mu, Eigen::MatrixXd& grad_nu) {
  const int fn = params.mu.rows();
  const int n = fn + 1;
  // recompute the forward trace
  Eigen::MatrixXd psi = params.mu + params.nu.cwiseProduct(z);
  Eigen::MatrixXd beta(fn, fn);
  for (int i = 0; i < fn; ++i)
    for (int j = 0; j < fn; ++j) {
      double b = logistic(psi(i, j) / params.tau);
      beta(i, j) = std::min(1.0 - kBetaFloor, std::max(kBetaFloor, b));
    }
  ScanTrace t = raster_scan(beta, false);

  Eigen::MatrixXd gx = grad_x;
  if (gx.rows() != n || gx.cols() != n) throw ShapeMismatch("grad_x shape mismatch");
  Eigen::MatrixXd gbeta = Eigen::MatrixXd::Zero(fn, fn);

  // last row: x(n-1, c) = 1 - colsum
  for (int c = 0; c < n; ++c) {
    const double g = gx(n - 1, c);
    if (g != 0.0)
      for (int k = 0; k < n - 1; ++k) gx(k, c) -= g;
  }
  for (int m = fn - 1; m >= 0; --m) {
    // row tail: x(m, n-1) = 1 - rowsum
    {
      const double g = gx(m, n - 1);
      if (g != 0.0)
        for (int k = 0; k < n - 1; ++k) gx(m, k) -= g;
    }
    for (int c = fn - 1; c >= 0; --c) {
      const double u = t.upper(m, c), l = t.lower(m, c);
      const double gap = u - l;
      const double b = t.beta(m, c);
      const double gxmc = gx(m, c);
      gbeta(m, c) += gxmc * gap;
      double gu = gxmc * b;
      double gl = gxmc * (1.0 - b);
      if (gap > kGapFloor) {
        gu += grad_logdet / gap;
        gl -= grad_logdet / gap;
      }
      if (t.lower_active(m, c)) {
        // lraw = 1 - n + (c+1) - sum_{k<c} x(m,k) + sum_{k<m, j>c} x(k,j)
        for (int k = 0; k < c; ++k) gx(m, k) -= gl;
        for (int k = 0; k < m; ++k)
          for (int j = c + 1; j < n; ++j) gx(k, j) += gl;
      }
      if (t.row_branch(m, c)) {
        for (int k = 0; k < c; ++k) gx(m, k) -= gu;
      } else {
        for (int k = 0; k < m; ++k) gx(k, c) -= gu;
      }
    }
  }

  // through the temperature-controlled logistic and the Gaussian location/scale
  for (int i = 0; i < fn; ++i)
    for (int j = 0; j < fn; ++j) {
      const double b = beta(i, j);
      double gpsi = gbeta(i, j) * b * (1.0 - b) / params.tau;
      gpsi += grad_logdet * (1.0 - 2.0 * b) / params.tau;
      grad_mu(i, j) += gpsi;
      grad_nu(i, j) += gpsi * z(i, j);
    }
}

}  // namespace birkhoff
