#include <iostream>
#include "birkhoff/assignment.hpp"
#include "birkhoff/elbo.hpp"
#include "birkhoff/fit.hpp"
#include "birkhoff/histogram.hpp"
#include "birkhoff/mallows.hpp"
#include "birkhoff/relaxed_prior.hpp"
#include "birkhoff/simplex.hpp"

int main() {
  using namespace birkhoff;
  Eigen::MatrixXd cost(3, 3);
  cost << 4, 1, 3, 2, 0, 5, 3, 2, 2;
  auto [perm, total] = hungarian(cost);
  std::cout << "hungarian cost " << total << "\n";
  auto [b, bounds] = sb_inverse(Eigen::MatrixXd::Constant(3, 3, 1.0 / 3));
  std::cout << "beta11 " << b(0, 0) << "\n";
  Eigen::MatrixXd bb(2, 2);
  bb << 0.5, 0.5, 0.5, 0.5;
  auto [ds, bd2] = sb_forward(bb);
  std::cout << ds.entries << "\n";
  return 0;
}
