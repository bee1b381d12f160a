#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spdmp/errors.hpp"

namespace spdmp {

// Exponentially decaying phase shared by all dimensions of a movement.
struct CanonicalSystem {
  double alpha_x = 2.0;
  double tau = 1.0;  // total movement duration, seconds
};

// x(t) = exp(-alpha_x t / tau); x(0) = 1, strictly decreasing.
double phase(const CanonicalSystem& cs, double t);

// Radial basis functions along the phase. centers(0) = 1, strictly
// decreasing; widths h_i = 1/(c_{i+1} - c_i)^2 with the last width repeated.
struct BasisSet {
  Eigen::VectorXd centers;
  Eigen::VectorXd widths;

  int size() const { return static_cast<int>(centers.size()); }
};

BasisSet make_basis(int count, double alpha_x);

// Unnormalized activations psi_i(x) = exp(-h_i (x - c_i)^2).
Eigen::VectorXd basis_activations(const BasisSet& basis, double x);

// Forcing term value sum_i(w_i psi_i) / sum_i(psi_i) * x for one dimension.
double forcing_value(const BasisSet& basis, const Eigen::VectorXd& weights,
                     double x);

// Row-per-dimension variant: `weights` is N x n, the result has length n.
Eigen::VectorXd forcing_vector(const BasisSet& basis,
                               const Eigen::MatrixXd& weights, double x);

struct PhaseSample {
  double x = 0.0;
  double target = 0.0;
};

// Ridge least-squares fit of basis weights against forcing targets.
Eigen::VectorXd fit_weights(const BasisSet& basis,
                            const std::vector<PhaseSample>& samples,
                            double ridge = 1e-8);

// Multi-dimensional variant sharing one design matrix: `targets` is T x n,
// one column per output dimension, solved independently per column.
Eigen::MatrixXd fit_weights(const BasisSet& basis,
                            const std::vector<double>& phases,
                            const Eigen::MatrixXd& targets,
                            double ridge = 1e-8);

// Second-order attractor gains; alpha_z = 4 beta_z gives critical damping.
struct DmpGains {
  double alpha_z = 48.0;
  double beta_z = 12.0;
};

// One-dimensional movement primitive:
//   tau z' = alpha_z(beta_z(g - y) - z) + f(x),  tau y' = z.
struct ScalarDmp {
  DmpGains gains;
  BasisSet basis;
  CanonicalSystem canonical;
  Eigen::VectorXd weights;
  double y0 = 0.0;
  double goal = 0.0;
};

struct ScalarState {
  double t = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Explicit Euler integration at fixed dt; both state variables advance from
// values at the current step. Returns round(duration/dt) + 1 samples starting
// at t = 0.
std::vector<ScalarState> scalar_dmp_rollout(const ScalarDmp& dmp, double dt,
                                            double duration);

}  // namespace spdmp
