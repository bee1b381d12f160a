#pragma once

#include <optional>
#include <vector>

#include "spdmp/dmp_core.hpp"
#include "spdmp/spd_manifold.hpp"

namespace spdmp {

// A timestamped sequence of SPD matrices sampled at uniform dt.
class SpdDemonstration {
 public:
  SpdDemonstration(std::vector<double> times, std::vector<SpdMatrix> points);

  int length() const { return static_cast<int>(points_.size()); }
  int dim() const { return points_.front().dim(); }
  double dt() const { return dt_; }
  double duration() const { return times_.back() - times_.front(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<SpdMatrix>& points() const { return points_; }

 private:
  std::vector<double> times_;
  std::vector<SpdMatrix> points_;
  double dt_;
};

// Demonstration with per-sample phases and derivative estimates expressed in
// the common tangent space at the first point, in Mandel form. sigma is the
// scaled velocity tau * d(Xi)/dt (the manifold analogue of the scalar
// z = tau y'), sigma_dot its forward difference.
struct PreprocessedDemo {
  SpdDemonstration demo;
  std::vector<double> phases;
  std::vector<TangentVector> sigma;
  std::vector<TangentVector> sigma_dot;
  SpdMatrix anchor;  // first demonstration point
  SpdMatrix goal;    // last demonstration point
  // Sample indices l where X_{l-1} and X_l coincide and the derivative was
  // set to zero. Informational, not an error.
  std::vector<int> degenerate_steps;
};

PreprocessedDemo preprocess(const SpdDemonstration& demo,
                            double alpha_x = 2.0);

// Forcing targets, one row per sample:
//   target_l = tau sigma_dot_l
//            - alpha_z(beta_z vec(B_{X_l -> X_1}(Log_{X_l}(X_g))) - sigma_l).
Eigen::MatrixXd compute_forcing_targets(const PreprocessedDemo& pre,
                                        const DmpGains& gains,
                                        const CanonicalSystem& cs);

struct TrainParams {
  int basis_count = 25;
  DmpGains gains{};
  double alpha_x = 2.0;
  double alpha_g = 24.0;
  double ridge = 1e-8;
};

// A learned SPD skill. Anchor is the base point of the common tangent space;
// reproduction must transport through it.
struct SpdDmpModel {
  int dim;      // m
  int vec_dim;  // n = m(m+1)/2
  DmpGains gains;
  CanonicalSystem canonical;
  double alpha_g;
  BasisSet basis;
  Eigen::MatrixXd weights;  // N x n
  SpdMatrix anchor;
  SpdMatrix goal;
  SpdMatrix start;
};

SpdDmpModel train(const SpdDemonstration& demo, const TrainParams& params = {});

struct ReproductionState {
  double t;
  SpdMatrix point;
  TangentVector sigma;  // scaled velocity in the anchor tangent space
  SpdMatrix goal;
};

ReproductionState initial_state(const SpdDmpModel& model,
                                const SpdMatrix& start, const SpdMatrix& goal);

// One Euler step. The goal term is evaluated at the current point, the point
// advances along the geodesic given by the current scaled velocity, and the
// velocity advances by its current derivative.
ReproductionState step(const SpdDmpModel& model, const ReproductionState& state,
                       double dt);

// On-line goal switching: from t_switch on, the active goal relaxes toward
// new_goal with first-order dynamics tau g' = alpha_g Log_g(g_new).
struct GoalSwitch {
  double t_switch;
  SpdMatrix new_goal;
  double alpha_g;
};

struct TrajectorySample {
  double t;
  SpdMatrix point;
};

std::vector<TrajectorySample> reproduce(
    const SpdDmpModel& model, const SpdMatrix& start, const SpdMatrix& goal,
    double dt, double duration,
    const std::optional<GoalSwitch>& goal_switch = std::nullopt);

}  // namespace spdmp
