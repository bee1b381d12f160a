#pragma once

#include <vector>

#include "spdmp/spd_dmp.hpp"

namespace spdmp {

// Constant external force over a time window given as fractions of the
// scenario duration.
struct ForcePulse {
  double start_frac = 0.0;
  double end_frac = 0.0;
  Eigen::Vector2d force = Eigen::Vector2d::Zero();
};

// A planar virtual mass-spring-damper whose stiffness ellipsoid rotates from
// its initial orientation by theta_end over the movement, following a
// minimum-jerk timing law.
struct MsdScenario {
  SpdMatrix initial_stiffness;  // N/m, must be anisotropic
  SpdMatrix damping;            // N s/m
  double mass = 1.0;            // kg
  double theta_end = 1.5707963267948966;  // rad, pi/2
  std::vector<ForcePulse> forces;
  double duration = 4.0;  // s
  double dt = 0.01;       // s
};

MsdScenario default_msd_scenario();

// Minimum-jerk interpolation 10 s^3 - 15 s^4 + 6 s^5 on [0, 1], clamped.
double min_jerk(double s);

// Stiffness profile K_l = R(theta(t_l))^T K0 R(theta(t_l)); every sample
// shares the eigenvalues of K0.
SpdDemonstration gen_stiffness_demo(const MsdScenario& scenario);

struct MsdSample {
  double t = 0.0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
};

// Euler integration of m x'' = f_ext(t) - K(t) x - D x' from rest; the
// stiffness series must have one entry per time step of the scenario.
std::vector<MsdSample> simulate_msd(const MsdScenario& scenario,
                                    const std::vector<SpdMatrix>& stiffness);

}  // namespace spdmp
