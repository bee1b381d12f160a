#include "spdmp/msd_demo_gen.hpp"

#include <cmath>
#include <sstream>

namespace spdmp {

namespace {

int sample_count(const MsdScenario& scenario) {
  if (scenario.dt <= 0.0) {
    std::ostringstream msg;
    msg << "MsdScenario: dt = " << scenario.dt << " must be > 0";
    throw InvalidParameter(msg.str());
  }
  if (scenario.duration <= 0.0) {
    std::ostringstream msg;
    msg << "MsdScenario: duration = " << scenario.duration << " must be > 0";
    throw InvalidParameter(msg.str());
  }
  return static_cast<int>(std::lround(scenario.duration / scenario.dt)) + 1;
}

void check_anisotropic(const SpdMatrix& stiffness) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      stiffness.mat(), Eigen::EigenvaluesOnly);
  const double spread =
      solver.eigenvalues().maxCoeff() - solver.eigenvalues().minCoeff();
  if (spread <= 1e-9 * solver.eigenvalues().maxCoeff()) {
    throw InvalidParameter(
        "MsdScenario: initial stiffness must have distinct eigenvalues");
  }
}

Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

Eigen::Vector2d external_force(const MsdScenario& scenario, double t) {
  Eigen::Vector2d f = Eigen::Vector2d::Zero();
  const double frac = t / scenario.duration;
  for (const ForcePulse& pulse : scenario.forces) {
    if (frac >= pulse.start_frac && frac < pulse.end_frac) f += pulse.force;
  }
  return f;
}

}  // namespace

MsdScenario default_msd_scenario() {
  Eigen::Matrix2d k0;
  k0 << 500.0, 0.0, 0.0, 100.0;
  Eigen::Matrix2d damping;
  damping << 50.0, 0.0, 0.0, 50.0;
  MsdScenario scenario{SpdMatrix(k0),
                       SpdMatrix(damping),
                       1.0,
                       1.5707963267948966,
                       {ForcePulse{0.0, 0.375, {20.0, 0.0}},
                        ForcePulse{0.375, 0.75, {0.0, 15.0}}},
                       4.0,
                       0.01};
  return scenario;
}

double min_jerk(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double s3 = s * s * s;
  return s3 * (10.0 - 15.0 * s + 6.0 * s * s);
}

SpdDemonstration gen_stiffness_demo(const MsdScenario& scenario) {
  if (scenario.initial_stiffness.dim() != 2) {
    throw InvalidDimension("gen_stiffness_demo: scenario stiffness must be 2x2");
  }
  check_anisotropic(scenario.initial_stiffness);
  const int count = sample_count(scenario);

  std::vector<double> times(count);
  std::vector<SpdMatrix> points;
  points.reserve(count);
  for (int l = 0; l < count; ++l) {
    const double t = l * scenario.dt;
    times[l] = t;
    const double theta =
        scenario.theta_end * min_jerk(t / scenario.duration);
    const Eigen::Matrix2d r = rotation(theta);
    points.emplace_back(r.transpose() * scenario.initial_stiffness.mat() * r);
  }
  return SpdDemonstration(std::move(times), std::move(points));
}

std::vector<MsdSample> simulate_msd(const MsdScenario& scenario,
                                    const std::vector<SpdMatrix>& stiffness) {
  const int count = sample_count(scenario);
  if (static_cast<int>(stiffness.size()) != count) {
    std::ostringstream msg;
    msg << "simulate_msd: stiffness series has " << stiffness.size()
        << " samples, scenario needs " << count;
    throw DimensionMismatch(msg.str());
  }
  if (scenario.mass <= 0.0) {
    throw InvalidParameter("simulate_msd: mass must be > 0");
  }

  std::vector<MsdSample> out(count);
  Eigen::Vector2d pos = Eigen::Vector2d::Zero();
  Eigen::Vector2d vel = Eigen::Vector2d::Zero();
  for (int l = 0; l < count; ++l) {
    const double t = l * scenario.dt;
    out[l] = MsdSample{t, pos, vel};
    if (l + 1 == count) break;
    const Eigen::Vector2d accel =
        (external_force(scenario, t) - stiffness[l].mat() * pos -
         scenario.damping.mat() * vel) /
        scenario.mass;
    pos += scenario.dt * vel;
    vel += scenario.dt * accel;
  }
  return out;
}

}  // namespace spdmp
