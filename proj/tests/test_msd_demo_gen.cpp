#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "spdmp/msd_demo_gen.hpp"
#include "test_support.hpp"

using namespace spdmp;
using spdmp::testing::rel_frobenius_error;

TEST_CASE("min_jerk shape") {
  CHECK(min_jerk(0.0) == 0.0);
  CHECK(min_jerk(1.0) == 1.0);
  CHECK(min_jerk(-0.5) == 0.0);
  CHECK(min_jerk(2.0) == 1.0);
  CHECK(min_jerk(0.5) == doctest::Approx(0.5));
  // Monotone on [0, 1].
  for (double s = 0.0; s < 1.0; s += 0.05) {
    CHECK(min_jerk(s + 0.05) >= min_jerk(s));
  }
}

TEST_CASE("gen_stiffness_demo") {
  const MsdScenario scenario = default_msd_scenario();

  SUBCASE("default scenario gives 401 samples starting at K0") {
    const SpdDemonstration demo = gen_stiffness_demo(scenario);
    CHECK(demo.length() == 401);
    CHECK(demo.dt() == doctest::Approx(0.01));
    CHECK(rel_frobenius_error(demo.points().front().mat(),
                              scenario.initial_stiffness.mat()) < 1e-14);
  }

  SUBCASE("a 90 degree rotation swaps the diagonal") {
    const SpdDemonstration demo = gen_stiffness_demo(scenario);
    Eigen::MatrixXd swapped(2, 2);
    swapped << 100.0, 0.0, 0.0, 500.0;
    CHECK(rel_frobenius_error(demo.points().back().mat(), swapped) < 1e-12);
  }

  SUBCASE("eigenvalues are invariant along the profile") {
    const SpdDemonstration demo = gen_stiffness_demo(scenario);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(
        scenario.initial_stiffness.mat(), Eigen::EigenvaluesOnly);
    for (const SpdMatrix& k : demo.points()) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
          k.mat(), Eigen::EigenvaluesOnly);
      CHECK((solver.eigenvalues() - ref.eigenvalues()).cwiseAbs().maxCoeff() <
            1e-12 * ref.eigenvalues().maxCoeff());
    }
  }

  SUBCASE("zero rotation gives a constant demonstration") {
    MsdScenario still = scenario;
    still.theta_end = 0.0;
    const SpdDemonstration demo = gen_stiffness_demo(still);
    for (const SpdMatrix& k : demo.points()) {
      CHECK((k.mat() - scenario.initial_stiffness.mat()).norm() == 0.0);
    }
  }

  SUBCASE("rejects isotropic stiffness and bad sampling") {
    MsdScenario iso = scenario;
    iso.initial_stiffness = SpdMatrix(200.0 * Eigen::MatrixXd::Identity(2, 2));
    CHECK_THROWS_AS(gen_stiffness_demo(iso), InvalidParameter);

    MsdScenario bad_dt = scenario;
    bad_dt.dt = 0.0;
    CHECK_THROWS_AS(gen_stiffness_demo(bad_dt), InvalidParameter);
  }
}

TEST_CASE("simulate_msd") {
  SUBCASE("no force means no motion") {
    MsdScenario scenario = default_msd_scenario();
    scenario.forces.clear();
    const SpdDemonstration demo = gen_stiffness_demo(scenario);
    const auto motion = simulate_msd(scenario, demo.points());
    for (const MsdSample& s : motion) {
      CHECK(s.position.norm() == 0.0);
      CHECK(s.velocity.norm() == 0.0);
    }
  }

  SUBCASE("constant force settles at K^{-1} f") {
    MsdScenario scenario = default_msd_scenario();
    scenario.theta_end = 0.0;
    // Slowest mode decays at roughly K_min/D = 0.5/s; 40 s outruns it.
    scenario.duration = 40.0;
    scenario.dt = 0.001;
    scenario.damping = SpdMatrix(200.0 * Eigen::MatrixXd::Identity(2, 2));
    scenario.forces = {ForcePulse{0.0, 1.1, {10.0, 5.0}}};
    const SpdDemonstration demo = gen_stiffness_demo(scenario);
    const auto motion = simulate_msd(scenario, demo.points());
    const Eigen::Vector2d want =
        scenario.initial_stiffness.mat().inverse() * Eigen::Vector2d(10.0, 5.0);
    CHECK((motion.back().position - want).norm() < 1e-6 * want.norm());
  }

  SUBCASE("coarse step stays close to a fine-step reference") {
    MsdScenario coarse = default_msd_scenario();
    MsdScenario fine = coarse;
    fine.dt = 0.001;
    const auto coarse_motion =
        simulate_msd(coarse, gen_stiffness_demo(coarse).points());
    const auto fine_motion =
        simulate_msd(fine, gen_stiffness_demo(fine).points());

    double peak = 0.0;
    for (const MsdSample& s : fine_motion) {
      peak = std::max(peak, s.position.norm());
    }
    double worst = 0.0;
    for (size_t l = 0; l < coarse_motion.size(); ++l) {
      worst = std::max(
          worst,
          (coarse_motion[l].position - fine_motion[10 * l].position).norm());
    }
    CHECK(worst < 0.05 * peak);

    // Passive parameters keep the energy bounded over the run.
    const auto energy = [&](const MsdSample& s, const SpdMatrix& k) {
      return 0.5 * coarse.mass * s.velocity.squaredNorm() +
             0.5 * s.position.dot(k.mat() * s.position);
    };
    const SpdDemonstration demo = gen_stiffness_demo(coarse);
    double fine_peak_energy = 0.0;
    const SpdDemonstration fine_demo = gen_stiffness_demo(fine);
    for (size_t l = 0; l < fine_motion.size(); ++l) {
      fine_peak_energy = std::max(
          fine_peak_energy, energy(fine_motion[l], fine_demo.points()[l]));
    }
    for (size_t l = 0; l < coarse_motion.size(); ++l) {
      CHECK(energy(coarse_motion[l], demo.points()[l]) <=
            2.0 * fine_peak_energy);
    }
  }

  SUBCASE("stiffness series length must match") {
    const MsdScenario scenario = default_msd_scenario();
    const SpdDemonstration demo = gen_stiffness_demo(scenario);
    std::vector<SpdMatrix> short_series(demo.points().begin(),
                                        demo.points().end() - 1);
    CHECK_THROWS_AS(simulate_msd(scenario, short_series), DimensionMismatch);
  }
}

TEST_CASE("generated demonstrations always validate") {
  for (double theta_end : {0.0, 0.7, 1.5707963267948966}) {
    MsdScenario scenario = default_msd_scenario();
    scenario.theta_end = theta_end;
    scenario.duration = 2.0;
    scenario.dt = 0.02;
    CHECK_NOTHROW(gen_stiffness_demo(scenario));
  }
}
