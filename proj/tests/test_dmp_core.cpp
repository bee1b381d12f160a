#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "spdmp/dmp_core.hpp"
#include "test_support.hpp"

using namespace spdmp;
using spdmp::testing::scalar_weights_from_samples;

namespace {

// Minimum-jerk position profile from y0 to g over [0, tau].
double min_jerk_position(double y0, double g, double t, double tau) {
  const double s = std::clamp(t / tau, 0.0, 1.0);
  const double shape = s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
  return y0 + (g - y0) * shape;
}

}  // namespace

TEST_CASE("phase closed form") {
  const CanonicalSystem cs{2.0, 3.0};
  CHECK(phase(cs, 0.0) == 1.0);
  CHECK(phase(cs, cs.tau) == doctest::Approx(std::exp(-cs.alpha_x)));

  double prev = phase(cs, 0.0);
  for (double t = 0.25; t < 10.0; t += 0.25) {
    const double x = phase(cs, t);
    CHECK(x < prev);
    CHECK(x > 0.0);
    prev = x;
  }

  CHECK_THROWS_AS(phase(cs, -0.1), InvalidParameter);
  CHECK_THROWS_AS(phase(CanonicalSystem{0.0, 1.0}, 0.5), InvalidParameter);
  CHECK_THROWS_AS(phase(CanonicalSystem{2.0, -1.0}, 0.5), InvalidParameter);
}

TEST_CASE("make_basis follows the center/width formulas") {
  SUBCASE("two basis functions") {
    const BasisSet basis = make_basis(2, 2.0);
    CHECK(basis.centers(0) == 1.0);
    CHECK(basis.centers(1) == doctest::Approx(std::exp(-2.0)));
    const double gap = std::exp(-2.0) - 1.0;
    CHECK(basis.widths(0) == doctest::Approx(1.0 / (gap * gap)));
    CHECK(basis.widths(1) == basis.widths(0));
  }

  SUBCASE("formula re-evaluation at N = 25") {
    const int count = 25;
    const double alpha_x = 2.0;
    const BasisSet basis = make_basis(count, alpha_x);
    CHECK(basis.centers(0) == 1.0);
    for (int i = 0; i < count; ++i) {
      CHECK(basis.centers(i) ==
            doctest::Approx(std::exp(-alpha_x * i / (count - 1.0))));
      CHECK(basis.widths(i) > 0.0);
      if (i > 0) CHECK(basis.centers(i) < basis.centers(i - 1));
    }
    for (int i = 0; i + 1 < count; ++i) {
      const double gap = basis.centers(i + 1) - basis.centers(i);
      CHECK(basis.widths(i) == doctest::Approx(1.0 / (gap * gap)));
    }
  }

  SUBCASE("rejects N < 2") {
    CHECK_THROWS_AS(make_basis(1, 2.0), InvalidParameter);
    CHECK_THROWS_AS(make_basis(0, 2.0), InvalidParameter);
  }
}

TEST_CASE("basis activations stay within [0, 1] and normalize") {
  // Far from a narrow basis the activation underflows to an exact zero; the
  // normalized sum is what the forcing term relies on.
  const BasisSet basis = make_basis(25, 2.0);
  for (double x : {1.0, 0.7, 0.3, 0.135, 0.01}) {
    const Eigen::VectorXd psi = basis_activations(basis, x);
    CHECK(psi.maxCoeff() <= 1.0);
    CHECK(psi.minCoeff() >= 0.0);
    CHECK(psi.sum() > 0.0);
    CHECK((psi / psi.sum()).sum() == doctest::Approx(1.0));
  }
}

TEST_CASE("forcing_value") {
  const BasisSet basis = make_basis(10, 2.0);

  SUBCASE("equal weights give w * x") {
    const Eigen::VectorXd w = Eigen::VectorXd::Constant(10, 3.5);
    for (double x : {1.0, 0.5, 0.2}) {
      CHECK(forcing_value(basis, w, x) == doctest::Approx(3.5 * x));
    }
  }

  SUBCASE("vanishes as x approaches zero") {
    Eigen::VectorXd w(10);
    w.setLinSpaced(-2.0, 2.0);
    CHECK(std::abs(forcing_value(basis, w, 1e-6)) <= 2.0 * 1e-6);
  }

  SUBCASE("a dominant basis pins the value") {
    BasisSet spiky;
    spiky.centers = Eigen::VectorXd(2);
    spiky.centers << 1.0, 0.01;
    spiky.widths = Eigen::VectorXd(2);
    spiky.widths << 1e4, 1e4;
    Eigen::VectorXd w(2);
    w << 4.0, -7.0;
    CHECK(forcing_value(spiky, w, 1.0) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(forcing_value(spiky, w, 0.01) ==
          doctest::Approx(-7.0 * 0.01).epsilon(1e-9));
  }

  SUBCASE("rejects phases outside (0, 1]") {
    const Eigen::VectorXd w = Eigen::VectorXd::Zero(10);
    CHECK_THROWS_AS(forcing_value(basis, w, 0.0), InvalidParameter);
    CHECK_THROWS_AS(forcing_value(basis, w, 1.5), InvalidParameter);
  }

  SUBCASE("weight count must match") {
    CHECK_THROWS_AS(forcing_value(basis, Eigen::VectorXd::Zero(3), 0.5),
                    DimensionMismatch);
  }
}

TEST_CASE("fit_weights") {
  const CanonicalSystem cs{2.0, 1.0};

  SUBCASE("zero targets give exactly zero weights") {
    const BasisSet basis = make_basis(10, cs.alpha_x);
    std::vector<PhaseSample> samples;
    for (int l = 0; l < 100; ++l) {
      samples.push_back({phase(cs, l * 0.01), 0.0});
    }
    const Eigen::VectorXd w = fit_weights(basis, samples);
    CHECK(w.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("recovers known weights from generated targets") {
    const BasisSet basis = make_basis(10, cs.alpha_x);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::VectorXd truth(10);
    for (int i = 0; i < 10; ++i) truth(i) = unit(rng);

    std::vector<PhaseSample> samples;
    for (int l = 0; l < 2000; ++l) {
      const double x = phase(cs, l * 0.0005);
      samples.push_back({x, forcing_value(basis, truth, x)});
    }
    const Eigen::VectorXd w = fit_weights(basis, samples);
    CHECK((w - truth).cwiseAbs().maxCoeff() < 1e-6);
  }

  SUBCASE("constant slope targets k * x give all weights k") {
    const BasisSet basis = make_basis(10, cs.alpha_x);
    std::vector<PhaseSample> samples;
    for (int l = 0; l < 500; ++l) {
      const double x = phase(cs, l * 0.002);
      samples.push_back({x, -2.5 * x});
    }
    const Eigen::VectorXd w = fit_weights(basis, samples);
    for (int i = 0; i < w.size(); ++i) {
      CHECK(w(i) == doctest::Approx(-2.5).epsilon(1e-6));
    }
  }

  SUBCASE("training residual shrinks with the ridge") {
    const BasisSet basis = make_basis(8, cs.alpha_x);
    std::vector<PhaseSample> samples;
    for (int l = 0; l < 400; ++l) {
      const double x = phase(cs, l * 0.0025);
      samples.push_back({x, std::sin(6.0 * x) * x});
    }
    const auto residual = [&](double ridge) {
      const Eigen::VectorXd w = fit_weights(basis, samples, ridge);
      double sum = 0.0;
      for (const PhaseSample& s : samples) {
        const double r = forcing_value(basis, w, s.x) - s.target;
        sum += r * r;
      }
      return sum;
    };
    const double coarse = residual(1e-2);
    const double fine = residual(1e-8);
    const double exact = residual(0.0);
    CHECK(fine <= coarse);
    CHECK(exact <= fine + 1e-15);
  }

  SUBCASE("input validation") {
    const BasisSet basis = make_basis(10, cs.alpha_x);
    std::vector<PhaseSample> few = {{1.0, 0.0}, {0.5, 0.0}};
    CHECK_THROWS_AS(fit_weights(basis, few), InvalidParameter);

    std::vector<PhaseSample> dup;
    for (int l = 0; l < 12; ++l) dup.push_back({0.5, 1.0});
    CHECK_THROWS_AS(fit_weights(basis, dup), InvalidParameter);

    std::vector<PhaseSample> ok;
    for (int l = 0; l < 12; ++l) ok.push_back({phase(cs, 0.05 * l), 0.0});
    CHECK_THROWS_AS(fit_weights(basis, ok, -1.0), InvalidParameter);
  }

  SUBCASE("singular normal equations without ridge report rank deficiency") {
    const BasisSet basis = make_basis(25, cs.alpha_x);
    // Samples crowded near x = 1 leave the far-center columns empty.
    std::vector<PhaseSample> crowd;
    for (int l = 0; l < 30; ++l) {
      crowd.push_back({0.999 + 1e-5 * l, 1.0});
    }
    CHECK_THROWS_AS(fit_weights(basis, crowd, 0.0), RankDeficiency);
    CHECK_NOTHROW(fit_weights(basis, crowd, 1e-8));
  }
}

TEST_CASE("activation underflow raises DegenerateActivation") {
  // A basis this narrow loses all activation away from its centers; the
  // built-in spacing rule cannot produce such a set over (0, 1].
  BasisSet spiky;
  spiky.centers = Eigen::VectorXd(2);
  spiky.centers << 1.0, 0.9;
  spiky.widths = Eigen::VectorXd(2);
  spiky.widths << 1e6, 1e6;
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(forcing_value(spiky, w, 0.01), DegenerateActivation);

  std::vector<PhaseSample> samples = {{0.01, 0.0}, {0.02, 0.0}};
  CHECK_THROWS_AS(fit_weights(spiky, samples, 1e-8), DegenerateActivation);
}

TEST_CASE("scalar_dmp_rollout") {
  const CanonicalSystem cs{2.0, 1.0};
  const DmpGains gains{48.0, 12.0};
  const BasisSet basis = make_basis(10, cs.alpha_x);

  SUBCASE("equilibrium is a fixed point") {
    ScalarDmp dmp{gains, basis, cs, Eigen::VectorXd::Zero(10), 2.0, 2.0};
    const auto states = scalar_dmp_rollout(dmp, 0.01, 2.0);
    for (const ScalarState& s : states) {
      CHECK(s.y == 2.0);
      CHECK(s.z == 0.0);
    }
  }

  SUBCASE("zero forcing converges like the critically damped solution") {
    const double y0 = -1.0;
    const double goal = 3.0;
    ScalarDmp dmp{gains, basis, cs, Eigen::VectorXd::Zero(10), y0, goal};
    const double dt = 0.001;
    const auto states = scalar_dmp_rollout(dmp, dt, 2.0 * cs.tau);

    CHECK(std::abs(states.back().y - goal) < 1e-3 * std::abs(goal - y0));

    // Analytic solution of e'' + (a/tau) e' + (a b / tau^2) e = 0 from rest:
    // e(t) = e0 (1 - r t) exp(r t), double root r = -a/(2 tau).
    const double r = -gains.alpha_z / (2.0 * cs.tau);
    double worst = 0.0;
    for (const ScalarState& s : states) {
      const double analytic =
          goal + (y0 - goal) * (1.0 - r * s.t) * std::exp(r * s.t);
      worst = std::max(worst, std::abs(s.y - analytic));
    }
    CHECK(worst < 0.01 * std::abs(goal - y0));
  }

  SUBCASE("zero forcing from rest never overshoots") {
    ScalarDmp dmp{gains, basis, cs, Eigen::VectorXd::Zero(10), 0.0, 1.0};
    const auto states = scalar_dmp_rollout(dmp, 0.002, 3.0 * cs.tau);
    for (const ScalarState& s : states) {
      CHECK(s.y <= 1.0 + 1e-12);
    }
  }

  SUBCASE("reproduces a minimum-jerk demonstration within 1%") {
    const double y0 = 0.5;
    const double goal = -1.5;
    const double dt = 0.005;
    const CanonicalSystem mcs{2.0, 2.0};
    const int count = static_cast<int>(std::lround(mcs.tau / dt)) + 1;
    std::vector<double> y(count);
    for (int l = 0; l < count; ++l) {
      y[l] = min_jerk_position(y0, goal, l * dt, mcs.tau);
    }

    const BasisSet rich = make_basis(25, mcs.alpha_x);
    ScalarDmp dmp{gains, rich, mcs,
                  scalar_weights_from_samples(y, dt, gains, mcs, rich), y0,
                  goal};
    const auto states = scalar_dmp_rollout(dmp, dt, mcs.tau);
    REQUIRE(states.size() == y.size());
    double worst = 0.0;
    for (size_t l = 0; l < y.size(); ++l) {
      worst = std::max(worst, std::abs(states[l].y - y[l]));
    }
    CHECK(worst < 0.01 * std::abs(goal - y0));
  }

  SUBCASE("rejects non-positive steps") {
    ScalarDmp dmp{gains, basis, cs, Eigen::VectorXd::Zero(10), 0.0, 1.0};
    CHECK_THROWS_AS(scalar_dmp_rollout(dmp, 0.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(scalar_dmp_rollout(dmp, 0.01, -1.0), InvalidParameter);
  }
}
