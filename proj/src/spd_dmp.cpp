#include "spdmp/spd_dmp.hpp"

#include <cmath>
#include <sstream>

namespace spdmp {

namespace {

constexpr double kUniformDtTol = 1e-9;

// Consecutive demonstration points closer than this (relative Frobenius) are
// treated as coincident and get a zero derivative.
constexpr double kDegenerateStepTol = 1e-14;

TangentVector goal_pull(const SpdMatrix& point, const SpdMatrix& goal,
                        const SpdMatrix& anchor) {
  return mandel_vec(parallel_transport(point, anchor, log_map(point, goal)));
}

bool same_entries(const SpdMatrix& a, const SpdMatrix& b) {
  return a.mat() == b.mat();
}

}  // namespace

SpdDemonstration::SpdDemonstration(std::vector<double> times,
                                   std::vector<SpdMatrix> points)
    : times_(std::move(times)), points_(std::move(points)) {
  if (points_.size() != times_.size()) {
    std::ostringstream msg;
    msg << "SpdDemonstration: " << times_.size() << " times vs "
        << points_.size() << " points";
    throw DimensionMismatch(msg.str());
  }
  if (points_.size() < 3) {
    std::ostringstream msg;
    msg << "SpdDemonstration: need at least 3 samples, got " << points_.size();
    throw InvalidParameter(msg.str());
  }
  const int m = points_.front().dim();
  for (const SpdMatrix& p : points_) {
    if (p.dim() != m) {
      throw DimensionMismatch(
          "SpdDemonstration: points have inconsistent dimensions");
    }
  }
  dt_ = times_[1] - times_[0];
  if (dt_ <= 0.0) {
    throw InvalidParameter("SpdDemonstration: times must strictly increase");
  }
  for (size_t l = 1; l < times_.size(); ++l) {
    const double step = times_[l] - times_[l - 1];
    if (step <= 0.0) {
      throw InvalidParameter("SpdDemonstration: times must strictly increase");
    }
    if (std::abs(step - dt_) > kUniformDtTol) {
      std::ostringstream msg;
      msg << "SpdDemonstration: non-uniform sampling, step " << l << " is "
          << step << " vs dt " << dt_;
      throw InvalidParameter(msg.str());
    }
  }
}

PreprocessedDemo preprocess(const SpdDemonstration& demo, double alpha_x) {
  const int count = demo.length();
  const double dt = demo.dt();
  const CanonicalSystem cs{alpha_x, demo.duration()};
  const SpdMatrix& anchor = demo.points().front();
  const int n = mandel_vec_dim(demo.dim());

  std::vector<double> phases(count);
  const double t0 = demo.times().front();
  for (int l = 0; l < count; ++l) {
    phases[l] = phase(cs, demo.times()[l] - t0);
  }

  // Scaled velocity sigma = tau * d(Xi)/dt, the manifold analogue of the
  // scalar z = tau y'. The per-step derivative lives at the earlier point;
  // transport every one into the shared tangent space at the first point.
  std::vector<TangentVector> sigma(count, TangentVector::Zero(n));
  std::vector<int> degenerate;
  for (int l = 1; l < count; ++l) {
    const SpdMatrix& prev = demo.points()[l - 1];
    const SpdMatrix& curr = demo.points()[l];
    const double gap = (curr.mat() - prev.mat()).norm();
    if (gap <= kDegenerateStepTol * std::max(1.0, prev.mat().norm())) {
      degenerate.push_back(l);
      continue;
    }
    const SymMatrix velocity = log_map(prev, curr) * (cs.tau / dt);
    sigma[l] = mandel_vec(parallel_transport(prev, anchor, velocity));
  }

  // Second derivative by forward difference in the common tangent space,
  // holding the last sample.
  std::vector<TangentVector> sigma_dot(count, TangentVector::Zero(n));
  for (int l = 0; l + 1 < count; ++l) {
    sigma_dot[l] = (sigma[l + 1] - sigma[l]) / dt;
  }
  sigma_dot[count - 1] = sigma_dot[count - 2];

  return PreprocessedDemo{demo,
                          std::move(phases),
                          std::move(sigma),
                          std::move(sigma_dot),
                          anchor,
                          demo.points().back(),
                          std::move(degenerate)};
}

Eigen::MatrixXd compute_forcing_targets(const PreprocessedDemo& pre,
                                        const DmpGains& gains,
                                        const CanonicalSystem& cs) {
  const int count = pre.demo.length();
  const int n = mandel_vec_dim(pre.demo.dim());
  Eigen::MatrixXd targets(count, n);
  for (int l = 0; l < count; ++l) {
    const TangentVector pull =
        goal_pull(pre.demo.points()[l], pre.goal, pre.anchor);
    targets.row(l) = (cs.tau * pre.sigma_dot[l] -
                      gains.alpha_z * (gains.beta_z * pull - pre.sigma[l]))
                         .transpose();
  }
  return targets;
}

SpdDmpModel train(const SpdDemonstration& demo, const TrainParams& params) {
  PreprocessedDemo pre = preprocess(demo, params.alpha_x);
  const CanonicalSystem cs{params.alpha_x, demo.duration()};
  const Eigen::MatrixXd targets =
      compute_forcing_targets(pre, params.gains, cs);
  const BasisSet basis = make_basis(params.basis_count, params.alpha_x);
  const Eigen::MatrixXd weights =
      fit_weights(basis, pre.phases, targets, params.ridge);
  return SpdDmpModel{demo.dim(),
                     mandel_vec_dim(demo.dim()),
                     params.gains,
                     cs,
                     params.alpha_g,
                     basis,
                     weights,
                     pre.anchor,
                     pre.goal,
                     demo.points().front()};
}

ReproductionState initial_state(const SpdDmpModel& model,
                                const SpdMatrix& start, const SpdMatrix& goal) {
  if (start.dim() != model.dim || goal.dim() != model.dim) {
    std::ostringstream msg;
    msg << "initial_state: start/goal dimension does not match model dim "
        << model.dim;
    throw DimensionMismatch(msg.str());
  }
  return ReproductionState{0.0, start, TangentVector::Zero(model.vec_dim),
                           goal};
}

ReproductionState step(const SpdDmpModel& model, const ReproductionState& state,
                       double dt) {
  if (dt <= 0.0) {
    std::ostringstream msg;
    msg << "step: dt = " << dt << " must be > 0";
    throw InvalidParameter(msg.str());
  }
  const double x = phase(model.canonical, state.t);
  const double tau = model.canonical.tau;

  const TangentVector pull = goal_pull(state.point, state.goal, model.anchor);
  const TangentVector forcing = forcing_vector(model.basis, model.weights, x);
  const TangentVector sigma_dot =
      (model.gains.alpha_z * (model.gains.beta_z * pull - state.sigma) +
       forcing) /
      tau;

  // Advance the point along the geodesic given by the current velocity, then
  // the velocity by its current derivative.
  const SymMatrix direction = parallel_transport(
      model.anchor, state.point, mandel_mat(state.sigma));
  const SpdMatrix next_point = exp_map(state.point, direction * (dt / tau));

  return ReproductionState{state.t + dt, next_point,
                           state.sigma + dt * sigma_dot, state.goal};
}

std::vector<TrajectorySample> reproduce(
    const SpdDmpModel& model, const SpdMatrix& start, const SpdMatrix& goal,
    double dt, double duration, const std::optional<GoalSwitch>& goal_switch) {
  if (dt <= 0.0 || duration <= 0.0) {
    std::ostringstream msg;
    msg << "reproduce: dt = " << dt << ", duration = " << duration
        << " must both be > 0";
    throw InvalidParameter(msg.str());
  }
  if (goal_switch) {
    if (goal_switch->t_switch < 0.0 || goal_switch->t_switch >= duration) {
      std::ostringstream msg;
      msg << "reproduce: switch time " << goal_switch->t_switch
          << " outside [0, " << duration << ")";
      throw InvalidParameter(msg.str());
    }
    if (goal_switch->new_goal.dim() != model.dim) {
      throw DimensionMismatch("reproduce: new goal dimension mismatch");
    }
  }

  const int steps = static_cast<int>(std::lround(duration / dt));
  std::vector<TrajectorySample> out;
  out.reserve(steps + 1);

  ReproductionState state = initial_state(model, start, goal);
  out.push_back(TrajectorySample{state.t, state.point});
  const double tau = model.canonical.tau;
  for (int k = 0; k < steps; ++k) {
    if (goal_switch && state.t >= goal_switch->t_switch &&
        !same_entries(state.goal, goal_switch->new_goal)) {
      const SymMatrix pull = log_map(state.goal, goal_switch->new_goal);
      state.goal =
          exp_map(state.goal, pull * (goal_switch->alpha_g * dt / tau));
    }
    try {
      state = step(model, state, dt);
    } catch (const DefinitenessError& err) {
      std::ostringstream msg;
      msg << "reproduce: aborted at step " << k + 1 << " (t = "
          << state.t + dt << "): " << err.what();
      throw DefinitenessError(msg.str());
    }
    out.push_back(TrajectorySample{state.t, state.point});
  }
  return out;
}

}  // namespace spdmp
