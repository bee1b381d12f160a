#include "spdmp/dmp_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spdmp {

namespace {

void check_canonical(const CanonicalSystem& cs) {
  if (cs.alpha_x <= 0.0 || cs.tau <= 0.0) {
    std::ostringstream msg;
    msg << "CanonicalSystem requires alpha_x > 0 and tau > 0, got alpha_x = "
        << cs.alpha_x << ", tau = " << cs.tau;
    throw InvalidParameter(msg.str());
  }
}

void check_phase_range(double x, const char* what) {
  if (!(x > 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": phase " << x << " outside (0, 1]";
    throw InvalidParameter(msg.str());
  }
}

// Design matrix row l: psi_i(x_l) x_l / sum_j psi_j(x_l).
Eigen::MatrixXd design_matrix(const BasisSet& basis,
                              const std::vector<double>& phases) {
  const int count = static_cast<int>(phases.size());
  Eigen::MatrixXd design(count, basis.size());
  for (int l = 0; l < count; ++l) {
    check_phase_range(phases[l], "fit_weights");
    const Eigen::VectorXd psi = basis_activations(basis, phases[l]);
    const double total = psi.sum();
    if (total <= 0.0) {
      std::ostringstream msg;
      msg << "fit_weights: basis activations underflow at phase " << phases[l];
      throw DegenerateActivation(msg.str());
    }
    design.row(l) = psi.transpose() * (phases[l] / total);
  }
  return design;
}

void check_fit_inputs(const BasisSet& basis,
                      const std::vector<double>& phases) {
  if (static_cast<int>(phases.size()) < basis.size()) {
    std::ostringstream msg;
    msg << "fit_weights: " << phases.size() << " samples for " << basis.size()
        << " basis functions";
    throw InvalidParameter(msg.str());
  }
  std::vector<double> sorted = phases;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidParameter("fit_weights: sample phases must be distinct");
  }
}

}  // namespace

double phase(const CanonicalSystem& cs, double t) {
  check_canonical(cs);
  if (t < 0.0) {
    std::ostringstream msg;
    msg << "phase: t = " << t << " must be >= 0";
    throw InvalidParameter(msg.str());
  }
  return std::exp(-cs.alpha_x * t / cs.tau);
}

BasisSet make_basis(int count, double alpha_x) {
  if (count < 2) {
    std::ostringstream msg;
    msg << "make_basis: need at least 2 basis functions, got " << count;
    throw InvalidParameter(msg.str());
  }
  if (alpha_x <= 0.0) {
    std::ostringstream msg;
    msg << "make_basis: alpha_x = " << alpha_x << " must be > 0";
    throw InvalidParameter(msg.str());
  }
  BasisSet basis;
  basis.centers.resize(count);
  basis.widths.resize(count);
  for (int i = 0; i < count; ++i) {
    basis.centers(i) = std::exp(-alpha_x * static_cast<double>(i) /
                                static_cast<double>(count - 1));
  }
  for (int i = 0; i + 1 < count; ++i) {
    const double gap = basis.centers(i + 1) - basis.centers(i);
    basis.widths(i) = 1.0 / (gap * gap);
  }
  basis.widths(count - 1) = basis.widths(count - 2);
  return basis;
}

Eigen::VectorXd basis_activations(const BasisSet& basis, double x) {
  Eigen::VectorXd psi(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    const double d = x - basis.centers(i);
    psi(i) = std::exp(-basis.widths(i) * d * d);
  }
  return psi;
}

double forcing_value(const BasisSet& basis, const Eigen::VectorXd& weights,
                     double x) {
  if (weights.size() != basis.size()) {
    std::ostringstream msg;
    msg << "forcing_value: " << weights.size() << " weights for "
        << basis.size() << " basis functions";
    throw DimensionMismatch(msg.str());
  }
  check_phase_range(x, "forcing_value");
  const Eigen::VectorXd psi = basis_activations(basis, x);
  const double total = psi.sum();
  if (total <= 0.0) {
    std::ostringstream msg;
    msg << "forcing_value: basis activations underflow at phase " << x;
    throw DegenerateActivation(msg.str());
  }
  return weights.dot(psi) / total * x;
}

Eigen::VectorXd forcing_vector(const BasisSet& basis,
                               const Eigen::MatrixXd& weights, double x) {
  if (weights.rows() != basis.size()) {
    std::ostringstream msg;
    msg << "forcing_vector: weight matrix has " << weights.rows()
        << " rows for " << basis.size() << " basis functions";
    throw DimensionMismatch(msg.str());
  }
  check_phase_range(x, "forcing_vector");
  const Eigen::VectorXd psi = basis_activations(basis, x);
  const double total = psi.sum();
  if (total <= 0.0) {
    std::ostringstream msg;
    msg << "forcing_vector: basis activations underflow at phase " << x;
    throw DegenerateActivation(msg.str());
  }
  return weights.transpose() * psi * (x / total);
}

Eigen::VectorXd fit_weights(const BasisSet& basis,
                            const std::vector<PhaseSample>& samples,
                            double ridge) {
  std::vector<double> phases(samples.size());
  Eigen::MatrixXd targets(samples.size(), 1);
  for (size_t l = 0; l < samples.size(); ++l) {
    phases[l] = samples[l].x;
    targets(static_cast<int>(l), 0) = samples[l].target;
  }
  return fit_weights(basis, phases, targets, ridge).col(0);
}

Eigen::MatrixXd fit_weights(const BasisSet& basis,
                            const std::vector<double>& phases,
                            const Eigen::MatrixXd& targets, double ridge) {
  if (targets.rows() != static_cast<Eigen::Index>(phases.size())) {
    std::ostringstream msg;
    msg << "fit_weights: " << phases.size() << " phases vs " << targets.rows()
        << " target rows";
    throw DimensionMismatch(msg.str());
  }
  if (ridge < 0.0) {
    throw InvalidParameter("fit_weights: ridge must be >= 0");
  }
  check_fit_inputs(basis, phases);

  const Eigen::MatrixXd design = design_matrix(basis, phases);
  const Eigen::MatrixXd gram =
      design.transpose() * design +
      ridge * Eigen::MatrixXd::Identity(basis.size(), basis.size());
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw RankDeficiency(
        "fit_weights: normal equations singular beyond regularization");
  }
  return llt.solve(design.transpose() * targets);
}

std::vector<ScalarState> scalar_dmp_rollout(const ScalarDmp& dmp, double dt,
                                            double duration) {
  if (dt <= 0.0 || duration <= 0.0) {
    std::ostringstream msg;
    msg << "scalar_dmp_rollout: dt = " << dt << ", duration = " << duration
        << " must both be > 0";
    throw InvalidParameter(msg.str());
  }
  const int steps = static_cast<int>(std::lround(duration / dt));
  std::vector<ScalarState> out;
  out.reserve(steps + 1);

  ScalarState state{0.0, dmp.y0, 0.0};
  out.push_back(state);
  const double tau = dmp.canonical.tau;
  for (int k = 0; k < steps; ++k) {
    const double x = phase(dmp.canonical, state.t);
    const double f = forcing_value(dmp.basis, dmp.weights, x);
    const double z_dot =
        (dmp.gains.alpha_z * (dmp.gains.beta_z * (dmp.goal - state.y) -
                              state.z) +
         f) /
        tau;
    const double y_dot = state.z / tau;
    state.y += dt * y_dot;
    state.z += dt * z_dot;
    state.t += dt;
    out.push_back(state);
  }
  return out;
}

}  // namespace spdmp
