#include "spdmp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spdmp {

namespace {

void check_same_dim(const SpdMatrix& a, const SpdMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch, " << a.dim() << " vs " << b.dim();
    throw DimensionMismatch(msg.str());
  }
}

// Cholesky log-determinant; avoids overflow of det itself.
double log_det(const Eigen::MatrixXd& spd, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(spd);
  if (llt.info() != Eigen::Success) {
    throw DefinitenessError(std::string(what) +
                            ": Cholesky factorization failed");
  }
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

}  // namespace

double log_euclidean_dist(const SpdMatrix& a, const SpdMatrix& b) {
  check_same_dim(a, b, "log_euclidean_dist");
  return (logm_spd(a).mat() - logm_spd(b).mat()).norm();
}

double jbld_dist(const SpdMatrix& a, const SpdMatrix& b) {
  check_same_dim(a, b, "jbld_dist");
  const double ld_mean = log_det(0.5 * (a.mat() + b.mat()), "jbld_dist");
  const double ld_a = log_det(a.mat(), "jbld_dist");
  const double ld_b = log_det(b.mat(), "jbld_dist");
  return std::sqrt(std::max(0.0, ld_mean - 0.5 * (ld_a + ld_b)));
}

}  // namespace spdmp
