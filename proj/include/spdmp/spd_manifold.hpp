#pragma once

#include <Eigen/Dense>

#include "spdmp/errors.hpp"

namespace spdmp {

// Relative tolerance for symmetry checks: max|A - A^T| <= tol * max(1, |A|_F).
inline constexpr double kSymmetryTol = 1e-12;

// Relative eigenvalue floor for definiteness checks: lambda_min must exceed
// kPdRelFloor * lambda_max.
inline constexpr double kPdRelFloor = 1e-10;

// Mandel coordinates of a symmetric matrix, dimension n = m(m+1)/2.
using TangentVector = Eigen::VectorXd;

// A symmetric m x m matrix; element of a tangent space of the SPD manifold.
// Construction checks near-symmetry and stores the symmetrized entries.
class SymMatrix {
 public:
  explicit SymMatrix(const Eigen::MatrixXd& entries);

  static SymMatrix Zero(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

// A symmetric positive definite m x m matrix; point on the SPD manifold.
// Construction checks symmetry and strict positive definiteness
// (lambda_min > kPdRelFloor * lambda_max) and stores the symmetrized entries.
class SpdMatrix {
 public:
  explicit SpdMatrix(const Eigen::MatrixXd& entries);

  static SpdMatrix Identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

SymMatrix operator*(double k, const SymMatrix& s);
SymMatrix operator*(const SymMatrix& s, double k);

// Unique SPD square root B with B*B = A, and its inverse.
SpdMatrix spd_sqrt(const SpdMatrix& a);
SpdMatrix spd_inv_sqrt(const SpdMatrix& a);

// Principal matrix logarithm of an SPD matrix (symmetric result) and the
// matrix exponential of a symmetric matrix (SPD result). Mutually inverse.
SymMatrix logm_spd(const SpdMatrix& a);
SpdMatrix expm_sym(const SymMatrix& s);

// Logarithmic map: tangent vector at `base` pointing to `q`,
//   Log_G(Q) = G^{1/2} logm(G^{-1/2} Q G^{-1/2}) G^{1/2}.
SymMatrix log_map(const SpdMatrix& base, const SpdMatrix& q);

// Exponential map: point reached from `base` along the geodesic with initial
// direction `delta`,
//   Exp_G(D) = G^{1/2} expm(G^{-1/2} D G^{-1/2}) G^{1/2}.
SpdMatrix exp_map(const SpdMatrix& base, const SymMatrix& delta);

// Parallel transport of tangent vector `v` from the tangent space at `from`
// to the tangent space at `to` along the connecting geodesic:
//   B(V) = C V C^T,  C = (Q G^{-1})^{1/2}.
SymMatrix parallel_transport(const SpdMatrix& from, const SpdMatrix& to,
                             const SymMatrix& v);

// Mandel vectorization: diagonal entries first, then sqrt(2)-scaled
// off-diagonals of the upper triangle scanned by descending column and
// descending row within each column. For m = 2 this is (S11, S22, sqrt2*S12);
// for m = 3 it is (S11, S22, S33, sqrt2*S23, sqrt2*S13, sqrt2*S12).
// A linear isometry: |mandel_vec(S)|_2 = |S|_F.
TangentVector mandel_vec(const SymMatrix& s);
SymMatrix mandel_mat(const TangentVector& v);

// Matrix dimension m for Mandel vector length n = m(m+1)/2; throws
// InvalidDimension when n is not of that form.
int mandel_matrix_dim(int vec_dim);
int mandel_vec_dim(int matrix_dim);

// Point at parameter t in [0, 1] on the geodesic from a to b:
//   Exp_a(t * Log_a(b)).
SpdMatrix geodesic(const SpdMatrix& a, const SpdMatrix& b, double t);

}  // namespace spdmp
