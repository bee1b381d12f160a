#include "spdmp/spd_manifold.hpp"

#include <cmath>
#include <sstream>

namespace spdmp {

namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

void check_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream msg;
    msg << what << ": entries must be square, got " << m.rows() << "x"
        << m.cols();
    throw InvalidDimension(msg.str());
  }
}

void check_symmetric(const Eigen::MatrixXd& m, const char* what) {
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  const double tol = kSymmetryTol * std::max(1.0, m.norm());
  if (asym > tol) {
    std::ostringstream msg;
    msg << what << ": entries not symmetric, max|A - A^T| = " << asym;
    throw InvalidParameter(msg.str());
  }
}

void check_same_dim(int a, int b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch, " << a << " vs " << b;
    throw DimensionMismatch(msg.str());
  }
}

// Eigendecomposition of a symmetric matrix, with helpers to apply spectral
// functions. Definiteness is checked only by the functions that need it.
struct SymEig {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd values;

  explicit SymEig(const Eigen::MatrixXd& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) {
      throw Error("symmetric eigendecomposition failed to converge");
    }
    vectors = solver.eigenvectors();
    values = solver.eigenvalues();
  }

  void require_positive_definite(const char* what) const {
    const double lambda_max = values.maxCoeff();
    const double lambda_min = values.minCoeff();
    if (lambda_max <= 0.0 || lambda_min <= kPdRelFloor * lambda_max) {
      std::ostringstream msg;
      msg << what << ": matrix not positive definite, min eigenvalue "
          << lambda_min << " (max " << lambda_max << ")";
      throw DefinitenessError(msg.str());
    }
  }

  template <typename Fn>
  Eigen::MatrixXd apply(Fn&& fn) const {
    Eigen::VectorXd mapped = values.unaryExpr(std::forward<Fn>(fn));
    return symmetrized(vectors * mapped.asDiagonal() * vectors.transpose());
  }
};

}  // namespace

SymMatrix::SymMatrix(const Eigen::MatrixXd& entries) {
  check_square(entries, "SymMatrix");
  check_symmetric(entries, "SymMatrix");
  m_ = symmetrized(entries);
}

SymMatrix SymMatrix::Zero(int dim) {
  return SymMatrix(Eigen::MatrixXd::Zero(dim, dim));
}

SpdMatrix::SpdMatrix(const Eigen::MatrixXd& entries) {
  check_square(entries, "SpdMatrix");
  check_symmetric(entries, "SpdMatrix");
  m_ = symmetrized(entries);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m_,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("SpdMatrix: eigenvalue computation failed");
  }
  const double lambda_max = solver.eigenvalues().maxCoeff();
  const double lambda_min = solver.eigenvalues().minCoeff();
  if (lambda_max <= 0.0 || lambda_min <= kPdRelFloor * lambda_max) {
    std::ostringstream msg;
    msg << "SpdMatrix: not positive definite, min eigenvalue " << lambda_min
        << " (max " << lambda_max << ")";
    throw DefinitenessError(msg.str());
  }
}

SpdMatrix SpdMatrix::Identity(int dim) {
  return SpdMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

SymMatrix operator*(double k, const SymMatrix& s) {
  return SymMatrix(k * s.mat());
}

SymMatrix operator*(const SymMatrix& s, double k) { return k * s; }

SpdMatrix spd_sqrt(const SpdMatrix& a) {
  SymEig eig(a.mat());
  eig.require_positive_definite("spd_sqrt");
  return SpdMatrix(eig.apply([](double v) { return std::sqrt(v); }));
}

SpdMatrix spd_inv_sqrt(const SpdMatrix& a) {
  SymEig eig(a.mat());
  eig.require_positive_definite("spd_inv_sqrt");
  return SpdMatrix(eig.apply([](double v) { return 1.0 / std::sqrt(v); }));
}

SymMatrix logm_spd(const SpdMatrix& a) {
  SymEig eig(a.mat());
  eig.require_positive_definite("logm_spd");
  return SymMatrix(eig.apply([](double v) { return std::log(v); }));
}

SpdMatrix expm_sym(const SymMatrix& s) {
  SymEig eig(s.mat());
  return SpdMatrix(eig.apply([](double v) { return std::exp(v); }));
}

SymMatrix log_map(const SpdMatrix& base, const SpdMatrix& q) {
  check_same_dim(base.dim(), q.dim(), "log_map");
  SymEig eig(base.mat());
  eig.require_positive_definite("log_map");
  const Eigen::MatrixXd root = eig.apply([](double v) { return std::sqrt(v); });
  const Eigen::MatrixXd inv_root =
      eig.apply([](double v) { return 1.0 / std::sqrt(v); });

  // The congruence G^{-1/2} Q G^{-1/2} is SPD up to round-off; symmetrize
  // before decomposing.
  SymEig inner(symmetrized(inv_root * q.mat() * inv_root));
  inner.require_positive_definite("log_map");
  const Eigen::MatrixXd inner_log =
      inner.apply([](double v) { return std::log(v); });
  return SymMatrix(symmetrized(root * inner_log * root));
}

SpdMatrix exp_map(const SpdMatrix& base, const SymMatrix& delta) {
  check_same_dim(base.dim(), delta.dim(), "exp_map");
  SymEig eig(base.mat());
  eig.require_positive_definite("exp_map");
  const Eigen::MatrixXd root = eig.apply([](double v) { return std::sqrt(v); });
  const Eigen::MatrixXd inv_root =
      eig.apply([](double v) { return 1.0 / std::sqrt(v); });

  SymEig inner(symmetrized(inv_root * delta.mat() * inv_root));
  const Eigen::MatrixXd inner_exp =
      inner.apply([](double v) { return std::exp(v); });
  return SpdMatrix(symmetrized(root * inner_exp * root));
}

SymMatrix parallel_transport(const SpdMatrix& from, const SpdMatrix& to,
                             const SymMatrix& v) {
  check_same_dim(from.dim(), to.dim(), "parallel_transport");
  check_same_dim(from.dim(), v.dim(), "parallel_transport");
  SymEig eig(from.mat());
  eig.require_positive_definite("parallel_transport");
  const Eigen::MatrixXd root =
      eig.apply([](double e) { return std::sqrt(e); });
  const Eigen::MatrixXd inv_root =
      eig.apply([](double e) { return 1.0 / std::sqrt(e); });

  // C = (Q G^{-1})^{1/2} through the similarity identity
  // C = G^{1/2} (G^{-1/2} Q G^{-1/2})^{1/2} G^{-1/2}, which only needs
  // symmetric square roots.
  SymEig inner(symmetrized(inv_root * to.mat() * inv_root));
  inner.require_positive_definite("parallel_transport");
  const Eigen::MatrixXd inner_root =
      inner.apply([](double e) { return std::sqrt(e); });
  const Eigen::MatrixXd carrier = root * inner_root * inv_root;
  return SymMatrix(symmetrized(carrier * v.mat() * carrier.transpose()));
}

TangentVector mandel_vec(const SymMatrix& s) {
  const int m = s.dim();
  const Eigen::MatrixXd& mat = s.mat();
  TangentVector v(mandel_vec_dim(m));
  for (int i = 0; i < m; ++i) v(i) = mat(i, i);
  int k = m;
  const double root2 = std::sqrt(2.0);
  for (int col = m - 1; col >= 1; --col) {
    for (int row = col - 1; row >= 0; --row) {
      v(k++) = root2 * mat(row, col);
    }
  }
  return v;
}

SymMatrix mandel_mat(const TangentVector& v) {
  const int m = mandel_matrix_dim(static_cast<int>(v.size()));
  Eigen::MatrixXd mat(m, m);
  for (int i = 0; i < m; ++i) mat(i, i) = v(i);
  int k = m;
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  for (int col = m - 1; col >= 1; --col) {
    for (int row = col - 1; row >= 0; --row) {
      const double entry = inv_root2 * v(k++);
      mat(row, col) = entry;
      mat(col, row) = entry;
    }
  }
  return SymMatrix(mat);
}

int mandel_matrix_dim(int vec_dim) {
  if (vec_dim >= 1) {
    // n = m(m+1)/2  =>  m = (sqrt(8n+1) - 1)/2
    const int m = static_cast<int>(
        std::lround((std::sqrt(8.0 * vec_dim + 1.0) - 1.0) / 2.0));
    if (m >= 1 && m * (m + 1) / 2 == vec_dim) return m;
  }
  std::ostringstream msg;
  msg << "mandel_mat: vector length " << vec_dim
      << " is not m(m+1)/2 for any integer m";
  throw InvalidDimension(msg.str());
}

int mandel_vec_dim(int matrix_dim) { return matrix_dim * (matrix_dim + 1) / 2; }

SpdMatrix geodesic(const SpdMatrix& a, const SpdMatrix& b, double t) {
  if (t < 0.0 || t > 1.0) {
    std::ostringstream msg;
    msg << "geodesic: parameter t = " << t << " outside [0, 1]";
    throw InvalidParameter(msg.str());
  }
  return exp_map(a, t * log_map(a, b));
}

}  // namespace spdmp
