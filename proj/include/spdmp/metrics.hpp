#pragma once

#include "spdmp/spd_manifold.hpp"

namespace spdmp {

// Log-Euclidean distance |logm(A) - logm(B)|_F.
double log_euclidean_dist(const SpdMatrix& a, const SpdMatrix& b);

// Jensen-Bregman Log-Determinant distance
// sqrt(ln det((A+B)/2) - 0.5 ln det(A B)), with the inner expression clamped
// at zero against round-off.
double jbld_dist(const SpdMatrix& a, const SpdMatrix& b);

}  // namespace spdmp
