#pragma once

#include <string>
#include <vector>

#include "spdmp/spd_dmp.hpp"

namespace spdmp {

// Fixed identifier of the vectorization layout written into model files.
inline constexpr const char* kMandelConvention =
    "diag-then-upper-colmajor-sqrt2";

// Demonstrations and reproduced trajectories share one schema: a JSON list
// of {t, matrix} with the matrix flattened row-major.
void save_trajectory(const std::string& path,
                     const std::vector<TrajectorySample>& trajectory);
std::vector<TrajectorySample> load_trajectory(const std::string& path);

void save_demonstration(const std::string& path,
                        const SpdDemonstration& demo);
SpdDemonstration load_demonstration(const std::string& path);

void save_model(const std::string& path, const SpdDmpModel& model);
SpdDmpModel load_model(const std::string& path);

// A goal override file: either a bare row-major array of length m*m or an
// object with a "matrix" key.
SpdMatrix load_matrix(const std::string& path);

}  // namespace spdmp
