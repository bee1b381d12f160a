#include "spdmp/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace spdmp {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw IoError(path + ": " + err.what());
  }
}

// Converts nlohmann type/range errors from malformed documents into IoError.
template <typename Fn>
auto with_json_errors(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& err) {
    throw IoError(path + ": " + err.what());
  }
}

void write_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open " + path + " for writing");
  }
  out << doc.dump(2) << "\n";
  if (!out) {
    throw IoError("failed writing " + path);
  }
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json flat = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
  }
  return flat;
}

Eigen::MatrixXd matrix_from_json(const json& flat, const std::string& where) {
  if (!flat.is_array()) {
    throw IoError(where + ": matrix entry is not an array");
  }
  const auto n = flat.size();
  const auto dim = static_cast<Eigen::Index>(std::lround(std::sqrt(
      static_cast<double>(n))));
  if (dim < 1 || static_cast<size_t>(dim * dim) != n) {
    throw IoError(where + ": matrix array length " + std::to_string(n) +
                  " is not a square");
  }
  Eigen::MatrixXd m(dim, dim);
  size_t k = 0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = flat[k++].get<double>();
  }
  return m;
}

Eigen::VectorXd vector_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array()) {
    throw IoError(where + ": expected an array");
  }
  Eigen::VectorXd v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) v(i) = arr[i].get<double>();
  return v;
}

std::vector<TrajectorySample> samples_from_json(const json& doc,
                                                const std::string& path) {
  if (!doc.is_array() || doc.empty()) {
    throw IoError(path + ": expected a non-empty list of {t, matrix}");
  }
  std::vector<TrajectorySample> out;
  out.reserve(doc.size());
  for (const json& entry : doc) {
    if (!entry.contains("t") || !entry.contains("matrix")) {
      throw IoError(path + ": entry missing \"t\" or \"matrix\"");
    }
    out.push_back(TrajectorySample{
        entry["t"].get<double>(),
        SpdMatrix(matrix_from_json(entry["matrix"], path))});
  }
  return out;
}

}  // namespace

void save_trajectory(const std::string& path,
                     const std::vector<TrajectorySample>& trajectory) {
  json doc = json::array();
  for (const TrajectorySample& sample : trajectory) {
    doc.push_back(
        json{{"t", sample.t}, {"matrix", matrix_to_json(sample.point.mat())}});
  }
  write_file(path, doc);
}

std::vector<TrajectorySample> load_trajectory(const std::string& path) {
  return with_json_errors(path,
                          [&] { return samples_from_json(parse_file(path), path); });
}

void save_demonstration(const std::string& path, const SpdDemonstration& demo) {
  json doc = json::array();
  for (int l = 0; l < demo.length(); ++l) {
    doc.push_back(json{{"t", demo.times()[l]},
                       {"matrix", matrix_to_json(demo.points()[l].mat())}});
  }
  write_file(path, doc);
}

SpdDemonstration load_demonstration(const std::string& path) {
  std::vector<TrajectorySample> samples = load_trajectory(path);
  std::vector<double> times;
  std::vector<SpdMatrix> points;
  times.reserve(samples.size());
  points.reserve(samples.size());
  for (TrajectorySample& sample : samples) {
    times.push_back(sample.t);
    points.push_back(std::move(sample.point));
  }
  return SpdDemonstration(std::move(times), std::move(points));
}

void save_model(const std::string& path, const SpdDmpModel& model) {
  json weights = json::array();
  for (Eigen::Index i = 0; i < model.weights.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index d = 0; d < model.weights.cols(); ++d) {
      row.push_back(model.weights(i, d));
    }
    weights.push_back(std::move(row));
  }
  json doc{{"m", model.dim},
           {"n", model.vec_dim},
           {"tau", model.canonical.tau},
           {"alpha_z", model.gains.alpha_z},
           {"beta_z", model.gains.beta_z},
           {"alpha_x", model.canonical.alpha_x},
           {"alpha_g", model.alpha_g},
           {"N", model.basis.size()},
           {"centers", std::vector<double>(
                           model.basis.centers.data(),
                           model.basis.centers.data() + model.basis.size())},
           {"widths", std::vector<double>(
                          model.basis.widths.data(),
                          model.basis.widths.data() + model.basis.size())},
           {"weights", std::move(weights)},
           {"anchor", matrix_to_json(model.anchor.mat())},
           {"goal", matrix_to_json(model.goal.mat())},
           {"start", matrix_to_json(model.start.mat())},
           {"mandel_convention", kMandelConvention}};
  write_file(path, doc);
}

namespace {

SpdDmpModel load_model_impl(const std::string& path) {
  const json doc = parse_file(path);
  for (const char* key :
       {"m", "n", "tau", "alpha_z", "beta_z", "alpha_x", "alpha_g", "N",
        "centers", "widths", "weights", "anchor", "goal", "start",
        "mandel_convention"}) {
    if (!doc.contains(key)) {
      throw IoError(path + ": model file missing key \"" + key + "\"");
    }
  }
  if (doc["mandel_convention"].get<std::string>() != kMandelConvention) {
    throw IoError(path + ": unsupported mandel_convention \"" +
                  doc["mandel_convention"].get<std::string>() + "\"");
  }
  const int m = doc["m"].get<int>();
  const int n = doc["n"].get<int>();
  if (m < 1 || n != mandel_vec_dim(m)) {
    throw IoError(path + ": inconsistent m/n");
  }
  const int basis_count = doc["N"].get<int>();
  BasisSet basis{vector_from_json(doc["centers"], path),
                 vector_from_json(doc["widths"], path)};
  if (basis.centers.size() != basis_count ||
      basis.widths.size() != basis_count) {
    throw IoError(path + ": centers/widths length does not match N");
  }

  const json& weight_rows = doc["weights"];
  if (!weight_rows.is_array() ||
      static_cast<int>(weight_rows.size()) != basis_count) {
    throw IoError(path + ": weights must have N rows");
  }
  Eigen::MatrixXd weights(basis_count, n);
  for (int i = 0; i < basis_count; ++i) {
    const Eigen::VectorXd row = vector_from_json(weight_rows[i], path);
    if (row.size() != n) {
      throw IoError(path + ": weight row " + std::to_string(i) +
                    " does not have n entries");
    }
    weights.row(i) = row.transpose();
  }

  return SpdDmpModel{
      m,
      n,
      DmpGains{doc["alpha_z"].get<double>(), doc["beta_z"].get<double>()},
      CanonicalSystem{doc["alpha_x"].get<double>(), doc["tau"].get<double>()},
      doc["alpha_g"].get<double>(),
      std::move(basis),
      std::move(weights),
      SpdMatrix(matrix_from_json(doc["anchor"], path)),
      SpdMatrix(matrix_from_json(doc["goal"], path)),
      SpdMatrix(matrix_from_json(doc["start"], path))};
}

SpdMatrix load_matrix_impl(const std::string& path) {
  const json doc = parse_file(path);
  if (doc.is_array()) {
    return SpdMatrix(matrix_from_json(doc, path));
  }
  if (doc.is_object() && doc.contains("matrix")) {
    return SpdMatrix(matrix_from_json(doc["matrix"], path));
  }
  throw IoError(path + ": expected a matrix array or {\"matrix\": [...]}");
}

}  // namespace

SpdDmpModel load_model(const std::string& path) {
  return with_json_errors(path, [&] { return load_model_impl(path); });
}

SpdMatrix load_matrix(const std::string& path) {
  return with_json_errors(path, [&] { return load_matrix_impl(path); });
}

}  // namespace spdmp
