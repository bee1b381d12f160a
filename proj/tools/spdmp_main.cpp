// Command-line front end: generate synthetic stiffness demonstrations, train
// SPD movement primitives, reproduce them (optionally with on-line goal
// switching), and compare SPD trajectories.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spdmp/json_io.hpp"
#include "spdmp/metrics.hpp"
#include "spdmp/msd_demo_gen.hpp"
#include "spdmp/spd_dmp.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string derive_path(const std::string& path, const std::string& suffix) {
  const size_t dot = path.rfind('.');
  const size_t slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + suffix;
  }
  return path.substr(0, dot) + suffix;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw spdmp::IoError("cannot open " + path + " for writing");
  }
  return out;
}

struct GenDemoConfig {
  std::string output;
  std::string csv;
  double duration = 4.0;
  double dt = 0.01;
  double theta_end_deg = 90.0;
};

int run_gen_demo(const GenDemoConfig& cfg) {
  spdmp::MsdScenario scenario = spdmp::default_msd_scenario();
  scenario.duration = cfg.duration;
  scenario.dt = cfg.dt;
  scenario.theta_end = cfg.theta_end_deg * kPi / 180.0;

  const spdmp::SpdDemonstration demo = spdmp::gen_stiffness_demo(scenario);
  spdmp::save_demonstration(cfg.output, demo);

  const std::vector<spdmp::MsdSample> motion =
      spdmp::simulate_msd(scenario, demo.points());
  const std::string csv_path =
      cfg.csv.empty() ? derive_path(cfg.output, ".csv") : cfg.csv;
  std::ofstream out = open_out(csv_path);
  out << "t,x,y,K11,K22,K12\n";
  for (int l = 0; l < demo.length(); ++l) {
    const Eigen::MatrixXd& k = demo.points()[l].mat();
    out << fmt(motion[l].t) << "," << fmt(motion[l].position.x()) << ","
        << fmt(motion[l].position.y()) << "," << fmt(k(0, 0)) << ","
        << fmt(k(1, 1)) << "," << fmt(k(0, 1)) << "\n";
  }
  std::cout << "wrote " << demo.length() << " samples to " << cfg.output
            << " and " << csv_path << "\n";
  return 0;
}

struct TrainConfig {
  std::string input;
  std::string output;
  spdmp::TrainParams params;
};

int run_train(const TrainConfig& cfg) {
  const spdmp::SpdDemonstration demo = spdmp::load_demonstration(cfg.input);
  const spdmp::SpdDmpModel model = spdmp::train(demo, cfg.params);
  spdmp::save_model(cfg.output, model);
  std::cout << "trained " << model.basis.size() << "x" << model.vec_dim
            << " weights (tau = " << model.canonical.tau << " s) to "
            << cfg.output << "\n";
  return 0;
}

struct ReproduceConfig {
  std::string input;
  std::string output;
  std::string report;
  std::string demo_path;
  double dt = 0.01;
  double duration = 0.0;  // 0: model tau
  double switch_at = -1.0;
  std::string new_goal;
  double alpha_g = 0.0;  // 0: model value
};

spdmp::SpdMatrix resolve_new_goal(const std::string& spec,
                                  const spdmp::SpdDmpModel& model) {
  const std::string prefix = "rotate:";
  if (spec.rfind(prefix, 0) == 0) {
    double degrees = 0.0;
    try {
      degrees = std::stod(spec.substr(prefix.size()));
    } catch (const std::exception&) {
      throw spdmp::InvalidParameter("--new-goal: cannot parse \"" + spec +
                                    "\"");
    }
    const double theta = degrees * kPi / 180.0;
    // Rotation in the leading coordinate plane.
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(model.dim, model.dim);
    r(0, 0) = std::cos(theta);
    r(0, 1) = -std::sin(theta);
    r(1, 0) = std::sin(theta);
    r(1, 1) = std::cos(theta);
    return spdmp::SpdMatrix(r.transpose() * model.goal.mat() * r);
  }
  return spdmp::load_matrix(spec);
}

int run_reproduce(const ReproduceConfig& cfg) {
  const spdmp::SpdDmpModel model = spdmp::load_model(cfg.input);
  const double duration =
      cfg.duration > 0.0 ? cfg.duration : model.canonical.tau;

  std::optional<spdmp::GoalSwitch> goal_switch;
  if (cfg.switch_at >= 0.0) {
    if (cfg.new_goal.empty()) {
      throw spdmp::InvalidParameter("--switch-at requires --new-goal");
    }
    const double alpha_g = cfg.alpha_g > 0.0 ? cfg.alpha_g : model.alpha_g;
    goal_switch = spdmp::GoalSwitch{cfg.switch_at * duration,
                                    resolve_new_goal(cfg.new_goal, model),
                                    alpha_g};
  }

  const std::vector<spdmp::TrajectorySample> trajectory = spdmp::reproduce(
      model, model.start, model.goal, cfg.dt, duration, goal_switch);
  spdmp::save_trajectory(cfg.output, trajectory);

  std::optional<spdmp::SpdDemonstration> demo;
  if (!cfg.demo_path.empty()) {
    demo = spdmp::load_demonstration(cfg.demo_path);
  }

  const std::string report_path =
      cfg.report.empty() ? derive_path(cfg.output, "_report.csv") : cfg.report;
  std::ofstream out = open_out(report_path);
  out << "t";
  if (demo) out << ",d_le_demo,d_jbld_demo";
  if (goal_switch) out << ",d_le_newgoal,d_jbld_newgoal";
  out << "\n";
  for (size_t k = 0; k < trajectory.size(); ++k) {
    const spdmp::TrajectorySample& sample = trajectory[k];
    out << fmt(sample.t);
    if (demo) {
      const bool before_switch =
          !goal_switch || sample.t < goal_switch->t_switch;
      if (before_switch && k < static_cast<size_t>(demo->length())) {
        out << ","
            << fmt(spdmp::log_euclidean_dist(sample.point, demo->points()[k]))
            << "," << fmt(spdmp::jbld_dist(sample.point, demo->points()[k]));
      } else {
        out << ",,";
      }
    }
    if (goal_switch) {
      if (sample.t >= goal_switch->t_switch) {
        out << ","
            << fmt(spdmp::log_euclidean_dist(sample.point,
                                             goal_switch->new_goal))
            << ","
            << fmt(spdmp::jbld_dist(sample.point, goal_switch->new_goal));
      } else {
        out << ",,";
      }
    }
    out << "\n";
  }
  std::cout << "wrote " << trajectory.size() << " samples to " << cfg.output
            << " and report to " << report_path << "\n";
  return 0;
}

struct DistConfig {
  std::string file_a;
  std::string file_b;
  std::string metric = "log-euclidean";
  std::string output;
};

int run_dist(const DistConfig& cfg) {
  const std::vector<spdmp::TrajectorySample> series_a =
      spdmp::load_trajectory(cfg.file_a);
  const std::vector<spdmp::TrajectorySample> series_b =
      spdmp::load_trajectory(cfg.file_b);
  if (series_a.size() != series_b.size()) {
    throw spdmp::DimensionMismatch(
        "dist: trajectories have different lengths (" +
        std::to_string(series_a.size()) + " vs " +
        std::to_string(series_b.size()) + ")");
  }
  const bool jbld = cfg.metric == "jbld";

  std::ofstream file;
  if (!cfg.output.empty()) file = open_out(cfg.output);
  std::ostream& out = cfg.output.empty() ? std::cout : file;
  out << "t,dist\n";
  for (size_t k = 0; k < series_a.size(); ++k) {
    const double d =
        jbld ? spdmp::jbld_dist(series_a[k].point, series_b[k].point)
             : spdmp::log_euclidean_dist(series_a[k].point, series_b[k].point);
    out << fmt(series_a[k].t) << "," << fmt(d) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn and reproduce SPD matrix trajectories (stiffness "
               "profiles) with movement primitives on the SPD manifold"};
  app.require_subcommand(1);
  int seed = 0;
  app.add_option("--seed", seed,
                 "Seed for randomized test data (reserved; all built-in "
                 "commands are deterministic)");

  GenDemoConfig gen_cfg;
  CLI::App* gen = app.add_subcommand(
      "gen-demo", "Generate a rotating-stiffness demonstration (JSON + CSV)");
  gen->add_option("--output", gen_cfg.output, "Demonstration JSON path")
      ->required();
  gen->add_option("--csv", gen_cfg.csv,
                  "Context CSV path (default: output with .csv)");
  gen->add_option("--duration", gen_cfg.duration, "Movement duration [s]")
      ->check(CLI::PositiveNumber);
  gen->add_option("--dt", gen_cfg.dt, "Sample spacing [s]")
      ->check(CLI::PositiveNumber);
  gen->add_option("--theta-end", gen_cfg.theta_end_deg,
                  "Final ellipsoid rotation [deg]");

  TrainConfig train_cfg;
  CLI::App* train = app.add_subcommand(
      "train", "Train a model on a demonstration file");
  train->add_option("--input", train_cfg.input, "Demonstration JSON path")
      ->required()
      ->check(CLI::ExistingFile);
  train->add_option("--output", train_cfg.output, "Model JSON path")
      ->required();
  train->add_option("--basis", train_cfg.params.basis_count,
                    "Number of basis functions")
      ->check(CLI::Range(2, 1000));
  double train_alpha_z = 0.0;
  train->add_option("--alpha-z", train_alpha_z,
                    "Attractor gain (beta_z = alpha_z/4)")
      ->check(CLI::PositiveNumber);
  train->add_option("--alpha-x", train_cfg.params.alpha_x, "Phase decay rate")
      ->check(CLI::PositiveNumber);
  train->add_option("--alpha-g", train_cfg.params.alpha_g,
                    "Goal switching rate stored in the model")
      ->check(CLI::PositiveNumber);

  ReproduceConfig rep_cfg;
  CLI::App* rep = app.add_subcommand(
      "reproduce", "Roll out a trained model, optionally switching the goal");
  rep->add_option("--input", rep_cfg.input, "Model JSON path")
      ->required()
      ->check(CLI::ExistingFile);
  rep->add_option("--output", rep_cfg.output, "Trajectory JSON path")
      ->required();
  rep->add_option("--report", rep_cfg.report,
                  "Distance report CSV (default: output with _report.csv)");
  rep->add_option("--demo", rep_cfg.demo_path,
                  "Demonstration to compare against in the report")
      ->check(CLI::ExistingFile);
  rep->add_option("--dt", rep_cfg.dt, "Integration step [s]")
      ->check(CLI::PositiveNumber);
  rep->add_option("--duration", rep_cfg.duration,
                  "Rollout horizon [s] (default: model tau)")
      ->check(CLI::PositiveNumber);
  CLI::Option* switch_at_opt =
      rep->add_option("--switch-at", rep_cfg.switch_at,
                      "Goal switch time as a fraction of the duration")
          ->check(CLI::Range(0.0, 1.0));
  CLI::Option* new_goal_opt =
      rep->add_option("--new-goal", rep_cfg.new_goal,
                      "New goal: matrix JSON path or rotate:<degrees>");
  switch_at_opt->needs(new_goal_opt);
  new_goal_opt->needs(switch_at_opt);
  rep->add_option("--alpha-g", rep_cfg.alpha_g,
                  "Goal switching rate (default: model value)")
      ->check(CLI::PositiveNumber);

  DistConfig dist_cfg;
  CLI::App* dist = app.add_subcommand(
      "dist", "Per-sample distance between two SPD trajectory files");
  dist->add_option("fileA", dist_cfg.file_a, "First trajectory")
      ->required()
      ->check(CLI::ExistingFile);
  dist->add_option("fileB", dist_cfg.file_b, "Second trajectory")
      ->required()
      ->check(CLI::ExistingFile);
  dist->add_option("--metric", dist_cfg.metric, "log-euclidean or jbld")
      ->check(CLI::IsMember({"log-euclidean", "jbld"}));
  dist->add_option("--output", dist_cfg.output, "CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen_demo(gen_cfg);
    if (train->parsed()) {
      if (train_alpha_z > 0.0) {
        train_cfg.params.gains =
            spdmp::DmpGains{train_alpha_z, train_alpha_z / 4.0};
      }
      return run_train(train_cfg);
    }
    if (rep->parsed()) return run_reproduce(rep_cfg);
    if (dist->parsed()) return run_dist(dist_cfg);
  } catch (const spdmp::DefinitenessError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const spdmp::DegenerateActivation& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const spdmp::RankDeficiency& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const spdmp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
