#include "dip/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>

#include <nlohmann/json.hpp>

#include "dip/delay.hpp"
#include "dip/errors.hpp"
#include "dip/linearization.hpp"

namespace dip {

namespace {

constexpr double kUnstablePenalty = 1e9;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Eigen::VectorXd extend_initial_state(const Eigen::VectorXd& x0, int order) {
  if (x0.size() == order) return x0;
  if (x0.size() == 6 && order == 7) {
    Eigen::VectorXd out(7);
    out.head(6) = x0;
    out[6] = 2.0 * x0[0];  // lag steady state: no measurement transient at t = 0
    return out;
  }
  throw ConfigError("initial state dimension does not match the model order");
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  const bool has_x7 = traj.states.cols() == 7;
  out << "t,x_c,theta1,theta2,xdot_c,theta1dot,theta2dot" << (has_x7 ? ",x7" : "") << ",u\n";
  for (int k = 0; k < traj.samples(); ++k) {
    out << format_double(traj.times[k]);
    for (int c = 0; c < traj.states.cols(); ++c) out << ',' << format_double(traj.states(k, c));
    out << ',' << format_double(traj.inputs[k]) << '\n';
  }
}

void write_convergence_csv(const std::filesystem::path& path, const std::vector<double>& history) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "generation,best_fitness\n";
  for (size_t g = 0; g < history.size(); ++g)
    out << (g + 1) << ',' << format_double(history[g]) << '\n';
}

// Informational: how far the closed-form model sits from the measured
// small-signal model at the upright equilibrium.
double paper_vs_jacobian_discrepancy(const StateSpaceModel& plant, const StateSpaceModel& measured) {
  const double rel_a =
      (plant.A - measured.A).cwiseAbs().maxCoeff() / measured.A.cwiseAbs().maxCoeff();
  const double rel_b = (plant.B - measured.B).cwiseAbs().maxCoeff() /
                       std::max(measured.B.cwiseAbs().maxCoeff(), 1e-300);
  return std::max(rel_a, rel_b);
}

template <typename Error>
[[noreturn]] void rethrow_labeled(const std::string& label, const Error& e) {
  throw Error("scenario '" + label + "': " + e.what());
}

ScenarioReport run_scenario_impl(const Scenario& scenario, const std::filesystem::path& out_dir) {
  scenario.validate();
  const auto t_start = std::chrono::steady_clock::now();

  const ScenarioModels models = build_models(scenario);
  const Objective objective = make_objective(scenario, models);

  ScenarioReport report;
  report.label = scenario.label;
  report.delay = scenario.delay;
  report.optimization = optimize(objective, scenario.bounds, scenario.bat);
  report.best = ControllerSpec{report.optimization.best_point[0], report.optimization.best_point[1]};

  // Synthesis at the optimum: the operative (possibly delayed) loop plus the
  // undelayed design at the same point for side-by-side trajectories.
  const GainVector k_design =
      place_poles(models.design, poles_from_spec(report.best, models.design.order()));
  const StateSpaceModel loop_design = closed_loop(models.design, k_design, models.delayed);
  report.closed_loop_abscissa = spectral_abscissa(loop_design.A);
  report.stable = report.closed_loop_abscissa < 0.0;

  const GainVector k_plant = models.delayed
                                 ? place_poles(models.plant, poles_from_spec(report.best, 6))
                                 : k_design;
  const StateSpaceModel loop_plant = closed_loop(models.plant, k_plant, false);
  report.undelayed_abscissa = spectral_abscissa(loop_plant.A);

  const Trajectory traj_undelayed = integrate_linear(loop_plant, scenario.sim, &k_plant);
  Trajectory traj_delayed;
  if (models.delayed) {
    SimConfig sim_delayed = scenario.sim;
    sim_delayed.initial_state = extend_initial_state(scenario.sim.initial_state, 7);
    const GainVector wired = effective_gain(k_design, true);
    traj_delayed = integrate_linear(loop_design, sim_delayed, &wired);
  } else {
    traj_delayed = traj_undelayed;
  }

  // Nonlinear validation: realize the same (zeta, omega_n) design against the
  // measured small-signal model. The closed-form model disagrees with the
  // measured one, so a gain placed on it carries no local stability guarantee
  // for the plant the nonlinear simulator actually integrates.
  const StateSpaceModel measured = jacobian_linear_model(scenario.params);
  const GainVector k_validation = place_poles(measured, poles_from_spec(report.best, 6));
  const Trajectory traj_nonlinear = integrate_nonlinear(scenario.params, k_validation, scenario.sim);
  report.nonlinear_settling_time_s = settling_time(traj_nonlinear, 0.02);
  report.paper_vs_jacobian_max_rel_diff = paper_vs_jacobian_discrepancy(models.plant, measured);

  const std::filesystem::path dir = out_dir / scenario.label;
  std::filesystem::create_directories(dir);
  write_trajectory_csv(dir / "trajectory_undelayed.csv", traj_undelayed);
  write_trajectory_csv(dir / "trajectory_delayed.csv", traj_delayed);
  write_trajectory_csv(dir / "trajectory_nonlinear.csv", traj_nonlinear);
  write_convergence_csv(dir / "convergence.csv", report.optimization.fitness_history);
  report.files = {dir / "trajectory_undelayed.csv", dir / "trajectory_delayed.csv",
                  dir / "trajectory_nonlinear.csv", dir / "convergence.csv",
                  dir / "report.json"};

  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  nlohmann::json j;
  j["label"] = scenario.label;
  j["delay_s"] = scenario.delay;
  j["best"] = {{"zeta", report.best.zeta}, {"omega_n", report.best.omega_n}};
  j["best_fitness"] = report.optimization.best_fitness;
  j["optimizer"] = {{"evaluations", report.optimization.evaluations},
                    {"wall_time_s", report.optimization.wall_time_s},
                    {"population_size", scenario.bat.population_size},
                    {"generations", scenario.bat.generations},
                    {"loudness", scenario.bat.loudness},
                    {"pulse_rate", scenario.bat.pulse_rate},
                    {"freq_min", scenario.bat.freq_min},
                    {"freq_max", scenario.bat.freq_max},
                    {"loudness_decay", scenario.bat.loudness_decay},
                    {"pulse_growth", scenario.bat.pulse_growth},
                    {"seed", scenario.bat.seed}};
  j["fitness_weights"] = {{"cart", scenario.weights.cart},
                          {"theta1", scenario.weights.lower},
                          {"theta2", scenario.weights.upper}};
  j["sim"] = {{"dt", scenario.sim.dt},
              {"horizon_s", scenario.sim.horizon},
              {"reference_m", scenario.sim.reference},
              {"initial_state", std::vector<double>(scenario.sim.initial_state.begin(),
                                                    scenario.sim.initial_state.end())}};
  j["stability"] = {{"closed_loop_abscissa", report.closed_loop_abscissa},
                    {"stable", report.stable},
                    {"undelayed_abscissa", report.undelayed_abscissa}};
  auto gain_to_json = [](const GainVector& g) {
    return std::vector<double>(g.k.begin(), g.k.end());
  };
  j["gains"] = {{"design", gain_to_json(k_design)},
                {"undelayed", gain_to_json(k_plant)},
                {"nonlinear_validation", gain_to_json(k_validation)}};
  if (report.nonlinear_settling_time_s.has_value())
    j["nonlinear_settling_time_s"] = *report.nonlinear_settling_time_s;
  else
    j["nonlinear_settling_time_s"] = nullptr;
  j["linearization"] = {
      {"paper_vs_jacobian_max_rel_diff", report.paper_vs_jacobian_max_rel_diff}};
  j["wall_time_s"] = report.wall_time_s;
  std::vector<std::string> names;
  for (const auto& f : report.files) names.push_back(f.filename().string());
  j["files"] = names;

  std::ofstream out(dir / "report.json", std::ios::binary);
  if (!out) throw ConfigError("cannot write " + (dir / "report.json").string());
  out << j.dump(2) << '\n';

  return report;
}

}  // namespace

Scenario Scenario::defaults() {
  Scenario s;
  s.bounds.lower = Eigen::Vector2d(0.01, 0.1);
  s.bounds.upper = Eigen::Vector2d(1.5, 5.0);
  s.sim.initial_state = Eigen::VectorXd::Zero(6);
  s.sim.initial_state[1] = 3.0 * std::numbers::pi / 180.0;  // 3 degrees on the lower link
  return s;
}

void Scenario::validate() const {
  if (label.empty()) throw ConfigError("scenario.label must not be empty");
  if (label.find('/') != std::string::npos || label.find('\\') != std::string::npos)
    throw ConfigError("scenario.label must not contain path separators");
  if (!(delay >= 0.0)) throw ConfigError("scenario.delay must be non-negative");
  params.validate();
  bat.validate();
  if (bounds.dim() != 2) throw ConfigError("bounds must cover exactly (zeta, omega_n)");
  if (!(bounds.lower[0] < bounds.upper[0]))
    throw ConfigError("bounds.zeta_min must be strictly below bounds.zeta_max");
  if (!(bounds.lower[1] < bounds.upper[1]))
    throw ConfigError("bounds.omega_min must be strictly below bounds.omega_max");
  if (!(bounds.lower[0] > 0.0)) throw ConfigError("bounds.zeta_min must be positive");
  if (!(bounds.lower[1] > 0.0)) throw ConfigError("bounds.omega_min must be positive");
  sim.validate();
  if (sim.initial_state.size() != 6)
    throw ConfigError("sim initial state must have 6 entries (plant coordinates)");
  if (!(weights.cart >= 0.0) || !(weights.lower >= 0.0) || !(weights.upper >= 0.0))
    throw ConfigError("fitness weights must be non-negative");
}

ScenarioModels build_models(const Scenario& scenario) {
  ScenarioModels models;
  models.plant = paper_linear_model(scenario.params);
  if (scenario.delay > 0.0) {
    models.design = pade_augment(models.plant, DelaySpec{scenario.delay});
    models.delayed = true;
  } else {
    models.design = models.plant;
    models.delayed = false;
  }
  return models;
}

Objective make_objective(const Scenario& scenario, const ScenarioModels& models) {
  const SimConfig sim = [&] {
    SimConfig s = scenario.sim;
    s.initial_state = extend_initial_state(scenario.sim.initial_state, models.design.order());
    return s;
  }();
  const double reference = scenario.sim.reference;
  const FitnessWeights weights = scenario.weights;
  const StateSpaceModel design = models.design;
  const bool delayed = models.delayed;

  return [design, delayed, sim, reference, weights](const Eigen::VectorXd& point) -> double {
    try {
      const ControllerSpec spec{point[0], point[1]};
      const GainVector gain = place_poles(design, poles_from_spec(spec, design.order()));
      const StateSpaceModel loop = closed_loop(design, gain, delayed);
      const double abscissa = spectral_abscissa(loop.A);
      if (abscissa >= 0.0) return kUnstablePenalty + abscissa;
      const Trajectory traj = integrate_linear(loop, sim);
      return ise_fitness(traj, reference, weights);
    } catch (const DivergenceError&) {
      return kUnstablePenalty;
    } catch (const NumericalError&) {
      return std::numeric_limits<double>::infinity();
    } catch (const ConfigError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
}

ScenarioReport run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir) {
  try {
    return run_scenario_impl(scenario, out_dir);
  } catch (const ConfigError& e) {
    rethrow_labeled(scenario.label, e);
  } catch (const NumericalError& e) {
    rethrow_labeled(scenario.label, e);
  } catch (const DivergenceError& e) {
    throw DivergenceError("scenario '" + scenario.label + "': " + e.what(), e.time());
  }
}

std::vector<SweepRow> run_sweep(const std::vector<Scenario>& scenarios,
                                const std::filesystem::path& out_dir) {
  if (scenarios.empty()) throw ConfigError("sweep: scenario list is empty");
  std::set<std::string> labels;
  for (const auto& s : scenarios)
    if (!labels.insert(s.label).second)
      throw ConfigError("sweep: duplicate scenario label '" + s.label + "'");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<SweepRow> rows;
  rows.reserve(scenarios.size());
  for (const auto& scenario : scenarios) {
    SweepRow row;
    row.label = scenario.label;
    row.delay = scenario.delay;
    try {
      const ScenarioReport report = run_scenario(scenario, out_dir);
      row.wall_time_s = report.optimization.wall_time_s;
      row.zeta = report.best.zeta;
      row.omega_n = report.best.omega_n;
      row.best_fitness = report.optimization.best_fitness;
      row.stable = report.stable ? "true" : "false";
    } catch (const std::exception& e) {
      row.wall_time_s = nan;
      row.zeta = nan;
      row.omega_n = nan;
      row.best_fitness = nan;
      row.stable = "error";
      row.error = e.what();
    }
    rows.push_back(row);
  }

  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir / "sweep_summary.csv", std::ios::binary);
  if (!out) throw ConfigError("cannot write " + (out_dir / "sweep_summary.csv").string());
  out << "label,delay_s,wall_time_s,zeta,omega_n,best_fitness,stable\n";
  for (const auto& row : rows) {
    out << row.label << ',' << format_double(row.delay) << ',' << format_double(row.wall_time_s)
        << ',' << format_double(row.zeta) << ',' << format_double(row.omega_n) << ','
        << format_double(row.best_fitness) << ',' << row.stable << '\n';
  }
  return rows;
}

}  // namespace dip
