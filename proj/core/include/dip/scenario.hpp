#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dip/bat.hpp"
#include "dip/control.hpp"
#include "dip/dynamics.hpp"
#include "dip/sim.hpp"

namespace dip {

/// One experiment: a plant, a delay, a search box and an optimizer budget.
struct Scenario {
  std::string label = "scenario";
  double delay = 0.0;  // s; 0 = undelayed plant
  PhysicalParams params;
  SearchBounds bounds;  // (zeta, omega_n)
  BatConfig bat;
  SimConfig sim;
  FitnessWeights weights;

  static Scenario defaults();
  void validate() const;
};

/// Plant + design models for a scenario. `design` is the 7-state augmented
/// model when the scenario carries a delay, otherwise the plant itself.
struct ScenarioModels {
  StateSpaceModel plant;   // 6-state closed-form small-signal model
  StateSpaceModel design;  // 6- or 7-state
  bool delayed = false;
};

ScenarioModels build_models(const Scenario& scenario);

/// The optimizer's fitness: place poles for (zeta, omega_n) on the design
/// model, wire the loop (delayed measurement when augmented), and integrate.
/// Unstable loops return the penalty 1e9 + spectral abscissa; synthesis
/// failures return +infinity.
Objective make_objective(const Scenario& scenario, const ScenarioModels& models);

struct ScenarioReport {
  std::string label;
  double delay = 0.0;
  ControllerSpec best;
  OptimizationResult optimization;
  double closed_loop_abscissa = 0.0;  // delayed loop when delay > 0
  double undelayed_abscissa = 0.0;
  bool stable = false;
  std::optional<double> nonlinear_settling_time_s;
  double paper_vs_jacobian_max_rel_diff = 0.0;
  double wall_time_s = 0.0;                       // whole scenario
  std::vector<std::filesystem::path> files;       // everything written
};

/// Runs the full pipeline and writes trajectory/convergence CSVs plus
/// report.json under out_dir/<label>/. Errors are rethrown with the scenario
/// label attached.
ScenarioReport run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir);

struct SweepRow {
  std::string label;
  double delay = 0.0;
  double wall_time_s = 0.0;
  double zeta = 0.0;
  double omega_n = 0.0;
  double best_fitness = 0.0;
  std::string stable;  // "true" / "false" / "error"
  std::string error;   // empty on success
};

/// Runs every scenario (failures are recorded and do not stop the sweep) and
/// writes out_dir/sweep_summary.csv. Throws ConfigError for an empty list or
/// duplicate labels before anything runs.
std::vector<SweepRow> run_sweep(const std::vector<Scenario>& scenarios,
                                const std::filesystem::path& out_dir);

}  // namespace dip
