// Command-line front end: scenario runs, delay sweeps, model inspection and a
// quick invariant self-test. Exit codes: 0 success, 2 configuration error,
// 3 numerical/synthesis failure, 4 divergence.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dip/bat.hpp"
#include "dip/config.hpp"
#include "dip/control.hpp"
#include "dip/delay.hpp"
#include "dip/dynamics.hpp"
#include "dip/errors.hpp"
#include "dip/linearization.hpp"
#include "dip/scenario.hpp"
#include "dip/sim.hpp"

namespace {

void print_matrix(const char* name, const Eigen::MatrixXd& m) {
  std::printf("%s =\n", name);
  for (int r = 0; r < m.rows(); ++r) {
    std::printf(" ");
    for (int c = 0; c < m.cols(); ++c) std::printf(" %14.8g", m(r, c));
    std::printf("\n");
  }
}

std::vector<std::pair<std::string, double>> parse_delay_list(const std::string& spec) {
  std::vector<std::pair<std::string, double>> out;
  std::string token;
  std::stringstream ss(spec);
  while (std::getline(ss, token, ',')) {
    if (token.empty()) throw dip::ConfigError("--delays: empty entry in '" + spec + "'");
    size_t consumed = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &consumed);
    } catch (const std::exception&) {
      throw dip::ConfigError("--delays: cannot parse '" + token + "'");
    }
    if (consumed != token.size() || !(value >= 0.0))
      throw dip::ConfigError("--delays: cannot parse '" + token + "'");
    out.emplace_back(token, value);
  }
  if (out.empty()) throw dip::ConfigError("--delays: list is empty");
  return out;
}

void print_report(const dip::ScenarioReport& report, const std::filesystem::path& out_dir) {
  std::printf("scenario        %s\n", report.label.c_str());
  std::printf("delay           %g s\n", report.delay);
  std::printf("best zeta       %.6f\n", report.best.zeta);
  std::printf("best omega_n    %.6f rad/s\n", report.best.omega_n);
  std::printf("best fitness    %.8g\n", report.optimization.best_fitness);
  std::printf("evaluations     %ld\n", report.optimization.evaluations);
  std::printf("closed loop     %s (abscissa %.6g 1/s)\n", report.stable ? "stable" : "UNSTABLE",
              report.closed_loop_abscissa);
  std::printf("undelayed loop  abscissa %.6g 1/s\n", report.undelayed_abscissa);
  if (report.nonlinear_settling_time_s.has_value())
    std::printf("nonlinear 2%% settling  %.3f s\n", *report.nonlinear_settling_time_s);
  else
    std::printf("nonlinear 2%% settling  not settled within horizon\n");
  std::printf("optimizer wall  %.3f s\n", report.optimization.wall_time_s);
  std::printf("total wall      %.3f s\n", report.wall_time_s);
  std::printf("outputs         %s\n", (out_dir / report.label).string().c_str());
}

int cmd_run(const std::string& config_path, bool seed_set, std::uint64_t seed,
            const std::string& out_dir) {
  dip::Scenario scenario = dip::scenario_from_config(config_path);
  if (seed_set) scenario.bat.seed = seed;
  const dip::ScenarioReport report = dip::run_scenario(scenario, out_dir);
  print_report(report, out_dir);
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& delays, bool seed_set,
              std::uint64_t seed, const std::string& out_dir) {
  dip::Scenario base = dip::scenario_from_config(config_path);
  if (seed_set) base.bat.seed = seed;

  std::vector<dip::Scenario> scenarios;
  for (const auto& [token, value] : parse_delay_list(delays)) {
    dip::Scenario s = base;
    s.label = "delay_" + token;
    s.delay = value;
    scenarios.push_back(std::move(s));
  }

  const auto rows = dip::run_sweep(scenarios, out_dir);
  std::printf("%-12s %10s %12s %10s %10s %14s %8s\n", "label", "delay_s", "wall_time_s", "zeta",
              "omega_n", "best_fitness", "stable");
  for (const auto& row : rows) {
    std::printf("%-12s %10g %12.3f %10.4f %10.4f %14.6g %8s\n", row.label.c_str(), row.delay,
                row.wall_time_s, row.zeta, row.omega_n, row.best_fitness, row.stable.c_str());
    if (!row.error.empty()) std::fprintf(stderr, "error in %s: %s\n", row.label.c_str(), row.error.c_str());
  }
  std::printf("summary: %s\n", (std::filesystem::path(out_dir) / "sweep_summary.csv").string().c_str());
  return 0;
}

int cmd_linearize(const std::string& config_path) {
  const dip::Scenario scenario = dip::scenario_from_config(config_path);
  const dip::StateSpaceModel model = dip::paper_linear_model(scenario.params);
  print_matrix("A", model.A);
  print_matrix("B", model.B);
  if (scenario.delay > 0.0) {
    const dip::StateSpaceModel aug = dip::pade_augment(model, dip::DelaySpec{scenario.delay});
    std::printf("\nwith delay %g s:\n", scenario.delay);
    print_matrix("A", aug.A);
    print_matrix("B", aug.B);
  }
  return 0;
}

int cmd_selftest() {
  int failures = 0;
  auto check = [&failures](const char* name, bool ok, double value) {
    std::printf("[%s] %-42s %.4g\n", ok ? "PASS" : "FAIL", name, value);
    if (!ok) ++failures;
  };

  const dip::PhysicalParams params;

  {  // equilibria: derivative vanishes at every hang/upright combination
    double worst = 0.0;
    for (double th1 : {0.0, std::acos(-1.0)}) {
      for (double th2 : {0.0, std::acos(-1.0)}) {
        dip::PlantState s;
        s.lower_angle = th1;
        s.upper_angle = th2;
        worst = std::max(worst,
                         dip::nonlinear_derivative(params, s, {}).cwiseAbs().maxCoeff());
      }
    }
    check("equilibrium derivative residual", worst <= 1e-12, worst);
  }

  {  // frictionless energy conservation over 10 s
    dip::PhysicalParams frictionless = params;
    frictionless.cart_friction = 0.0;
    dip::SimConfig sim;
    sim.dt = 1e-4;
    sim.horizon = 10.0;
    sim.initial_state = Eigen::VectorXd::Zero(6);
    sim.initial_state[1] = 3.0 * std::acos(-1.0) / 180.0;
    dip::GainVector zero_gain;
    zero_gain.k = Eigen::RowVectorXd::Zero(6);
    const dip::Trajectory traj = dip::integrate_nonlinear(frictionless, zero_gain, sim);
    const dip::PlantState s0 = dip::PlantState::from_vector(traj.states.row(0));
    const double e0 = dip::kinetic_energy(frictionless, s0) + dip::potential_energy(frictionless, s0);
    double drift = 0.0;
    for (int k = 0; k < traj.samples(); k += 100) {
      const dip::PlantState s = dip::PlantState::from_vector(traj.states.row(k));
      const double e = dip::kinetic_energy(frictionless, s) + dip::potential_energy(frictionless, s);
      drift = std::max(drift, std::abs(e - e0) / std::abs(e0));
    }
    check("energy drift (10 s, dt=1e-4)", drift < 1e-6, drift);
  }

  {  // first-order delay approximant is all-pass
    double worst = 0.0;
    for (double delay : {0.02, 0.2, 2.0})
      for (double exponent = -3.0; exponent <= 3.0; exponent += 0.25)
        worst = std::max(worst,
                         std::abs(std::abs(dip::pade_response(delay, std::pow(10.0, exponent))) - 1.0));
    check("all-pass magnitude error", worst < 1e-12, worst);
  }

  {  // augmentation only adds the lag pole
    const dip::StateSpaceModel plant = dip::paper_linear_model(params);
    const dip::StateSpaceModel aug = dip::pade_augment(plant, dip::DelaySpec{0.2});
    Eigen::VectorXcd e7 = Eigen::EigenSolver<Eigen::MatrixXd>(aug.A).eigenvalues();
    Eigen::VectorXcd e6 = Eigen::EigenSolver<Eigen::MatrixXd>(plant.A).eigenvalues();
    std::vector<std::complex<double>> expected(e6.data(), e6.data() + e6.size());
    expected.push_back({-2.0 / 0.2, 0.0});
    double worst = 0.0;
    for (int i = 0; i < e7.size(); ++i) {
      double nearest = 1e300;
      for (const auto& w : expected) nearest = std::min(nearest, std::abs(e7[i] - w));
      worst = std::max(worst, nearest);
    }
    check("delay augmentation eigenvalue union", worst < 1e-8, worst);
  }

  {  // closed-form coefficients on the unit-product parameter set
    dip::PhysicalParams unit;
    unit.cart_mass = unit.link1_mass = unit.link2_mass = 1.0;
    unit.link1_length = unit.link2_length = 1.0;
    unit.link1_com = unit.link2_com = 0.5;
    unit.gravity = 10.0;
    unit.cart_friction = 0.0;
    const dip::PCoefficients c = dip::p_coefficients(unit);
    const dip::StateSpaceModel m = dip::paper_linear_model(unit);
    const bool ok = std::abs(c.p1 - 3) < 1e-12 && std::abs(c.p2 - 1) < 1e-12 &&
                    std::abs(c.p3 - 2) < 1e-12 && std::abs(c.p4 - 5) < 1e-12 &&
                    std::abs(c.p5 - 1) < 1e-12 && std::abs(c.den - 1) < 1e-12 &&
                    std::abs(m.A(3, 1) + 30.0) < 1e-12;
    check("closed-form coefficient arithmetic", ok, m.A(3, 1));
  }

  {  // pole placement round-trip on seeded random systems
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> re(-2.5, -0.3), im(0.2, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 6);
      dip::StateSpaceModel m;
      m.A.setZero(n, n);
      m.B.setZero(n, 1);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) m.A(r, c) = unit(rng);
        m.B(r, 0) = unit(rng);
      }
      m.C = Eigen::MatrixXd::Identity(n, n);
      m.D = Eigen::MatrixXd::Zero(n, 1);
      std::vector<std::complex<double>> poles;
      while (static_cast<int>(poles.size()) < n) {
        if (n - static_cast<int>(poles.size()) >= 2 && unit(rng) > 0.0) {
          const std::complex<double> p(re(rng), im(rng));
          poles.push_back(p);
          poles.push_back(std::conj(p));
        } else {
          poles.emplace_back(re(rng), 0.0);
        }
      }
      const dip::GainVector k = dip::place_poles(m, poles);
      const Eigen::VectorXcd achieved =
          Eigen::EigenSolver<Eigen::MatrixXd>(m.A - m.B * k.k).eigenvalues();
      for (const auto& p : poles) {
        double nearest = 1e300;
        for (int i = 0; i < achieved.size(); ++i) nearest = std::min(nearest, std::abs(achieved[i] - p));
        worst = std::max(worst, nearest / std::max(1.0, std::abs(p)));
      }
    }
    check("pole placement round-trip error", worst < 1e-6, worst);
  }

  {  // seeded optimizer determinism on the sphere
    dip::SearchBounds bounds;
    bounds.lower = Eigen::Vector2d(-5.0, -5.0);
    bounds.upper = Eigen::Vector2d(5.0, 5.0);
    dip::BatConfig config;
    config.population_size = 10;
    config.generations = 8;
    config.seed = 3;
    auto sphere = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
    const auto a = dip::optimize(sphere, bounds, config);
    const auto b = dip::optimize(sphere, bounds, config);
    bool same = a.best_fitness == b.best_fitness && a.best_point == b.best_point &&
                a.fitness_history == b.fitness_history && a.evaluations == b.evaluations;
    bool monotone = true;
    for (size_t g = 1; g < a.fitness_history.size(); ++g)
      if (a.fitness_history[g] > a.fitness_history[g - 1]) monotone = false;
    check("optimizer determinism + monotone history", same && monotone, a.best_fitness);
  }

  std::printf("%s (%d failure%s)\n", failures == 0 ? "selftest passed" : "selftest FAILED",
              failures, failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double inverted pendulum workbench: delay-aware controller tuning"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", delays;
  std::uint64_t seed = 0;

  CLI::App* run = app.add_subcommand("run", "run one scenario from a config file");
  run->add_option("--config", config_path, "key = value config file")->required();
  CLI::Option* run_seed = run->add_option("--seed", seed, "override bat.seed");
  run->add_option("--out", out_dir, "output directory (default: out)");

  CLI::App* sweep = app.add_subcommand("sweep", "run the scenario across several delays");
  sweep->add_option("--config", config_path, "key = value config file")->required();
  sweep->add_option("--delays", delays, "comma-separated delay list, e.g. 0.02,0.2,2.0")->required();
  CLI::Option* sweep_seed = sweep->add_option("--seed", seed, "override bat.seed");
  sweep->add_option("--out", out_dir, "output directory (default: out)");

  CLI::App* linearize = app.add_subcommand("linearize", "print the small-signal A and B matrices");
  linearize->add_option("--config", config_path, "key = value config file")->required();

  app.add_subcommand("selftest", "run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // bad usage is a configuration error
  }

  try {
    if (app.got_subcommand("run"))
      return cmd_run(config_path, run_seed->count() > 0, seed, out_dir);
    if (app.got_subcommand("sweep"))
      return cmd_sweep(config_path, delays, sweep_seed->count() > 0, seed, out_dir);
    if (app.got_subcommand("linearize")) return cmd_linearize(config_path);
    if (app.got_subcommand("selftest")) return cmd_selftest();
  } catch (const dip::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const dip::DivergenceError& e) {
    std::fprintf(stderr, "divergence: %s\n", e.what());
    return 4;
  } catch (const dip::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
