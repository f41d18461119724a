// Command-line frontend for the N-photon fringe sensitivity library.
//
// Subcommands: sensitivity | fringe | contour | simulate | montecarlo.
// Tables are CSV with 15-significant-digit values; angles are radians unless
// --degrees is given. Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nphase/errors.hpp"
#include "nphase/fock.hpp"
#include "nphase/fringe.hpp"
#include "nphase/montecarlo.hpp"
#include "nphase/sensitivity.hpp"
#include "nphase/sweep.hpp"
#include "nphase/table.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

struct AngleUnit {
  bool degrees = false;

  double to_radians(double value) const { return degrees ? value * kPi / 180.0 : value; }
  double from_radians(double value) const { return degrees ? value * 180.0 / kPi : value; }
};

// CSV goes to `path` when given, otherwise to stdout. Report lines go to
// stdout, prefixed with "# " when they share the stream with CSV data.
struct CommandOutput {
  std::string path;

  bool csv_on_stdout() const { return path.empty(); }

  void write_table(const nphase::OutputTable& table) const {
    if (path.empty()) {
      table.write_csv(std::cout);
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      throw nphase::validation_error("cannot open output file: " + path);
    }
    table.write_csv(file);
    if (!file) {
      throw nphase::validation_error("failed while writing output file: " + path);
    }
  }

  void report_line(const std::string& key, const std::string& value, bool has_csv = true) const {
    if (has_csv && csv_on_stdout()) {
      std::cout << "# " << key << " = " << value << '\n';
    } else {
      std::cout << key << " = " << value << '\n';
    }
  }
};

std::pair<int, int> parse_occupation(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw nphase::validation_error("expected a pattern of the form n,m: " + text);
  }
  try {
    const int n = std::stoi(text.substr(0, comma));
    const int m = std::stoi(text.substr(comma + 1));
    return {n, m};
  } catch (const std::exception&) {
    throw nphase::validation_error("expected a pattern of the form n,m: " + text);
  }
}

struct SensitivityCmd {
  int n = 0;
  double eta = 0.0;
  double visibility = 0.0;
  double bias = 0.0;
  bool bias_given = false;
  AngleUnit unit;
  CommandOutput out;

  void run() const {
    nphase::FringeParams params{n, eta, visibility, unit.to_radians(bias)};
    const nphase::SensitivityReport report = nphase::sensitivity_report(params);

    const bool has_csv = false;
    if (bias_given) {
      out.report_line("S_at_bias", nphase::format_value(report.sensitivity_at_bias), has_csv);
    }
    out.report_line("sin_N_phi_opt", nphase::format_value(report.optimal_bias_sine), has_csv);
    out.report_line("phi_opt", nphase::format_value(unit.from_radians(report.optimal_bias)),
                    has_csv);
    out.report_line("S_max", nphase::format_value(report.max_sensitivity), has_csv);
    out.report_line("beats_SQL", report.beats_sql ? "yes" : "no", has_csv);
    out.report_line("heisenberg_ratio", nphase::format_value(report.heisenberg_ratio), has_csv);

    if (!out.path.empty()) {
      nphase::OutputTable table;
      table.header = {"n",        "eta",           "visibility", "bias",      "S_at_bias",
                      "sin_N_phi_opt", "phi_opt",  "S_max",      "beats_sql", "heisenberg_ratio"};
      table.append_row({static_cast<double>(n), eta, visibility,
                        unit.from_radians(params.bias), report.sensitivity_at_bias,
                        report.optimal_bias_sine, unit.from_radians(report.optimal_bias),
                        report.max_sensitivity, report.beats_sql ? 1.0 : 0.0,
                        report.heisenberg_ratio});
      out.write_table(table);
    }
  }
};

struct FringeCmd {
  int n = 0;
  double eta = 0.0;
  double visibility = 0.0;
  double bias = 0.0;
  std::optional<double> min;
  std::optional<double> max;
  std::optional<double> step;
  std::size_t points = 512;
  AngleUnit unit;
  CommandOutput out;

  void run() const {
    nphase::FringeParams params{n, eta, visibility, unit.to_radians(bias)};
    params.validate();
    if (params.efficiency <= 0.0) {
      throw nphase::validation_error("efficiency must be > 0");
    }

    const double period = 2.0 * kPi / n;
    const double lo = min ? unit.to_radians(*min) : 0.0;
    std::vector<double> grid;
    if (step) {
      const double hi = max ? unit.to_radians(*max) : lo + period;
      grid = nphase::axis_points({"bias", lo, hi, unit.to_radians(*step)});
    } else {
      // Default: one full 2*pi/N period, endpoint-open, `points` samples.
      if (points < 1) {
        throw nphase::validation_error("points must be >= 1");
      }
      const double hi = max ? unit.to_radians(*max) : lo + period;
      const double spacing = (hi - lo) / static_cast<double>(points);
      grid.reserve(points);
      for (std::size_t i = 0; i < points; ++i) {
        grid.push_back(lo + spacing * static_cast<double>(i));
      }
    }

    std::vector<double> prob(grid.size());
    std::vector<double> slope(grid.size());
    std::vector<double> sens(grid.size());
    nphase::for_each_index(static_cast<std::int64_t>(grid.size()), nphase::Exec::Parallel,
                           [&](std::int64_t i) {
                             const double phi = grid[static_cast<std::size_t>(i)];
                             nphase::FringeParams at = params;
                             at.bias = params.bias + phi;
                             prob[static_cast<std::size_t>(i)] =
                                 nphase::detection_probability(params, phi);
                             slope[static_cast<std::size_t>(i)] =
                                 nphase::probability_slope(params, phi);
                             sens[static_cast<std::size_t>(i)] = nphase::sensitivity(at);
                           });

    nphase::OutputTable table;
    table.header = {"phi", "p", "dp_dphi", "S"};
    table.rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      table.append_row({unit.from_radians(grid[i]), prob[i], slope[i], sens[i]});
    }
    out.write_table(table);
  }
};

struct ContourCmd {
  int n = 0;
  double step = 0.05;
  CommandOutput out;

  void run() const {
    nphase::SweepSpec spec;
    spec.base = nphase::FringeParams{n, 1.0, 1.0, 0.0};
    spec.axes = {{"visibility", step, 1.0, step}, {"efficiency", step, 1.0, step}};
    out.write_table(nphase::sensitivity_sweep(spec));
  }
};

struct SimulateCmd {
  std::string input = "2,2";
  std::vector<std::string> patterns;
  std::size_t points = 512;
  CommandOutput out;

  void run() const {
    const auto [in_n, in_m] = parse_occupation(input);
    const nphase::TwoModeFockState state = nphase::TwoModeFockState::basis(in_n, in_m);
    const int total = state.total_photons;
    if (total < 1) {
      throw nphase::validation_error("simulation needs at least one photon");
    }

    std::vector<nphase::DetectionPattern> selected;
    if (patterns.empty()) {
      // Paper-style default: both N-1/1 coincidence events; plain
      // single-mode detection for one photon.
      if (total == 1) {
        selected = {{1, 0}};
      } else {
        selected = {{total - 1, 1}, {1, total - 1}};
        if (selected[0] == selected[1]) {
          selected.pop_back();
        }
      }
    } else {
      for (const auto& text : patterns) {
        selected.push_back(parse_occupation(text));
      }
    }

    if (points < 16) {
      throw nphase::validation_error("points must be >= 16");
    }
    std::vector<double> grid;
    grid.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
      grid.push_back(2.0 * kPi * static_cast<double>(i) / static_cast<double>(points));
    }

    const nphase::FringeTable fringe = nphase::event_probability_fringe(state, selected, grid);
    const nphase::FringeParams extracted = nphase::extract_fringe_params(fringe, total);

    out.report_line("n_photons", std::to_string(total));
    out.report_line("eta", nphase::format_value(extracted.efficiency));
    out.report_line("visibility", nphase::format_value(extracted.visibility));
    out.report_line("phi0", nphase::format_value(extracted.bias));

    nphase::OutputTable table;
    table.header = {"phi", "P"};
    for (std::size_t i = 0; i < fringe.size(); ++i) {
      table.append_row({fringe.phase[i], fringe.probability[i]});
    }
    out.write_table(table);
  }
};

struct MonteCarloCmd {
  int n = 0;
  double eta = 0.0;
  double visibility = 0.0;
  double bias = 0.0;
  double true_phase = 0.0;
  std::int64_t trials = 1000000;
  std::int64_t repeats = 500;
  std::uint64_t seed = 42;
  AngleUnit unit;
  CommandOutput out;

  void run() const {
    nphase::TrialConfig config;
    config.params = nphase::FringeParams{n, eta, visibility, unit.to_radians(bias)};
    config.true_phase = unit.to_radians(true_phase);
    config.trials_per_experiment = trials;
    config.experiment_repeats = repeats;
    config.rng_seed = seed;

    const nphase::TrialReport report = nphase::run_experiments(config);
    const double k = static_cast<double>(trials);

    out.report_line("mean_count", nphase::format_value(report.mean_count));
    out.report_line("mean_count_over_k", nphase::format_value(report.mean_count / k));
    out.report_line("count_variance", nphase::format_value(report.count_variance));
    out.report_line("count_variance_over_k", nphase::format_value(report.count_variance / k));
    out.report_line("analytic_phase_error", nphase::format_value(report.analytic_phase_error));
    out.report_line("empirical_phase_error", nphase::format_value(report.empirical_phase_error));
    out.report_line("ratio", nphase::format_value(report.ratio));
    if (report.empirical_phase_error > 0.0) {
      out.report_line("empirical_sensitivity",
                      nphase::format_value(nphase::sensitivity_from_trials(report, config)));
    }

    nphase::OutputTable table;
    table.header = {"repeat", "count", "phase_estimate"};
    for (std::size_t i = 0; i < report.counts.size(); ++i) {
      table.append_row({static_cast<double>(i), static_cast<double>(report.counts[i]),
                        unit.from_radians(report.phase_estimates[i])});
    }
    out.write_table(table);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase sensitivity of N-photon interference fringes"};
  app.require_subcommand(1);

  SensitivityCmd sens;
  auto* sens_cmd = app.add_subcommand(
      "sensitivity", "Optimal bias and maximum sensitivity for one parameter set");
  sens_cmd->add_option("--n", sens.n, "Photon number N")->required();
  sens_cmd->add_option("--eta", sens.eta, "Intrinsic efficiency in [0,1]")->required();
  sens_cmd->add_option("--visibility", sens.visibility, "Fringe visibility in [0,1]")->required();
  auto* sens_bias = sens_cmd->add_option("--bias", sens.bias, "Bias phase Phi0");
  sens_cmd->add_flag("--degrees", sens.unit.degrees, "Angles in degrees");
  sens_cmd->add_option("--out", sens.out.path, "Write a one-row CSV report here");

  FringeCmd fringe;
  auto* fringe_cmd =
      app.add_subcommand("fringe", "Detection-probability fringe table (phi,p,dp_dphi,S)");
  fringe_cmd->add_option("--n", fringe.n, "Photon number N")->required();
  fringe_cmd->add_option("--eta", fringe.eta, "Intrinsic efficiency in [0,1]")->required();
  fringe_cmd->add_option("--visibility", fringe.visibility, "Fringe visibility in [0,1]")
      ->required();
  fringe_cmd->add_option("--bias", fringe.bias, "Bias phase Phi0 (default 0)");
  double fringe_min = 0.0, fringe_max = 0.0, fringe_step = 0.0;
  auto* min_opt = fringe_cmd->add_option("--min", fringe_min, "Grid start (default 0)");
  auto* max_opt = fringe_cmd->add_option("--max", fringe_max, "Grid end (default min + 2*pi/N)");
  auto* step_opt = fringe_cmd->add_option("--step", fringe_step, "Inclusive grid step");
  fringe_cmd->add_option("--points", fringe.points,
                         "Endpoint-open sample count when --step is absent (default 512)");
  fringe_cmd->add_flag("--degrees", fringe.unit.degrees, "Angles in degrees");
  fringe_cmd->add_option("--out", fringe.out.path, "Write CSV here instead of stdout");

  ContourCmd contour;
  auto* contour_cmd =
      app.add_subcommand("contour", "Maximum-sensitivity map over (V, eta) with SQL region");
  contour_cmd->add_option("--n", contour.n, "Photon number N")->required();
  contour_cmd->add_option("--step", contour.step, "Grid step in V and eta (default 0.05)");
  contour_cmd->add_option("--out", contour.out.path, "Write CSV here instead of stdout");

  SimulateCmd sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Exact two-mode Mach-Zehnder fringe for a Fock input, plus extracted (eta, V)");
  sim_cmd->add_option("--input", sim.input, "Input Fock state n,m (default 2,2)");
  sim_cmd->add_option("--patterns", sim.patterns,
                      "Detection pattern n,m; repeatable (default: both N-1/1 events)");
  sim_cmd->add_option("--points", sim.points, "Phase samples over [0, 2*pi) (default 512)");
  sim_cmd->add_option("--out", sim.out.path, "Write CSV here instead of stdout");

  MonteCarloCmd mc;
  auto* mc_cmd = app.add_subcommand(
      "montecarlo", "Binomial trial simulation checking the analytic phase error");
  mc_cmd->add_option("--n", mc.n, "Photon number N")->required();
  mc_cmd->add_option("--eta", mc.eta, "Intrinsic efficiency in [0,1]")->required();
  mc_cmd->add_option("--visibility", mc.visibility, "Fringe visibility in [0,1]")->required();
  mc_cmd->add_option("--bias", mc.bias, "Bias phase Phi0 (default 0)");
  mc_cmd->add_option("--true-phase", mc.true_phase, "Phase shift to estimate (default 0)");
  mc_cmd->add_option("--trials", mc.trials, "Trials per experiment k (default 1e6)");
  mc_cmd->add_option("--repeats", mc.repeats, "Experiment repeats R (default 500)");
  mc_cmd->add_option("--seed", mc.seed, "RNG seed (default 42)");
  mc_cmd->add_flag("--degrees", mc.unit.degrees, "Angles in degrees");
  mc_cmd->add_option("--out", mc.out.path, "Write the per-repeat CSV here instead of stdout");

  try {
    app.parse(argc, argv);
    sens.bias_given = sens_bias->count() > 0;
    if (min_opt->count() > 0) fringe.min = fringe_min;
    if (max_opt->count() > 0) fringe.max = fringe_max;
    if (step_opt->count() > 0) fringe.step = fringe_step;

    if (sens_cmd->parsed()) {
      sens.run();
    } else if (fringe_cmd->parsed()) {
      fringe.run();
    } else if (contour_cmd->parsed()) {
      contour.run();
    } else if (sim_cmd->parsed()) {
      sim.run();
    } else if (mc_cmd->parsed()) {
      mc.run();
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const nphase::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
