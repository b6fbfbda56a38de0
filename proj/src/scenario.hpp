#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entanglement.hpp"

namespace fermicav {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Run configuration, loaded from a JSON file. Unknown keys are rejected and
// every module-level precondition is validated before dispatch; CLI flags
// override individual fields afterwards.
struct ScenarioConfig {
  double a = 9.5;   // defaults: delta = 1, h = 0.1
  double b = 10.5;
  double s = 0.0;
  double theta = 0.0;

  int window = 200;
  StateFamily family = StateFamily::two_mode_plus;
  int k = 1;
  std::optional<int> k_prime;

  std::vector<Segment> segments;

  // Sweep grids. u/v points of 0 mean "use the command's default".
  int u_points = 0;
  int v_points = 0;
  std::vector<double> s_values = {0.0, 0.25, 0.5, 0.75};
  std::vector<int> k_values = {1, -1};

  std::string out_path;

  double oracle_tolerance = 1e-4;
  double quadrature_tolerance = 1e-11;

  CavityGeometry geometry() const;

  static ScenarioConfig from_json_file(const std::string& path);
  static ScenarioConfig from_json_text(const std::string& text);

  // CLI overrides.
  void override_out(const std::string& path);
  void override_window(int window);
  void override_h(double h);  // keeps delta, moves the walls
  void override_grid(int u_points, int v_points);
};

struct SweepRow {
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  int k = 0;
  double f_coefficient = 0.0;
  double negativity = 0.0;
  double chsh_max = 0.0;
  double interference_term = 0.0;
  double tail_estimate = 0.0;
  bool validity_flag = false;
};

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;
};

// f_k/h^2 over one period of u for every (s, k) in the configured lists.
// Default grid: 101 u-points.
SweepResult run_figure2(const ScenarioConfig& config);

// One-way-trip degradation over the (u, v) unit square at the configured
// (s, k). Default grid: 100 x 100.
SweepResult run_figure3(const ScenarioConfig& config);

struct ReportOutput {
  std::string route;  // "closed", "one-way" or "composite-series"
  double u = 0.0;
  double v = 0.0;
  EntanglementReport closed;
  OracleResult oracle;
  double negativity_discrepancy = 0.0;
  double chsh_discrepancy = 0.0;
  double tail_estimate = 0.0;
  bool validity_flag = false;
};

// Single-scenario evaluation through both the closed-form and the
// density-matrix route. Throws ToleranceError (after writing the output when
// a path is configured) if the routes disagree beyond the configured
// tolerance.
ReportOutput run_report(const ScenarioConfig& config);

struct ValidationOutcome {
  int passed = 0;
  int failed = 0;
  std::vector<std::string> lines;  // "PASS name" / "FAIL name: detail"
  bool ok() const { return failed == 0; }
};

// Fast self-check suite over the library invariants (unitarity, series vs
// closed forms, oracle agreement, convention independence, zero-mode
// continuity).
ValidationOutcome run_validate(const ScenarioConfig& config);

// CSV with a fixed column order, 17 significant digits, plus a deterministic
// JSON metadata sidecar at <path>.meta.json. Re-running a command with the
// same config produces byte-identical files.
void write_sweep_csv(const SweepResult& result, const ScenarioConfig& config,
                     const std::string& command, const std::string& path);

void write_report_json(const ReportOutput& report, const ScenarioConfig& config,
                       const std::string& path);

}  // namespace fermicav
