// Command-line front end over the fermicav C API: figure-reproduction sweeps,
// single-scenario reports and the invariant suite.
//
// Exit codes: 0 success, 2 configuration error, 3 tolerance breach,
// 4 I/O error.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "fermicav/fermicav.h"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  int window = 0;
  double h = 0.0;
  std::string grid;
  bool has_window = false;
  bool has_h = false;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool config_required) {
  // --h is a spec flag, so help lives on --help only.
  cmd->set_help_flag("--help", "Print this help message and exit");
  auto* config =
      cmd->add_option("--config", opts.config_path, "Path to the JSON run configuration");
  if (config_required) config->required();
  cmd->add_option("--out", opts.out_path, "Output path (overrides output.csv)");
  cmd->add_option("--window", opts.window, "Matrix truncation window M")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--h", opts.h, "Acceleration parameter h in (0,2); keeps delta")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--grid", opts.grid, "Sweep grid as N or NxM points");
}

int exit_code_for(fc_status status) {
  switch (status) {
    case FC_OK: return 0;
    case FC_ERR_CONFIG: return 2;
    case FC_ERR_TOLERANCE: return 3;
    case FC_ERR_IO: return 4;
    case FC_ERR_INVALID_ARGUMENT: return 2;
    case FC_ERR_INTERNAL: return 1;
  }
  return 1;
}

int report_failure(fc_status status) {
  std::fprintf(stderr, "fermicav: %s: %s\n", fc_status_name(status),
               fc_last_error());
  return exit_code_for(status);
}

bool parse_grid(const std::string& text, int& u_points, int& v_points) {
  const std::size_t cross = text.find('x');
  try {
    if (cross == std::string::npos) {
      u_points = v_points = std::stoi(text);
    } else {
      u_points = std::stoi(text.substr(0, cross));
      v_points = std::stoi(text.substr(cross + 1));
    }
  } catch (const std::exception&) {
    return false;
  }
  return u_points >= 2 && v_points >= 2;
}

// Loads the config (or defaults when no path was given) and applies flag
// overrides. Returns nullptr after printing the failure.
fc_config* make_config(const CommonOptions& opts, fc_status& status) {
  fc_config* config = nullptr;
  if (!opts.config_path.empty()) {
    status = fc_config_load(opts.config_path.c_str(), &config);
  } else {
    status = fc_config_parse("{}", &config);
  }
  if (status != FC_OK) return nullptr;

  if (!opts.out_path.empty())
    status = fc_config_override_out(config, opts.out_path.c_str());
  if (status == FC_OK && opts.window > 0)
    status = fc_config_override_window(config, opts.window);
  if (status == FC_OK && opts.h > 0.0) status = fc_config_override_h(config, opts.h);
  if (status == FC_OK && !opts.grid.empty()) {
    int u_points = 0, v_points = 0;
    if (!parse_grid(opts.grid, u_points, v_points)) {
      fc_config_destroy(config);
      std::fprintf(stderr, "fermicav: config-error: --grid expects N or NxM with N,M >= 2\n");
      status = FC_ERR_CONFIG;
      return nullptr;
    }
    status = fc_config_override_grid(config, u_points, v_points);
  }
  if (status != FC_OK) {
    fc_config_destroy(config);
    return nullptr;
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement degradation of Dirac cavity modes under grafted "
               "inertial/accelerated motion"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", fc_version());

  CommonOptions fig2_opts, fig3_opts, report_opts, validate_opts;
  CLI::App* fig2 = app.add_subcommand(
      "figure2", "Degradation coefficient f_k/h^2 over one period of u");
  add_common_flags(fig2, fig2_opts, true);
  CLI::App* fig3 = app.add_subcommand(
      "figure3", "One-way-trip degradation over the (u,v) unit square");
  add_common_flags(fig3, fig3_opts, true);
  CLI::App* report = app.add_subcommand(
      "report", "Single-scenario report with closed-form and oracle routes");
  add_common_flags(report, report_opts, true);
  CLI::App* validate =
      app.add_subcommand("validate", "Run the library invariant suite");
  add_common_flags(validate, validate_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  const CommonOptions& opts = fig2->parsed()     ? fig2_opts
                              : fig3->parsed()   ? fig3_opts
                              : report->parsed() ? report_opts
                                                 : validate_opts;
  fc_status status = FC_OK;
  fc_config* config = make_config(opts, status);
  if (config == nullptr) return report_failure(status);

  if (fig2->parsed()) {
    status = fc_run_figure2(config);
    if (status == FC_OK) std::printf("figure2 sweep written\n");
  } else if (fig3->parsed()) {
    status = fc_run_figure3(config);
    if (status == FC_OK) std::printf("figure3 sweep written\n");
  } else if (report->parsed()) {
    status = fc_run_report(config);
    if (status == FC_OK) std::printf("report written\n");
  } else {
    status = fc_run_validate(config);
  }

  fc_config_destroy(config);
  return status == FC_OK ? 0 : report_failure(status);
}
