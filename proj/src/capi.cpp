#include "fermicav/fermicav.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <string>

#include "bogoliubov.hpp"
#include "entanglement.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "polylog.hpp"
#include "quadrature.hpp"
#include "scenario.hpp"

struct fc_geometry {
  fermicav::CavityGeometry impl;
};

struct fc_scenario {
  fermicav::TravelScenario impl;
};

struct fc_matrix {
  fermicav::PerturbativeMatrix impl;
};

struct fc_config {
  fermicav::ScenarioConfig impl;
};

namespace {

thread_local std::string g_last_error;

fc_status fail(fc_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
fc_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return FC_OK;
  } catch (const fermicav::ConfigError& err) {
    return fail(FC_ERR_CONFIG, err.what());
  } catch (const fermicav::ToleranceError& err) {
    return fail(FC_ERR_TOLERANCE, err.what());
  } catch (const fermicav::QuadratureError& err) {
    return fail(FC_ERR_TOLERANCE, err.what());
  } catch (const fermicav::IoError& err) {
    return fail(FC_ERR_IO, err.what());
  } catch (const std::invalid_argument& err) {
    return fail(FC_ERR_INVALID_ARGUMENT, err.what());
  } catch (const std::out_of_range& err) {
    return fail(FC_ERR_INVALID_ARGUMENT, err.what());
  } catch (const std::exception& err) {
    return fail(FC_ERR_INTERNAL, err.what());
  } catch (...) {
    return fail(FC_ERR_INTERNAL, "unknown failure");
  }
}

bool missing(const void* pointer) { return pointer == nullptr; }

fc_status require_args(std::initializer_list<const void*> pointers) {
  for (const void* p : pointers)
    if (missing(p)) return fail(FC_ERR_INVALID_ARGUMENT, "null argument");
  return FC_OK;
}

}  // namespace

extern "C" {

const char* fc_status_name(fc_status status) {
  switch (status) {
    case FC_OK: return "ok";
    case FC_ERR_CONFIG: return "config-error";
    case FC_ERR_TOLERANCE: return "tolerance-breach";
    case FC_ERR_IO: return "io-error";
    case FC_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case FC_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* fc_last_error(void) { return g_last_error.c_str(); }

const char* fc_version(void) { return fermicav::kLibraryVersion; }

fc_status fc_geometry_create(double a, double b, double s, double theta,
                             fc_geometry** out) {
  if (fc_status bad = require_args({out})) return bad;
  return guarded([&] {
    *out = new fc_geometry{fermicav::CavityGeometry::from_walls(a, b, s, theta)};
  });
}

fc_status fc_geometry_create_from_acceleration(double delta, double h, double s,
                                               double theta, fc_geometry** out) {
  if (fc_status bad = require_args({out})) return bad;
  return guarded([&] {
    *out = new fc_geometry{
        fermicav::CavityGeometry::from_acceleration(delta, h, s, theta)};
  });
}

void fc_geometry_destroy(fc_geometry* geometry) { delete geometry; }

fc_status fc_geometry_inspect(const fc_geometry* geometry,
                              fc_geometry_info* out) {
  if (fc_status bad = require_args({geometry, out})) return bad;
  return guarded([&] {
    const fermicav::CavityGeometry& g = geometry->impl;
    *out = fc_geometry_info{g.a(), g.b(),     g.s(),        g.theta(),
                            g.delta(), g.h(), g.log_ratio()};
  });
}

fc_status fc_minkowski_frequency(const fc_geometry* geometry, int n,
                                 double* out) {
  if (fc_status bad = require_args({geometry, out})) return bad;
  return guarded([&] { *out = fermicav::minkowski_frequency(geometry->impl, n); });
}

fc_status fc_rindler_frequency(const fc_geometry* geometry, int n, double* out) {
  if (fc_status bad = require_args({geometry, out})) return bad;
  return guarded([&] { *out = fermicav::rindler_frequency(geometry->impl, n); });
}

fc_status fc_rapidity_from_proper_time(const fc_geometry* geometry, double tau,
                                       double* out) {
  if (fc_status bad = require_args({geometry, out})) return bad;
  return guarded(
      [&] { *out = fermicav::rapidity_from_proper_time(geometry->impl, tau); });
}

fc_status fc_degradation_period(const fc_geometry* geometry, double* out) {
  if (fc_status bad = require_args({geometry, out})) return bad;
  return guarded([&] { *out = fermicav::degradation_period(geometry->impl); });
}

fc_status fc_u_parameter(const fc_geometry* geometry, double tau1, double* out) {
  if (fc_status bad = require_args({geometry, out})) return bad;
  return guarded([&] { *out = fermicav::u_parameter(geometry->impl, tau1); });
}

fc_status fc_v_parameter(const fc_geometry* geometry, double tau2, double* out) {
  if (fc_status bad = require_args({geometry, out})) return bad;
  return guarded([&] { *out = fermicav::v_parameter(geometry->impl, tau2); });
}

fc_status fc_first_order_entry(int m, int n, double s, double* out) {
  if (fc_status bad = require_args({out})) return bad;
  return guarded([&] { *out = fermicav::first_order_entry(m, n, s); });
}

fc_status fc_second_order_entry(int m, int n, double s, double* out) {
  if (fc_status bad = require_args({out})) return bad;
  return guarded([&] { *out = fermicav::second_order_entry(m, n, s); });
}

fc_status fc_scenario_create(const fc_geometry* geometry, fc_scenario** out) {
  if (fc_status bad = require_args({geometry, out})) return bad;
  return guarded([&] {
    *out = new fc_scenario{fermicav::TravelScenario{geometry->impl, {}}};
  });
}

fc_status fc_scenario_add_segment(fc_scenario* scenario, const char* kind,
                                  double duration) {
  if (fc_status bad = require_args({scenario, kind})) return bad;
  return guarded([&] {
    fermicav::Segment segment;
    segment.kind = fermicav::segment_kind_from_name(kind);
    segment.duration = duration;
    if (!(std::isfinite(duration) && duration >= 0.0))
      throw std::invalid_argument(
          "segment durations must be finite and non-negative");
    scenario->impl.segments.push_back(segment);
  });
}

void fc_scenario_destroy(fc_scenario* scenario) { delete scenario; }

fc_status fc_graft(const fc_scenario* scenario, int window, fc_matrix** out) {
  if (fc_status bad = require_args({scenario, out})) return bad;
  return guarded(
      [&] { *out = new fc_matrix{fermicav::graft(scenario->impl, window)}; });
}

fc_status fc_segment_matrix_accel(const fc_geometry* geometry, double eta1,
                                  int leftward, int window, fc_matrix** out) {
  if (fc_status bad = require_args({geometry, out})) return bad;
  return guarded([&] {
    const auto direction = leftward ? fermicav::BoostDirection::left
                                    : fermicav::BoostDirection::right;
    *out = new fc_matrix{
        fermicav::segment_matrix_accel(geometry->impl, eta1, direction, window)};
  });
}

fc_status fc_inertial_phase_matrix(const fc_geometry* geometry, double tau,
                                   int window, fc_matrix** out) {
  if (fc_status bad = require_args({geometry, out})) return bad;
  return guarded([&] {
    *out = new fc_matrix{
        fermicav::inertial_phase_matrix(geometry->impl, tau, window)};
  });
}

void fc_matrix_destroy(fc_matrix* matrix) { delete matrix; }

fc_status fc_matrix_window(const fc_matrix* matrix, int* out) {
  if (fc_status bad = require_args({matrix, out})) return bad;
  return guarded([&] { *out = matrix->impl.window(); });
}

fc_status fc_matrix_order_entry(const fc_matrix* matrix, int order, int m, int n,
                                double* re, double* im) {
  if (fc_status bad = require_args({matrix, re, im})) return bad;
  return guarded([&] {
    std::complex<double> value;
    switch (order) {
      case 0:
        if (m != n)
          throw std::invalid_argument("order 0 is diagonal; require m == n");
        value = matrix->impl.order0(n);
        break;
      case 1: value = matrix->impl.order1(m, n); break;
      case 2: value = matrix->impl.order2(m, n); break;
      default:
        throw std::invalid_argument("order must be 0, 1 or 2");
    }
    *re = value.real();
    *im = value.imag();
  });
}

fc_status fc_matrix_entry(const fc_matrix* matrix, int m, int n, double h,
                          double* re, double* im) {
  if (fc_status bad = require_args({matrix, re, im})) return bad;
  return guarded([&] {
    const std::complex<double> value = matrix->impl.entry(m, n, h);
    *re = value.real();
    *im = value.imag();
  });
}

fc_status fc_matrix_unitarity_residuals(const fc_matrix* matrix, int eval_window,
                                        double* order1, double* order2) {
  if (fc_status bad = require_args({matrix, order1, order2})) return bad;
  return guarded([&] {
    const fermicav::UnitarityResidual res =
        fermicav::unitarity_residuals(matrix->impl, eval_window);
    *order1 = res.order1;
    *order2 = res.order2;
  });
}

fc_status fc_matrix_pair_creation_weight(const fc_matrix* matrix, double* out) {
  if (fc_status bad = require_args({matrix, out})) return bad;
  return guarded(
      [&] { *out = fermicav::vacuum_v_matrix(matrix->impl).pair_weight(); });
}

fc_status fc_exact_coefficient(const fc_geometry* geometry, int m, int n,
                               double abs_tol, double* re, double* im,
                               double* error_estimate) {
  if (fc_status bad = require_args({geometry, re, im})) return bad;
  return guarded([&] {
    const fermicav::QuadratureResult result =
        fermicav::exact_coefficient(geometry->impl, m, n, abs_tol);
    *re = result.value.real();
    *im = result.value.imag();
    if (error_estimate) *error_estimate = result.error_estimate;
  });
}

fc_status fc_re_polylog(int order, double phi, double* out) {
  if (fc_status bad = require_args({out})) return bad;
  return guarded([&] {
    *out = fermicav::re_polylog(order, fermicav::UnitPhase::from_phase(phi));
  });
}

fc_status fc_q_function(double alpha, double phi, double* out) {
  if (fc_status bad = require_args({out})) return bad;
  return guarded([&] {
    *out = fermicav::q_function(alpha, fermicav::UnitPhase::from_phase(phi));
  });
}

fc_status fc_fk_closed(const fc_geometry* geometry, int k, double u, double* out) {
  if (fc_status bad = require_args({geometry, out})) return bad;
  return guarded([&] {
    *out = fermicav::fk_closed(geometry->impl, k,
                               fermicav::UnitPhase::from_turns(u));
  });
}

fc_status fc_fk_series(const fc_geometry* geometry, int k, double u, int window,
                       double* out) {
  if (fc_status bad = require_args({geometry, out})) return bad;
  return guarded([&] {
    *out = fermicav::fk_series(geometry->impl, k,
                               fermicav::UnitPhase::from_turns(u), window);
  });
}

fc_status fc_oneway_fk(const fc_geometry* geometry, int k, double u, double v,
                       double* out) {
  if (fc_status bad = require_args({geometry, out})) return bad;
  return guarded([&] {
    *out = fermicav::oneway_fk(geometry->impl, k,
                               fermicav::UnitPhase::from_turns(u),
                               fermicav::UnitPhase::from_turns(v));
  });
}

fc_status fc_negativity_two_mode(double f_coefficient, double h, double* out) {
  if (fc_status bad = require_args({out})) return bad;
  return guarded([&] { *out = fermicav::negativity_two_mode(f_coefficient, h); });
}

fc_status fc_chsh_max_two_mode(double f_coefficient, double h, double* out) {
  if (fc_status bad = require_args({out})) return bad;
  return guarded([&] { *out = fermicav::chsh_max_two_mode(f_coefficient, h); });
}

fc_status fc_negativity_charge(const fc_geometry* geometry, int k, int k_prime,
                               double u, int oneway, double v, double h,
                               double* negativity, double* interference) {
  if (fc_status bad = require_args({geometry, negativity})) return bad;
  return guarded([&] {
    std::optional<fermicav::UnitPhase> e2;
    if (oneway) e2 = fermicav::UnitPhase::from_turns(v);
    const fermicav::ChargeNegativity result = fermicav::negativity_charge(
        geometry->impl, k, k_prime, fermicav::UnitPhase::from_turns(u), e2, h);
    *negativity = result.negativity;
    if (interference) *interference = result.interference_term;
  });
}

fc_status fc_density_matrix_oracle(const fc_scenario* scenario,
                                   const char* family, int k, int k_prime,
                                   double h, int window, double* negativity,
                                   double* chsh, double* interference) {
  if (fc_status bad = require_args({scenario, family, negativity})) return bad;
  return guarded([&] {
    const fermicav::StateFamily parsed = fermicav::state_family_from_name(family);
    std::optional<int> prime;
    if (parsed == fermicav::StateFamily::charge) prime = k_prime;
    const fermicav::OracleResult result = fermicav::density_matrix_oracle(
        parsed, k, prime, scenario->impl, h, window);
    *negativity = result.negativity;
    if (chsh) *chsh = result.chsh_max;
    if (interference) *interference = result.interference_term;
  });
}

fc_status fc_config_load(const char* path, fc_config** out) {
  if (fc_status bad = require_args({path, out})) return bad;
  return guarded([&] {
    *out = new fc_config{fermicav::ScenarioConfig::from_json_file(path)};
  });
}

fc_status fc_config_parse(const char* json_text, fc_config** out) {
  if (fc_status bad = require_args({json_text, out})) return bad;
  return guarded([&] {
    *out = new fc_config{fermicav::ScenarioConfig::from_json_text(json_text)};
  });
}

void fc_config_destroy(fc_config* config) { delete config; }

fc_status fc_config_override_out(fc_config* config, const char* path) {
  if (fc_status bad = require_args({config, path})) return bad;
  return guarded([&] { config->impl.override_out(path); });
}

fc_status fc_config_override_window(fc_config* config, int window) {
  if (fc_status bad = require_args({config})) return bad;
  return guarded([&] { config->impl.override_window(window); });
}

fc_status fc_config_override_h(fc_config* config, double h) {
  if (fc_status bad = require_args({config})) return bad;
  return guarded([&] { config->impl.override_h(h); });
}

fc_status fc_config_override_grid(fc_config* config, int u_points, int v_points) {
  if (fc_status bad = require_args({config})) return bad;
  return guarded([&] { config->impl.override_grid(u_points, v_points); });
}

namespace {

fc_status run_sweep(const fc_config* config, const char* command) {
  if (fc_status bad = require_args({config})) return bad;
  return guarded([&] {
    const fermicav::ScenarioConfig& cfg = config->impl;
    if (cfg.out_path.empty())
      throw fermicav::ConfigError("output.csv (or --out) is required");
    const fermicav::SweepResult result = std::string(command) == "figure2"
                                             ? fermicav::run_figure2(cfg)
                                             : fermicav::run_figure3(cfg);
    fermicav::write_sweep_csv(result, cfg, command, cfg.out_path);
  });
}

}  // namespace

fc_status fc_run_figure2(const fc_config* config) {
  return run_sweep(config, "figure2");
}

fc_status fc_run_figure3(const fc_config* config) {
  return run_sweep(config, "figure3");
}

fc_status fc_run_report(const fc_config* config) {
  if (fc_status bad = require_args({config})) return bad;
  return guarded([&] { fermicav::run_report(config->impl); });
}

fc_status fc_run_validate(const fc_config* config) {
  return guarded([&] {
    const fermicav::ScenarioConfig defaults;
    const fermicav::ValidationOutcome outcome =
        fermicav::run_validate(config ? config->impl : defaults);
    for (const std::string& line : outcome.lines) std::puts(line.c_str());
    std::printf("%d passed, %d failed\n", outcome.passed, outcome.failed);
    if (!outcome.ok())
      throw fermicav::ToleranceError("validation suite reported failures");
  });
}

}  // extern "C"
