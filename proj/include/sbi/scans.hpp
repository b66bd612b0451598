#pragma once

// Parameter scans behind the command-line front end. Each scan evaluates its
// grid points concurrently and writes rows in grid order, so the same
// configuration always produces byte-identical CSV.

#include "sbi/bragg_dynamics.hpp"
#include "sbi/interferometer.hpp"
#include "sbi/species.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <string>

namespace sbi {

// K0 = omega_0 / c with omega_0 the scalar zero in the default bracket.
double lattice_wavevector(const AtomSpecies& species);

struct PolarizabilityScan {
  double offset_min_thz = 0.5; // (omega - omega_D1) / 2 pi
  double offset_max_thz = 6.6;
  int points = 200;

  std::string canonical() const;
};

struct PolarizabilitySummary {
  double omega0 = 0.0;            // rad/s
  double omega0_offset_thz = 0.0; // (omega_0 - omega_D1) / 2 pi
  double alpha_v_at_omega0 = 0.0; // a0^3
};

// Columns: offset_THz, alpha_s_a0^3, alpha_v_a0^3.
PolarizabilitySummary run_polarizability_scan(const AtomSpecies& species, const PolarizabilityScan& scan,
                                              std::ostream& csv);

struct BraggRun {
  PulseKind kind = PulseKind::beam_splitter;
  double rabi_ratio = 0.01;           // hbar Omega / E_rec
  std::optional<double> duration;     // s; default is the calibrated pi/2 or pi pulse
  int truncation = 3;                 // rungs [-truncation - 1, truncation]
  int refinement = 4;                 // dt = max_time_step / refinement
  int samples = 100;                  // time samples written (plus the initial one)
  int initial_m = 1;
  double kx_ratio = 1.0;              // k_x / K0

  std::string canonical() const;
};

struct BraggSummary {
  double population_upper = 0.0; // n = 0
  double population_lower = 0.0; // n = -1
  double leakage = 0.0;          // everything else
  double max_deviation = 0.0;    // vs the two-rung analytic pulse (global phase removed for BR)
  double norm_drift = 0.0;
  double area = 0.0;
};

// Columns: t_s, n, m, re_X, im_X, abs2_X; a trailing comment line carries the
// comparison against the analytic two-rung pulse.
BraggSummary run_bragg(const AtomSpecies& species, const BraggRun& run, std::ostream& csv);

struct InterferometerScan {
  std::optional<double> field_min; // E_y, V/m; default -1e-2 of the weak-field bound
  std::optional<double> field_max; // default +1e-2 of the weak-field bound
  int points = 101;
  double half_time = 0.05; // T, s
  double kx_ratio = 1.0;   // k_x / K0
  int initial_m = 1;
  bool numerical = false;
  NumericalPipelineSettings pipeline;

  std::string canonical() const;
};

FieldConfig make_field(const AtomSpecies& species, const InterferometerScan& scan, double e_y);

// Columns: E_y_V_per_m, P_c, P_d, phi_exact_rad, phi_linear_rad, validity_ratio.
// Points where the phase is undefined get an empty phi_exact cell.
void run_interferometer_scan(const AtomSpecies& species, const InterferometerScan& scan, std::ostream& csv);

// Evaluates fn(0..count-1) on worker threads and returns results in index
// order. The first exception (lowest index) is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace sbi
