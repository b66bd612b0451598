#pragma once

#include "sbi/bragg_dynamics.hpp"
#include "sbi/species.hpp"
#include "sbi/spin_algebra.hpp"

#include <optional>

namespace sbi {

// Lande factor of the ground hyperfine level F (J = 1/2).
double lande_g_factor(const AtomSpecies& species);

// Static homogeneous field seen by both arms of the Mach-Zehnder sequence.
struct FieldConfig {
  Vec3 electric_field{};   // V/m
  double half_time = 0.0;  // T, s
  double k_x = 0.0;        // rad/m
  double k0_lattice = 0.0; // K0, rad/m
  AtomSpecies species;

  // |k_0| = sqrt(k_x^2 + K0^2)
  double wavevector() const;
  // s_T = (hbar / M) |k_0| T
  double path_length() const;
  // |4 hbar c^2 / (g_F mu_B s_T)| in V/m; infinite when s_T = 0.
  double weak_field_bound() const;
  // |E| / weak_field_bound()
  double validity_ratio() const;
};

// Spin-orbit coupling strength per unit arc length and field,
// g_F mu_B / (4 hbar c^2), in 1/(V) (so that coefficient * s * E is a phase).
double field_coupling(const AtomSpecies& species);

// U_n(s) = exp(-i [g_F mu_B s / (4 hbar c^2)] (F x E) . k_n / |k_0|), n in {0, -1}.
SpinMatrix ac_propagator(int n, double arc_length, const FieldConfig& field);

struct WMatrices {
  SpinMatrix ac, bc, ad, bd;
};

// W_ac = -i V_R U_-1 U_0 V_T, W_bc = i V_T U_0 U_-1 V_R,
// W_ad = -i V_T U_-1 U_0 V_T, W_bd = -i V_R U_0 U_-1 V_R, with U_n = U_n(s_T).
WMatrices w_matrices(const FieldConfig& field);

// Full 6x6 map from (X_0, X_-1) before the first splitter to the output
// ports (X_c, X_d) after the second: BS . flight . BR . flight . BS.
RungBlock transfer_matrix(const FieldConfig& field);

// The four scalars of the |X_d|^2 expansion for input chi.
struct PortDTerms {
  double path_a = 0.0;    // chi^+ W_ad^+ W_ad chi
  double path_b = 0.0;    // chi^+ W_bd^+ W_bd chi
  cplx interference = 0.0; // chi^+ W_ad^+ W_bd chi
};

struct InterferometerResult {
  SpinState x_c;
  SpinState x_d;
  double p_c = 0.0;
  double p_d = 0.0;
  std::optional<double> phi_exact; // empty when the interference term vanishes
  double phi_linear = 0.0;
  double validity_ratio = 0.0;
  PortDTerms port_d;
  std::optional<WMatrices> w; // only for the analytic pipeline
};

// Analytic pipeline: X_c = (W_ac + W_bc) chi, X_d = (W_ad + W_bd) chi.
// Throws InvalidArgument if chi is not normalized to 1e-12.
InterferometerResult run_interferometer(const FieldConfig& field, const SpinState& chi_in);

// Magnitude below which the AC phase is reported as undefined.
inline constexpr double phase_amplitude_floor = 1e-15;

// Arg[chi^+ W_ad^+ W_bd chi], principal value in (-pi, pi].
// Throws UndefinedPhase when the interference term is below phase_amplitude_floor.
double ac_phase_exact(const FieldConfig& field, const SpinState& chi_in);

// Closed-form weak-field phase
//   g_F mu_B s_T / (sqrt2 hbar c^2) * k_x / sqrt(k_x^2 + K0^2) * E_y.
double ac_phase_linear(const FieldConfig& field);
// m * ac_phase_linear for an initial chi_m.
double ac_phase_linear(const FieldConfig& field, int m);

// Settings for the pulse simulations inside the numerical pipeline.
struct NumericalPipelineSettings {
  double rabi_ratio = 0.01; // hbar Omega / E_rec for both pulse kinds
  int truncation = 3;       // rungs n in [-truncation - 1, truncation]
  int refinement = 1;       // dt = max_time_step / refinement
};

// End-to-end alternative: chain-propagated BS, BR, BS pulses with the exact
// U_n(s_T) spin rotations between them. Paths a and b are tracked separately
// after the first splitter so the interference term is available; amplitude
// leaked off the two resonant rungs is carried along with free-evolution
// phases only. Throws NumericalError from the integrator.
InterferometerResult mz_pipeline_numerical(const FieldConfig& field, const NumericalPipelineSettings& settings,
                                           const SpinState& chi_in);

} // namespace sbi
