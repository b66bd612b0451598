#pragma once

#include "sbi/species.hpp"

namespace sbi {

// Dynamical polarizability in atomic units (a0^3). near_resonance is set when
// omega lies within 10 linewidths of a line, where the far-detuned
// treatment no longer holds.
struct Polarizability {
  double value = 0.0;
  bool near_resonance = false;
};

// Reduced polarizability alpha_K (K = 0 scalar, K = 1 vector), summed over
// the species' lines with 6-j weights and both rotating and counter-rotating
// denominators; the real part is taken.
Polarizability reduced_polarizability(int rank, double omega, const AtomSpecies& species);

// alpha_s = alpha_0 / sqrt(3(2J+1)).
Polarizability scalar_polarizability(double omega, const AtomSpecies& species);

// alpha_v = (-1)^(J+I+F) sqrt(2F(2F+1)/(F+1)) {F 1 F; J I J} alpha_1.
Polarizability vector_polarizability(double omega, const AtomSpecies& species);

// Lowest-frequency J' = 1/2 and J' = 3/2 lines.
const TransitionLine& d1_line(const AtomSpecies& species);
const TransitionLine& d2_line(const AtomSpecies& species);

struct FrequencyBracket {
  double lo = 0.0;
  double hi = 0.0;
};

// (omega_D1 + 2 pi 0.5 THz, omega_D2 - 2 pi 0.5 THz)
FrequencyBracket default_zero_bracket(const AtomSpecies& species);

// Bisection for alpha_s(omega) = 0 to relative tolerance 1e-12 in omega.
// Throws NumericalError when alpha_s does not change sign across the bracket.
double find_scalar_zero(const AtomSpecies& species, FrequencyBracket bracket);

enum class PulseKind { beam_splitter, beam_reflector };

// Omega = |alpha(omega)| E0^2 / hbar with alpha converted to SI; the
// beam splitter uses alpha_v, the reflector alpha_s. E0 in V/m.
double pulse_rabi_frequency(PulseKind kind, const AtomSpecies& species, double omega, double e0);

// theta_1 = arccos(omega_0 / omega_1). Throws InvalidArgument unless omega_1 > omega_0 > 0.
double reflector_geometry(double omega0, double omega1);

} // namespace sbi
