#pragma once

// Physical constants (CODATA 2018, SI).

namespace sbi::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double hbar = 1.054571817e-34;           // J s
inline constexpr double speed_of_light = 299792458.0;     // m/s
inline constexpr double bohr_magneton = 9.2740100783e-24; // J/T

// Atomic unit of angular frequency, E_h / hbar.
inline constexpr double atomic_unit_angular_frequency = 4.1341373335e16; // rad/s
// Atomic unit of polarizability, 4 pi eps0 a0^3.
inline constexpr double atomic_unit_polarizability = 1.64877727436e-41; // C^2 m^2 / J

inline constexpr double terahertz = 1e12;
inline constexpr double megahertz = 1e6;

} // namespace sbi::constants
