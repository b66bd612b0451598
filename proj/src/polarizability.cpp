#include "sbi/polarizability.hpp"

#include "sbi/constants.hpp"
#include "sbi/errors.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace sbi {

namespace {

int parity_sign(int twice_exponent) {
  // (-1)^(twice/2) for an exponent known to be integer.
  if (twice_exponent % 2 != 0) throw InternalError("non-integer phase exponent");
  return ((twice_exponent / 2) % 2 == 0) ? 1 : -1;
}

const TransitionLine& lowest_line(const AtomSpecies& species, int twice_j) {
  const TransitionLine* best = nullptr;
  for (const auto& l : species.lines)
    if (l.j_upper.twice() == twice_j && (!best || l.omega < best->omega)) best = &l;
  if (!best) throw DataError("species " + species.name + ": no line with J' = " + HalfInt::from_twice(twice_j).to_string());
  return *best;
}

} // namespace

const TransitionLine& d1_line(const AtomSpecies& species) { return lowest_line(species, 1); }
const TransitionLine& d2_line(const AtomSpecies& species) { return lowest_line(species, 3); }

Polarizability reduced_polarizability(int rank, double omega, const AtomSpecies& species) {
  if (rank != 0 && rank != 1) throw InvalidArgument("polarizability rank must be 0 or 1");
  if (!(omega > 0.0)) throw InvalidArgument("polarizability: omega must be positive");
  if (species.lines.empty()) throw DataError("polarizability: species has no transition lines");

  const double au = constants::atomic_unit_angular_frequency;
  const double w = omega / au;
  const HalfInt half = HalfInt::from_twice(1);
  const HalfInt k = HalfInt::integer(rank);
  const HalfInt one = HalfInt::integer(1);

  Polarizability out;
  double sum = 0.0;
  for (const auto& line : species.lines) {
    if (line.gamma == 0.0 && omega == line.omega)
      throw InvalidArgument("polarizability: omega coincides with undamped line " + line.label);
    if (std::abs(omega - line.omega) < 10.0 * line.gamma) out.near_resonance = true;

    // (-1)^(K + J' + 3/2)
    const int phase = parity_sign(2 * rank + line.j_upper.twice() + 3);
    const double sixj = wigner6j(one, k, one, half, line.j_upper, half);
    const double wn = line.omega / au;
    const double g = line.gamma / au;
    const std::complex<double> resonant = 1.0 / std::complex<double>(wn - w, -0.5 * g);
    const std::complex<double> counter = (rank == 0 ? 1.0 : -1.0) / std::complex<double>(wn + w, 0.5 * g);
    sum += phase * sixj * line.reduced_dipole * line.reduced_dipole * (resonant + counter).real();
  }
  out.value = std::sqrt(2.0 * rank + 1.0) * sum;
  return out;
}

Polarizability scalar_polarizability(double omega, const AtomSpecies& species) {
  auto p = reduced_polarizability(0, omega, species);
  const double j = AtomSpecies::electronic_j.value();
  p.value /= std::sqrt(3.0 * (2.0 * j + 1.0));
  return p;
}

Polarizability vector_polarizability(double omega, const AtomSpecies& species) {
  auto p = reduced_polarizability(1, omega, species);
  const HalfInt j = AtomSpecies::electronic_j;
  const HalfInt f = species.hyperfine_f;
  const HalfInt i = species.nuclear_spin;
  const double fv = f.value();
  if (fv == 0.0) {
    p.value = 0.0;
    return p;
  }
  const int phase = parity_sign(j.twice() + i.twice() + f.twice());
  const double weight = std::sqrt(2.0 * fv * (2.0 * fv + 1.0) / (fv + 1.0));
  p.value *= phase * weight * wigner6j(f, HalfInt::integer(1), f, j, i, j);
  return p;
}

FrequencyBracket default_zero_bracket(const AtomSpecies& species) {
  const double margin = constants::two_pi * 0.5 * constants::terahertz;
  return {d1_line(species).omega + margin, d2_line(species).omega - margin};
}

double find_scalar_zero(const AtomSpecies& species, FrequencyBracket bracket) {
  double lo = bracket.lo, hi = bracket.hi;
  if (!(lo > 0.0) || !(hi > lo)) throw InvalidArgument("find_scalar_zero: bracket must satisfy 0 < lo < hi");
  double f_lo = scalar_polarizability(lo, species).value;
  const double f_hi = scalar_polarizability(hi, species).value;
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0))
    throw NumericalError("find_scalar_zero: scalar polarizability does not change sign across the bracket");

  // Runs to adjacent doubles, which is well inside the 1e-12 relative target.
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = scalar_polarizability(mid, species).value;
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double pulse_rabi_frequency(PulseKind kind, const AtomSpecies& species, double omega, double e0) {
  if (e0 < 0.0) throw InvalidArgument("pulse_rabi_frequency: field amplitude must be non-negative");
  const double alpha = kind == PulseKind::beam_splitter ? vector_polarizability(omega, species).value
                                                        : scalar_polarizability(omega, species).value;
  return std::abs(alpha) * constants::atomic_unit_polarizability * e0 * e0 / constants::hbar;
}

double reflector_geometry(double omega0, double omega1) {
  if (!(omega0 > 0.0)) throw InvalidArgument("reflector_geometry: omega_0 must be positive");
  if (!(omega1 > omega0)) throw InvalidArgument("reflector_geometry: omega_1 must exceed omega_0");
  return std::acos(omega0 / omega1);
}

} // namespace sbi
