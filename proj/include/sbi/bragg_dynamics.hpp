#pragma once

#include "sbi/constants.hpp"
#include "sbi/polarizability.hpp"
#include "sbi/spin_algebra.hpp"

#include <functional>
#include <vector>

namespace sbi {

// E_rec = hbar^2 K0^2 / (2 M), in J.
double recoil_energy(double k0_lattice, double mass);

// eps_{k_n} - eps_{k_0} = 4 E_rec n (n + 1), in J.
double ladder_energy_offset(int n, double recoil);

// Matrix element of the beam-splitter lattice hbar Omega sin(2 K0 y) F_y between
// ladder plane waves, in units of hbar Omega_BS:
//   -(i/2) F^y_{m,m'} [delta_{n,n'+1} - delta_{n,n'-1}].
cplx bs_coupling(int n, int np, int m, int mp);
// The full 3x3 spin block of bs_coupling for rungs (n, n').
SpinMatrix bs_coupling_block(int n, int np);

struct PulseSpec {
  PulseKind kind = PulseKind::beam_splitter;
  double rabi = 0.0;        // rad/s
  double duration = 0.0;    // s
  double k0_lattice = 0.0;  // rad/m
  double center_time = 0.0; // s
  bool calibrated = false;  // true for the pi/2 splitter and pi reflector

  // pi/2 pulse: duration = pi / (2 Omega).
  static PulseSpec beam_splitter(double rabi, double k0_lattice, double center_time = 0.0);
  // pi pulse: duration = pi / Omega.
  static PulseSpec beam_reflector(double rabi, double k0_lattice, double center_time = 0.0);
  // Arbitrary duration; flagged non-calibrated.
  static PulseSpec custom(PulseKind kind, double rabi, double duration, double k0_lattice, double center_time = 0.0);

  double area() const { return rabi * duration; }
  double start_time() const { return center_time - 0.5 * duration; }
};

// Spinor amplitudes X_n on the momentum ladder k_n = (k_x, (2n+1) K0, 0),
// n in [n_min, n_max], with the common exp(-i eps_{k_0} t / hbar) factor removed.
class LadderState {
public:
  LadderState(int n_min, int n_max, double k_x, double k0_lattice, double mass, double time = 0.0);

  // chi on rung n, zero elsewhere.
  static LadderState single_rung(const SpinState& chi, int n_min, int n_max, double k_x, double k0_lattice,
                                 double mass, int rung = 0, double time = 0.0);

  int n_min() const { return n_min_; }
  int n_max() const { return n_max_; }
  std::size_t size() const { return amp_.size(); }
  bool contains(int n) const { return n >= n_min_ && n <= n_max_; }

  SpinState& at(int n);
  const SpinState& at(int n) const;

  double k_x() const { return k_x_; }
  double k0_lattice() const { return k0_; }
  double mass() const { return mass_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  double recoil() const { return recoil_energy(k0_, mass_); }
  double norm2() const;
  double rung_population(int n) const { return at(n).norm2(); }

  std::vector<SpinState>& amplitudes() { return amp_; }
  const std::vector<SpinState>& amplitudes() const { return amp_; }

private:
  int n_min_;
  int n_max_;
  double k_x_;
  double k0_;
  double mass_;
  double time_;
  std::vector<SpinState> amp_;
};

// Step bound min(2 pi / Omega, 2 pi hbar / max|eps_n - eps_0|) / 50.
// Infinite when neither scale exists (Omega = 0 on a two-rung ladder).
double max_time_step(const LadderState& state, const PulseSpec& pulse);

using StepObserver = std::function<void(const LadderState&)>;

// Fixed-step RK4 integration of the truncated ladder through a rectangular
// pulse. The step is shrunk so an integer number of steps covers the pulse.
// Throws InvalidArgument when dt exceeds max_time_step, NumericalError when
// the total norm drifts by more than 1e-8. The observer, if set, sees the
// initial state and the state after every step.
LadderState propagate_chain(const LadderState& state, const PulseSpec& pulse, double dt,
                            const StepObserver& observer = {});

// Convenience overload: dt = max_time_step / refinement.
LadderState propagate_chain(const LadderState& state, const PulseSpec& pulse, int refinement = 4,
                            const StepObserver& observer = {});

// Amplitudes on the two resonant rungs, n = 0 and n = -1.
struct RungPair {
  SpinState upper; // n = 0
  SpinState lower; // n = -1
};

// 6x6 operator on (X_0, X_-1) stored as 3x3 blocks.
struct RungBlock {
  SpinMatrix a00, a01, a10, a11;

  RungBlock dagger() const;
  friend RungBlock operator*(const RungBlock& l, const RungBlock& r);
  friend RungPair operator*(const RungBlock& m, const RungPair& v);
};

bool is_unitary(const RungBlock& m, double tol = unitary_tolerance);

struct BeamSplitterUnitaries {
  SpinMatrix transmit; // V_T
  SpinMatrix reflect;  // V_R
};

// V_T = (sqrt2 + 1)/3 I - (sqrt2 - 1)/(2 sqrt2) Q_yy, V_R = F_y / sqrt2.
// Checks [V_T, V_R] = 0 and V_T^2 + V_R^2 = I; throws InternalError otherwise.
const BeamSplitterUnitaries& bs_unitaries();

// Two-rung splitter of pulse area theta:
//   [[cos(theta F_y/2), sin(theta F_y/2)], [-sin(theta F_y/2), cos(theta F_y/2)]].
// At theta = pi/2 this is [[V_T, V_R], [-V_R, V_T]].
RungBlock bs_block(double area = constants::pi / 2.0);
RungPair analytic_bs(const RungPair& in, double area = constants::pi / 2.0);

// Two-rung reflector of pulse area theta: cos(theta/2) on the diagonal,
// -i sin(theta/2) across; the common exp(-i Omega t) phase is omitted.
RungBlock br_block(double area = constants::pi);
RungPair analytic_br(const RungPair& in, double area = constants::pi);

RungPair rung_pair(const LadderState& state);

// max over components of |a - b|
double max_abs_diff(const RungPair& a, const RungPair& b);
// Same after removing the best global phase between the two.
double max_abs_diff_up_to_phase(const RungPair& a, const RungPair& b);

} // namespace sbi
