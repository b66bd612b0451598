#include "sbi/bragg_dynamics.hpp"

#include "sbi/constants.hpp"
#include "sbi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sbi {

namespace {
constexpr cplx I{0.0, 1.0};
constexpr double norm_drift_limit = 1e-8;
} // namespace

double recoil_energy(double k0_lattice, double mass) {
  if (!(mass > 0.0)) throw InvalidArgument("recoil_energy: mass must be positive");
  return constants::hbar * constants::hbar * k0_lattice * k0_lattice / (2.0 * mass);
}

double ladder_energy_offset(int n, double recoil) {
  return 4.0 * recoil * static_cast<double>(n) * static_cast<double>(n + 1);
}

cplx bs_coupling(int n, int np, int m, int mp) {
  const double rung = (n == np + 1 ? 1.0 : 0.0) - (n == np - 1 ? 1.0 : 0.0);
  if (rung == 0.0) return 0.0;
  const auto& fy = spin_operators().y;
  const cplx f = fy(static_cast<std::size_t>(1 - m), static_cast<std::size_t>(1 - mp));
  return -0.5 * I * f * rung;
}

SpinMatrix bs_coupling_block(int n, int np) {
  SpinMatrix b;
  for (int m = 1; m >= -1; --m)
    for (int mp = 1; mp >= -1; --mp)
      b(static_cast<std::size_t>(1 - m), static_cast<std::size_t>(1 - mp)) = bs_coupling(n, np, m, mp);
  return b;
}

PulseSpec PulseSpec::beam_splitter(double rabi, double k0_lattice, double center_time) {
  if (!(rabi > 0.0)) throw InvalidArgument("beam splitter pulse needs a positive Rabi frequency");
  return {PulseKind::beam_splitter, rabi, constants::pi / (2.0 * rabi), k0_lattice, center_time, true};
}

PulseSpec PulseSpec::beam_reflector(double rabi, double k0_lattice, double center_time) {
  if (!(rabi > 0.0)) throw InvalidArgument("beam reflector pulse needs a positive Rabi frequency");
  return {PulseKind::beam_reflector, rabi, constants::pi / rabi, k0_lattice, center_time, true};
}

PulseSpec PulseSpec::custom(PulseKind kind, double rabi, double duration, double k0_lattice, double center_time) {
  if (rabi < 0.0) throw InvalidArgument("pulse Rabi frequency must be non-negative");
  if (duration < 0.0) throw InvalidArgument("pulse duration must be non-negative");
  return {kind, rabi, duration, k0_lattice, center_time, false};
}

LadderState::LadderState(int n_min, int n_max, double k_x, double k0_lattice, double mass, double time)
    : n_min_(n_min), n_max_(n_max), k_x_(k_x), k0_(k0_lattice), mass_(mass), time_(time) {
  if (!(n_min <= -1 && n_max >= 0)) throw InvalidArgument("ladder must contain rungs -1 and 0");
  if (!(mass > 0.0)) throw InvalidArgument("ladder: mass must be positive");
  if (!(k0_lattice > 0.0)) throw InvalidArgument("ladder: lattice wavevector must be positive");
  amp_.resize(static_cast<std::size_t>(n_max - n_min + 1));
}

LadderState LadderState::single_rung(const SpinState& chi, int n_min, int n_max, double k_x, double k0_lattice,
                                     double mass, int rung, double time) {
  LadderState s(n_min, n_max, k_x, k0_lattice, mass, time);
  s.at(rung) = chi;
  return s;
}

SpinState& LadderState::at(int n) {
  if (!contains(n)) throw InvalidArgument("rung " + std::to_string(n) + " outside the ladder");
  return amp_[static_cast<std::size_t>(n - n_min_)];
}

const SpinState& LadderState::at(int n) const {
  if (!contains(n)) throw InvalidArgument("rung " + std::to_string(n) + " outside the ladder");
  return amp_[static_cast<std::size_t>(n - n_min_)];
}

double LadderState::norm2() const {
  double acc = 0.0;
  for (const auto& a : amp_) acc += a.norm2();
  return acc;
}

namespace {

double max_detuning(const LadderState& state) {
  const double recoil = state.recoil();
  double d = 0.0;
  for (int n = state.n_min(); n <= state.n_max(); ++n) d = std::max(d, std::abs(ladder_energy_offset(n, recoil)));
  return d / constants::hbar;
}

// Right-hand side of i dX_n/dt = H X for the truncated ladder.
class ChainGenerator {
public:
  ChainGenerator(const LadderState& state, const PulseSpec& pulse)
      : kind_(pulse.kind), rabi_(pulse.rabi) {
    const double recoil = state.recoil();
    for (int n = state.n_min(); n <= state.n_max(); ++n)
      detuning_.push_back(ladder_energy_offset(n, recoil) / constants::hbar);
    // The propagated lattice is -hbar Omega sin(2 K0 y) F_y, i.e. the standing
    // wave origin shifted by a quarter period relative to bs_coupling. With
    // this origin the two resonant rungs obey the V_T / V_R splitter.
    to_lower_ = -rabi_ * bs_coupling_block(0, -1); // couples X_n to X_{n-1}
    to_upper_ = -rabi_ * bs_coupling_block(0, 1);  // couples X_n to X_{n+1}
  }

  void operator()(const std::vector<SpinState>& x, std::vector<SpinState>& dxdt) const {
    const std::size_t size = x.size();
    for (std::size_t k = 0; k < size; ++k) {
      SpinState h = detuning_[k] * x[k];
      if (kind_ == PulseKind::beam_splitter) {
        if (k > 0) h += to_lower_ * x[k - 1];
        if (k + 1 < size) h += to_upper_ * x[k + 1];
      } else {
        // hbar Omega [1 + cos(2 K0 y)]
        h += rabi_ * x[k];
        if (k > 0) h += (0.5 * rabi_) * x[k - 1];
        if (k + 1 < size) h += (0.5 * rabi_) * x[k + 1];
      }
      dxdt[k] = -I * h;
    }
  }

private:
  PulseKind kind_;
  double rabi_;
  std::vector<double> detuning_;
  SpinMatrix to_lower_;
  SpinMatrix to_upper_;
};

} // namespace

double max_time_step(const LadderState& state, const PulseSpec& pulse) {
  double scale = std::numeric_limits<double>::infinity();
  if (pulse.rabi > 0.0) scale = std::min(scale, constants::two_pi / pulse.rabi);
  const double d = max_detuning(state);
  if (d > 0.0) scale = std::min(scale, constants::two_pi / d);
  return scale / 50.0;
}

LadderState propagate_chain(const LadderState& state, const PulseSpec& pulse, double dt,
                            const StepObserver& observer) {
  if (!(dt > 0.0)) throw InvalidArgument("propagate_chain: dt must be positive");
  const double bound = max_time_step(state, pulse);
  if (dt > bound * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "propagate_chain: dt = " << dt << " s exceeds the resolution bound " << bound << " s";
    throw InvalidArgument(msg.str());
  }

  LadderState out = state;
  if (observer) observer(out);
  if (pulse.duration == 0.0) return out;

  const auto steps = static_cast<long>(std::ceil(pulse.duration / dt - 1e-9));
  const double h = pulse.duration / static_cast<double>(steps);
  const double t0 = state.time();
  const double norm0 = state.norm2();

  const ChainGenerator rhs(state, pulse);
  auto& x = out.amplitudes();
  const std::size_t size = x.size();
  std::vector<SpinState> k1(size), k2(size), k3(size), k4(size), tmp(size);

  for (long step = 0; step < steps; ++step) {
    rhs(x, k1);
    for (std::size_t k = 0; k < size; ++k) tmp[k] = x[k] + (0.5 * h) * k1[k];
    rhs(tmp, k2);
    for (std::size_t k = 0; k < size; ++k) tmp[k] = x[k] + (0.5 * h) * k2[k];
    rhs(tmp, k3);
    for (std::size_t k = 0; k < size; ++k) tmp[k] = x[k] + h * k3[k];
    rhs(tmp, k4);
    for (std::size_t k = 0; k < size; ++k) x[k] += (h / 6.0) * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    out.set_time(t0 + static_cast<double>(step + 1) * h);
    if (observer) observer(out);
  }

  const double drift = std::abs(out.norm2() - norm0);
  if (drift > norm_drift_limit) {
    std::ostringstream msg;
    msg << "propagate_chain: norm drift " << drift << " exceeds " << norm_drift_limit << " (steps=" << steps
        << ", dt=" << h << " s, rungs=[" << state.n_min() << ", " << state.n_max() << "], Omega=" << pulse.rabi
        << " rad/s)";
    throw NumericalError(msg.str());
  }
  return out;
}

LadderState propagate_chain(const LadderState& state, const PulseSpec& pulse, int refinement,
                            const StepObserver& observer) {
  if (refinement < 1) throw InvalidArgument("propagate_chain: refinement must be >= 1");
  double dt = max_time_step(state, pulse);
  if (!std::isfinite(dt)) dt = pulse.duration > 0.0 ? pulse.duration : 1.0;
  return propagate_chain(state, pulse, dt / refinement, observer);
}

RungBlock RungBlock::dagger() const { return {a00.dagger(), a10.dagger(), a01.dagger(), a11.dagger()}; }

RungBlock operator*(const RungBlock& l, const RungBlock& r) {
  return {l.a00 * r.a00 + l.a01 * r.a10, l.a00 * r.a01 + l.a01 * r.a11, l.a10 * r.a00 + l.a11 * r.a10,
          l.a10 * r.a01 + l.a11 * r.a11};
}

RungPair operator*(const RungBlock& m, const RungPair& v) {
  return {m.a00 * v.upper + m.a01 * v.lower, m.a10 * v.upper + m.a11 * v.lower};
}

bool is_unitary(const RungBlock& m, double tol) {
  const RungBlock p = m.dagger() * m;
  const SpinMatrix id = SpinMatrix::identity();
  return max_abs_diff(p.a00, id) <= tol && max_abs_diff(p.a11, id) <= tol &&
         max_abs_diff(p.a01, SpinMatrix::zero()) <= tol && max_abs_diff(p.a10, SpinMatrix::zero()) <= tol;
}

const BeamSplitterUnitaries& bs_unitaries() {
  static const BeamSplitterUnitaries u = [] {
    const double r2 = std::sqrt(2.0);
    BeamSplitterUnitaries v;
    v.transmit = ((r2 + 1.0) / 3.0) * SpinMatrix::identity() - ((r2 - 1.0) / (2.0 * r2)) * quadrupole(Axis::y, Axis::y);
    v.reflect = (1.0 / r2) * spin_operators().y;
    if (max_abs_diff(commutator(v.transmit, v.reflect), SpinMatrix::zero()) > unitary_tolerance)
      throw InternalError("bs_unitaries: V_T and V_R do not commute");
    if (max_abs_diff(v.transmit * v.transmit + v.reflect * v.reflect, SpinMatrix::identity()) > unitary_tolerance)
      throw InternalError("bs_unitaries: V_T^2 + V_R^2 != I");
    return v;
  }();
  return u;
}

RungBlock bs_block(double area) {
  const auto& fy = spin_operators().y;
  const double half = 0.5 * area;
  // Spin-1: cos(a F_y) = I + (cos a - 1) F_y^2, sin(a F_y) = sin a F_y.
  const SpinMatrix c = SpinMatrix::identity() + (std::cos(half) - 1.0) * (fy * fy);
  const SpinMatrix s = std::sin(half) * fy;
  return {c, s, -s, c};
}

RungPair analytic_bs(const RungPair& in, double area) { return bs_block(area) * in; }

RungBlock br_block(double area) {
  const SpinMatrix id = SpinMatrix::identity();
  const double half = 0.5 * area;
  return {std::cos(half) * id, -I * std::sin(half) * id, -I * std::sin(half) * id, std::cos(half) * id};
}

RungPair analytic_br(const RungPair& in, double area) { return br_block(area) * in; }

RungPair rung_pair(const LadderState& state) { return {state.at(0), state.at(-1)}; }

double max_abs_diff(const RungPair& a, const RungPair& b) {
  return std::max(max_abs_diff(a.upper, b.upper), max_abs_diff(a.lower, b.lower));
}

double max_abs_diff_up_to_phase(const RungPair& a, const RungPair& b) {
  const cplx overlap = inner(b.upper, a.upper) + inner(b.lower, a.lower);
  if (std::abs(overlap) == 0.0) return max_abs_diff(a, b);
  const cplx phase = std::conj(overlap) / std::abs(overlap);
  return max_abs_diff(RungPair{phase * a.upper, phase * a.lower}, b);
}

} // namespace sbi
