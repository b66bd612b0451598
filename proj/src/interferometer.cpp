#include "sbi/interferometer.hpp"

#include "sbi/constants.hpp"
#include "sbi/errors.hpp"

#include <cmath>
#include <limits>

namespace sbi {

namespace {

constexpr cplx I{0.0, 1.0};

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void require_normalized(const SpinState& chi) {
  if (std::abs(chi.norm2() - 1.0) > 1e-12) throw InvalidArgument("interferometer: input spinor is not normalized");
}

} // namespace

double lande_g_factor(const AtomSpecies& species) {
  const double f = species.hyperfine_f.value();
  const double i = species.nuclear_spin.value();
  const double j = AtomSpecies::electronic_j.value();
  if (f == 0.0) return 0.0;
  const double ff = f * (f + 1.0), ii = i * (i + 1.0), jj = j * (j + 1.0);
  return species.g_j * (ff - ii + jj) / (2.0 * ff) + species.g_i * (ff + ii - jj) / (2.0 * ff);
}

double FieldConfig::wavevector() const { return std::hypot(k_x, k0_lattice); }

double FieldConfig::path_length() const { return constants::hbar * wavevector() * half_time / species.mass; }

double FieldConfig::weak_field_bound() const {
  const double denom = std::abs(field_coupling(species) * path_length());
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / denom;
}

double FieldConfig::validity_ratio() const {
  const double e = std::hypot(electric_field[0], electric_field[1], electric_field[2]);
  return e / weak_field_bound();
}

double field_coupling(const AtomSpecies& species) {
  const double c = constants::speed_of_light;
  return lande_g_factor(species) * constants::bohr_magneton / (4.0 * constants::hbar * c * c);
}

SpinMatrix ac_propagator(int n, double arc_length, const FieldConfig& field) {
  if (n != 0 && n != -1) throw InvalidArgument("ac_propagator: rung must be 0 or -1");
  const double k0 = field.wavevector();
  if (!(k0 > 0.0)) throw InvalidArgument("ac_propagator: zero wavevector");
  const Vec3 k_hat{field.k_x / k0, (2.0 * n + 1.0) * field.k0_lattice / k0, 0.0};
  // (F x E) . k = F . (E x k)
  const SpinMatrix generator = spin_dot(cross(field.electric_field, k_hat));
  return mat_exp_antihermitian(generator, field_coupling(field.species) * arc_length);
}

WMatrices w_matrices(const FieldConfig& field) {
  const auto& [vt, vr] = bs_unitaries();
  const double s = field.path_length();
  const SpinMatrix u0 = ac_propagator(0, s, field);
  const SpinMatrix um = ac_propagator(-1, s, field);
  return {-I * (vr * um * u0 * vt), I * (vt * u0 * um * vr), -I * (vt * um * u0 * vt), -I * (vr * u0 * um * vr)};
}

RungBlock transfer_matrix(const FieldConfig& field) {
  const double s = field.path_length();
  const SpinMatrix zero = SpinMatrix::zero();
  const RungBlock flight{ac_propagator(0, s, field), zero, zero, ac_propagator(-1, s, field)};
  const RungBlock splitter = bs_block();
  return splitter * flight * br_block() * flight * splitter;
}

InterferometerResult run_interferometer(const FieldConfig& field, const SpinState& chi_in) {
  require_normalized(chi_in);
  InterferometerResult r;
  const WMatrices w = w_matrices(field);
  r.x_c = (w.ac + w.bc) * chi_in;
  r.x_d = (w.ad + w.bd) * chi_in;
  r.p_c = r.x_c.norm2();
  r.p_d = r.x_d.norm2();

  const SpinState a = w.ad * chi_in;
  const SpinState b = w.bd * chi_in;
  r.port_d = {a.norm2(), b.norm2(), inner(a, b)};
  if (std::abs(r.port_d.interference) > phase_amplitude_floor) r.phi_exact = std::arg(r.port_d.interference);

  r.phi_linear = ac_phase_linear(field);
  r.validity_ratio = field.validity_ratio();
  r.w = w;
  return r;
}

double ac_phase_exact(const FieldConfig& field, const SpinState& chi_in) {
  require_normalized(chi_in);
  const WMatrices w = w_matrices(field);
  const cplx element = inner(w.ad * chi_in, w.bd * chi_in);
  if (std::abs(element) <= phase_amplitude_floor)
    throw UndefinedPhase("ac_phase_exact: interference amplitude vanishes; phase undefined");
  return std::arg(element);
}

double ac_phase_linear(const FieldConfig& field) {
  const double c = constants::speed_of_light;
  const double k0 = field.wavevector();
  if (k0 == 0.0) return 0.0;
  return lande_g_factor(field.species) * constants::bohr_magneton * field.path_length() /
         (std::sqrt(2.0) * constants::hbar * c * c) * (field.k_x / k0) * field.electric_field[1];
}

double ac_phase_linear(const FieldConfig& field, int m) {
  if (m < -1 || m > 1) throw InvalidArgument("ac_phase_linear: m must be -1, 0 or +1");
  return m * ac_phase_linear(field);
}

namespace {

struct PipelineContext {
  const FieldConfig& field;
  const NumericalPipelineSettings& settings;
  double rabi;
  SpinMatrix u0, um;
};

LadderState apply_flight(const LadderState& in, const PipelineContext& ctx) {
  LadderState out = in;
  const double recoil = in.recoil();
  const double t = ctx.field.half_time;
  for (int n = in.n_min(); n <= in.n_max(); ++n) {
    if (n == 0)
      out.at(n) = ctx.u0 * in.at(n);
    else if (n == -1)
      out.at(n) = ctx.um * in.at(n);
    else
      out.at(n) = std::exp(-I * ladder_energy_offset(n, recoil) * t / constants::hbar) * in.at(n);
  }
  out.set_time(in.time() + t);
  return out;
}

LadderState apply_pulse(const LadderState& in, PulseKind kind, const PipelineContext& ctx) {
  const double k0 = ctx.field.k0_lattice;
  const PulseSpec pulse = kind == PulseKind::beam_splitter ? PulseSpec::beam_splitter(ctx.rabi, k0, in.time())
                                                          : PulseSpec::beam_reflector(ctx.rabi, k0, in.time());
  return propagate_chain(in, pulse, ctx.settings.refinement);
}

// Flight, reflector, flight, splitter.
LadderState second_half(const LadderState& after_first_bs, const PipelineContext& ctx) {
  LadderState s = apply_flight(after_first_bs, ctx);
  s = apply_pulse(s, PulseKind::beam_reflector, ctx);
  s = apply_flight(s, ctx);
  return apply_pulse(s, PulseKind::beam_splitter, ctx);
}

} // namespace

InterferometerResult mz_pipeline_numerical(const FieldConfig& field, const NumericalPipelineSettings& settings,
                                           const SpinState& chi_in) {
  require_normalized(chi_in);
  if (settings.truncation < 0) throw InvalidArgument("mz_pipeline_numerical: truncation must be >= 0");
  if (!(settings.rabi_ratio > 0.0)) throw InvalidArgument("mz_pipeline_numerical: rabi ratio must be positive");

  const double recoil = recoil_energy(field.k0_lattice, field.species.mass);
  const double s = field.path_length();
  const PipelineContext ctx{field, settings, settings.rabi_ratio * recoil / constants::hbar,
                            ac_propagator(0, s, field), ac_propagator(-1, s, field)};

  const int n_min = -settings.truncation - 1;
  const int n_max = settings.truncation;
  const LadderState input =
      LadderState::single_rung(chi_in, n_min, n_max, field.k_x, field.k0_lattice, field.species.mass);
  const LadderState split = apply_pulse(input, PulseKind::beam_splitter, ctx);

  // Decompose by path: a on n = 0, b on n = -1, remainder off-resonant.
  LadderState path_a(n_min, n_max, field.k_x, field.k0_lattice, field.species.mass, split.time());
  LadderState path_b = path_a;
  LadderState leaked = split;
  path_a.at(0) = split.at(0);
  path_b.at(-1) = split.at(-1);
  leaked.at(0) = SpinState{};
  leaked.at(-1) = SpinState{};

  const LadderState out_a = second_half(path_a, ctx);
  const LadderState out_b = second_half(path_b, ctx);
  const LadderState out_l = second_half(leaked, ctx);

  InterferometerResult r;
  r.x_c = out_a.at(0) + out_b.at(0) + out_l.at(0);
  r.x_d = out_a.at(-1) + out_b.at(-1) + out_l.at(-1);
  r.p_c = r.x_c.norm2();
  r.p_d = r.x_d.norm2();
  r.port_d = {out_a.at(-1).norm2(), out_b.at(-1).norm2(), inner(out_a.at(-1), out_b.at(-1))};
  if (std::abs(r.port_d.interference) > phase_amplitude_floor) r.phi_exact = std::arg(r.port_d.interference);
  r.phi_linear = ac_phase_linear(field);
  r.validity_ratio = field.validity_ratio();
  return r;
}

} // namespace sbi
