#include "sbi/scans.hpp"

#include "sbi/constants.hpp"
#include "sbi/csv.hpp"
#include "sbi/errors.hpp"
#include "sbi/polarizability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>
#include <vector>

namespace sbi {

namespace {

std::string species_canonical(const AtomSpecies& s) {
  std::ostringstream o;
  o.precision(17);
  o << "species=" << s.name << ";mass=" << s.mass << ";I=" << s.nuclear_spin.to_string()
    << ";F=" << s.hyperfine_f.to_string() << ";gJ=" << s.g_j << ";gI=" << s.g_i;
  for (const auto& l : s.lines)
    o << ";line=" << l.label << ',' << l.j_upper.to_string() << ',' << l.omega << ',' << l.reduced_dipole << ','
      << l.gamma;
  return o.str();
}

std::vector<double> grid(double lo, double hi, int points) {
  if (points < 2) throw UsageError("scan needs at least 2 points");
  if (!(hi > lo)) throw UsageError("scan range is empty (max must exceed min)");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  return g;
}

const char* kind_name(PulseKind k) { return k == PulseKind::beam_splitter ? "BS" : "BR"; }

} // namespace

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double lattice_wavevector(const AtomSpecies& species) {
  return find_scalar_zero(species, default_zero_bracket(species)) / constants::speed_of_light;
}

std::string PolarizabilityScan::canonical() const {
  std::ostringstream o;
  o.precision(17);
  o << "polarizability;min_thz=" << offset_min_thz << ";max_thz=" << offset_max_thz << ";points=" << points;
  return o.str();
}

PolarizabilitySummary run_polarizability_scan(const AtomSpecies& species, const PolarizabilityScan& scan,
                                              std::ostream& csv) {
  const auto offsets = grid(scan.offset_min_thz, scan.offset_max_thz, scan.points);
  const double d1 = d1_line(species).omega;
  const double to_omega = constants::two_pi * constants::terahertz;

  struct Row {
    double alpha_s, alpha_v;
  };
  std::vector<Row> rows(offsets.size());
  parallel_for(offsets.size(), [&](std::size_t i) {
    const double w = d1 + to_omega * offsets[i];
    rows[i] = {scalar_polarizability(w, species).value, vector_polarizability(w, species).value};
  });

  PolarizabilitySummary summary;
  summary.omega0 = find_scalar_zero(species, default_zero_bracket(species));
  summary.omega0_offset_thz = (summary.omega0 - d1) / to_omega;
  summary.alpha_v_at_omega0 = vector_polarizability(summary.omega0, species).value;

  csv::write_preamble(csv, csv::config_digest(scan.canonical() + "|" + species_canonical(species)),
                      {"offset_THz", "alpha_s_a0^3", "alpha_v_a0^3"});
  for (std::size_t i = 0; i < rows.size(); ++i)
    csv::write_row(csv, {csv::format(offsets[i]), csv::format(rows[i].alpha_s), csv::format(rows[i].alpha_v)});
  return summary;
}

std::string BraggRun::canonical() const {
  std::ostringstream o;
  o.precision(17);
  o << "bragg;kind=" << kind_name(kind) << ";rabi_ratio=" << rabi_ratio << ";duration=";
  if (duration) o << *duration;
  o << ";truncation=" << truncation << ";refinement=" << refinement << ";samples=" << samples
    << ";initial_m=" << initial_m << ";kx_ratio=" << kx_ratio;
  return o.str();
}

BraggSummary run_bragg(const AtomSpecies& species, const BraggRun& run, std::ostream& csv) {
  if (run.truncation < 0) throw UsageError("truncation must be >= 0");
  if (run.samples < 1) throw UsageError("samples must be >= 1");
  if (run.refinement < 1) throw UsageError("refinement must be >= 1");
  if (run.rabi_ratio < 0.0) throw UsageError("rabi ratio must be non-negative");

  const double k0 = lattice_wavevector(species);
  const double recoil = recoil_energy(k0, species.mass);
  const double rabi = run.rabi_ratio * recoil / constants::hbar;

  PulseSpec pulse;
  if (run.duration) {
    pulse = PulseSpec::custom(run.kind, rabi, *run.duration, k0);
  } else {
    if (rabi == 0.0) throw UsageError("a zero Rabi frequency needs an explicit pulse duration");
    pulse = run.kind == PulseKind::beam_splitter ? PulseSpec::beam_splitter(rabi, k0) : PulseSpec::beam_reflector(rabi, k0);
  }

  const int n_min = -run.truncation - 1;
  const int n_max = run.truncation;
  const LadderState input = LadderState::single_rung(SpinState::basis(run.initial_m), n_min, n_max,
                                                     run.kx_ratio * k0, k0, species.mass, 0, pulse.start_time());

  double dt = max_time_step(input, pulse);
  if (!std::isfinite(dt)) dt = pulse.duration > 0.0 ? pulse.duration : 1.0;
  dt /= run.refinement;
  const auto total_steps = static_cast<long>(std::ceil(pulse.duration / dt - 1e-9));
  const long stride = std::max<long>(1, total_steps / run.samples);

  std::vector<LadderState> samples;
  long step = 0;
  const LadderState final_state = propagate_chain(input, pulse, dt, [&](const LadderState& s) {
    if (step % stride == 0 || step == total_steps) samples.push_back(s);
    ++step;
  });
  if (samples.back().time() != final_state.time()) samples.push_back(final_state);

  BraggSummary summary;
  summary.area = pulse.area();
  summary.population_upper = final_state.rung_population(0);
  summary.population_lower = final_state.rung_population(-1);
  summary.leakage = std::max(0.0, final_state.norm2() - summary.population_upper - summary.population_lower);
  summary.norm_drift = std::abs(final_state.norm2() - input.norm2());
  const RungPair initial = rung_pair(input);
  const RungPair numeric = rung_pair(final_state);
  if (run.kind == PulseKind::beam_splitter)
    summary.max_deviation = max_abs_diff(numeric, analytic_bs(initial, pulse.area()));
  else
    summary.max_deviation = max_abs_diff_up_to_phase(numeric, analytic_br(initial, pulse.area()));

  csv::write_preamble(csv, csv::config_digest(run.canonical() + "|" + species_canonical(species)),
                      {"t_s", "n", "m", "re_X", "im_X", "abs2_X"});
  for (const auto& s : samples) {
    const double t = s.time() - pulse.start_time();
    for (int n = n_min; n <= n_max; ++n)
      for (int m = 1; m >= -1; --m) {
        const cplx a = s.at(n).component(m);
        csv::write_row(csv, {csv::format(t), std::to_string(n), std::to_string(m), csv::format(a.real()),
                             csv::format(a.imag()), csv::format(std::norm(a))});
      }
  }
  csv << "# final P_0=" << csv::format(summary.population_upper) << " P_-1=" << csv::format(summary.population_lower)
      << " leakage=" << csv::format(summary.leakage) << " max_deviation_vs_analytic=" << csv::format(summary.max_deviation)
      << '\n';
  return summary;
}

std::string InterferometerScan::canonical() const {
  std::ostringstream o;
  o.precision(17);
  o << "interferometer;field_min=";
  if (field_min) o << *field_min;
  o << ";field_max=";
  if (field_max) o << *field_max;
  o << ";points=" << points << ";T=" << half_time << ";kx_ratio=" << kx_ratio << ";initial_m=" << initial_m
    << ";numerical=" << numerical << ";rabi_ratio=" << pipeline.rabi_ratio << ";truncation=" << pipeline.truncation
    << ";refinement=" << pipeline.refinement;
  return o.str();
}

FieldConfig make_field(const AtomSpecies& species, const InterferometerScan& scan, double e_y) {
  const double k0 = lattice_wavevector(species);
  return FieldConfig{{0.0, e_y, 0.0}, scan.half_time, scan.kx_ratio * k0, k0, species};
}

void run_interferometer_scan(const AtomSpecies& species, const InterferometerScan& scan, std::ostream& csv) {
  if (scan.half_time < 0.0) throw UsageError("half time T must be non-negative");
  const FieldConfig probe = make_field(species, scan, 0.0);
  const double bound = probe.weak_field_bound();
  const double lo = scan.field_min.value_or(std::isfinite(bound) ? -1e-2 * bound : -1.0);
  const double hi = scan.field_max.value_or(std::isfinite(bound) ? 1e-2 * bound : 1.0);
  const auto fields = grid(lo, hi, scan.points);
  const SpinState chi = SpinState::basis(scan.initial_m);

  std::vector<InterferometerResult> results(fields.size());
  parallel_for(fields.size(), [&](std::size_t i) {
    FieldConfig f = probe;
    f.electric_field = {0.0, fields[i], 0.0};
    results[i] = scan.numerical ? mz_pipeline_numerical(f, scan.pipeline, chi) : run_interferometer(f, chi);
    results[i].phi_linear = ac_phase_linear(f, scan.initial_m);
  });

  csv::write_preamble(csv, csv::config_digest(scan.canonical() + "|" + species_canonical(species)),
                      {"E_y_V_per_m", "P_c", "P_d", "phi_exact_rad", "phi_linear_rad", "validity_ratio"});
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto& r = results[i];
    csv::write_row(csv, {csv::format(fields[i]), csv::format(r.p_c), csv::format(r.p_d), csv::format(r.phi_exact),
                         csv::format(r.phi_linear), csv::format(r.validity_ratio)});
  }
}

} // namespace sbi
