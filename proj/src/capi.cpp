#include "sbi/sbi.h"

#include "sbi/errors.hpp"
#include "sbi/interferometer.hpp"
#include "sbi/polarizability.hpp"
#include "sbi/scans.hpp"
#include "sbi/species.hpp"

#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

struct sbi_species {
  sbi::AtomSpecies value;
};

namespace {

thread_local std::string last_error;

sbi_status fail(sbi_status status, const char* what) {
  last_error = what;
  return status;
}

template <class Fn>
sbi_status guarded(Fn&& fn) {
  try {
    fn();
    return SBI_OK;
  } catch (const sbi::Error& e) {
    return fail(static_cast<sbi_status>(e.kind()), e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(SBI_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SBI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SBI_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* name) {
  if (!p) throw sbi::InvalidArgument(std::string(name) + " is null");
}

// Rendered in memory first so a failing scan leaves no partial file behind.
template <class Fn>
void with_csv(const char* path, Fn&& fn) {
  std::ostringstream buffer;
  fn(buffer);
  if (!path || std::strcmp(path, "-") == 0) {
    std::cout << buffer.str() << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure(std::string("cannot open output file ") + path);
  out << buffer.str();
  out.close();
  if (!out) throw std::ios_base::failure(std::string("cannot write output file ") + path);
}

sbi::SpinState spinor(const double chi[6]) {
  sbi::SpinState s;
  for (std::size_t k = 0; k < 3; ++k) s[k] = sbi::cplx(chi[2 * k], chi[2 * k + 1]);
  return s;
}

void unpack(const sbi::SpinState& s, double out[6]) {
  for (int k = 0; k < 3; ++k) {
    out[2 * k] = s.component(1 - k).real();
    out[2 * k + 1] = s.component(1 - k).imag();
  }
}

sbi::PulseKind pulse_kind(sbi_pulse_kind k) {
  switch (k) {
  case SBI_BEAM_SPLITTER: return sbi::PulseKind::beam_splitter;
  case SBI_BEAM_REFLECTOR: return sbi::PulseKind::beam_reflector;
  }
  throw sbi::InvalidArgument("unknown pulse kind");
}

} // namespace

extern "C" {

const char* sbi_last_error(void) { return last_error.c_str(); }

const char* sbi_version(void) { return "1.0.0"; }

sbi_status sbi_species_load(const char* path, sbi_species** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new sbi_species{sbi::load_species(path)};
  });
}

sbi_status sbi_species_parse(const char* yaml_text, sbi_species** out) {
  return guarded([&] {
    require(yaml_text, "yaml_text");
    require(out, "out");
    *out = new sbi_species{sbi::parse_species(yaml_text)};
  });
}

sbi_status sbi_species_with_hyperfine(const sbi_species* species, int twice_f, sbi_species** out) {
  return guarded([&] {
    require(species, "species");
    require(out, "out");
    *out = new sbi_species{species->value.with_hyperfine(sbi::HalfInt::from_twice(twice_f))};
  });
}

void sbi_species_free(sbi_species* species) { delete species; }

sbi_status sbi_species_line_omega(const sbi_species* species, const char* label, double* omega) {
  return guarded([&] {
    require(species, "species");
    require(label, "label");
    require(omega, "omega");
    *omega = species->value.line(label).omega;
  });
}

sbi_status sbi_scalar_polarizability(const sbi_species* species, double omega, double* alpha, int* near_resonance) {
  return guarded([&] {
    require(species, "species");
    require(alpha, "alpha");
    const auto p = sbi::scalar_polarizability(omega, species->value);
    *alpha = p.value;
    if (near_resonance) *near_resonance = p.near_resonance;
  });
}

sbi_status sbi_vector_polarizability(const sbi_species* species, double omega, double* alpha, int* near_resonance) {
  return guarded([&] {
    require(species, "species");
    require(alpha, "alpha");
    const auto p = sbi::vector_polarizability(omega, species->value);
    *alpha = p.value;
    if (near_resonance) *near_resonance = p.near_resonance;
  });
}

sbi_status sbi_find_scalar_zero(const sbi_species* species, double lo, double hi, double* omega0) {
  return guarded([&] {
    require(species, "species");
    require(omega0, "omega0");
    const sbi::FrequencyBracket b =
        (lo == 0.0 && hi == 0.0) ? sbi::default_zero_bracket(species->value) : sbi::FrequencyBracket{lo, hi};
    *omega0 = sbi::find_scalar_zero(species->value, b);
  });
}

sbi_status sbi_reflector_geometry(double omega0, double omega1, double* theta1) {
  return guarded([&] {
    require(theta1, "theta1");
    *theta1 = sbi::reflector_geometry(omega0, omega1);
  });
}

sbi_status sbi_pulse_rabi_frequency(sbi_pulse_kind kind, const sbi_species* species, double omega, double e0,
                                    double* rabi) {
  return guarded([&] {
    require(species, "species");
    require(rabi, "rabi");
    *rabi = sbi::pulse_rabi_frequency(pulse_kind(kind), species->value, omega, e0);
  });
}

sbi_status sbi_interferometer_run(const sbi_species* species, const sbi_field* field, const double chi[6],
                                  sbi_interferometer_result* out) {
  return guarded([&] {
    require(species, "species");
    require(field, "field");
    require(chi, "chi");
    require(out, "out");
    sbi::InterferometerScan scan;
    scan.half_time = field->half_time;
    scan.kx_ratio = field->kx_ratio;
    sbi::FieldConfig f = sbi::make_field(species->value, scan, 0.0);
    f.electric_field = {field->electric_field[0], field->electric_field[1], field->electric_field[2]};
    const auto r = sbi::run_interferometer(f, spinor(chi));
    unpack(r.x_c, out->x_c);
    unpack(r.x_d, out->x_d);
    out->p_c = r.p_c;
    out->p_d = r.p_d;
    out->phi_defined = r.phi_exact.has_value();
    out->phi_exact = r.phi_exact.value_or(0.0);
    out->phi_linear = r.phi_linear;
    out->validity_ratio = r.validity_ratio;
  });
}

void sbi_polarizability_scan_defaults(sbi_polarizability_scan* scan) {
  if (!scan) return;
  const sbi::PolarizabilityScan d;
  *scan = {d.offset_min_thz, d.offset_max_thz, d.points};
}

sbi_status sbi_run_polarizability_scan(const sbi_species* species, const sbi_polarizability_scan* scan,
                                       const char* csv_path, sbi_polarizability_summary* summary) {
  return guarded([&] {
    require(species, "species");
    require(scan, "scan");
    const sbi::PolarizabilityScan s{scan->offset_min_thz, scan->offset_max_thz, scan->points};
    sbi::PolarizabilitySummary sum;
    with_csv(csv_path, [&](std::ostream& o) { sum = sbi::run_polarizability_scan(species->value, s, o); });
    if (summary) *summary = {sum.omega0, sum.omega0_offset_thz, sum.alpha_v_at_omega0};
  });
}

void sbi_bragg_run_defaults(sbi_bragg_run* run) {
  if (!run) return;
  const sbi::BraggRun d;
  *run = {SBI_BEAM_SPLITTER, d.rabi_ratio, 0, 0.0, d.truncation, d.refinement, d.samples, d.initial_m, d.kx_ratio};
}

sbi_status sbi_run_bragg(const sbi_species* species, const sbi_bragg_run* run, const char* csv_path,
                         sbi_bragg_summary* summary) {
  return guarded([&] {
    require(species, "species");
    require(run, "run");
    sbi::BraggRun r;
    r.kind = pulse_kind(run->kind);
    r.rabi_ratio = run->rabi_ratio;
    if (run->has_duration) r.duration = run->duration;
    r.truncation = run->truncation;
    r.refinement = run->refinement;
    r.samples = run->samples;
    r.initial_m = run->initial_m;
    r.kx_ratio = run->kx_ratio;
    sbi::BraggSummary sum;
    with_csv(csv_path, [&](std::ostream& o) { sum = sbi::run_bragg(species->value, r, o); });
    if (summary)
      *summary = {sum.population_upper, sum.population_lower, sum.leakage, sum.max_deviation, sum.norm_drift, sum.area};
  });
}

void sbi_interferometer_scan_defaults(sbi_interferometer_scan* scan) {
  if (!scan) return;
  const sbi::InterferometerScan d;
  *scan = {0,           0.0,         0,
           0.0,         d.points,    d.half_time,
           d.kx_ratio,  d.initial_m, d.numerical,
           d.pipeline.rabi_ratio, d.pipeline.truncation, d.pipeline.refinement};
}

sbi_status sbi_run_interferometer_scan(const sbi_species* species, const sbi_interferometer_scan* scan,
                                       const char* csv_path) {
  return guarded([&] {
    require(species, "species");
    require(scan, "scan");
    sbi::InterferometerScan s;
    if (scan->has_field_min) s.field_min = scan->field_min;
    if (scan->has_field_max) s.field_max = scan->field_max;
    s.points = scan->points;
    s.half_time = scan->half_time;
    s.kx_ratio = scan->kx_ratio;
    s.initial_m = scan->initial_m;
    s.numerical = scan->numerical != 0;
    s.pipeline = {scan->rabi_ratio, scan->truncation, scan->refinement};
    with_csv(csv_path, [&](std::ostream& o) { sbi::run_interferometer_scan(species->value, s, o); });
  });
}

} // extern "C"
