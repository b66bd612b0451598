// sbi: polarizability scans, Bragg pulse dynamics and interferometer field scans.
//
//   sbi polarizability [--config run.yaml] [--scan-min THz] [--scan-max THz] [--points N] [--output f.csv]
//   sbi bragg          [--pulse BS|BR] [--rabi-ratio r] [--truncation n] [--initial-m m] ...
//   sbi interferometer [--scan-min V/m] [--scan-max V/m] [--points N] [--numerical] [--initial-m m] ...
//
// Settings come from the YAML config (top-level keys plus a section named after
// the command); flags override them. Exit codes: 0 ok, 1 usage or config,
// 2 atomic data file, 3 numerical failure.

#include "sbi/sbi.h"

#include <CLI11.hpp>
#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#ifndef SBI_DEFAULT_SPECIES_FILE
#define SBI_DEFAULT_SPECIES_FILE "data/rb87.yaml"
#endif

namespace {

enum Exit { ok = 0, usage = 1, data = 2, numerical = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(sbi_status s) {
  switch (s) {
  case SBI_OK: return ok;
  case SBI_ERR_DATA: return data;
  case SBI_ERR_NUMERICAL:
  case SBI_ERR_INTERNAL: return numerical;
  default: return usage;
  }
}

// Values given on the command line; unset ones fall back to the config file.
struct Flags {
  std::string config;
  std::optional<std::string> output;
  std::optional<std::string> species;
  std::optional<double> scan_min;
  std::optional<double> scan_max;
  std::optional<int> points;
  std::optional<double> rabi_ratio;
  std::optional<int> truncation;
  std::optional<int> initial_m;
  std::optional<std::string> pulse;
  bool numerical = false;
};

class Settings {
public:
  Settings(const Flags& flags, const std::string& command) : flags_(flags) {
    if (flags.config.empty()) return;
    try {
      root_ = YAML::LoadFile(flags.config);
    } catch (const YAML::Exception& e) {
      throw ConfigError("config " + flags.config + ": " + e.what());
    }
    if (!root_.IsMap()) throw ConfigError("config " + flags.config + ": top level must be a mapping");
    base_ = std::filesystem::path(flags.config).parent_path();
    if (root_["command"] && root_["command"].as<std::string>() != command)
      throw ConfigError("config is for command '" + root_["command"].as<std::string>() + "', not '" + command + "'");
    section_ = root_[command];
    if (section_ && !section_.IsMap()) throw ConfigError("config section '" + command + "' must be a mapping");
  }

  template <class T>
  std::optional<T> get(const std::string& key) const {
    try {
      if (section_ && section_[key]) return section_[key].as<T>();
      if (root_ && root_[key]) return root_[key].as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError("config key '" + key + "' has the wrong type");
    }
    return std::nullopt;
  }

  template <class T>
  T value(const std::optional<T>& flag, const std::string& key, T fallback) const {
    if (flag) return *flag;
    return get<T>(key).value_or(fallback);
  }

  std::string species_file() const {
    if (flags_.species) return *flags_.species;
    if (auto f = get<std::string>("species_file")) return resolve(*f);
    return SBI_DEFAULT_SPECIES_FILE;
  }

  std::string output() const {
    if (flags_.output) return *flags_.output;
    if (auto f = get<std::string>("output")) return *f;
    return "-";
  }

private:
  std::string resolve(const std::string& p) const {
    const std::filesystem::path path(p);
    return path.is_absolute() ? p : (base_ / path).string();
  }

  const Flags& flags_;
  YAML::Node root_;
  YAML::Node section_;
  std::filesystem::path base_;
};

struct SpeciesHandle {
  sbi_species* ptr = nullptr;
  ~SpeciesHandle() { sbi_species_free(ptr); }
};

int report(sbi_status s) {
  if (s != SBI_OK) std::fprintf(stderr, "sbi: %s\n", sbi_last_error());
  return exit_code(s);
}

// Summaries go to stderr when the CSV itself is on stdout.
FILE* summary_stream(const std::string& output) { return output == "-" ? stderr : stdout; }

int load(const Settings& s, SpeciesHandle& h) {
  const std::string path = s.species_file();
  sbi_status st = sbi_species_load(path.c_str(), &h.ptr);
  if (st != SBI_OK) return report(st);
  if (auto f = s.get<std::string>("hyperfine_f")) {
    const int twice = static_cast<int>(std::lround(2.0 * std::stod(*f)));
    sbi_species* other = nullptr;
    st = sbi_species_with_hyperfine(h.ptr, twice, &other);
    if (st != SBI_OK) return report(st);
    sbi_species_free(h.ptr);
    h.ptr = other;
  }
  return ok;
}

int cmd_polarizability(const Flags& flags) {
  const Settings s(flags, "polarizability");
  SpeciesHandle species;
  if (int rc = load(s, species)) return rc;

  sbi_polarizability_scan scan;
  sbi_polarizability_scan_defaults(&scan);
  scan.offset_min_thz = s.value(flags.scan_min, "scan_min", scan.offset_min_thz);
  scan.offset_max_thz = s.value(flags.scan_max, "scan_max", scan.offset_max_thz);
  scan.points = s.value(flags.points, "points", scan.points);

  const std::string out = s.output();
  sbi_polarizability_summary sum;
  if (sbi_status st = sbi_run_polarizability_scan(species.ptr, &scan, out.c_str(), &sum); st != SBI_OK) return report(st);
  FILE* f = summary_stream(out);
  std::fprintf(f, "omega0_offset_THz=%.11e\n", sum.omega0_offset_thz);
  std::fprintf(f, "omega0_rad_per_s=%.11e\n", sum.omega0);
  std::fprintf(f, "alpha_v_at_omega0_a0^3=%.11e\n", sum.alpha_v_at_omega0);
  return ok;
}

int cmd_bragg(const Flags& flags) {
  const Settings s(flags, "bragg");
  SpeciesHandle species;
  if (int rc = load(s, species)) return rc;

  sbi_bragg_run run;
  sbi_bragg_run_defaults(&run);
  const std::string pulse = s.value<std::string>(flags.pulse, "pulse", "BS");
  if (pulse == "BS")
    run.kind = SBI_BEAM_SPLITTER;
  else if (pulse == "BR")
    run.kind = SBI_BEAM_REFLECTOR;
  else
    throw ConfigError("pulse must be BS or BR, got '" + pulse + "'");
  run.rabi_ratio = s.value(flags.rabi_ratio, "rabi_ratio", run.rabi_ratio);
  if (auto d = s.get<double>("duration")) {
    run.has_duration = 1;
    run.duration = *d;
  }
  run.truncation = s.value(flags.truncation, "truncation", run.truncation);
  run.refinement = s.get<int>("dt_factor").value_or(run.refinement);
  run.samples = s.get<int>("samples").value_or(run.samples);
  run.initial_m = s.value(flags.initial_m, "initial_m", run.initial_m);
  run.kx_ratio = s.get<double>("kx_ratio").value_or(run.kx_ratio);

  const std::string out = s.output();
  sbi_bragg_summary sum;
  if (sbi_status st = sbi_run_bragg(species.ptr, &run, out.c_str(), &sum); st != SBI_OK) return report(st);
  FILE* f = summary_stream(out);
  std::fprintf(f, "P_0=%.11e\nP_-1=%.11e\nleakage=%.11e\nmax_deviation_vs_analytic=%.11e\n", sum.population_upper,
               sum.population_lower, sum.leakage, sum.max_deviation);
  return ok;
}

int cmd_interferometer(const Flags& flags) {
  const Settings s(flags, "interferometer");
  SpeciesHandle species;
  if (int rc = load(s, species)) return rc;

  sbi_interferometer_scan scan;
  sbi_interferometer_scan_defaults(&scan);
  if (auto v = flags.scan_min ? flags.scan_min : s.get<double>("scan_min")) {
    scan.has_field_min = 1;
    scan.field_min = *v;
  }
  if (auto v = flags.scan_max ? flags.scan_max : s.get<double>("scan_max")) {
    scan.has_field_max = 1;
    scan.field_max = *v;
  }
  scan.points = s.value(flags.points, "points", scan.points);
  scan.half_time = s.get<double>("half_time").value_or(scan.half_time);
  scan.kx_ratio = s.get<double>("kx_ratio").value_or(scan.kx_ratio);
  scan.initial_m = s.value(flags.initial_m, "initial_m", scan.initial_m);
  scan.numerical = flags.numerical || s.get<bool>("numerical").value_or(false);
  scan.rabi_ratio = s.value(flags.rabi_ratio, "rabi_ratio", scan.rabi_ratio);
  scan.truncation = s.value(flags.truncation, "truncation", scan.truncation);
  scan.refinement = s.get<int>("dt_factor").value_or(scan.refinement);

  const std::string out = s.output();
  return report(sbi_run_interferometer_scan(species.ptr, &scan, out.c_str()));
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "YAML run configuration")->check(CLI::ExistingFile);
  sub->add_option("--output", f.output, "CSV output path ('-' for stdout)");
  sub->add_option("--species", f.species, "atomic data file (overrides species_file)");
}

void add_scan(CLI::App* sub, Flags& f, const char* unit) {
  sub->add_option("--scan-min", f.scan_min, std::string("scan start, ") + unit);
  sub->add_option("--scan-max", f.scan_max, std::string("scan end, ") + unit);
  sub->add_option("--points", f.points, "number of scan points (>= 2)");
}

void add_dynamics(CLI::App* sub, Flags& f) {
  sub->add_option("--rabi-ratio", f.rabi_ratio, "hbar Omega / E_rec");
  sub->add_option("--truncation", f.truncation, "ladder rungs n in [-t-1, t]");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-dependent optical-lattice beam splitter and Aharonov-Casher interferometer"};
  app.require_subcommand(1);
  Flags flags;

  auto* pol = app.add_subcommand("polarizability", "scalar and vector polarizability scan; prints omega_0");
  add_common(pol, flags);
  add_scan(pol, flags, "THz above D1");

  auto* bragg = app.add_subcommand("bragg", "ladder dynamics through one BS or BR pulse");
  add_common(bragg, flags);
  add_dynamics(bragg, flags);
  bragg->add_option("--pulse", flags.pulse, "BS or BR");
  bragg->add_option("--initial-m", flags.initial_m, "initial spin projection")->check(CLI::Range(-1, 1));

  auto* ifm = app.add_subcommand("interferometer", "Mach-Zehnder output ports and phase versus E_y");
  add_common(ifm, flags);
  add_scan(ifm, flags, "V/m");
  add_dynamics(ifm, flags);
  ifm->add_flag("--numerical", flags.numerical, "propagate the pulses on the momentum ladder");
  ifm->add_option("--initial-m", flags.initial_m, "initial spin projection")->check(CLI::Range(-1, 1));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : usage;
  }

  try {
    if (pol->parsed()) return cmd_polarizability(flags);
    if (bragg->parsed()) return cmd_bragg(flags);
    return cmd_interferometer(flags);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "sbi: %s\n", e.what());
    return usage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "sbi: %s\n", e.what());
    return usage;
  }
}
