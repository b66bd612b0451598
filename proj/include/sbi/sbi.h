/* C interface to the spin-dependent beam-splitter interferometer library.
 *
 * Every function returns an sbi_status; on failure a message is available from
 * sbi_last_error() on the calling thread until the next failing call there.
 * Frequencies are angular (rad/s), polarizabilities in a0^3, fields in V/m.
 */
#ifndef SBI_SBI_H
#define SBI_SBI_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SBI_BUILDING_LIBRARY)
#define SBI_API __attribute__((visibility("default")))
#else
#define SBI_API
#endif

typedef enum sbi_status {
  SBI_OK = 0,
  SBI_ERR_USAGE = 1,
  SBI_ERR_DATA = 2,
  SBI_ERR_NUMERICAL = 3,
  SBI_ERR_INVALID_ARGUMENT = 4,
  SBI_ERR_UNDEFINED_PHASE = 5,
  SBI_ERR_INTERNAL = 6,
  SBI_ERR_IO = 7
} sbi_status;

typedef enum sbi_pulse_kind { SBI_BEAM_SPLITTER = 0, SBI_BEAM_REFLECTOR = 1 } sbi_pulse_kind;

SBI_API const char* sbi_last_error(void);
SBI_API const char* sbi_version(void);

/* Atomic data */
typedef struct sbi_species sbi_species;

SBI_API sbi_status sbi_species_load(const char* path, sbi_species** out);
SBI_API sbi_status sbi_species_parse(const char* yaml_text, sbi_species** out);
/* Copy of the species in hyperfine level F = twice_f / 2. */
SBI_API sbi_status sbi_species_with_hyperfine(const sbi_species* species, int twice_f, sbi_species** out);
SBI_API void sbi_species_free(sbi_species* species);
SBI_API sbi_status sbi_species_line_omega(const sbi_species* species, const char* label, double* omega);

/* Polarizability */
SBI_API sbi_status sbi_scalar_polarizability(const sbi_species* species, double omega, double* alpha,
                                             int* near_resonance);
SBI_API sbi_status sbi_vector_polarizability(const sbi_species* species, double omega, double* alpha,
                                             int* near_resonance);
/* lo = hi = 0 selects the default bracket between the D lines. */
SBI_API sbi_status sbi_find_scalar_zero(const sbi_species* species, double lo, double hi, double* omega0);
SBI_API sbi_status sbi_reflector_geometry(double omega0, double omega1, double* theta1);
SBI_API sbi_status sbi_pulse_rabi_frequency(sbi_pulse_kind kind, const sbi_species* species, double omega,
                                            double e0, double* rabi);

/* Interferometer, single field point */
typedef struct sbi_field {
  double electric_field[3]; /* V/m */
  double half_time;         /* T, s */
  double kx_ratio;          /* k_x / K0 */
} sbi_field;

typedef struct sbi_interferometer_result {
  double x_c[6]; /* (re, im) for m = +1, 0, -1 */
  double x_d[6];
  double p_c;
  double p_d;
  double phi_exact;
  int phi_defined; /* 0 when the interference term vanishes */
  double phi_linear;
  double validity_ratio;
} sbi_interferometer_result;

/* chi: (re, im) pairs for m = +1, 0, -1, normalized. */
SBI_API sbi_status sbi_interferometer_run(const sbi_species* species, const sbi_field* field, const double chi[6],
                                          sbi_interferometer_result* out);

/* Scans writing CSV; csv_path NULL or "-" writes to standard output. */
typedef struct sbi_polarizability_scan {
  double offset_min_thz;
  double offset_max_thz;
  int points;
} sbi_polarizability_scan;

typedef struct sbi_polarizability_summary {
  double omega0;
  double omega0_offset_thz;
  double alpha_v_at_omega0;
} sbi_polarizability_summary;

SBI_API void sbi_polarizability_scan_defaults(sbi_polarizability_scan* scan);
SBI_API sbi_status sbi_run_polarizability_scan(const sbi_species* species, const sbi_polarizability_scan* scan,
                                               const char* csv_path, sbi_polarizability_summary* summary);

typedef struct sbi_bragg_run {
  sbi_pulse_kind kind;
  double rabi_ratio; /* hbar Omega / E_rec */
  int has_duration;
  double duration; /* s, used when has_duration */
  int truncation;
  int refinement;
  int samples;
  int initial_m;
  double kx_ratio;
} sbi_bragg_run;

typedef struct sbi_bragg_summary {
  double population_upper;
  double population_lower;
  double leakage;
  double max_deviation;
  double norm_drift;
  double area;
} sbi_bragg_summary;

SBI_API void sbi_bragg_run_defaults(sbi_bragg_run* run);
SBI_API sbi_status sbi_run_bragg(const sbi_species* species, const sbi_bragg_run* run, const char* csv_path,
                                 sbi_bragg_summary* summary);

typedef struct sbi_interferometer_scan {
  int has_field_min;
  double field_min;
  int has_field_max;
  double field_max;
  int points;
  double half_time;
  double kx_ratio;
  int initial_m;
  int numerical;
  double rabi_ratio;
  int truncation;
  int refinement;
} sbi_interferometer_scan;

SBI_API void sbi_interferometer_scan_defaults(sbi_interferometer_scan* scan);
SBI_API sbi_status sbi_run_interferometer_scan(const sbi_species* species, const sbi_interferometer_scan* scan,
                                               const char* csv_path);

#ifdef __cplusplus
}
#endif

#endif
