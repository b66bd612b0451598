// Acceptance run: one PASS/FAIL line per criterion, with the measured value,
// the pinned tolerance and the wall time. Exits 1 if any criterion fails.

#include "sbi/bragg_dynamics.hpp"
#include "sbi/constants.hpp"
#include "sbi/interferometer.hpp"
#include "sbi/polarizability.hpp"
#include "sbi/scans.hpp"
#include "sbi/species.hpp"
#include "sbi/wigner.hpp"

#include <algorithm>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sbi;

namespace {

const cplx I{0.0, 1.0};

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

const AtomSpecies& rb87() {
  static const AtomSpecies s = load_species(SBI_DATA_DIR "/rb87.yaml");
  return s;
}

double thz(double v) { return constants::two_pi * constants::terahertz * v; }

double omega0() { return find_scalar_zero(rb87(), default_zero_bracket(rb87())); }

// Least-squares slope of log|y| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> decade(double lo, int points) {
  std::vector<double> v;
  for (int i = 0; i < points; ++i) v.push_back(lo * std::pow(10.0, i / double(points - 1)));
  return v;
}

FieldConfig field(double e_y) {
  InterferometerScan scan;
  return make_field(rb87(), scan, e_y);
}

double weak_bound() { return field(0.0).weak_field_bound(); }

struct Chain {
  double k0 = lattice_wavevector(rb87());
  double recoil = recoil_energy(k0, rb87().mass);

  LadderState input(int truncation) const {
    return LadderState::single_rung(SpinState::basis(1), -truncation - 1, truncation, k0, k0, rb87().mass);
  }
  PulseSpec pulse(PulseKind kind, double ratio) const {
    const double rabi = ratio * recoil / constants::hbar;
    return kind == PulseKind::beam_splitter ? PulseSpec::beam_splitter(rabi, k0) : PulseSpec::beam_reflector(rabi, k0);
  }
};

Outcome c1() {
  const double offset = (omega0() - d1_line(rb87()).omega) / thz(1.0);
  const double rel = std::abs(offset - 1.61842) / 1.61842;
  return {rel <= 5e-3, fmt("offset=%.6f THz target=1.61842 THz rel.err=%.3e tol=5e-3", offset, rel)};
}

Outcome c2() {
  const double av = vector_polarizability(omega0(), rb87()).value;
  const double rel = std::abs(av - (-5339.29)) / 5339.29;
  return {rel <= 1e-2, fmt("alpha_v(omega0)=%.3f a0^3 target=-5339.29 rel.err=%.3e tol=1e-2", av, rel)};
}

Outcome c3() {
  const double w1 = d2_line(rb87()).omega - thz(2.92011);
  const double theta = reflector_geometry(omega0(), w1);
  const double err = std::abs(theta - 0.116496);
  return {err <= 1e-4, fmt("theta1=%.6f rad target=0.116496 abs.err=%.3e tol=1e-4", theta, err)};
}

Outcome c4() {
  const auto& [vt, vr] = bs_unitaries();
  const auto& f = spin_operators();
  const SpinMatrix qyy = quadrupole(Axis::y, Axis::y);
  const SpinMatrix vt2 = vt * vt, vr2 = vr * vr;
  const double tol = 1e-12;

  const double e_sum = max_abs_diff(vt2 + vr2, SpinMatrix::identity());
  const double e_comm = max_abs_diff(commutator(vt, vr), SpinMatrix::zero());
  const RungBlock bs = bs_block();
  const RungBlock prod = bs.dagger() * bs;
  const double e_unit = std::max({max_abs_diff(prod.a00, SpinMatrix::identity()), max_abs_diff(prod.a01, SpinMatrix::zero()),
                                  max_abs_diff(prod.a10, SpinMatrix::zero()), max_abs_diff(prod.a11, SpinMatrix::identity())});
  const double e_prod = max_abs_diff(vt2 * vr2, (1.0 / 6.0) * SpinMatrix::identity() + (1.0 / 8.0) * qyy);
  const double e_elem = std::abs(matrix_element(SpinState::basis(1), vt2 * vr2, SpinState::basis(1)) - 1.0 / 8.0);

  // F-vector identity, componentwise
  const SpinMatrix fj[3] = {f.x, f.y, f.z};
  const double c = -1.0 / (4.0 * std::sqrt(2.0));
  const SpinMatrix expected[3] = {c * (I * quadrupole(Axis::y, Axis::z)), SpinMatrix::zero(),
                                  c * (f.z - I * quadrupole(Axis::x, Axis::y))};
  double e_f[3];
  for (int j = 0; j < 3; ++j) e_f[j] = max_abs_diff(vt2 * vr * fj[j] * vr - vt * fj[j] * vt * vr2, expected[j]);

  const bool pass = e_sum <= tol && e_comm <= tol && e_unit <= tol && e_prod <= tol && e_elem <= tol && e_f[0] <= tol &&
                    e_f[1] <= tol && e_f[2] <= tol;
  return {pass, fmt("VT2+VR2 %.1e, [VT,VR] %.1e, BS unitary %.1e, VT2VR2 %.1e, <1|VT2VR2|1>-1/8 %.1e, "
                    "F-identity x %.1e y %.1e z %.1e; tol=1e-12",
                    e_sum, e_comm, e_unit, e_prod, e_elem, e_f[0], e_f[1], e_f[2])};
}

Outcome c5() {
  const Chain ch;
  const int truncation = 8; // rungs [-9, 8]
  double d_bs[3], d_br[3], drift = 0.0;
  const double ratios[3] = {0.1, 0.03, 0.01};
  for (int i = 0; i < 3; ++i) {
    const LadderState in = ch.input(truncation);
    const LadderState bs = propagate_chain(in, ch.pulse(PulseKind::beam_splitter, ratios[i]), 1);
    const LadderState br = propagate_chain(in, ch.pulse(PulseKind::beam_reflector, ratios[i]), 1);
    d_bs[i] = max_abs_diff(rung_pair(bs), analytic_bs(rung_pair(in)));
    d_br[i] = max_abs_diff_up_to_phase(rung_pair(br), analytic_br(rung_pair(in)));
    drift = std::max({drift, std::abs(bs.norm2() - 1.0), std::abs(br.norm2() - 1.0)});
  }
  const bool monotone = d_bs[0] > d_bs[1] && d_bs[1] > d_bs[2] && d_br[0] > d_br[1] && d_br[1] > d_br[2];
  const bool pass = d_bs[2] < 2e-3 && d_br[2] < 2e-3 && drift <= 1e-10 && monotone;
  return {pass, fmt("rungs [-9,8]; BS dev %.2e/%.2e/%.2e, BR dev %.2e/%.2e/%.2e at ratio 0.1/0.03/0.01 "
                    "(tol 2e-3 at 0.01, monotone=%s); norm drift %.1e tol=1e-10",
                    d_bs[0], d_bs[1], d_bs[2], d_br[0], d_br[1], d_br[2], monotone ? "yes" : "no", drift)};
}

Outcome c6() {
  const double s = std::sin(constants::pi / 8.0), c = std::cos(constants::pi / 8.0);
  const double oracle = c * c * c * c + s * s * s * s;
  const RungPair a = analytic_bs({SpinState::basis(1), {}});
  const double e_an = std::max(std::abs(a.upper.norm2() - oracle), std::abs(a.lower.norm2() - (1.0 - oracle)));

  const Chain ch;
  const LadderState out = propagate_chain(ch.input(3), ch.pulse(PulseKind::beam_splitter, 0.01), 1);
  const double p0 = out.rung_population(0), pm = out.rung_population(-1);
  const double e_num = std::max(std::abs(p0 - 0.75), std::abs(pm - 0.25));
  const bool pass = std::abs(oracle - 0.75) < 1e-15 && e_an < 1e-15 && e_num <= 2e-3;
  return {pass, fmt("cos^4+sin^4=%.16f; analytic err %.1e; numerical (P0,P-1)=(%.6f,%.6f) err %.2e tol=2e-3", oracle,
                    e_an, p0, pm, e_num)};
}

Outcome c7() {
  const auto r = run_interferometer(field(0.0), SpinState::basis(1));
  const double e_c = std::sqrt(r.p_c);
  const double e_d = max_abs_diff(r.x_d, -I * SpinState::basis(1));
  return {e_c <= 1e-12 && e_d <= 1e-12, fmt("|X_c|=%.1e, |X_d + i chi_1|max=%.1e tol=1e-12", e_c, e_d)};
}

Outcome c8() {
  const double b = weak_bound();
  const FieldConfig f = field(1e-3 * b);
  const double exact = ac_phase_exact(f, SpinState::basis(1));
  const double lin = ac_phase_linear(f);
  const double rel = std::abs(exact - lin) / std::abs(lin);

  const auto xs = decade(1e-3, 6);
  std::vector<double> es, res, flipped, quad;
  for (double x : xs) {
    const FieldConfig g = field(x * b);
    es.push_back(x * b);
    res.push_back(ac_phase_exact(g, SpinState::basis(1)) - ac_phase_linear(g));
    flipped.push_back(ac_phase_exact(g, SpinState::basis(1)) + ac_phase_linear(g));
    quad.push_back(ac_phase_exact(g, SpinState::basis(0)));
  }
  const double p_res = loglog_slope(es, res);
  double quad_max = 0.0;
  for (double q : quad) quad_max = std::max(quad_max, std::abs(q));
  // A phase that is zero to rounding has no scaling exponent.
  const bool quad_fit = quad_max > 1e-14;
  const double p_quad = quad_fit ? loglog_slope(es, quad) : std::nan("");
  const bool pass = rel <= 1e-3 && std::abs(p_res - 3.0) <= 0.1 && quad_fit && std::abs(p_quad - 2.0) <= 0.05;
  const std::string quad_text =
      quad_fit ? fmt("chi_0 exponent %.3f (2.0+-0.05)", p_quad)
               : fmt("chi_0 phase identically zero (max |phi| %.1e), no quadratic term to fit", quad_max);
  // diagnostic only: agreement once the closed form's sign is reversed
  const double rel_flip = std::abs(exact + lin) / std::abs(lin);
  return {pass, fmt("at 1e-3 bound: exact=%.9e linear=%.9e rel.diff=%.3e tol=1e-3; residual exponent %.3f (3.0+-0.1); "
                    "%s [against -linear: rel.diff %.3e, exponent %.3f]",
                    exact, lin, rel, p_res, quad_text.c_str(), rel_flip, loglog_slope(es, flipped))};
}

Outcome c9() {
  const double b = weak_bound();
  const auto xs = decade(1e-4, 6);
  std::vector<double> es, res, flipped;
  for (double x : xs) {
    const FieldConfig g = field(x * b);
    const WMatrices w = w_matrices(g);
    const cplx elem = matrix_element(SpinState::basis(1), w.ad.dagger() * w.bd, SpinState::basis(1));
    const cplx formula = 1.0 / 8.0 + I * ac_phase_linear(g) / 8.0;
    es.push_back(x * b);
    res.push_back(std::abs(elem - formula));
    flipped.push_back(std::abs(elem - std::conj(formula)));
  }
  const double p = loglog_slope(es, res);
  const double rel_first = res.front() / (std::abs(ac_phase_linear(field(es.front()))) / 8.0);
  const bool pass = std::abs(p - 2.0) <= 0.1;
  return {pass, fmt("residual exponent %.3f (want 2, O(E^2)); residual/first-order term at 1e-4 bound = %.3f "
                    "[against 1/8 - i phi_lin/8: exponent %.3f]",
                    p, rel_first, loglog_slope(es, flipped))};
}

Outcome c10() {
  // 6-j symmetries
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> jd(0, 9);
  auto tri = [](int a, int b, int c) { return c <= a + b && c >= std::abs(a - b) && (a + b + c) % 2 == 0; };
  auto sixj = [](const int t[6]) {
    return wigner6j(HalfInt::from_twice(t[0]), HalfInt::from_twice(t[1]), HalfInt::from_twice(t[2]),
                    HalfInt::from_twice(t[3]), HalfInt::from_twice(t[4]), HalfInt::from_twice(t[5]));
  };
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  double e_sym = 0.0;
  int sets = 0;
  while (sets < 100) {
    const int t[6] = {jd(rng), jd(rng), jd(rng), jd(rng), jd(rng), jd(rng)};
    if (!(tri(t[0], t[1], t[2]) && tri(t[0], t[4], t[5]) && tri(t[3], t[1], t[5]) && tri(t[3], t[4], t[2]))) continue;
    const double ref = sixj(t);
    for (const auto& p : perms)
      for (int flip = 0; flip < 4; ++flip) {
        int u[6] = {t[p[0]], t[p[1]], t[p[2]], t[3 + p[0]], t[3 + p[1]], t[3 + p[2]]};
        // flip 0: none; 1..3: swap upper/lower in the two columns other than flip-1
        if (flip > 0)
          for (int col = 0; col < 3; ++col)
            if (col != flip - 1) std::swap(u[col], u[3 + col]);
        e_sym = std::max(e_sym, std::abs(sixj(u) - ref));
      }
    ++sets;
  }

  // exponential group law
  std::normal_distribution<double> g;
  double e_group = 0.0;
  for (int k = 0; k < 100; ++k) {
    SpinMatrix a;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) a(r, c) = {g(rng), g(rng)};
    const SpinMatrix h = 0.5 * (a + a.dagger());
    const double t1 = g(rng), t2 = g(rng);
    e_group = std::max(e_group, max_abs_diff(mat_exp_antihermitian(h, t1) * mat_exp_antihermitian(h, t2),
                                             mat_exp_antihermitian(h, t1 + t2)));
  }

  // P_c + P_d = 1 on random fields and spinors
  const double b = weak_bound();
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double e_prob = 0.0;
  for (int k = 0; k < 200; ++k) {
    FieldConfig f = field(0.0);
    f.electric_field = {u(rng) * b, u(rng) * b, u(rng) * b};
    SpinState chi{{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}};
    chi = (1.0 / std::sqrt(chi.norm2())) * chi;
    const auto r = run_interferometer(f, chi);
    e_prob = std::max(e_prob, std::abs(r.p_c + r.p_d - 1.0));
  }

  // deterministic CSV
  InterferometerScan scan;
  scan.points = 41;
  std::ostringstream o1, o2;
  run_interferometer_scan(rb87(), scan, o1);
  run_interferometer_scan(rb87(), scan, o2);
  PolarizabilityScan pscan;
  std::ostringstream p1, p2;
  run_polarizability_scan(rb87(), pscan, p1);
  run_polarizability_scan(rb87(), pscan, p2);
  const bool same = o1.str() == o2.str() && p1.str() == p2.str();

  const bool pass = e_sym <= 1e-13 && e_group <= 1e-12 && e_prob <= 1e-10 && same;
  return {pass, fmt("6-j symmetries %.1e (tol 1e-13), group law %.1e (tol 1e-12), |P_c+P_d-1| %.1e (tol 1e-10), "
                    "CSV byte-identical=%s",
                    e_sym, e_group, e_prob, same ? "yes" : "no")};
}

} // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "omega0 reproduction", 1.0, c1},
      {2, "alpha_v(omega0)", 1.0, c2},
      {3, "reflector angle theta1", 1.0, c3},
      {4, "algebraic identities", 1.0, c4},
      {5, "chain vs analytic pulses", 30.0, c5},
      {6, "BS split ratio", 1.0, c6},
      {7, "zero-field interferometer", 1.0, c7},
      {8, "AC phase linear regime", 5.0, c8},
      {9, "first-order matrix element", 1.0, c9},
      {10, "property suites", 10.0, c10},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt <= c.time_limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %2d %-28s %s  %s; runtime %.2f s (limit %.0f s%s)\n", c.id, c.name, pass ? "PASS" : "FAIL",
                o.detail.c_str(), dt, c.time_limit_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
