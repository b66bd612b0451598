#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sbi/csv.hpp"
#include "sbi/errors.hpp"
#include "sbi/scans.hpp"
#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <vector>

using namespace sbi;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t columns(const std::string& row) { return static_cast<std::size_t>(std::count(row.begin(), row.end(), ',')) + 1; }

} // namespace

TEST_CASE("number formatting") {
  CHECK(csv::format(1.0) == "1.00000000000e+00");
  CHECK(csv::format(-0.0) == "0.00000000000e+00");
  CHECK(csv::format(-1234.5678) == "-1.23456780000e+03");
  CHECK(csv::format(std::optional<double>{}).empty());
}

TEST_CASE("config digest") {
  CHECK(csv::config_digest("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(csv::config_digest("a") != csv::config_digest("b"));
}

TEST_CASE("parallel_for") {
  std::vector<int> out(257, -1);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i * i % 101); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i % 101));

  std::atomic<int> seen{0};
  CHECK_THROWS_WITH_AS(parallel_for(50,
                                    [&](std::size_t i) {
                                      ++seen;
                                      if (i == 7 || i == 30) throw NumericalError("point " + std::to_string(i));
                                    }),
                       "point 7", NumericalError);
  CHECK(seen == 50);
  parallel_for(0, [](std::size_t) { FAIL("called"); });
}

TEST_CASE("polarizability scan") {
  PolarizabilityScan scan;
  scan.points = 25;
  std::ostringstream a, b;
  const auto sum = run_polarizability_scan(test::rb87(), scan, a);
  run_polarizability_scan(test::rb87(), scan, b);
  CHECK(a.str() == b.str());
  const auto rows = lines(a.str());
  REQUIRE(rows.size() == 27);
  CHECK(rows[0].rfind("# config_digest=", 0) == 0);
  CHECK(rows[1] == "offset_THz,alpha_s_a0^3,alpha_v_a0^3");
  CHECK(rows[2].rfind("5.00000000000e-01,", 0) == 0);
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(columns(rows[i]) == 3);
  CHECK(sum.omega0_offset_thz == doctest::Approx(2.36276).epsilon(1e-5));

  scan.points = 26;
  std::ostringstream c;
  run_polarizability_scan(test::rb87(), scan, c);
  CHECK(lines(c.str())[0] != rows[0]);

  scan.points = 1;
  CHECK_THROWS_AS(run_polarizability_scan(test::rb87(), scan, c), UsageError);
  scan = {};
  scan.offset_max_thz = scan.offset_min_thz;
  CHECK_THROWS_AS(run_polarizability_scan(test::rb87(), scan, c), UsageError);
}

TEST_CASE("bragg run") {
  BraggRun run;
  run.rabi_ratio = 0.1;
  run.truncation = 2;
  run.samples = 10;
  std::ostringstream a, b;
  const auto sum = run_bragg(test::rb87(), run, a);
  run_bragg(test::rb87(), run, b);
  CHECK(a.str() == b.str());
  const auto rows = lines(a.str());
  CHECK(rows[1] == "t_s,n,m,re_X,im_X,abs2_X");
  CHECK(rows.back().rfind("# final P_0=", 0) == 0);
  // (samples + 1) time points, 6 rungs, 3 spin components
  CHECK(rows.size() == 2 + 11 * 6 * 3 + 1);
  CHECK(sum.population_upper + sum.population_lower + sum.leakage == doctest::Approx(1.0).epsilon(1e-9));

  SUBCASE("zero Rabi frequency needs a duration") {
    run.rabi_ratio = 0.0;
    CHECK_THROWS_AS(run_bragg(test::rb87(), run, a), UsageError);
    run.duration = 1e-4;
    std::ostringstream o;
    const auto still = run_bragg(test::rb87(), run, o);
    CHECK(still.population_upper == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("interferometer scan") {
  InterferometerScan scan;
  scan.points = 11;
  std::ostringstream a, b;
  run_interferometer_scan(test::rb87(), scan, a);
  run_interferometer_scan(test::rb87(), scan, b);
  CHECK(a.str() == b.str());
  const auto rows = lines(a.str());
  REQUIRE(rows.size() == 13);
  CHECK(rows[1] == "E_y_V_per_m,P_c,P_d,phi_exact_rad,phi_linear_rad,validity_ratio");
  // The middle row is E_y = 0.
  CHECK(rows[7].rfind("0.00000000000e+00,", 0) == 0);
  CHECK(rows[7].find(",1.00000000000e+00,0.00000000000e+00,0.00000000000e+00,") != std::string::npos);

  SUBCASE("m = 0 phases are all defined") {
    // m = 0 at E = 0 has a real positive interference term; the phase is defined.
    scan.initial_m = 0;
    std::ostringstream o;
    run_interferometer_scan(test::rb87(), scan, o);
    for (const auto& r : lines(o.str())) CHECK(r.find(",,") == std::string::npos);
  }

  scan.field_min = 1.0;
  scan.field_max = -1.0;
  CHECK_THROWS_AS(run_interferometer_scan(test::rb87(), scan, a), UsageError);
}
