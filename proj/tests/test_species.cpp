#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sbi/constants.hpp"
#include "sbi/errors.hpp"
#include "sbi/species.hpp"
#include "support.hpp"

#include <fstream>
#include <sstream>
#include <string>

using namespace sbi;

namespace {

std::string shipped_text() {
  std::ifstream in(SBI_DATA_DIR "/rb87.yaml");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string replaced(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

} // namespace

TEST_CASE("shipped data file") {
  const AtomSpecies& rb = test::rb87();
  CHECK(rb.name == "Rb87");
  CHECK(rb.nuclear_spin.twice() == 3);
  CHECK(rb.hyperfine_f.twice() == 2);
  REQUIRE(rb.lines.size() == 2);
  CHECK(rb.line("D1").j_upper.twice() == 1);
  CHECK(rb.line("D2").j_upper.twice() == 3);
  CHECK(rb.line("D1").omega == doctest::Approx(constants::two_pi * 377.107463380e12).epsilon(1e-15));
  CHECK(rb.line("D2").gamma == doctest::Approx(constants::two_pi * 6.0666e6).epsilon(1e-15));
  CHECK_NOTHROW(rb.validate());
}

TEST_CASE("other hyperfine level") {
  const AtomSpecies f2 = test::rb87().with_hyperfine(HalfInt::integer(2));
  CHECK(f2.hyperfine_f.twice() == 4);
  CHECK_THROWS_AS(test::rb87().with_hyperfine(HalfInt::integer(3)), DataError);
}

TEST_CASE("malformed files are data errors") {
  const std::string ok = shipped_text();
  CHECK_NOTHROW(parse_species(ok));
  CHECK_THROWS_AS(parse_species("species: ["), DataError);
  CHECK_THROWS_AS(parse_species(replaced(ok, "format_version: 1", "format_version: 2")), DataError);
  CHECK_THROWS_AS(parse_species(replaced(ok, "omega: angular_THz", "omega: THz")), DataError);
  CHECK_THROWS_AS(parse_species(replaced(ok, "reduced_dipole: e*a0", "reduced_dipole: Cm")), DataError);
  CHECK_THROWS_AS(parse_species(replaced(ok, "F: \"1\"", "F: \"3\"")), DataError);
  CHECK_THROWS_AS(parse_species(replaced(ok, "mass: 1.443160648e-25", "mass: -1")), DataError);
  CHECK_THROWS_AS(parse_species(replaced(ok, "gamma: 5.7500", "gamma: -1")), DataError);
  CHECK_THROWS_AS(parse_species(replaced(ok, "reduced_dipole: 2.99232", "reduced_dipole: 0")), DataError);
  CHECK_THROWS_AS(parse_species(replaced(ok, "J_upper: \"3/2\"", "J_upper: \"1/2\"")), DataError);
  CHECK_THROWS_AS(parse_species(replaced(ok, "I: \"3/2\"", "I: \"three halves\"")), DataError);
  CHECK_THROWS_AS(load_species("/nonexistent/rb.yaml"), DataError);
}

TEST_CASE("line lookup") {
  CHECK_THROWS_AS(test::rb87().line("D3"), DataError);
}
