#include "sbi/species.hpp"

#include "sbi/constants.hpp"
#include "sbi/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace sbi {

void AtomSpecies::validate() const {
  if (name.empty()) throw DataError("species: empty name");
  if (!(mass > 0.0)) throw DataError("species " + name + ": mass must be positive");
  if (nuclear_spin.twice() % 2 == 0 && hyperfine_f.twice() % 2 != 0)
    throw DataError("species " + name + ": F must be integer when I is integer");
  const int two_f = hyperfine_f.twice();
  const int two_i = nuclear_spin.twice();
  if (two_f != two_i - 1 && two_f != two_i + 1)
    throw DataError("species " + name + ": F = " + hyperfine_f.to_string() + " is not I +- 1/2");
  if (lines.empty()) throw DataError("species " + name + ": no transition lines");
  bool has_d1 = false, has_d2 = false;
  for (const auto& l : lines) {
    if (!(l.omega > 0.0)) throw DataError("line " + l.label + ": omega must be positive");
    if (!(l.gamma >= 0.0)) throw DataError("line " + l.label + ": gamma must be non-negative");
    if (!(l.reduced_dipole > 0.0)) throw DataError("line " + l.label + ": reduced dipole must be positive");
    if (l.j_upper.twice() != 1 && l.j_upper.twice() != 3)
      throw DataError("line " + l.label + ": J' must be 1/2 or 3/2");
    has_d1 |= l.j_upper.twice() == 1;
    has_d2 |= l.j_upper.twice() == 3;
  }
  if (!has_d1 || !has_d2) throw DataError("species " + name + ": both a J'=1/2 and a J'=3/2 line are required");
}

const TransitionLine& AtomSpecies::line(std::string_view label) const {
  for (const auto& l : lines)
    if (l.label == label) return l;
  throw DataError("species " + name + ": no line labelled '" + std::string(label) + "'");
}

AtomSpecies AtomSpecies::with_hyperfine(HalfInt f) const {
  AtomSpecies s = *this;
  s.hyperfine_f = f;
  s.validate();
  return s;
}

namespace {

template <typename T>
T required(const YAML::Node& node, const char* key, const std::string& where) {
  const auto child = node[key];
  if (!child) throw DataError(where + ": missing key '" + key + "'");
  try {
    return child.as<T>();
  } catch (const YAML::Exception& e) {
    throw DataError(where + ": bad value for '" + key + "': " + e.what());
  }
}

HalfInt required_half(const YAML::Node& node, const char* key, const std::string& where) {
  const auto text = required<std::string>(node, key, where);
  try {
    return HalfInt::parse(text);
  } catch (const Error& e) {
    throw DataError(where + ": '" + key + "': " + e.what());
  }
}

void expect_unit(const YAML::Node& units, const char* key, const char* expected) {
  const auto got = required<std::string>(units, key, "units");
  if (got != expected)
    throw DataError(std::string("units.") + key + ": expected '" + expected + "', got '" + got + "'");
}

} // namespace

AtomSpecies parse_species(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw DataError(std::string("atomic data: parse error: ") + e.what());
  }
  if (!root.IsMap()) throw DataError("atomic data: top level must be a mapping");

  const int version = required<int>(root, "format_version", "atomic data");
  if (version != 1) throw DataError("atomic data: unsupported format_version " + std::to_string(version));

  const auto units = root["units"];
  if (!units) throw DataError("atomic data: missing 'units' block");
  expect_unit(units, "mass", "kg");
  expect_unit(units, "omega", "angular_THz");
  expect_unit(units, "reduced_dipole", "e*a0");
  expect_unit(units, "gamma", "angular_MHz");

  const auto sp = root["species"];
  if (!sp || !sp.IsMap()) throw DataError("atomic data: missing 'species' mapping");

  AtomSpecies s;
  s.name = required<std::string>(sp, "name", "species");
  s.mass = required<double>(sp, "mass", "species");
  s.nuclear_spin = required_half(sp, "I", "species");
  s.hyperfine_f = required_half(sp, "F", "species");
  s.g_j = required<double>(sp, "g_J", "species");
  s.g_i = required<double>(sp, "g_I", "species");

  const auto lines = sp["lines"];
  if (!lines || !lines.IsSequence()) throw DataError("species: 'lines' must be a sequence");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto node = lines[i];
    const std::string where = "lines[" + std::to_string(i) + "]";
    TransitionLine l;
    l.label = required<std::string>(node, "label", where);
    l.j_upper = required_half(node, "J_upper", where);
    // angular_THz / angular_MHz: value is nu, stored quantity is 2 pi nu.
    l.omega = constants::two_pi * constants::terahertz * required<double>(node, "omega", where);
    l.reduced_dipole = required<double>(node, "reduced_dipole", where);
    l.gamma = constants::two_pi * constants::megahertz * required<double>(node, "gamma", where);
    s.lines.push_back(std::move(l));
  }
  s.validate();
  return s;
}

AtomSpecies load_species(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open atomic data file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_species(buf.str());
}

} // namespace sbi
