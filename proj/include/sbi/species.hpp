#pragma once

#include "sbi/wigner.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sbi {

// One nS_1/2 -> n'P_J' line. Frequencies are angular (rad/s); the reduced
// dipole element is in e*a0.
struct TransitionLine {
  std::string label;
  HalfInt j_upper;
  double omega = 0.0;
  double reduced_dipole = 0.0;
  double gamma = 0.0;
};

// Alkali atom in a ground hyperfine level F of the J = 1/2 ground state.
struct AtomSpecies {
  std::string name;
  double mass = 0.0; // kg
  HalfInt nuclear_spin;
  HalfInt hyperfine_f;
  double g_j = 0.0;
  double g_i = 0.0;
  std::vector<TransitionLine> lines;

  static constexpr HalfInt electronic_j = HalfInt::from_twice(1);

  // Throws DataError when an invariant does not hold.
  void validate() const;

  // Throws DataError if the label is absent.
  const TransitionLine& line(std::string_view label) const;

  // Same atom in the other ground hyperfine level (F -> I +- 1/2).
  AtomSpecies with_hyperfine(HalfInt f) const;
};

// Parses the structured-text (YAML) atomic data format. Throws DataError.
AtomSpecies parse_species(std::string_view text);
AtomSpecies load_species(const std::filesystem::path& path);

} // namespace sbi
