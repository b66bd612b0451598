#pragma once

#include "sbi/species.hpp"
#include "sbi/spin_algebra.hpp"

#include <random>

namespace sbi::test {

inline const AtomSpecies& rb87() {
  static const AtomSpecies s = load_species(SBI_DATA_DIR "/rb87.yaml");
  return s;
}

inline SpinState random_spinor(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  SpinState s{{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}};
  return (1.0 / std::sqrt(s.norm2())) * s;
}

inline SpinMatrix random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  SpinMatrix a;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) a(r, c) = {g(rng), g(rng)};
  return 0.5 * (a + a.dagger());
}

} // namespace sbi::test
