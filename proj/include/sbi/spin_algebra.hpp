#pragma once

#include <array>
#include <complex>
#include <optional>

namespace sbi {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

enum class Axis { x = 0, y = 1, z = 2 };

// Three-component spinor for F = 1 in the F_z eigenbasis, ordered m = +1, 0, -1.
class SpinState {
public:
  constexpr SpinState() = default;
  constexpr SpinState(cplx plus, cplx zero, cplx minus) : amp_{plus, zero, minus} {}

  // Basis state chi_m for m in {+1, 0, -1}.
  static SpinState basis(int m);

  cplx& operator[](std::size_t i) { return amp_[i]; }
  const cplx& operator[](std::size_t i) const { return amp_[i]; }

  // Amplitude on chi_m.
  cplx component(int m) const;

  double norm2() const;

  SpinState& operator+=(const SpinState& o);
  SpinState& operator-=(const SpinState& o);
  SpinState& operator*=(cplx s);

  friend SpinState operator+(SpinState a, const SpinState& b) { return a += b; }
  friend SpinState operator-(SpinState a, const SpinState& b) { return a -= b; }
  friend SpinState operator*(cplx s, SpinState a) { return a *= s; }
  friend SpinState operator*(SpinState a, cplx s) { return a *= s; }

private:
  std::array<cplx, 3> amp_{};
};

// <a|b>
cplx inner(const SpinState& a, const SpinState& b);
double max_abs_diff(const SpinState& a, const SpinState& b);

// Row-major 3x3 complex operator in the (m = +1, 0, -1) basis.
class SpinMatrix {
public:
  constexpr SpinMatrix() = default;

  static SpinMatrix identity();
  static SpinMatrix zero() { return {}; }

  cplx& operator()(std::size_t r, std::size_t c) { return e_[3 * r + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return e_[3 * r + c]; }

  SpinMatrix dagger() const;
  cplx trace() const;

  SpinMatrix& operator+=(const SpinMatrix& o);
  SpinMatrix& operator-=(const SpinMatrix& o);
  SpinMatrix& operator*=(cplx s);

  friend SpinMatrix operator+(SpinMatrix a, const SpinMatrix& b) { return a += b; }
  friend SpinMatrix operator-(SpinMatrix a, const SpinMatrix& b) { return a -= b; }
  friend SpinMatrix operator-(SpinMatrix a) { return a *= -1.0; }
  friend SpinMatrix operator*(cplx s, SpinMatrix a) { return a *= s; }
  friend SpinMatrix operator*(SpinMatrix a, cplx s) { return a *= s; }
  friend SpinMatrix operator*(const SpinMatrix& a, const SpinMatrix& b);
  friend SpinState operator*(const SpinMatrix& a, const SpinState& v);

private:
  std::array<cplx, 9> e_{};
};

SpinMatrix commutator(const SpinMatrix& a, const SpinMatrix& b);
double max_abs_diff(const SpinMatrix& a, const SpinMatrix& b);
// <a|M|b>
cplx matrix_element(const SpinState& a, const SpinMatrix& m, const SpinState& b);

inline constexpr double hermitian_tolerance = 1e-14;
inline constexpr double unitary_tolerance = 1e-12;

bool is_hermitian(const SpinMatrix& m, double tol = hermitian_tolerance);
bool is_unitary(const SpinMatrix& m, double tol = unitary_tolerance);

struct SpinOperators {
  SpinMatrix x, y, z;
  const SpinMatrix& operator[](Axis a) const;
};

// F_x, F_y, F_z for F = 1 with [F_x, F_y] = i F_z.
const SpinOperators& spin_operators();

// Q_{j,j'} = F_j F_j' + F_j' F_j - (2/3) F(F+1) delta_{jj'} with F = 1.
SpinMatrix quadrupole(Axis j, Axis jp);

// n . F for a real 3-vector n.
SpinMatrix spin_dot(const Vec3& n);

// If m = n . F for some real n (to tolerance), returns n.
std::optional<Vec3> spin_vector_components(const SpinMatrix& m, double tol = 1e-13);

// exp(-i theta n.F) for a unit vector n, via the spin-1 identity
// I + (cos theta - 1)(n.F)^2 - i sin theta (n.F).
SpinMatrix spin_rotation(const Vec3& unit_axis, double theta);

// exp(-i theta H) for Hermitian H. Throws InvalidArgument if H is not
// Hermitian to within 1e-12 per entry. Generators of the form n.F take the
// closed-form path; anything else is evaluated by scaling and squaring.
SpinMatrix mat_exp_antihermitian(const SpinMatrix& h, double theta);

} // namespace sbi
