#include "sbi/spin_algebra.hpp"

#include "sbi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sbi {

namespace {
constexpr cplx I{0.0, 1.0};
} // namespace

SpinState SpinState::basis(int m) {
  if (m < -1 || m > 1) throw InvalidArgument("spin projection must be -1, 0 or +1, got " + std::to_string(m));
  SpinState s;
  s.amp_[static_cast<std::size_t>(1 - m)] = 1.0;
  return s;
}

cplx SpinState::component(int m) const {
  if (m < -1 || m > 1) throw InvalidArgument("spin projection must be -1, 0 or +1, got " + std::to_string(m));
  return amp_[static_cast<std::size_t>(1 - m)];
}

double SpinState::norm2() const {
  return std::norm(amp_[0]) + std::norm(amp_[1]) + std::norm(amp_[2]);
}

SpinState& SpinState::operator+=(const SpinState& o) {
  for (std::size_t i = 0; i < 3; ++i) amp_[i] += o.amp_[i];
  return *this;
}

SpinState& SpinState::operator-=(const SpinState& o) {
  for (std::size_t i = 0; i < 3; ++i) amp_[i] -= o.amp_[i];
  return *this;
}

SpinState& SpinState::operator*=(cplx s) {
  for (auto& a : amp_) a *= s;
  return *this;
}

cplx inner(const SpinState& a, const SpinState& b) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < 3; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double max_abs_diff(const SpinState& a, const SpinState& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

SpinMatrix SpinMatrix::identity() {
  SpinMatrix m;
  for (std::size_t i = 0; i < 3; ++i) m(i, i) = 1.0;
  return m;
}

SpinMatrix SpinMatrix::dagger() const {
  SpinMatrix d;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) d(r, c) = std::conj((*this)(c, r));
  return d;
}

cplx SpinMatrix::trace() const { return e_[0] + e_[4] + e_[8]; }

SpinMatrix& SpinMatrix::operator+=(const SpinMatrix& o) {
  for (std::size_t i = 0; i < 9; ++i) e_[i] += o.e_[i];
  return *this;
}

SpinMatrix& SpinMatrix::operator-=(const SpinMatrix& o) {
  for (std::size_t i = 0; i < 9; ++i) e_[i] -= o.e_[i];
  return *this;
}

SpinMatrix& SpinMatrix::operator*=(cplx s) {
  for (auto& x : e_) x *= s;
  return *this;
}

SpinMatrix operator*(const SpinMatrix& a, const SpinMatrix& b) {
  SpinMatrix p;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < 3; ++k) acc += a(r, k) * b(k, c);
      p(r, c) = acc;
    }
  return p;
}

SpinState operator*(const SpinMatrix& a, const SpinState& v) {
  SpinState out;
  for (std::size_t r = 0; r < 3; ++r) out[r] = a(r, 0) * v[0] + a(r, 1) * v[1] + a(r, 2) * v[2];
  return out;
}

SpinMatrix commutator(const SpinMatrix& a, const SpinMatrix& b) { return a * b - b * a; }

double max_abs_diff(const SpinMatrix& a, const SpinMatrix& b) {
  double d = 0.0;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) d = std::max(d, std::abs(a(r, c) - b(r, c)));
  return d;
}

cplx matrix_element(const SpinState& a, const SpinMatrix& m, const SpinState& b) { return inner(a, m * b); }

bool is_hermitian(const SpinMatrix& m, double tol) { return max_abs_diff(m, m.dagger()) <= tol; }

bool is_unitary(const SpinMatrix& m, double tol) {
  return max_abs_diff(m.dagger() * m, SpinMatrix::identity()) <= tol;
}

const SpinMatrix& SpinOperators::operator[](Axis a) const {
  switch (a) {
  case Axis::x: return x;
  case Axis::y: return y;
  case Axis::z: return z;
  }
  return z;
}

const SpinOperators& spin_operators() {
  static const SpinOperators ops = [] {
    const double s = 1.0 / std::sqrt(2.0);
    SpinOperators f;
    // Rows/columns ordered m = +1, 0, -1.
    f.x(0, 1) = s;
    f.x(1, 0) = s;
    f.x(1, 2) = s;
    f.x(2, 1) = s;

    f.y(0, 1) = -I * s;
    f.y(1, 0) = I * s;
    f.y(1, 2) = -I * s;
    f.y(2, 1) = I * s;

    f.z(0, 0) = 1.0;
    f.z(2, 2) = -1.0;
    return f;
  }();
  return ops;
}

SpinMatrix quadrupole(Axis j, Axis jp) {
  const auto& f = spin_operators();
  SpinMatrix q = f[j] * f[jp] + f[jp] * f[j];
  if (j == jp) q -= (4.0 / 3.0) * SpinMatrix::identity(); // (2/3) F(F+1) with F = 1
  return q;
}

SpinMatrix spin_dot(const Vec3& n) {
  const auto& f = spin_operators();
  return n[0] * f.x + n[1] * f.y + n[2] * f.z;
}

std::optional<Vec3> spin_vector_components(const SpinMatrix& m, double tol) {
  const auto& f = spin_operators();
  // tr(F_j F_k) = 2 delta_jk
  Vec3 n{};
  for (int j = 0; j < 3; ++j) {
    const cplx c = (f[static_cast<Axis>(j)] * m).trace() / 2.0;
    if (std::abs(c.imag()) > tol) return std::nullopt;
    n[j] = c.real();
  }
  if (max_abs_diff(spin_dot(n), m) > tol) return std::nullopt;
  return n;
}

SpinMatrix spin_rotation(const Vec3& unit_axis, double theta) {
  const SpinMatrix g = spin_dot(unit_axis);
  return SpinMatrix::identity() + (std::cos(theta) - 1.0) * (g * g) - I * std::sin(theta) * g;
}

namespace {

double max_norm(const SpinMatrix& m) {
  // Max row-sum norm bounds the spectral radius.
  double best = 0.0;
  for (std::size_t r = 0; r < 3; ++r) best = std::max(best, std::abs(m(r, 0)) + std::abs(m(r, 1)) + std::abs(m(r, 2)));
  return best;
}

SpinMatrix expm_scaling_squaring(const SpinMatrix& a) {
  int squarings = 0;
  const double nrm = max_norm(a);
  if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  const SpinMatrix scaled = a * std::ldexp(1.0, -squarings);

  SpinMatrix result = SpinMatrix::identity();
  SpinMatrix term = SpinMatrix::identity();
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled;
    term *= 1.0 / k;
    result += term;
    if (max_norm(term) < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

} // namespace

SpinMatrix mat_exp_antihermitian(const SpinMatrix& h, double theta) {
  if (!is_hermitian(h, unitary_tolerance)) throw InvalidArgument("mat_exp_antihermitian: generator is not Hermitian");
  if (theta == 0.0) return SpinMatrix::identity();

  if (auto n = spin_vector_components(h)) {
    const double len = std::hypot((*n)[0], (*n)[1], (*n)[2]);
    if (len == 0.0) return SpinMatrix::identity();
    const Vec3 unit{(*n)[0] / len, (*n)[1] / len, (*n)[2] / len};
    return spin_rotation(unit, theta * len);
  }
  return expm_scaling_squaring((-I * theta) * h);
}

} // namespace sbi
