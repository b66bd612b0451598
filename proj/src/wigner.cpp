#include "sbi/wigner.hpp"

#include "sbi/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>

namespace sbi {

namespace mp = boost::multiprecision;

HalfInt HalfInt::parse(std::string_view text) {
  auto fail = [&] { return InvalidArgument("not a non-negative (half-)integer: '" + std::string(text) + "'"); };
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw fail();

  auto parse_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0) throw fail();
    return v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const int num = parse_int(text.substr(0, slash));
    const int den = parse_int(text.substr(slash + 1));
    if (den == 1) return integer(num);
    if (den != 2) throw fail();
    return from_twice(num);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const int whole = parse_int(text.substr(0, dot));
    const auto frac = text.substr(dot + 1);
    if (frac.find_first_not_of('0') == std::string_view::npos) return integer(whole);
    if (frac.front() == '5' && frac.substr(1).find_first_not_of('0') == std::string_view::npos)
      return from_twice(2 * whole + 1);
    throw fail();
  }
  return integer(parse_int(text));
}

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

namespace {

using Rational = mp::cpp_rational;

mp::cpp_int factorial(int n) {
  mp::cpp_int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Triads are given in doubled units; returns false if (a, b, c) cannot couple.
bool triad_ok(int a, int b, int c) {
  if ((a + b + c) % 2 != 0) return false;
  return c >= std::abs(a - b) && c <= a + b;
}

// Delta(abc)^2 = (a+b-c)!(a-b+c)!(-a+b+c)! / (a+b+c+1)!
Rational triangle_squared(int a, int b, int c) {
  return Rational(factorial((a + b - c) / 2) * factorial((a - b + c) / 2) * factorial((-a + b + c) / 2),
                  factorial((a + b + c) / 2 + 1));
}

} // namespace

double wigner6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
  const int a = j1.twice(), b = j2.twice(), c = j3.twice();
  const int d = j4.twice(), e = j5.twice(), f = j6.twice();
  if (a < 0 || b < 0 || c < 0 || d < 0 || e < 0 || f < 0) return 0.0;
  if (!triad_ok(a, b, c) || !triad_ok(a, e, f) || !triad_ok(d, b, f) || !triad_ok(d, e, c)) return 0.0;

  const Rational delta2 =
      triangle_squared(a, b, c) * triangle_squared(a, e, f) * triangle_squared(d, b, f) * triangle_squared(d, e, c);

  // Racah sum in undoubled integers.
  const int s1 = (a + b + c) / 2, s2 = (a + e + f) / 2, s3 = (d + b + f) / 2, s4 = (d + e + c) / 2;
  const int p1 = (a + b + d + e) / 2, p2 = (a + c + d + f) / 2, p3 = (b + c + e + f) / 2;
  const int t_min = std::max({s1, s2, s3, s4});
  const int t_max = std::min({p1, p2, p3});

  Rational sum = 0;
  for (int t = t_min; t <= t_max; ++t) {
    const mp::cpp_int den = factorial(t - s1) * factorial(t - s2) * factorial(t - s3) * factorial(t - s4) *
                            factorial(p1 - t) * factorial(p2 - t) * factorial(p3 - t);
    Rational term(factorial(t + 1), den);
    if (t % 2 != 0) term = -term;
    sum += term;
  }
  if (sum == 0) return 0.0;

  const Rational squared = delta2 * sum * sum;
  const double magnitude = std::sqrt(squared.convert_to<double>());
  return sum < 0 ? -magnitude : magnitude;
}

} // namespace sbi
